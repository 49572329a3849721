//! Per-cone data of a smooth subdivision: dimensions, coordinate-ray counts,
//! lattice contents and the alternating census of refining cones.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactla::rational::{dot, Int};
use crate::exactla::{face_delta, integer_kernel, IntMatrix};
use crate::newton::NewtonPolyhedron;

use super::{Cone, Fan, NormalFan, Subdivision};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeBadge {
    pub dim: usize,
    /// Number of unit vectors `e_i`, `i` outside `J_f`, among the rays.
    pub k_check: usize,
    pub in_prime: bool,
}

fn unit_index(r: &[Int]) -> Option<usize> {
    let nz: Vec<usize> = (0..r.len()).filter(|&i| !r[i].is_zero()).collect();
    (nz.len() == 1 && r[nz[0]] == Int::from(1)).then(|| nz[0])
}

/// Coordinates `i` with `e_i` a ray of the cone.
pub fn unit_rays(fan: &Fan, cone: &Cone) -> Vec<usize> {
    let mut out: Vec<usize> = cone.rays.iter().filter_map(|&r| unit_index(&fan.rays[r])).collect();
    out.sort_unstable();
    out
}

pub fn badge(p: &NewtonPolyhedron, fan: &Fan, cone: &Cone) -> ConeBadge {
    ConeBadge {
        dim: cone.dim,
        k_check: unit_rays(fan, cone).into_iter().filter(|i| !p.j_f.contains(i)).count(),
        in_prime: fan.is_in_prime(cone),
    }
}

/// Compact face whose normal cone is the parent of subdivision cone `xi`.
pub fn sigma_of(p: &NewtonPolyhedron, sub: &Subdivision, xi: usize) -> Option<usize> {
    p.all_faces[sub.parent[xi]].compact_id
}

/// Lattice content of `sigma + xi^perp`; `xi` must refine the normal cone
/// of `sigma`.
pub fn delta_sigma_xi(p: &NewtonPolyhedron, nf: &NormalFan, sub: &Subdivision, sigma: usize, xi: usize) -> Result<Int> {
    if sigma == 0 || nf.eta(p, sigma) != Some(sub.parent[xi]) {
        return Err(Error::ParentMismatch);
    }
    let v0 = &p.vertices[p.faces[sigma].vertex_ids[0]];
    let cone = &sub.fan.cones[xi];
    let dirs = if cone.rays.is_empty() {
        (0..p.n).map(|i| (0..p.n).map(|j| Int::from((i == j) as i64)).collect()).collect()
    } else {
        integer_kernel(&IntMatrix::from_rows(&sub.fan.ray_vectors(cone))?)
    };
    face_delta(v0, &dirs)
}

/// On a smooth cone `xi`, the content equals the gcd of `<w_i, v>` over the
/// rays `w_i` of `xi` and any vertex `v` of `sigma`.
pub fn gcd_law_holds(p: &NewtonPolyhedron, nf: &NormalFan, sub: &Subdivision, xi: usize) -> Result<bool> {
    let Some(sigma) = sigma_of(p, sub, xi) else {
        return Err(Error::ParentMismatch);
    };
    let v0 = &p.vertices[p.faces[sigma].vertex_ids[0]];
    let g = sub.fan.cones[xi].rays.iter().fold(Int::zero(), |acc, &r| acc.gcd(&dot(&sub.fan.rays[r], v0)));
    Ok(g == delta_sigma_xi(p, nf, sub, sigma, xi)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonCensus {
    /// Coordinates `i` with `e_i` a ray of the normal cone.
    pub i0: Vec<usize>,
    /// `epsilon_I` for every subset `I` of `i0`.
    pub epsilon: BTreeMap<Vec<usize>, Int>,
    /// Inclusion-exclusion refinement counting cones whose unit rays inside
    /// `i0` are exactly `I`.
    pub epsilon_open: BTreeMap<Vec<usize>, Int>,
    /// True when the normal cone meets a coordinate hyperplane in full and
    /// the census is empty.
    pub vacuous: bool,
}

impl EpsilonCensus {
    pub fn holds(&self) -> bool {
        if self.vacuous {
            return true;
        }
        let one = Int::from(1);
        self.epsilon.values().all(|e| *e == one)
            && self.epsilon_open.iter().all(|(i, e)| if *i == self.i0 { *e == one } else { e.is_zero() })
    }
}

fn subsets(s: &[usize]) -> Vec<Vec<usize>> {
    (0u32..(1 << s.len())).map(|m| (0..s.len()).filter(|&b| m >> b & 1 == 1).map(|b| s[b]).collect()).collect()
}

/// Alternating counts `sum_j (-1)^j |Phi_I^j|` over the cones of the
/// subdivision that refine the normal cone `eta` and avoid every coordinate
/// hyperplane, where `j` is the codimension inside `eta`.
pub fn epsilon_census(nf: &NormalFan, sub: &Subdivision, eta: usize) -> EpsilonCensus {
    let eta_cone = &nf.fan.cones[eta];
    let i0 = unit_rays(&nf.fan, eta_cone);
    if !nf.fan.is_in_prime(eta_cone) {
        return EpsilonCensus { i0, epsilon: BTreeMap::new(), epsilon_open: BTreeMap::new(), vacuous: true };
    }
    let members: Vec<(&Cone, Vec<usize>)> = sub
        .fan
        .cones
        .iter()
        .enumerate()
        .filter(|(i, c)| sub.parent[*i] == eta && sub.fan.is_in_prime(c))
        .map(|(_, c)| (c, unit_rays(&sub.fan, c)))
        .collect();
    let mut epsilon = BTreeMap::new();
    for i in subsets(&i0) {
        let mut e = Int::zero();
        for (c, units) in &members {
            if i.iter().all(|x| units.contains(x)) {
                let j = eta_cone.dim - c.dim;
                e += if j.is_multiple_of(2) { 1 } else { -1 };
            }
        }
        epsilon.insert(i, e);
    }
    let mut epsilon_open = BTreeMap::new();
    for i in subsets(&i0) {
        let mut e = Int::zero();
        for (j, v) in &epsilon {
            if i.iter().all(|x| j.contains(x)) {
                if (j.len() - i.len()) % 2 == 0 {
                    e += v;
                } else {
                    e -= v;
                }
            }
        }
        epsilon_open.insert(i, e);
    }
    EpsilonCensus { i0, epsilon, epsilon_open, vacuous: false }
}

/// The number of unit rays `e_i`, `i` outside `J_f`, in the normal cone of
/// a compact face satisfies `k - d = dim eta - k_check - 1`.
pub fn duality_holds(p: &NewtonPolyhedron, nf: &NormalFan, sigma: usize) -> bool {
    let f = &p.faces[sigma];
    let Some(eta) = nf.eta(p, sigma) else {
        return true;
    };
    let b = badge(p, &nf.fan, &nf.fan.cones[eta]);
    f.k as i64 - f.d_cone as i64 == b.dim as i64 - b.k_check as i64 - 1
}

/// Coordinates `i` with `e_i` a ray of the normal cone of `sigma`; these are
/// exactly the coordinate hyperplanes containing `sigma`.
pub fn i_sigma(p: &NewtonPolyhedron, nf: &NormalFan, sigma: usize) -> Option<Vec<usize>> {
    Some(unit_rays(&nf.fan, &nf.fan.cones[nf.eta(p, sigma)?]))
}

/// `k = n - |I_sigma \ J_f|`.
pub fn k_from_cone(p: &NewtonPolyhedron, nf: &NormalFan, sigma: usize) -> Option<usize> {
    let i = i_sigma(p, nf, sigma)?;
    Some(p.n - i.into_iter().filter(|i| !p.j_f.contains(i)).count())
}

/// Largest `I` with the normal cone inside every `{v_i = 0}`, `i` in `I`.
pub fn vanishing_coordinates(p: &NewtonPolyhedron, nf: &NormalFan, sigma: usize) -> Option<Vec<usize>> {
    let cone = &nf.fan.cones[nf.eta(p, sigma)?];
    Some((0..p.n).filter(|&i| cone.rays.iter().all(|&r| nf.fan.rays[r][i].is_zero())).collect())
}
