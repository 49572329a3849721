//! Stellar subdivisions and smooth refinements.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactla::lattice::{lattice_points, parallelepiped_constraints, Strictness};
use crate::exactla::matrix::left_inverse;
use crate::exactla::rational::{format_vec, primitive, rat_int, Int, Rational};
use crate::newton::NewtonPolyhedron;

use super::{Cone, Fan, NormalFan};

/// Star subdivision of `fan` at the direction `w`.
pub fn stellar_subdivide(fan: &Fan, w: &[Int]) -> Result<Fan> {
    if w.len() != fan.n {
        return Err(Error::DimensionMismatch { expected: fan.n, found: w.len() });
    }
    if w.iter().any(Signed::is_negative) || w.iter().all(Zero::is_zero) {
        return Err(Error::RayOutsideSupport(format_vec(w)));
    }
    let w = primitive(w);
    let containing: Vec<&Cone> = fan.cones.iter().filter(|c| !c.rays.is_empty() && fan.cone_contains(c, &w)).collect();
    if containing.is_empty() {
        return Err(Error::RayOutsideSupport(format_vec(&w)));
    }
    let mut out = fan.clone();
    let wi = match fan.ray_index(&w) {
        Some(i) => i,
        None => {
            out.rays.push(w.clone());
            out.rays.len() - 1
        }
    };
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut cones = Vec::new();
    for c in &fan.cones {
        if !fan.cone_contains(c, &w) && seen.insert(c.rays.clone()) {
            cones.push(c.clone());
        }
    }
    for f in &fan.cones {
        if fan.cone_contains(f, &w) {
            continue;
        }
        if containing.iter().any(|c| f.rays.iter().all(|r| c.rays.contains(r))) {
            let mut rays = f.rays.clone();
            rays.push(wi);
            let cone = out.make_cone(rays);
            if seen.insert(cone.rays.clone()) {
                cones.push(cone);
            }
        }
    }
    cones.sort_by(|a, b| (a.dim, &a.rays).cmp(&(b.dim, &b.rays)));
    out.cones = cones;
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SubdivisionOptions {
    /// Directions inserted before anything else.
    pub pre_rays: Vec<Vec<Int>>,
    /// Process rays and cones in reverse order.
    pub reverse: bool,
    /// Cap on the number of stellar steps.
    pub limit: usize,
}

impl SubdivisionOptions {
    pub fn standard() -> Self {
        SubdivisionOptions { pre_rays: Vec::new(), reverse: false, limit: 10_000 }
    }

    pub fn alternate(n: usize) -> Self {
        SubdivisionOptions { pre_rays: vec![vec![Int::one(); n]], reverse: true, limit: 10_000 }
    }
}

/// A smooth fan refining the normal fan, with the minimal normal cone
/// containing each of its cones.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub fan: Fan,
    /// `parent[i]` is the index in the normal fan of the smallest cone
    /// containing cone `i`.
    pub parent: Vec<usize>,
}

impl Subdivision {
    pub fn to_json(&self) -> serde_json::Value {
        self.fan.to_json(Some(&self.parent))
    }
}

/// Nonzero lattice point of minimal coordinate sum in the half-open
/// parallelepiped of a simplicial cone.
fn box_point(fan: &Fan, cone: &Cone) -> Result<Option<Vec<Int>>> {
    let gens = fan.ray_vectors(cone);
    let d = gens.len();
    let cons = parallelepiped_constraints(&gens, &vec![Strictness::Weak; d], &vec![Strictness::Strict; d])?;
    let li = left_inverse(&gens).ok_or_else(|| Error::InvalidInput("dependent rays".into()))?;
    let mut best: Option<(Rational, Vec<Int>)> = None;
    for u in lattice_points(fan.n, &cons)? {
        if u.iter().all(Zero::is_zero) {
            continue;
        }
        let s: Rational = li.iter().map(|row| row.iter().zip(&u).map(|(a, b)| a * rat_int(b)).sum::<Rational>()).sum();
        if best.as_ref().is_none_or(|(bs, bu)| (&s, &u) < (bs, bu)) {
            best = Some((s, u));
        }
    }
    Ok(best.map(|(_, u)| u))
}

fn simplicialize(mut fan: Fan, reverse: bool, steps: &mut usize, limit: usize) -> Result<Fan> {
    let mut order: Vec<Vec<Int>> = fan.rays.clone();
    order.sort();
    if reverse {
        order.reverse();
    }
    for r in order {
        let ri = fan.ray_index(&r).expect("rays are never removed");
        if fan.cones.iter().any(|c| !Fan::is_simplicial_cone(c) && c.rays.contains(&ri)) {
            *steps += 1;
            if *steps > limit {
                return Err(Error::SubdivisionLimit(limit));
            }
            fan = stellar_subdivide(&fan, &r)?;
        }
    }
    debug_assert!(fan.is_simplicial());
    Ok(fan)
}

fn resolve(mut fan: Fan, reverse: bool, steps: &mut usize, limit: usize) -> Result<Fan> {
    loop {
        let mut bad: Vec<&Cone> = fan.cones.iter().filter(|c| fan.multiplicity(c) != Int::one()).collect();
        if bad.is_empty() {
            return Ok(fan);
        }
        bad.sort_by(|a, b| (a.dim, &a.rays).cmp(&(b.dim, &b.rays)));
        let target = if reverse { bad.iter().rfind(|c| c.dim == bad[0].dim).copied() } else { bad.first().copied() }
            .expect("nonempty");
        let point = box_point(&fan, target)?.expect("a cone of multiplicity > 1 has a nonzero box point");
        *steps += 1;
        if *steps > limit {
            return Err(Error::SubdivisionLimit(limit));
        }
        fan = stellar_subdivide(&fan, &point)?;
    }
}

pub fn smooth_subdivision_with(p: &NewtonPolyhedron, nf: &NormalFan, opts: &SubdivisionOptions) -> Result<Subdivision> {
    let mut fan = nf.fan.clone();
    let mut steps = 0;
    for r in &opts.pre_rays {
        fan = stellar_subdivide(&fan, r)?;
        steps += 1;
    }
    let fan = simplicialize(fan, opts.reverse, &mut steps, opts.limit)?;
    let fan = resolve(fan, opts.reverse, &mut steps, opts.limit)?;
    let parent = fan
        .cones
        .iter()
        .map(|c| {
            let s: Vec<Int> = (0..fan.n).map(|i| c.rays.iter().map(|&r| &fan.rays[r][i]).sum()).collect();
            nf.cone_of_direction(p, &s)
        })
        .collect();
    Ok(Subdivision { fan, parent })
}

pub fn smooth_subdivision(p: &NewtonPolyhedron, nf: &NormalFan) -> Result<Subdivision> {
    smooth_subdivision_with(p, nf, &SubdivisionOptions::standard())
}

#[cfg(test)]
mod tests {
    use super::super::normal_fan;
    use super::*;
    use crate::exactla::rational::ivec;
    use crate::newton::parse_polynomial;

    fn poly(s: &str) -> NewtonPolyhedron {
        NewtonPolyhedron::build(parse_polynomial(s, None).unwrap()).unwrap()
    }

    #[test]
    fn cusp_resolution() {
        let p = poly("x^2+y^3");
        let nf = normal_fan(&p);
        let sub = smooth_subdivision(&p, &nf).unwrap();
        let rays: BTreeSet<Vec<Int>> = sub.fan.rays.iter().cloned().collect();
        let want: BTreeSet<Vec<Int>> = [[1, 0], [0, 1], [3, 2], [2, 1], [1, 1]].iter().map(|r| ivec(r)).collect();
        assert_eq!(rays, want);
        assert!(sub.fan.is_smooth());
        sub.fan.validate().unwrap();
        // (2,1) refines the normal cone of the vertex (0,3)
        let r21 = sub.fan.ray_index(&ivec(&[2, 1])).unwrap();
        let cone = sub.fan.cones.iter().position(|c| c.rays == vec![r21]).unwrap();
        let parent = &p.all_faces[sub.parent[cone]];
        assert_eq!(parent.vertex_ids, vec![p.vertex_id(&ivec(&[0, 3])).unwrap()]);
    }

    #[test]
    fn outside_rays_are_rejected() {
        let p = poly("x^2+y^3");
        let nf = normal_fan(&p);
        assert!(matches!(stellar_subdivide(&nf.fan, &ivec(&[-1, 2])), Err(Error::RayOutsideSupport(_))));
        assert!(matches!(stellar_subdivide(&nf.fan, &ivec(&[0, 0])), Err(Error::RayOutsideSupport(_))));
    }

    #[test]
    fn three_dimensional_subdivisions_are_valid() {
        for s in ["x^4+y^4+z^4+x*y*z", "x^2+y^2+x*z+y*z+z^4", "x^3+y^3+z^3"] {
            let p = poly(s);
            let nf = normal_fan(&p);
            for opts in [SubdivisionOptions::standard(), SubdivisionOptions::alternate(3)] {
                let sub = smooth_subdivision_with(&p, &nf, &opts).unwrap();
                assert!(sub.fan.is_smooth(), "{s}");
                sub.fan.validate().unwrap_or_else(|e| panic!("{s}: {e}"));
                assert!(sub.fan.cones.len() >= nf.fan.cones.len());
            }
        }
    }

    #[test]
    fn limit_is_enforced() {
        let p = poly("x^7+y^5");
        let nf = normal_fan(&p);
        let opts = SubdivisionOptions { limit: 1, ..SubdivisionOptions::standard() };
        assert!(matches!(smooth_subdivision_with(&p, &nf, &opts), Err(Error::SubdivisionLimit(1))));
    }
}
