//! The normal fan of a Newton polyhedron and its smooth subdivisions.

pub mod census;
pub mod subdivision;

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::exactla::matrix::{rational_rank, solve_in_basis};
use crate::exactla::rational::{dot, rat_int, Int, Rational};
use crate::newton::NewtonPolyhedron;

pub use census::{
    badge, delta_sigma_xi, duality_holds, epsilon_census, gcd_law_holds, i_sigma, k_from_cone, sigma_of, unit_rays,
    vanishing_coordinates, ConeBadge, EpsilonCensus,
};
pub use subdivision::{
    smooth_subdivision, smooth_subdivision_with, stellar_subdivide, Subdivision, SubdivisionOptions,
};

/// A rational polyhedral cone, stored as indices into the fan's ray list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    pub rays: Vec<usize>,
    pub dim: usize,
}

/// Explicit list of cones closed under taking faces, including the zero
/// cone. All rays are primitive and lie in the non-negative orthant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    pub n: usize,
    pub rays: Vec<Vec<Int>>,
    pub cones: Vec<Cone>,
}

impl Fan {
    pub fn ray_vectors(&self, cone: &Cone) -> Vec<Vec<Int>> {
        cone.rays.iter().map(|&r| self.rays[r].clone()).collect()
    }

    pub fn make_cone(&self, mut rays: Vec<usize>) -> Cone {
        rays.sort_unstable();
        rays.dedup();
        let vecs: Vec<Vec<Int>> = rays.iter().map(|&r| self.rays[r].clone()).collect();
        let dim = if vecs.is_empty() { 0 } else { rational_rank(&vecs) };
        Cone { rays, dim }
    }

    pub fn is_simplicial_cone(cone: &Cone) -> bool {
        cone.rays.len() == cone.dim
    }

    pub fn is_simplicial(&self) -> bool {
        self.cones.iter().all(Fan::is_simplicial_cone)
    }

    pub fn ray_index(&self, w: &[Int]) -> Option<usize> {
        self.rays.iter().position(|r| r.as_slice() == w)
    }

    /// Whether `w` lies in the closed cone.
    pub fn cone_contains(&self, cone: &Cone, w: &[Int]) -> bool {
        if w.iter().all(Zero::is_zero) {
            return true;
        }
        let gens = self.ray_vectors(cone);
        if gens.is_empty() {
            return false;
        }
        let target: Vec<Rational> = w.iter().map(rat_int).collect();
        if Fan::is_simplicial_cone(cone) {
            return solve_in_basis(&gens, &target).is_some_and(|x| x.iter().all(|c| !c.is_negative()));
        }
        // Caratheodory: w is in the cone iff it is in a simplicial sub-cone
        for subset in independent_subsets(&gens, cone.dim) {
            let cols: Vec<Vec<Int>> = subset.iter().map(|&i| gens[i].clone()).collect();
            if solve_in_basis(&cols, &target).is_some_and(|x| x.iter().all(|c| !c.is_negative())) {
                return true;
            }
        }
        false
    }

    /// Index of the smallest cone containing `w`.
    pub fn minimal_cone_containing(&self, w: &[Int]) -> Option<usize> {
        (0..self.cones.len())
            .filter(|&c| self.cone_contains(&self.cones[c], w))
            .min_by_key(|&c| (self.cones[c].dim, self.cones[c].rays.len()))
    }

    pub fn maximal_cones(&self) -> Vec<usize> {
        (0..self.cones.len())
            .filter(|&c| {
                !self
                    .cones
                    .iter()
                    .any(|o| o.rays.len() > self.cones[c].rays.len() && is_subset(&self.cones[c].rays, &o.rays))
            })
            .collect()
    }

    /// Not contained in any coordinate hyperplane.
    pub fn is_in_prime(&self, cone: &Cone) -> bool {
        (0..self.n).all(|i| cone.rays.iter().any(|&r| !self.rays[r][i].is_zero()))
    }

    /// Index of the lattice spanned by the rays of a simplicial cone inside
    /// the saturated lattice of its span.
    pub fn multiplicity(&self, cone: &Cone) -> Int {
        if cone.rays.is_empty() {
            return Int::from(1);
        }
        let m = crate::exactla::IntMatrix::from_rows(&self.ray_vectors(cone)).expect("rays have equal length");
        crate::exactla::smith_normal_form(&m).into_iter().filter(|d| !d.is_zero()).product()
    }

    pub fn is_smooth(&self) -> bool {
        self.cones.iter().all(|c| Fan::is_simplicial_cone(c) && self.multiplicity(c) == Int::from(1))
    }

    /// Structural checks: primitive orthant rays, closure under faces, and a
    /// pseudo-manifold condition on walls that makes the maximal cones tile
    /// the orthant. Only meaningful for simplicial fans.
    pub fn validate(&self) -> Result<(), String> {
        for r in &self.rays {
            if r.iter().any(Signed::is_negative) || r.iter().all(Zero::is_zero) {
                return Err(format!("ray {r:?} outside the orthant"));
            }
            if crate::exactla::rational::gcd_all(r) != Int::from(1) {
                return Err(format!("ray {r:?} is not primitive"));
            }
        }
        let set: BTreeSet<&Vec<usize>> = self.cones.iter().map(|c| &c.rays).collect();
        if set.len() != self.cones.len() {
            return Err("duplicate cones".into());
        }
        if !self.is_simplicial() {
            return Err("fan is not simplicial".into());
        }
        for c in &self.cones {
            for skip in 0..c.rays.len() {
                let mut face = c.rays.clone();
                face.remove(skip);
                if !set.contains(&face) {
                    return Err(format!("face {face:?} of {:?} missing", c.rays));
                }
            }
        }
        let maximal: Vec<&Cone> = self.cones.iter().filter(|c| c.dim == self.n).collect();
        if maximal.len() != self.maximal_cones().len() {
            return Err("a maximal cone is not full-dimensional".into());
        }
        for wall in self.cones.iter().filter(|c| c.dim + 1 == self.n) {
            let around: Vec<&Cone> = maximal.iter().copied().filter(|m| is_subset(&wall.rays, &m.rays)).collect();
            let on_boundary = (0..self.n).any(|i| wall.rays.iter().all(|&r| self.rays[r][i].is_zero()));
            let want = if on_boundary { 1 } else { 2 };
            if around.len() != want {
                return Err(format!("wall {:?} lies in {} maximal cones, expected {want}", wall.rays, around.len()));
            }
            if want == 2 {
                // the two apexes must lie on opposite sides of the wall
                let normal = wall_normal(&self.ray_vectors(wall), self.n);
                let side = |m: &Cone| {
                    let apex = m.rays.iter().find(|r| !wall.rays.contains(r)).expect("maximal cone has an apex");
                    dot(&normal, &self.rays[*apex]).signum()
                };
                if side(around[0]) == side(around[1]) {
                    return Err(format!("cones around wall {:?} overlap", wall.rays));
                }
            }
        }
        let probe: Vec<Int> = [10007, 10009, 10037, 10039, 10061, 10067, 10069, 10079]
            .iter()
            .cycle()
            .take(self.n)
            .enumerate()
            .map(|(i, &v)| Int::from(v + 7 * i as i64))
            .collect();
        let hits = maximal.iter().filter(|m| self.cone_contains(m, &probe)).count();
        if hits != 1 {
            return Err(format!("probe point lies in {hits} maximal cones"));
        }
        Ok(())
    }

    pub fn to_json(&self, parent: Option<&[usize]>) -> Value {
        let rays: Vec<Value> =
            self.rays.iter().map(|r| json!(r.iter().map(crate::puiseux::int_value).collect::<Vec<_>>())).collect();
        let cones: Vec<Value> = self.cones.iter().map(|c| json!(c.rays)).collect();
        let mut v = json!({"cones": cones, "rays": rays});
        if let Some(p) = parent {
            v["parent"] = json!(p);
        }
        v
    }
}

/// A normal vector to the hyperplane spanned by `n - 1` independent vectors.
fn wall_normal(vectors: &[Vec<Int>], n: usize) -> Vec<Int> {
    let m = crate::exactla::IntMatrix::from_rows(vectors).expect("rays have equal length");
    let k = crate::exactla::integer_kernel(&m);
    debug_assert_eq!(k.len(), 1, "wall of dimension n-1 in dimension {n}");
    k.into_iter().next().unwrap_or_else(|| vec![Int::zero(); n])
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

/// Index subsets of size `dim` whose vectors are linearly independent.
fn independent_subsets(gens: &[Vec<Int>], dim: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(gens: &[Vec<Int>], dim: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == dim {
            let vecs: Vec<Vec<Int>> = current.iter().map(|&i| gens[i].clone()).collect();
            if rational_rank(&vecs) == dim {
                out.push(current.clone());
            }
            return;
        }
        for i in start..gens.len() {
            current.push(i);
            rec(gens, dim, i + 1, current, out);
            current.pop();
        }
    }
    rec(gens, dim, 0, &mut current, &mut out);
    out
}

/// The normal fan together with its correspondence to polyhedron faces.
#[derive(Clone, Debug)]
pub struct NormalFan {
    /// Cone `i` is the normal cone of `NewtonPolyhedron::all_faces[i]`; ray
    /// `j` is the normal of facet `j`.
    pub fan: Fan,
}

impl NormalFan {
    /// Cone index of the compact face `sigma` (face id in the compact lattice).
    pub fn eta(&self, p: &NewtonPolyhedron, sigma: usize) -> Option<usize> {
        p.faces[sigma].poly_face
    }

    /// Cone index of the face of the polyhedron on which `w` is minimized;
    /// `w` lies in the relative interior of that cone.
    pub fn cone_of_direction(&self, p: &NewtonPolyhedron, w: &[Int]) -> usize {
        let values: Vec<Int> = p.vertices.iter().map(|v| dot(w, v)).collect();
        let min = values.iter().min().expect("polyhedron has vertices").clone();
        let vertex_ids: Vec<usize> = (0..values.len()).filter(|&i| values[i] == min).collect();
        let ray_ids: Vec<usize> = (0..p.n).filter(|&i| w[i].is_zero()).collect();
        p.all_faces
            .iter()
            .position(|f| f.vertex_ids == vertex_ids && f.ray_ids == ray_ids)
            .expect("every non-negative direction minimizes some face")
    }

    /// Compact face whose normal cone is cone `c`, if any.
    pub fn compact_face_of_cone(&self, p: &NewtonPolyhedron, c: usize) -> Option<usize> {
        p.all_faces[c].compact_id
    }
}

pub fn normal_fan(p: &NewtonPolyhedron) -> NormalFan {
    let rays: Vec<Vec<Int>> = p.facets.iter().map(|f| f.normal.clone()).collect();
    let cones = p.all_faces.iter().map(|f| Cone { rays: f.facet_ids.clone(), dim: p.n - f.dim }).collect();
    NormalFan { fan: Fan { n: p.n, rays, cones } }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rational::ivec;
    use crate::newton::parse_polynomial;

    fn poly(s: &str) -> NewtonPolyhedron {
        NewtonPolyhedron::build(parse_polynomial(s, None).unwrap()).unwrap()
    }

    fn ray_set(f: &Fan) -> BTreeSet<Vec<Int>> {
        f.rays.iter().cloned().collect()
    }

    #[test]
    fn cusp_normal_fan() {
        let p = poly("x^2+y^3");
        let nf = normal_fan(&p);
        assert_eq!(ray_set(&nf.fan), [ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[3, 2])].into_iter().collect());
        let edge = nf.eta(&p, 3).unwrap();
        assert_eq!(nf.fan.ray_vectors(&nf.fan.cones[edge]), vec![ivec(&[3, 2])]);
        let top = nf.eta(&p, p.face_by_vertices(&[p.vertex_id(&ivec(&[0, 3])).unwrap()]).unwrap()).unwrap();
        let mut got = nf.fan.ray_vectors(&nf.fan.cones[top]);
        got.sort();
        assert_eq!(got, vec![ivec(&[1, 0]), ivec(&[3, 2])]);
        assert!(nf.fan.validate().is_ok());
        // the whole polyhedron has the zero cone
        let whole = p.all_faces.iter().position(|f| f.dim == p.n).unwrap();
        assert!(nf.fan.cones[whole].rays.is_empty());
    }

    #[test]
    fn duality_of_dimensions() {
        for s in ["x^2+y^3", "x^4+y^4+z^4+x*y*z", "x^2+y^2+x*z+y*z+z^4", "x^3+y*z"] {
            let p = poly(s);
            let nf = normal_fan(&p);
            for f in p.compact_faces() {
                let eta = &nf.fan.cones[nf.eta(&p, f.id).unwrap()];
                assert_eq!(f.d_sigma as usize + eta.dim, p.n, "{s}");
                assert!(nf.fan.is_in_prime(eta));
            }
        }
    }

    #[test]
    fn smooth_quadric_fan() {
        let p = poly("x^2+y^2");
        let nf = normal_fan(&p);
        assert_eq!(ray_set(&nf.fan), [ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[1, 1])].into_iter().collect());
        assert!(nf.fan.is_smooth());
    }
}
