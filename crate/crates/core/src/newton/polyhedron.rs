//! The Newton polyhedron at the origin and its face lattice.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};

use super::parse::MonomialSupport;
use crate::error::{Error, Result};
use crate::exactla::hull::{double_description, HRep};
use crate::exactla::matrix::rational_rank;
use crate::exactla::normal_form::face_delta;
use crate::exactla::rational::{dot, rat_int, sub_vec, Int, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<Int>,
    pub offset: Int,
    pub vertex_ids: Vec<usize>,
    /// Coordinates `i` with `e_i` in the recession cone of the facet.
    pub ray_ids: Vec<usize>,
}

/// A nonempty face of the (unbounded) polyhedron.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyFace {
    pub vertex_ids: Vec<usize>,
    pub ray_ids: Vec<usize>,
    pub facet_ids: Vec<usize>,
    pub dim: usize,
    pub compact_id: Option<usize>,
}

/// A compact face, or the empty face at id 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub id: usize,
    pub vertex_ids: Vec<usize>,
    /// Dimension of the face; -1 for the empty face.
    pub d_sigma: i64,
    /// Dimension of the cone over the face.
    pub d_cone: usize,
    /// Zero-based coordinates on which some vertex is positive.
    pub supp: Vec<usize>,
    pub k: usize,
    pub delta: Int,
    /// Linear functional equal to 1 on the face, in ambient coordinates.
    pub ell: Vec<Rational>,
    pub is_simplex: bool,
    pub is_internal: bool,
    pub facet_ids: Vec<usize>,
    /// Index into [`NewtonPolyhedron::all_faces`]; `None` for the empty face.
    pub poly_face: Option<usize>,
}

impl Face {
    pub fn is_empty_face(&self) -> bool {
        self.vertex_ids.is_empty()
    }

    pub fn ell_at(&self, u: &[Int]) -> Rational {
        self.ell.iter().zip(u).fold(Rational::zero(), |acc, (a, x)| acc + a * rat_int(x))
    }
}

#[derive(Clone, Debug)]
pub struct NewtonPolyhedron {
    pub n: usize,
    pub support: MonomialSupport,
    pub hrep: HRep,
    pub vertices: Vec<Vec<Int>>,
    pub facets: Vec<Facet>,
    pub all_faces: Vec<PolyFace>,
    pub faces: Vec<Face>,
    pub j_f: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub j_f: Vec<usize>,
    pub convenient: bool,
    pub simplicial: bool,
    pub c: Rational,
    pub nondegenerate: bool,
    pub isolated: bool,
}

fn units(n: usize) -> Vec<Vec<Int>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { Int::one() } else { Int::zero() }).collect()).collect()
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().filter(|x| b.contains(x)).copied().collect()
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

impl NewtonPolyhedron {
    pub fn build(support: MonomialSupport) -> Result<Self> {
        let n = support.n;
        let points = support.points();
        let hrep = double_description(&points, &units(n))?;

        let mut vertices: Vec<Vec<Int>> = points
            .iter()
            .filter(|p| {
                let tight: Vec<Vec<Int>> =
                    hrep.inequalities.iter().filter(|q| q.is_tight(p)).map(|q| q.normal.clone()).collect();
                rational_rank(&tight) == n
            })
            .cloned()
            .collect();
        vertices.sort();
        vertices.dedup();

        let facets: Vec<Facet> = hrep
            .inequalities
            .iter()
            .map(|q| Facet {
                normal: q.normal.clone(),
                offset: q.offset.clone(),
                vertex_ids: (0..vertices.len()).filter(|&v| q.is_tight(&vertices[v])).collect(),
                ray_ids: (0..n).filter(|&i| q.normal[i].is_zero()).collect(),
            })
            .collect();

        // close the facet (vertex, ray) sets under intersection
        let mut seen: BTreeSet<(Vec<usize>, Vec<usize>)> = BTreeSet::new();
        let mut list: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        for f in &facets {
            let key = (f.vertex_ids.clone(), f.ray_ids.clone());
            if seen.insert(key.clone()) {
                list.push(key);
            }
        }
        let mut i = 0;
        while i < list.len() {
            for j in 0..i {
                let key = (intersect(&list[i].0, &list[j].0), intersect(&list[i].1, &list[j].1));
                if !key.0.is_empty() && seen.insert(key.clone()) {
                    list.push(key);
                }
            }
            i += 1;
        }
        let whole = ((0..vertices.len()).collect::<Vec<_>>(), (0..n).collect::<Vec<_>>());
        if seen.insert(whole.clone()) {
            list.push(whole);
        }

        let mut all_faces: Vec<PolyFace> = list
            .into_iter()
            .map(|(vertex_ids, ray_ids)| {
                let facet_ids = (0..facets.len())
                    .filter(|&f| {
                        is_subset(&vertex_ids, &facets[f].vertex_ids) && is_subset(&ray_ids, &facets[f].ray_ids)
                    })
                    .collect();
                let v0 = &vertices[vertex_ids[0]];
                let mut dirs: Vec<Vec<Int>> = vertex_ids[1..].iter().map(|&v| sub_vec(&vertices[v], v0)).collect();
                dirs.extend(ray_ids.iter().map(|&r| units(n)[r].clone()));
                let dim = if dirs.is_empty() { 0 } else { rational_rank(&dirs) };
                PolyFace { vertex_ids, ray_ids, facet_ids, dim, compact_id: None }
            })
            .collect();
        all_faces
            .sort_by(|a, b| (a.dim, &a.ray_ids.len(), &a.vertex_ids).cmp(&(b.dim, &b.ray_ids.len(), &b.vertex_ids)));

        let j_f: Vec<usize> = (0..n).filter(|&i| points.iter().all(|p| p[i].is_positive())).collect();

        let mut compact: Vec<usize> = (0..all_faces.len()).filter(|&f| all_faces[f].ray_ids.is_empty()).collect();
        compact.sort_by(|&a, &b| {
            (all_faces[a].dim, &all_faces[a].vertex_ids).cmp(&(all_faces[b].dim, &all_faces[b].vertex_ids))
        });

        let mut faces = vec![Face {
            id: 0,
            vertex_ids: Vec::new(),
            d_sigma: -1,
            d_cone: 0,
            supp: Vec::new(),
            k: 0,
            delta: Int::one(),
            ell: vec![Rational::zero(); n],
            is_simplex: true,
            is_internal: false,
            facet_ids: (0..facets.len()).collect(),
            poly_face: None,
        }];
        for (pos, &pf) in compact.iter().enumerate() {
            let id = pos + 1;
            all_faces[pf].compact_id = Some(id);
            let f = &all_faces[pf];
            let verts: Vec<&Vec<Int>> = f.vertex_ids.iter().map(|&v| &vertices[v]).collect();
            let supp: Vec<usize> = (0..n).filter(|&i| verts.iter().any(|v| v[i].is_positive())).collect();
            let k = (0..n).filter(|i| j_f.contains(i) || supp.contains(i)).count();
            let w: Vec<Int> = (0..n).map(|i| f.facet_ids.iter().map(|&fi| &facets[fi].normal[i]).sum()).collect();
            debug_assert!(w.iter().all(Signed::is_positive), "compact face with non-positive normal sum");
            let scale = dot(&w, verts[0]);
            let ell = w.iter().map(|x| Rational::new(x.clone(), scale.clone())).collect();
            let dirs: Vec<Vec<Int>> = verts[1..].iter().map(|v| sub_vec(v, verts[0])).collect();
            let delta = face_delta(verts[0], &dirs)?;
            faces.push(Face {
                id,
                vertex_ids: f.vertex_ids.clone(),
                d_sigma: f.dim as i64,
                d_cone: f.dim + 1,
                is_internal: supp.len() == n,
                supp,
                k,
                delta,
                ell,
                is_simplex: f.vertex_ids.len() == f.dim + 1,
                facet_ids: f.facet_ids.clone(),
                poly_face: Some(pf),
            });
        }

        Ok(NewtonPolyhedron { n, support, hrep, vertices, facets, all_faces, faces, j_f })
    }

    /// `sigma <= tau` in the compact face lattice.
    pub fn le(&self, sigma: usize, tau: usize) -> bool {
        is_subset(&self.faces[sigma].vertex_ids, &self.faces[tau].vertex_ids)
    }

    /// Compact faces below `sigma`, including the empty face and `sigma`.
    pub fn faces_below(&self, sigma: usize) -> Vec<usize> {
        (0..self.faces.len()).filter(|&t| self.le(t, sigma)).collect()
    }

    /// Compact faces above `sigma`, including `sigma`; the empty face only
    /// when `sigma` is empty.
    pub fn faces_above(&self, sigma: usize) -> Vec<usize> {
        (0..self.faces.len()).filter(|&t| (t != 0 || sigma == 0) && self.le(sigma, t)).collect()
    }

    /// Faces of `sigma` of one dimension less (nonempty only).
    pub fn boundary_faces(&self, sigma: usize) -> Vec<usize> {
        let d = self.faces[sigma].d_sigma;
        (1..self.faces.len()).filter(|&t| t != sigma && self.faces[t].d_sigma == d - 1 && self.le(t, sigma)).collect()
    }

    pub fn face_by_vertices(&self, vertex_ids: &[usize]) -> Option<usize> {
        let mut key = vertex_ids.to_vec();
        key.sort_unstable();
        self.faces.iter().position(|f| f.vertex_ids == key)
    }

    pub fn vertex_id(&self, v: &[Int]) -> Option<usize> {
        self.vertices.iter().position(|x| x.as_slice() == v)
    }

    pub fn compact_faces(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().skip(1)
    }

    pub fn is_convenient(&self) -> bool {
        let points = self.support.points();
        (0..self.n).all(|i| points.iter().any(|p| p[i].is_positive() && (0..self.n).all(|j| j == i || p[j].is_zero())))
    }

    pub fn is_simplicial(&self) -> bool {
        self.faces.iter().all(|f| f.is_simplex)
    }

    pub fn classify(&self) -> Classification {
        let ones = vec![Int::one(); self.n];
        let c = self
            .facets
            .iter()
            .map(|f| Rational::new(f.offset.clone(), dot(&f.normal, &ones)))
            .max()
            .expect("a polyhedron with vertices has facets");
        let convenient = self.is_convenient();
        let nondegenerate = self.support.assume_nondegenerate;
        Classification {
            j_f: self.j_f.clone(),
            convenient,
            simplicial: self.is_simplicial(),
            c,
            nondegenerate,
            isolated: self.support.assume_isolated || (convenient && nondegenerate),
        }
    }

    /// `max{r : u in r * Gamma_+}` for a non-negative integer vector `u`.
    pub fn newton_degree(&self, u: &[Int]) -> Result<Rational> {
        if u.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: u.len() });
        }
        if u.iter().any(Signed::is_negative) {
            return Err(Error::InvalidInput("newton_degree needs a non-negative vector".into()));
        }
        if u.iter().all(Zero::is_zero) {
            return Err(Error::InfiniteDegree);
        }
        Ok(self
            .facets
            .iter()
            .filter(|f| f.offset.is_positive())
            .map(|f| Rational::new(dot(&f.normal, u), f.offset.clone()))
            .min()
            .expect("0 is not in the polyhedron, so some facet has positive offset"))
    }

    /// Kouchnirenko's alternating sum of normalized volumes.
    pub fn newton_number(&self) -> Result<Int> {
        if !self.is_convenient() {
            return Err(Error::NotConvenient);
        }
        let order: Vec<usize> = (0..self.vertices.len()).collect();
        let tri = super::triangulate::Triangulator::new(self, &order);
        let n = self.n;
        let mut total = Int::zero();
        for mask in 0u32..(1 << n) {
            let coords: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let s = coords.len();
            let vol = if s == 0 {
                Int::one()
            } else {
                let mut vol = Int::zero();
                for f in self.compact_faces() {
                    if f.d_sigma != s as i64 - 1 || !is_subset(&f.supp, &coords) {
                        continue;
                    }
                    for simplex in tri.simplices(f.id) {
                        let rows: Vec<Vec<Int>> = simplex
                            .iter()
                            .map(|&v| coords.iter().map(|&i| self.vertices[v][i].clone()).collect())
                            .collect();
                        let m = crate::exactla::IntMatrix::from_rows(&rows)?;
                        vol += m.determinant().abs();
                    }
                }
                vol
            };
            if (n - s).is_multiple_of(2) {
                total += vol;
            } else {
                total -= vol;
            }
        }
        Ok(total)
    }

    /// Vertex coordinates of a compact face.
    pub fn face_vertices(&self, sigma: usize) -> Vec<Vec<Int>> {
        self.faces[sigma].vertex_ids.iter().map(|&v| self.vertices[v].clone()).collect()
    }

    /// Compact faces grouped by dimension.
    pub fn faces_by_dim(&self) -> BTreeMap<i64, Vec<usize>> {
        let mut out: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for f in &self.faces {
            out.entry(f.d_sigma).or_default().push(f.id);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rational::{int, ivec, rat};
    use crate::newton::parse::parse_polynomial;

    fn poly(s: &str) -> NewtonPolyhedron {
        NewtonPolyhedron::build(parse_polynomial(s, None).unwrap()).unwrap()
    }

    #[test]
    fn cusp_faces() {
        let p = poly("x^2+y^3");
        assert_eq!(p.vertices, vec![ivec(&[0, 3]), ivec(&[2, 0])]);
        assert_eq!(p.faces.len(), 4);
        let edge = &p.faces[3];
        assert_eq!((edge.d_sigma, edge.d_cone, edge.k), (1, 2, 2));
        assert_eq!(edge.delta, int(6));
        assert_eq!(edge.ell, vec![rat(1, 2), rat(1, 3)]);
        assert!(edge.is_internal && edge.is_simplex);
        assert_eq!(p.faces[1].delta, int(3));
        assert_eq!(p.faces[2].delta, int(2));
    }

    #[test]
    fn empty_face_conventions() {
        let p = poly("x^2+y^3");
        let e = &p.faces[0];
        assert_eq!((e.d_sigma, e.d_cone, e.k), (-1, 0, 0));
        assert!(p.faces_below(3).contains(&0));
        assert_eq!(p.faces_above(1), vec![1, 3]);
        assert_eq!(p.faces_above(0).len(), 4);
    }

    #[test]
    fn interior_vertex_delta() {
        let p = poly("x^7+y^7+z^7+x^2*y^2*z^2");
        let v = p.face_by_vertices(&[p.vertex_id(&ivec(&[2, 2, 2])).unwrap()]).unwrap();
        assert_eq!(p.faces[v].delta, int(2));
        assert!(p.faces[v].is_internal);
    }

    #[test]
    fn non_convenient_family() {
        let p = poly("x^3+y*z");
        assert_eq!(p.faces.len(), 4);
        assert!(p.j_f.is_empty());
        let c = p.classify();
        assert!(!c.convenient && !c.isolated);
        assert_eq!(c.c, rat(3, 4));
        let edge = &p.faces[3];
        assert!(edge.is_internal);
        assert_eq!(edge.k, 3);
    }

    #[test]
    fn classification() {
        let c = poly("x^2+y^3").classify();
        assert!(c.convenient && c.simplicial && c.isolated);
        assert_eq!(c.c, rat(6, 5));
        let c = poly("x^2+y^2+x*z+y*z+z^4").classify();
        assert!(c.convenient && !c.simplicial);
    }

    #[test]
    fn degree() {
        let p = poly("x^2+y^3");
        assert_eq!(p.newton_degree(&ivec(&[1, 1])).unwrap(), rat(5, 6));
        assert_eq!(p.newton_degree(&ivec(&[2, 0])).unwrap(), rat(1, 1));
        assert_eq!(p.newton_degree(&ivec(&[2, 2])).unwrap(), rat(5, 3));
        assert_eq!(p.newton_degree(&ivec(&[0, 0])), Err(Error::InfiniteDegree));
    }

    #[test]
    fn newton_numbers() {
        assert_eq!(poly("x^2+y^3").newton_number().unwrap(), int(2));
        assert_eq!(poly("x^2+y^2").newton_number().unwrap(), int(1));
        assert_eq!(poly("x^4+y^4+z^4+x*y*z").newton_number().unwrap(), int(11));
        assert_eq!(poly("x^3+y*z").newton_number(), Err(Error::NotConvenient));
    }
}
