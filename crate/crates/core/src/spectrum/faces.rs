//! Per-face polynomials: the half-open box sums `qhat`, the open box sums
//! `q` and the combinatorial polynomials `r`.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactla::lattice::{lattice_points, parallelepiped_constraints, Strictness};
use crate::exactla::matrix::solve_in_basis;
use crate::exactla::rational::{rat_int, Int, Rational};
use crate::newton::{NewtonPolyhedron, Triangulator};
use crate::puiseux::FracPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceInvariants {
    pub qhat: FracPoly,
    pub q: FracPoly,
    pub r: FracPoly,
}

fn sign(k: i64) -> Int {
    if k.rem_euclid(2) == 0 {
        Int::one()
    } else {
        -Int::one()
    }
}

/// Triangulation of every face, indexed by face id (empty for the empty face).
pub fn triangulations(p: &NewtonPolyhedron, order: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let tri = Triangulator::new(p, order);
    p.faces.iter().map(|f| if f.id == 0 { Vec::new() } else { tri.simplices(f.id) }).collect()
}

pub fn default_order(p: &NewtonPolyhedron) -> Vec<usize> {
    (0..p.vertices.len()).collect()
}

/// Sum of `t^ell(nu)` over lattice points `nu = sum mu_j g_j` with each
/// `mu_j` in `[0,1)` or, where `excluded[j]`, in `(0,1]`.
fn box_sum(p: &NewtonPolyhedron, sigma: usize, gens: &[Vec<Int>], excluded: &[bool]) -> Result<FracPoly> {
    let lower: Vec<Strictness> =
        excluded.iter().map(|&x| if x { Strictness::Strict } else { Strictness::Weak }).collect();
    let upper: Vec<Strictness> =
        excluded.iter().map(|&x| if x { Strictness::Weak } else { Strictness::Strict }).collect();
    let cons = parallelepiped_constraints(gens, &lower, &upper)?;
    let face = &p.faces[sigma];
    let mut out = FracPoly::zero();
    for nu in lattice_points(p.n, &cons)? {
        out.add_term(face.ell_at(&nu), Int::one());
    }
    Ok(out)
}

/// Open box sum `sum t^(sum c_j)` over lattice points with every `c_j` in
/// `(0,1)`; defined for simplex faces.
pub fn open_box(p: &NewtonPolyhedron, sigma: usize) -> Result<FracPoly> {
    if sigma == 0 {
        return Ok(FracPoly::one());
    }
    let gens = p.face_vertices(sigma);
    let d = gens.len();
    let cons = parallelepiped_constraints(&gens, &vec![Strictness::Strict; d], &vec![Strictness::Strict; d])?;
    let face = &p.faces[sigma];
    let mut out = FracPoly::zero();
    for nu in lattice_points(p.n, &cons)? {
        out.add_term(face.ell_at(&nu), Int::one());
    }
    Ok(out)
}

/// A point in the interior of the first cone that lies on no facet
/// hyperplane of any cone; returns the exclusion pattern of every cone.
fn half_open_pattern(cones: &[Vec<Vec<Int>>]) -> Result<Vec<Vec<bool>>> {
    let first = &cones[0];
    let n = first[0].len();
    let mut eps = Rational::new(Int::one(), Int::from(2));
    for _ in 0..256 {
        let mut point = vec![Rational::zero(); n];
        let mut w = eps.clone();
        for g in first {
            w = &w * &eps;
            let coef = Rational::one() + &w;
            for (x, gi) in point.iter_mut().zip(g) {
                *x += &coef * rat_int(gi);
            }
        }
        let mut patterns = Vec::with_capacity(cones.len());
        let mut generic = true;
        for gens in cones {
            let lambda =
                solve_in_basis(gens, &point).ok_or_else(|| Error::InvalidInput("cone outside the face span".into()))?;
            if lambda.iter().any(Zero::is_zero) {
                generic = false;
                break;
            }
            patterns.push(lambda.iter().map(Signed::is_negative).collect());
        }
        if generic {
            return Ok(patterns);
        }
        eps /= Int::from(2);
    }
    unreachable!("a generic perturbation exists for all small enough eps")
}

/// `qhat_sigma` from the half-open decomposition of the cone over `sigma`
/// induced by `simplices`.
pub fn qhat_from_triangulation(p: &NewtonPolyhedron, sigma: usize, simplices: &[Vec<usize>]) -> Result<FracPoly> {
    if sigma == 0 {
        return Ok(FracPoly::one());
    }
    let cones: Vec<Vec<Vec<Int>>> =
        simplices.iter().map(|s| s.iter().map(|&v| p.vertices[v].clone()).collect()).collect();
    if cones.len() == 1 {
        return box_sum(p, sigma, &cones[0], &vec![false; cones[0].len()]);
    }
    let patterns = half_open_pattern(&cones)?;
    let mut out = FracPoly::zero();
    for (gens, excl) in cones.iter().zip(&patterns) {
        out = &out + &box_sum(p, sigma, gens, excl)?;
    }
    Ok(out)
}

pub fn qhat_face(p: &NewtonPolyhedron, sigma: usize) -> Result<FracPoly> {
    let tri = Triangulator::new(p, &default_order(p));
    if sigma == 0 {
        return Ok(FracPoly::one());
    }
    qhat_from_triangulation(p, sigma, &tri.simplices(sigma))
}

/// Moebius inversion of `qhat` over the faces below `sigma`.
pub fn q_from_qhat(p: &NewtonPolyhedron, sigma: usize, qhat: &[FracPoly]) -> FracPoly {
    let d = p.faces[sigma].d_cone as i64;
    p.faces_below(sigma).into_iter().map(|tau| qhat[tau].scale(&sign(d - p.faces[tau].d_cone as i64))).sum()
}

/// `r_sigma = sum over compact tau >= sigma of (-1)^(n-k) (t-1)^(k-d)`.
pub fn r_face(p: &NewtonPolyhedron, sigma: usize) -> FracPoly {
    let n = p.n as i64;
    p.faces_above(sigma)
        .into_iter()
        .map(|tau| {
            let f = &p.faces[tau];
            FracPoly::t_minus_one_pow(f.k - f.d_cone).scale(&sign(n - f.k as i64))
        })
        .sum()
}

pub fn q_face(p: &NewtonPolyhedron, sigma: usize) -> Result<FracPoly> {
    let qhat: Vec<FracPoly> = p
        .faces
        .iter()
        .map(|f| if p.le(f.id, sigma) { qhat_face(p, f.id) } else { Ok(FracPoly::zero()) })
        .collect::<Result<_>>()?;
    Ok(q_from_qhat(p, sigma, &qhat))
}

/// `qhat`, `q` and `r` for every face, indexed by face id.
pub fn face_invariants_with_order(p: &NewtonPolyhedron, order: &[usize]) -> Result<Vec<FaceInvariants>> {
    let tris = triangulations(p, order);
    let qhat: Vec<FracPoly> =
        (0..p.faces.len()).into_par_iter().map(|s| qhat_from_triangulation(p, s, &tris[s])).collect::<Result<_>>()?;
    Ok((0..p.faces.len())
        .map(|s| FaceInvariants { qhat: qhat[s].clone(), q: q_from_qhat(p, s, &qhat), r: r_face(p, s) })
        .collect())
}

pub fn face_invariants(p: &NewtonPolyhedron) -> Result<Vec<FaceInvariants>> {
    face_invariants_with_order(p, &default_order(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rational::rat;
    use crate::newton::parse_polynomial;

    fn poly(s: &str) -> NewtonPolyhedron {
        NewtonPolyhedron::build(parse_polynomial(s, None).unwrap()).unwrap()
    }

    fn fp(terms: &[(i64, i64, i64)]) -> FracPoly {
        FracPoly::from_terms(terms.iter().map(|&(c, a, b)| (rat(a, b), Int::from(c))))
    }

    #[test]
    fn cusp_edge() {
        let p = poly("x^2+y^3");
        let inv = face_invariants(&p).unwrap();
        let want = fp(&[(1, 0, 1), (1, 1, 2), (1, 1, 3), (1, 2, 3), (1, 5, 6), (1, 7, 6)]);
        assert_eq!(inv[3].qhat, want);
        assert_eq!(inv[3].q, fp(&[(1, 5, 6), (1, 7, 6)]));
        assert_eq!(inv[1].q, fp(&[(1, 1, 3), (1, 2, 3)]));
        assert_eq!(open_box(&p, 3).unwrap(), inv[3].q);
    }

    #[test]
    fn non_simplicial_example() {
        let p = poly("x^2+y^2+x*z+y*z+z^4");
        let inv = face_invariants(&p).unwrap();
        let square = p.faces.iter().find(|f| !f.is_simplex).unwrap().id;
        assert_eq!(inv[square].q, fp(&[(1, 1, 1), (1, 3, 2)]));
        // every other face with a nonzero r has q = 0
        for f in p.compact_faces() {
            if f.id != square && !inv[f.id].r.is_zero() {
                assert!(inv[f.id].q.is_zero(), "face {} has q = {}", f.id, inv[f.id].q);
            }
        }
        // faces with r = 0 may carry box points, e.g. z, z^2, z^3 below (0,0,4)
        let top = p.face_by_vertices(&[p.vertex_id(&crate::exactla::rational::ivec(&[0, 0, 4])).unwrap()]).unwrap();
        assert_eq!(inv[top].q, fp(&[(1, 1, 4), (1, 1, 2), (1, 3, 4)]));
        assert!(inv[top].r.is_zero());
        assert_eq!(inv[0].q, FracPoly::one());
        assert_eq!(inv[square].r, FracPoly::one());
        assert_eq!(inv[0].r, fp(&[(-1, 1, 1)]));
    }

    #[test]
    fn non_convenient_vertex() {
        let p = poly("x^4+y*z");
        let v = p.face_by_vertices(&[p.vertex_id(&crate::exactla::rational::ivec(&[4, 0, 0])).unwrap()]).unwrap();
        assert_eq!(r_face(&p, v), fp(&[(1, 1, 1)]));
        assert_eq!(q_face(&p, v).unwrap(), fp(&[(1, 1, 4), (1, 2, 4), (1, 3, 4)]));
    }
}
