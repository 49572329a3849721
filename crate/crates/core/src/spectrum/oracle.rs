//! Independent oracles used to cross-check the face formulas.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactla::lattice::{lattice_points, Constraint};
use crate::exactla::rational::{rat_int, Int, Rational};
use crate::newton::NewtonPolyhedron;
use crate::puiseux::FracPoly;

/// Steenbrink spectrum of `sum x_i^(a_i)`: `sum over 0 < k_i < a_i of
/// t^(sum k_i / a_i)`.
pub fn bp_oracle(a: &[u32]) -> Result<FracPoly> {
    if a.iter().any(|&x| x < 2) {
        return Err(Error::InvalidInput("Brieskorn-Pham exponents must be at least 2".into()));
    }
    let mut out = FracPoly::zero();
    let mut k: Vec<u32> = vec![1; a.len()];
    loop {
        let e = k.iter().zip(a).fold(Rational::zero(), |acc, (&ki, &ai)| acc + Rational::new(ki.into(), ai.into()));
        out.add_term(e, Int::one());
        let mut i = 0;
        loop {
            if i == a.len() {
                return Ok(out);
            }
            if k[i] + 1 < a[i] {
                k[i] += 1;
                break;
            }
            k[i] = 1;
            i += 1;
        }
    }
}

/// `sum t^ell(nu)` over lattice points of the cone over `sigma` with
/// `ell(nu) <= bound`, found by direct enumeration against the facets of the
/// polyhedron.
pub fn cone_series_truncated(p: &NewtonPolyhedron, sigma: usize, bound: &Rational) -> Result<FracPoly> {
    let face = &p.faces[sigma];
    if sigma == 0 {
        return Ok(FracPoly::one());
    }
    let mut cons = Vec::new();
    for (fi, facet) in p.facets.iter().enumerate() {
        // <v, nu> - a * ell(nu) >= 0, with equality on facets through sigma
        let row: Vec<Rational> =
            facet.normal.iter().zip(&face.ell).map(|(v, l)| rat_int(v) - rat_int(&facet.offset) * l).collect();
        if face.facet_ids.contains(&fi) {
            cons.push(Constraint::weak(row.iter().map(|x| -x).collect(), Rational::zero()));
        }
        cons.push(Constraint::weak(row, Rational::zero()));
    }
    cons.push(Constraint::weak(face.ell.iter().map(|x| -x).collect(), -bound.clone()));
    let mut out = FracPoly::zero();
    for nu in lattice_points(p.n, &cons)? {
        out.add_term(face.ell_at(&nu), Int::one());
    }
    Ok(out)
}

/// Expansion of `qhat / (1-t)^d` up to exponent `bound`.
pub fn series_from_qhat(qhat: &FracPoly, d: usize, bound: &Rational) -> FracPoly {
    let mut out = FracPoly::zero();
    for (e, c) in qhat.terms() {
        // coefficient of t^j in (1-t)^(-d) is binom(j+d-1, d-1)
        let mut j = 0i64;
        let mut binom = if d == 0 { Int::zero() } else { Int::one() };
        loop {
            let exp = e + Rational::from_integer(Int::from(j));
            if &exp > bound {
                break;
            }
            let coef = if d == 0 { Int::from((j == 0) as i64) } else { binom.clone() };
            out.add_term(exp, c * coef);
            if d == 0 {
                break;
            }
            binom = binom * Int::from(j + d as i64) / Int::from(j + 1);
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rational::rat;

    #[test]
    fn brieskorn_pham_values() {
        let fp =
            |terms: &[(i64, i64, i64)]| FracPoly::from_terms(terms.iter().map(|&(c, a, b)| (rat(a, b), Int::from(c))));
        assert_eq!(bp_oracle(&[2, 3]).unwrap(), fp(&[(1, 5, 6), (1, 7, 6)]));
        assert_eq!(bp_oracle(&[2, 2]).unwrap(), fp(&[(1, 1, 1)]));
        assert_eq!(bp_oracle(&[3, 3]).unwrap(), fp(&[(1, 2, 3), (2, 1, 1), (1, 4, 3)]));
        assert!(bp_oracle(&[1, 3]).is_err());
    }

    #[test]
    fn cone_series_matches_hilbert_series() {
        use crate::newton::{parse_polynomial, NewtonPolyhedron};
        let p = NewtonPolyhedron::build(parse_polynomial("x^4+y^4+z^4+x*y*z", None).unwrap()).unwrap();
        let inv = crate::spectrum::face_invariants(&p).unwrap();
        let bound = rat(5, 2);
        for f in p.compact_faces().filter(|f| f.id != 0) {
            let direct = cone_series_truncated(&p, f.id, &bound).unwrap();
            assert_eq!(direct, series_from_qhat(&inv[f.id].qhat, f.d_cone, &bound), "face {}", f.id);
        }
    }
}
