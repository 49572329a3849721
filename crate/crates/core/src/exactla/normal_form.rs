//! Hermite and Smith normal forms over the integers, with the unimodular
//! transforms that produce them.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use super::rational::{gcd_all, Int, Rational};
use crate::error::{Error, Result};

/// Row-style Hermite normal form. Returns `(h, u)` with `u` unimodular and
/// `u * m = h`.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut r = 0;
    for c in 0..h.cols() {
        if r == h.rows() {
            break;
        }
        loop {
            let best =
                (r..h.rows()).filter(|&i| !h[(i, c)].is_zero()).min_by(|&a, &b| h[(a, c)].abs().cmp(&h[(b, c)].abs()));
            let Some(p) = best else { break };
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..h.rows() {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = -h[(i, c)].div_floor(&h[(r, c)]);
                h.add_row_multiple(i, r, &q);
                u.add_row_multiple(i, r, &q);
                if !h[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = -h[(i, c)].div_floor(&h[(r, c)]);
            h.add_row_multiple(i, r, &q);
            u.add_row_multiple(i, r, &q);
        }
        r += 1;
    }
    (h, u)
}

/// Smith decomposition of `m`: unimodular `u`, `v` and diagonal `d` with
/// `u * m * v = d` and `d[i][i] | d[i+1][i+1]`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl Smith {
    pub fn diagonal(&self) -> Vec<Int> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }
}

pub fn smith_decomposition(m: &IntMatrix) -> Smith {
    let rows = m.rows();
    let cols = m.cols();
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !d[(i, j)].is_zero())
            .min_by(|&a, &b| d[a].abs().cmp(&d[b].abs()));
        let Some((pi, pj)) = pivot else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].div_floor(&d[(t, t)]);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !d[(i, j)].is_multiple_of(&d[(t, t)]));
                match bad {
                    None => break,
                    Some((i, _)) => {
                        let one = Int::one();
                        d.add_row_multiple(t, i, &one);
                        u.add_row_multiple(t, i, &one);
                    }
                }
            }
            // move the smallest remaining entry of row/column t to the pivot
            let best = (t..rows)
                .map(|i| (i, t))
                .chain((t + 1..cols).map(|j| (t, j)))
                .filter(|&p| !d[p].is_zero())
                .min_by(|&a, &b| d[a].abs().cmp(&d[b].abs()))
                .expect("pivot row and column cannot both vanish");
            if best.1 == t {
                d.swap_rows(t, best.0);
                u.swap_rows(t, best.0);
            } else {
                d.swap_cols(t, best.1);
                v.swap_cols(t, best.1);
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    Smith { d, u, v, rank: t }
}

/// Elementary divisors, padded with zeros to `min(rows, cols)` entries.
pub fn smith_normal_form(m: &IntMatrix) -> Vec<Int> {
    smith_decomposition(m).diagonal()
}

/// Basis of the integer kernel `{x in Z^n : m x = 0}`, returned as vectors.
/// The basis is saturated: it generates every integer kernel vector.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<Int>> {
    let s = smith_decomposition(m);
    (s.rank..m.cols()).map(|j| s.v.column(j)).collect()
}

/// Lattice content of the affine space `base + span(directions)`.
///
/// Returns 0 when the space passes through the origin, otherwise the largest
/// `d` such that the image of the space in `Z^n / (Z^n ∩ span)` is `d` times a
/// lattice vector.
pub fn face_delta(base: &[Int], directions: &[Vec<Int>]) -> Result<Int> {
    let n = base.len();
    if directions.iter().any(|d| d.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: directions[0].len() });
    }
    let nonzero: Vec<Vec<Int>> = directions.iter().filter(|d| d.iter().any(|x| !x.is_zero())).cloned().collect();
    if nonzero.is_empty() {
        return Ok(gcd_all(base));
    }
    let s = smith_decomposition(&IntMatrix::from_rows(&nonzero)?);
    let image: Vec<Int> = (s.rank..n).map(|j| (0..n).map(|i| &base[i] * &s.v[(i, j)]).sum()).collect();
    Ok(gcd_all(&image))
}

/// Rational-base variant of [`face_delta`]; fails with `NoLatticeScale` when
/// the projected point is not integral.
pub fn face_delta_rational(base: &[Rational], directions: &[Vec<Int>]) -> Result<Int> {
    let n = base.len();
    let nonzero: Vec<Vec<Int>> = directions.iter().filter(|d| d.iter().any(|x| !x.is_zero())).cloned().collect();
    let (rank, v) = if nonzero.is_empty() {
        (0, IntMatrix::identity(n))
    } else {
        let s = smith_decomposition(&IntMatrix::from_rows(&nonzero)?);
        (s.rank, s.v)
    };
    let mut image = Vec::with_capacity(n - rank);
    for j in rank..n {
        let x: Rational =
            (0..n).fold(Rational::zero(), |acc, i| acc + &base[i] * Rational::from_integer(v[(i, j)].clone()));
        if !x.is_integer() {
            return Err(Error::NoLatticeScale);
        }
        image.push(x.to_integer());
    }
    Ok(gcd_all(&image))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rational::{int, ivec, rat};

    fn is_hnf(h: &IntMatrix) -> bool {
        let mut last_pivot: Option<usize> = None;
        let mut seen_zero = false;
        for i in 0..h.rows() {
            let Some(c) = (0..h.cols()).find(|&j| !h[(i, j)].is_zero()) else {
                seen_zero = true;
                continue;
            };
            if seen_zero || h[(i, c)].is_negative() || last_pivot.is_some_and(|p| c <= p) {
                return false;
            }
            for k in 0..i {
                if h[(k, c)].is_negative() || h[(k, c)] >= h[(i, c)] {
                    return false;
                }
            }
            last_pivot = Some(c);
        }
        true
    }

    #[test]
    fn hnf_examples() {
        let m = IntMatrix::from_i64(&[&[2, 4], &[1, 3]]);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(h, IntMatrix::from_i64(&[&[1, 1], &[0, 2]]));
        assert_eq!(u.mul(&m), h);
        assert_eq!(u.determinant().abs(), int(1));

        let m = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        assert_eq!(hermite_normal_form(&m).0, m);
        let z = IntMatrix::from_i64(&[&[0, 0]]);
        assert_eq!(hermite_normal_form(&z).0, z);
    }

    #[test]
    fn hnf_is_idempotent_and_valid() {
        let m = IntMatrix::from_i64(&[&[3, 5, -7], &[6, 1, 4], &[0, -9, 2], &[12, 12, 0]]);
        let (h, u) = hermite_normal_form(&m);
        assert!(is_hnf(&h));
        assert_eq!(u.mul(&m), h);
        assert_eq!(hermite_normal_form(&h).0, h);
    }

    #[test]
    fn snf_examples() {
        let diag = |rows: &[&[i64]]| smith_normal_form(&IntMatrix::from_i64(rows));
        assert_eq!(diag(&[&[2, 0], &[0, 3]]), ivec(&[1, 6]));
        assert_eq!(diag(&[&[2, 4], &[1, 3]]), ivec(&[1, 2]));
        assert_eq!(diag(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), ivec(&[1, 1, 1]));
        assert_eq!(diag(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]), ivec(&[2, 6, 12]));
    }

    #[test]
    fn snf_transforms() {
        let m = IntMatrix::from_i64(&[&[4, 6, 2], &[2, 2, 8]]);
        let s = smith_decomposition(&m);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
        assert_eq!(s.u.determinant().abs(), int(1));
        assert_eq!(s.v.determinant().abs(), int(1));
    }

    #[test]
    fn kernel_is_saturated() {
        let m = IntMatrix::from_i64(&[&[2, 4, 6]]);
        let k = integer_kernel(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul(&IntMatrix::from_rows(std::slice::from_ref(v)).unwrap().transpose()).is_zero_row(0));
        }
        // (−2, 1, 0) and (−3, 0, 1) generate the kernel, so the lattice index is 1
        let km = IntMatrix::from_rows(&k).unwrap();
        assert_eq!(smith_normal_form(&km), ivec(&[1, 1]));
    }

    #[test]
    fn delta_examples() {
        let e = ivec(&[2, 0]);
        let dir = vec![ivec(&[-2, 3])];
        assert_eq!(face_delta(&e, &dir).unwrap(), int(6));
        assert_eq!(face_delta(&ivec(&[1, 1, 1]), &[]).unwrap(), int(1));
        assert_eq!(face_delta(&ivec(&[2, 2, 2]), &[]).unwrap(), int(2));
        assert_eq!(face_delta(&ivec(&[1, -1]), &[ivec(&[1, -1])]).unwrap(), int(0));
        let half = vec![rat(1, 2), rat(0, 1)];
        assert_eq!(face_delta_rational(&half, &[]), Err(Error::NoLatticeScale));
    }
}
