//! Exact double description: facets of `conv(points) + cone(rays)`.

use num_traits::{Signed, Zero};

use super::matrix::{rational_rank, solve_in_basis};
use super::rational::{dot, format_vec, primitive, rat_int, Int, Rational};
use crate::error::{Error, Result};

/// The inequality `<normal, u> >= offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Inequality {
    pub normal: Vec<Int>,
    pub offset: Int,
}

impl Inequality {
    pub fn slack(&self, u: &[Int]) -> Int {
        dot(&self.normal, u) - &self.offset
    }

    pub fn is_tight(&self, u: &[Int]) -> bool {
        self.slack(u).is_zero()
    }
}

impl std::fmt::Display for Inequality {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "<{}, u> >= {}", format_vec(&self.normal), self.offset)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRep {
    pub dim: usize,
    pub inequalities: Vec<Inequality>,
}

impl HRep {
    pub fn contains(&self, u: &[Int]) -> bool {
        self.inequalities.iter().all(|q| !q.slack(u).is_negative())
    }

    /// Inequalities `<v, r> >= 0` that a recession ray must satisfy.
    pub fn admits_ray(&self, r: &[Int]) -> bool {
        self.inequalities.iter().all(|q| !dot(&q.normal, r).is_negative())
    }
}

/// Fixed-width bitset over constraint indices.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
    fn subset_of(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

struct Ray {
    v: Vec<Int>,
    zeros: Bits,
}

/// Extreme rays of the pointed cone `{x : <row, x> >= 0 for every row}`.
///
/// Returns `None` when the rows do not have full column rank, i.e. the cone
/// contains a line. The zero-dimensional case returns no rays.
pub fn extreme_rays(rows: &[Vec<Int>]) -> Option<Vec<Vec<Int>>> {
    let m = rows.first().map_or(0, Vec::len);
    if m == 0 {
        return Some(Vec::new());
    }
    if rational_rank(rows) < m {
        return None;
    }
    // greedy choice of m independent rows for the starting simplex cone
    let mut basis: Vec<usize> = Vec::with_capacity(m);
    for (i, _) in rows.iter().enumerate() {
        let mut trial: Vec<Vec<Int>> = basis.iter().map(|&b| rows[b].clone()).collect();
        trial.push(rows[i].clone());
        if rational_rank(&trial) == trial.len() {
            basis.push(i);
            if basis.len() == m {
                break;
            }
        }
    }

    // columns of the inverse of the basis matrix are the initial rays
    let basis_rows: Vec<Vec<Int>> = basis.iter().map(|&b| rows[b].clone()).collect();
    let transposed: Vec<Vec<Int>> = (0..m).map(|j| basis_rows.iter().map(|r| r[j].clone()).collect()).collect();
    let mut rays: Vec<Ray> = Vec::with_capacity(m);
    for k in 0..m {
        // solve basis_rows * x = e_k
        let target: Vec<Rational> =
            (0..m).map(|i| if i == k { Rational::from_integer(1.into()) } else { Rational::zero() }).collect();
        let x = solve_in_basis(&transposed, &target).expect("basis rows are independent");
        let (ints, _) = super::rational::clear_denominators(&x);
        let v = primitive(&ints);
        rays.push(Ray { v, zeros: Bits::new(rows.len()) });
    }
    let mut processed: Vec<usize> = Vec::new();
    for &b in &basis {
        for r in rays.iter_mut() {
            if dot(&rows[b], &r.v).is_zero() {
                r.zeros.set(b);
            }
        }
        processed.push(b);
    }

    for (i, row) in rows.iter().enumerate() {
        if basis.contains(&i) {
            continue;
        }
        let vals: Vec<Int> = rays.iter().map(|r| dot(row, &r.v)).collect();
        let mut next: Vec<Ray> = Vec::new();
        let pos: Vec<usize> = (0..rays.len()).filter(|&j| vals[j].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&j| vals[j].is_negative()).collect();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zeros.and(&rays[q].zeros);
                if common.count() + 2 < m {
                    continue;
                }
                let adjacent = (0..rays.len()).filter(|&r| r != p && r != q).all(|r| !common.subset_of(&rays[r].zeros));
                if !adjacent {
                    continue;
                }
                let v: Vec<Int> = rays[q].v.iter().zip(&rays[p].v).map(|(a, b)| &vals[p] * a - &vals[q] * b).collect();
                let mut zeros = common;
                zeros.set(i);
                next.push(Ray { v: primitive(&v), zeros });
            }
        }
        for (j, mut r) in rays.into_iter().enumerate() {
            if vals[j].is_negative() {
                continue;
            }
            if vals[j].is_zero() {
                r.zeros.set(i);
            }
            next.push(r);
        }
        rays = next;
        processed.push(i);
    }
    let mut out: Vec<Vec<Int>> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    Some(out)
}

/// Irredundant H-representation of `conv(points) + cone(rays)`.
///
/// Requires a full-dimensional polyhedron. Normals are primitive and each
/// offset is attained on the input points.
pub fn double_description(points: &[Vec<Int>], rays: &[Vec<Int>]) -> Result<HRep> {
    let n = points.first().map(Vec::len).ok_or_else(|| Error::InvalidInput("no points".into()))?;
    for g in points.iter().chain(rays) {
        if g.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: g.len() });
        }
    }
    // y = (b, v) encodes <v,u> >= b; constraints v.p - b >= 0 and v.r >= 0
    let mut rows: Vec<Vec<Int>> = Vec::with_capacity(points.len() + rays.len());
    for p in points {
        let mut row = vec![Int::from(-1)];
        row.extend(p.iter().cloned());
        rows.push(row);
    }
    for r in rays {
        let mut row = vec![Int::zero()];
        row.extend(r.iter().cloned());
        rows.push(row);
    }
    let extreme = extreme_rays(&rows).ok_or(Error::NotFullDimensional)?;
    let mut inequalities: Vec<Inequality> = extreme
        .into_iter()
        .filter(|y| y[1..].iter().any(|x| !x.is_zero()))
        .map(|y| {
            let normal = primitive(&y[1..]);
            let offset = points.iter().map(|p| dot(&normal, p)).min().expect("points nonempty");
            Inequality { normal, offset }
        })
        .collect();
    inequalities.sort();
    inequalities.dedup();
    Ok(HRep { dim: n, inequalities })
}

/// Value of the linear functional `w` on the rational point `x`.
pub fn eval_rational(w: &[Int], x: &[Rational]) -> Rational {
    w.iter().zip(x).fold(Rational::zero(), |acc, (a, b)| acc + rat_int(a) * b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rational::{int, ivec};

    fn ineq(normal: &[i64], offset: i64) -> Inequality {
        Inequality { normal: ivec(normal), offset: int(offset) }
    }

    fn units(n: usize) -> Vec<Vec<Int>> {
        (0..n).map(|i| (0..n).map(|j| int((i == j) as i64)).collect()).collect()
    }

    #[test]
    fn cusp_hull() {
        let h = double_description(&[ivec(&[2, 0]), ivec(&[0, 3])], &units(2)).unwrap();
        let mut want = vec![ineq(&[3, 2], 6), ineq(&[1, 0], 0), ineq(&[0, 1], 0)];
        want.sort();
        assert_eq!(h.inequalities, want);
    }

    #[test]
    fn translated_orthant() {
        let h = double_description(&[ivec(&[1, 1])], &units(2)).unwrap();
        let mut want = vec![ineq(&[1, 0], 1), ineq(&[0, 1], 1)];
        want.sort();
        assert_eq!(h.inequalities, want);
    }

    #[test]
    fn interior_vertex_splits_the_simplex() {
        let pts = [ivec(&[7, 0, 0]), ivec(&[0, 7, 0]), ivec(&[0, 0, 7]), ivec(&[2, 2, 2])];
        let h = double_description(&pts, &units(3)).unwrap();
        assert!(h.inequalities.iter().all(|q| q.normal != ivec(&[1, 1, 1])));
        let through =
            h.inequalities.iter().filter(|q| q.is_tight(&pts[3]) && q.normal.iter().all(|x| x.is_positive())).count();
        assert_eq!(through, 3);
        for p in &pts {
            assert!(h.contains(p));
        }
    }

    #[test]
    fn lower_dimensional_input_is_rejected() {
        let r = double_description(&[ivec(&[0, 0]), ivec(&[1, 1])], &[]);
        assert_eq!(r, Err(Error::NotFullDimensional));
    }

    #[test]
    fn extreme_rays_of_orthant_and_lineality() {
        assert_eq!(extreme_rays(&units(3)).unwrap(), {
            let mut u = units(3);
            u.sort();
            u
        });
        assert!(extreme_rays(&[ivec(&[1, 0])]).is_none());
    }
}
