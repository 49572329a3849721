//! Integer points of bounded rational polyhedra by bounding-box scan.

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::hull::extreme_rays;
use super::rational::{rat_int, Int, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strictness {
    Weak,
    Strict,
}

/// `<normal, u> >= offset` (weak) or `> offset` (strict).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub normal: Vec<Rational>,
    pub offset: Rational,
    pub strictness: Strictness,
}

impl Constraint {
    pub fn weak(normal: Vec<Rational>, offset: Rational) -> Self {
        Constraint { normal, offset, strictness: Strictness::Weak }
    }

    pub fn strict(normal: Vec<Rational>, offset: Rational) -> Self {
        Constraint { normal, offset, strictness: Strictness::Strict }
    }

    pub fn holds(&self, u: &[Int]) -> bool {
        let lhs = self.normal.iter().zip(u).fold(Rational::zero(), |acc, (a, x)| acc + a * rat_int(x));
        match self.strictness {
            Strictness::Weak => lhs >= self.offset,
            Strictness::Strict => lhs > self.offset,
        }
    }

    /// Integer form `(a, b)` with `<a, u> >= b` equivalent to this constraint.
    fn integral(&self) -> (Vec<Int>, Int) {
        let l = self.normal.iter().chain(std::iter::once(&self.offset)).fold(Int::from(1), |acc, x| acc.lcm(x.denom()));
        let scale = |x: &Rational| (x * rat_int(&l)).to_integer();
        (self.normal.iter().map(scale).collect(), scale(&self.offset))
    }
}

/// Integer bounding box `[lo, hi]` of the closure of the region, or `None`
/// when the region is empty.
fn bounding_box(dim: usize, constraints: &[Constraint]) -> Result<Option<(Vec<Int>, Vec<Int>)>> {
    // homogenize: (x0, x) with a.x - b x0 >= 0 and x0 >= 0
    let mut rows: Vec<Vec<Int>> = constraints
        .iter()
        .map(|c| {
            let (a, b) = c.integral();
            let mut row = vec![-b];
            row.extend(a);
            row
        })
        .collect();
    let mut x0 = vec![Int::zero(); dim + 1];
    x0[0] = Int::from(1);
    rows.push(x0);
    let rays = extreme_rays(&rows).ok_or(Error::UnboundedRegion)?;
    let (finite, infinite): (Vec<_>, Vec<_>) = rays.iter().partition(|r| r[0].is_positive());
    if finite.is_empty() {
        return Ok(None);
    }
    if !infinite.is_empty() {
        return Err(Error::UnboundedRegion);
    }
    let mut lo: Vec<Int> = Vec::with_capacity(dim);
    let mut hi: Vec<Int> = Vec::with_capacity(dim);
    for i in 0..dim {
        let coords = finite.iter().map(|r| Rational::new(r[i + 1].clone(), r[0].clone()));
        let (mn, mx) = coords.fold((None::<Rational>, None::<Rational>), |(mn, mx), c| {
            (
                Some(mn.map_or(c.clone(), |m| if c < m { c.clone() } else { m })),
                Some(mx.map_or(c.clone(), |m| if c > m { c } else { m })),
            )
        });
        lo.push(mn.expect("nonempty").ceil().to_integer());
        hi.push(mx.expect("nonempty").floor().to_integer());
    }
    Ok(Some((lo, hi)))
}

/// Every integer point satisfying all constraints.
///
/// Fails with `UnboundedRegion` unless the closure of the region is bounded.
/// Points are returned in lexicographic order.
pub fn lattice_points(dim: usize, constraints: &[Constraint]) -> Result<Vec<Vec<Int>>> {
    for c in constraints {
        if c.normal.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: c.normal.len() });
        }
    }
    let Some((lo, hi)) = bounding_box(dim, constraints)? else {
        return Ok(Vec::new());
    };
    if lo.iter().zip(&hi).any(|(l, h)| l > h) {
        return Ok(Vec::new());
    }
    let integral: Vec<(Vec<Int>, Int, Strictness)> = constraints
        .iter()
        .map(|c| {
            let (a, b) = c.integral();
            (a, b, c.strictness)
        })
        .collect();
    if let Some(points) = scan_small(&lo, &hi, &integral) {
        return Ok(points);
    }
    Ok(scan_big(&lo, &hi, &integral))
}

type Integral = (Vec<Int>, Int, Strictness);

fn scan_small(lo: &[Int], hi: &[Int], constraints: &[Integral]) -> Option<Vec<Vec<Int>>> {
    const LIMIT: i64 = 1 << 31;
    let small = |x: &Int| x.to_i64().filter(|v| v.abs() < LIMIT);
    let lo: Vec<i64> = lo.iter().map(small).collect::<Option<_>>()?;
    let hi: Vec<i64> = hi.iter().map(small).collect::<Option<_>>()?;
    let cons: Vec<(Vec<i128>, i128, Strictness)> = constraints
        .iter()
        .map(|(a, b, s)| {
            let a: Option<Vec<i128>> = a.iter().map(|x| x.to_i64().map(i128::from)).collect();
            Some((a?, i128::from(b.to_i64()?), *s))
        })
        .collect::<Option<_>>()?;
    let dim = lo.len();
    let mut out = Vec::new();
    let mut cur = lo.clone();
    if dim == 0 {
        let ok = cons.iter().all(|(_, b, s)| match s {
            Strictness::Weak => 0 >= *b,
            Strictness::Strict => 0 > *b,
        });
        return Some(if ok { vec![Vec::new()] } else { Vec::new() });
    }
    loop {
        let ok = cons.iter().all(|(a, b, s)| {
            let lhs: i128 = a.iter().zip(&cur).map(|(x, y)| x * i128::from(*y)).sum();
            match s {
                Strictness::Weak => lhs >= *b,
                Strictness::Strict => lhs > *b,
            }
        });
        if ok {
            out.push(cur.iter().map(|&v| Int::from(v)).collect());
        }
        let mut i = dim;
        loop {
            if i == 0 {
                return Some(out);
            }
            i -= 1;
            if cur[i] < hi[i] {
                cur[i] += 1;
                for (j, c) in cur.iter_mut().enumerate().skip(i + 1) {
                    *c = lo[j];
                }
                break;
            }
        }
    }
}

fn scan_big(lo: &[Int], hi: &[Int], constraints: &[Integral]) -> Vec<Vec<Int>> {
    let dim = lo.len();
    let mut out = Vec::new();
    let mut cur = lo.to_vec();
    loop {
        let ok = constraints.iter().all(|(a, b, s)| {
            let lhs: Int = a.iter().zip(&cur).map(|(x, y)| x * y).sum();
            match s {
                Strictness::Weak => &lhs >= b,
                Strictness::Strict => &lhs > b,
            }
        });
        if ok {
            out.push(cur.clone());
        }
        let mut i = dim;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < hi[i] {
                cur[i] += 1;
                cur[i + 1..dim].clone_from_slice(&lo[i + 1..dim]);
                break;
            }
        }
    }
}

/// Constraints describing `{sum c_j g_j : bounds on c}` inside the linear
/// span of the generators `g_j` (assumed linearly independent). Each `c_j`
/// is `lambda_j(u)` for the rows of the left inverse; the span is cut out by
/// equalities from a basis of its orthogonal complement.
pub fn parallelepiped_constraints(
    generators: &[Vec<Int>],
    lower: &[Strictness],
    upper: &[Strictness],
) -> Result<Vec<Constraint>> {
    use super::matrix::{left_inverse, IntMatrix};
    use super::normal_form::integer_kernel;
    let dim = generators.first().map_or(0, Vec::len);
    let li = left_inverse(generators).ok_or_else(|| Error::InvalidInput("dependent generators".into()))?;
    let one = Rational::from_integer(1.into());
    let mut out = Vec::new();
    for (j, row) in li.iter().enumerate() {
        out.push(Constraint { normal: row.clone(), offset: Rational::zero(), strictness: lower[j] });
        let neg: Vec<Rational> = row.iter().map(|x| -x).collect();
        out.push(Constraint { normal: neg, offset: -one.clone(), strictness: upper[j] });
    }
    if !generators.is_empty() && generators.len() < dim {
        let w = IntMatrix::from_rows(generators)?;
        for k in integer_kernel(&w) {
            let r: Vec<Rational> = k.iter().map(rat_int).collect();
            let neg: Vec<Rational> = r.iter().map(|x| -x).collect();
            out.push(Constraint::weak(r, Rational::zero()));
            out.push(Constraint::weak(neg, Rational::zero()));
        }
    }
    if generators.is_empty() {
        for i in 0..dim {
            let mut e = vec![Rational::zero(); dim];
            e[i] = one.clone();
            out.push(Constraint::weak(e.clone(), Rational::zero()));
            out.push(Constraint::weak(e.iter().map(|x| -x).collect(), Rational::zero()));
        }
    }
    Ok(out)
}
