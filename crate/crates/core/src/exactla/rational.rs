//! Rational numbers and integer vector helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rational = BigRational;

pub fn int(v: i64) -> Int {
    BigInt::from(v)
}

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn rat_int(v: &Int) -> Rational {
    Rational::from_integer(v.clone())
}

pub fn ivec(values: &[i64]) -> Vec<Int> {
    values.iter().map(|&v| BigInt::from(v)).collect()
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::InvalidInput(format!("not a rational number: {text:?}"));
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_rat(a: &[Rational], b: &[Int]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * rat_int(y)).fold(Rational::zero(), |acc, v| acc + v)
}

pub fn gcd_all<'a>(values: impl IntoIterator<Item = &'a Int>) -> Int {
    values.into_iter().fold(Int::zero(), |acc, v| acc.gcd(v))
}

/// Divides out the content of an integer vector. The zero vector is returned
/// unchanged.
pub fn primitive(v: &[Int]) -> Vec<Int> {
    let g = gcd_all(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Clears denominators: returns the integer vector `l * v` where `l` is the
/// lcm of the denominators.
pub fn clear_denominators(v: &[Rational]) -> (Vec<Int>, Int) {
    let l = v.iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()));
    let ints = v.iter().map(|x| (x * rat_int(&l)).to_integer()).collect();
    (ints, l)
}

pub fn is_nonnegative(v: &[Int]) -> bool {
    v.iter().all(|x| !x.is_negative())
}

pub fn is_zero_vec(v: &[Int]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn sub_vec(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add_vec(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn format_vec(v: &[Int]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        assert_eq!(format_rational(&rat(6, 4)), "3/2");
        assert_eq!(format_rational(&rat(-4, 2)), "-2");
        assert_eq!(format_rational(&rat(0, 5)), "0");
        assert_eq!(format_rational(&rat(3, -9)), "-1/3");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["5/6", "-7/3", "12", "0"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("10/4").unwrap(), rat(5, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn primitive_vectors() {
        assert_eq!(primitive(&ivec(&[4, 6, 0])), ivec(&[2, 3, 0]));
        assert_eq!(primitive(&ivec(&[0, 0])), ivec(&[0, 0]));
        assert_eq!(primitive(&ivec(&[-3, 9])), ivec(&[-1, 3]));
    }
}
