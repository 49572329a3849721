//! Finitely supported polynomials with rational exponents, in `t` and in
//! `(t, u)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactla::rational::{format_rational, parse_rational, Int, Rational};

/// `sum c_e t^e` with rational `e` and nonzero integer `c`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FracPoly {
    terms: BTreeMap<Rational, Int>,
}

impl FracPoly {
    pub fn zero() -> Self {
        FracPoly::default()
    }

    pub fn one() -> Self {
        FracPoly::monomial(Int::one(), Rational::zero())
    }

    pub fn monomial(c: Int, e: Rational) -> Self {
        let mut p = FracPoly::zero();
        p.add_term(e, c);
        p
    }

    /// `t^e`
    pub fn t_pow(e: Rational) -> Self {
        FracPoly::monomial(Int::one(), e)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Rational, Int)>) -> Self {
        let mut p = FracPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: Rational, c: Int) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Int::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &Int)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Rational) -> Int {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn min_exponent(&self) -> Option<&Rational> {
        self.terms.keys().next()
    }

    pub fn max_exponent(&self) -> Option<&Rational> {
        self.terms.keys().next_back()
    }

    /// `(1 - t)^k`
    pub fn one_minus_t_pow(k: usize) -> Self {
        let base = FracPoly::from_terms([(Rational::zero(), Int::one()), (Rational::one(), -Int::one())]);
        base.pow(k)
    }

    /// `(t - 1)^k`
    pub fn t_minus_one_pow(k: usize) -> Self {
        let base = FracPoly::from_terms([(Rational::zero(), -Int::one()), (Rational::one(), Int::one())]);
        base.pow(k)
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(FracPoly::one(), |acc, _| &acc * self)
    }

    pub fn scale(&self, c: &Int) -> Self {
        FracPoly::from_terms(self.terms.iter().map(|(e, v)| (e.clone(), v * c)))
    }

    /// Multiplies by `t^s`.
    pub fn shift(&self, s: &Rational) -> Self {
        FracPoly { terms: self.terms.iter().map(|(e, c)| (e + s, c.clone())).collect() }
    }

    /// `p(1/t) t^s`
    pub fn dual(&self, s: &Rational) -> Self {
        FracPoly { terms: self.terms.iter().map(|(e, c)| (s - e, c.clone())).collect() }
    }

    pub fn evaluate_at_one(&self) -> Int {
        self.terms.values().sum()
    }

    pub fn has_integer_exponents(&self) -> bool {
        self.terms.keys().all(|e| e.is_integer())
    }

    /// Terms with exponent `<= bound`.
    pub fn truncate(&self, bound: &Rational) -> Self {
        FracPoly {
            terms: self.terms.iter().filter(|(e, _)| *e <= bound).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.terms.iter().map(|(e, c)| json!({"c": int_value(c), "e": format_rational(e)})).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v.as_array().ok_or_else(|| Error::InvalidInput("expected an array of terms".into()))?;
        let mut p = FracPoly::zero();
        for t in arr {
            let e =
                t.get("e").and_then(Value::as_str).ok_or_else(|| Error::InvalidInput("term without \"e\"".into()))?;
            let c = t.get("c").ok_or_else(|| Error::InvalidInput("term without \"c\"".into()))?;
            p.add_term(parse_rational(e)?, value_int(c)?);
        }
        Ok(p)
    }

    /// Parses the text rendering produced by `Display`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = FracPoly::zero();
        for (sign, body) in split_signed_terms(text)? {
            let (c, rest) = split_coefficient(body)?;
            let e = match rest {
                None => Rational::zero(),
                Some(r) => parse_power(r, "t")?,
            };
            p.add_term(e, c * sign);
        }
        Ok(p)
    }
}

/// JSON integers for small values, decimal strings beyond `i64`.
pub fn int_value(c: &Int) -> Value {
    match i64::try_from(c) {
        Ok(v) => Value::from(v),
        Err(_) => Value::String(c.to_string()),
    }
}

pub fn value_int(v: &Value) -> Result<Int> {
    match v {
        Value::Number(n) => n.as_i64().map(Int::from).ok_or_else(|| Error::InvalidInput(format!("bad integer {n}"))),
        Value::String(s) => s.parse().map_err(|_| Error::InvalidInput(format!("bad integer {s:?}"))),
        _ => Err(Error::InvalidInput("expected an integer".into())),
    }
}

fn split_signed_terms(text: &str) -> Result<Vec<(Int, &str)>> {
    let text = text.trim();
    if text == "0" {
        return Ok(Vec::new());
    }
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    let mut sign = Int::one();
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 => {
                let body = text[start..i].trim();
                if body.is_empty() {
                    if i != 0 && !out.is_empty() {
                        return Err(Error::InvalidInput(format!("dangling sign in {text:?}")));
                    }
                } else {
                    out.push((sign.clone(), body));
                }
                sign = if b == b'-' { -Int::one() } else { Int::one() };
                start = i + 1;
            }
            _ => {}
        }
    }
    let body = text[start..].trim();
    if body.is_empty() {
        return Err(Error::InvalidInput(format!("dangling sign in {text:?}")));
    }
    out.push((sign, body));
    Ok(out)
}

/// Splits `c*rest`, `rest` or `c`.
fn split_coefficient(body: &str) -> Result<(Int, Option<&str>)> {
    let bad = || Error::InvalidInput(format!("bad term {body:?}"));
    if body.as_bytes()[0].is_ascii_digit() {
        match body.split_once('*') {
            Some((c, rest)) => Ok((c.trim().parse().map_err(|_| bad())?, Some(rest.trim()))),
            None => Ok((body.parse().map_err(|_| bad())?, None)),
        }
    } else {
        Ok((Int::one(), Some(body)))
    }
}

fn parse_power(s: &str, var: &str) -> Result<Rational> {
    let bad = || Error::InvalidInput(format!("bad power {s:?}"));
    let rest = s.strip_prefix(var).ok_or_else(bad)?;
    if rest.is_empty() {
        return Ok(Rational::one());
    }
    let rest = rest.strip_prefix('^').ok_or_else(bad)?;
    let inner = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(rest);
    parse_rational(inner)
}

fn format_power(var: &str, e: &Rational) -> Option<String> {
    if e.is_zero() {
        None
    } else if e.is_one() {
        Some(var.to_string())
    } else if e.is_integer() && e.is_positive() {
        Some(format!("{var}^{}", e.numer()))
    } else {
        Some(format!("{var}^({})", format_rational(e)))
    }
}

fn write_terms<'a>(f: &mut fmt::Formatter<'_>, terms: impl Iterator<Item = (Vec<String>, &'a Int)>) -> fmt::Result {
    let mut first = true;
    for (powers, c) in terms {
        let negative = c.is_negative();
        if first {
            if negative {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if negative { " - " } else { " + " })?;
        }
        first = false;
        let a = c.abs();
        let mut factors: Vec<String> = Vec::new();
        if !a.is_one() || powers.is_empty() {
            factors.push(a.to_string());
        }
        factors.extend(powers);
        write!(f, "{}", factors.join("*"))?;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for FracPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().map(|(e, c)| (format_power("t", e).into_iter().collect(), c)))
    }
}

impl Add for &FracPoly {
    type Output = FracPoly;
    fn add(self, rhs: &FracPoly) -> FracPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &FracPoly {
    type Output = FracPoly;
    fn sub(self, rhs: &FracPoly) -> FracPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Mul for &FracPoly {
    type Output = FracPoly;
    fn mul(self, rhs: &FracPoly) -> FracPoly {
        let mut acc: BTreeMap<Rational, Int> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                *acc.entry(e1 + e2).or_insert_with(Int::zero) += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        FracPoly { terms: acc }
    }
}

impl Neg for &FracPoly {
    type Output = FracPoly;
    fn neg(self) -> FracPoly {
        FracPoly { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl std::iter::Sum for FracPoly {
    fn sum<I: Iterator<Item = FracPoly>>(iter: I) -> FracPoly {
        iter.fold(FracPoly::zero(), |acc, p| &acc + &p)
    }
}

/// `sum c t^a u^w` with rational `a` and integer `w`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FracPoly2 {
    terms: BTreeMap<(Rational, i64), Int>,
}

impl FracPoly2 {
    pub fn zero() -> Self {
        FracPoly2::default()
    }

    pub fn add_term(&mut self, e: Rational, w: i64, c: Int) {
        if c.is_zero() {
            return;
        }
        let key = (e, w);
        let entry = self.terms.entry(key.clone()).or_insert_with(Int::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Rational, i64, Int)>) -> Self {
        let mut p = FracPoly2::zero();
        for (e, w, c) in terms {
            p.add_term(e, w, c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Rational, i64), &Int)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Rational, w: i64) -> Int {
        self.terms.get(&(e.clone(), w)).cloned().unwrap_or_default()
    }

    /// Sum of all coefficients.
    pub fn mass(&self) -> Int {
        self.terms.values().sum()
    }

    /// Forgets the `u` grading.
    pub fn at_u_one(&self) -> FracPoly {
        FracPoly::from_terms(self.terms.iter().map(|((e, _), c)| (e.clone(), c.clone())))
    }

    /// Image under `(a, w) -> (s - a, m - w)`.
    pub fn involution(&self, s: &Rational, m: i64) -> Self {
        FracPoly2 { terms: self.terms.iter().map(|((e, w), c)| ((s - e, m - w), c.clone())).collect() }
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms.iter().map(|((e, w), c)| json!({"c": int_value(c), "e": format_rational(e), "w": w})).collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v.as_array().ok_or_else(|| Error::InvalidInput("expected an array of terms".into()))?;
        let mut p = FracPoly2::zero();
        for t in arr {
            let e =
                t.get("e").and_then(Value::as_str).ok_or_else(|| Error::InvalidInput("term without \"e\"".into()))?;
            let w =
                t.get("w").and_then(Value::as_i64).ok_or_else(|| Error::InvalidInput("term without \"w\"".into()))?;
            let c = t.get("c").ok_or_else(|| Error::InvalidInput("term without \"c\"".into()))?;
            p.add_term(parse_rational(e)?, w, value_int(c)?);
        }
        Ok(p)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut p = FracPoly2::zero();
        for (sign, body) in split_signed_terms(text)? {
            let (c, rest) = split_coefficient(body)?;
            let (mut e, mut w) = (Rational::zero(), 0i64);
            if let Some(rest) = rest {
                for factor in rest.split('*').map(str::trim) {
                    if factor.starts_with('t') {
                        e = parse_power(factor, "t")?;
                    } else {
                        let x = parse_power(factor, "u")?;
                        if !x.is_integer() {
                            return Err(Error::InvalidInput(format!("fractional u power in {factor:?}")));
                        }
                        w = i64::try_from(x.to_integer())
                            .map_err(|_| Error::InvalidInput("u power too large".into()))?;
                    }
                }
            }
            p.add_term(e, w, c * sign);
        }
        Ok(p)
    }
}

impl fmt::Display for FracPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.terms.iter().map(|((e, w), c)| {
                let u = Rational::from_integer(Int::from(*w));
                (format_power("t", e).into_iter().chain(format_power("u", &u)).collect(), c)
            }),
        )
    }
}

impl Add for &FracPoly2 {
    type Output = FracPoly2;
    fn add(self, rhs: &FracPoly2) -> FracPoly2 {
        let mut out = self.clone();
        for ((e, w), c) in &rhs.terms {
            out.add_term(e.clone(), *w, c.clone());
        }
        out
    }
}

/// `r(t u^2) u^d q(t)`; `r` must have integer exponents.
pub fn substitute_pairs(r: &FracPoly, d_sigma: i64, q: &FracPoly) -> Result<FracPoly2> {
    let mut out = FracPoly2::zero();
    for (er, cr) in r.terms() {
        if !er.is_integer() {
            return Err(Error::NonIntegerExponentInR);
        }
        let w = 2 * i64::try_from(er.to_integer()).map_err(|_| Error::NonIntegerExponentInR)? + d_sigma;
        for (eq, cq) in q.terms() {
            out.add_term(er + eq, w, cr * cq);
        }
    }
    Ok(out)
}
