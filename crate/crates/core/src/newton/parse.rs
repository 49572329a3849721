//! Polynomial input: a small text grammar and a JSON form.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exactla::rational::{format_rational, parse_rational, Int, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub exponent: Vec<Int>,
    pub coeff: Rational,
}

/// Exponent set of a polynomial with its coefficients, plus the user's
/// assertions about the singularity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialSupport {
    pub n: usize,
    pub monomials: Vec<Monomial>,
    pub assume_nondegenerate: bool,
    pub assume_isolated: bool,
}

impl MonomialSupport {
    /// Normalizes raw terms: merges duplicates, drops zero coefficients and
    /// sorts by exponent.
    pub fn new(n: usize, terms: impl IntoIterator<Item = (Vec<Int>, Rational)>) -> Result<Self> {
        let mut merged: BTreeMap<Vec<Int>, Rational> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: e.len() });
            }
            if e.iter().any(Signed::is_negative) {
                return Err(Error::InvalidInput(format!("negative exponent in {e:?}")));
            }
            *merged.entry(e).or_insert_with(Rational::zero) += c;
        }
        merged.retain(|_, c| !c.is_zero());
        if merged.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        if merged.keys().any(|e| e.iter().all(Zero::is_zero)) {
            return Err(Error::ConstantTermPresent);
        }
        Ok(MonomialSupport {
            n,
            monomials: merged.into_iter().map(|(exponent, coeff)| Monomial { exponent, coeff }).collect(),
            assume_nondegenerate: true,
            assume_isolated: false,
        })
    }

    /// Support with unit coefficients.
    pub fn from_exponents(n: usize, exponents: &[Vec<i64>]) -> Result<Self> {
        MonomialSupport::new(n, exponents.iter().map(|e| (e.iter().map(|&x| Int::from(x)).collect(), Rational::one())))
    }

    pub fn points(&self) -> Vec<Vec<Int>> {
        self.monomials.iter().map(|m| m.exponent.clone()).collect()
    }

    pub fn with_flags(mut self, assume_nondegenerate: bool, assume_isolated: bool) -> Self {
        self.assume_nondegenerate = assume_nondegenerate;
        self.assume_isolated = assume_isolated;
        self
    }

    /// Text form accepted back by [`parse_polynomial`].
    pub fn to_text(&self) -> String {
        let names = variable_names(self.n);
        let mut out = String::new();
        for (i, m) in self.monomials.iter().enumerate() {
            let negative = m.coeff.is_negative();
            if i > 0 {
                out.push_str(if negative { " - " } else { " + " });
            } else if negative {
                out.push('-');
            }
            let c = m.coeff.abs();
            let mut factors: Vec<String> = Vec::new();
            if !c.is_one() {
                factors.push(format_rational(&c));
            }
            for (name, e) in names.iter().zip(&m.exponent) {
                if e.is_one() {
                    factors.push(name.clone());
                } else if !e.is_zero() {
                    factors.push(format!("{name}^{e}"));
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

fn variable_names(n: usize) -> Vec<String> {
    if n <= 4 {
        ["x", "y", "z", "w"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Naming {
    Letters,
    Indexed,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    naming: Option<Naming>,
}

impl<'a> Parser<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Syntax { position: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn coefficient(&mut self) -> Result<Rational> {
        let num = self.digits().ok_or_else(|| self.err("expected a number"))?;
        let mut text = num.to_string();
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let den = self.digits().ok_or_else(|| self.err("expected a denominator"))?;
            text = format!("{num}/{den}");
        }
        parse_rational(&text).map_err(|_| self.err("invalid rational coefficient"))
    }

    /// Returns the zero-based variable index.
    fn variable(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        let c = self.src.get(self.pos).copied().ok_or_else(|| self.err("expected a variable"))?;
        let letter = match c {
            b'x' => 0,
            b'y' => 1,
            b'z' => 2,
            b'w' => 3,
            _ => return Err(self.err(format!("unexpected character {:?}", c as char))),
        };
        self.pos += 1;
        let (naming, index) = match self.src.get(self.pos) {
            Some(d) if d.is_ascii_digit() && c == b'x' => {
                let mut end = self.pos;
                while end < self.src.len() && self.src[end].is_ascii_digit() {
                    end += 1;
                }
                let text = std::str::from_utf8(&self.src[self.pos..end]).expect("ascii");
                self.pos = end;
                let i: usize = text.parse().map_err(|_| self.err("variable index too large"))?;
                if i == 0 {
                    self.pos = start;
                    return Err(self.err("variables are numbered from x1"));
                }
                (Naming::Indexed, i - 1)
            }
            _ => (Naming::Letters, letter),
        };
        match self.naming {
            Some(existing) if existing != naming => {
                self.pos = start;
                Err(self.err("cannot mix x,y,z,w with x1..xN"))
            }
            _ => {
                self.naming = Some(naming);
                Ok(index)
            }
        }
    }

    fn term(&mut self) -> Result<(BTreeMap<usize, Int>, Rational)> {
        let mut coeff = Rational::one();
        let mut powers: BTreeMap<usize, Int> = BTreeMap::new();
        let mut first = true;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() && first => {
                    coeff = self.coefficient()?;
                }
                Some(c) if c.is_ascii_digit() => {
                    return Err(self.err("coefficients must come first in a term"));
                }
                Some(_) => {
                    let var = self.variable()?;
                    let mut e = Int::one();
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        let text = self.digits().ok_or_else(|| self.err("expected an exponent"))?;
                        e = text.parse().expect("digits");
                        if e.is_zero() {
                            return Err(self.err("exponents must be positive"));
                        }
                    }
                    *powers.entry(var).or_insert_with(Int::zero) += e;
                }
                None => return Err(self.err("unexpected end of input")),
            }
            first = false;
            if self.peek() == Some(b'*') {
                self.pos += 1;
                continue;
            }
            return Ok((powers, coeff));
        }
    }
}

/// Parses the text grammar `c1*x^a*y^b + ... - ...`. The dimension is the
/// highest variable used unless `declared_n` is given.
pub fn parse_polynomial(text: &str, declared_n: Option<usize>) -> Result<MonomialSupport> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, naming: None };
    let mut terms: Vec<(BTreeMap<usize, Int>, Rational)> = Vec::new();
    let mut sign = Rational::one();
    match p.peek() {
        Some(b'-') => {
            p.pos += 1;
            sign = -sign;
        }
        Some(b'+') => p.pos += 1,
        None => return Err(p.err("empty polynomial")),
        _ => {}
    }
    loop {
        let (powers, c) = p.term()?;
        terms.push((powers, c * &sign));
        match p.peek() {
            None => break,
            Some(b'+') => sign = Rational::one(),
            Some(b'-') => sign = -Rational::one(),
            Some(c) => return Err(p.err(format!("unexpected character {:?}", c as char))),
        }
        p.pos += 1;
    }
    let inferred = terms.iter().flat_map(|(m, _)| m.keys()).max().map_or(0, |&i| i + 1);
    let n = match declared_n {
        Some(d) if d < inferred => {
            return Err(Error::DimensionMismatch { expected: d, found: inferred });
        }
        Some(d) => d,
        None => inferred,
    };
    if n == 0 {
        return Err(if terms.iter().all(|(_, c)| c.is_zero()) {
            Error::ZeroPolynomial
        } else {
            Error::ConstantTermPresent
        });
    }
    let raw = terms.into_iter().map(|(m, c)| {
        let mut e = vec![Int::zero(); n];
        for (i, v) in m {
            e[i] = v;
        }
        (e, c)
    });
    MonomialSupport::new(n, raw)
}

/// Parses `{"n": 2, "monomials": [{"e": [2, 0], "c": "1/2"}], ...}`.
pub fn parse_json(text: &str) -> Result<MonomialSupport> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| Error::Syntax { position: e.column(), message: e.to_string() })?;
    support_from_value(&v)
}

pub fn support_from_value(v: &Value) -> Result<MonomialSupport> {
    let bad = |m: &str| Error::InvalidInput(m.to_string());
    let n = v.get("n").and_then(Value::as_u64).ok_or_else(|| bad("missing integer field \"n\""))? as usize;
    if n == 0 {
        return Err(bad("n must be positive"));
    }
    let monomials = v.get("monomials").and_then(Value::as_array).ok_or_else(|| bad("missing array \"monomials\""))?;
    let mut terms = Vec::with_capacity(monomials.len());
    for m in monomials {
        let e = m.get("e").and_then(Value::as_array).ok_or_else(|| bad("monomial without \"e\""))?;
        let e: Vec<Int> = e
            .iter()
            .map(|x| x.as_u64().map(Int::from).ok_or_else(|| bad("exponents must be non-negative integers")))
            .collect::<Result<_>>()?;
        let c = match m.get("c") {
            None => Rational::one(),
            Some(Value::String(s)) => parse_rational(s)?,
            Some(Value::Number(x)) => {
                let i = x.as_i64().ok_or_else(|| bad("coefficients must be integers or \"p/q\" strings"))?;
                Rational::from_integer(i.into())
            }
            Some(_) => return Err(bad("coefficients must be integers or \"p/q\" strings")),
        };
        terms.push((e, c));
    }
    let flag = |name: &str, default: bool| -> Result<bool> {
        match v.get(name) {
            None => Ok(default),
            Some(Value::Bool(b)) => Ok(*b),
            Some(_) => Err(bad(&format!("\"{name}\" must be a boolean"))),
        }
    };
    let nondeg = flag("assume_nondegenerate", true)?;
    let isolated = flag("assume_isolated", false)?;
    Ok(MonomialSupport::new(n, terms)?.with_flags(nondeg, isolated))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rational::{ivec, rat};

    fn exps(s: &MonomialSupport) -> Vec<Vec<Int>> {
        s.points()
    }

    #[test]
    fn simple_terms() {
        let s = parse_polynomial("x^2 + y^3", None).unwrap();
        assert_eq!(s.n, 2);
        assert_eq!(exps(&s), vec![ivec(&[0, 3]), ivec(&[2, 0])]);
        assert!(s.monomials.iter().all(|m| m.coeff == rat(1, 1)));
    }

    #[test]
    fn three_variables() {
        let s = parse_polynomial("x^4+y^4+z^4+x*y*z", None).unwrap();
        assert_eq!(s.n, 3);
        assert_eq!(s.monomials.len(), 4);
        assert!(exps(&s).contains(&ivec(&[1, 1, 1])));
        let s = parse_polynomial("x^2+y^2+x*z+y*z+z^4", None).unwrap();
        assert_eq!((s.n, s.monomials.len()), (3, 5));
    }

    #[test]
    fn coefficients_and_merging() {
        let s = parse_polynomial("1/2*x^2 - 3*x*x + 5/2*x^2 + y", None).unwrap();
        assert_eq!(exps(&s), vec![ivec(&[0, 1])]);
        let s = parse_polynomial("-2*x1^3*x3 + x2", None).unwrap();
        assert_eq!(s.n, 3);
        assert_eq!(s.monomials[1].coeff, rat(-2, 1));
        assert_eq!(parse_polynomial("x^2", Some(3)).unwrap().n, 3);
    }

    #[test]
    fn errors() {
        assert_eq!(parse_polynomial("x^2 + 1", None), Err(Error::ConstantTermPresent));
        assert_eq!(parse_polynomial("x - x", None), Err(Error::ZeroPolynomial));
        assert!(matches!(parse_polynomial("x^", None), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("x + x1", None), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("q^2", None), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("x^0", None), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("z", Some(2)), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn json_input() {
        let s =
            parse_json(r#"{"n":2,"monomials":[{"e":[2,0]},{"e":[0,3],"c":"-1/2"}],"assume_isolated":true}"#).unwrap();
        assert_eq!(s.monomials.len(), 2);
        assert!(s.assume_isolated && s.assume_nondegenerate);
        assert_eq!(parse_json(r#"{"n":1,"monomials":[{"e":[0]}]}"#), Err(Error::ConstantTermPresent));
    }

    #[test]
    fn text_round_trip() {
        let s = parse_polynomial("x^2 - 1/3*y^3 + 2*x*y*z", None).unwrap();
        assert_eq!(parse_polynomial(&s.to_text(), Some(3)).unwrap(), s);
    }
}
