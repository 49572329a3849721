//! Formal Grothendieck-ring expressions for motivic nearby fibers over the
//! faces of the Newton polyhedron and over a smooth subdivision of its normal
//! fan, and the descent identity relating them.
//!
//! Generators are opaque symbols; coefficients are Laurent polynomials in
//! the class `L` of the affine line.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactla::rational::Int;
use crate::fan::{badge, normal_fan, smooth_subdivision_with, NormalFan, Subdivision, SubdivisionOptions};
use crate::newton::NewtonPolyhedron;
use crate::puiseux::{int_value, value_int};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Laurent(BTreeMap<i64, Int>);

impl Laurent {
    pub fn zero() -> Self {
        Laurent(BTreeMap::new())
    }

    pub fn one() -> Self {
        Laurent::monomial(0, Int::one())
    }

    pub fn monomial(e: i64, c: Int) -> Self {
        let mut l = Laurent::zero();
        l.add_term(e, c);
        l
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Int)>) -> Self {
        let mut l = Laurent::zero();
        for (e, c) in terms {
            l.add_term(e, c);
        }
        l
    }

    pub fn add_term(&mut self, e: i64, c: Int) {
        if c.is_zero() {
            return;
        }
        let entry = self.0.entry(e).or_insert_with(Int::zero);
        *entry += c;
        if entry.is_zero() {
            self.0.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Int)> {
        self.0.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> Int {
        self.0.get(&e).cloned().unwrap_or_else(Int::zero)
    }

    pub fn pow(&self, k: u32) -> Laurent {
        (0..k).fold(Laurent::one(), |acc, _| &acc * self)
    }

    /// `(1 - L)^k`.
    pub fn one_minus_l_pow(k: i64) -> Result<Laurent> {
        let k = u32::try_from(k).map_err(|_| Error::NegativeMotivicExponent(k))?;
        Ok(Laurent::from_terms([(0, Int::one()), (1, -Int::one())]).pow(k))
    }

    /// `(L - 1)^k`.
    pub fn l_minus_one_pow(k: i64) -> Result<Laurent> {
        let k = u32::try_from(k).map_err(|_| Error::NegativeMotivicExponent(k))?;
        Ok(Laurent::from_terms([(0, -Int::one()), (1, Int::one())]).pow(k))
    }

    /// Value at the integer `l`; `None` when a negative power of `l` is not
    /// an integer.
    pub fn evaluate(&self, l: &Int) -> Option<Int> {
        let unit = l.abs().is_one();
        let mut total = Int::zero();
        for (e, c) in self.terms() {
            if e < 0 && !unit {
                return None;
            }
            total += c * num_traits::pow(l.clone(), e.unsigned_abs() as usize);
        }
        Some(total)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.terms().map(|(e, c)| json!({"Lexp": e, "c": int_value(c)})).collect())
    }

    pub fn from_json(v: &Value) -> Result<Laurent> {
        let arr = v.as_array().ok_or_else(|| Error::InvalidInput("coefficient must be an array".into()))?;
        let mut out = Laurent::zero();
        for t in arr {
            let e = t["Lexp"].as_i64().ok_or_else(|| Error::InvalidInput("missing Lexp".into()))?;
            out.add_term(e, value_int(&t["c"])?);
        }
        Ok(out)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            match e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if e == 1 {
                        write!(f, "L")?;
                    } else {
                        write!(f, "L^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, o: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (e, c) in o.terms() {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, o: &Laurent) -> Laurent {
        self + &(-o)
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent(self.0.iter().map(|(e, c)| (*e, -c)).collect())
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, o: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (a, x) in self.terms() {
            for (b, y) in o.terms() {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    OpenCover,
    ProperStratum,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::OpenCover => "open",
            Kind::ProperStratum => "proper",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    SigmaFace(usize),
    XiCone(usize),
}

impl Level {
    fn to_json(self) -> Value {
        match self {
            Level::SigmaFace(i) => json!({"sigma": i}),
            Level::XiCone(i) => json!({"xi": i}),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub kind: Kind,
    pub level: Level,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MotivicExpr {
    terms: BTreeMap<Generator, Laurent>,
}

impl MotivicExpr {
    pub fn new() -> Self {
        MotivicExpr::default()
    }

    pub fn add_term(&mut self, g: Generator, c: &Laurent) {
        let entry = self.terms.entry(g).or_default();
        *entry = &*entry + c;
        if entry.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn coeff(&self, g: &Generator) -> Laurent {
        self.terms.get(g).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Generator, &Laurent)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(g, c)| json!({"coeff": c.to_json(), "kind": g.kind.name(), "level": g.level.to_json()}))
            .collect();
        json!({ "terms": terms })
    }
}

impl fmt::Display for MotivicExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(g, c)| {
                let sym = match g.level {
                    Level::SigmaFace(i) => format!("{}[sigma{i}]", g.kind.name()),
                    Level::XiCone(i) => format!("{}[xi{i}]", g.kind.name()),
                };
                format!("({c})*{sym}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `coeff * (G_open + (1 - L) G_proper)` at `level`.
fn add_stratum(e: &mut MotivicExpr, level: Level, coeff: &Laurent) {
    e.add_term(Generator { kind: Kind::OpenCover, level }, coeff);
    let proper = coeff * &Laurent::one_minus_l_pow(1).expect("nonnegative");
    e.add_term(Generator { kind: Kind::ProperStratum, level }, &proper);
}

/// Sum over nonempty compact faces of `(1-L)^(k-d) (G_open + (1-L) G_proper)`.
pub fn nearby_fiber_sigma(p: &NewtonPolyhedron) -> Result<MotivicExpr> {
    let mut e = MotivicExpr::new();
    for f in p.compact_faces().filter(|f| f.id != 0) {
        let c = Laurent::one_minus_l_pow(f.k as i64 - f.d_cone as i64)?;
        add_stratum(&mut e, Level::SigmaFace(f.id), &c);
    }
    Ok(e)
}

fn check_refinement(nf: &NormalFan, sub: &Subdivision) -> Result<()> {
    if sub.parent.len() != sub.fan.cones.len() {
        return Err(Error::RefinementInvalid("parent map has the wrong length".into()));
    }
    for (i, c) in sub.fan.cones.iter().enumerate() {
        let parent = nf
            .fan
            .cones
            .get(sub.parent[i])
            .ok_or_else(|| Error::RefinementInvalid(format!("cone {i} has no parent")))?;
        if c.rays.iter().any(|&r| !nf.fan.cone_contains(parent, &sub.fan.rays[r])) {
            return Err(Error::RefinementInvalid(format!("cone {i} leaves its parent cone")));
        }
    }
    Ok(())
}

/// Sum over cones of the subdivision avoiding every coordinate hyperplane of
/// `(1-L)^(d - k_check - 1) (G_open + (1-L) G_proper)`.
pub fn nearby_fiber_xi(p: &NewtonPolyhedron, nf: &NormalFan, sub: &Subdivision) -> Result<MotivicExpr> {
    check_refinement(nf, sub)?;
    let mut e = MotivicExpr::new();
    for (i, c) in sub.fan.cones.iter().enumerate() {
        let b = badge(p, &sub.fan, c);
        if !b.in_prime {
            continue;
        }
        let coeff = Laurent::one_minus_l_pow(b.dim as i64 - b.k_check as i64 - 1)?;
        add_stratum(&mut e, Level::XiCone(i), &coeff);
    }
    Ok(e)
}

/// Direct image along the subdivision: each cone-level generator becomes
/// `(L-1)^(dim parent - dim xi)` times the generator of the face whose
/// normal cone is the parent.
pub fn pushforward_rho(
    e: &MotivicExpr,
    p: &NewtonPolyhedron,
    nf: &NormalFan,
    sub: &Subdivision,
) -> Result<MotivicExpr> {
    let mut out = MotivicExpr::new();
    for (g, c) in e.terms() {
        let Level::XiCone(xi) = g.level else {
            return Err(Error::ParentMismatch);
        };
        let parent = *sub.parent.get(xi).ok_or(Error::ParentMismatch)?;
        let sigma = p.all_faces[parent].compact_id.ok_or(Error::ParentMismatch)?;
        let rel = nf.fan.cones[parent].dim as i64 - sub.fan.cones[xi].dim as i64;
        let factor = Laurent::l_minus_one_pow(rel)?;
        out.add_term(Generator { kind: g.kind, level: Level::SigmaFace(sigma) }, &(c * &factor));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentReport {
    pub holds: bool,
    /// First face whose coefficients differ, with the two coefficients of
    /// the open generator.
    pub first_mismatch: Option<(usize, Laurent, Laurent)>,
    pub sigma_side: MotivicExpr,
    pub pushed: MotivicExpr,
    pub xi_cones: usize,
}

impl DescentReport {
    pub fn to_json(&self) -> Value {
        let mismatch = match &self.first_mismatch {
            Some((s, a, b)) => json!({"face": s, "pushed": b.to_json(), "sigma": a.to_json()}),
            None => Value::Null,
        };
        json!({
            "first_mismatch": mismatch,
            "holds": self.holds,
            "pushed": self.pushed.to_json(),
            "sigma_side": self.sigma_side.to_json(),
            "xi_cones": self.xi_cones,
        })
    }
}

pub fn descent_check_with(p: &NewtonPolyhedron, opts: &SubdivisionOptions) -> Result<DescentReport> {
    let nf = normal_fan(p);
    let sub = smooth_subdivision_with(p, &nf, opts)?;
    descent_check_on(p, &nf, &sub)
}

pub fn descent_check_on(p: &NewtonPolyhedron, nf: &NormalFan, sub: &Subdivision) -> Result<DescentReport> {
    let sigma_side = nearby_fiber_sigma(p)?;
    let xi_side = nearby_fiber_xi(p, nf, sub)?;
    let pushed = pushforward_rho(&xi_side, p, nf, sub)?;
    let mut first_mismatch = None;
    if pushed != sigma_side {
        for f in p.compact_faces().filter(|f| f.id != 0) {
            let differs = [Kind::OpenCover, Kind::ProperStratum].iter().any(|&kind| {
                let g = Generator { kind, level: Level::SigmaFace(f.id) };
                sigma_side.coeff(&g) != pushed.coeff(&g)
            });
            if differs {
                let g = Generator { kind: Kind::OpenCover, level: Level::SigmaFace(f.id) };
                first_mismatch = Some((f.id, sigma_side.coeff(&g), pushed.coeff(&g)));
                break;
            }
        }
    }
    Ok(DescentReport { holds: pushed == sigma_side, first_mismatch, sigma_side, pushed, xi_cones: xi_side.len() / 2 })
}

pub fn descent_check(p: &NewtonPolyhedron) -> Result<DescentReport> {
    descent_check_with(p, &SubdivisionOptions::standard())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rational::ivec;
    use crate::newton::parse_polynomial;

    fn poly(s: &str) -> NewtonPolyhedron {
        NewtonPolyhedron::build(parse_polynomial(s, None).unwrap()).unwrap()
    }

    fn lp(terms: &[(i64, i64)]) -> Laurent {
        Laurent::from_terms(terms.iter().map(|&(e, c)| (e, Int::from(c))))
    }

    #[test]
    fn laurent_arithmetic() {
        let a = lp(&[(0, 1), (1, -1)]);
        let b = lp(&[(0, -1), (1, 1)]);
        assert!((&a + &b).is_zero());
        assert_eq!(Laurent::one_minus_l_pow(2).unwrap(), lp(&[(0, 1), (1, -2), (2, 1)]));
        assert_eq!(Laurent::l_minus_one_pow(0).unwrap(), Laurent::one());
        assert!(matches!(Laurent::one_minus_l_pow(-1), Err(Error::NegativeMotivicExponent(-1))));
        assert_eq!(lp(&[(-1, 2), (0, -1), (3, 1)]).to_string(), "2*L^-1 - 1 + L^3");
        assert_eq!(Laurent::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn cusp_sigma_side() {
        let p = poly("x^2+y^3");
        let e = nearby_fiber_sigma(&p).unwrap();
        assert_eq!(e.len(), 6);
        for (g, c) in e.terms() {
            let want = if g.kind == Kind::OpenCover { Laurent::one() } else { lp(&[(0, 1), (1, -1)]) };
            assert_eq!(*c, want);
        }
    }

    #[test]
    fn internal_edge_exponent() {
        let p = poly("x^3+y*z");
        let e = nearby_fiber_sigma(&p).unwrap();
        let edge = p.compact_faces().find(|f| f.is_internal && f.d_sigma == 1).unwrap().id;
        let g = Generator { kind: Kind::OpenCover, level: Level::SigmaFace(edge) };
        assert_eq!(e.coeff(&g), lp(&[(0, 1), (1, -1)]));
        let v = p.face_by_vertices(&[p.vertex_id(&ivec(&[3, 0, 0])).unwrap()]).unwrap();
        assert_eq!(e.coeff(&Generator { kind: Kind::OpenCover, level: Level::SigmaFace(v) }), Laurent::one());
    }

    #[test]
    fn cusp_xi_side_and_pushforward() {
        let p = poly("x^2+y^3");
        let nf = normal_fan(&p);
        let sub = crate::fan::smooth_subdivision(&p, &nf).unwrap();
        let xi = nearby_fiber_xi(&p, &nf, &sub).unwrap();
        assert_eq!(xi.len(), 14);
        let top = p.face_by_vertices(&[p.vertex_id(&ivec(&[0, 3])).unwrap()]).unwrap();
        let pushed = pushforward_rho(&xi, &p, &nf, &sub).unwrap();
        assert_eq!(pushed.coeff(&Generator { kind: Kind::OpenCover, level: Level::SigmaFace(top) }), Laurent::one());
    }

    #[test]
    fn pushforward_rejects_face_generators() {
        let p = poly("x^2+y^3");
        let nf = normal_fan(&p);
        let sub = crate::fan::smooth_subdivision(&p, &nf).unwrap();
        let e = nearby_fiber_sigma(&p).unwrap();
        assert!(matches!(pushforward_rho(&e, &p, &nf, &sub), Err(Error::ParentMismatch)));
    }

    #[test]
    fn descent_on_examples() {
        for s in ["x^2+y^3", "x^4+y^4+z^4+x*y*z", "x^2+y^2+x*z+y*z+z^4", "x^5+y*z", "x^3+y^3+z^3"] {
            let p = poly(s);
            for opts in [SubdivisionOptions::standard(), SubdivisionOptions::alternate(p.n)] {
                let r = descent_check_with(&p, &opts).unwrap();
                assert!(r.holds, "{s}: {:?}", r.first_mismatch);
            }
        }
    }

    #[test]
    fn smooth_normal_fan_is_its_own_refinement() {
        let p = poly("x^2+y^2");
        let nf = normal_fan(&p);
        let sub = crate::fan::smooth_subdivision(&p, &nf).unwrap();
        assert_eq!(sub.fan.cones.len(), nf.fan.cones.len());
        let xi = nearby_fiber_xi(&p, &nf, &sub).unwrap();
        let prime = nf.fan.cones.iter().filter(|c| nf.fan.is_in_prime(c)).count();
        assert_eq!(xi.len(), 2 * prime);
    }
}
