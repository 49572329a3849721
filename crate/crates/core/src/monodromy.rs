//! Jordan blocks of the Milnor monodromy of maximal and next-to-maximal size.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactla::rational::{gcd_all, sub_vec, Int, Rational};
use crate::newton::NewtonPolyhedron;
use crate::puiseux::{FracPoly, FracPoly2};

/// `exp(2 pi i p/q)` with `0 <= p < q` and `gcd(p, q) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Eigenvalue {
    p: u64,
    q: u64,
}

impl Eigenvalue {
    pub fn new(p: i64, q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidInput("eigenvalue order must be positive".into()));
        }
        let p = p.rem_euclid(q as i64) as u64;
        let g = p.gcd(&q);
        Ok(Eigenvalue { p: p / g, q: q / g })
    }

    pub fn one() -> Self {
        Eigenvalue { p: 0, q: 1 }
    }

    /// The primitive root `exp(2 pi i / q)`.
    pub fn of_order(q: u64) -> Result<Self> {
        Eigenvalue::new(if q == 1 { 0 } else { 1 }, q)
    }

    pub fn order(self) -> u64 {
        self.q
    }

    pub fn is_one(self) -> bool {
        self.q == 1
    }

    pub fn conjugate(self) -> Self {
        Eigenvalue { p: (self.q - self.p) % self.q, q: self.q }
    }

    /// `p/q` in `[0, 1)`.
    pub fn angle(self) -> Rational {
        Rational::new(Int::from(self.p), Int::from(self.q))
    }

    /// True when `lambda^delta = 1`.
    pub fn divides(self, delta: &Int) -> bool {
        delta.is_multiple_of(&Int::from(self.q))
    }
}

/// Compact faces by dimension, with the internal ones singled out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CfSets {
    pub all: BTreeMap<usize, Vec<usize>>,
    pub internal: BTreeMap<usize, Vec<usize>>,
}

impl CfSets {
    pub fn of_dim(&self, k: usize) -> &[usize] {
        self.all.get(&k).map_or(&[], Vec::as_slice)
    }

    pub fn internal_of_dim(&self, k: usize) -> &[usize] {
        self.internal.get(&k).map_or(&[], Vec::as_slice)
    }
}

pub fn cf_sets(p: &NewtonPolyhedron) -> CfSets {
    let mut all: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut internal: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for f in p.compact_faces() {
        let k = f.d_sigma as usize;
        all.entry(k).or_default().push(f.id);
        if f.is_internal {
            internal.entry(k).or_default().push(f.id);
        }
    }
    CfSets { all, internal }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeWeights {
    /// Lattice length of each compact edge.
    pub l: BTreeMap<usize, Int>,
    /// Number of internal edges through each vertex face.
    pub beta: BTreeMap<usize, usize>,
}

pub fn edge_weights(p: &NewtonPolyhedron) -> EdgeWeights {
    let cf = cf_sets(p);
    let l = cf
        .of_dim(1)
        .iter()
        .map(|&e| {
            let v = p.face_vertices(e);
            (e, gcd_all(&sub_vec(&v[1], &v[0])))
        })
        .collect();
    let beta =
        cf.of_dim(0).iter().map(|&v| (v, cf.internal_of_dim(1).iter().filter(|&&e| p.le(v, e)).count())).collect();
    EdgeWeights { l, beta }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JordanCount {
    Count(Int),
    /// No formula is available for this block size.
    Unsupported,
}

impl JordanCount {
    pub fn count(&self) -> Option<&Int> {
        match self {
            JordanCount::Count(c) => Some(c),
            JordanCount::Unsupported => None,
        }
    }
}

fn require_isolated(p: &NewtonPolyhedron) -> Result<()> {
    let c = p.classify();
    if !c.nondegenerate {
        return Err(Error::NondegeneracyNotAsserted);
    }
    if !c.isolated {
        return Err(Error::IsolatednessNotEstablished);
    }
    Ok(())
}

/// Strictly positive lattice points on the union of the internal edges.
pub fn positive_points_on_internal_edges(p: &NewtonPolyhedron) -> BTreeSet<Vec<Int>> {
    let mut pts = BTreeSet::new();
    for &e in cf_sets(p).internal_of_dim(1) {
        let v = p.face_vertices(e);
        let d = sub_vec(&v[1], &v[0]);
        let g = gcd_all(&d);
        let step: Vec<Int> = d.iter().map(|x| x / &g).collect();
        let steps = g.to_u64().expect("edge length fits in u64");
        for j in 0..=steps {
            let x: Vec<Int> = v[0].iter().zip(&step).map(|(a, s)| a + s * Int::from(j)).collect();
            if x.iter().all(Signed::is_positive) {
                pts.insert(x);
            }
        }
    }
    pts
}

/// Number of Jordan blocks of size `k` for the eigenvalue `lambda`.
pub fn jordan_blocks(p: &NewtonPolyhedron, lambda: Eigenvalue, k: usize) -> Result<JordanCount> {
    require_isolated(p)?;
    let n = p.n;
    let cf = cf_sets(p);
    if k == n {
        if lambda.is_one() {
            return Ok(JordanCount::Count(Int::zero()));
        }
        let c = cf.internal_of_dim(0).iter().filter(|&&v| lambda.divides(&p.faces[v].delta)).count();
        return Ok(JordanCount::Count(Int::from(c)));
    }
    if k + 1 == n && k >= 1 {
        if lambda.is_one() {
            return Ok(JordanCount::Count(Int::from(positive_points_on_internal_edges(p).len())));
        }
        let w = edge_weights(p);
        let plus: Int =
            cf.internal_of_dim(1).iter().filter(|&&e| lambda.divides(&p.faces[e].delta)).map(|e| w.l[e].clone()).sum();
        let minus: usize = cf.of_dim(0).iter().filter(|&&v| lambda.divides(&p.faces[v].delta)).map(|v| w.beta[v]).sum();
        return Ok(JordanCount::Count(plus - Int::from(minus)));
    }
    Ok(JordanCount::Unsupported)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanTable {
    /// `(order q, block size k, count)` for the primitive eigenvalue of each
    /// order; the counts depend on the order only.
    pub blocks: Vec<(u64, usize, Int)>,
}

pub const UNSUPPORTED_NOTE: &str =
    "only blocks of size n and n-1 are determined by the Newton polyhedron; other sizes are not reported";

/// Orders `q` that can carry blocks: 1 and every divisor of some face delta.
pub fn candidate_orders(p: &NewtonPolyhedron) -> Vec<u64> {
    let mut qs: BTreeSet<u64> = BTreeSet::from([1]);
    for f in p.compact_faces() {
        if let Some(d) = f.delta.to_u64() {
            for q in 1..=d {
                if d % q == 0 {
                    qs.insert(q);
                }
            }
        }
    }
    qs.into_iter().collect()
}

pub fn jordan_table(p: &NewtonPolyhedron) -> Result<JordanTable> {
    require_isolated(p)?;
    let n = p.n;
    let mut blocks = Vec::new();
    for q in candidate_orders(p) {
        let lambda = Eigenvalue::of_order(q)?;
        for k in [n.saturating_sub(1), n] {
            if k == 0 {
                continue;
            }
            if let JordanCount::Count(c) = jordan_blocks(p, lambda, k)? {
                blocks.push((q, k, c));
            }
        }
    }
    Ok(JordanTable { blocks })
}

impl JordanTable {
    pub fn to_json(&self) -> Value {
        json!({
            "blocks": self.blocks.iter().map(|(q, k, c)| json!({"count": crate::puiseux::int_value(c), "k": k, "q": q})).collect::<Vec<_>>(),
            "unsupported_note": UNSUPPORTED_NOTE,
        })
    }
}

/// `sum over internal edges of (q_{sigma,beta} + q_{sigma,1+beta})` where
/// `lambda = exp(2 pi i beta)`, `beta` in `(0,1)`.
pub fn edge_spectrum_count(p: &NewtonPolyhedron, q_by_face: &[FracPoly], lambda: Eigenvalue) -> Int {
    let beta = lambda.angle();
    let beta1 = &beta + Rational::one();
    cf_sets(p).internal_of_dim(1).iter().map(|&e| q_by_face[e].coeff(&beta) + q_by_face[e].coeff(&beta1)).sum()
}

/// Number of spectral pairs with `alpha = beta mod 1` and weight `w`.
pub fn pairs_count(pairs: &FracPoly2, lambda: Eigenvalue, w: i64) -> Int {
    let beta = lambda.angle();
    pairs.terms().filter(|((a, wt), _)| *wt == w && a - a.floor() == beta).map(|(_, c)| c.clone()).sum()
}
