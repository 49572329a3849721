//! Hodge spectrum, spectral pairs and the maximal Bernstein-Sato root from
//! the Newton polyhedron.

pub mod faces;
pub mod identities;
pub mod oracle;

use num_traits::One;

use crate::error::{Error, Result};
use crate::exactla::rational::{Int, Rational};
use crate::newton::NewtonPolyhedron;
use crate::puiseux::{substitute_pairs, FracPoly, FracPoly2};

pub use faces::{face_invariants, open_box, q_face, qhat_face, r_face, FaceInvariants};
pub use identities::{check_identities, Check, CheckStatus};
pub use oracle::{bp_oracle, cone_series_truncated, series_from_qhat};

/// Whether the formal spectrum is known to be the Hodge spectrum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Validity {
    ConvenientNondegenerate,
    SimplicialIsolated,
    FormalOnly,
}

impl Validity {
    pub fn name(self) -> &'static str {
        match self {
            Validity::ConvenientNondegenerate => "ConvenientNondegenerate",
            Validity::SimplicialIsolated => "SimplicialIsolated",
            Validity::FormalOnly => "FormalOnly",
        }
    }

    pub fn of(p: &NewtonPolyhedron) -> Validity {
        let c = p.classify();
        if c.convenient && c.nondegenerate {
            Validity::ConvenientNondegenerate
        } else if c.simplicial && c.isolated && c.nondegenerate {
            Validity::SimplicialIsolated
        } else {
            Validity::FormalOnly
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumReport {
    /// `Sp'_f`
    pub hodge: FracPoly,
    /// `Sp_f`, the dual of `hodge` with shift `n`.
    pub steenbrink: FracPoly,
    pub mu: Int,
    pub validity: Validity,
}

fn signed(k: i64, p: FracPoly) -> FracPoly {
    if k.rem_euclid(2) == 0 {
        p
    } else {
        -&p
    }
}

/// `sum over faces (incl. empty) of (-1)^(n-d) (1-t)^(k-d) qhat`.
pub fn hodge_from_invariants(p: &NewtonPolyhedron, inv: &[FaceInvariants]) -> FracPoly {
    let n = p.n as i64;
    p.faces
        .iter()
        .map(|f| {
            let term = &FracPoly::one_minus_t_pow(f.k - f.d_cone) * &inv[f.id].qhat;
            signed(n - f.d_cone as i64, term)
        })
        .sum()
}

/// `sum over faces of r_sigma q_sigma`, the second expression of the spectrum.
pub fn hodge_via_r(inv: &[FaceInvariants]) -> FracPoly {
    inv.iter().map(|x| &x.r * &x.q).sum()
}

pub fn report_from_invariants(p: &NewtonPolyhedron, inv: &[FaceInvariants]) -> SpectrumReport {
    let hodge = hodge_from_invariants(p, inv);
    let steenbrink = hodge.dual(&Rational::from_integer(Int::from(p.n)));
    let mu = hodge.evaluate_at_one();
    SpectrumReport { hodge, steenbrink, mu, validity: Validity::of(p) }
}

pub fn hodge_spectrum(p: &NewtonPolyhedron) -> Result<SpectrumReport> {
    let inv = face_invariants(p)?;
    Ok(report_from_invariants(p, &inv))
}

/// Fails unless the pairs formula applies.
pub fn pairs_applicable(p: &NewtonPolyhedron) -> Result<()> {
    let c = p.classify();
    if !c.simplicial {
        return Err(Error::NotSimplicial);
    }
    if !c.isolated {
        return Err(Error::IsolatednessNotEstablished);
    }
    Ok(())
}

pub fn pairs_from_invariants(p: &NewtonPolyhedron, inv: &[FaceInvariants]) -> Result<FracPoly2> {
    let mut out = FracPoly2::zero();
    for f in &p.faces {
        let x = &inv[f.id];
        out = &out + &substitute_pairs(&x.r, f.d_sigma, &x.q)?;
    }
    Ok(out)
}

/// Generating function `sum t^alpha u^w` of the spectral pairs.
pub fn spectral_pairs(p: &NewtonPolyhedron) -> Result<FracPoly2> {
    pairs_applicable(p)?;
    let inv = face_invariants(p)?;
    pairs_from_invariants(p, &inv)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernsteinRoot {
    pub root: Rational,
    /// True when the root is that of `b(s)/(s+1)`.
    pub reduced: bool,
    pub c: Rational,
}

pub fn bernstein_from_report(p: &NewtonPolyhedron, report: &SpectrumReport) -> Result<BernsteinRoot> {
    let cls = p.classify();
    if !cls.nondegenerate {
        return Err(Error::NondegeneracyNotAsserted);
    }
    if !cls.simplicial {
        return Err(Error::NotSimplicial);
    }
    if cls.c > Rational::one() {
        return Ok(BernsteinRoot { root: -cls.c.recip(), reduced: false, c: cls.c });
    }
    let alpha =
        report.steenbrink.min_exponent().cloned().ok_or_else(|| Error::InvalidInput("the spectrum is empty".into()))?;
    Ok(BernsteinRoot { root: -alpha, reduced: true, c: cls.c })
}

/// Maximal root of the (possibly reduced) Bernstein-Sato polynomial.
pub fn bernstein_max_root(p: &NewtonPolyhedron) -> Result<BernsteinRoot> {
    let cls = p.classify();
    if !cls.nondegenerate {
        return Err(Error::NondegeneracyNotAsserted);
    }
    if !cls.simplicial {
        return Err(Error::NotSimplicial);
    }
    let report = hodge_spectrum(p)?;
    bernstein_from_report(p, &report)
}
