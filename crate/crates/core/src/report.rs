//! Deterministic JSON and text renderings of every computed report.
//!
//! Objects are `serde_json` maps, which keep keys sorted; rationals are
//! rendered as canonical `"p/q"` strings and output is compact.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactla::rational::{format_rational, Int, Rational};
use crate::fan::{normal_fan, smooth_subdivision, NormalFan, Subdivision};
use crate::monodromy::{jordan_table, JordanTable};
use crate::motivic::{descent_check_on, DescentReport};
use crate::newton::NewtonPolyhedron;
use crate::puiseux::{int_value, FracPoly, FracPoly2};
use crate::spectrum::identities::{check_with, Check, CheckStatus};
use crate::spectrum::{
    bernstein_from_report, bp_oracle, cone_series_truncated, face_invariants, pairs_applicable, pairs_from_invariants,
    report_from_invariants, series_from_qhat, BernsteinRoot, SpectrumReport,
};

pub fn to_string(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values always serialize")
}

fn vec_value(v: &[Int]) -> Value {
    Value::Array(v.iter().map(int_value).collect())
}

fn flags(p: &NewtonPolyhedron) -> Value {
    json!({
        "assume_isolated": p.support.assume_isolated,
        "assume_nondegenerate": p.support.assume_nondegenerate,
    })
}

pub fn error_json(e: &Error) -> Value {
    json!({"error": {"kind": e.kind(), "message": e.to_string()}})
}

pub fn analyze(p: &NewtonPolyhedron) -> Result<Value> {
    let cls = p.classify();
    let faces: Vec<Value> = p
        .compact_faces()
        .map(|f| {
            json!({
                "d": f.d_sigma,
                "delta": int_value(&f.delta),
                "id": f.id,
                "internal": f.is_internal,
                "k": f.k,
                "simplex": f.is_simplex,
                "vertices": f.vertex_ids.iter().map(|&v| vec_value(&p.vertices[v])).collect::<Vec<_>>(),
            })
        })
        .collect();
    let newton_number = match p.newton_number() {
        Ok(v) => int_value(&v),
        Err(Error::NotConvenient) => Value::Null,
        Err(e) => return Err(e),
    };
    Ok(json!({
        "classification": {
            "c": format_rational(&cls.c),
            "convenient": cls.convenient,
            "isolated": cls.isolated,
            "j_f": cls.j_f,
            "nondegenerate": cls.nondegenerate,
            "simplicial": cls.simplicial,
        },
        "faces": faces,
        "flags": flags(p),
        "n": p.n,
        "newton_number": newton_number,
        "vertices": p.vertices.iter().map(|v| vec_value(v)).collect::<Vec<_>>(),
    }))
}

pub fn spectrum_json(p: &NewtonPolyhedron, r: &SpectrumReport) -> Value {
    json!({
        "flags": flags(p),
        "hodge": r.hodge.to_json(),
        "mu": int_value(&r.mu),
        "steenbrink": r.steenbrink.to_json(),
        "validity": r.validity.name(),
    })
}

pub fn spectrum(p: &NewtonPolyhedron) -> Result<(SpectrumReport, Value)> {
    let inv = face_invariants(p)?;
    let r = report_from_invariants(p, &inv);
    let v = spectrum_json(p, &r);
    Ok((r, v))
}

pub fn pairs(p: &NewtonPolyhedron) -> Result<(FracPoly2, Value)> {
    pairs_applicable(p)?;
    let inv = face_invariants(p)?;
    let pairs = pairs_from_invariants(p, &inv)?;
    let v = json!({"flags": flags(p), "pairs": pairs.to_json()});
    Ok((pairs, v))
}

pub fn jordan(p: &NewtonPolyhedron) -> Result<(JordanTable, Value)> {
    let t = jordan_table(p)?;
    let mut v = t.to_json();
    v["flags"] = flags(p);
    Ok((t, v))
}

pub fn bs_root_json(p: &NewtonPolyhedron, b: &BernsteinRoot) -> Value {
    json!({
        "c": format_rational(&b.c),
        "flags": flags(p),
        "reduced": b.reduced,
        "root": format_rational(&b.root),
    })
}

pub fn bs_root(p: &NewtonPolyhedron) -> Result<(BernsteinRoot, Value)> {
    let cls = p.classify();
    if !cls.nondegenerate {
        return Err(Error::NondegeneracyNotAsserted);
    }
    if !cls.simplicial {
        return Err(Error::NotSimplicial);
    }
    let inv = face_invariants(p)?;
    let b = bernstein_from_report(p, &report_from_invariants(p, &inv))?;
    let v = bs_root_json(p, &b);
    Ok((b, v))
}

pub fn fan(p: &NewtonPolyhedron) -> Result<(NormalFan, Subdivision, Value)> {
    let nf = normal_fan(p);
    let sub = smooth_subdivision(p, &nf)?;
    let v = json!({"sigma": nf.fan.to_json(None), "xi": sub.to_json()});
    Ok((nf, sub, v))
}

pub fn descent(p: &NewtonPolyhedron) -> Result<(DescentReport, Value)> {
    let nf = normal_fan(p);
    let sub = smooth_subdivision(p, &nf)?;
    let r = descent_check_on(p, &nf, &sub)?;
    let v = r.to_json();
    Ok((r, v))
}

fn check_value(c: &Check) -> Value {
    let (status, detail) = match &c.status {
        CheckStatus::Pass => ("pass", Value::Null),
        CheckStatus::Fail(d) => ("fail", Value::String(d.clone())),
        CheckStatus::Skipped(d) => ("skipped", Value::String(d.clone())),
    };
    json!({"detail": detail, "name": c.name, "status": status})
}

pub fn identities(p: &NewtonPolyhedron) -> Result<(Vec<Check>, Value)> {
    let inv = face_invariants(p)?;
    let checks = check_with(p, &inv)?;
    let v = json!({"checks": checks.iter().map(check_value).collect::<Vec<_>>(), "flags": flags(p)});
    Ok((checks, v))
}

/// Exponents `a_i` when the support is exactly `{a_i e_i}`.
pub fn brieskorn_pham_exponents(p: &NewtonPolyhedron) -> Option<Vec<u32>> {
    let points = p.support.points();
    if points.len() != p.n {
        return None;
    }
    let mut a = vec![0u32; p.n];
    for pt in &points {
        let nz: Vec<usize> = (0..p.n).filter(|&i| pt[i] != Int::from(0)).collect();
        if nz.len() != 1 {
            return None;
        }
        a[nz[0]] = u32::try_from(&pt[nz[0]]).ok()?;
    }
    a.iter().all(|&x| x >= 2).then_some(a)
}

/// Cross-validation against independent computations.
pub fn oracle_check(p: &NewtonPolyhedron) -> Result<(Vec<Check>, Value)> {
    let inv = face_invariants(p)?;
    let r = report_from_invariants(p, &inv);
    let mut checks = Vec::new();

    let status = match brieskorn_pham_exponents(p) {
        Some(a) => {
            let want = bp_oracle(&a)?;
            if want == r.steenbrink {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail(format!("oracle {want} vs computed {}", r.steenbrink))
            }
        }
        None => CheckStatus::Skipped("support is not of Brieskorn-Pham type".into()),
    };
    checks.push(Check { name: "brieskorn_pham", status });

    let status = match p.newton_number() {
        Ok(nu) if nu == r.mu => CheckStatus::Pass,
        Ok(nu) => CheckStatus::Fail(format!("newton number {nu} vs Sp'(1) = {}", r.mu)),
        Err(Error::NotConvenient) => CheckStatus::Skipped("not convenient".into()),
        Err(e) => return Err(e),
    };
    checks.push(Check { name: "newton_number", status });

    let bound = Rational::new(Int::from(5), Int::from(2));
    let mut bad = Vec::new();
    for f in p.compact_faces() {
        let direct = cone_series_truncated(p, f.id, &bound)?;
        let from_qhat = series_from_qhat(&inv[f.id].qhat, f.d_cone, &bound);
        if direct != from_qhat {
            bad.push(format!("face {}: {direct} vs {from_qhat}", f.id));
        }
    }
    let status = if bad.is_empty() { CheckStatus::Pass } else { CheckStatus::Fail(bad.join("; ")) };
    checks.push(Check { name: "cone_series", status });

    let v = json!({"checks": checks.iter().map(check_value).collect::<Vec<_>>(), "flags": flags(p)});
    Ok((checks, v))
}

/// Human-readable rendering of a JSON report, one `key: value` per line.
pub fn to_text(v: &Value) -> String {
    fn render(prefix: &str, v: &Value, out: &mut Vec<String>) {
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    render(&key, x, out);
                }
            }
            Value::Array(a) if a.iter().all(|x| x.get("e").is_some() && x.get("c").is_some()) && !a.is_empty() => {
                let fp = if a[0].get("w").is_some() {
                    FracPoly2::from_json(v).map(|x| x.to_string())
                } else {
                    FracPoly::from_json(v).map(|x| x.to_string())
                };
                out.push(format!("{prefix}: {}", fp.unwrap_or_else(|_| v.to_string())));
            }
            Value::Array(a) if a.iter().any(Value::is_object) => {
                for (i, x) in a.iter().enumerate() {
                    render(&format!("{prefix}[{i}]"), x, out);
                }
            }
            Value::String(s) => out.push(format!("{prefix}: {s}")),
            _ => out.push(format!("{prefix}: {v}")),
        }
    }
    let mut out = Vec::new();
    render("", v, &mut out);
    out.join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newton::parse_polynomial;

    fn poly(s: &str) -> NewtonPolyhedron {
        NewtonPolyhedron::build(parse_polynomial(s, None).unwrap()).unwrap()
    }

    #[test]
    fn spectrum_output_is_canonical() {
        let (_, v) = spectrum(&poly("x^2+y^3")).unwrap();
        let s = to_string(&v);
        assert!(s.contains(r#""hodge":[{"c":1,"e":"5/6"},{"c":1,"e":"7/6"}]"#), "{s}");
        assert!(s.contains(r#""mu":2"#));
        assert!(!s.contains(' '));
    }

    #[test]
    fn empty_and_halves() {
        assert_eq!(to_string(&FracPoly::zero().to_json()), "[]");
        let half = FracPoly::t_pow(Rational::new(Int::from(1), Int::from(2)));
        assert_eq!(to_string(&half.to_json()), r#"[{"c":1,"e":"1/2"}]"#);
        assert_eq!(format_rational(&Rational::new(Int::from(6), Int::from(4))), "3/2");
    }

    #[test]
    fn oracle_checks_pass() {
        for s in ["x^2+y^3", "x^3+y^4+z^5", "x^4+y^4+z^4+x*y*z"] {
            let (checks, _) = oracle_check(&poly(s)).unwrap();
            assert!(checks.iter().all(|c| !c.failed()), "{s}: {checks:?}");
        }
    }

    #[test]
    fn text_rendering() {
        let (_, v) = spectrum(&poly("x^2+y^3")).unwrap();
        let t = to_text(&v);
        assert!(t.contains("hodge: t^(5/6) + t^(7/6)"), "{t}");
        assert!(t.contains("validity: ConvenientNondegenerate"));
    }
}
