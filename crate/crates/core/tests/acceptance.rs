//! Acceptance criteria, one line per criterion.
//!
//! Lines marked `KNOWN-FAIL` are clauses that do not hold as literally
//! stated; each carries the counterexample found. They must keep failing:
//! an unexpected pass is reported as an error so the analysis gets revisited.

use std::process::ExitCode;

use newton_spectrum::corpus::{
    brieskorn_pham, brieskorn_pham_support, four_variables, full, golden, Instance, DEFAULT_SEED,
};
use newton_spectrum::exactla::rational::{ivec, rat, Int, Rational};
use newton_spectrum::fan::{
    delta_sigma_xi, duality_holds, epsilon_census, gcd_law_holds, normal_fan, sigma_of, smooth_subdivision_with,
    SubdivisionOptions,
};
use newton_spectrum::monodromy::{
    candidate_orders, edge_spectrum_count, jordan_blocks, pairs_count, Eigenvalue, JordanCount,
};
use newton_spectrum::motivic::descent_check_on;
use newton_spectrum::newton::{parse_polynomial, NewtonPolyhedron};
use newton_spectrum::puiseux::{FracPoly, FracPoly2};
use newton_spectrum::spectrum::{
    bernstein_max_root, bp_oracle, face_invariants, hodge_from_invariants, hodge_via_r, open_box,
    pairs_from_invariants, report_from_invariants, spectral_pairs, FaceInvariants,
};
use newton_spectrum::Error;

type Check = Result<(), String>;

enum Expect {
    Holds,
    /// The clause is expected to fail; the string explains why.
    Refuted(&'static str),
}

struct Harness {
    unexpected: usize,
}

impl Harness {
    fn line(&mut self, id: &str, title: &str, expect: Expect, result: Check) {
        match (expect, result) {
            (Expect::Holds, Ok(())) => println!("PASS        {id:<4} {title}"),
            (Expect::Holds, Err(e)) => {
                self.unexpected += 1;
                println!("FAIL        {id:<4} {title}\n            {e}");
            }
            (Expect::Refuted(why), Err(e)) => {
                println!("KNOWN-FAIL  {id:<4} {title}\n            {e}\n            {why}");
            }
            (Expect::Refuted(_), Ok(())) => {
                self.unexpected += 1;
                println!("FAIL        {id:<4} {title}\n            expected a documented counterexample, but the clause held");
            }
        }
    }
}

struct Computed {
    name: String,
    p: NewtonPolyhedron,
    inv: Vec<FaceInvariants>,
}

fn compute(inst: &Instance) -> Computed {
    let p = NewtonPolyhedron::build(inst.support.clone()).expect("corpus instance builds");
    let inv = face_invariants(&p).expect("face invariants");
    Computed { name: inst.name.clone(), p, inv }
}

fn poly(s: &str) -> NewtonPolyhedron {
    NewtonPolyhedron::build(parse_polynomial(s, None).unwrap()).unwrap()
}

fn fp(terms: &[(i64, i64, i64)]) -> FracPoly {
    FracPoly::from_terms(terms.iter().map(|&(c, a, b)| (rat(a, b), Int::from(c))))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all(corpus: &[Computed], f: impl Fn(&Computed) -> Check) -> Check {
    let failures: Vec<String> = corpus.iter().filter_map(|c| f(c).err().map(|e| format!("{}: {e}", c.name))).collect();
    if failures.is_empty() {
        Ok(())
    } else {
        Err(format!("{} instance(s) fail; first: {}", failures.len(), failures[0]))
    }
}

fn face_of(p: &NewtonPolyhedron, verts: &[&[i64]]) -> usize {
    let ids: Vec<usize> = verts.iter().map(|v| p.vertex_id(&ivec(v)).expect("vertex")).collect();
    p.face_by_vertices(&ids).expect("face")
}

fn criterion_1() -> Check {
    for p in [4i64, 5] {
        let got = spectral_pairs(&poly(&format!("x^{p}+y^{p}+z^{p}+x*y*z"))).map_err(|e| e.to_string())?;
        let mut want = FracPoly2::from_terms([(rat(1, 1), 1, Int::from(1)), (rat(2, 1), 3, Int::from(1))]);
        for k in 1..p {
            want.add_term(rat(k, p) + Rational::from_integer(Int::from(1)), 2, Int::from(3));
        }
        ensure(got == want, || format!("p={p}: got {got}, want {want}"))?;
    }
    Ok(())
}

const NON_SIMPLICIAL: &str = "x^2+y^2+x*z+y*z+z^4";

fn criterion_2_main() -> Check {
    let p = poly(NON_SIMPLICIAL);
    let inv = face_invariants(&p).map_err(|e| e.to_string())?;
    let square = face_of(&p, &[&[0, 1, 1], &[0, 2, 0], &[1, 0, 1], &[2, 0, 0]]);
    ensure(inv[square].q == fp(&[(1, 1, 1), (1, 3, 2)]), || format!("q on the square is {}", inv[square].q))?;
    ensure(inv[0].q == FracPoly::one(), || format!("q of the empty face is {}", inv[0].q))?;
    ensure(inv[square].r == FracPoly::one(), || format!("r on the square is {}", inv[square].r))?;
    ensure(inv[0].r == fp(&[(-1, 1, 1)]), || format!("r of the empty face is {}", inv[0].r))?;
    let sp = hodge_from_invariants(&p, &inv);
    ensure(sp == fp(&[(1, 3, 2)]), || format!("Sp' = {sp}"))?;
    match spectral_pairs(&p) {
        Err(Error::NotSimplicial) => Ok(()),
        other => Err(format!("pairs returned {other:?}")),
    }
}

fn criterion_2_other_faces(only_with_r: bool) -> Check {
    let p = poly(NON_SIMPLICIAL);
    let inv = face_invariants(&p).map_err(|e| e.to_string())?;
    let square = face_of(&p, &[&[0, 1, 1], &[0, 2, 0], &[1, 0, 1], &[2, 0, 0]]);
    let bad: Vec<String> = p
        .compact_faces()
        .filter(|f| f.id != square && !inv[f.id].q.is_zero())
        .filter(|f| !only_with_r || !inv[f.id].r.is_zero())
        .map(|f| {
            let verts: Vec<String> = p.face_vertices(f.id).iter().map(|v| format!("{v:?}")).collect();
            format!("face {} has q = {}, r = {}", verts.join("-"), inv[f.id].q, inv[f.id].r)
        })
        .collect();
    ensure(bad.is_empty(), || bad.join("; "))
}

fn criterion_3() -> Check {
    for a in 3..=6i64 {
        let s = parse_polynomial(&format!("x^{a}+y*z"), None).unwrap().with_flags(true, true);
        let p = NewtonPolyhedron::build(s).unwrap();
        let inv = face_invariants(&p).map_err(|e| e.to_string())?;
        let r = report_from_invariants(&p, &inv);
        let want: FracPoly = (1..a).map(|k| FracPoly::t_pow(rat(k, a) + Rational::from_integer(Int::from(1)))).sum();
        ensure(r.steenbrink == want, || format!("a={a}: Sp = {}", r.steenbrink))?;
        let v = face_of(&p, &[&[a, 0, 0]]);
        ensure(inv[v].r == fp(&[(1, 1, 1)]), || format!("a={a}: r = {}", inv[v].r))?;
        let q: FracPoly = (1..a).map(|k| FracPoly::t_pow(rat(k, a))).sum();
        ensure(inv[v].q == q, || format!("a={a}: q = {}", inv[v].q))?;
        let b = bernstein_max_root(&p).map_err(|e| e.to_string())?;
        ensure(b.root == rat(-(a + 1), a) && b.reduced, || format!("a={a}: root {} reduced {}", b.root, b.reduced))?;
    }
    Ok(())
}

fn criterion_4() -> Check {
    let mut failures = Vec::new();
    for a in brieskorn_pham() {
        let p = NewtonPolyhedron::build(brieskorn_pham_support(&a).unwrap()).unwrap();
        let inv = face_invariants(&p).map_err(|e| e.to_string())?;
        let sp = report_from_invariants(&p, &inv).steenbrink;
        if sp != bp_oracle(&a).unwrap() {
            failures.push(format!("{a:?}: {sp}"));
        }
    }
    ensure(failures.is_empty(), || failures.join("; "))
}

fn criterion_5(random: &[Computed]) -> Check {
    ensure(random.len() == 100, || format!("{} random instances", random.len()))?;
    all(random, |c| {
        let mu = hodge_from_invariants(&c.p, &c.inv).evaluate_at_one();
        let nu = c.p.newton_number().map_err(|e| e.to_string())?;
        ensure(mu == nu, || format!("Sp'(1) = {mu}, newton number {nu}"))
    })
}

fn criterion_6(corpus: &[Computed]) -> Check {
    all(corpus, |c| {
        let a = hodge_from_invariants(&c.p, &c.inv);
        let b = hodge_via_r(&c.inv);
        ensure(a == b, || format!("{a} vs {b}"))
    })
}

fn criterion_7(corpus: &[Computed]) -> Check {
    all(corpus, |c| {
        for f in &c.p.faces {
            let sum: FracPoly = c.p.faces_below(f.id).into_iter().map(|t| c.inv[t].q.clone()).sum();
            ensure(sum == c.inv[f.id].qhat, || {
                format!("face {}: sum of q below is {sum}, qhat {}", f.id, c.inv[f.id].qhat)
            })?;
            if f.is_simplex {
                let ob = open_box(&c.p, f.id).map_err(|e| e.to_string())?;
                ensure(ob == c.inv[f.id].q, || format!("face {}: open box {ob}, inversion {}", f.id, c.inv[f.id].q))?;
            }
        }
        Ok(())
    })
}

fn criterion_8(corpus: &[Computed]) -> Check {
    let applicable: Vec<&Computed> = corpus.iter().filter(|c| c.p.is_convenient() && c.p.is_simplicial()).collect();
    ensure(!applicable.is_empty(), || "no convenient simplicial instance".into())?;
    for c in applicable {
        for f in &c.p.faces {
            let r = &c.inv[f.id].r;
            let s = Rational::from_integer(Int::from(c.p.n as i64 - f.d_cone as i64));
            ensure(r.dual(&s) == *r, || format!("{}: face {} r = {r}", c.name, f.id))?;
        }
    }
    Ok(())
}

fn criterion_9(corpus: &[Computed]) -> Check {
    let mut spectra = 0;
    let mut pairs = 0;
    for c in corpus {
        let cls = c.p.classify();
        if !cls.isolated {
            continue;
        }
        spectra += 1;
        let sp = hodge_from_invariants(&c.p, &c.inv);
        let n = Rational::from_integer(Int::from(c.p.n));
        ensure(sp.dual(&n) == sp, || format!("{}: Sp' = {sp} is not symmetric", c.name))?;
        if cls.simplicial {
            pairs += 1;
            let pp = pairs_from_invariants(&c.p, &c.inv).map_err(|e| e.to_string())?;
            let image = pp.involution(&n, 2 * c.p.n as i64 - 2);
            ensure(image == pp, || format!("{}: pairs {pp} not invariant", c.name))?;
        }
    }
    ensure(spectra > 0 && pairs > 0, || "no applicable instance".into())
}

fn count(p: &NewtonPolyhedron, l: Eigenvalue, k: usize) -> Result<Int, String> {
    match jordan_blocks(p, l, k).map_err(|e| e.to_string())? {
        JordanCount::Count(c) => Ok(c),
        JordanCount::Unsupported => Err(format!("unsupported k={k}")),
    }
}

fn criterion_10_golden() -> Check {
    let p = poly("x^5+y^5+z^5+x*y*z");
    ensure(count(&p, Eigenvalue::one(), 2)? == Int::from(1), || "n_{1,2} != 1".into())?;
    for q in 2..=30u64 {
        for a in 1..q as i64 {
            let l = Eigenvalue::new(a, q).unwrap();
            if l.order() == q {
                ensure(count(&p, l, 3)?.eq(&Int::from(0)), || format!("n_(lambda,3) != 0 for {a}/{q}"))?;
            }
        }
    }
    let p = poly("x^7+y^7+z^7+x^2*y^2*z^2");
    ensure(count(&p, Eigenvalue::new(1, 2).unwrap(), 3)? == Int::from(1), || "n_{-1,3} != 1".into())
}

fn isolated(corpus: &[Computed]) -> impl Iterator<Item = &Computed> {
    corpus.iter().filter(|c| c.p.classify().isolated)
}

fn criterion_10_no_unipotent_maximal(corpus: &[Computed]) -> Check {
    for c in isolated(corpus) {
        ensure(count(&c.p, Eigenvalue::one(), c.p.n)? == Int::from(0), || format!("{}: n_(1,n) != 0", c.name))?;
    }
    Ok(())
}

/// `sum over all compact edges of (q_beta + q_(2-beta))`, for both signs of
/// `beta`.
fn literal_edge_sum(c: &Computed, l: Eigenvalue) -> Vec<Int> {
    let beta = l.angle();
    [beta.clone(), Rational::from_integer(Int::from(1)) - &beta]
        .iter()
        .map(|b| {
            let two_minus = Rational::from_integer(Int::from(2)) - b;
            c.p.compact_faces()
                .filter(|f| f.d_sigma == 1)
                .map(|f| c.inv[f.id].q.coeff(b) + c.inv[f.id].q.coeff(&two_minus))
                .sum()
        })
        .collect()
}

fn criterion_10_edge_formula(corpus: &[Computed], literal: bool) -> Check {
    for c in isolated(corpus) {
        let q_by_face: Vec<FracPoly> = c.inv.iter().map(|x| x.q.clone()).collect();
        for q in candidate_orders(&c.p).into_iter().filter(|&q| q > 1) {
            let l = Eigenvalue::of_order(q).unwrap();
            let n = count(&c.p, l, c.p.n - 1)?;
            if literal {
                let sums = literal_edge_sum(c, l);
                ensure(sums.contains(&n), || {
                    format!("{}: order {q}: n_(lambda,n-1) = {n}, edge sums over both signs of beta {sums:?}", c.name)
                })?;
            } else {
                let e = edge_spectrum_count(&c.p, &q_by_face, l);
                ensure(e == n, || format!("{}: order {q}: n_(lambda,n-1) = {n}, internal edge sum {e}", c.name))?;
            }
        }
    }
    Ok(())
}

fn criterion_10_pairs_consistency(corpus: &[Computed]) -> Check {
    for c in isolated(corpus).filter(|c| c.p.is_simplicial()) {
        let pairs = pairs_from_invariants(&c.p, &c.inv).map_err(|e| e.to_string())?;
        let n = c.p.n as i64;
        for q in candidate_orders(&c.p) {
            let l = Eigenvalue::of_order(q).unwrap();
            let next = count(&c.p, l, c.p.n - 1)?;
            let top = count(&c.p, l, c.p.n)?;
            let want_next = pairs_count(&pairs, l, 2 * n - 3);
            let want_top = pairs_count(&pairs, l, 2 * n - 2);
            ensure(next == want_next && top == want_top, || {
                format!("{}: order {q}: blocks ({next}, {top}), pairs give ({want_next}, {want_top})", c.name)
            })?;
        }
    }
    Ok(())
}

fn criterion_11(corpus: &[Computed]) -> Check {
    let b = bernstein_max_root(&poly("x^2+y^3")).map_err(|e| e.to_string())?;
    ensure(b.root == rat(-5, 6), || format!("cusp root {}", b.root))?;
    let b = bernstein_max_root(&poly("x^5+y^6+z^7")).map_err(|e| e.to_string())?;
    ensure(b.root == rat(-107, 210), || format!("root {}", b.root))?;
    let mut seen = 0;
    for c in corpus {
        let Ok(b) = bernstein_max_root(&c.p) else {
            continue;
        };
        if b.c > Rational::from_integer(Int::from(1)) {
            seen += 1;
            let sp = report_from_invariants(&c.p, &c.inv).steenbrink;
            let Some(min) = sp.min_exponent().cloned() else {
                return Err(format!("{}: empty spectrum", c.name));
            };
            ensure(b.root == -min.clone(), || format!("{}: root {} vs minimal exponent {min}", c.name, b.root))?;
        }
    }
    ensure(seen > 0, || "no instance with c > 1".into())
}

fn criterion_12(corpus: &[Computed]) -> Check {
    for c in corpus {
        let nf = normal_fan(&c.p);
        for f in c.p.compact_faces() {
            ensure(duality_holds(&c.p, &nf, f.id), || format!("{}: duality fails on face {}", c.name, f.id))?;
        }
        for opts in [SubdivisionOptions::standard(), SubdivisionOptions::alternate(c.p.n)] {
            let sub = smooth_subdivision_with(&c.p, &nf, &opts).map_err(|e| format!("{}: {e}", c.name))?;
            ensure(sub.fan.is_smooth(), || format!("{}: subdivision not smooth", c.name))?;
            sub.fan.validate().map_err(|e| format!("{}: {e}", c.name))?;
            for eta in 0..nf.fan.cones.len() {
                if nf.fan.is_in_prime(&nf.fan.cones[eta]) {
                    let census = epsilon_census(&nf, &sub, eta);
                    ensure(census.holds(), || format!("{}: census {census:?}", c.name))?;
                }
            }
            for xi in 0..sub.fan.cones.len() {
                if let Some(sigma) = sigma_of(&c.p, &sub, xi) {
                    delta_sigma_xi(&c.p, &nf, &sub, sigma, xi).map_err(|e| e.to_string())?;
                    ensure(gcd_law_holds(&c.p, &nf, &sub, xi).map_err(|e| e.to_string())?, || {
                        format!("{}: gcd law fails on cone {xi}", c.name)
                    })?;
                }
            }
            let r = descent_check_on(&c.p, &nf, &sub).map_err(|e| e.to_string())?;
            ensure(r.holds, || format!("{}: descent fails at {:?}", c.name, r.first_mismatch))?;
        }
    }
    ensure(corpus.iter().any(|c| c.p.n == 4), || "no n=4 instance".into())
}

fn main() -> ExitCode {
    let mut corpus: Vec<Computed> = full(DEFAULT_SEED, 100).iter().map(compute).collect();
    let random = &corpus[golden().len()..];

    let mut h = Harness { unexpected: 0 };
    h.line("1", "spectral pairs of x^p+y^p+z^p+xyz for p = 4, 5", Expect::Holds, criterion_1());
    h.line(
        "2a",
        "non-simplicial example: q, r, Sp' on the square and empty face; pairs NotSimplicial",
        Expect::Holds,
        criterion_2_main(),
    );
    h.line(
        "2b",
        "non-simplicial example: every other nonempty q vanishes (literal)",
        Expect::Refuted(
            "faces inside coordinate hyperplanes carry open-box points (e.g. z, z^2, z^3 below (0,0,4)); their r vanishes, so Sp' is unaffected",
        ),
        criterion_2_other_faces(false),
    );
    h.line(
        "2c",
        "non-simplicial example: every other face with r != 0 has q = 0",
        Expect::Holds,
        criterion_2_other_faces(true),
    );
    h.line("3", "x^a+yz for a = 3..6: Sp, r, q and the Bernstein-Sato root", Expect::Holds, criterion_3());
    h.line("4", "Brieskorn-Pham oracle, n in {2,3}, exponents 2..6 (150 supports)", Expect::Holds, criterion_4());
    h.line(
        "5",
        "Sp'(1) equals the Newton number on 100 random convenient supports",
        Expect::Holds,
        criterion_5(random),
    );
    h.line("6", "both expressions of the spectrum agree on the corpus", Expect::Holds, criterion_6(&corpus));
    h.line("7", "qhat is the sum of q below; open-box q on simplices", Expect::Holds, criterion_7(&corpus));
    h.line("8", "symmetry of r on convenient simplicial instances", Expect::Holds, criterion_8(&corpus));
    h.line("9", "spectrum and spectral-pair symmetries", Expect::Holds, criterion_9(&corpus));
    h.line("10a", "Jordan blocks of the golden examples", Expect::Holds, criterion_10_golden());
    h.line(
        "10b",
        "no unipotent block of maximal size on the corpus",
        Expect::Holds,
        criterion_10_no_unipotent_maximal(&corpus),
    );
    h.line(
        "10c",
        "n_(lambda,n-1) as the sum over all edges of q_beta + q_(2-beta) (literal)",
        Expect::Refuted(
            "on the cusp the edge has q = t^(5/6)+t^(7/6), so the sum is 0 or 2 while n_(lambda,1) = 1 for lambda of order 6",
        ),
        criterion_10_edge_formula(&corpus, true),
    );
    h.line(
        "10d",
        "n_(lambda,n-1) as the sum over internal edges of q_beta + q_(1+beta)",
        Expect::Holds,
        criterion_10_edge_formula(&corpus, false),
    );
    h.line(
        "10e",
        "Jordan counts match weight-graded spectral pairs",
        Expect::Holds,
        criterion_10_pairs_consistency(&corpus),
    );
    h.line("11", "Bernstein-Sato roots", Expect::Holds, criterion_11(&corpus));
    corpus.extend(four_variables().iter().map(compute));
    h.line(
        "12",
        "fan census, gcd law, duality and descent under two subdivisions",
        Expect::Holds,
        criterion_12(&corpus),
    );

    println!("N/A         13   Hodge-structure classes and sheaf-level statements are not computed; their numerical consequences are covered by 1-12");

    if h.unexpected == 0 {
        println!("acceptance: all criteria behave as documented");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} unexpected result(s)", h.unexpected);
        ExitCode::FAILURE
    }
}
