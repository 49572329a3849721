//! Fixed test instances and a seeded generator of random convenient supports.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::newton::{parse_polynomial, MonomialSupport};

#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub support: MonomialSupport,
}

impl Instance {
    fn parsed(text: &str, isolated: bool) -> Instance {
        let support = parse_polynomial(text, None).expect("corpus polynomial parses").with_flags(true, isolated);
        Instance { name: text.to_string(), support }
    }
}

pub const DEFAULT_SEED: u64 = 20_240_611;

/// Hand-picked instances with known invariants. The `x^a+yz` family is not
/// convenient but is an `A_(a-1)` singularity, so isolatedness is asserted.
pub fn golden() -> Vec<Instance> {
    let mut out: Vec<Instance> = [
        "x^2+y^3",
        "x^2+y^2",
        "x^3+y^4",
        "x^4+y^4+z^4+x*y*z",
        "x^5+y^5+z^5+x*y*z",
        "x^7+y^7+z^7+x^2*y^2*z^2",
        "x^2+y^2+x*z+y*z+z^4",
        "x^5+y^6+z^7",
        "x^3+y^3+z^3",
    ]
    .iter()
    .map(|s| Instance::parsed(s, false))
    .collect();
    for a in 3..=6 {
        out.push(Instance::parsed(&format!("x^{a}+y*z"), true));
    }
    out
}

/// Instances in four variables.
pub fn four_variables() -> Vec<Instance> {
    ["x^2+y^2+z^2+w^3", "x^3+y^3+z^3+w^3+x*y*z*w"].iter().map(|s| Instance::parsed(s, false)).collect()
}

/// Brieskorn-Pham exponent vectors with `n` in {2,3} and every `a_i` in 2..=6.
pub fn brieskorn_pham() -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for a in 2..=6u32 {
        for b in 2..=6 {
            out.push(vec![a, b]);
        }
    }
    for a in 2..=6u32 {
        for b in 2..=6 {
            for c in 2..=6 {
                out.push(vec![a, b, c]);
            }
        }
    }
    out
}

pub fn brieskorn_pham_support(a: &[u32]) -> Result<MonomialSupport> {
    let n = a.len();
    let exps: Vec<Vec<i64>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { i64::from(a[i]) } else { 0 }).collect()).collect();
    MonomialSupport::from_exponents(n, &exps)
}

/// `count` random convenient supports: pure powers `x_i^(a_i)` with
/// `a_i` in 2..=7 plus up to three mixed monomials with entries at most 7.
pub fn random_convenient(seed: u64, count: usize) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(2..=3usize);
        let powers: Vec<i64> = (0..n).map(|_| rng.gen_range(2..=7)).collect();
        let mut exps: Vec<Vec<i64>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { powers[i] } else { 0 }).collect()).collect();
        for _ in 0..rng.gen_range(0..=3) {
            let e: Vec<i64> = (0..n).map(|i| rng.gen_range(0..powers[i].min(7))).collect();
            if e.iter().filter(|&&x| x > 0).count() >= 2 {
                exps.push(e);
            }
        }
        let support = MonomialSupport::from_exponents(n, &exps).expect("random support is valid");
        out.push(Instance { name: support.to_text(), support });
    }
    out
}

/// Golden instances followed by the default random batch.
pub fn full(seed: u64, count: usize) -> Vec<Instance> {
    let mut out = golden();
    out.extend(random_convenient(seed, count));
    out
}
