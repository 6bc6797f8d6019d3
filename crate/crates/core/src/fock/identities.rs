//! The three Wick-product identities (nonassociativity, skew-symmetry, and the
//! derivation defect of positive circle products) as exact state checks, plus
//! a seeded random-field generator for property suites.

use rand::Rng;

use crate::scalar::{binomial, factorial, frac, one, sign, Scalar};

use super::engine::Engine;
use super::expr::FieldExpr;
use super::system::System;
use super::word::FockState;

#[derive(Clone, Debug)]
pub struct IdentityFailure {
    pub identity: &'static str,
    pub fields: Vec<String>,
    pub lhs: FockState,
    pub rhs: FockState,
}

fn koszul(a: &FieldExpr, b: &FieldExpr) -> Scalar {
    if a.is_odd() && b.is_odd() {
        -one()
    } else {
        one()
    }
}

/// Upper bound (exclusive) on `k` with `a ∘_k b` possibly nonzero.
fn circle_bound(a: &FieldExpr, b: &FieldExpr) -> i64 {
    (a.weight() + b.weight()).max(0)
}

fn failure(eng: &Engine, identity: &'static str, fs: &[&FieldExpr], lhs: FockState, rhs: FockState) -> Option<IdentityFailure> {
    if lhs == rhs {
        return None;
    }
    let sys = eng.system();
    Some(IdentityFailure { identity, fields: fs.iter().map(|f| f.display(sys).to_string()).collect(), lhs, rhs })
}

/// `:(:ab:)c: - :abc: = Σ_k 1/(k+1)! (:(∂^{k+1}a)(b∘_k c): ± :(∂^{k+1}b)(a∘_k c):)`.
pub fn nonassociativity(eng: &Engine, a: &FieldExpr, b: &FieldExpr, c: &FieldExpr) -> Option<IdentityFailure> {
    let lhs = eng.state_of(&eng.wick(&eng.wick(a, b), c)).sub(&eng.state_of(&eng.wick(a, &eng.wick(b, c))));
    let s = koszul(a, b);
    let mut terms = Vec::new();
    for k in 0..circle_bound(b, c) {
        let f = one() / factorial(k as u64 + 1);
        let da = eng.deriv(k as u32 + 1, a);
        terms.push((f.clone(), eng.wick(&da, &eng.circ_expr(k, b, c))));
    }
    for k in 0..circle_bound(a, c) {
        let f = one() / factorial(k as u64 + 1);
        let db = eng.deriv(k as u32 + 1, b);
        terms.push((f * &s, eng.wick(&db, &eng.circ_expr(k, a, c))));
    }
    let rhs = eng.state_of(&eng.sum(terms));
    failure(eng, "nonassociativity", &[a, b, c], lhs, rhs)
}

/// `:ab: - (-1)^{|a||b|} :ba: = Σ_k (-1)^k/(k+1)! ∂^{k+1}(a∘_k b)`.
pub fn skew_symmetry(eng: &Engine, a: &FieldExpr, b: &FieldExpr) -> Option<IdentityFailure> {
    let lhs = eng.state_of(&eng.wick(a, b)).add_scaled(&eng.state_of(&eng.wick(b, a)), &-koszul(a, b));
    let terms = (0..circle_bound(a, b))
        .map(|k| (sign(k) / factorial(k as u64 + 1), eng.deriv(k as u32 + 1, &eng.circ_expr(k, a, b))))
        .collect();
    let rhs = eng.state_of(&eng.sum(terms));
    failure(eng, "skew-symmetry", &[a, b], lhs, rhs)
}

/// `a∘_n(:bc:) - :(a∘_n b)c: - (-1)^{|a||b|} :b(a∘_n c): = Σ_{k=1}^n C(n,k) (a∘_{n-k} b)∘_{k-1} c`.
pub fn derivation_defect(eng: &Engine, a: &FieldExpr, b: &FieldExpr, c: &FieldExpr, n: i64) -> Option<IdentityFailure> {
    let lhs = eng
        .circle(a, n, &eng.wick(b, c))
        .sub(&eng.state_of(&eng.wick(&eng.circ_expr(n, a, b), c)))
        .add_scaled(&eng.state_of(&eng.wick(b, &eng.circ_expr(n, a, c))), &-koszul(a, b));
    let terms = (1..=n)
        .map(|k| (binomial(n, k as u32), eng.circ_expr(k - 1, &eng.circ_expr(n - k, a, b), c)))
        .collect();
    let rhs = eng.state_of(&eng.sum(terms));
    failure(eng, "derivation defect", &[a, b, c], lhs, rhs)
}

/// All three identities on one triple; `n` is the circle index for the third.
pub fn check_triple(eng: &Engine, a: &FieldExpr, b: &FieldExpr, c: &FieldExpr, n: i64) -> Result<(), IdentityFailure> {
    if let Some(f) = nonassociativity(eng, a, b, c) {
        return Err(f);
    }
    if let Some(f) = skew_symmetry(eng, a, b) {
        return Err(f);
    }
    if let Some(f) = derivation_defect(eng, a, b, c, n) {
        return Err(f);
    }
    Ok(())
}

fn small_scalar<R: Rng>(rng: &mut R) -> Scalar {
    let mut p = rng.random_range(-3i64..=3);
    if p == 0 {
        p = 1;
    }
    frac(p, rng.random_range(1i64..=3))
}

fn generators_up_to(system: &System, w: i64) -> Vec<u32> {
    match system {
        System::Current { .. } => (0..w.clamp(0, 4) as u32).collect(),
        _ => (0..system.generator_count().unwrap()).filter(|&g| system.gen_weight(g) <= w).collect(),
    }
}

/// A random homogeneous field of weight exactly `w` (when one exists):
/// derivatives of generators, Wick products, and two-term combinations.
pub fn random_field<R: Rng>(eng: &Engine, rng: &mut R, w: i64) -> FieldExpr {
    let sys = eng.system();
    let base = random_monomial(eng, rng, w, 2);
    if rng.random_bool(0.3) {
        let other = random_monomial(eng, rng, w, 2);
        if other.is_odd() == base.is_odd() && other.weight() == base.weight() {
            return FieldExpr::sum(sys, vec![(small_scalar(rng), base), (small_scalar(rng), other)]);
        }
    }
    base
}

fn random_monomial<R: Rng>(eng: &Engine, rng: &mut R, w: i64, depth: u32) -> FieldExpr {
    let sys = eng.system();
    let gens = generators_up_to(sys, w);
    if gens.is_empty() {
        return eng.vacuum_field();
    }
    // lightest weight carrying a generator: 1 for the currents, 0 for free fields
    let lo = if generators_up_to(sys, 0).is_empty() { 1 } else { 0 };
    if depth > 0 && w >= 2 * lo && rng.random_bool(0.45) {
        let w1 = rng.random_range(lo..=w - lo);
        let a = random_monomial(eng, rng, w1, depth - 1);
        let b = random_monomial(eng, rng, w - w1, depth - 1);
        return eng.wick(&a, &b);
    }
    let g = gens[rng.random_range(0..gens.len())];
    let k = (w - sys.gen_weight(g)) as u32;
    eng.deriv(k, &eng.gen(g))
}

#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub cases: usize,
    pub failures: Vec<IdentityFailure>,
}

/// Runs the three identities on `cases` random triples. Field weights are
/// drawn from `0..=max_weight` (from 1 for the current algebra), and the
/// triple's total weight is capped at `total_cap`.
pub fn run_suite<R: Rng>(eng: &Engine, rng: &mut R, cases: usize, max_weight: i64, total_cap: i64) -> SuiteReport {
    let lo = if matches!(eng.system(), System::Current { .. }) { 1 } else { 0 };
    let mut report = SuiteReport::default();
    for _ in 0..cases {
        let mut ws = [0i64; 3];
        loop {
            for w in ws.iter_mut() {
                *w = rng.random_range(lo..=max_weight);
            }
            if ws.iter().sum::<i64>() <= total_cap {
                break;
            }
        }
        let a = random_field(eng, rng, ws[0]);
        let b = random_field(eng, rng, ws[1]);
        let c = random_field(eng, rng, ws[2]);
        let n = rng.random_range(1i64..=3);
        report.cases += 1;
        if let Err(f) = check_triple(eng, &a, &b, &c, n) {
            report.failures.push(f);
        }
    }
    report
}

/// Deterministic generator used by every seeded suite.
pub fn seeded_rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}
