use crate::error::{Error, Result};
use crate::fock::{FockState, Word};
use crate::scalar::{factorial, int, sign, Scalar};

use super::model::Model;

/// `λ_{a,b,w,l} = (-1)^{b+1} (b+l)! / (l+w-a)!`, zero when `l + w < a`.
pub fn lambda(a: u32, b: u32, w: i64, l: u32) -> Scalar {
    let d = l as i64 + w - a as i64;
    if d < 0 {
        return int(0);
    }
    sign(b as i64 + 1) * factorial((b + l) as u64) / factorial(d as u64)
}

/// `μ_{a,b,w,m} = (-1)^a (a+m)! / (m+w-b)!`, zero when `m + w < b`.
pub fn mu(a: u32, b: u32, w: i64, m: u32) -> Scalar {
    let d = m as i64 + w - b as i64;
    if d < 0 {
        return int(0);
    }
    sign(a as i64) * factorial((a + m) as u64) / factorial(d as u64)
}

/// `Ω_{a,b} ∘_{a+b-w} v`.
pub fn parabolic_act(model: &Model, a: u32, b: u32, w: i64, v: &FockState) -> Result<FockState> {
    let k = a as i64 + b as i64 - w;
    if k < 0 {
        return Err(Error::InvalidArgument(format!("circle index a + b - w = {k} is negative")));
    }
    model.engine().apply_mode(&model.omega(a, b), k, v)
}

/// Drops the vacuum component, which lies in filtration degree 0.
pub fn without_vacuum(v: &FockState) -> FockState {
    let empty = Word::new();
    let mut t = v.terms().clone();
    t.remove(&empty);
    FockState::from_terms(&v.system, t)
}

/// One grid point where the action on `Ω_{l,m}` differs from the closed form.
#[derive(Clone, Debug)]
pub struct ParabolicMismatch {
    pub a: u32,
    pub b: u32,
    pub w: i64,
    pub l: u32,
    pub m: u32,
    pub got: FockState,
    pub expected: FockState,
}

/// Compares `Ω_{a,b} ∘_{a+b-w} Ω_{l,m}` with `λ Ω_{l+w,m} + μ Ω_{l,m+w}` modulo
/// the vacuum, for all grid points with `a, b, l, m ≤ max` and `|w| ≤ wmax`.
pub fn check_grid(model: &Model, max: u32, wmax: i64) -> Vec<ParabolicMismatch> {
    let mut points = Vec::new();
    for a in 0..=max {
        for b in 0..=max {
            for w in -wmax..=wmax {
                if (a + b) as i64 - w < 0 {
                    continue;
                }
                for l in 0..=max {
                    for m in 0..=max {
                        points.push((a, b, w, l, m));
                    }
                }
            }
        }
    }
    let results = crate::par::map(&points, |&(a, b, w, l, m)| {
        let v = model.state(&model.omega(l, m));
        let got = without_vacuum(&parabolic_act(model, a, b, w, &v).expect("valid index"));
        let mut expected = FockState::zero(model.system());
        let lam = lambda(a, b, w, l);
        if !num_traits::Zero::is_zero(&lam) {
            expected = expected.add_scaled(&model.state(&model.omega((l as i64 + w) as u32, m)), &lam);
        }
        let nu = mu(a, b, w, m);
        if !num_traits::Zero::is_zero(&nu) {
            expected = expected.add_scaled(&model.state(&model.omega(l, (m as i64 + w) as u32)), &nu);
        }
        (got == expected).then_some(()).ok_or(ParabolicMismatch { a, b, w, l, m, got, expected })
    });
    results.into_iter().filter_map(|r| r.err()).collect()
}
