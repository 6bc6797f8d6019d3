use std::collections::BTreeMap;

use crate::fock::{FieldExpr, FockState};
use crate::linalg;
use crate::scalar::{frac, int, one, Scalar};

use super::model::Model;

/// One named exact check.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub ok: bool,
}

#[derive(Clone, Debug)]
pub struct LwReport {
    pub n: u32,
    pub checks: Vec<Check>,
}

impl LwReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.ok).collect()
    }
}

/// `L = (1/2n)(:j^0 j^0: + n ∂j^0 - 2n j^1)`.
pub fn build_l(model: &Model, n: u32) -> FieldExpr {
    let e = model.engine();
    let (j0, j1) = (model.j(0), model.j(1));
    let n = n as i64;
    let s = frac(1, 2 * n);
    e.sum(vec![
        (s.clone(), e.wick(&j0, &j0)),
        (s.clone() * int(n), e.deriv(1, &j0)),
        (s * int(-2 * n), j1),
    ])
}

/// `W = :j^0j^0j^0: + (3n/2):j^0∂j^0: - 3n:j^0j^1: + (n²/4)∂²j^0 - (3n²/2)∂j^1 + (3n²/2)j^2`.
pub fn build_w(model: &Model, n: u32) -> FieldExpr {
    let e = model.engine();
    let (j0, j1, j2) = (model.j(0), model.j(1), model.j(2));
    let n = n as i64;
    e.sum(vec![
        (one(), e.wick_all(&[j0.clone(), j0.clone(), j0.clone()])),
        (frac(3 * n, 2), e.wick(&j0, &e.deriv(1, &j0))),
        (int(-3 * n), e.wick(&j0, &j1)),
        (frac(n * n, 4), e.deriv(2, &j0)),
        (frac(-3 * n * n, 2), e.deriv(1, &j1)),
        (frac(3 * n * n, 2), j2),
    ])
}

/// Builds `L`, `W` in the given model and checks the Virasoro relations with
/// central charge `-n-1`, primarity of `W`, and commutation with `j^0`.
pub fn build_lw(model: &Model, n: u32) -> (FieldExpr, FieldExpr, LwReport) {
    let e = model.engine();
    let l = build_l(model, n);
    let w = build_w(model, n);
    let j0 = model.j(0);
    let vac = FockState::vacuum(model.system());
    let zero = FockState::zero(model.system());
    let sl = model.state(&l);
    let sw = model.state(&w);
    let mut checks = Vec::new();
    let mut check = |name: String, got: FockState, want: &FockState| checks.push(Check { name, ok: &got == want });
    check("L∘3L".into(), e.circle(&l, 3, &l), &vac.scale(&frac(-(n as i64) - 1, 2)));
    check("L∘2L".into(), e.circle(&l, 2, &l), &zero);
    check("L∘1L".into(), e.circle(&l, 1, &l), &sl.scale(&int(2)));
    check("L∘0L".into(), e.circle(&l, 0, &l), &model.state(&e.deriv(1, &l)));
    check("L∘1W".into(), e.circle(&l, 1, &w), &sw.scale(&int(3)));
    check("L∘0W".into(), e.circle(&l, 0, &w), &model.state(&e.deriv(1, &w)));
    for k in 2..=5 {
        check(format!("L∘{k}W"), e.circle(&l, k, &w), &zero);
    }
    for k in 0..=4 {
        check(format!("L∘{k}j0"), e.circle(&l, k, &j0), &zero);
        check(format!("W∘{k}j0"), e.circle(&w, k, &j0), &zero);
    }
    (l, w, LwReport { n, checks })
}

/// `W ∘_k W` written in the normally ordered polynomials in `L` of matching
/// weight; `None` at an index where the product leaves that span.
pub fn w_w_closure(model: &Model, n: u32) -> Vec<(i64, Option<Vec<(String, Scalar)>>)> {
    let e = model.engine();
    let l = build_l(model, n);
    let w = build_w(model, n);
    let dl = |k| e.deriv(k, &l);
    let span = |wt: i64| -> Vec<(String, FieldExpr)> {
        match wt {
            0 => vec![("1".into(), e.vacuum_field())],
            2 => vec![("L".into(), l.clone())],
            3 => vec![("∂L".into(), dl(1))],
            4 => vec![("∂²L".into(), dl(2)), (":LL:".into(), e.wick(&l, &l))],
            5 => vec![
                ("∂³L".into(), dl(3)),
                (":∂L L:".into(), e.wick(&dl(1), &l)),
                (":L ∂L:".into(), e.wick(&l, &dl(1))),
            ],
            _ => Vec::new(),
        }
    };
    (0..=5)
        .map(|k| {
            let s = e.circle(&w, k, &w);
            let cands = span(5 - k);
            let states: Vec<FockState> = cands.iter().map(|(_, f)| model.state(f)).collect();
            let cols: Vec<&BTreeMap<_, _>> = states.iter().map(|x| x.terms()).collect();
            let sol = linalg::express(&cols, s.terms())
                .map(|c| cands.iter().map(|(name, _)| name.clone()).zip(c).collect());
            (k, sol)
        })
        .collect()
}
