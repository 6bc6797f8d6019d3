mod common;

use std::collections::BTreeMap;

use winf_core::fock::{FockState, Mode};
use winf_core::linalg;
use winf_core::scalar::{frac, int, one, Scalar};
use winf_core::w1inf::{
    build_lw, decoupling, omega_in_j_basis, parabolic_act, raise, remainder, w_w_closure, without_vacuum, AmSpace,
    Model, NoPoly, OmegaFactor, Ordering, W1Inf,
};

fn in_span(basis: &[FockState], v: &FockState) -> bool {
    let cols: Vec<&BTreeMap<_, _>> = basis.iter().map(|s| s.terms()).collect();
    linalg::express(&cols, v.terms()).is_some()
}

#[test]
fn omega_m0_is_j_m() {
    for m in 0..6 {
        let mut want = vec![int(0); m as usize + 1];
        want[0] = one();
        assert_eq!(omega_in_j_basis(m, 0), want);
        let bg = Model::betagamma(2);
        assert_eq!(bg.state(&bg.omega(m, 0)), bg.state(&bg.j(m)));
    }
}

#[test]
fn omega_shifted_derivative_relation() {
    for m in 1..6u32 {
        // ω_{m-1,1} = ∂j^{m-1} - j^m
        let mut want = vec![int(0); m as usize + 1];
        want[0] = -one();
        want[1] = one();
        assert_eq!(omega_in_j_basis(m - 1, 1), want, "m = {m}");
    }
    assert_eq!(omega_in_j_basis(0, 2), vec![one(), int(-2), one()]);
}

#[test]
fn heisenberg_current_at_rank_one() {
    let bg = Model::betagamma(1);
    let e = bg.engine();
    assert_eq!(e.circle(&bg.j(0), 1, &bg.j(0)), FockState::vacuum(bg.system()).scale(&int(-1)));
    assert_eq!(bg.j(0).weight(), 1);
}

#[test]
fn a_m_splits_off_j_m() {
    for m in 0..6 {
        assert!(AmSpace::new(m).verify(&Model::current(-1)), "m = {m}");
        assert!(AmSpace::new(m).verify(&Model::betagamma(2)), "m = {m}");
    }
}

#[test]
fn omega_02_raises_currents() {
    let model = Model::current(-2);
    for r in 1..7u32 {
        let v = model.state(&model.j(r - 1));
        let got = parabolic_act(&model, 0, 2, 1, &v).unwrap();
        assert_eq!(got, model.state(&model.j(r)).scale(&int(-(r as i64) - 1)), "r = {r}");
    }
}

#[test]
fn parabolic_step_between_determinants() {
    for n in 1..=2u32 {
        let ctx = W1Inf::new(n);
        let k: Vec<u32> = (0..=n).collect();
        let l1: Vec<u32> = (0..n).chain([n + 1]).collect();
        let d1 = ctx.construct_dij(&k, &l1, Ordering::Ascending).unwrap();
        let d0 = ctx.d0().unwrap();
        let f = parabolic_act(&ctx.abs, 1, 0, -1, &d1.state)
            .unwrap()
            .add(&parabolic_act(&ctx.abs, 0, 0, -1, &d1.state).unwrap());
        let c = int(-((n as i64 + 1) * (n as i64 + 1)));
        assert_eq!(f, d0.state.scale(&c), "n = {n}");
    }
}

#[test]
fn inductive_step_lemma_at_n1() {
    let ctx = W1Inf::new(1);
    let d = ctx.construct_dij(&[1, 2], &[1, 2], Ordering::Ascending).unwrap();
    let k1 = ctx.construct_dij(&[0, 2], &[1, 2], Ordering::Ascending).unwrap();
    assert_eq!(parabolic_act(&ctx.abs, 0, 1, -1, &d.state).unwrap(), k1.state.scale(&int(2)));
}

#[test]
fn golden_d0_projects_to_zero() {
    let ctx1 = W1Inf::new(1);
    assert!(ctx1.pi(&common::d0_n1()).is_zero());
    let ctx2 = W1Inf::new(2);
    assert!(ctx2.pi(&common::d0_n2()).is_zero());
    // no single part vanishes on its own
    assert!(!ctx2.pi(&common::d0_n2_deg6()).is_zero());
}

#[test]
fn low_currents_survive_projection() {
    let ctx = W1Inf::new(1);
    for l in 0..3 {
        let v = ctx.abs.state(&ctx.abs.j(l));
        assert!(!ctx.project(&v).is_zero(), "j{l}");
    }
}

#[test]
fn constructed_weights() {
    for (n, i, j) in [(1, vec![0, 1], vec![0, 3]), (1, vec![1, 3], vec![0, 2]), (2, vec![0, 1, 3], vec![0, 1, 2])] {
        let ctx = W1Inf::new(n);
        let d = ctx.construct_dij(&i, &j, Ordering::Ascending).unwrap();
        let want = (i.iter().sum::<u32>() + j.iter().sum::<u32>() + n + 1) as i64;
        assert_eq!(d.weight(), want);
        assert_eq!(d.state.weight().unwrap(), Some(want));
        assert!(ctx.project(&d.state).is_zero());
    }
}

#[test]
fn j2_eigenvalue_on_determinant_lifts() {
    for (n, i, j) in [
        (1u32, vec![0u32, 1], vec![0u32, 1]),
        (1, vec![0, 2], vec![1, 3]),
        (1, vec![1, 3], vec![0, 1]),
        (2, vec![0, 1, 2], vec![0, 1, 3]),
    ] {
        let ctx = W1Inf::new(n);
        let d = ctx.construct_dij(&i, &j, Ordering::Ascending).unwrap();
        let lam: i64 = -i.iter().map(|&x| (x * x.saturating_sub(1)) as i64).sum::<i64>()
            + j.iter().map(|&x| ((x + 1) * (x + 2)) as i64).sum::<i64>();
        let got = ctx.abs.engine().apply_gen_state(Mode::new(2, 2), &d.state);
        assert_eq!(got, d.state.scale(&int(lam)), "n={n} I={i:?} J={j:?}");
    }
}

#[test]
fn constructed_d0_is_singular() {
    for n in 1..=2u32 {
        let ctx = W1Inf::new(n);
        let d0 = ctx.d0().unwrap();
        let depth = ((n + 1) * (n + 1)) as i64;
        for l in 0..=2u32 {
            for k in (l as i64 + 1)..=(l as i64 + depth) {
                assert!(ctx.abs.engine().apply_gen_state(Mode::new(l, k), &d0.state).is_zero(), "n={n} J{l}({k})");
            }
        }
    }
}

#[test]
fn express_as_nopoly_examples() {
    let ctx = W1Inf::new(1);
    for (a, b) in [(0, 0), (1, 2), (3, 0)] {
        let v = ctx.free.state(&ctx.free.omega(a, b));
        let p = ctx.express_as_nopoly(&v, 2, Ordering::Ascending).unwrap();
        assert_eq!(p, NoPoly::monomial(vec![OmegaFactor::omega(a, b)], one()));
    }
    let zero = FockState::zero(ctx.free.system());
    assert!(ctx.express_as_nopoly(&zero, 2, Ordering::Ascending).unwrap().is_zero());
    let q = NoPoly::monomial(vec![OmegaFactor::omega(0, 0), OmegaFactor::omega(1, 1)], one());
    let back = ctx.express_as_nopoly(&ctx.pi(&q), 4, Ordering::Ascending).unwrap();
    assert_eq!(back.degree_part(2), q);
    assert_eq!(ctx.pi(&back), ctx.pi(&q));
}

#[test]
fn remainder_is_independent_of_ordering() {
    for (n, i, j) in [(1u32, vec![0u32, 1], vec![0u32, 1]), (1, vec![0, 1], vec![0, 3]), (2, vec![0, 1, 2], vec![0, 1, 2])] {
        let ctx = W1Inf::new(n);
        let asc = ctx.construct_dij(&i, &j, Ordering::Ascending).unwrap();
        let desc = ctx.construct_dij(&i, &j, Ordering::Descending).unwrap();
        assert_eq!(asc.state, desc.state, "uniqueness n={n}");
        assert_eq!(remainder(&asc).unwrap().value, remainder(&desc).unwrap().value);
        let s = asc.weight() - 1;
        let diff = ctx.abstract_state(&asc.part(1)).sub(&ctx.abstract_state(&desc.part(1)));
        let e = ctx.abs.engine();
        let d2: Vec<FockState> =
            (0..=(s - 2) as u32).map(|a| ctx.abs.state(&e.deriv(2, &ctx.abs.omega(a, s as u32 - 2 - a)))).collect();
        assert!(in_span(&d2, &diff), "D2 difference leaves the second derivatives, n={n}");
    }
}

#[test]
fn remainder_kills_second_derivatives() {
    let ctx = W1Inf::new(1);
    let d0 = ctx.d0().unwrap();
    let r = remainder(&d0).unwrap();
    let am = AmSpace::new(r.m);
    let coords = am.coordinates(&[(one(), 0, 1, 2), (frac(3, 2), 1, 0, 2)]);
    assert_eq!(am.pr(&coords), int(0));
}

#[test]
fn total_derivative_lemma() {
    let model = Model::current(-1);
    let e = model.engine();
    for j in 0..=3u32 {
        for k in 0..=3u32 {
            for l in 0..=3u32 {
                for m in 0..=3u32 {
                    let s = j + k + l + m;
                    if s == 0 {
                        continue;
                    }
                    let basis: Vec<FockState> =
                        (0..s).map(|a| model.state(&e.deriv(1, &model.omega(a, s - 1 - a)))).collect();
                    let a = model.omega(j, k);
                    let b = model.omega(l, m);
                    for (n, db) in [(0, b.clone()), (1, e.deriv(1, &b)), (2, e.deriv(2, &b))] {
                        let v = without_vacuum(&e.circle(&a, n, &db));
                        assert!(in_span(&basis, &v), "Ω{j}{k} ∘{n} ∂^{n} Ω{l}{m}");
                    }
                }
            }
        }
    }
}

#[test]
fn j2_circ2_on_derivative_currents() {
    let model = Model::current(-1);
    let e = model.engine();
    for s in 2..=10u32 {
        let si = s as i64;
        let got = e.circle(&model.j(2), 2, &e.deriv(1, &model.j(s - 1)));
        let want = model
            .state(&model.j(s))
            .scale(&int(-(2 * si + 2)))
            .sub(&model.state(&e.deriv(1, &model.j(s - 1))).scale(&int(si * si - 3 * si - 4)));
        assert_eq!(got, want, "s = {s}");
    }
}

#[test]
fn zeroth_products_of_currents() {
    let model = Model::current(-1);
    let e = model.engine();
    for k in 0..=4u32 {
        for l in 0..=4u32 {
            let got = e.circle(&model.j(k), 0, &model.j(l));
            let mut want = FockState::zero(model.system());
            for i in 0..k {
                let sign = if i % 2 == 0 { -one() } else { one() };
                want = want.add_scaled(&model.state(&e.deriv(1, &model.omega(k + l - i - 1, i))), &sign);
            }
            assert_eq!(got, want, "J{k} ∘0 J{l}");
        }
    }
}

#[test]
fn decoupling_polynomial_stays_below_l() {
    for n in 1..=2u32 {
        let ctx = W1Inf::new(n);
        let base = decoupling(&ctx, &ctx.d0().unwrap()).unwrap();
        let top = base.p.terms().keys().flatten().map(|f| f.a + f.b + 1).max().unwrap();
        assert!(top <= base.l, "n={n}");
        assert_eq!(ctx.pi(&base.p), ctx.free.state(&ctx.free.j(base.l)));
        let rhs = base.relation.rhs();
        assert!(rhs.terms().keys().all(|w| w.iter().all(|x| x.gen < base.l)));
    }
}

#[test]
fn raised_relations_reverify() {
    let ctx = W1Inf::new(1);
    let base = decoupling(&ctx, &ctx.d0().unwrap()).unwrap();
    let rels = raise(&ctx, &base, 6).unwrap();
    assert_eq!(rels.keys().copied().collect::<Vec<_>>(), vec![3, 4, 5, 6]);
    for (r, rel) in &rels {
        assert!(rel.verify(&ctx), "j{r}");
        assert!(rel.verify(&ctx), "j{r} again");
        assert!(rel.rhs().terms().keys().all(|w| w.iter().all(|x| x.gen < 3)), "j{r} uses a high current");
    }
}

#[test]
fn virasoro_central_charges() {
    for (n, c) in [(1u32, int(-1)), (2, frac(-3, 2))] {
        let model = Model::betagamma(n);
        let (l, _, rep) = build_lw(&model, n);
        assert!(rep.passed());
        assert_eq!(model.engine().circle(&l, 3, &l), FockState::vacuum(model.system()).scale(&c));
    }
}

#[test]
fn w_w_closes_on_virasoro_at_n1() {
    let closure = w_w_closure(&Model::betagamma(1), 1);
    for (k, sol) in &closure {
        assert!(sol.is_some(), "W ∘{k} W leaves the span");
    }
    let top = closure.iter().find(|(k, _)| *k == 5).unwrap().1.as_ref().unwrap();
    assert_eq!(top.len(), 1);
    let _: &Scalar = &top[0].1;
}
