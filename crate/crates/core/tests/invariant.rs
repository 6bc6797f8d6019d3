use proptest::prelude::*;

use winf_core::invariant::{
    det_dij, det_unchecked, express_classical, q_gen, symbol, symbol_current, ClassicalState, InvPoly, QMono, Symbol,
    XVar,
};
use winf_core::scalar::{int, one};
use winf_core::w1inf::{build_l, build_w, Model, NoPoly, Ordering, W1Inf};

fn q(a: u32, b: u32) -> InvPoly {
    InvPoly::var(a, b)
}

#[test]
fn quadratic_generators() {
    let mut want = ClassicalState::zero();
    want.add_term(vec![XVar { primed: false, i: 0, k: 0 }, XVar { primed: true, i: 0, k: 0 }], one());
    assert_eq!(q_gen(0, 0, 1), want);
    for n in 1..5 {
        assert_eq!(q_gen(2, 3, n).terms().len(), n as usize);
    }
}

#[test]
fn determinant_examples() {
    let d = det_dij(&[0, 1], &[0, 1]).unwrap();
    let want = q(0, 0).mul(&q(1, 1)).add(&q(0, 1).mul(&q(1, 0)).scale(&int(-1)));
    assert_eq!(d, want);
    assert_eq!(det_dij(&[0], &[0]).unwrap(), q(0, 0));
    let rows = [0, 2, 3];
    let swapped = [2, 0, 3];
    let cols = [1, 2, 4];
    assert_eq!(det_unchecked(&swapped, &cols), det_unchecked(&rows, &cols).scale(&int(-1)));
    assert!(det_dij(&[1, 0], &[0, 1]).is_err());
    assert!(det_dij(&[0, 1], &[0]).is_err());
}

#[test]
fn second_fundamental_theorem_at_desk_scale() {
    let lists = |len: usize| -> Vec<Vec<u32>> {
        (0u32..16)
            .filter(|m| m.count_ones() as usize == len)
            .map(|m| (0..4).filter(|b| m & (1 << b) != 0).collect())
            .collect()
    };
    for n in 1..=2u32 {
        for i in lists(n as usize + 1) {
            for j in lists(n as usize + 1) {
                assert!(det_dij(&i, &j).unwrap().substitute(n).is_zero(), "n={n} I={i:?} J={j:?}");
            }
        }
        // a smaller minor survives
        let i: Vec<u32> = (0..n).collect();
        assert!(!det_dij(&i, &i).unwrap().substitute(n).is_zero());
    }
}

#[test]
fn symbol_examples() {
    let ctx = W1Inf::new(1);
    let d0 = ctx.d0().unwrap();
    assert_eq!(symbol_current(&d0.state, 4).unwrap(), det_dij(&[0, 1], &[0, 1]).unwrap());
    let m = &ctx.abs;
    let e = m.engine();
    for (a, b, c, d) in [(0, 0, 1, 1), (2, 0, 0, 3), (1, 2, 1, 2)] {
        let v = m.state(&e.wick(&m.omega(a, b), &m.omega(c, d)));
        assert_eq!(symbol_current(&v, 4).unwrap(), q(a, b).mul(&q(c, d)));
    }
    for (a, b) in [(0, 0), (1, 3), (2, 1)] {
        let v = m.state(&e.deriv(1, &m.omega(a, b)));
        assert_eq!(symbol_current(&v, 2).unwrap(), q(a + 1, b).add(&q(a, b + 1)));
        assert_eq!(symbol_current(&v, 2).unwrap(), q(a, b).derivative());
    }
    assert!(symbol_current(&d0.state, 2).is_err());
}

#[test]
fn free_field_symbols() {
    let ctx = W1Inf::new(2);
    let v = ctx.free.state(&ctx.free.omega(1, 2));
    match symbol(&v, 2).unwrap() {
        Symbol::Classical(s) => assert_eq!(s, q_gen(1, 2, 2)),
        Symbol::Inv(_) => panic!("expected a classical symbol"),
    }
    assert!(symbol(&Model::bc(1).state(&Model::bc(1).j(0)), 2).is_err());
    assert_eq!(express_classical(&q_gen(1, 2, 2), 2).unwrap(), q(1, 2));
}

#[test]
fn invariant_states_are_polynomials_in_omegas() {
    for n in 1..=2u32 {
        let ctx = W1Inf::new(n);
        for f in [build_l(&ctx.free, n), build_w(&ctx.free, n)] {
            let v = ctx.free.state(&f);
            let p = ctx.express_as_nopoly(&v, 6, Ordering::Ascending).unwrap();
            assert_eq!(ctx.pi(&p), v);
        }
    }
}

fn omega_list() -> impl Strategy<Value = Vec<(u32, u32)>> {
    prop::collection::vec((0u32..3, 0u32..3), 1..3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn symbol_is_multiplicative(xs in omega_list(), ys in omega_list()) {
        let m = Model::current(-1);
        let mono = |fs: &[(u32, u32)]| {
            let p = NoPoly::monomial(fs.iter().map(|&(a, b)| winf_core::w1inf::OmegaFactor::omega(a, b)).collect(), one());
            p.elaborate(&m)
        };
        let (a, b) = (mono(&xs), mono(&ys));
        let (va, vb) = (m.state(&a), m.state(&b));
        let (da, db) = (va.top_degree().unwrap(), vb.top_degree().unwrap());
        let ab = m.state(&m.engine().wick(&a, &b));
        let lhs = symbol_current(&ab, da + db).unwrap();
        let rhs = symbol_current(&va, da).unwrap().mul(&symbol_current(&vb, db).unwrap());
        prop_assert_eq!(lhs, rhs);
        let mut unit = InvPoly::zero();
        unit.add_term(QMono(vec![]), one());
        let want = xs.iter().chain(&ys).fold(unit, |acc, &(a, b)| acc.mul(&q(a, b)));
        prop_assert_eq!(symbol_current(&ab, da + db).unwrap(), want);
    }
}
