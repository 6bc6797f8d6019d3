use proptest::prelude::*;

use winf_core::fock::identities::{check_triple, derivation_defect, random_field, seeded_rng, skew_symmetry};
use winf_core::fock::{Engine, FieldExpr, FockState, System};
use winf_core::scalar::int;
use winf_core::w1inf::Model;

fn system(k: usize) -> System {
    [System::current(-2), System::BetaGamma { rank: 1 }, System::BetaGamma { rank: 2 }, System::Bc { rank: 1 }][k].clone()
}

fn pair(eng: &Engine, seed: u64, wa: i64, wb: i64) -> (FieldExpr, FieldExpr) {
    let mut rng = seeded_rng(seed);
    let lo = if matches!(eng.system(), System::Current { .. }) { 1 } else { 0 };
    (random_field(eng, &mut rng, wa.max(lo)), random_field(eng, &mut rng, wb.max(lo)))
}

fn degree(v: &FockState) -> u32 {
    v.top_degree().unwrap_or(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn quantum_commutativity(k in 0usize..4, seed in any::<u64>(), wa in 0i64..4, wb in 0i64..4) {
        let eng = Engine::new(system(k));
        let (a, b) = pair(&eng, seed, wa, wb);
        let bound = a.weight() + b.weight();
        for n in bound..bound + 3 {
            prop_assert!(eng.circle(&a, n, &b).is_zero());
        }
    }

    #[test]
    fn weights_add(k in 0usize..4, seed in any::<u64>(), wa in 0i64..4, wb in 0i64..4, n in -3i64..4) {
        let eng = Engine::new(system(k));
        let (a, b) = pair(&eng, seed, wa, wb);
        let v = eng.circle(&a, n, &b);
        if !v.is_zero() {
            prop_assert_eq!(v.weight().unwrap(), Some(a.weight() + b.weight() - n - 1));
        }
    }

    #[test]
    fn derivative_rule(k in 0usize..4, seed in any::<u64>(), wa in 0i64..3, wb in 0i64..3, n in -3i64..4) {
        let eng = Engine::new(system(k));
        let (a, b) = pair(&eng, seed, wa, wb);
        let lhs = eng.circle(&eng.deriv(1, &a), n, &b);
        prop_assert_eq!(lhs, eng.circle(&a, n - 1, &b).scale(&int(-n)));
    }

    #[test]
    fn filtration_bounds(k in 0usize..4, seed in any::<u64>(), wa in 0i64..4, wb in 0i64..4, n in -3i64..4) {
        let eng = Engine::new(system(k));
        let (a, b) = pair(&eng, seed, wa, wb);
        let v = eng.circle(&a, n, &b);
        if !v.is_zero() {
            let bound = degree(&eng.state_of(&a)) + degree(&eng.state_of(&b));
            if n < 0 {
                prop_assert!(degree(&v) <= bound);
            } else {
                prop_assert!(degree(&v) < bound);
            }
        }
    }

    #[test]
    fn wick_is_minus_first_product(k in 0usize..4, seed in any::<u64>(), wa in 0i64..4, wb in 0i64..4) {
        let eng = Engine::new(system(k));
        let (a, b) = pair(&eng, seed, wa, wb);
        prop_assert_eq!(eng.state_of(&eng.wick(&a, &b)), eng.circle(&a, -1, &b));
    }

    #[test]
    fn unit_laws(k in 0usize..4, seed in any::<u64>(), wa in 0i64..4, n in -1i64..4) {
        let eng = Engine::new(system(k));
        let (a, _) = pair(&eng, seed, wa, 0);
        let one = eng.vacuum_field();
        let want = if n == -1 { eng.state_of(&a) } else { FockState::zero(eng.system()) };
        prop_assert_eq!(eng.circle(&one, n, &a), want.clone());
        prop_assert_eq!(eng.circle(&a, n, &one), want);
    }

    #[test]
    fn skew_symmetry_is_trivial_on_the_diagonal(k in 0usize..3, seed in any::<u64>(), wa in 0i64..4) {
        let eng = Engine::new(system(k));
        let (a, _) = pair(&eng, seed, wa, 0);
        prop_assert!(skew_symmetry(&eng, &a, &a).is_none());
    }

    #[test]
    fn betagamma_triples_satisfy_all_identities(rank in 1u32..3, seed in any::<u64>(), ws in prop::array::uniform3(0i64..5), n in 1i64..4) {
        let eng = Engine::new(System::BetaGamma { rank });
        let mut rng = seeded_rng(seed);
        let a = random_field(&eng, &mut rng, ws[0]);
        let b = random_field(&eng, &mut rng, ws[1]);
        let c = random_field(&eng, &mut rng, ws[2]);
        prop_assert!(check_triple(&eng, &a, &b, &c, n).is_ok());
    }
}

#[test]
fn derivation_defect_for_j2_on_omegas() {
    let model = Model::current(-1);
    for (a, b) in [(0, 0), (1, 0), (0, 2), (1, 1)] {
        let om = model.omega(a, b);
        assert!(derivation_defect(model.engine(), &model.j(2), &om, &om, 2).is_none(), "Ω{a}{b}");
    }
}
