use std::collections::BTreeMap;

use dashmap::DashMap;

use crate::fock::{Engine, FieldExpr, FockState, System};
use crate::linalg;
use crate::scalar::{int, one, Scalar};

/// Where the generators `J^l` and `Ω_{a,b}` live.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Realization {
    /// The vacuum module `M_c` of the current algebra.
    Abstract { c: i64 },
    /// `J^l ↦ Σ_i :γ^i ∂^l β^i:` in `n` copies of βγ (central charge `-n`).
    BetaGamma { n: u32 },
    /// `J^l ↦ Σ_i :c^i ∂^l b^i:` in `n` copies of bc (central charge `+n`).
    Bc { n: u32 },
}

impl Realization {
    pub fn system(&self) -> System {
        match self {
            Realization::Abstract { c } => System::current(*c),
            Realization::BetaGamma { n } => System::BetaGamma { rank: *n },
            Realization::Bc { n } => System::Bc { rank: *n },
        }
    }
}

/// An engine together with the generator fields of one realization.
pub struct Model {
    pub realization: Realization,
    engine: Engine,
    omegas: DashMap<(u32, u32), FieldExpr>,
}

impl Model {
    pub fn new(realization: Realization) -> Self {
        Self { engine: Engine::new(realization.system()), realization, omegas: DashMap::new() }
    }

    pub fn current(c: i64) -> Self {
        Self::new(Realization::Abstract { c })
    }

    pub fn betagamma(n: u32) -> Self {
        Self::new(Realization::BetaGamma { n })
    }

    pub fn bc(n: u32) -> Self {
        Self::new(Realization::Bc { n })
    }

    pub fn engine(&self) -> &Engine {
        &self.engine
    }

    pub fn system(&self) -> &System {
        self.engine.system()
    }

    pub fn j(&self, l: u32) -> FieldExpr {
        let e = &self.engine;
        match self.realization {
            Realization::Abstract { .. } => e.gen(l),
            Realization::BetaGamma { n } | Realization::Bc { n } => {
                let terms = (0..n).map(|i| (one(), e.wick(&e.gen(n + i), &e.deriv(l, &e.gen(i))))).collect();
                e.sum(terms)
            }
        }
    }

    pub fn omega(&self, a: u32, b: u32) -> FieldExpr {
        if let Some(f) = self.omegas.get(&(a, b)) {
            return f.clone();
        }
        let e = &self.engine;
        let f = match self.realization {
            Realization::BetaGamma { n } => {
                let terms = (0..n).map(|i| (one(), e.wick(&e.deriv(a, &e.gen(i)), &e.deriv(b, &e.gen(n + i))))).collect();
                e.sum(terms)
            }
            _ => {
                let m = a + b;
                let c = omega_in_j_basis(a, b);
                let terms = (0..=m).map(|i| (c[i as usize].clone(), e.deriv(i, &self.j(m - i)))).collect();
                e.sum(terms)
            }
        };
        self.omegas.insert((a, b), f.clone());
        f
    }

    pub fn state(&self, f: &FieldExpr) -> FockState {
        self.engine.state_of(f)
    }
}

/// Coefficients `(c_0, …, c_m)` with `ω_{a,b} = Σ_i c_i ∂^i j^{m-i}`, found by
/// a linear solve in one copy of βγ.
pub fn omega_in_j_basis(a: u32, b: u32) -> Vec<Scalar> {
    let m = a + b;
    let bg = Model::betagamma(1);
    let target = bg.state(&bg.omega(a, b));
    let basis: Vec<FockState> = (0..=m).map(|i| bg.state(&bg.engine.deriv(i, &bg.j(m - i)))).collect();
    let cols: Vec<&BTreeMap<_, _>> = basis.iter().map(|s| s.terms()).collect();
    linalg::express(&cols, target.terms()).expect("the ∂^i j^{m-i} span A_m")
}

/// `A_m = span{Ω_{a,b} : a + b = m} = span{∂^i J^{m-i}}`.
#[derive(Clone, Debug)]
pub struct AmSpace {
    pub m: u32,
}

impl AmSpace {
    pub fn new(m: u32) -> Self {
        Self { m }
    }

    pub fn dim(&self) -> usize {
        self.m as usize + 1
    }

    /// Coordinates of `Σ coeff · ∂^d Ω_{a,b}` in the basis `∂^i J^{m-i}`, keyed by `i`.
    pub fn coordinates(&self, items: &[(Scalar, u32, u32, u32)]) -> BTreeMap<u32, Scalar> {
        let mut out: BTreeMap<u32, Scalar> = BTreeMap::new();
        for (c, a, b, d) in items {
            let cs = omega_in_j_basis(*a, *b);
            for (i, x) in cs.iter().enumerate() {
                *out.entry(i as u32 + d).or_insert_with(|| int(0)) += x * c;
            }
        }
        out.retain(|_, v| !num_traits::Zero::is_zero(v));
        out
    }

    /// Projection onto `⟨J^m⟩` along `∂A_{m-1}`.
    pub fn pr(&self, coords: &BTreeMap<u32, Scalar>) -> Scalar {
        coords.get(&0).cloned().unwrap_or_else(|| int(0))
    }

    /// Checks `dim A_m = m + 1` and `A_m = ∂A_{m-1} ⊕ ⟨J^m⟩` inside the given model.
    pub fn verify(&self, model: &Model) -> bool {
        let m = self.m;
        let omegas: Vec<FockState> = (0..=m).map(|a| model.state(&model.omega(a, m - a))).collect();
        let cols: Vec<_> = omegas.iter().map(|s| s.terms()).collect();
        if linalg::rank(&cols) != self.dim() {
            return false;
        }
        let e = model.engine();
        let mut split: Vec<FockState> = (0..m).map(|a| model.state(&e.deriv(1, &model.omega(a, m - 1 - a)))).collect();
        split.push(model.state(&model.j(m)));
        let cols: Vec<_> = split.iter().map(|s| s.terms()).collect();
        linalg::rank(&cols) == self.dim()
    }
}
