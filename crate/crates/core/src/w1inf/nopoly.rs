use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::fock::{FieldExpr, FockState};
use crate::invariant::InvPoly;
use crate::scalar::{one, Scalar};

use super::model::Model;

/// The factor `∂^deriv Ω_{a,b}`; `J^l` is `Ω_{l,0}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OmegaFactor {
    pub a: u32,
    pub b: u32,
    pub deriv: u32,
}

impl OmegaFactor {
    pub fn omega(a: u32, b: u32) -> Self {
        Self { a, b, deriv: 0 }
    }

    pub fn j(l: u32, deriv: u32) -> Self {
        Self { a: l, b: 0, deriv }
    }

    pub fn weight(&self) -> i64 {
        (self.a + self.b + self.deriv + 1) as i64
    }
}

/// A combination of right-nested normally ordered monomials `:f_1 f_2 … f_k:`.
/// The factor order is the nesting order and is significant.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NoPoly {
    terms: BTreeMap<Vec<OmegaFactor>, Scalar>,
}

/// How a commutative monomial is turned into a Wick monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ordering {
    /// Factors sorted ascending by `(a, b)`.
    Ascending,
    /// Factors sorted descending by `(a, b)`.
    Descending,
}

impl NoPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(factors: Vec<OmegaFactor>, c: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(factors, c);
        p
    }

    pub fn add_term(&mut self, factors: Vec<OmegaFactor>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(factors.clone()).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&factors);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Vec<OmegaFactor>, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(other, &one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(other, &-one())
    }

    pub fn add_scaled(&self, other: &Self, c: &Scalar) -> Self {
        let mut out = self.clone();
        for (m, x) in &other.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::zero().add_scaled(self, c)
    }

    /// The part made of monomials with exactly `k` factors (filtration degree `2k`).
    pub fn degree_part(&self, k: usize) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.len() == k).map(|(m, c)| (m.clone(), c.clone())).collect();
        Self { terms }
    }

    pub fn max_factors(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn max_factor_weight(&self) -> i64 {
        self.terms.keys().flat_map(|m| m.iter().map(OmegaFactor::weight)).max().unwrap_or(0)
    }

    /// A normal ordering of a commutative polynomial in the `Q_{a,b}`.
    pub fn normal_ordering(p: &InvPoly, order: Ordering) -> Self {
        let mut out = Self::zero();
        for (m, c) in p.terms() {
            let mut f: Vec<OmegaFactor> = m.0.iter().map(|&(a, b)| OmegaFactor::omega(a, b)).collect();
            f.sort();
            if order == Ordering::Descending {
                f.reverse();
            }
            out.add_term(f, c.clone());
        }
        out
    }

    pub fn elaborate(&self, model: &Model) -> FieldExpr {
        let e = model.engine();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let factors: Vec<FieldExpr> = m.iter().map(|f| e.deriv(f.deriv, &model.omega(f.a, f.b))).collect();
                (c.clone(), e.wick_all(&factors))
            })
            .collect();
        e.sum(terms)
    }

    pub fn state(&self, model: &Model) -> FockState {
        let parts: Vec<(&Vec<OmegaFactor>, &Scalar)> = self.terms.iter().collect();
        let e = model.engine();
        let states = crate::par::map(&parts, |(m, _)| {
            let factors: Vec<FieldExpr> = m.iter().map(|f| e.deriv(f.deriv, &model.omega(f.a, f.b))).collect();
            e.state_of(&e.wick_all(&factors))
        });
        let mut out = FockState::zero(model.system());
        for ((_, c), s) in parts.iter().zip(states) {
            out = out.add_scaled(&s, c);
        }
        out
    }
}

impl fmt::Display for NoPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            if m.len() > 1 {
                write!(f, ":")?;
            }
            for (k, x) in m.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                if x.deriv > 0 {
                    write!(f, "∂^{}", x.deriv)?;
                }
                write!(f, "Ω{},{}", x.a, x.b)?;
            }
            if m.len() > 1 {
                write!(f, ":")?;
            }
        }
        Ok(())
    }
}
