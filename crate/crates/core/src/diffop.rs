//! Differential operators `Σ c t^a ∂^l` on `C[t, t^-1]` and the central
//! 2-cocycle that defines the universal central extension.
//!
//! The monomial `t^a ∂^l` is keyed by `(a, l)`. The alternate basis
//! `J^l_k = -t^{l+k} ∂^l` is available through [`DiffOp::j_basis`].

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::scalar::{binomial, factorial, falling, int, Scalar};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DiffOp {
    terms: BTreeMap<(i64, u32), Scalar>,
}

impl DiffOp {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(a: i64, l: u32, c: Scalar) -> Self {
        let mut d = Self::zero();
        d.add_term(a, l, c);
        d
    }

    /// `J^l_k = -t^{l+k} ∂^l`.
    pub fn j_basis(l: u32, k: i64) -> Self {
        Self::monomial(l as i64 + k, l, int(-1))
    }

    pub fn add_term(&mut self, a: i64, l: u32, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((a, l)).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(a, l));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, u32, &Scalar)> {
        self.terms.iter().map(|(&(a, l), c)| (a, l, c))
    }

    pub fn coeff(&self, a: i64, l: u32) -> Scalar {
        self.terms.get(&(a, l)).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Coefficients in the `J^l_k` basis, keyed by `(l, k)`.
    pub fn to_j_basis(&self) -> BTreeMap<(u32, i64), Scalar> {
        self.terms
            .iter()
            .map(|(&(a, l), c)| ((l, a - l as i64), -c.clone()))
            .collect()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero();
        for (a, l, x) in self.terms() {
            out.add_term(a, l, x * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, l, x) in other.terms() {
            out.add_term(a, l, x.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&int(-1)))
    }

    /// Operator composition `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, l, x) in self.terms() {
            for (b, n, y) in other.terms() {
                // ∂^l t^b = Σ_i C(l,i) (b)_i t^{b-i} ∂^{l-i}
                for i in 0..=l {
                    let c = binomial(l as i64, i) * falling(b, i);
                    if c.is_zero() {
                        continue;
                    }
                    out.add_term(a + b - i as i64, l + n - i, c * x * y);
                }
            }
        }
        out
    }

    pub fn bracket(&self, other: &Self) -> Self {
        self.compose(other).sub(&other.compose(self))
    }

    /// Action on the Laurent monomial `t^k`, returned as `{exponent: coeff}`.
    pub fn apply_monomial(&self, k: i64) -> BTreeMap<i64, Scalar> {
        let mut out: BTreeMap<i64, Scalar> = BTreeMap::new();
        for (a, l, x) in self.terms() {
            let c = falling(k, l);
            if c.is_zero() {
                continue;
            }
            *out.entry(a + k - l as i64).or_insert_with(Scalar::zero) += c * x;
        }
        out.retain(|_, v| !v.is_zero());
        out
    }
}

/// `Ψ(f(t)∂^m, g(t)∂^n) = m! n! / (m+n+1)! · Res_t f^{(n+1)} g^{(m)}`, extended bilinearly.
pub fn cocycle(f: &DiffOp, g: &DiffOp) -> Scalar {
    let mut acc = Scalar::zero();
    for (a, m, x) in f.terms() {
        for (b, n, y) in g.terms() {
            acc += cocycle_monomial(a, m, b, n) * x * y;
        }
    }
    acc
}

pub fn cocycle_monomial(a: i64, m: u32, b: i64, n: u32) -> Scalar {
    if a + b != (m + n) as i64 {
        return Scalar::zero();
    }
    let r = falling(a, n + 1) * falling(b, m);
    if r.is_zero() {
        return r;
    }
    r * factorial(m as u64) * factorial(n as u64) / factorial((m + n + 1) as u64)
}

/// Bracket in the central extension: operator part and the multiple of the
/// central element `C`, which acts as the scalar `c`.
pub fn central_bracket(f: &DiffOp, g: &DiffOp, c: &Scalar) -> (DiffOp, Scalar) {
    (f.bracket(g), cocycle(f, g) * c)
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (a, l, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            if a != 0 {
                write!(f, "t^{a}")?;
            }
            if l != 0 {
                write!(f, "∂^{l}")?;
            }
        }
        Ok(())
    }
}
