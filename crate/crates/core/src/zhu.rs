//! Zhu's algebra of the current algebra: the `*` and `∘` products, the
//! reduction of states to polynomials in `a^l = π(J^l)`, leading terms
//! through the `C_2` quotient, and the relation cutting out the variety of
//! `W(1+∞)` at central charge `-n`.
//!
//! The reduction uses two consequences of the residue formulas, with
//! `m = wt(a)`:
//!
//! * `a ∘ |0⟩ = ∂a + m a ∈ O`, hence `∂^k a ≡ (-1)^k m (m+1) ⋯ (m+k-1) a`;
//! * `a * v = Σ_{j≥0} C(m,j) a(j-1) v`, hence
//!   `π(a(-1) v) = π(a) π(v) - Σ_{j≥1} C(m,j) π(a(j-1) v)`.
//!
//! The second rule strictly lowers weight, so the recursion terminates.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fock::{FieldExpr, FockState, Mode, System, Word};
use crate::scalar::{binomial, factorial, falling, one, rising, sign, Scalar};
use crate::w1inf::{decoupling, eliminate, raise, remainder, Ordering as NoOrdering, Relation, W1Inf};

/// A monomial in the `a^l`, variables sorted descending. Ordered
/// degree-lexicographically with `a^l < a^{l+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZMono(pub Vec<u32>);

impl ZMono {
    pub fn new(mut v: Vec<u32>) -> Self {
        v.sort_by(|a, b| b.cmp(a));
        ZMono(v)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn max_var(&self) -> Option<u32> {
        self.0.first().copied()
    }
}

impl Ord for ZMono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ZMono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ZMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut vars = self.0.clone();
        vars.reverse();
        let mut i = 0;
        let mut first = true;
        while i < vars.len() {
            let v = vars[i];
            let e = vars[i..].iter().take_while(|&&x| x == v).count();
            if !first {
                write!(f, "·")?;
            }
            first = false;
            if e == 1 {
                write!(f, "a{v}")?;
            } else {
                write!(f, "(a{v})^{e}")?;
            }
            i += e;
        }
        Ok(())
    }
}

/// Polynomial in the commuting variables `a^l`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ZhuPoly {
    terms: BTreeMap<ZMono, Scalar>,
}

impl ZhuPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(ZMono(Vec::new()), c)
    }

    pub fn var(l: u32) -> Self {
        Self::monomial(ZMono(vec![l]), one())
    }

    pub fn monomial(m: ZMono, c: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: ZMono, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> &BTreeMap<ZMono, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_scaled(&self, other: &Self, c: &Scalar) -> Self {
        let mut out = self.clone();
        for (m, x) in &other.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(other, &one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(other, &-one())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::zero().add_scaled(self, c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m, x) in &self.terms {
            for (n, y) in &other.terms {
                let mut v = m.0.clone();
                v.extend_from_slice(&n.0);
                out.add_term(ZMono::new(v), x * y);
            }
        }
        out
    }

    /// Degree-lex leading monomial with its coefficient.
    pub fn leading(&self) -> Option<(&ZMono, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn max_var(&self) -> Option<u32> {
        self.terms.keys().filter_map(ZMono::max_var).max()
    }

    /// Substitutes `a^r ↦ q` everywhere.
    pub fn substitute(&self, r: u32, q: &ZhuPoly) -> ZhuPoly {
        let mut out = ZhuPoly::zero();
        for (m, c) in &self.terms {
            let mut acc = ZhuPoly::constant(c.clone());
            for &v in &m.0 {
                acc = if v == r { acc.mul(q) } else { acc.mul(&ZhuPoly::var(v)) };
            }
            out = out.add(&acc);
        }
        out
    }
}

impl fmt::Display for ZhuPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c < &Scalar::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "\u{2212}")?,
                (0, false) => {}
                (_, true) => write!(f, " \u{2212} ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.0.is_empty() {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag}·{m}")?;
            }
        }
        Ok(())
    }
}

/// Zhu-algebra computations on the vacuum module of the current algebra.
pub struct Zhu<'a> {
    engine: &'a crate::fock::Engine,
    memo: DashMap<Word, Arc<ZhuPoly>>,
}

fn homogeneous_weight(u: &FockState) -> Result<i64> {
    Ok(u.weight()?.unwrap_or(0))
}

impl<'a> Zhu<'a> {
    pub fn new(engine: &'a crate::fock::Engine) -> Result<Self> {
        if !matches!(engine.system(), System::Current { .. }) {
            return Err(Error::SystemMismatch("Zhu reduction is implemented for the current algebra".into()));
        }
        Ok(Self { engine, memo: DashMap::new() })
    }

    fn product(&self, u: &FockState, v: &FockState, shift: i64) -> Result<FockState> {
        let m = homogeneous_weight(u)?;
        let f = FieldExpr::from_state(self.engine.system(), u.terms().clone());
        let mut out = FockState::zero(self.engine.system());
        for j in 0..=m.max(0) {
            let c = binomial(m, j as u32);
            out = out.add_scaled(&self.engine.apply_mode(&f, j - shift, v)?, &c);
        }
        Ok(out)
    }

    /// `u * v = Σ_j C(m,j) u(j-1) v`, `m = wt(u)`.
    pub fn star(&self, u: &FockState, v: &FockState) -> Result<FockState> {
        self.product(u, v, 1)
    }

    /// `u ∘ v = Σ_j C(m,j) u(j-2) v`.
    pub fn circ(&self, u: &FockState, v: &FockState) -> Result<FockState> {
        self.product(u, v, 2)
    }

    pub fn reduce(&self, v: &FockState) -> ZhuPoly {
        let mut out = ZhuPoly::zero();
        for (w, c) in v.terms() {
            out = out.add_scaled(&self.reduce_word(w), c);
        }
        out
    }

    fn reduce_word(&self, w: &[Mode]) -> Arc<ZhuPoly> {
        if let Some(p) = self.memo.get(w) {
            return p.clone();
        }
        let p = Arc::new(self.compute_word(w));
        self.memo.insert(Word::from_slice(w), p.clone());
        p
    }

    fn compute_word(&self, w: &[Mode]) -> ZhuPoly {
        let Some((&x, rest)) = w.split_first() else {
            return ZhuPoly::constant(one());
        };
        // x = a(-1) with a = (1/i!) ∂^i J^l of weight m = l + 1 + i
        let (l, i) = (x.gen, (-1 - x.m) as u32);
        let m = (l + 1 + i) as i64;
        let inv = one() / factorial(i as u64);
        let pa = ZhuPoly::var(l).scale(&(sign(i as i64) * rising(l as i64 + 1, i) * &inv));
        let mut out = pa.mul(&self.reduce_word(rest));
        for j in 1..=m {
            // a(j-1) = (1/i!) (-1)^i (j-1)_i J^l(j-1-i)
            let c = sign(i as i64) * falling(j - 1, i) * &inv;
            if c.is_zero() {
                continue;
            }
            let c = c * binomial(m, j as u32);
            let img = self.engine.apply_gen(Mode::new(l, j - 1 - i as i64), rest);
            for (u, d) in img.iter() {
                out = out.add_scaled(&self.reduce_word(u), &-(d * &c));
            }
        }
        out
    }
}

/// Leading term through the `C_2` quotient: keep the top-weight words built
/// only from modes `J^l(-1)`, map them to `∏ a^l`, take the degree-lex leader.
pub fn leading_term(v: &FockState) -> Option<(ZMono, Scalar)> {
    let top = v.max_weight();
    let mut p = ZhuPoly::zero();
    for (w, c) in v.terms() {
        if crate::fock::word_weight(&v.system, w) != top || w.iter().any(|x| x.m != -1) {
            continue;
        }
        p.add_term(ZMono::new(w.iter().map(|x| x.gen).collect()), c.clone());
    }
    p.leading().map(|(m, c)| (m.clone(), c.clone()))
}

/// Which of the three predicted leading-term shapes a relation has.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeadingForm {
    /// `(a^0)^2 ∏_{k≤n} a^{2k}`.
    SquareOfA0,
    /// `a^1 ∏_{k≤n} a^{2k}`.
    WithA1,
    /// `a^{2n+2} ∏_{k≤n-1} a^{2k}`.
    WithA2n2,
}

pub fn classify_leading(m: &ZMono, n: u32) -> Option<LeadingForm> {
    let evens: Vec<u32> = (0..=n).map(|k| 2 * k).collect();
    let mk = |extra: &[u32], base: &[u32]| ZMono::new(extra.iter().chain(base).copied().collect());
    if *m == mk(&[0, 0], &evens) {
        return Some(LeadingForm::SquareOfA0);
    }
    if *m == mk(&[1], &evens) {
        return Some(LeadingForm::WithA1);
    }
    if *m == mk(&[2 * n + 2], &evens[..n as usize]) {
        return Some(LeadingForm::WithA2n2);
    }
    None
}

#[derive(Clone, Debug)]
pub struct VarietyRelation {
    pub n: u32,
    pub lambda1: Scalar,
    pub lambda2: Scalar,
    /// The ideal element after eliminating `J^{l+1}` and `J^l`.
    pub element: FockState,
    pub poly: ZhuPoly,
    pub leading: Option<(ZMono, Scalar)>,
    pub form: Option<LeadingForm>,
}

/// A nonzero element of the Zhu image of the maximal ideal, in `a^0, …, a^{l-1}`.
pub fn variety_relation(ctx: &W1Inf) -> Result<VarietyRelation> {
    let n = ctx.n;
    let l = ctx.critical();
    let k: Vec<u32> = (0..=n).collect();
    let head: Vec<u32> = (0..n.saturating_sub(1)).collect();
    let with = |tail: &[u32]| -> Vec<u32> { head.iter().chain(tail).copied().collect() };
    let j1: Vec<u32> = (0..n).chain([n + 2]).collect();
    let j2 = with(&[n, n + 1]);
    let j3: Vec<u32> = (0..n).chain([n + 1]).collect();
    let d1 = ctx.construct_dij(&k, &j1, NoOrdering::Ascending)?;
    let d2 = ctx.construct_dij(&k, &j2, NoOrdering::Ascending)?;
    let r1 = remainder(&d1)?.value;
    let r2 = remainder(&d2)?.value;
    if r1.is_zero() && r2.is_zero() {
        return Err(Error::InvalidArgument("both remainders vanish".into()));
    }
    let (lambda1, lambda2) = (r2, -r1);
    let e = d1.state.scale(&lambda1).add_scaled(&d2.state, &lambda2);
    if !e.coeff(&[Mode::new(l + 2, -1)]).is_zero() {
        return Err(Error::NoConvergence(format!("J^{} survives in the combination", l + 2)));
    }
    let d0 = ctx.d0()?;
    let base = decoupling(ctx, &d0)?;
    let d3 = ctx.construct_dij(&k, &j3, NoOrdering::Ascending)?;
    let c3 = d3.state.coeff(&[Mode::new(l + 1, -1)]);
    if c3.is_zero() {
        return Err(Error::InvalidArgument(format!("J^{} does not appear in its relation", l + 1)));
    }
    let mut rels = std::collections::BTreeMap::new();
    rels.insert(l, base.relation.clone());
    rels.insert(l + 1, Relation { r: l + 1, element: d3.state.scale(&(one() / c3)) });
    let element = eliminate(ctx, &e, &rels)?;

    let zhu = Zhu::new(ctx.abs.engine())?;
    let mut poly = zhu.reduce(&element);
    let raised = raise(ctx, &base, l + 2)?;
    let images: Vec<(u32, ZhuPoly)> = raised
        .iter()
        .map(|(&r, rel)| {
            // J^r - Q ∈ ideal, so a^r ≡ π(Q)
            (r, zhu.reduce(&rel.rhs()))
        })
        .collect();
    for _ in 0..32 {
        match poly.max_var() {
            Some(v) if v >= l => {
                let (_, q) = images.iter().find(|(r, _)| *r == v).ok_or_else(|| {
                    Error::NoConvergence(format!("no relation available for a^{v}"))
                })?;
                poly = poly.substitute(v, q);
            }
            _ => break,
        }
    }
    if poly.max_var().map(|v| v >= l).unwrap_or(false) {
        return Err(Error::NoConvergence("Zhu elimination did not terminate".into()));
    }
    let leading = poly.leading().map(|(m, c)| (m.clone(), c.clone()));
    let form = leading.as_ref().and_then(|(m, _)| classify_leading(m, n));
    Ok(VarietyRelation { n, lambda1, lambda2, element, poly, leading, form })
}
