use std::sync::Arc;

use dashmap::DashMap;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::par;
use crate::scalar::{falling, one, sign, Scalar};

use super::expr::{FieldExpr, Node};
use super::system::System;
use super::word::{add_scaled, add_term, word_weight, FockState, Mode, Terms, Word};

type Bracket = (Vec<(Mode, Scalar)>, Scalar);

/// Mode-level evaluator for one generator system. All results are memoized;
/// the caches only ever store values that are pure functions of their keys.
pub struct Engine {
    system: System,
    brackets: DashMap<(Mode, Mode), Arc<Bracket>>,
    gen_memo: DashMap<(Mode, Word), Arc<Terms>>,
    field_memo: DashMap<(FieldExpr, i64, Word), Arc<Terms>>,
    lowered: DashMap<FieldExpr, FieldExpr>,
}

impl Engine {
    pub fn new(system: System) -> Self {
        Self {
            system,
            brackets: DashMap::new(),
            gen_memo: DashMap::new(),
            field_memo: DashMap::new(),
            lowered: DashMap::new(),
        }
    }

    pub fn system(&self) -> &System {
        &self.system
    }

    pub fn gen(&self, g: u32) -> FieldExpr {
        FieldExpr::gen(&self.system, g)
    }

    pub fn vacuum_field(&self) -> FieldExpr {
        FieldExpr::vacuum(&self.system)
    }

    pub fn deriv(&self, k: u32, a: &FieldExpr) -> FieldExpr {
        FieldExpr::deriv(&self.system, k, a)
    }

    pub fn wick(&self, a: &FieldExpr, b: &FieldExpr) -> FieldExpr {
        FieldExpr::wick(&self.system, a, b)
    }

    pub fn wick_all(&self, factors: &[FieldExpr]) -> FieldExpr {
        FieldExpr::wick_all(&self.system, factors)
    }

    pub fn sum(&self, terms: Vec<(Scalar, FieldExpr)>) -> FieldExpr {
        FieldExpr::sum(&self.system, terms)
    }

    pub fn circ_expr(&self, n: i64, a: &FieldExpr, b: &FieldExpr) -> FieldExpr {
        FieldExpr::circ(&self.system, n, a, b)
    }

    fn bracket(&self, x: Mode, y: Mode) -> Arc<Bracket> {
        if let Some(b) = self.brackets.get(&(x, y)) {
            return b.clone();
        }
        let b = Arc::new(self.system.bracket(x, y));
        self.brackets.insert((x, y), b.clone());
        b
    }

    fn swap_sign(&self, x: Mode, y: Mode) -> Scalar {
        if self.system.gen_odd(x.gen) && self.system.gen_odd(y.gen) {
            -one()
        } else {
            one()
        }
    }

    /// `x · w|0⟩` rewritten in PBW normal form.
    pub fn apply_gen(&self, x: Mode, w: &[Mode]) -> Arc<Terms> {
        let key = (x, Word::from_slice(w));
        if let Some(r) = self.gen_memo.get(&key) {
            return r.clone();
        }
        let r = Arc::new(self.compute_gen(x, w));
        self.gen_memo.insert(key, r.clone());
        r
    }

    fn compute_gen(&self, x: Mode, w: &[Mode]) -> Terms {
        let sys = &self.system;
        let mut out = Terms::new();
        if x.annihilates() && word_weight(sys, w) + sys.gen_weight(x.gen) - x.m - 1 < 0 {
            return out;
        }
        let Some((&x1, rest)) = w.split_first() else {
            if !x.annihilates() {
                out.insert(Word::from_slice(&[x]), one());
            }
            return out;
        };
        if !x.annihilates() && x <= x1 {
            if x == x1 && sys.gen_odd(x.gen) {
                return out;
            }
            let mut nw = Word::with_capacity(w.len() + 1);
            nw.push(x);
            nw.extend_from_slice(w);
            out.insert(nw, one());
            return out;
        }
        // x x1 rest = ± x1 (x rest) + [x, x1] rest
        let s = self.swap_sign(x, x1);
        let inner = self.apply_gen(x, rest);
        for (u, c) in inner.iter() {
            let r = self.apply_gen(x1, u);
            add_scaled(&mut out, &r, &(c * &s));
        }
        let br = self.bracket(x, x1);
        for (y, d) in br.0.iter() {
            let r = self.apply_gen(*y, rest);
            add_scaled(&mut out, &r, d);
        }
        if !br.1.is_zero() {
            add_term(&mut out, Word::from_slice(rest), br.1.clone());
        }
        out
    }

    /// `e(m) · w|0⟩`.
    pub fn apply_field_word(&self, e: &FieldExpr, m: i64, w: &[Mode]) -> Arc<Terms> {
        let ww = word_weight(&self.system, w);
        if ww + e.weight() - m - 1 < 0 {
            return Arc::new(Terms::new());
        }
        match e.node() {
            Node::Gen(g) => return self.apply_gen(Mode::new(*g, m), w),
            Node::Vacuum => {
                let mut t = Terms::new();
                if m == -1 {
                    t.insert(Word::from_slice(w), one());
                }
                return Arc::new(t);
            }
            _ => {}
        }
        let key = (e.clone(), m, Word::from_slice(w));
        if let Some(r) = self.field_memo.get(&key) {
            return r.clone();
        }
        let r = Arc::new(self.compute_field(e, m, w, ww));
        self.field_memo.insert(key, r.clone());
        r
    }

    fn compute_field(&self, e: &FieldExpr, m: i64, w: &[Mode], ww: i64) -> Terms {
        let mut out = Terms::new();
        match e.node() {
            Node::Vacuum | Node::Gen(_) => unreachable!(),
            Node::Deriv(k, a) => {
                // (∂^k a)(m) = (-1)^k (m)_k a(m-k)
                let c = sign(*k as i64) * falling(m, *k);
                if !c.is_zero() {
                    add_scaled(&mut out, &self.apply_field_word(a, m - *k as i64, w), &c);
                }
            }
            Node::Sum(v) => {
                for (c, a) in v {
                    add_scaled(&mut out, &self.apply_field_word(a, m, w), c);
                }
            }
            Node::Wick(a, b) => {
                // Σ_{j≤-1} a(j) b(m-j-1) + (-1)^{|a||b|} Σ_{j≥0} b(m-j-1) a(j)
                let lo = m - ww - b.weight();
                for j in lo..=-1 {
                    let inner = self.apply_field_word(b, m - j - 1, w);
                    for (u, c) in inner.iter() {
                        add_scaled(&mut out, &self.apply_field_word(a, j, u), c);
                    }
                }
                let s = if a.is_odd() && b.is_odd() { -one() } else { one() };
                for j in 0..(ww + a.weight()) {
                    let inner = self.apply_field_word(a, j, w);
                    for (u, c) in inner.iter() {
                        add_scaled(&mut out, &self.apply_field_word(b, m - j - 1, u), &(c * &s));
                    }
                }
            }
            Node::Circ(..) | Node::State(_) => {
                let f = self.lower(e);
                return (*self.apply_field_word(&f, m, w)).clone();
            }
        }
        out
    }

    /// Rewrites circle and state nodes as explicit Wick/derivative expressions.
    fn lower(&self, e: &FieldExpr) -> FieldExpr {
        if let Some(f) = self.lowered.get(e) {
            return f.clone();
        }
        let terms = match e.node() {
            Node::Circ(n, a, b) => {
                let vb = self.state_terms(b);
                self.apply_field_terms(a, *n, &vb)
            }
            Node::State(t) => (**t).clone(),
            _ => return e.clone(),
        };
        let f = self.field_of_terms(&terms);
        self.lowered.insert(e.clone(), f.clone());
        f
    }

    /// The field whose state is `v`: a combination of right-nested Wick
    /// products of `(1/i!) ∂^i g`, one factor per mode `g(-1-i)`.
    pub fn field_of_terms(&self, terms: &Terms) -> FieldExpr {
        let sys = &self.system;
        let parts = terms
            .iter()
            .map(|(w, c)| {
                let leaves: Vec<FieldExpr> = w.iter().map(|&x| FieldExpr::mode_leaf(sys, x)).collect();
                (c.clone(), FieldExpr::wick_all(sys, &leaves))
            })
            .collect();
        FieldExpr::sum(sys, parts)
    }

    pub fn field_of_state(&self, v: &FockState) -> Result<FieldExpr> {
        self.check(v)?;
        Ok(self.field_of_terms(v.terms()))
    }

    pub fn apply_field_terms(&self, e: &FieldExpr, m: i64, v: &Terms) -> Terms {
        let words: Vec<(&Word, &Scalar)> = v.iter().collect();
        let parts = par::map(&words, |(w, _)| self.apply_field_word(e, m, w));
        let mut out = Terms::new();
        for ((_, c), r) in words.iter().zip(parts) {
            add_scaled(&mut out, &r, c);
        }
        out
    }

    fn state_terms(&self, e: &FieldExpr) -> Terms {
        (*self.apply_field_word(e, -1, &[])).clone()
    }

    fn check(&self, v: &FockState) -> Result<()> {
        if v.system != self.system {
            return Err(Error::SystemMismatch(format!("{} vs {}", v.system, self.system)));
        }
        Ok(())
    }

    /// `e(-1)|0⟩`.
    pub fn state_of(&self, e: &FieldExpr) -> FockState {
        FockState::from_terms(&self.system, self.state_terms(e))
    }

    /// `e(m) v`.
    pub fn apply_mode(&self, e: &FieldExpr, m: i64, v: &FockState) -> Result<FockState> {
        self.check(v)?;
        Ok(FockState::from_terms(&self.system, self.apply_field_terms(e, m, v.terms())))
    }

    /// `a ∘_n b` as a state.
    pub fn circle(&self, a: &FieldExpr, n: i64, b: &FieldExpr) -> FockState {
        let vb = self.state_terms(b);
        FockState::from_terms(&self.system, self.apply_field_terms(a, n, &vb))
    }

    /// Circle product with a state on the right: `a(n) v`.
    pub fn circle_state(&self, a: &FieldExpr, n: i64, v: &FockState) -> FockState {
        FockState::from_terms(&self.system, self.apply_field_terms(a, n, v.terms()))
    }

    /// Circle product of two states: `Y(u) ∘_n v`.
    pub fn circle_states(&self, u: &FockState, n: i64, v: &FockState) -> FockState {
        let f = FieldExpr::from_state(&self.system, u.terms().clone());
        self.circle_state(&f, n, v)
    }

    pub fn derivative(&self, v: &FockState, k: u32) -> FockState {
        let f = FieldExpr::from_state(&self.system, v.terms().clone());
        self.state_of(&self.deriv(k, &f))
    }

    /// The generator mode `g(m)` applied to a state.
    pub fn apply_gen_state(&self, x: Mode, v: &FockState) -> FockState {
        let mut out = Terms::new();
        for (w, c) in v.terms() {
            add_scaled(&mut out, &self.apply_gen(x, w), c);
        }
        FockState::from_terms(&self.system, out)
    }

    pub fn cache_sizes(&self) -> (usize, usize) {
        (self.gen_memo.len(), self.field_memo.len())
    }

    pub fn clear_caches(&self) {
        self.gen_memo.clear();
        self.field_memo.clear();
        self.lowered.clear();
    }
}
