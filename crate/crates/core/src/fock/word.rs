use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::scalar::{one, Scalar};

use super::system::System;

/// The mode `g(m)` of generator `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mode {
    pub gen: u32,
    pub m: i64,
}

impl Mode {
    pub fn new(gen: u32, m: i64) -> Self {
        Self { gen, m }
    }

    pub fn annihilates(&self) -> bool {
        self.m >= 0
    }
}

/// PBW order: by generator, then by mode descending (so `g(-1)` sits left of `g(-2)`).
impl Ord for Mode {
    fn cmp(&self, other: &Self) -> Ordering {
        self.gen.cmp(&other.gen).then(other.m.cmp(&self.m))
    }
}

impl PartialOrd for Mode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An ordered product of creation modes applied to the vacuum.
pub type Word = SmallVec<[Mode; 8]>;

/// Linear combinations of PBW words.
pub type Terms = BTreeMap<Word, Scalar>;

pub fn add_scaled(acc: &mut Terms, src: &Terms, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    for (w, x) in src {
        add_term(acc, w.clone(), x * c);
    }
}

pub fn add_term(acc: &mut Terms, w: Word, x: Scalar) {
    if x.is_zero() {
        return;
    }
    match acc.entry(w) {
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += x;
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(x);
        }
    }
}

pub fn word_weight(system: &System, w: &[Mode]) -> i64 {
    w.iter().map(|&x| system.mode_weight(x)).sum()
}

pub fn word_degree(system: &System, w: &[Mode]) -> u32 {
    w.len() as u32 * system.mode_degree()
}

/// A vector of the vacuum module, in the PBW basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockState {
    pub system: System,
    terms: Terms,
}

impl FockState {
    pub fn zero(system: &System) -> Self {
        Self { system: system.clone(), terms: Terms::new() }
    }

    pub fn vacuum(system: &System) -> Self {
        Self::from_word(system, Word::new(), one())
    }

    pub fn from_word(system: &System, w: Word, c: Scalar) -> Self {
        let mut s = Self::zero(system);
        add_term(&mut s.terms, w, c);
        s
    }

    pub fn from_terms(system: &System, terms: Terms) -> Self {
        let mut s = Self::zero(system);
        for (w, x) in terms {
            add_term(&mut s.terms, w, x);
        }
        s
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    pub fn into_terms(self) -> Terms {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &[Mode]) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.system, other.system, "states from different systems");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let mut t = self.terms.clone();
        add_scaled(&mut t, &other.terms, &one());
        Self { system: self.system.clone(), terms: t }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(other, &-one())
    }

    pub fn add_scaled(&self, other: &Self, c: &Scalar) -> Self {
        self.check(other);
        let mut t = self.terms.clone();
        add_scaled(&mut t, &other.terms, c);
        Self { system: self.system.clone(), terms: t }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut t = Terms::new();
        add_scaled(&mut t, &self.terms, c);
        Self { system: self.system.clone(), terms: t }
    }

    /// The common weight of all terms; errors on inhomogeneous states.
    pub fn weight(&self) -> Result<Option<i64>> {
        let mut ws = self.terms.keys().map(|w| word_weight(&self.system, w));
        let Some(first) = ws.next() else { return Ok(None) };
        if ws.any(|x| x != first) {
            return Err(Error::NotHomogeneous("mixed weights".into()));
        }
        Ok(Some(first))
    }

    pub fn max_weight(&self) -> i64 {
        self.terms.keys().map(|w| word_weight(&self.system, w)).max().unwrap_or(0)
    }

    pub fn top_degree(&self) -> Option<u32> {
        self.terms.keys().map(|w| word_degree(&self.system, w)).max()
    }

    pub fn degree_component(&self, d: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(w, _)| word_degree(&self.system, w) == d)
            .map(|(w, x)| (w.clone(), x.clone()))
            .collect();
        Self { system: self.system.clone(), terms }
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.terms.keys().map(|w| word_degree(&self.system, w)).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Rescales so that the first nonzero coefficient (in PBW order) is 1.
    pub fn normalized(&self) -> Self {
        match self.terms.values().next() {
            Some(c) => self.scale(&(one() / c)),
            None => self.clone(),
        }
    }
}

pub fn mode_name(system: &System, x: Mode) -> String {
    format!("{}({})", system.gen_name(x.gen), x.m)
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            let neg = c < &Scalar::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "\u{2212}")?;
                }
            } else if neg {
                write!(f, " \u{2212} ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{mag}·")?;
            for x in w.iter() {
                write!(f, "{}", mode_name(&self.system, *x))?;
            }
            write!(f, "|0⟩")?;
        }
        Ok(())
    }
}
