use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::scalar::{factorial, one, Scalar};

use super::system::System;
use super::word::{Mode, Terms};

#[derive(Debug, PartialEq, Eq, Hash)]
pub enum Node {
    /// The identity field, whose state is the vacuum.
    Vacuum,
    Gen(u32),
    Deriv(u32, FieldExpr),
    /// `:a b:`; longer products nest to the right.
    Wick(FieldExpr, FieldExpr),
    Circ(i64, FieldExpr, FieldExpr),
    Sum(Vec<(Scalar, FieldExpr)>),
    /// The field of a state, through the state-field correspondence.
    State(Arc<Terms>),
}

#[derive(Debug)]
struct Inner {
    node: Node,
    hash: u64,
    weight: i64,
    odd: bool,
}

/// An immutable, cheaply cloned expression tree with cached hash, weight and parity.
#[derive(Clone, Debug)]
pub struct FieldExpr(Arc<Inner>);

impl PartialEq for FieldExpr {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.hash == other.0.hash && self.0.node == other.0.node)
    }
}

impl Eq for FieldExpr {}

impl Hash for FieldExpr {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash)
    }
}

fn hash_node(node: &Node) -> u64 {
    let mut h = std::collections::hash_map::DefaultHasher::new();
    node.hash(&mut h);
    h.finish()
}

impl FieldExpr {
    fn make(system: &System, node: Node) -> Self {
        let (weight, odd) = match &node {
            Node::Vacuum => (0, false),
            Node::Gen(g) => (system.gen_weight(*g), system.gen_odd(*g)),
            Node::Deriv(k, a) => (a.weight() + *k as i64, a.is_odd()),
            Node::Wick(a, b) => (a.weight() + b.weight(), a.is_odd() ^ b.is_odd()),
            Node::Circ(n, a, b) => (a.weight() + b.weight() - n - 1, a.is_odd() ^ b.is_odd()),
            Node::Sum(v) => (
                v.iter().map(|(_, e)| e.weight()).max().unwrap_or(0),
                v.first().map(|(_, e)| e.is_odd()).unwrap_or(false),
            ),
            Node::State(t) => (
                t.keys().map(|w| super::word::word_weight(system, w)).max().unwrap_or(0),
                t.keys().next().map(|w| w.iter().filter(|x| system.gen_odd(x.gen)).count() % 2 == 1).unwrap_or(false),
            ),
        };
        let hash = hash_node(&node);
        FieldExpr(Arc::new(Inner { node, hash, weight, odd }))
    }

    pub fn node(&self) -> &Node {
        &self.0.node
    }

    /// Upper bound for the weight; exact for homogeneous expressions.
    pub fn weight(&self) -> i64 {
        self.0.weight
    }

    pub fn is_odd(&self) -> bool {
        self.0.odd
    }

    pub fn vacuum(system: &System) -> Self {
        Self::make(system, Node::Vacuum)
    }

    pub fn gen(system: &System, g: u32) -> Self {
        assert!(system.is_valid_gen(g), "generator {g} not in {system}");
        Self::make(system, Node::Gen(g))
    }

    pub fn deriv(system: &System, k: u32, a: &FieldExpr) -> Self {
        if k == 0 {
            return a.clone();
        }
        if let Node::Deriv(j, b) = a.node() {
            return Self::make(system, Node::Deriv(j + k, b.clone()));
        }
        Self::make(system, Node::Deriv(k, a.clone()))
    }

    pub fn wick(system: &System, a: &FieldExpr, b: &FieldExpr) -> Self {
        Self::make(system, Node::Wick(a.clone(), b.clone()))
    }

    /// Right-nested `:a_1 a_2 ... a_k:`; the empty product is the identity.
    pub fn wick_all(system: &System, factors: &[FieldExpr]) -> Self {
        match factors {
            [] => Self::vacuum(system),
            [a] => a.clone(),
            [a, rest @ ..] => Self::wick(system, a, &Self::wick_all(system, rest)),
        }
    }

    pub fn circ(system: &System, n: i64, a: &FieldExpr, b: &FieldExpr) -> Self {
        Self::make(system, Node::Circ(n, a.clone(), b.clone()))
    }

    pub fn sum(system: &System, terms: Vec<(Scalar, FieldExpr)>) -> Self {
        let terms: Vec<_> = terms.into_iter().filter(|(c, _)| !c.is_zero()).collect();
        if terms.len() == 1 && terms[0].0.is_one() {
            return terms[0].1.clone();
        }
        Self::make(system, Node::Sum(terms))
    }

    pub fn scale(system: &System, c: Scalar, a: &FieldExpr) -> Self {
        Self::sum(system, vec![(c, a.clone())])
    }

    pub fn zero(system: &System) -> Self {
        Self::make(system, Node::Sum(Vec::new()))
    }

    pub fn from_state(system: &System, terms: Terms) -> Self {
        Self::make(system, Node::State(Arc::new(terms)))
    }

    /// The field `(1/i!) ∂^i g` whose state is the single mode `g(-1-i)|0⟩`.
    pub fn mode_leaf(system: &System, x: Mode) -> Self {
        let i = (-1 - x.m) as u32;
        let d = Self::deriv(system, i, &Self::gen(system, x.gen));
        if i <= 1 {
            d
        } else {
            Self::scale(system, one() / factorial(i as u64), &d)
        }
    }

    /// Replaces every generator leaf by the given expression (built over `target`).
    pub fn substitute(&self, target: &System, map: &dyn Fn(u32) -> FieldExpr) -> FieldExpr {
        match self.node() {
            Node::Vacuum => Self::vacuum(target),
            Node::Gen(g) => map(*g),
            Node::Deriv(k, a) => Self::deriv(target, *k, &a.substitute(target, map)),
            Node::Wick(a, b) => Self::wick(target, &a.substitute(target, map), &b.substitute(target, map)),
            Node::Circ(n, a, b) => Self::circ(target, *n, &a.substitute(target, map), &b.substitute(target, map)),
            Node::Sum(v) => Self::sum(target, v.iter().map(|(c, e)| (c.clone(), e.substitute(target, map))).collect()),
            Node::State(_) => panic!("substitute is not defined on state leaves"),
        }
    }

    pub fn display<'a>(&'a self, system: &'a System) -> ExprDisplay<'a> {
        ExprDisplay { e: self, system }
    }
}

pub struct ExprDisplay<'a> {
    e: &'a FieldExpr,
    system: &'a System,
}

impl fmt::Display for ExprDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sys = self.system;
        match self.e.node() {
            Node::Vacuum => write!(f, "1"),
            Node::Gen(g) => write!(f, "{}", sys.gen_name(*g)),
            Node::Deriv(k, a) => write!(f, "∂^{k}{}", a.display(sys)),
            Node::Wick(a, b) => write!(f, ":{} {}:", a.display(sys), b.display(sys)),
            Node::Circ(n, a, b) => write!(f, "({} ∘_{n} {})", a.display(sys), b.display(sys)),
            Node::Sum(v) => {
                if v.is_empty() {
                    return write!(f, "0");
                }
                write!(f, "(")?;
                for (i, (c, e)) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{c}·{}", e.display(sys))?;
                }
                write!(f, ")")
            }
            Node::State(t) => write!(f, "<state with {} terms>", t.len()),
        }
    }
}
