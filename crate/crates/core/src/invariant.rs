//! The classical invariant ring `C[J_∞(V ⊕ V*)]^{GL_n}`: Weyl's quadratic
//! generators `q_{a,b}`, the determinantal relations `d_{I,J}`, and the
//! symbol map from filtered states to the associated graded ring.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fock::{FockState, System};
use crate::linalg;
use crate::scalar::{binomial, factorial, one, Scalar};

/// A monomial in the variables `Q_{a,b}`, factors sorted ascending.
/// Ordered degree-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QMono(pub Vec<(u32, u32)>);

impl QMono {
    pub fn new(mut v: Vec<(u32, u32)>) -> Self {
        v.sort();
        QMono(v)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> i64 {
        self.0.iter().map(|&(a, b)| (a + b + 1) as i64).sum()
    }
}

impl Ord for QMono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for QMono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in the `Q_{a,b}`; `Q_{a,b}` has weight `a + b + 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InvPoly {
    terms: BTreeMap<QMono, Scalar>,
}

impl InvPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn var(a: u32, b: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(QMono(vec![(a, b)]), one());
        p
    }

    pub fn add_term(&mut self, m: QMono, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> &BTreeMap<QMono, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero();
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m, x) in &self.terms {
            for (n, y) in &other.terms {
                let mut v = m.0.clone();
                v.extend_from_slice(&n.0);
                out.add_term(QMono::new(v), x * y);
            }
        }
        out
    }

    /// Substitutes `Q_{a,b} ↦ q_{a,b}` for `V = C^n`.
    pub fn substitute(&self, n: u32) -> ClassicalState {
        let mut out = ClassicalState::zero();
        for (m, c) in &self.terms {
            let mut acc = ClassicalState::constant(c.clone());
            for &(a, b) in &m.0 {
                acc = acc.mul(&q_gen(a, b, n));
            }
            out = out.add(&acc);
        }
        out
    }

    /// The derivation `∂Q_{a,b} = Q_{a+1,b} + Q_{a,b+1}`.
    pub fn derivative(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            for i in 0..m.0.len() {
                for shift in [(1, 0), (0, 1)] {
                    let mut v = m.0.clone();
                    v[i] = (v[i].0 + shift.0, v[i].1 + shift.1);
                    out.add_term(QMono::new(v), c.clone());
                }
            }
        }
        out
    }
}

impl fmt::Display for InvPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (a, b) in &m.0 {
                write!(f, "Q{a},{b}")?;
            }
        }
        Ok(())
    }
}

/// `x_{i,k}` (unprimed, weight `k + 1`) or `x'_{i,k}` (primed, weight `k`); `i` is 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct XVar {
    pub primed: bool,
    pub i: u32,
    pub k: u32,
}

impl XVar {
    pub fn weight(&self) -> i64 {
        self.k as i64 + if self.primed { 0 } else { 1 }
    }
}

/// Polynomial in the jet coordinates `x_{i,k}`, `x'_{i,k}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassicalState {
    terms: BTreeMap<Vec<XVar>, Scalar>,
}

impl ClassicalState {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Scalar) -> Self {
        let mut s = Self::zero();
        s.add_term(Vec::new(), c);
        s
    }

    pub fn add_term(&mut self, mut m: Vec<XVar>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        m.sort();
        let e = self.terms.entry(m.clone()).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Vec<XVar>, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero();
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m, x) in &self.terms {
            for (n, y) in &other.terms {
                let mut v = m.clone();
                v.extend_from_slice(n);
                out.add_term(v, x * y);
            }
        }
        out
    }

    fn homogeneous(&self) -> Result<Option<(usize, i64)>> {
        let mut it = self.terms.keys().map(|m| (m.len(), m.iter().map(XVar::weight).sum::<i64>()));
        let Some(first) = it.next() else { return Ok(None) };
        if it.any(|x| x != first) {
            return Err(Error::NotHomogeneous("classical polynomial".into()));
        }
        Ok(Some(first))
    }
}

/// `q_{a,b} = Σ_i x_{i,a} x'_{i,b}`.
pub fn q_gen(a: u32, b: u32, n: u32) -> ClassicalState {
    let mut s = ClassicalState::zero();
    for i in 0..n {
        s.add_term(vec![XVar { primed: false, i, k: a }, XVar { primed: true, i, k: b }], one());
    }
    s
}

pub fn validate_indices(i: &[u32], j: &[u32]) -> Result<()> {
    let inc = |v: &[u32]| v.windows(2).all(|w| w[0] < w[1]);
    if i.is_empty() || i.len() != j.len() || !inc(i) || !inc(j) {
        return Err(Error::InvalidArgument(format!(
            "index lists must be strictly increasing and of equal nonzero length: {i:?}, {j:?}"
        )));
    }
    Ok(())
}

/// `det [Q_{i_r, j_s}]` with rows indexed by `I`, columns by `J`.
pub fn det_dij(i: &[u32], j: &[u32]) -> Result<InvPoly> {
    validate_indices(i, j)?;
    Ok(det_unchecked(i, j))
}

/// Leibniz expansion without validation (rows may repeat or be unordered).
pub fn det_unchecked(rows: &[u32], cols: &[u32]) -> InvPoly {
    let k = rows.len();
    let mut out = InvPoly::zero();
    let mut perm: Vec<usize> = (0..k).collect();
    permutations(&mut perm, 0, &mut |p, sgn| {
        let m: Vec<(u32, u32)> = (0..k).map(|r| (rows[r], cols[p[r]])).collect();
        out.add_term(QMono::new(m), if sgn { one() } else { -one() });
    });
    out
}

fn permutations(p: &mut Vec<usize>, start: usize, f: &mut dyn FnMut(&[usize], bool)) {
    fn rec(p: &mut Vec<usize>, start: usize, even: bool, f: &mut dyn FnMut(&[usize], bool)) {
        if start == p.len() {
            f(p, even);
            return;
        }
        for i in start..p.len() {
            p.swap(start, i);
            rec(p, start + 1, if i == start { even } else { !even }, f);
            p.swap(start, i);
        }
    }
    rec(p, start, true, f)
}

/// Image of an associated-graded class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Symbol {
    Inv(InvPoly),
    Classical(ClassicalState),
}

/// Symbol of `∂^i J^l / i!`-type factors: `J^l(-1-i) ↦ (1/i!) ∂^i Q_{l,0}`.
fn current_mode_symbol(l: u32, i: u32) -> InvPoly {
    let mut p = InvPoly::zero();
    let f = one() / factorial(i as u64);
    for j in 0..=i {
        p.add_term(QMono(vec![(l + j, i - j)]), binomial(i as i64, j) * &f);
    }
    p
}

/// Projection of `v` (of filtration level `r`) onto `gr_r`.
pub fn symbol(v: &FockState, r: u32) -> Result<Symbol> {
    let sys = &v.system;
    let deg = sys.mode_degree();
    for w in v.terms().keys() {
        if w.len() as u32 * deg > r {
            return Err(Error::InvalidArgument(format!("state has degree {} above level {r}", w.len() as u32 * deg)));
        }
    }
    let top = v.terms().iter().filter(|(w, _)| w.len() as u32 * deg == r);
    match sys {
        System::Current { .. } => {
            let mut out = InvPoly::zero();
            for (w, c) in top {
                let mut acc = InvPoly::zero();
                acc.add_term(QMono(Vec::new()), c.clone());
                for x in w.iter() {
                    acc = acc.mul(&current_mode_symbol(x.gen, (-1 - x.m) as u32));
                }
                out = out.add(&acc);
            }
            Ok(Symbol::Inv(out))
        }
        System::BetaGamma { rank } => {
            let mut out = ClassicalState::zero();
            for (w, c) in top {
                let mut coeff = c.clone();
                let mut vars = Vec::with_capacity(w.len());
                for x in w.iter() {
                    let k = (-1 - x.m) as u32;
                    coeff /= factorial(k as u64);
                    let primed = x.gen >= *rank;
                    vars.push(XVar { primed, i: x.gen % rank, k });
                }
                out.add_term(vars, coeff);
            }
            Ok(Symbol::Classical(out))
        }
        System::Bc { .. } => Err(Error::InvalidArgument("symbols of bc states are not commutative polynomials".into())),
    }
}

pub fn symbol_current(v: &FockState, r: u32) -> Result<InvPoly> {
    match symbol(v, r)? {
        Symbol::Inv(p) => Ok(p),
        Symbol::Classical(_) => Err(Error::SystemMismatch("expected a current-algebra state".into())),
    }
}

pub fn symbol_classical(v: &FockState, r: u32) -> Result<ClassicalState> {
    match symbol(v, r)? {
        Symbol::Classical(p) => Ok(p),
        Symbol::Inv(_) => Err(Error::SystemMismatch("expected a βγ state".into())),
    }
}

/// All `Q`-monomials of the given degree and weight, in increasing order.
pub fn q_monomials(degree: usize, weight: i64) -> Vec<QMono> {
    let mut vars = Vec::new();
    for s in 0..weight.max(0) as u32 {
        for a in 0..=s {
            vars.push((a, s - a));
        }
    }
    vars.sort();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(vars: &[(u32, u32)], start: usize, left: usize, w: i64, cur: &mut Vec<(u32, u32)>, out: &mut Vec<QMono>) {
        if left == 0 {
            if w == 0 {
                out.push(QMono(cur.clone()));
            }
            return;
        }
        for i in start..vars.len() {
            let vw = (vars[i].0 + vars[i].1 + 1) as i64;
            if vw + (left as i64 - 1) > w {
                continue;
            }
            cur.push(vars[i]);
            rec(vars, i, left - 1, w - vw, cur, out);
            cur.pop();
        }
    }
    rec(&vars, 0, degree, weight, &mut cur, &mut out);
    out.sort();
    out
}

/// Writes a homogeneous invariant polynomial as a polynomial in the `q_{a,b}`.
/// Among several preimages (degree ≥ n+1) the one supported on the smallest
/// monomials in degree-lex order is returned.
pub fn express_classical(p: &ClassicalState, n: u32) -> Result<InvPoly> {
    let Some((deg, weight)) = p.homogeneous()? else { return Ok(InvPoly::zero()) };
    if deg % 2 != 0 {
        return Err(Error::NotInSpan(format!("odd degree {deg}")));
    }
    let monos = q_monomials(deg / 2, weight);
    let images: Vec<BTreeMap<Vec<XVar>, Scalar>> = crate::par::map(&monos, |m| {
        let mut q = InvPoly::zero();
        q.add_term(m.clone(), one());
        q.substitute(n).terms
    });
    let cols: Vec<&BTreeMap<Vec<XVar>, Scalar>> = images.iter().collect();
    let coeffs = linalg::express(&cols, &p.terms).ok_or_else(|| Error::NotInSpan("not a polynomial in the q_{a,b}".into()))?;
    let mut out = InvPoly::zero();
    for (m, c) in monos.into_iter().zip(coeffs) {
        out.add_term(m, c);
    }
    Ok(out)
}
