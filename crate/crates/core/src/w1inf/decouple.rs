use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fock::{FieldExpr, FockState, Mode, Word};
use crate::scalar::{one, Scalar};

use super::context::{DijElement, W1Inf};
use super::model::AmSpace;
use super::nopoly::{NoPoly, OmegaFactor};

/// `R_{I,J} = pr_m(D^2_{I,J})` and the coordinates of `D^2` in the basis `∂^i J^{m-i}`.
#[derive(Clone, Debug)]
pub struct Remainder {
    pub value: Scalar,
    pub m: u32,
    pub coords: BTreeMap<u32, Scalar>,
}

/// Coordinates of a degree-2 polynomial (single factors only) in `A_m`.
pub fn a_m_coordinates(p: &NoPoly, m: u32) -> Result<BTreeMap<u32, Scalar>> {
    let mut items = Vec::new();
    for (f, c) in p.terms() {
        let [x] = f.as_slice() else {
            return Err(Error::InvalidArgument("expected single-factor terms".into()));
        };
        if x.a + x.b + x.deriv != m {
            return Err(Error::InvalidArgument(format!("term ∂^{}Ω{},{} is not in A_{m}", x.deriv, x.a, x.b)));
        }
        items.push((c.clone(), x.a, x.b, x.deriv));
    }
    Ok(AmSpace::new(m).coordinates(&items))
}

pub fn remainder(d: &DijElement) -> Result<Remainder> {
    let m = (d.weight() - 1) as u32;
    let coords = a_m_coordinates(&d.part(1), m)?;
    let value = AmSpace::new(m).pr(&coords);
    Ok(Remainder { value, m, coords })
}

/// `J^r ≡ J^r(-1)|0⟩ - element` modulo the maximal ideal, stored as the ideal
/// element `J^r(-1)|0⟩ - Q` whose other words avoid `J^s` for `s ≥ base`.
#[derive(Clone, Debug)]
pub struct Relation {
    pub r: u32,
    pub element: FockState,
}

impl Relation {
    /// `Q` in `J^r ≡ Q`.
    pub fn rhs(&self) -> FockState {
        let lead = FockState::from_word(&self.element.system, Word::from_slice(&[Mode::new(self.r, -1)]), one());
        lead.sub(&self.element)
    }

    pub fn verify(&self, ctx: &W1Inf) -> bool {
        ctx.project(&self.element).is_zero()
    }
}

/// The base decoupling relation `j^l = P(j^0, …, j^{l-1})`, `l = n^2 + 2n`.
#[derive(Clone, Debug)]
pub struct Decoupling {
    pub l: u32,
    /// `R_0`; the relation exists because it is nonzero.
    pub lambda: Scalar,
    pub p: NoPoly,
    pub relation: Relation,
}

fn max_gen(w: &[Mode]) -> u32 {
    w.iter().map(|x| x.gen).max().unwrap_or(0)
}

/// Normalizes an ideal element whose top generator is `J^r(-1)`.
fn normalize_relation(v: &FockState, r: u32) -> Result<Relation> {
    let c = v.coeff(&[Mode::new(r, -1)]);
    if c.is_zero() {
        return Err(Error::NoConvergence(format!("coefficient of J^{r} vanished")));
    }
    Ok(Relation { r, element: v.scale(&(one() / c)) })
}

pub fn decoupling(ctx: &W1Inf, d0: &DijElement) -> Result<Decoupling> {
    let rem = remainder(d0)?;
    let l = rem.m;
    if rem.value.is_zero() {
        return Err(Error::InvalidArgument(format!("R_0 = 0 at n = {}", ctx.n)));
    }
    let lambda = rem.value.clone();
    // D^2 = λ J^l + ∂ω, and ∂ω = Σ_{i≥1} d_i ∂^i J^{l-i}
    let mut rest = NoPoly::zero();
    for (&i, c) in &rem.coords {
        if i > 0 {
            rest.add_term(vec![OmegaFactor::j(l - i, i)], c.clone());
        }
    }
    for k in 2..=d0.poly.max_factors() {
        rest = rest.add(&d0.part(k));
    }
    let p = rest.scale(&(-one() / &lambda));
    let target = ctx.free.state(&ctx.free.j(l));
    if target != ctx.pi(&p) {
        return Err(Error::NoConvergence(format!("j^{l} relation failed to verify")));
    }
    let lead = FockState::from_word(ctx.abs.system(), Word::from_slice(&[Mode::new(l, -1)]), one());
    let relation = reduce_relation(ctx, &lead.sub(&ctx.abstract_state(&p)), l, l, &BTreeMap::new())?;
    Ok(Decoupling { l, lambda, p, relation })
}

/// Replaces every `J^s` with `s` in `relations` by its right-hand side, inside
/// the normally ordered field of each word, until no such word remains.
/// Each substitution changes the state by an element of the ideal.
pub fn eliminate(ctx: &W1Inf, v: &FockState, relations: &BTreeMap<u32, Relation>) -> Result<FockState> {
    let sys = ctx.abs.system().clone();
    let eng = ctx.abs.engine();
    let rhs: BTreeMap<u32, FieldExpr> = relations.iter().map(|(&s, r)| (s, eng.field_of_terms(r.rhs().terms()))).collect();
    let mut cur = v.clone();
    for _ in 0..64 {
        let dirty: Vec<(Word, Scalar)> = cur
            .terms()
            .iter()
            .filter(|(w, _)| w.iter().any(|x| rhs.contains_key(&x.gen)))
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect();
        if dirty.is_empty() {
            return Ok(cur);
        }
        let fields = crate::par::map(&dirty, |(w, _)| {
            let leaves: Vec<FieldExpr> = w
                .iter()
                .map(|&x| match rhs.get(&x.gen) {
                    Some(q) => {
                        let i = (-1 - x.m) as u32;
                        let d = eng.deriv(i, q);
                        FieldExpr::scale(&sys, one() / crate::scalar::factorial(i as u64), &d)
                    }
                    None => FieldExpr::mode_leaf(&sys, x),
                })
                .collect();
            eng.state_of(&eng.wick_all(&leaves))
        });
        let mut next = cur.clone();
        for ((w, c), s) in dirty.iter().zip(fields) {
            next = next.sub(&FockState::from_word(&sys, w.clone(), c.clone())).add_scaled(&s, c);
        }
        cur = next;
    }
    Err(Error::NoConvergence("elimination did not terminate".into()))
}

/// Normalizes `v` on `J^r(-1)` after eliminating `J^s` (`base ≤ s < r`) via `relations`.
fn reduce_relation(ctx: &W1Inf, v: &FockState, r: u32, base: u32, relations: &BTreeMap<u32, Relation>) -> Result<Relation> {
    let v = eliminate(ctx, v, relations)?;
    let rel = normalize_relation(&v, r)?;
    let bad = rel.rhs().terms().keys().any(|w| max_gen(w) >= base);
    if bad {
        return Err(Error::NoConvergence(format!("relation for J^{r} still involves J^s, s ≥ {base}")));
    }
    if !rel.verify(ctx) {
        return Err(Error::NoConvergence(format!("relation for J^{r} failed to verify")));
    }
    Ok(rel)
}

/// Decoupling relations for `J^l, …, J^top` obtained by repeatedly applying
/// `Ω_{0,2} ∘_1` (which sends `J^{r-1}` to `-(r+1) J^r`).
pub fn raise(ctx: &W1Inf, base: &Decoupling, top: u32) -> Result<BTreeMap<u32, Relation>> {
    let mut rels = BTreeMap::new();
    rels.insert(base.l, base.relation.clone());
    let om = ctx.abs.omega(0, 2);
    for r in base.l + 1..=top {
        let prev = &rels[&(r - 1)];
        let raised = ctx.abs.engine().circle_state(&om, 1, &prev.element);
        let rel = reduce_relation(ctx, &raised, r, base.l, &rels)?;
        rels.insert(r, rel);
    }
    Ok(rels)
}
