use crate::error::{Error, Result};
use crate::fock::{FieldExpr, FockState, Terms};
use crate::invariant::{det_dij, express_classical, symbol_classical, validate_indices};
use crate::par;

use super::model::{Model, Realization};
use super::nopoly::{NoPoly, Ordering};

/// `M_{-n}` together with its free-field image in `n` copies of βγ (or bc).
pub struct W1Inf {
    pub n: u32,
    pub abs: Model,
    pub free: Model,
}

/// The ideal element lifting Weyl's determinant `d_{I,J}`.
#[derive(Clone, Debug)]
pub struct DijElement {
    pub n: u32,
    pub i: Vec<u32>,
    pub j: Vec<u32>,
    /// `Σ_k D^{2k}`: the part with `k` factors is `D^{2k}`.
    pub poly: NoPoly,
    /// The element as a state of `M_{-n}`.
    pub state: FockState,
}

impl DijElement {
    pub fn weight(&self) -> i64 {
        (self.i.iter().sum::<u32>() + self.j.iter().sum::<u32>() + self.n + 1) as i64
    }

    /// `D^{2k}`.
    pub fn part(&self, k: usize) -> NoPoly {
        self.poly.degree_part(k)
    }
}

impl W1Inf {
    /// `M_{-n}` with the βγ realization.
    pub fn new(n: u32) -> Self {
        Self { n, abs: Model::current(-(n as i64)), free: Model::betagamma(n) }
    }

    /// `M_{+n}` with the bc realization.
    pub fn fermionic(n: u32) -> Self {
        Self { n, abs: Model::current(n as i64), free: Model::bc(n) }
    }

    /// `π`: maps a state of the abstract module to the free-field algebra by
    /// substituting `J^l ↦ j^l` in its normally ordered field.
    pub fn project(&self, v: &FockState) -> FockState {
        let words: Vec<(Terms, crate::Scalar)> = v
            .terms()
            .iter()
            .map(|(w, c)| {
                let mut t = Terms::new();
                t.insert(w.clone(), crate::scalar::one());
                (t, c.clone())
            })
            .collect();
        let fe = self.free.engine();
        let abs = self.abs.engine();
        let target = fe.system().clone();
        let images = par::map(&words, |(t, _)| {
            let f: FieldExpr = abs.field_of_terms(t);
            let g = f.substitute(&target, &|l| self.free.j(l));
            fe.state_of(&g)
        });
        let mut out = FockState::zero(&target);
        for ((_, c), s) in words.iter().zip(images) {
            out = out.add_scaled(&s, c);
        }
        out
    }

    /// Image of a normally ordered polynomial in the free-field algebra.
    pub fn pi(&self, p: &NoPoly) -> FockState {
        p.state(&self.free)
    }

    pub fn abstract_state(&self, p: &NoPoly) -> FockState {
        p.state(&self.abs)
    }

    fn require_bosonic(&self) -> Result<()> {
        match self.free.realization {
            Realization::BetaGamma { .. } => Ok(()),
            _ => Err(Error::InvalidArgument("classical symbols need the βγ realization".into())),
        }
    }

    /// Writes an invariant free-field state as a normally ordered polynomial in
    /// the `Ω_{a,b}`, peeling off top-degree symbols.
    pub fn express_as_nopoly(&self, v: &FockState, max_degree: u32, order: Ordering) -> Result<NoPoly> {
        self.require_bosonic()?;
        let mut rest = v.clone();
        let mut out = NoPoly::zero();
        let mut last = u32::MAX;
        while let Some(d) = rest.top_degree() {
            if d > max_degree {
                return Err(Error::NotInSpan(format!("degree {d} exceeds bound {max_degree}")));
            }
            if d >= last {
                return Err(Error::NoConvergence(format!("degree {d} did not drop")));
            }
            last = d;
            let q = express_classical(&symbol_classical(&rest, d)?, self.n)?;
            let piece = NoPoly::normal_ordering(&q, order);
            rest = rest.sub(&self.pi(&piece));
            out = out.add(&piece);
        }
        Ok(out)
    }

    /// The unique element with symbol `d_{I,J}` in the kernel of `π`, built by
    /// correcting a normal ordering of `d_{I,J}` degree by degree.
    pub fn construct_dij(&self, i: &[u32], j: &[u32], order: Ordering) -> Result<DijElement> {
        self.require_bosonic()?;
        validate_indices(i, j)?;
        if i.len() != self.n as usize + 1 {
            return Err(Error::InvalidArgument(format!("index lists must have length {}", self.n + 1)));
        }
        let mut poly = NoPoly::normal_ordering(&det_dij(i, j)?, order);
        let mut image = self.pi(&poly);
        let mut last = u32::MAX;
        while let Some(d) = image.top_degree() {
            if d >= last || d >= 2 * self.n + 2 {
                return Err(Error::NoConvergence(format!("image degree {d} did not drop")));
            }
            last = d;
            let q = express_classical(&symbol_classical(&image, d)?, self.n)?;
            let piece = NoPoly::normal_ordering(&q, order);
            image = image.sub(&self.pi(&piece));
            poly = poly.sub(&piece);
        }
        let state = self.abstract_state(&poly);
        Ok(DijElement { n: self.n, i: i.to_vec(), j: j.to_vec(), poly, state })
    }

    /// `D_0 = D_{(0..n),(0..n)}`.
    pub fn d0(&self) -> Result<DijElement> {
        let k: Vec<u32> = (0..=self.n).collect();
        self.construct_dij(&k, &k, Ordering::Ascending)
    }

    /// `l = n^2 + 2n`, the weight minus one of `D_0`.
    pub fn critical(&self) -> u32 {
        self.n * self.n + 2 * self.n
    }
}
