//! Wire formats. Coefficients are always `"p/q"` strings.

use serde::{Deserialize, Serialize};

use winf_core::fock::{FockState, Mode, System, Terms, Word};
use winf_core::invariant::{InvPoly, QMono};
use winf_core::w1inf::{NoPoly, OmegaFactor};
use winf_core::zhu::{ZMono, ZhuPoly};
use winf_core::{scalar, Error, Result, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SystemJson {
    Current { c: String },
    Betagamma { n: u32 },
    Bc { n: u32 },
}

impl From<&System> for SystemJson {
    fn from(s: &System) -> Self {
        match s {
            System::Current { c } => SystemJson::Current { c: scalar::render(c) },
            System::BetaGamma { rank } => SystemJson::Betagamma { n: *rank },
            System::Bc { rank } => SystemJson::Bc { n: *rank },
        }
    }
}

impl SystemJson {
    pub fn to_system(&self) -> Result<System> {
        Ok(match self {
            SystemJson::Current { c } => System::Current { c: scalar::parse(c)? },
            SystemJson::Betagamma { n } => System::BetaGamma { rank: *n },
            SystemJson::Bc { n } => System::Bc { rank: *n },
        })
    }
}

/// One mode `[name, index, mode]`, e.g. `["J", 2, -1]` or `["beta", 1, -3]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModeJson(pub String, pub u32, pub i64);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub word: Vec<ModeJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateJson {
    pub system: SystemJson,
    pub weight: Option<i64>,
    pub terms: Vec<TermJson>,
}

fn split_name(name: &str) -> (String, u32) {
    let at = name.find(|c: char| c.is_ascii_digit()).unwrap_or(name.len());
    (name[..at].to_string(), name[at..].parse().unwrap_or(0))
}

impl From<&FockState> for StateJson {
    fn from(v: &FockState) -> Self {
        let sys = &v.system;
        let terms = v
            .terms()
            .iter()
            .map(|(w, c)| TermJson {
                coeff: scalar::render(c),
                word: w
                    .iter()
                    .map(|x| {
                        let (name, i) = split_name(&sys.gen_name(x.gen));
                        ModeJson(name, i, x.m)
                    })
                    .collect(),
            })
            .collect();
        StateJson { system: sys.into(), weight: v.weight().ok().flatten(), terms }
    }
}

impl StateJson {
    pub fn to_state(&self) -> Result<FockState> {
        let sys = self.system.to_system()?;
        let mut terms = Terms::new();
        for t in &self.terms {
            let mut w = Word::new();
            for ModeJson(name, i, m) in &t.word {
                let g = sys
                    .parse_gen_name(&format!("{name}{i}"))
                    .ok_or_else(|| Error::InvalidArgument(format!("unknown generator {name}{i}")))?;
                let x = Mode::new(g, *m);
                if x.annihilates() {
                    return Err(Error::InvalidArgument(format!("{name}{i}({m}) is not a creation mode")));
                }
                w.push(x);
            }
            if !w.windows(2).all(|p| p[0] <= p[1]) {
                return Err(Error::InvalidArgument("word is not in PBW order".into()));
            }
            winf_core::fock::add_term(&mut terms, w, scalar::parse(&t.coeff)?);
        }
        Ok(FockState::from_terms(&sys, terms))
    }
}

/// Polynomials in `a^l` (factor `[l]`), `∂^k Ω_{a,b}` (factor `[a, b, k]`),
/// or `Q_{a,b}` (factor `[a, b]`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub variables: String,
    pub terms: Vec<PolyTermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTermJson {
    pub coeff: String,
    pub monomial: Vec<serde_json::Value>,
}

impl From<&ZhuPoly> for PolyJson {
    fn from(p: &ZhuPoly) -> Self {
        let terms = p
            .terms()
            .iter()
            .rev()
            .map(|(m, c)| PolyTermJson {
                coeff: scalar::render(c),
                monomial: m.0.iter().rev().map(|&l| serde_json::json!([l])).collect(),
            })
            .collect();
        PolyJson { variables: "a".into(), terms }
    }
}

impl From<&InvPoly> for PolyJson {
    fn from(p: &InvPoly) -> Self {
        let terms = p
            .terms()
            .iter()
            .rev()
            .map(|(m, c)| PolyTermJson {
                coeff: scalar::render(c),
                monomial: m.0.iter().map(|&(a, b)| serde_json::json!([a, b])).collect(),
            })
            .collect();
        PolyJson { variables: "Q".into(), terms }
    }
}

impl From<&NoPoly> for PolyJson {
    fn from(p: &NoPoly) -> Self {
        let terms = p
            .terms()
            .iter()
            .map(|(fs, c)| PolyTermJson {
                coeff: scalar::render(c),
                monomial: fs
                    .iter()
                    .map(|&OmegaFactor { a, b, deriv }| serde_json::json!([a, b, deriv]))
                    .collect(),
            })
            .collect();
        PolyJson { variables: "Omega".into(), terms }
    }
}

fn coeff(s: &str) -> Result<Scalar> {
    scalar::parse(s)
}

impl PolyJson {
    pub fn to_zhu(&self) -> Result<ZhuPoly> {
        if self.variables != "a" {
            return Err(Error::InvalidArgument(format!("expected variables `a`, found `{}`", self.variables)));
        }
        let mut p = ZhuPoly::zero();
        for t in &self.terms {
            let vars = t
                .monomial
                .iter()
                .map(|v| {
                    serde_json::from_value::<[u32; 1]>(v.clone())
                        .map(|x| x[0])
                        .map_err(|e| Error::InvalidArgument(e.to_string()))
                })
                .collect::<Result<Vec<u32>>>()?;
            p.add_term(ZMono::new(vars), coeff(&t.coeff)?);
        }
        Ok(p)
    }

    pub fn to_inv(&self) -> Result<InvPoly> {
        if self.variables != "Q" {
            return Err(Error::InvalidArgument(format!("expected variables `Q`, found `{}`", self.variables)));
        }
        let mut p = InvPoly::zero();
        for t in &self.terms {
            let vars = t
                .monomial
                .iter()
                .map(|v| {
                    serde_json::from_value::<(u32, u32)>(v.clone()).map_err(|e| Error::InvalidArgument(e.to_string()))
                })
                .collect::<Result<Vec<_>>>()?;
            p.add_term(QMono::new(vars), coeff(&t.coeff)?);
        }
        Ok(p)
    }
}
