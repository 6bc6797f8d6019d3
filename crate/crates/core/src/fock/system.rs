use std::fmt;

use num_traits::Zero;

use crate::diffop::{cocycle_monomial, DiffOp};
use crate::scalar::{int, one, Scalar};

use super::word::Mode;

/// A vertex algebra presented by generators whose modes satisfy Lie
/// (super)algebra relations, acting on the vacuum module.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum System {
    /// The universal current algebra of `W(1+∞)` with central charge `c`;
    /// generator `l` is `J^l`, of weight `l + 1`.
    Current { c: Scalar },
    /// `rank` copies of the βγ system. Generators `0..rank` are `β^i`
    /// (weight 1), generators `rank..2 rank` are `γ^i` (weight 0).
    BetaGamma { rank: u32 },
    /// `rank` copies of the bc system, laid out as βγ.
    Bc { rank: u32 },
}

impl System {
    pub fn current(c: i64) -> Self {
        System::Current { c: int(c) }
    }

    pub fn generator_count(&self) -> Option<u32> {
        match self {
            System::Current { .. } => None,
            System::BetaGamma { rank } | System::Bc { rank } => Some(2 * rank),
        }
    }

    pub fn rank(&self) -> u32 {
        match self {
            System::Current { .. } => 0,
            System::BetaGamma { rank } | System::Bc { rank } => *rank,
        }
    }

    pub fn is_valid_gen(&self, g: u32) -> bool {
        self.generator_count().map(|n| g < n).unwrap_or(true)
    }

    pub fn gen_weight(&self, g: u32) -> i64 {
        match self {
            System::Current { .. } => g as i64 + 1,
            System::BetaGamma { rank } | System::Bc { rank } => {
                if g < *rank {
                    1
                } else {
                    0
                }
            }
        }
    }

    pub fn gen_odd(&self, _g: u32) -> bool {
        matches!(self, System::Bc { .. })
    }

    /// Contribution of one mode to the good increasing filtration.
    pub fn mode_degree(&self) -> u32 {
        match self {
            System::Current { .. } => 2,
            _ => 1,
        }
    }

    pub fn gen_name(&self, g: u32) -> String {
        match self {
            System::Current { .. } => format!("J{g}"),
            System::BetaGamma { rank } => {
                if g < *rank {
                    format!("beta{}", g + 1)
                } else {
                    format!("gamma{}", g - rank + 1)
                }
            }
            System::Bc { rank } => {
                if g < *rank {
                    format!("b{}", g + 1)
                } else {
                    format!("c{}", g - rank + 1)
                }
            }
        }
    }

    pub fn parse_gen_name(&self, name: &str) -> Option<u32> {
        let split = name.find(|c: char| c.is_ascii_digit())?;
        let (head, idx) = name.split_at(split);
        let idx: u32 = idx.parse().ok()?;
        let g = match (self, head) {
            (System::Current { .. }, "J") => idx,
            (System::BetaGamma { .. }, "beta") | (System::Bc { .. }, "b") => idx.checked_sub(1)?,
            (System::BetaGamma { rank }, "gamma") | (System::Bc { rank }, "c") => idx.checked_sub(1)? + rank,
            _ => return None,
        };
        self.is_valid_gen(g).then_some(g)
    }

    /// Weight of the state `g(m)|0⟩`-type contribution of one mode.
    pub fn mode_weight(&self, x: Mode) -> i64 {
        self.gen_weight(x.gen) - x.m - 1
    }

    /// Supercommutator `[x, y]`: a combination of modes plus a central scalar.
    pub fn bracket(&self, x: Mode, y: Mode) -> (Vec<(Mode, Scalar)>, Scalar) {
        match self {
            System::Current { c } => {
                let f = DiffOp::monomial(x.m, x.gen, one());
                let g = DiffOp::monomial(y.m, y.gen, one());
                let modes = f
                    .bracket(&g)
                    .terms()
                    .map(|(a, l, v)| (Mode::new(l, a), v.clone()))
                    .collect();
                let central = if c.is_zero() {
                    Scalar::zero()
                } else {
                    cocycle_monomial(x.m, x.gen, y.m, y.gen) * c
                };
                (modes, central)
            }
            System::BetaGamma { rank } => {
                let r = *rank;
                let central = if x.m + y.m + 1 != 0 {
                    Scalar::zero()
                } else if x.gen < r && y.gen == x.gen + r {
                    one()
                } else if y.gen < r && x.gen == y.gen + r {
                    -one()
                } else {
                    Scalar::zero()
                };
                (Vec::new(), central)
            }
            System::Bc { rank } => {
                let r = *rank;
                let paired = (x.gen < r && y.gen == x.gen + r) || (y.gen < r && x.gen == y.gen + r);
                let central = if x.m + y.m + 1 == 0 && paired { one() } else { Scalar::zero() };
                (Vec::new(), central)
            }
        }
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            System::Current { c } => write!(f, "current:{c}"),
            System::BetaGamma { rank } => write!(f, "betagamma:{rank}"),
            System::Bc { rank } => write!(f, "bc:{rank}"),
        }
    }
}

impl std::str::FromStr for System {
    type Err = crate::error::Error;

    /// Parses the `Display` form: `current:c`, `betagamma:n`, `bc:n`.
    fn from_str(s: &str) -> crate::error::Result<Self> {
        let bad = || crate::error::Error::InvalidArgument(format!("unknown system `{s}`"));
        let (kind, arg) = s.split_once(':').ok_or_else(bad)?;
        let rank = || -> crate::error::Result<u32> {
            match arg.trim().parse::<u32>() {
                Ok(n) if n > 0 => Ok(n),
                _ => Err(bad()),
            }
        };
        match kind.trim() {
            "current" => Ok(System::Current { c: crate::scalar::parse(arg)? }),
            "betagamma" => Ok(System::BetaGamma { rank: rank()? }),
            "bc" => Ok(System::Bc { rank: rank()? }),
            _ => Err(bad()),
        }
    }
}
