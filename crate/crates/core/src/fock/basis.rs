use crate::error::{Error, Result};

use super::system::System;
use super::word::{word_degree, FockState, Mode, Word};
use crate::scalar::one;

/// Creation modes of the given weight contribution, in PBW order.
pub fn creation_modes(system: &System, d: i64) -> Vec<Mode> {
    let mut v = Vec::new();
    match system {
        System::Current { .. } => {
            for l in 0..d.max(0) {
                v.push(Mode::new(l as u32, l - d));
            }
        }
        System::BetaGamma { rank } | System::Bc { rank } => {
            for g in 0..2 * rank {
                let m = system.gen_weight(g) - d - 1;
                if m <= -1 {
                    v.push(Mode::new(g, m));
                }
            }
        }
    }
    v.sort();
    v
}

/// PBW words of weight `w`, filtration degree at most `degree_bound`,
/// ordered by degree and then by word.
pub fn weight_words(system: &System, w: i64, degree_bound: Option<u32>) -> Result<Vec<Word>> {
    if w < 0 {
        return Ok(Vec::new());
    }
    let has_weight_zero = !matches!(system, System::Current { .. });
    if has_weight_zero && degree_bound.is_none() {
        return Err(Error::InvalidArgument(format!("{system} at weight {w} needs a degree bound")));
    }
    let mut modes: Vec<Mode> = (0..=w).flat_map(|d| creation_modes(system, d)).collect();
    modes.sort();
    let max_len = degree_bound.map(|b| (b / system.mode_degree()) as usize);
    let mut out = Vec::new();
    let mut cur = Word::new();
    rec(system, &modes, 0, w, max_len, &mut cur, &mut out);
    out.sort_by(|a, b| word_degree(system, a).cmp(&word_degree(system, b)).then_with(|| a.cmp(b)));
    Ok(out)
}

fn rec(
    system: &System,
    modes: &[Mode],
    start: usize,
    remaining: i64,
    max_len: Option<usize>,
    cur: &mut Word,
    out: &mut Vec<Word>,
) {
    if remaining == 0 {
        out.push(cur.clone());
    }
    if max_len.map(|l| cur.len() >= l).unwrap_or(false) {
        return;
    }
    for i in start..modes.len() {
        let x = modes[i];
        let wx = system.mode_weight(x);
        if wx > remaining {
            continue;
        }
        if wx == 0 && max_len.is_none() {
            continue;
        }
        cur.push(x);
        let next = if system.gen_odd(x.gen) { i + 1 } else { i };
        rec(system, modes, next, remaining - wx, max_len, cur, out);
        cur.pop();
    }
}

pub fn weight_basis(system: &System, w: i64, degree_bound: Option<u32>) -> Result<Vec<FockState>> {
    Ok(weight_words(system, w, degree_bound)?
        .into_iter()
        .map(|wd| FockState::from_word(system, wd, one()))
        .collect())
}
