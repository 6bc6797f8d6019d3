use std::collections::BTreeMap;

use crate::fock::{weight_words, FockState, Mode, Word};
use crate::linalg;
use crate::par;
use crate::scalar::Scalar;

use super::model::Model;

/// Which annihilators are imposed when searching for singular vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Annihilators {
    /// `J^l(k)` for `l ∈ {0, 1, 2}`; these generate the positive part.
    Generating,
    /// `J^l(k)` for every `l ≤ w`.
    Exhaustive,
}

/// Basis of the weight-`w` vectors killed by `J^l(k)` for all `k > l`, excluding the vacuum.
pub fn find_singular(model: &Model, w: i64, which: Annihilators) -> Vec<FockState> {
    if w <= 0 {
        return Vec::new();
    }
    let sys = model.system().clone();
    let words = weight_words(&sys, w, None).expect("current-algebra weight spaces are finite");
    let lmax = match which {
        Annihilators::Generating => 2.min(w as u32),
        Annihilators::Exhaustive => w as u32,
    };
    let mut ops = Vec::new();
    for l in 0..=lmax {
        for k in (l as i64 + 1)..=(l as i64 + w) {
            ops.push(Mode::new(l, k));
        }
    }
    let eng = model.engine();
    // column j: images of the j-th basis word under every operator
    let images = par::map(&words, |wd| {
        ops.iter().enumerate().flat_map(|(oi, &x)| {
            eng.apply_gen(x, wd).iter().map(|(u, c)| ((oi, u.clone()), c.clone())).collect::<Vec<_>>()
        }).collect::<Vec<((usize, Word), Scalar)>>()
    });
    let mut rows: BTreeMap<(usize, Word), Vec<(usize, Scalar)>> = BTreeMap::new();
    for (j, img) in images.into_iter().enumerate() {
        for (key, c) in img {
            rows.entry(key).or_default().push((j, c));
        }
    }
    let rows: Vec<Vec<(usize, Scalar)>> = rows.into_values().collect();
    linalg::nullspace(words.len(), &rows)
        .into_iter()
        .map(|v| {
            let mut s = FockState::zero(&sys);
            for (wd, c) in words.iter().zip(v) {
                s = s.add(&FockState::from_word(&sys, wd.clone(), c));
            }
            s.normalized()
        })
        .collect()
}

/// Checks `J^l(k) v = 0` for every `k > l`; modes with `k - l` above the
/// weight of `v` act by zero on weight grounds, so the check is finite.
pub fn is_singular(model: &Model, v: &FockState) -> bool {
    let eng = model.engine();
    let w = v.max_weight();
    let pairs: Vec<(u32, i64)> =
        (0..=w.max(0) as u32).flat_map(|l| ((l as i64 + 1)..=(l as i64 + w)).map(move |k| (l, k))).collect();
    par::map(&pairs, |&(l, k)| eng.apply_gen_state(Mode::new(l, k), v).is_zero()).into_iter().all(|z| z)
}
