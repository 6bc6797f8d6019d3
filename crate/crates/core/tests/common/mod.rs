#![allow(dead_code)]

use winf_core::scalar::{frac, int, Scalar};
use winf_core::w1inf::{NoPoly, OmegaFactor};

fn om(a: u32, b: u32) -> OmegaFactor {
    OmegaFactor::omega(a, b)
}

fn d(a: u32, b: u32) -> OmegaFactor {
    OmegaFactor { a, b, deriv: 1 }
}

fn poly(terms: Vec<(Scalar, Vec<OmegaFactor>)>) -> NoPoly {
    let mut p = NoPoly::zero();
    for (c, f) in terms {
        p.add_term(f, c);
    }
    p
}

/// `D_0` at n = 1: `:Ω00 Ω11: - :Ω01 Ω10: + (1/2)∂Ω11 + (1/3)J^3`.
pub fn d0_n1() -> NoPoly {
    poly(vec![
        (int(1), vec![om(0, 0), om(1, 1)]),
        (int(-1), vec![om(0, 1), om(1, 0)]),
        (frac(1, 2), vec![d(1, 1)]),
        (frac(1, 3), vec![om(3, 0)]),
    ])
}

pub fn d0_n2_deg6() -> NoPoly {
    poly(vec![
        (int(1), vec![om(0, 0), om(1, 1), om(2, 2)]),
        (int(-1), vec![om(0, 0), om(1, 2), om(2, 1)]),
        (int(-1), vec![om(0, 1), om(1, 0), om(2, 2)]),
        (int(1), vec![om(0, 1), om(1, 2), om(2, 0)]),
        (int(-1), vec![om(0, 2), om(1, 1), om(2, 0)]),
        (int(1), vec![om(0, 2), om(1, 0), om(2, 1)]),
    ])
}

pub fn d0_n2_deg4() -> NoPoly {
    let t = |p: i64, q: i64, a: (u32, u32), b: (u32, u32)| (frac(p, q), vec![om(a.0, a.1), om(b.0, b.1)]);
    poly(vec![
        t(-1, 12, (0, 0), (2, 5)),
        t(1, 4, (0, 1), (2, 4)),
        t(-1, 6, (0, 2), (2, 3)),
        t(-1, 3, (0, 1), (4, 2)),
        t(1, 3, (0, 2), (4, 1)),
        t(-1, 4, (0, 0), (5, 2)),
        t(1, 4, (0, 2), (5, 0)),
        t(-1, 5, (0, 0), (6, 1)),
        t(1, 5, (0, 1), (6, 0)),
        t(2, 3, (1, 1), (2, 3)),
        t(-2, 3, (1, 3), (2, 1)),
        t(-1, 6, (1, 0), (2, 4)),
        t(1, 6, (1, 4), (2, 0)),
        t(1, 3, (1, 1), (3, 2)),
        t(-1, 3, (1, 2), (3, 1)),
        t(1, 4, (1, 0), (4, 2)),
        t(-1, 4, (1, 2), (4, 0)),
        t(1, 5, (1, 0), (5, 1)),
        t(-1, 5, (1, 1), (5, 0)),
        t(-1, 3, (2, 0), (3, 2)),
        t(1, 3, (2, 2), (3, 0)),
        t(-1, 4, (2, 0), (4, 1)),
        t(1, 4, (2, 1), (4, 0)),
    ])
}

pub fn d0_n2_deg2() -> NoPoly {
    poly(vec![
        (frac(-1, 30), vec![d(2, 5)]),
        (frac(-7, 180), vec![d(3, 4)]),
        (frac(-1, 10), vec![d(4, 3)]),
        (frac(-1, 10), vec![d(5, 2)]),
        (frac(7, 180), vec![d(7, 0)]),
        (frac(-1, 120), vec![om(8, 0)]),
    ])
}

pub fn d0_n2() -> NoPoly {
    d0_n2_deg6().add(&d0_n2_deg4()).add(&d0_n2_deg2())
}
