//! Exact rational scalars and the handful of combinatorial helpers used
//! throughout the crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

pub fn factorial(n: u64) -> Scalar {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    Scalar::from_integer(acc)
}

/// Falling factorial `x (x-1) ... (x-k+1)`.
pub fn falling(x: i64, k: u32) -> Scalar {
    let mut acc = BigInt::one();
    for i in 0..k as i64 {
        let f = x - i;
        if f == 0 {
            return zero();
        }
        acc *= f;
    }
    Scalar::from_integer(acc)
}

/// Rising factorial `x (x+1) ... (x+k-1)`.
pub fn rising(x: i64, k: u32) -> Scalar {
    let mut acc = BigInt::one();
    for i in 0..k as i64 {
        let f = x + i;
        if f == 0 {
            return zero();
        }
        acc *= f;
    }
    Scalar::from_integer(acc)
}

/// Binomial coefficient with arbitrary integer top, `x choose k`.
pub fn binomial(x: i64, k: u32) -> Scalar {
    falling(x, k) / factorial(k as u64)
}

pub fn sign(k: i64) -> Scalar {
    if k.rem_euclid(2) == 0 {
        one()
    } else {
        -one()
    }
}

/// Parses `p`, `-p`, `p/q` with `q != 0`.
pub fn parse(s: &str) -> Result<Scalar> {
    let bad = || Error::BadRational(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Scalar::new(num, den))
}

/// Canonical `p/q` form, with `p` alone when the denominator is one.
pub fn render(x: &Scalar) -> String {
    x.to_string()
}

/// Multiplies through by the lcm of the denominators and divides by the gcd
/// of the numerators; the first nonzero entry becomes positive.
pub fn primitive(v: &[Scalar]) -> Vec<BigInt> {
    use num_integer::Integer;
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let mut ints: Vec<BigInt> = v.iter().map(|x| (x * &l).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return ints;
    }
    let neg = ints.iter().find(|x| !x.is_zero()).map(|x| x.is_negative()).unwrap_or(false);
    if neg {
        g = -g;
    }
    for x in ints.iter_mut() {
        *x = &*x / &g;
    }
    ints
}
