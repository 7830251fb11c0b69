//! Exact scalar arithmetic: arbitrary-precision rationals plus a few
//! combinatorial helpers used throughout the crate.
//!
//! `Rat` (a `num_rational::BigRational`) is kept in lowest terms with a
//! positive denominator by the underlying crate, which is exactly the
//! normal form we rely on for equality tests.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

/// Integer as an exact rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Exact fraction `n / d`. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_zero(r: &Rat) -> bool {
    r.is_zero()
}

/// `n!` as a big natural number.
pub fn factorial(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    for k in 2..=n {
        acc *= BigUint::from(k);
    }
    acc
}

/// `n!` as an exact rational.
pub fn factorial_rat(n: u64) -> Rat {
    Rat::from_integer(BigInt::from(factorial(n)))
}

/// Binomial coefficient `C(n, k)` as a big natural number.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `2^n` as an exact rational (n may be negative).
pub fn pow2(n: i64) -> Rat {
    if n >= 0 {
        Rat::from_integer(BigInt::from(2).pow(n as u32))
    } else {
        int(1) / Rat::from_integer(BigInt::from(2).pow((-n) as u32))
    }
}

/// Best-effort conversion to `f64`; panics if the value overflows the
/// double range (never expected for the magnitudes this crate produces).
pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64()
        .unwrap_or_else(|| panic!("rational {} does not fit in f64", r))
}

/// Render as `p` or `p/q`.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Sign as -1, 0, or 1.
pub fn signum(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}
