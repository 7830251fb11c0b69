//! Hermite polynomials, their conjugate family (real-coefficient images
//! under x -> ix), oscillator eigenfunctions for integer labels of either
//! sign, and the mixed-row determinant that attaches a polynomial to a
//! Maya diagram.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::exppoly::ExpPolyFn;
use crate::maya::MayaDiagram;
use crate::poly::{determinant, x, MultiPoly, Var};
use crate::ratfn::RationalFn;
use crate::scalar::{int, rat, Rat};

fn cached_family(
    cache: &'static OnceLock<Mutex<Vec<MultiPoly>>>,
    n: u32,
    step_sign: i64,
) -> MultiPoly {
    let cache = cache.get_or_init(|| Mutex::new(vec![MultiPoly::one()]));
    let mut guard = cache.lock().expect("polynomial cache poisoned");
    while guard.len() <= n as usize {
        let k = guard.len(); // building index k from k-1 and k-2
        let two_x = x().mul_scalar(&int(2));
        let mut next = two_x.mul(&guard[k - 1]);
        if k >= 2 {
            let prev = guard[k - 2].mul_scalar(&int(step_sign * 2 * (k as i64 - 1)));
            next = next.add(&prev);
        }
        guard.push(next);
    }
    guard[n as usize].clone()
}

/// Physicists' Hermite polynomial H_n.
pub fn hermite(n: u32) -> MultiPoly {
    static CACHE: OnceLock<Mutex<Vec<MultiPoly>>> = OnceLock::new();
    cached_family(&CACHE, n, -1)
}

/// Conjugate family: i^{-n} H_n(ix), satisfying the plus-sign recurrence.
/// All coefficients are positive, so these never vanish on the real line.
pub fn hermite_conjugate(n: u32) -> MultiPoly {
    static CACHE: OnceLock<Mutex<Vec<MultiPoly>>> = OnceLock::new();
    cached_family(&CACHE, n, 1)
}

/// Oscillator eigenfunction for any integer label: Gaussian-decaying with
/// H_n for n >= 0, Gaussian-growing with the conjugate family for n < 0.
pub fn hermite_function(n: i64) -> ExpPolyFn {
    let (sign, body) = if n >= 0 {
        (rat(-1, 2), hermite(n as u32))
    } else {
        (rat(1, 2), hermite_conjugate((-n - 1) as u32))
    };
    ExpPolyFn::new(x().pow(2).mul_scalar(&sign), RationalFn::from_poly(body))
        .expect("quadratic exponent")
}

/// Determinant attached to a Maya diagram: one row per deviation site,
/// conjugate-family rows of increasing order for negative sites and
/// derivative rows for non-negative sites. Equals the Wronskian of the
/// corresponding eigenfunctions with the exponential factor removed.
pub fn pseudo_wronskian(diagram: &MayaDiagram) -> MultiPoly {
    let ks = diagram.index_set();
    let p = ks.len();
    if p == 0 {
        return MultiPoly::one();
    }
    let mut rows: Vec<Vec<MultiPoly>> = Vec::with_capacity(p);
    for k in ks.iter() {
        if k < 0 {
            rows.push(
                (0..p)
                    .map(|j| hermite_conjugate((-k - 1) as u32 + j as u32))
                    .collect(),
            );
        } else {
            let mut row = Vec::with_capacity(p);
            let mut h = hermite(k as u32);
            for _ in 0..p {
                row.push(h.clone());
                h = h.derivative(Var::X);
            }
            rows.push(row);
        }
    }
    determinant(&rows)
}

/// The diagram determinant scaled to its canonical normalization: divided
/// by the pairwise spacing products within the negative and non-negative
/// blocks, with a sign depending on the block sizes. The sign makes the
/// result match the classical Schur specialization for index-zero diagrams
/// and normalizes translated vacuums to the constant one.
pub fn normalized_pseudo_wronskian(diagram: &MayaDiagram) -> MultiPoly {
    let ks = diagram.index_set();
    let p = ks.len();
    let q = ks.negatives();
    let raw = pseudo_wronskian(diagram);
    let mut denom: Rat = int(1);
    let slice = ks.as_slice();
    for i in 0..p {
        for j in (i + 1)..p {
            let same_block = (slice[i] < 0) == (slice[j] < 0);
            if same_block {
                denom *= int(2 * (slice[j] - slice[i]));
            }
        }
    }
    let exponent = (p - q) * q + q * (q.saturating_sub(1)) / 2;
    let sign = if exponent % 2 == 0 { 1 } else { -1 };
    raw.mul_scalar(&(int(sign) / denom))
}

/// Scale factor linking the normalized determinant of a partition's
/// diagram to the classical specialization of its Schur polynomial:
/// 2^n n! / (number of standard tableaux).
pub fn schur_route_factor(lambda: &crate::partition::Partition) -> Rat {
    let n = lambda.size();
    let num = BigInt::from(crate::scalar::factorial(n)) << n;
    BigRational::new(num, BigInt::from(lambda.tableaux_count()))
}
