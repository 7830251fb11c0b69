//! Schur polynomials in the Miwa-style series variables t1, t2, ...,
//! built from complete Bell polynomials, together with the shift and
//! raising (vertex) operators acting on them.
//!
//! Three independent constructions of the same family — a Jacobi–Trudi
//! determinant, a Wronskian with respect to t1, and iterated raising
//! operators — cross-validate the whole symbolic layer.

use std::sync::{Mutex, OnceLock};

use crate::error::CoreError;
use crate::maya::{insertion, MayaDiagram};
use crate::partition::Partition;
use crate::poly::{determinant, MultiPoly, Var};
use crate::scalar::{int, rat, Rat};

/// Complete Bell polynomial B_k(t1, ..., tk), the z^k coefficient of
/// exp(sum_i t_i z^i). Negative orders are zero. Cached globally.
pub fn bell(k: i64) -> MultiPoly {
    if k < 0 {
        return MultiPoly::zero();
    }
    let k = k as usize;
    assert!(k <= 200, "series order {} too large", k);
    static CACHE: OnceLock<Mutex<Vec<MultiPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![MultiPoly::one()]));
    let mut guard = cache.lock().expect("bell cache poisoned");
    while guard.len() <= k {
        let n = guard.len();
        // n * B_n = sum_{i=1}^{n} i * t_i * B_{n-i}
        let mut acc = MultiPoly::zero();
        for i in 1..=n {
            let ti = MultiPoly::var(Var::T(i as u8));
            acc = acc.add(&ti.mul(&guard[n - i]).mul_scalar(&int(i as i64)));
        }
        guard.push(acc.mul_scalar(&rat(1, n as i64)));
    }
    guard[k].clone()
}

/// Schur polynomial as the determinant det(B_{lambda_i - i + j}).
pub fn schur(lambda: &Partition) -> MultiPoly {
    let ell = lambda.len();
    if ell == 0 {
        return MultiPoly::one();
    }
    let mat: Vec<Vec<MultiPoly>> = (1..=ell)
        .map(|i| {
            (1..=ell)
                .map(|j| bell(lambda.part(i) as i64 - i as i64 + j as i64))
                .collect()
        })
        .collect();
    determinant(&mat)
}

/// The same polynomial as a Wronskian in t1 of Bell polynomials of orders
/// (lambda_i - i) + number of rows, taken in increasing order.
pub fn schur_wronskian_form(lambda: &Partition) -> MultiPoly {
    let ell = lambda.len();
    if ell == 0 {
        return MultiPoly::one();
    }
    // d/dt1 B_n = B_{n-1}, so the Wronskian rows are Bell polynomials of
    // decreasing order and no symbolic differentiation is needed.
    let mat: Vec<Vec<MultiPoly>> = (0..ell)
        .map(|i| {
            (0..ell)
                .map(|j| {
                    let col = ell - j; // parts in reverse order
                    bell(lambda.part(col) as i64 - col as i64 + ell as i64 - i as i64)
                })
                .collect()
        })
        .collect();
    determinant(&mat)
}

/// Maximum total weight of a polynomial in the series variables, where
/// t_k carries weight k. Schur polynomials are homogeneous of weight
/// equal to the partition size.
pub fn weighted_degree(p: &MultiPoly) -> i64 {
    p.terms()
        .map(|(m, _)| {
            m.vars()
                .map(|v| match v {
                    Var::T(k) => k as i64 * m.exponent(v) as i64,
                    _ => 0,
                })
                .sum()
        })
        .max()
        .unwrap_or(0)
}

/// The shift t_k -> t_k - z^{-k}/k applied to every series variable.
pub fn miwa_shift(p: &MultiPoly) -> MultiPoly {
    let mut map = std::collections::BTreeMap::new();
    for v in p.vars() {
        if let Var::T(k) = v {
            let shift = MultiPoly::var(v).sub(
                &MultiPoly::var_pow(Var::Z, -(k as i32)).mul_scalar(&rat(1, k as i64)),
            );
            map.insert(v, shift);
        }
    }
    if map.is_empty() {
        p.clone()
    } else {
        p.substitute(&map)
    }
}

/// Raising operator X_m: the z^m coefficient of the shifted polynomial
/// multiplied by the Bell generating series exp(sum t_i z^i).
pub fn vertex_apply(m: i64, p: &MultiPoly) -> MultiPoly {
    let shifted = miwa_shift(p);
    let lo = shifted.z_span().map(|(lo, _)| lo as i64).unwrap_or(0);
    let mut acc = MultiPoly::zero();
    let kmin = m.max(0);
    let kmax = m - lo;
    let mut k = kmin;
    while k <= kmax {
        let c = shifted.coeff_of_z((m - k) as i32);
        if !c.is_zero() {
            acc = acc.add(&bell(k).mul(&c));
        }
        k += 1;
    }
    acc
}

/// B_b applied as a differential operator with t_i replaced by
/// -(1/i) d/dt_i, acting on p.
fn bell_differential(b: i64, p: &MultiPoly) -> MultiPoly {
    let template = bell(b);
    let mut acc = MultiPoly::zero();
    for (mono, coeff) in template.terms() {
        let mut q = p.clone();
        for v in mono.vars() {
            if let Var::T(i) = v {
                let scale = rat(-1, i as i64);
                for _ in 0..mono.exponent(v) {
                    q = q.derivative(v).mul_scalar(&scale);
                    if q.is_zero() {
                        break;
                    }
                }
            }
            if q.is_zero() {
                break;
            }
        }
        if !q.is_zero() {
            acc = acc.add(&q.mul_scalar(coeff));
        }
    }
    acc
}

/// The raising operator in its expanded double-sum form:
/// X_m = sum_b B_{m+b}(t) * B_b(-d/dt1, -(1/2) d/dt2, ...).
/// One formula covers both signs of m, since B_{m+b} vanishes for b < -m
/// and the differential factor vanishes for b beyond the weight of p.
pub fn vertex_apply_sum(m: i64, p: &MultiPoly) -> MultiPoly {
    let mut acc = MultiPoly::zero();
    for b in (-m).max(0)..=weighted_degree(p) {
        let diff = bell_differential(b, p);
        if !diff.is_zero() {
            acc = acc.add(&bell(m + b).mul(&diff));
        }
    }
    acc
}

/// Schur polynomial built by raising from 1: apply X_{lambda_i} for i from
/// the last row up to the first.
pub fn schur_via_raising(lambda: &Partition) -> MultiPoly {
    let mut p = MultiPoly::one();
    for i in (1..=lambda.len()).rev() {
        p = vertex_apply(lambda.part(i) as i64, &p);
    }
    p
}

/// Action of X_m on S_lambda for every non-member site m in [lo, hi]:
/// returns (m, sign, resulting shape) and verifies each row against the
/// vertex operator itself. Member sites annihilate and are skipped.
pub fn vertex_expansion(
    lambda: &Partition,
    lo: i64,
    hi: i64,
) -> Result<Vec<(i64, i32, Partition)>, CoreError> {
    let diagram = MayaDiagram::from_partition(lambda);
    let s_lam = schur(lambda);
    let mut out = Vec::new();
    for m in lo..=hi {
        if diagram.contains(m) {
            let image = vertex_apply(m, &s_lam);
            assert!(image.is_zero(), "member site {} must annihilate", m);
            continue;
        }
        let (sign, mu) = insertion(lambda, m)?;
        let expect = schur(&mu).mul_scalar(&int(sign as i64));
        let got = vertex_apply(m, &s_lam);
        assert_eq!(got, expect, "vertex action at {} disagrees with insertion", m);
        out.push((m, sign, mu));
    }
    Ok(out)
}

/// Specialization t1 -> x, t2 -> c, t_k -> 0 for k >= 3; with c = -1/4
/// this carries Schur polynomials onto scaled Hermite polynomials.
pub fn specialize_classical(p: &MultiPoly, t2: &Rat) -> MultiPoly {
    let mut map = std::collections::BTreeMap::new();
    for v in p.vars() {
        match v {
            Var::T(1) => {
                map.insert(v, MultiPoly::var(Var::X));
            }
            Var::T(2) => {
                map.insert(v, MultiPoly::constant(t2.clone()));
            }
            Var::T(_) => {
                map.insert(v, MultiPoly::zero());
            }
            _ => {}
        }
    }
    if map.is_empty() {
        p.clone()
    } else {
        p.substitute(&map)
    }
}
