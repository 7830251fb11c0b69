//! Dense univariate views: polynomial division and exact real-root counting
//! via Sturm chains. Used for regularity analysis (a Wronskian polynomial is
//! admissible only when it has no real zeros) and for partial-fraction style
//! rendering of potentials.

use num_traits::Zero;

use super::{MultiPoly, Var};
use crate::scalar::{int, signum, Rat};

/// Dense coefficient vector (ascending powers) of a polynomial in the single
/// variable `v`. `None` if other variables occur or `v` has negative powers.
pub fn to_dense(p: &MultiPoly, v: Var) -> Option<Vec<Rat>> {
    for (m, _) in p.terms() {
        for w in m.vars() {
            if w != v {
                return None;
            }
        }
    }
    if p.min_exponent(v) < 0 {
        return None;
    }
    let d = p.degree_in(v).max(0) as usize;
    let mut out = vec![int(0); d + 1];
    for (m, c) in p.terms() {
        out[m.exponent(v) as usize] = c.clone();
    }
    Some(out)
}

pub fn from_dense(v: Var, coeffs: &[Rat]) -> MultiPoly {
    let mut p = MultiPoly::zero();
    for (e, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            p = p.add(&MultiPoly::monomial(
                super::Mono::var(v, e as i32),
                c.clone(),
            ));
        }
    }
    p
}

fn trim(mut c: Vec<Rat>) -> Vec<Rat> {
    while c.len() > 1 && c.last().map(|x| x.is_zero()).unwrap_or(false) {
        c.pop();
    }
    c
}

fn deg(c: &[Rat]) -> Option<usize> {
    if c.len() == 1 && c[0].is_zero() {
        None
    } else {
        Some(c.len() - 1)
    }
}

fn is_zero_poly(c: &[Rat]) -> bool {
    deg(c).is_none()
}

/// Euclidean division of dense univariate polynomials: `a = q*b + r`.
pub fn div_rem_dense(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let db = deg(b).expect("division by zero polynomial");
    let mut r = trim(a.to_vec());
    if is_zero_poly(&r) || r.len() - 1 < db {
        return (vec![int(0)], r);
    }
    let mut q = vec![int(0); r.len() - db];
    let lead = b[db].clone();
    while !is_zero_poly(&r) && r.len() - 1 >= db {
        let dr = r.len() - 1;
        let f = &r[dr] / &lead;
        q[dr - db] = f.clone();
        for i in 0..=db {
            let t = &b[i] * &f;
            r[dr - db + i] -= t;
        }
        r = trim(r);
        if dr == 0 {
            break;
        }
    }
    (trim(q), r)
}

fn derivative_dense(c: &[Rat]) -> Vec<Rat> {
    if c.len() <= 1 {
        return vec![int(0)];
    }
    let mut out = Vec::with_capacity(c.len() - 1);
    for (e, coef) in c.iter().enumerate().skip(1) {
        out.push(coef * int(e as i64));
    }
    trim(out)
}

fn gcd_dense(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut f = trim(a.to_vec());
    let mut g = trim(b.to_vec());
    while !is_zero_poly(&g) {
        let (_, r) = div_rem_dense(&f, &g);
        f = g;
        g = r;
    }
    f
}

/// Number of distinct real roots of a univariate polynomial in `v`, counted
/// exactly with a Sturm chain on the square-free part. Panics on the zero
/// polynomial; a nonzero constant has no roots.
pub fn count_distinct_real_roots(p: &MultiPoly, v: Var) -> usize {
    let dense = to_dense(p, v).expect("polynomial is not univariate");
    assert!(!is_zero_poly(&dense), "zero polynomial has no root count");
    if deg(&dense) == Some(0) {
        return 0;
    }
    // Square-free part keeps the same root set and makes the chain a true
    // Sturm sequence.
    let d = derivative_dense(&dense);
    let g = gcd_dense(&dense, &d);
    let (sf, _) = div_rem_dense(&dense, &g);
    if deg(&sf) == Some(0) {
        return 0;
    }
    let mut chain: Vec<Vec<Rat>> = vec![sf.clone(), derivative_dense(&sf)];
    loop {
        let last = &chain[chain.len() - 1];
        if is_zero_poly(last) || deg(last) == Some(0) {
            break;
        }
        let prev = &chain[chain.len() - 2];
        let (_, r) = div_rem_dense(prev, last);
        let neg: Vec<Rat> = r.iter().map(|c| -c).collect();
        chain.push(trim(neg));
    }
    let variations = |at_minus_infinity: bool| -> usize {
        let mut count = 0;
        let mut prev_sign = 0i32;
        for poly in &chain {
            if is_zero_poly(poly) {
                continue;
            }
            let d = deg(poly).unwrap();
            let mut s = signum(&poly[d]);
            if at_minus_infinity && d % 2 == 1 {
                s = -s;
            }
            if s != 0 && prev_sign != 0 && s != prev_sign {
                count += 1;
            }
            if s != 0 {
                prev_sign = s;
            }
        }
        count
    };
    variations(true) - variations(false)
}
