//! Multivariate polynomial gcd over the rationals.
//!
//! Strategy: split off monomial content (which also reduces Laurent `z` to an
//! ordinary variable), then run a primitive pseudo-remainder sequence
//! recursively over the main variable. Coefficient growth is tamed by taking
//! the content out of every remainder. All divisions along the way are exact.
//!
//! The result is canonical: coprime integer coefficients, positive leading
//! coefficient, no `z` factor (powers of `z` are units of the Laurent ring and
//! are handled by the rational-function layer instead).

use super::{Mono, MultiPoly, Var};

/// Greatest common divisor of two polynomials, canonicalized as described in
/// the module docs. `gcd(0, p)` is the canonical form of `p`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return strip_z_unit(&b.primitive_part());
    }
    if b.is_zero() {
        return strip_z_unit(&a.primitive_part());
    }
    let (ma, pa) = strip_monomial(a);
    let (mb, pb) = strip_monomial(b);
    let mg = mono_gcd(&ma, &mb);
    let core = gcd_core(&pa.primitive_part(), &pb.primitive_part());
    core.mul_mono(&mg).primitive_part()
}

/// Remove the `z`-unit factor so the minimum `z` exponent is zero.
fn strip_z_unit(p: &MultiPoly) -> MultiPoly {
    let zmin = p.min_exponent(Var::Z);
    if zmin == 0 {
        p.clone()
    } else {
        p.mul_mono(&Mono::var(Var::Z, -zmin))
    }
}

/// Split `p` into its monomial content and the cofactor with per-variable
/// minimum exponent zero.
fn strip_monomial(p: &MultiPoly) -> (Mono, MultiPoly) {
    let mut mins: Vec<(Var, i32)> = Vec::new();
    for v in p.vars() {
        let e = p.min_exponent(v);
        if e != 0 {
            mins.push((v, e));
        }
    }
    let content = Mono::from_pairs(&mins);
    let inv = Mono::from_pairs(&mins.iter().map(|&(v, e)| (v, -e)).collect::<Vec<_>>());
    (content, p.mul_mono(&inv))
}

/// Componentwise minimum of two monomials, excluding `z` (unit of the ring).
fn mono_gcd(a: &Mono, b: &Mono) -> Mono {
    let mut pairs: Vec<(Var, i32)> = Vec::new();
    for v in a.vars() {
        if v == Var::Z {
            continue;
        }
        let e = a.exponent(v).min(b.exponent(v));
        if e != 0 {
            pairs.push((v, e));
        }
    }
    Mono::from_pairs(&pairs)
}

/// Gcd of two nonzero primitive polynomials whose every variable has minimum
/// exponent zero.
fn gcd_core(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let mut vars = a.vars();
    for v in b.vars() {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    vars.sort();
    let v = match vars.last() {
        None => return MultiPoly::one(), // both constants
        Some(&v) => v,
    };
    let da = a.degree_in(v);
    let db = b.degree_in(v);
    if da == 0 {
        return gcd_core(a, &content_in(b, v));
    }
    if db == 0 {
        return gcd_core(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let g_cont = gcd(&ca, &cb);

    let (mut f, mut g) = if da >= db { (pa, pb) } else { (pb, pa) };
    loop {
        let r = pseudo_rem(&f, &g, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == 0 {
            // A nonzero remainder free of v: the primitive parts are coprime.
            g = MultiPoly::one();
            break;
        }
        let r = make_primitive_in(&r, v);
        f = g;
        g = r;
    }
    g_cont.mul(&g).primitive_part()
}

/// Content of `p` viewed as a polynomial in `v`: gcd of its `v`-coefficients.
fn content_in(p: &MultiPoly, v: Var) -> MultiPoly {
    let mut acc = MultiPoly::zero();
    for e in 0..=p.degree_in(v) {
        let c = p.coeff_of_var(v, e);
        if !c.is_zero() {
            acc = gcd(&acc, &c);
            if acc.is_one() {
                break;
            }
        }
    }
    acc
}

fn make_primitive_in(p: &MultiPoly, v: Var) -> MultiPoly {
    let c = content_in(p, v);
    p.div_exact(&c).expect("content divides").primitive_part()
}

/// Pseudo-remainder of `f` by `g` with respect to `v` (up to a factor of a
/// power of `lc_v(g)`, which the primitive sequence strips anyway).
fn pseudo_rem(f: &MultiPoly, g: &MultiPoly, v: Var) -> MultiPoly {
    let dg = g.degree_in(v);
    let lg = g.coeff_of_var(v, dg);
    let mut r = f.clone();
    loop {
        if r.is_zero() {
            return r;
        }
        let dr = r.degree_in(v);
        if dr < dg {
            return r;
        }
        let lr = r.coeff_of_var(v, dr);
        let shift = MultiPoly::var_pow(v, dr - dg);
        r = lg.mul(&r).sub(&lr.mul(&shift).mul(g));
    }
}
