//! Sparse multivariate polynomials over exact rationals.
//!
//! Variables are drawn from a fixed universe: the Miwa-type time variables
//! `t1, t2, ...`, the position variable `x`, and the spectral variable `z`.
//! Exponents of `z` may be negative (Laurent polynomial in `z`); all other
//! variables carry non-negative exponents only.
//!
//! Terms live in a `BTreeMap` keyed by monomial, ordered graded-lexicographically
//! with `t1 < t2 < ... < x < z`, which gives deterministic iteration, printing,
//! and a canonical leading term. Zero coefficients are never stored.

mod gcd;
pub mod univar;

pub use gcd::gcd;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::CoreError;
use crate::scalar::{int, Rat};

/// A variable of the polynomial ring. Declaration order gives the variable
/// order `t1 < t2 < ... < x < z` used everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// Symmetric-function time variable `t_k` (1-based).
    T(u8),
    /// Position variable.
    X,
    /// Spectral variable; the only variable allowed negative exponents.
    Z,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::T(k) => write!(f, "t{}", k),
            Var::X => write!(f, "x"),
            Var::Z => write!(f, "z"),
        }
    }
}

/// A monomial: strictly increasing variable list with non-zero exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mono(Vec<(Var, i32)>);

impl Mono {
    pub fn one() -> Self {
        Mono(Vec::new())
    }

    /// Single-variable monomial `v^e`. `e == 0` gives the unit monomial.
    ///
    /// Negative exponents are only meaningful for `z` in stored polynomials;
    /// transient negative exponents on other variables appear internally as
    /// division cofactors and never survive into a `MultiPoly`.
    pub fn var(v: Var, e: i32) -> Self {
        if e == 0 {
            return Mono::one();
        }
        Mono(vec![(v, e)])
    }

    /// Build from (variable, exponent) pairs; zero exponents are dropped.
    pub fn from_pairs(pairs: &[(Var, i32)]) -> Self {
        let mut m: Vec<(Var, i32)> = pairs.iter().copied().filter(|&(_, e)| e != 0).collect();
        m.sort_by_key(|&(v, _)| v);
        for w in m.windows(2) {
            assert!(w[0].0 != w[1].0, "duplicate variable in monomial");
        }
        Mono(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, v: Var) -> i32 {
        self.0
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().map(|&(v, _)| v)
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|&(_, e)| e as i64).sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = self.0[i].1 + other.0[j].1;
                    if e != 0 {
                        out.push((self.0[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Mono(out)
    }

    /// `self / other` if the quotient is a valid monomial (negative exponents
    /// only ever on `z`), else `None`.
    pub fn try_div(&self, other: &Mono) -> Option<Mono> {
        let inv = Mono(other.0.iter().map(|&(v, e)| (v, -e)).collect());
        let q = self.mul(&inv);
        if q.0.iter().all(|&(v, e)| e > 0 || v == Var::Z) {
            Some(q)
        } else {
            None
        }
    }
}

/// Graded-lexicographic order: total degree first, ties broken by comparing
/// exponents from the highest variable (`z`) downward.
impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        // Walk both exponent lists from the highest variable down.
        let (mut i, mut j) = (self.0.len(), other.0.len());
        loop {
            if i == 0 && j == 0 {
                return Ordering::Equal;
            }
            let (va, ea) = if i > 0 { self.0[i - 1] } else { (Var::T(0), 0) };
            let (vb, eb) = if j > 0 { other.0[j - 1] } else { (Var::T(0), 0) };
            if i > 0 && (j == 0 || va > vb) {
                // `va` appears only in self at this level.
                match ea.cmp(&0) {
                    Ordering::Equal => unreachable!("zero exponent stored"),
                    o => return o,
                }
            } else if j > 0 && (i == 0 || vb > va) {
                match 0.cmp(&eb) {
                    Ordering::Equal => unreachable!("zero exponent stored"),
                    o => return o,
                }
            } else {
                match ea.cmp(&eb) {
                    Ordering::Equal => {
                        i -= 1;
                        j -= 1;
                    }
                    o => return o,
                }
            }
        }
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for &(v, e) in &self.0 {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v)?;
            } else {
                write!(f, "{}^{}", v, e)?;
            }
        }
        Ok(())
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    terms: BTreeMap<Mono, Rat>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        MultiPoly::constant(int(1))
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::one(), c);
        }
        MultiPoly { terms }
    }

    pub fn var(v: Var) -> Self {
        MultiPoly::var_pow(v, 1)
    }

    /// `v^e`; `e` may be negative only for `z`.
    pub fn var_pow(v: Var, e: i32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Mono::var(v, e), int(1));
        MultiPoly { terms }
    }

    pub fn monomial(m: Mono, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms(list: Vec<(Mono, Rat)>) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in list {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    /// Constant value if the polynomial is constant (including zero).
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(int(0)),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                if m.is_one() {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map(|c| c.is_one()).unwrap_or(false)
    }

    /// Leading (largest) monomial and coefficient in graded-lex order.
    pub fn leading(&self) -> Option<(&Mono, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, m: &Mono) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(|| int(0))
    }

    /// All variables that actually occur.
    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = Vec::new();
        for m in self.terms.keys() {
            for v in m.vars() {
                if !vs.contains(&v) {
                    vs.push(v);
                }
            }
        }
        vs.sort();
        vs
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) != 0)
    }

    /// Highest exponent of `v` (0 for a polynomial free of `v`; considers the
    /// maximum over terms, which may be negative for pure `z`-Laurent tails).
    pub fn degree_in(&self, v: Var) -> i32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    /// Lowest exponent of `v` over all terms (0 if some term is free of `v`).
    pub fn min_exponent(&self, v: Var) -> i32 {
        self.terms.keys().map(|m| m.exponent(v)).min().unwrap_or(0)
    }

    pub fn total_degree(&self) -> i64 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        // Multiply the smaller operand through the larger one.
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = MultiPoly::zero();
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn mul_scalar(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Partial derivative with respect to `v` (Laurent-aware for `z`).
    pub fn derivative(&self, v: Var) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let lowered = m.mul(&Mono::var(v, -1));
            out.add_term(lowered, c * int(e as i64));
        }
        out
    }

    /// Simultaneous substitution of polynomials for variables. Substituted
    /// variables must occur with non-negative exponents.
    pub fn substitute(&self, map: &BTreeMap<Var, MultiPoly>) -> MultiPoly {
        let mut powers: BTreeMap<(Var, u32), MultiPoly> = BTreeMap::new();
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut kept: Vec<(Var, i32)> = Vec::new();
            let mut acc: Option<MultiPoly> = None;
            for &(v, e) in &m.0 {
                if let Some(rep) = map.get(&v) {
                    assert!(e >= 0, "cannot substitute into negative power of {}", v);
                    let p = powers
                        .entry((v, e as u32))
                        .or_insert_with(|| rep.pow(e as u32))
                        .clone();
                    acc = Some(match acc {
                        None => p,
                        Some(a) => a.mul(&p),
                    });
                } else {
                    kept.push((v, e));
                }
            }
            let base = MultiPoly::monomial(Mono(kept), c.clone());
            let term = match acc {
                None => base,
                Some(a) => base.mul(&a),
            };
            out = out.add(&term);
        }
        out
    }

    /// Coefficient of `v^e` as a polynomial in the remaining variables.
    pub fn coeff_of_var(&self, v: Var, e: i32) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            if m.exponent(v) == e {
                out.add_term(m.mul(&Mono::var(v, -e)), c.clone());
            }
        }
        out
    }

    /// Coefficient of `z^e` as a polynomial in the remaining variables.
    pub fn coeff_of_z(&self, e: i32) -> MultiPoly {
        self.coeff_of_var(Var::Z, e)
    }

    /// Inclusive range of `z` exponents present; `None` for the zero polynomial.
    pub fn z_span(&self) -> Option<(i32, i32)> {
        if self.is_zero() {
            return None;
        }
        let mut lo = i32::MAX;
        let mut hi = i32::MIN;
        for m in self.terms.keys() {
            let e = m.exponent(Var::Z);
            lo = lo.min(e);
            hi = hi.max(e);
        }
        Some((lo, hi))
    }

    /// Exact evaluation homomorphism into complex doubles.
    pub fn eval_complex(&self, assign: &BTreeMap<Var, Complex64>) -> Complex64 {
        let mut sum = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut term = Complex64::new(c.to_f64().expect("coefficient out of f64 range"), 0.0);
            for &(v, e) in &m.0 {
                let val = assign
                    .get(&v)
                    .unwrap_or_else(|| panic!("no assignment for variable {}", v));
                term *= val.powi(e);
            }
            sum += term;
        }
        sum
    }

    pub fn eval_f64(&self, assign: &BTreeMap<Var, f64>) -> f64 {
        let complex: BTreeMap<Var, Complex64> = assign
            .iter()
            .map(|(&v, &x)| (v, Complex64::new(x, 0.0)))
            .collect();
        self.eval_complex(&complex).re
    }

    /// Rational content: the positive rational `c` such that `self / c` has
    /// coprime integer coefficients, carrying the sign of the leading term.
    /// Zero for the zero polynomial.
    pub fn content(&self) -> Rat {
        if self.is_zero() {
            return int(0);
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut content = Rat::new(num_gcd, den_lcm);
        if self.leading().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            content = -content;
        }
        content
    }

    /// `self / content()`: integer-coefficient, coprime, positive leading term.
    pub fn primitive_part(&self) -> MultiPoly {
        if self.is_zero() {
            return MultiPoly::zero();
        }
        let c = self.content();
        self.mul_scalar(&(int(1) / c))
    }

    /// Exact division; `Err` if `other` does not divide `self`.
    ///
    /// Laurent factors of `z` are split off first so the long division runs
    /// over ordinary (well-founded) monomials and is guaranteed to terminate.
    pub fn div_exact(&self, other: &MultiPoly) -> Result<MultiPoly, CoreError> {
        assert!(!other.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Ok(MultiPoly::zero());
        }
        let za = self.min_exponent(Var::Z);
        let zb = other.min_exponent(Var::Z);
        let mut rem = self.mul_mono(&Mono::var(Var::Z, -za));
        let dvr = other.mul_mono(&Mono::var(Var::Z, -zb));
        let mut quot = MultiPoly::zero();
        let (lm, lc) = {
            let (m, c) = dvr.leading().unwrap();
            (m.clone(), c.clone())
        };
        while !rem.is_zero() {
            let (rm, rc) = {
                let (m, c) = rem.leading().unwrap();
                (m.clone(), c.clone())
            };
            let not_div =
                || CoreError::NotDivisible(self.to_string(), other.to_string());
            let qm = rm.try_div(&lm).ok_or_else(not_div)?;
            if qm.exponent(Var::Z) < 0 {
                // Both sides have z-minimum 0, so a true quotient cannot dip
                // into negative z powers.
                return Err(not_div());
            }
            let qc = rc / &lc;
            let t = MultiPoly::monomial(qm, qc);
            rem = rem.sub(&t.mul(&dvr));
            quot = quot.add(&t);
        }
        Ok(quot.mul_mono(&Mono::var(Var::Z, za - zb)))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Leading term first.
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_str = crate::scalar::format_rat(&abs);
            if m.is_one() {
                write!(f, "{}", coeff_str)?;
            } else if abs.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", coeff_str, m)?;
            }
        }
        Ok(())
    }
}

impl std::ops::Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        MultiPoly::add(self, rhs)
    }
}

impl std::ops::Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        MultiPoly::sub(self, rhs)
    }
}

impl std::ops::Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        MultiPoly::mul(self, rhs)
    }
}

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly::neg(self)
    }
}

/// Determinant of a square polynomial matrix, computed division-free by
/// dynamic programming over column subsets (Laplace expansion sharing minors).
/// This avoids the coefficient blow-up of fraction-free elimination on sparse
/// symbolic entries.
pub fn determinant(mat: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = mat.len();
    if n == 0 {
        return MultiPoly::one();
    }
    assert!(mat.iter().all(|r| r.len() == n), "matrix must be square");
    assert!(n <= 16, "determinant size {} too large for subset expansion", n);
    let mut dp: Vec<MultiPoly> = vec![MultiPoly::zero(); 1usize << n];
    dp[0] = MultiPoly::one();
    for mask in 1..(1usize << n) {
        let k = mask.count_ones() as usize;
        let row = &mat[k - 1];
        let mut acc = MultiPoly::zero();
        let mut idx = 0usize;
        for (j, entry) in row.iter().enumerate() {
            if mask & (1 << j) == 0 {
                continue;
            }
            let sub = &dp[mask & !(1 << j)];
            if !sub.is_zero() && !entry.is_zero() {
                let term = entry.mul(sub);
                if (k - 1 + idx) % 2 == 0 {
                    acc = acc.add(&term);
                } else {
                    acc = acc.sub(&term);
                }
            }
            idx += 1;
        }
        dp[mask] = acc;
    }
    dp.pop().expect("dp table is non-empty")
}

/// Convenience constructors used pervasively in tests and builders.
pub fn x() -> MultiPoly {
    MultiPoly::var(Var::X)
}

pub fn z_pow(e: i32) -> MultiPoly {
    MultiPoly::var_pow(Var::Z, e)
}

pub fn t(k: u8) -> MultiPoly {
    MultiPoly::var(Var::T(k))
}
