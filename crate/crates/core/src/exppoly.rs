//! Functions of the form `exp(E(x,z)) * R(x,z)` with `E` a quadratic
//! polynomial and `R` a rational function, closed under differentiation.
//!
//! Oscillator eigenfunctions, their dressed analogues, and the coherent-state
//! generating functions all live in this class, so exact operator identities
//! reduce to rational-function identities on the body once the common
//! exponential factor is tracked separately.

use std::fmt;

use num_complex::Complex64;

use crate::error::CoreError;
use crate::poly::{MultiPoly, Var};
use crate::ratfn::{determinant, RationalFn};
use crate::scalar::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpPolyFn {
    exponent: MultiPoly,
    body: RationalFn,
}

impl ExpPolyFn {
    /// Builds `exp(exponent) * body`. The exponent must be a polynomial in
    /// `x` and `z` of total degree at most two with no negative powers, so
    /// that differentiation keeps the class closed and evaluation is stable.
    pub fn new(exponent: MultiPoly, body: RationalFn) -> Result<Self, CoreError> {
        for v in exponent.vars() {
            if let Var::T(k) = v {
                return Err(CoreError::InvalidExponent(format!(
                    "exponent contains series variable t{}",
                    k
                )));
            }
        }
        if exponent.min_exponent(Var::Z) < 0 {
            return Err(CoreError::InvalidExponent(
                "exponent contains negative powers of z".into(),
            ));
        }
        if exponent.total_degree() > 2 {
            return Err(CoreError::InvalidExponent(format!(
                "exponent has total degree {} > 2",
                exponent.total_degree()
            )));
        }
        Ok(Self::build(exponent, body))
    }

    /// Internal constructor for exponents already known to be valid.
    fn build(exponent: MultiPoly, body: RationalFn) -> Self {
        if body.is_zero() {
            // Canonical zero so that sums with any exponent are defined.
            return ExpPolyFn {
                exponent: MultiPoly::zero(),
                body: RationalFn::zero(),
            };
        }
        ExpPolyFn { exponent, body }
    }

    pub fn zero() -> Self {
        ExpPolyFn {
            exponent: MultiPoly::zero(),
            body: RationalFn::zero(),
        }
    }

    pub fn one() -> Self {
        ExpPolyFn {
            exponent: MultiPoly::zero(),
            body: RationalFn::one(),
        }
    }

    pub fn exponent(&self) -> &MultiPoly {
        &self.exponent
    }

    pub fn body(&self) -> &RationalFn {
        &self.body
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    pub fn neg(&self) -> ExpPolyFn {
        Self::build(self.exponent.clone(), self.body.neg())
    }

    pub fn scale(&self, c: &Rat) -> ExpPolyFn {
        Self::build(self.exponent.clone(), self.body.mul_scalar(c))
    }

    pub fn mul_ratfn(&self, r: &RationalFn) -> ExpPolyFn {
        Self::build(self.exponent.clone(), self.body.mul(r))
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> ExpPolyFn {
        Self::build(self.exponent.clone(), self.body.mul_poly(p))
    }

    pub fn mul(&self, other: &ExpPolyFn) -> ExpPolyFn {
        if self.is_zero() || other.is_zero() {
            return ExpPolyFn::zero();
        }
        Self::build(
            self.exponent.add(&other.exponent),
            self.body.mul(&other.body),
        )
    }

    /// Sum of two functions sharing the same exponential factor. Mixed
    /// exponents have no representation in this class and are rejected.
    pub fn add(&self, other: &ExpPolyFn) -> Result<ExpPolyFn, CoreError> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.exponent != other.exponent {
            return Err(CoreError::ExponentMismatch(
                self.exponent.to_string(),
                other.exponent.to_string(),
            ));
        }
        Ok(Self::build(
            self.exponent.clone(),
            self.body.add(&other.body),
        ))
    }

    pub fn sub(&self, other: &ExpPolyFn) -> Result<ExpPolyFn, CoreError> {
        self.add(&other.neg())
    }

    /// d/dv (e^E R) = e^E (R' + E_v R).
    pub fn derivative(&self, v: Var) -> ExpPolyFn {
        let bumped = self
            .body
            .derivative(v)
            .add(&self.body.mul_poly(&self.exponent.derivative(v)));
        Self::build(self.exponent.clone(), bumped)
    }

    /// Bodies of the x-derivatives up to the given order: element `i` is the
    /// rational factor of `d^i/dx^i (e^E R)` after pulling out `e^E`.
    pub(crate) fn x_derivative_chain(&self, upto: usize) -> Vec<RationalFn> {
        let ex = RationalFn::from_poly(self.exponent.derivative(Var::X));
        let mut chain = Vec::with_capacity(upto + 1);
        chain.push(self.body.clone());
        for i in 0..upto {
            let prev: &RationalFn = &chain[i];
            chain.push(prev.derivative(Var::X).add(&prev.mul(&ex)));
        }
        chain
    }

    pub fn eval(&self, x: f64, z: Complex64) -> Result<Complex64, CoreError> {
        let mut assign = std::collections::BTreeMap::new();
        assign.insert(Var::X, Complex64::new(x, 0.0));
        assign.insert(Var::Z, z);
        let e = self.exponent.eval_complex(&assign);
        Ok(e.exp() * self.body.eval_complex(&assign)?)
    }
}

/// Wronskian with respect to x. The exponential factor of each column is
/// pulled out of the determinant, leaving a rational-function matrix built
/// from the derivative chains of the bodies.
pub fn wronskian(fs: &[ExpPolyFn]) -> ExpPolyFn {
    let n = fs.len();
    if n == 0 {
        return ExpPolyFn::one();
    }
    let chains: Vec<Vec<RationalFn>> = fs.iter().map(|f| f.x_derivative_chain(n - 1)).collect();
    let mat: Vec<Vec<RationalFn>> = (0..n)
        .map(|i| (0..n).map(|j| chains[j][i].clone()).collect())
        .collect();
    let mut exponent = MultiPoly::zero();
    for f in fs {
        exponent = exponent.add(&f.exponent);
    }
    ExpPolyFn::build(exponent, determinant(&mat))
}

impl fmt::Display for ExpPolyFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent.is_zero() {
            write!(f, "{}", self.body)
        } else {
            write!(f, "exp({}) * [{}]", self.exponent, self.body)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{x, z_pow};
    use crate::scalar::{int, rat};

    /// exp(-x^2/2) * p
    fn gaussian(p: MultiPoly) -> ExpPolyFn {
        ExpPolyFn::new(x().pow(2).mul_scalar(&rat(-1, 2)), RationalFn::from_poly(p)).unwrap()
    }

    #[test]
    fn exponent_validation() {
        assert!(ExpPolyFn::new(x().pow(3), RationalFn::one()).is_err());
        assert!(ExpPolyFn::new(z_pow(-1), RationalFn::one()).is_err());
        assert!(ExpPolyFn::new(crate::poly::t(1), RationalFn::one()).is_err());
        assert!(ExpPolyFn::new(x().mul(&z_pow(1)), RationalFn::one()).is_ok());
    }

    #[test]
    fn derivative_picks_up_exponent() {
        // (e^{-x^2/2})' = -x e^{-x^2/2}
        let f = gaussian(MultiPoly::one());
        let d = f.derivative(Var::X);
        assert_eq!(d, gaussian(x()).neg());
        // Second derivative: (x^2 - 1) e^{-x^2/2}
        let d2 = d.derivative(Var::X);
        assert_eq!(d2, gaussian(&x().pow(2) - &MultiPoly::one()));
    }

    #[test]
    fn product_rule_across_mixed_exponents() {
        let f = gaussian(x());
        let g = ExpPolyFn::new(
            x().pow(2).mul_scalar(&rat(1, 2)),
            RationalFn::from_poly(&x() + &MultiPoly::one()),
        )
        .unwrap();
        let lhs = f.mul(&g).derivative(Var::X);
        let rhs = f
            .derivative(Var::X)
            .mul(&g)
            .add(&f.mul(&g.derivative(Var::X)))
            .unwrap();
        assert_eq!(lhs, rhs);
        // The exponents cancel in the product.
        assert!(f.mul(&g).exponent().is_zero());
    }

    #[test]
    fn addition_requires_matching_exponents() {
        let f = gaussian(x());
        let g = ExpPolyFn::new(MultiPoly::zero(), RationalFn::one()).unwrap();
        assert!(matches!(
            f.add(&g),
            Err(CoreError::ExponentMismatch(_, _))
        ));
        assert_eq!(f.add(&ExpPolyFn::zero()).unwrap(), f);
        assert!(f.sub(&f).unwrap().is_zero());
    }

    #[test]
    fn wronskian_of_gaussian_pair() {
        // Wr[e^{-x^2/2}, x e^{-x^2/2}] = e^{-x^2}
        let w = wronskian(&[gaussian(MultiPoly::one()), gaussian(x())]);
        assert_eq!(w.exponent(), &x().pow(2).mul_scalar(&int(-1)));
        assert_eq!(w.body(), &RationalFn::one());
        // Wronskian of a single function is the function itself.
        let f = gaussian(&x().pow(2) + &MultiPoly::one());
        assert_eq!(wronskian(std::slice::from_ref(&f)), f);
        // Dependent columns give zero.
        let w0 = wronskian(&[f.clone(), f.scale(&int(3))]);
        assert!(w0.is_zero());
    }

    #[test]
    fn evaluation() {
        let f = gaussian(x());
        let got = f.eval(1.5, Complex64::new(0.0, 0.0)).unwrap();
        let want = 1.5 * (-1.5f64 * 1.5 / 2.0).exp();
        assert!((got - Complex64::new(want, 0.0)).norm() < 1e-14);
        // z enters through both exponent and body.
        let g = ExpPolyFn::new(
            x().mul(&z_pow(1)),
            RationalFn::from_poly(z_pow(2)),
        )
        .unwrap();
        let z = Complex64::new(0.0, 1.0);
        let got = g.eval(2.0, z).unwrap();
        let want = (z * 2.0).exp() * z * z;
        assert!((got - want).norm() < 1e-14);
    }
}
