//! Linear differential operators in d/dx with rational-function
//! coefficients: application to exponential-polynomial functions, exact
//! (noncommutative) composition, and structural comparison.

use std::fmt;

use crate::error::CoreError;
use crate::exppoly::ExpPolyFn;
use crate::poly::Var;
use crate::ratfn::RationalFn;
use crate::scalar::{binomial, Rat};
use num_bigint::BigInt;
use num_rational::BigRational;

/// sum_i coeffs[i] * D^i, with D = d/dx. Trailing zero coefficients are
/// trimmed so the representation is canonical and equality is structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearDiffOp {
    coeffs: Vec<RationalFn>,
}

impl LinearDiffOp {
    pub fn new(mut coeffs: Vec<RationalFn>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        LinearDiffOp { coeffs }
    }

    pub fn zero() -> Self {
        LinearDiffOp { coeffs: vec![] }
    }

    pub fn identity() -> Self {
        LinearDiffOp {
            coeffs: vec![RationalFn::one()],
        }
    }

    /// D^order with unit coefficient.
    pub fn derivative(order: usize) -> Self {
        let mut coeffs = vec![RationalFn::zero(); order + 1];
        coeffs[order] = RationalFn::one();
        LinearDiffOp { coeffs }
    }

    /// Multiplication operator by a fixed rational function.
    pub fn multiplication(f: RationalFn) -> Self {
        LinearDiffOp::new(vec![f])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Order of the operator; the zero operator reports order 0.
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> RationalFn {
        self.coeffs.get(i).cloned().unwrap_or_else(RationalFn::zero)
    }

    pub fn coeffs(&self) -> &[RationalFn] {
        &self.coeffs
    }

    pub fn neg(&self) -> LinearDiffOp {
        LinearDiffOp {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn add(&self, other: &LinearDiffOp) -> LinearDiffOp {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect();
        LinearDiffOp::new(coeffs)
    }

    pub fn sub(&self, other: &LinearDiffOp) -> LinearDiffOp {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> LinearDiffOp {
        LinearDiffOp::new(self.coeffs.iter().map(|a| a.mul_scalar(c)).collect())
    }

    /// Left multiplication by a function: (f * A)[y] = f * (A[y]).
    pub fn mul_ratfn_left(&self, f: &RationalFn) -> LinearDiffOp {
        LinearDiffOp::new(self.coeffs.iter().map(|a| a.mul(f)).collect())
    }

    /// Operator composition: (self ∘ other)[y] = self[other[y]].
    /// Uses D^i (b y^(j)) = sum_r C(i,r) b^(i-r) y^(j+r).
    pub fn compose(&self, other: &LinearDiffOp) -> LinearDiffOp {
        if self.is_zero() || other.is_zero() {
            return LinearDiffOp::zero();
        }
        let max_i = self.coeffs.len() - 1;
        // Derivatives of the inner coefficients up to the outer order.
        let mut derivs: Vec<Vec<RationalFn>> = Vec::with_capacity(other.coeffs.len());
        for b in &other.coeffs {
            let mut chain = vec![b.clone()];
            for i in 0..max_i {
                let d = chain[i].derivative(Var::X);
                chain.push(d);
            }
            derivs.push(chain);
        }
        let mut coeffs =
            vec![RationalFn::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, chain) in derivs.iter().enumerate() {
                for r in 0..=i {
                    let b_der = &chain[i - r];
                    if b_der.is_zero() {
                        continue;
                    }
                    let c = BigRational::from(BigInt::from(binomial(i as u64, r as u64)));
                    let term = a.mul(b_der).mul_scalar(&c);
                    coeffs[j + r] = coeffs[j + r].add(&term);
                }
            }
        }
        LinearDiffOp::new(coeffs)
    }

    /// Applies the operator to e^E R, staying in the exponential-polynomial
    /// class: the result shares the exponent of the argument.
    pub fn apply(&self, f: &ExpPolyFn) -> ExpPolyFn {
        if self.is_zero() || f.is_zero() {
            return ExpPolyFn::zero();
        }
        let chain = f.x_derivative_chain(self.order());
        let mut body = RationalFn::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                body = body.add(&c.mul(&chain[i]));
            }
        }
        ExpPolyFn::new(f.exponent().clone(), body).expect("exponent already validated")
    }

    /// First order at which two operators differ, with both coefficients.
    pub fn first_difference(&self, other: &LinearDiffOp) -> Option<(usize, RationalFn, RationalFn)> {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).find_map(|i| {
            let (a, b) = (self.coeff(i), other.coeff(i));
            if a != b {
                Some((i, a, b))
            } else {
                None
            }
        })
    }

    /// Structural equality check that reports the first mismatch.
    pub fn require_equal(&self, other: &LinearDiffOp) -> Result<(), CoreError> {
        match self.first_difference(other) {
            None => Ok(()),
            Some((order, lhs, rhs)) => Err(CoreError::OperatorMismatch {
                order,
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            }),
        }
    }
}

impl fmt::Display for LinearDiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({})", c)?,
                1 => write!(f, "({}) D", c)?,
                _ => write!(f, "({}) D^{}", c, i)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{x, MultiPoly};
    use crate::scalar::{int, rat};

    fn xf() -> RationalFn {
        RationalFn::from_poly(x())
    }

    fn op(coeffs: Vec<RationalFn>) -> LinearDiffOp {
        LinearDiffOp::new(coeffs)
    }

    /// exp(-x^2/2) * p
    fn gaussian(p: MultiPoly) -> ExpPolyFn {
        ExpPolyFn::new(
            x().pow(2).mul_scalar(&rat(-1, 2)),
            RationalFn::from_poly(p),
        )
        .unwrap()
    }

    #[test]
    fn canonical_trimming_and_order() {
        let a = op(vec![xf(), RationalFn::zero()]);
        assert_eq!(a.order(), 0);
        assert_eq!(a, LinearDiffOp::multiplication(xf()));
        assert!(op(vec![]).is_zero());
        assert_eq!(LinearDiffOp::derivative(3).order(), 3);
    }

    #[test]
    fn factored_oscillator_composition() {
        // (D + x)(D - x) = D^2 - x^2 - 1
        let lower = op(vec![xf(), RationalFn::one()]);
        let raise = op(vec![xf().neg(), RationalFn::one()]);
        let got = lower.compose(&raise);
        let want = op(vec![
            RationalFn::from_poly(&x().pow(2).neg() - &MultiPoly::one()),
            RationalFn::zero(),
            RationalFn::one(),
        ]);
        assert_eq!(got, want);
        // And in the other order the constant flips: (D - x)(D + x) = D^2 - x^2 + 1
        let got = raise.compose(&lower);
        let want = op(vec![
            RationalFn::from_poly(&x().pow(2).neg() + &MultiPoly::one()),
            RationalFn::zero(),
            RationalFn::one(),
        ]);
        assert_eq!(got, want);
    }

    #[test]
    fn composition_is_noncommutative_and_associative() {
        let a = op(vec![RationalFn::zero(), xf()]); // x D
        let d = LinearDiffOp::derivative(1);
        // D (x y') = y' + x y''
        assert_eq!(
            d.compose(&a),
            op(vec![RationalFn::zero(), RationalFn::one(), xf()])
        );
        // x D (y') = x y''
        assert_eq!(
            a.compose(&d),
            op(vec![RationalFn::zero(), RationalFn::zero(), xf()])
        );
        let b = op(vec![RationalFn::new(MultiPoly::one(), x()), RationalFn::one()]);
        let c = op(vec![xf(), xf().mul(&xf())]);
        assert_eq!(
            a.compose(&b).compose(&c),
            a.compose(&b.compose(&c))
        );
    }

    #[test]
    fn application_to_gaussians() {
        // (-D^2 + x^2) e^{-x^2/2} = e^{-x^2/2}
        let t = op(vec![
            RationalFn::from_poly(x().pow(2)),
            RationalFn::zero(),
            RationalFn::one().neg(),
        ]);
        let psi0 = gaussian(MultiPoly::one());
        assert_eq!(t.apply(&psi0), psi0);
        // Lowering: (D + x) (2x e^{-x^2/2}) = 2 e^{-x^2/2}
        let lower = op(vec![xf(), RationalFn::one()]);
        let psi1 = gaussian(x().mul_scalar(&int(2)));
        assert_eq!(lower.apply(&psi1), psi0.scale(&int(2)));
        // Rational coefficient: (1/x) D applied to x^2 (zero exponent).
        let a = op(vec![
            RationalFn::zero(),
            RationalFn::new(MultiPoly::one(), x()),
        ]);
        let f = ExpPolyFn::new(MultiPoly::zero(), RationalFn::from_poly(x().pow(2))).unwrap();
        assert_eq!(
            a.apply(&f),
            ExpPolyFn::new(MultiPoly::zero(), RationalFn::constant(int(2))).unwrap()
        );
    }

    #[test]
    fn linear_algebra_and_mismatch_report() {
        let a = op(vec![xf(), RationalFn::one()]);
        let b = op(vec![RationalFn::one(), RationalFn::one()]);
        assert_eq!(a.sub(&a), LinearDiffOp::zero());
        assert_eq!(a.add(&a), a.scale(&int(2)));
        let (order, lhs, rhs) = a.first_difference(&b).unwrap();
        assert_eq!(order, 0);
        assert_eq!(lhs, xf());
        assert_eq!(rhs, RationalFn::one());
        assert!(a.require_equal(&a).is_ok());
        assert!(matches!(
            a.require_equal(&b),
            Err(CoreError::OperatorMismatch { order: 0, .. })
        ));
    }
}
