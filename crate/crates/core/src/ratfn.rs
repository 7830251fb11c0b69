//! Rational functions: quotients of multivariate polynomials kept in a
//! canonical reduced form after every operation.
//!
//! Canonical form: numerator and denominator coprime, denominator free of
//! `z`-units (minimum `z` exponent zero), denominator primitive with integer
//! coefficients and positive leading coefficient. Equality is then structural.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::One;

use crate::error::CoreError;
use crate::poly::{gcd, Mono, MultiPoly, Var};
use crate::scalar::{int, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFn {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFn {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut f = RationalFn { num, den };
        f.normalize();
        f
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RationalFn {
            num: p,
            den: MultiPoly::one(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        RationalFn::from_poly(MultiPoly::constant(c))
    }

    pub fn zero() -> Self {
        RationalFn::from_poly(MultiPoly::zero())
    }

    pub fn one() -> Self {
        RationalFn::from_poly(MultiPoly::one())
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Polynomial value if the denominator is trivial.
    pub fn as_poly(&self) -> Option<&MultiPoly> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = MultiPoly::one();
            return;
        }
        let g = gcd(&self.num, &self.den);
        if !g.is_one() {
            self.num = self.num.div_exact(&g).expect("gcd divides numerator");
            self.den = self.den.div_exact(&g).expect("gcd divides denominator");
        }
        // Push z-units out of the denominator (z powers are invertible).
        let zmin = self.den.min_exponent(Var::Z);
        if zmin != 0 {
            let shift = Mono::var(Var::Z, -zmin);
            self.num = self.num.mul_mono(&shift);
            self.den = self.den.mul_mono(&shift);
        }
        // Scale so the denominator is primitive with positive leading term.
        let c = self.den.content();
        if !c.is_one() {
            let inv = int(1) / c;
            self.num = self.num.mul_scalar(&inv);
            self.den = self.den.mul_scalar(&inv);
        }
    }

    pub fn neg(&self) -> RationalFn {
        RationalFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &RationalFn) -> RationalFn {
        if self.den == other.den {
            return RationalFn::new(self.num.add(&other.num), self.den.clone());
        }
        // a/b + c/d = (a d' + c b') / (b d') * 1/g with b = g b', d = g d'.
        let g = gcd(&self.den, &other.den);
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = other.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&d1).add(&other.num.mul(&b1));
        let den = self.den.mul(&d1);
        RationalFn::new(num, den)
    }

    pub fn sub(&self, other: &RationalFn) -> RationalFn {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RationalFn) -> RationalFn {
        // Cross-cancel before multiplying to keep intermediates small.
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = other.den.div_exact(&g1).expect("gcd divides");
        let n2 = other.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        RationalFn::new(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn div(&self, other: &RationalFn) -> RationalFn {
        assert!(!other.is_zero(), "division by zero rational function");
        self.mul(&RationalFn {
            num: other.den.clone(),
            den: other.num.clone(),
        })
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> RationalFn {
        self.mul(&RationalFn::from_poly(p.clone()))
    }

    pub fn mul_scalar(&self, c: &Rat) -> RationalFn {
        RationalFn {
            num: self.num.mul_scalar(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> RationalFn {
        let mut acc = RationalFn::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Quotient-rule derivative, reduced.
    pub fn derivative(&self, v: Var) -> RationalFn {
        let n = self.num.derivative(v).mul(&self.den);
        let d = self.num.mul(&self.den.derivative(v));
        RationalFn::new(n.sub(&d), self.den.mul(&self.den))
    }

    pub fn eval_complex(
        &self,
        assign: &BTreeMap<Var, Complex64>,
    ) -> Result<Complex64, CoreError> {
        let den = self.den.eval_complex(assign);
        if den.norm() < 1e-250 {
            let x = assign.get(&Var::X).map(|c| c.re).unwrap_or(f64::NAN);
            let z_abs = assign.get(&Var::Z).map(|c| c.norm()).unwrap_or(f64::NAN);
            return Err(CoreError::PoleAtEvaluation {
                x,
                z_abs,
                den_abs: den.norm(),
            });
        }
        Ok(self.num.eval_complex(assign) / den)
    }
}

/// Determinant of a square matrix of rational functions, via the same
/// subset-sharing Laplace expansion as the polynomial determinant. Every
/// intermediate stays reduced, which keeps the univariate gcd work bounded.
pub fn determinant(mat: &[Vec<RationalFn>]) -> RationalFn {
    let n = mat.len();
    if n == 0 {
        return RationalFn::one();
    }
    assert!(mat.iter().all(|r| r.len() == n), "matrix must be square");
    assert!(n <= 16, "determinant size {} too large for subset expansion", n);
    let mut dp: Vec<RationalFn> = vec![RationalFn::zero(); 1usize << n];
    dp[0] = RationalFn::one();
    for mask in 1..(1usize << n) {
        let k = mask.count_ones() as usize;
        let row = &mat[k - 1];
        let mut acc = RationalFn::zero();
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

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
