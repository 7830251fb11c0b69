//! Extended coherent states: a closed-form generating function for each
//! partition, its eigenfunction expansion, ladder eigenrelations, circular
//! time evolution, and uncertainty-product curves.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::CoreError;
use crate::exppoly::ExpPolyFn;
use crate::partition::Partition;
use crate::poly::{x, z_pow, MultiPoly, Var};
use crate::quadrature::{integrate_vec, QuadratureSettings};
use crate::ratfn::RationalFn;
use crate::rational::RationalExtension;
use crate::scalar::{factorial_rat, int, pow2, rat, Rat};
use crate::schur::{bell, schur, specialize_classical};

/// Value substituted for the k-th symmetric-function time: its classical
/// value minus `z^{-k}/k`.
fn time_value(k: u8) -> MultiPoly {
    let shift = z_pow(-(k as i32)).mul_scalar(&rat(-1, k as i64));
    match k {
        1 => x().add(&shift),
        2 => MultiPoly::constant(rat(-1, 4)).add(&shift),
        _ => shift,
    }
}

/// The generating function of the extended coherent states attached to a
/// partition: a single exponential-rational expression in x and z whose
/// z-expansion produces every decaying eigenfunction of the extension.
#[derive(Debug, Clone)]
pub struct CoherentFamily {
    partition: Partition,
    extension: RationalExtension,
    state: ExpPolyFn,
}

impl CoherentFamily {
    pub fn new(lambda: &Partition) -> Self {
        let s = schur(lambda);
        let mut map = BTreeMap::new();
        for v in s.vars() {
            if let Var::T(k) = v {
                map.insert(v, time_value(k));
            }
        }
        let num = s.substitute(&map);
        let den = specialize_classical(&s, &rat(-1, 4));
        let exponent = x()
            .pow(2)
            .mul_scalar(&rat(-1, 2))
            .add(&x().mul(&z_pow(1)))
            .sub(&z_pow(2).mul_scalar(&rat(1, 4)));
        let state = ExpPolyFn::new(exponent, RationalFn::new(num, den))
            .expect("quadratic exponent in x and z");
        CoherentFamily {
            partition: lambda.clone(),
            extension: RationalExtension::from_partition(lambda),
            state,
        }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn extension(&self) -> &RationalExtension {
        &self.extension
    }

    pub fn state(&self) -> &ExpPolyFn {
        &self.state
    }

    /// `T psi - (2 z d/dz + 1 + 2*index) psi`; identically zero, which makes
    /// the circular-in-z time evolution exact.
    pub fn evolution_defect(&self) -> ExpPolyFn {
        let sigma = self.extension.index();
        let applied = self.extension.hamiltonian().apply(&self.state);
        let scaled = self
            .state
            .derivative(Var::Z)
            .mul_poly(&z_pow(1))
            .scale(&int(2))
            .add(&self.state.scale(&int(1 + 2 * sigma)))
            .expect("same exponent");
        applied.sub(&scaled).expect("same exponent")
    }

    /// `L_q psi - z^q psi` for a critical shift `q`; identically zero.
    pub fn ladder_defect(&self, q: i64) -> Result<ExpPolyFn, CoreError> {
        let lad = self.extension.annihilator(q)?;
        let lhs = lad.apply(&self.state);
        let rhs = self.state.mul_poly(&z_pow(q as i32));
        lhs.sub(&rhs)
    }

    /// Largest relative deviation of `L_q psi` from `z^q psi` over sample
    /// points, evaluated numerically.
    pub fn ladder_residual(
        &self,
        q: i64,
        samples: &[(f64, Complex64)],
    ) -> Result<f64, CoreError> {
        let lad = self.extension.annihilator(q)?;
        let lhs = lad.apply(&self.state);
        let mut worst = 0.0f64;
        for &(x, z) in samples {
            let a = lhs.eval(x, z)?;
            let b = z.powi(q as i32) * self.state.eval(x, z)?;
            let scale = b.norm().max(1e-300);
            worst = worst.max((a - b).norm() / scale);
        }
        Ok(worst)
    }

    /// Coefficient of `z^j` in `e^{x^2/2} psi`, as an exact rational function
    /// of x. Only finitely many Bell terms contribute.
    pub fn series_coefficient(&self, j: i64) -> RationalFn {
        let body = self.state.body();
        let (lo, hi) = match body.num().z_span() {
            Some(span) => span,
            None => (0, 0),
        };
        let mut acc = MultiPoly::zero();
        let k_min = (j - hi as i64).max(0);
        let k_max = j - lo as i64;
        let mut k = k_min;
        while k <= k_max {
            let slice = body.num().coeff_of_z((j - k) as i32);
            if !slice.is_zero() {
                let b = specialize_classical(&bell(k), &rat(-1, 4));
                acc = acc.add(&b.mul(&slice));
            }
            k += 1;
        }
        RationalFn::new(acc, body.den().clone())
    }

    /// The coefficient the expansion must produce at `z^j`: zero when the
    /// label `j + index` sits inside the diagram (a hole in the spectrum),
    /// otherwise the eigenfunction body times an explicit rational constant.
    pub fn expected_coefficient(&self, j: i64) -> RationalFn {
        let sigma = self.extension.index();
        let m = j + sigma;
        if self.extension.diagram().contains(m) {
            return RationalFn::zero();
        }
        let ell = self.partition.len() as i64;
        let mut c: Rat = int(1);
        for (i, part) in self.partition.parts().iter().enumerate() {
            c *= int(m - (*part as i64 - (i as i64 + 1)));
        }
        let depth = m - sigma + ell;
        assert!(depth >= 0, "labels below the diagram are members");
        c /= factorial_rat(depth as u64);
        c *= pow2(sigma - m);
        self.extension.eigenfunction(m).body().mul_scalar(&c)
    }
}

/// A coherent state moving on the circle `z = alpha e^{-2 i t}` with the
/// global phase `e^{-i (1 + 2*index) t}`.
#[derive(Debug, Clone)]
pub struct EvolvedState {
    family: CoherentFamily,
    alpha: f64,
    hamiltonian_applied: ExpPolyFn,
}

impl EvolvedState {
    pub fn new(family: CoherentFamily, alpha: f64) -> Self {
        let hamiltonian_applied = family.extension().hamiltonian().apply(family.state());
        EvolvedState {
            family,
            alpha,
            hamiltonian_applied,
        }
    }

    pub fn family(&self) -> &CoherentFamily {
        &self.family
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn z_at(&self, t: f64) -> Complex64 {
        Complex64::from_polar(self.alpha, -2.0 * t)
    }

    fn phase(&self, t: f64) -> Complex64 {
        let omega = 1.0 + 2.0 * self.family.extension().index() as f64;
        Complex64::from_polar(1.0, -omega * t)
    }

    pub fn eval(&self, x: f64, t: f64) -> Result<Complex64, CoreError> {
        Ok(self.phase(t) * self.family.state().eval(x, self.z_at(t))?)
    }

    pub fn hamiltonian_eval(&self, x: f64, t: f64) -> Result<Complex64, CoreError> {
        Ok(self.phase(t) * self.hamiltonian_applied.eval(x, self.z_at(t))?)
    }

    /// `| i d/dt psi - T psi |` with the time derivative taken by central
    /// differences of width `dt`.
    pub fn schrodinger_residual(&self, x: f64, t: f64, dt: f64) -> Result<f64, CoreError> {
        let plus = self.eval(x, t + dt)?;
        let minus = self.eval(x, t - dt)?;
        let ddt = (plus - minus) / (2.0 * dt);
        let rhs = self.hamiltonian_eval(x, t)?;
        Ok((Complex64::i() * ddt - rhs).norm())
    }
}

/// One time sample of the uncertainty product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UncertaintyPoint {
    pub t: f64,
    pub var_x: f64,
    pub var_p: f64,
    pub product: f64,
}

/// Uncertainty curve of an evolved coherent state.
#[derive(Debug, Clone)]
pub struct UncertaintyReport {
    pub partition: Partition,
    pub alpha: f64,
    pub points: Vec<UncertaintyPoint>,
}

impl UncertaintyReport {
    pub fn to_csv(&self) -> String {
        let parts: Vec<String> = self
            .partition
            .parts()
            .iter()
            .map(|p| p.to_string())
            .collect();
        let label = format!("\"{}\"", parts.join(","));
        let mut out = String::from("t,var_x,var_p,product,alpha,lambda\n");
        for p in &self.points {
            out.push_str(&format!(
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{}\n",
                p.t, p.var_x, p.var_p, p.product, self.alpha, label
            ));
        }
        out
    }
}

/// Flattened evaluator for one exponential-rational expression: exponent,
/// numerator and denominator as (coefficient, x power, z power) triples.
struct Compiled {
    exp: Vec<(f64, i32, i32)>,
    num: Vec<(f64, i32, i32)>,
    den: Vec<(f64, i32, i32)>,
}

fn flatten(p: &MultiPoly) -> Vec<(f64, i32, i32)> {
    p.terms()
        .map(|(m, c)| {
            debug_assert!(m.vars().all(|v| v == Var::X || v == Var::Z));
            (
                crate::scalar::to_f64(c),
                m.exponent(Var::X),
                m.exponent(Var::Z),
            )
        })
        .collect()
}

impl Compiled {
    fn new(f: &ExpPolyFn) -> Compiled {
        Compiled {
            exp: flatten(f.exponent()),
            num: flatten(f.body().num()),
            den: flatten(f.body().den()),
        }
    }

    fn eval(&self, x: f64, z: Complex64) -> Complex64 {
        let term_sum = |terms: &[(f64, i32, i32)]| -> Complex64 {
            let mut acc = Complex64::new(0.0, 0.0);
            for &(c, xe, ze) in terms {
                acc += c * x.powi(xe) * z.powi(ze);
            }
            acc
        };
        term_sum(&self.exp).exp() * term_sum(&self.num) / term_sum(&self.den)
    }
}

/// Evaluate the position and momentum variances of the evolved state at the
/// given times. Fails for irregular diagrams, whose potential has real poles.
pub fn uncertainty_product(
    lambda: &Partition,
    alpha: f64,
    times: &[f64],
    settings: &QuadratureSettings,
    halfwidth: Option<f64>,
) -> Result<UncertaintyReport, CoreError> {
    let family = CoherentFamily::new(lambda);
    if !family.extension().is_regular() {
        return Err(CoreError::NotRegular);
    }
    let psi = family.state().clone();
    let psi_x = psi.derivative(Var::X);
    let psi_xx = psi_x.derivative(Var::X);
    let c0 = Compiled::new(&psi);
    let c1 = Compiled::new(&psi_x);
    let c2 = Compiled::new(&psi_xx);
    let limit = halfwidth.unwrap_or(alpha.abs() + 12.0);
    let mut points = Vec::with_capacity(times.len());
    for &t in times {
        let z = Complex64::from_polar(alpha, -2.0 * t);
        // The global phase cancels in every quotient below, so it is omitted.
        let moments = integrate_vec(
            |x, out| {
                let v = c0.eval(x, z);
                let vx = c1.eval(x, z);
                let vxx = c2.eval(x, z);
                let den = v.norm_sqr();
                let first = vx * v.conj();
                let second = vxx * v.conj();
                out[0] = den;
                out[1] = x * den;
                out[2] = x * x * den;
                out[3] = first.im;
                out[4] = second.re;
            },
            -limit,
            limit,
            5,
            settings,
        )?;
        let norm = moments[0];
        let mean_x = moments[1] / norm;
        let var_x = moments[2] / norm - mean_x * mean_x;
        let mean_p = -moments[3] / norm;
        let var_p = -moments[4] / norm - mean_p * mean_p;
        points.push(UncertaintyPoint {
            t,
            var_x,
            var_p,
            product: var_x * var_p,
        });
    }
    Ok(UncertaintyReport {
        partition: lambda.clone(),
        alpha,
        points,
    })
}
