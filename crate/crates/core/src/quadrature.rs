//! Composite Gauss–Legendre quadrature for vectors of smooth integrands,
//! with panel doubling until a relative tolerance is met.

use crate::error::CoreError;

/// Controls for the adaptive composite rule.
#[derive(Debug, Clone)]
pub struct QuadratureSettings {
    /// Relative tolerance on every component between consecutive refinements.
    pub rel_tol: f64,
    /// Gauss–Legendre nodes per panel.
    pub nodes_per_panel: usize,
    /// Panels in the first pass.
    pub initial_panels: usize,
    /// Refinement rounds (each doubles the panel count) before giving up.
    pub max_doublings: usize,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        QuadratureSettings {
            rel_tol: 1e-10,
            nodes_per_panel: 24,
            initial_panels: 16,
            max_doublings: 7,
        }
    }
}

/// Nodes and weights of the n-point Gauss–Legendre rule on [-1, 1],
/// computed by Newton iteration on the Legendre polynomial from the
/// standard Chebyshev-based initial guesses.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2, "need at least two nodes");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    // Legendre value and derivative at x via the three-term recurrence.
    let eval = |x: f64| -> (f64, f64) {
        let mut p0 = 1.0f64;
        let mut p1 = x;
        for k in 2..=n {
            let kf = k as f64;
            let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
            p0 = p1;
            p1 = p2;
        }
        let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
        (p1, dp)
    };
    for i in 0..(n + 1) / 2 {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..60 {
            let (p, dp) = eval(x);
            let step = p / dp;
            x -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = eval(x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn composite_pass<F: FnMut(f64, &mut [f64])>(
    f: &mut F,
    a: f64,
    b: f64,
    dim: usize,
    panels: usize,
    nodes: &[f64],
    weights: &[f64],
) -> Vec<f64> {
    let mut total = vec![0.0; dim];
    let mut sample = vec![0.0; dim];
    let h = (b - a) / panels as f64;
    for p in 0..panels {
        let left = a + h * p as f64;
        let mid = left + 0.5 * h;
        let half = 0.5 * h;
        for (x, w) in nodes.iter().zip(weights) {
            sample.iter_mut().for_each(|s| *s = 0.0);
            f(mid + half * x, &mut sample);
            for (t, s) in total.iter_mut().zip(&sample) {
                *t += w * half * s;
            }
        }
    }
    total
}

/// Integrate `dim` components of `f` over [a, b] simultaneously, doubling the
/// panel count until every component moves by less than `rel_tol` relative to
/// the largest component magnitude.
pub fn integrate_vec<F: FnMut(f64, &mut [f64])>(
    mut f: F,
    a: f64,
    b: f64,
    dim: usize,
    settings: &QuadratureSettings,
) -> Result<Vec<f64>, CoreError> {
    let (nodes, weights) = gauss_legendre(settings.nodes_per_panel);
    let mut panels = settings.initial_panels.max(1);
    let mut prev = composite_pass(&mut f, a, b, dim, panels, &nodes, &weights);
    let mut rel_change = f64::INFINITY;
    for _ in 0..settings.max_doublings {
        panels *= 2;
        let cur = composite_pass(&mut f, a, b, dim, panels, &nodes, &weights);
        let floor = cur
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs()))
            .max(f64::MIN_POSITIVE);
        rel_change = prev
            .iter()
            .zip(&cur)
            .map(|(p, c)| (p - c).abs() / floor.max(c.abs()))
            .fold(0.0, f64::max);
        prev = cur;
        if rel_change <= settings.rel_tol {
            return Ok(prev);
        }
    }
    Err(CoreError::QuadratureNonConvergence {
        panels,
        rel_change,
        target: settings.rel_tol,
    })
}

/// Convenience wrapper for a single scalar integrand.
pub fn integrate<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    settings: &QuadratureSettings,
) -> Result<f64, CoreError> {
    let v = integrate_vec(|x, out| out[0] = f(x), a, b, 1, settings)?;
    Ok(v[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes_are_symmetric_and_weights_sum_to_two() {
        for n in [2usize, 5, 8, 24, 33] {
            let (x, w) = gauss_legendre(n);
            let sum: f64 = w.iter().sum();
            assert!((sum - 2.0).abs() < 1e-13, "n = {}", n);
            for i in 0..n {
                assert!((x[i] + x[n - 1 - i]).abs() < 1e-13);
                assert!(w[i] > 0.0);
            }
        }
    }

    #[test]
    fn rule_is_exact_on_high_degree_polynomials() {
        // n points integrate degree 2n-1 exactly.
        let (x, w) = gauss_legendre(8);
        for d in 0..16usize {
            let got: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(d as i32)).sum();
            let want = if d % 2 == 0 { 2.0 / (d as f64 + 1.0) } else { 0.0 };
            assert!((got - want).abs() < 1e-12, "degree {}", d);
        }
    }

    #[test]
    fn gaussian_moments() {
        let s = QuadratureSettings::default();
        let sqrt_pi = std::f64::consts::PI.sqrt();
        let m0 = integrate(|x: f64| (-x * x).exp(), -12.0, 12.0, &s).unwrap();
        assert!((m0 - sqrt_pi).abs() < 1e-12 * sqrt_pi);
        let m2 = integrate(|x: f64| x * x * (-x * x).exp(), -12.0, 12.0, &s).unwrap();
        assert!((m2 - 0.5 * sqrt_pi).abs() < 1e-12 * sqrt_pi);
        let m4 = integrate(|x: f64| x * x * x * x * (-x * x).exp(), -12.0, 12.0, &s).unwrap();
        assert!((m4 - 0.75 * sqrt_pi).abs() < 1e-12 * sqrt_pi);
    }

    #[test]
    fn vector_integration_matches_trapezoid_oracle() {
        // Crude high-resolution trapezoid as an independent cross-check.
        let f = |x: f64| (x.sin() + 1.2).ln() * (-0.3 * x * x).exp();
        let g = |x: f64| (2.5 * x).cos() * (-0.5 * (x - 0.7) * (x - 0.7)).exp();
        let (a, b) = (-6.0, 6.0);
        let n = 400_000usize;
        let h = (b - a) / n as f64;
        let mut tf = 0.5 * (f(a) + f(b));
        let mut tg = 0.5 * (g(a) + g(b));
        for i in 1..n {
            let x = a + h * i as f64;
            tf += f(x);
            tg += g(x);
        }
        tf *= h;
        tg *= h;
        let got = integrate_vec(
            |x, out| {
                out[0] = f(x);
                out[1] = g(x);
            },
            a,
            b,
            2,
            &QuadratureSettings::default(),
        )
        .unwrap();
        assert!((got[0] - tf).abs() < 1e-8, "{} vs {}", got[0], tf);
        assert!((got[1] - tg).abs() < 1e-8, "{} vs {}", got[1], tg);
    }

    #[test]
    fn non_convergence_is_reported() {
        // A kink keeps low-order refinements moving; the tolerance is
        // unreachable within the allowed doublings.
        let s = QuadratureSettings {
            rel_tol: 1e-14,
            nodes_per_panel: 2,
            initial_panels: 1,
            max_doublings: 2,
        };
        let r = integrate(|x: f64| (x - 0.299).abs(), -1.0, 1.0, &s);
        match r {
            Err(CoreError::QuadratureNonConvergence { panels, rel_change, target }) => {
                assert_eq!(panels, 4);
                assert!(rel_change > target);
            }
            other => panic!("expected non-convergence, got {:?}", other),
        }
    }
}
