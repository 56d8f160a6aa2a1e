//! Adaptive composite quadrature on `[0, inf)` for exponentially decaying
//! integrands.
//!
//! The range is cut at `T` with `decay_rate * T >= 50`. Integration runs in
//! `u = sqrt(mu)` so that algebraic endpoint behaviour like `mu^(1/2)` becomes
//! smooth; panels are doubled until two successive estimates agree.

use gauss_quad::GaussLegendre;

use crate::error::{Error, Result};

const CUTOFF_EXPONENT: f64 = 50.0;
const NODES_PER_PANEL: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions {
    pub tolerance: f64,
    /// Slowest exponential decay rate of the integrand.
    pub decay_rate: f64,
    pub max_panels: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        QuadratureOptions {
            tolerance: 1e-10,
            decay_rate: 1.0,
            max_panels: 1 << 16,
        }
    }
}

impl QuadratureOptions {
    pub fn with_tolerance(tolerance: f64) -> Self {
        QuadratureOptions {
            tolerance,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub panels: usize,
    /// Difference between the last two estimates.
    pub difference: f64,
}

/// `int_0^inf f(mu) dmu`
pub fn quadrature<F: Fn(f64) -> f64>(f: F, options: QuadratureOptions) -> Result<QuadratureResult> {
    if options.decay_rate.is_nan() || options.decay_rate <= 0.0 {
        return Err(Error::Domain(format!(
            "decay rate must be positive, got {}",
            options.decay_rate
        )));
    }
    let cutoff = CUTOFF_EXPONENT / options.decay_rate;
    let upper = cutoff.sqrt();
    let rule = GaussLegendre::new(NODES_PER_PANEL.try_into().expect("nonzero node count"));
    let g = |u: f64| 2.0 * u * f(u * u);
    let estimate = |panels: usize| {
        let h = upper / panels as f64;
        (0..panels)
            .map(|k| rule.integrate(k as f64 * h, (k + 1) as f64 * h, &g))
            .sum::<f64>()
    };
    let mut panels = 1;
    let mut previous = estimate(panels);
    let mut difference = f64::INFINITY;
    while panels < options.max_panels {
        panels *= 2;
        let current = estimate(panels);
        difference = (current - previous).abs();
        if difference < options.tolerance {
            return Ok(QuadratureResult {
                value: current,
                panels,
                difference,
            });
        }
        previous = current;
    }
    Err(Error::Quadrature {
        tolerance: options.tolerance,
        panels,
        difference,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_exponential() {
        let r = quadrature(|x| (-x).exp(), QuadratureOptions::default()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-10);
        assert!(r.panels >= 2);
    }

    #[test]
    fn first_moment() {
        let r = quadrature(|x| x * (-x).exp(), QuadratureOptions::default()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-10);
    }

    #[test]
    fn half_integer_laguerre_moment() {
        // sqrt(mu) (1 - mu) exp(-mu) integrates to -sqrt(pi)/4
        let r = quadrature(
            |x| x.sqrt() * (1.0 - x) * (-x).exp(),
            QuadratureOptions::with_tolerance(1e-9),
        )
        .unwrap();
        let expect = -std::f64::consts::PI.sqrt() / 4.0;
        assert!((r.value - expect).abs() < 1e-6, "{} vs {expect}", r.value);
    }

    #[test]
    fn slow_decay_uses_longer_range() {
        let opts = QuadratureOptions {
            decay_rate: 0.25,
            ..QuadratureOptions::default()
        };
        let r = quadrature(|x| (-x / 4.0).exp(), opts).unwrap();
        assert!((r.value - 4.0).abs() < 1e-9);
    }

    #[test]
    fn reports_non_convergence() {
        let opts = QuadratureOptions {
            tolerance: 1e-14,
            max_panels: 2,
            ..QuadratureOptions::default()
        };
        let err = quadrature(|x| (x * 37.0).sin().abs() * (-x).exp(), opts).unwrap_err();
        assert!(matches!(err, Error::Quadrature { .. }));
        assert!(quadrature(
            |x| x,
            QuadratureOptions {
                decay_rate: 0.0,
                ..opts
            }
        )
        .is_err());
    }
}
