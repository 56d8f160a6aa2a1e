//! Exact scalars, polynomials, exponential polynomials and truncated series.

mod exppoly;
mod gauss;
mod poly;
mod quadrature;
mod rational;
mod series;

pub use exppoly::{exp_integral, gamma_moment, ExpPoly, ExpTerm, ExpTermJson};
pub use gauss::{format_gauss, imag_unit, parse_gauss, real, Gauss};
pub use poly::{HalfLineSign, RationalPoly};
pub use quadrature::{quadrature, QuadratureOptions, QuadratureResult};
pub use rational::{
    binomial, ceil, factorial, falling, format_rational, int, parse_rational, pow, rat, serde_str,
    to_f64, Rational,
};
pub use series::BivariateSeries;
