use thiserror::Error;

use crate::exact::Rational;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("term with rate {rate} is not integrable on [0, inf)")]
    NotIntegrable { rate: Rational },

    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("quadrature did not reach tolerance {tolerance:e} within {panels} panels (last difference {difference:e})")]
    Quadrature {
        tolerance: f64,
        panels: usize,
        difference: f64,
    },

    #[error("star exponential has a pole at t = {t}")]
    Pole { t: f64 },

    #[error("matrix is singular")]
    Singular,

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
