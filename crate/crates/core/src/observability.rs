//! Energy distributions seen through a quantization: Fourier-Laguerre
//! coefficients `c_n = int pi_n(mu) p(mu) dmu`, the basic observable family
//! `p_k(mu) = (1/(l k!)) (mu/l)^k e^(-mu/l)`, duality between `l` and `1 - l`,
//! and recovery of single-level coefficient vectors from the basic family.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{
    binomial, factorial, pow, serde_str, ExpPoly, HalfLineSign, Rational, RationalPoly,
};
use crate::laguerre::{is_identity, laguerre_values, mat_mul};
use crate::phase::DeformParam;
use crate::spectral::projector_closed;

/// Sign status of a candidate density on `[0, inf)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Positivity {
    Nonnegative,
    NegativeAt {
        #[serde(with = "serde_str")]
        mu: Rational,
    },
    /// Several exponential rates; exact root isolation does not apply.
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Distribution {
    pub form: ExpPoly,
    pub normalized: bool,
    pub positivity: Positivity,
}

impl Distribution {
    /// Wraps an exponential polynomial, recording its mass and sign status.
    pub fn new(form: ExpPoly) -> Result<Self> {
        let mass = form.integral()?;
        let positivity = match form.sign_on_half_line() {
            Some(HalfLineSign::Nonnegative) => Positivity::Nonnegative,
            Some(HalfLineSign::NegativeAt(mu)) => Positivity::NegativeAt { mu },
            None => Positivity::Undecided,
        };
        Ok(Distribution {
            form,
            normalized: mass.is_one(),
            positivity,
        })
    }

    pub fn is_probability(&self) -> bool {
        self.normalized && self.positivity == Positivity::Nonnegative
    }

    pub fn mean(&self) -> Rational {
        self.form
            .mul_mu()
            .integral()
            .expect("validated on construction")
    }

    pub fn second_moment(&self) -> Rational {
        self.form
            .mul_mu()
            .mul_mu()
            .integral()
            .expect("validated on construction")
    }
}

/// `p_k` for `0 < l < 1`; at `l = 0` the family collapses to a point mass at 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasicDistribution {
    Density(Distribution),
    DiracAtZero,
}

impl BasicDistribution {
    pub fn density(self) -> Option<Distribution> {
        match self {
            BasicDistribution::Density(d) => Some(d),
            BasicDistribution::DiracAtZero => None,
        }
    }
}

pub fn basic_distribution(k: u32, lambda: &DeformParam) -> BasicDistribution {
    if !lambda.is_interior() {
        return BasicDistribution::DiracAtZero;
    }
    BasicDistribution::Density(basic_density(k, lambda.value()).expect("0 < lambda < 1"))
}

/// `mu^k / (l^(k+1) k!) e^(-mu/l)`
pub fn basic_density(k: u32, lambda: &Rational) -> Result<Distribution> {
    if !lambda.is_positive() || *lambda >= Rational::one() {
        return Err(Error::Domain(format!(
            "lambda = {lambda} must lie in (0, 1)"
        )));
    }
    let c = Rational::one() / (pow(lambda, k + 1) * Rational::from_integer(factorial(k)));
    Distribution::new(ExpPoly::single(
        RationalPoly::monomial(c, k as usize),
        Rational::one() / lambda,
    ))
}

/// `C(k,n) l^n (1-l)^(k-n)` for `n = 0..=k`.
pub fn binomial_weights(k: u32, lambda: &Rational) -> Vec<Rational> {
    let one_minus = Rational::one() - lambda;
    (0..=k)
        .map(|n| Rational::from_integer(binomial(k, n)) * pow(lambda, n) * pow(&one_minus, k - n))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoefficientVector {
    #[serde(with = "serde_str")]
    pub lambda: Rational,
    #[serde(with = "serde_str::vec")]
    pub entries: Vec<Rational>,
}

impl CoefficientVector {
    pub fn max_index(&self) -> usize {
        self.entries.len().saturating_sub(1)
    }

    pub fn total(&self) -> Rational {
        self.entries.iter().fold(Rational::zero(), |a, b| a + b)
    }
}

/// `c_n = int_0^inf pi_n(mu) p(mu) dmu` for `n <= n_max`, exact.
pub fn fourier_laguerre(p: &Distribution, lambda: &DeformParam, n_max: u32) -> CoefficientVector {
    let entries = (0..=n_max)
        .map(|n| {
            (&projector_closed(n, lambda).form * &p.form)
                .integral()
                .expect("positive rates")
        })
        .collect();
    CoefficientVector {
        lambda: lambda.value().clone(),
        entries,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Observability {
    /// Every coefficient is nonnegative; the support bound proves all
    /// coefficients beyond `support` vanish.
    Observable { support: u32 },
    /// Nonnegative for `n <= n_max`, nothing known beyond.
    InconclusiveBeyond { n_max: u32 },
    NegativeCoefficient {
        n: u32,
        #[serde(with = "serde_str")]
        value: Rational,
    },
    NotADistribution {
        #[serde(skip_serializing_if = "Option::is_none", with = "opt_rational")]
        negative_at: Option<Rational>,
        normalized: bool,
    },
}

mod opt_rational {
    use serde::Serializer;

    use crate::exact::{format_rational, Rational};

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_str(&format_rational(r)),
            None => s.serialize_none(),
        }
    }
}

/// Observability test over `n <= n_max`.
///
/// A single-rate density with rate `1/lambda` and polynomial degree `K` is a
/// combination of `p_0 .. p_K`, so its coefficients vanish beyond `K` and the
/// verdict becomes exact.
pub fn is_observable(p: &Distribution, lambda: &DeformParam, n_max: u32) -> Observability {
    let negative_at = match &p.positivity {
        Positivity::NegativeAt { mu } => Some(mu.clone()),
        _ => None,
    };
    if negative_at.is_some() || !p.normalized {
        return Observability::NotADistribution {
            negative_at,
            normalized: p.normalized,
        };
    }
    let support = finite_support(p, lambda);
    let bound = support.unwrap_or(n_max);
    let coefficients = fourier_laguerre(p, lambda, bound);
    if let Some((n, value)) = coefficients
        .entries
        .iter()
        .enumerate()
        .find(|(_, c)| c.is_negative())
    {
        return Observability::NegativeCoefficient {
            n: n as u32,
            value: value.clone(),
        };
    }
    match support {
        Some(support) => Observability::Observable { support },
        None => Observability::InconclusiveBeyond { n_max },
    }
}

fn finite_support(p: &Distribution, lambda: &DeformParam) -> Option<u32> {
    if !lambda.is_interior() {
        return None;
    }
    match p.form.terms() {
        [t] if t.rate == Rational::one() / lambda.value() => t.poly.degree().map(|d| d as u32),
        _ => None,
    }
}

/// `int_0^inf pi_n^(l) pi_m^(1-l) dmu`, expected `delta_nm`.
pub fn duality_check(n: u32, m: u32, lambda: &DeformParam) -> Result<Rational> {
    if !lambda.is_interior() {
        return Err(Error::Domain("duality needs 0 < lambda < 1".into()));
    }
    let dual = lambda.dual()?;
    (&projector_closed(n, lambda).form * &projector_closed(m, &dual).form).integral()
}

/// Gram matrix `G[n][m] = int pi_n^(l) pi_m^(1-l)` for `n, m <= n_max`.
pub fn duality_matrix(lambda: &DeformParam, n_max: u32) -> Result<Vec<Vec<Rational>>> {
    (0..=n_max)
        .map(|n| (0..=n_max).map(|m| duality_check(n, m, lambda)).collect())
        .collect()
}

/// The matrix `M[k][n] = C(k,n) l^n (1-l)^(k-n)` of basic-distribution
/// coefficients and its exact inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisInversion {
    pub lambda: Rational,
    pub matrix: Vec<Vec<Rational>>,
    pub inverse: Vec<Vec<Rational>>,
}

impl BasisInversion {
    pub fn product_is_identity(&self) -> bool {
        is_identity(&mat_mul(&self.matrix, &self.inverse))
            && is_identity(&mat_mul(&self.inverse, &self.matrix))
    }

    pub fn has_negative_entries(&self) -> bool {
        self.inverse.iter().flatten().any(Signed::is_negative)
    }

    /// Weights `x_k` with `sum_k x_k c(p_k) = e_n`: row `n` of the inverse.
    pub fn pure_state_weights(&self, n: usize) -> &[Rational] {
        &self.inverse[n]
    }

    /// `sum_k x_k p_k` for the weights of [`Self::pure_state_weights`].
    pub fn pure_state_distribution(&self, n: usize) -> Result<Distribution> {
        let mut form = ExpPoly::zero();
        for (k, x) in self.inverse[n].iter().enumerate() {
            if !x.is_zero() {
                form = &form + &basic_density(k as u32, &self.lambda)?.form.scale(x);
            }
        }
        Distribution::new(form)
    }
}

#[allow(clippy::needless_range_loop)]
pub fn basis_inversion(lambda: &DeformParam, n_max: u32) -> Result<BasisInversion> {
    let l = lambda.value();
    let size = n_max as usize + 1;
    let matrix: Vec<Vec<Rational>> = (0..=n_max)
        .map(|k| {
            let mut row = binomial_weights(k, l);
            row.resize(size, Rational::zero());
            row
        })
        .collect();
    if matrix.iter().enumerate().any(|(i, row)| row[i].is_zero()) {
        return Err(Error::Singular);
    }
    // forward substitution, column by column of the identity
    let mut inverse = vec![vec![Rational::zero(); size]; size];
    for col in 0..size {
        for i in col..size {
            let mut acc = if i == col {
                Rational::one()
            } else {
                Rational::zero()
            };
            for j in col..i {
                acc -= &matrix[i][j] * &inverse[j][col];
            }
            inverse[i][col] = acc / &matrix[i][i];
        }
    }
    Ok(BasisInversion {
        lambda: l.clone(),
        matrix,
        inverse,
    })
}

/// All `n <= n_max` with `pi_n(mu) < 0`, decided exactly at a rational `mu`.
/// An empty list means no witness up to `n_max`, nothing more.
pub fn negativity_search(lambda: &DeformParam, mu: &Rational, n_max: u32) -> Result<Vec<u32>> {
    if !mu.is_positive() {
        return Err(Error::Domain(format!("mu = {mu} must be positive")));
    }
    let l = lambda.value();
    if l.is_zero() {
        // Poisson terms are never negative
        return Ok(Vec::new());
    }
    // sign(pi_n) = sign((-l/(1-l))^n L_n(x)) = (-1)^n sign(L_n(x))
    let one_minus = Rational::one() - l;
    let values = laguerre_values(n_max, &(mu / (l * one_minus)));
    Ok(values
        .iter()
        .enumerate()
        .filter(|(n, v)| {
            let odd = n % 2 == 1;
            (v.is_negative() && !odd) || (v.is_positive() && odd)
        })
        .map(|(n, _)| n as u32)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn lam(n: i64, d: i64) -> DeformParam {
        DeformParam::from_ratio(n, d).unwrap()
    }

    #[test]
    fn basic_family() {
        let p = basic_density(3, &rat(1, 2)).unwrap();
        assert!(p.is_probability());
        assert_eq!(basic_density(2, &rat(1, 2)).unwrap().mean(), rat(3, 2));
        let p0 = basic_density(0, &rat(1, 3)).unwrap();
        assert_eq!(
            p0.form,
            ExpPoly::single(RationalPoly::constant(int(3)), int(3))
        );
        assert_eq!(
            basic_distribution(2, &DeformParam::normal()),
            BasicDistribution::DiracAtZero
        );
        assert!(basic_density(1, &int(0)).is_err());
    }

    #[test]
    fn coefficients_are_binomial() {
        for l in [lam(1, 4), lam(1, 3), lam(1, 2)] {
            for k in 0..6 {
                let p = basic_density(k, l.value()).unwrap();
                let c = fourier_laguerre(&p, &l, k + 3);
                let mut expect = binomial_weights(k, l.value());
                expect.resize(k as usize + 4, Rational::zero());
                assert_eq!(c.entries, expect);
                assert!(c.total().is_one());
            }
        }
        let c = fourier_laguerre(&basic_density(2, &rat(1, 2)).unwrap(), &lam(1, 2), 2);
        assert_eq!(c.entries, vec![rat(1, 4), rat(1, 2), rat(1, 4)]);
    }

    #[test]
    fn observability_verdicts() {
        let l = lam(1, 3);
        for k in 0..=10 {
            let p = basic_density(k, l.value()).unwrap();
            assert_eq!(
                is_observable(&p, &l, 3),
                Observability::Observable { support: k }
            );
        }
        // pi_0-shaped density at the self-dual point is p_0
        let gm = lam(1, 2);
        let shaped =
            Distribution::new(ExpPoly::single(RationalPoly::constant(int(2)), int(2))).unwrap();
        assert_eq!(shaped, basic_density(0, gm.value()).unwrap());
        assert_eq!(
            is_observable(&shaped, &gm, 5),
            Observability::Observable { support: 0 }
        );
        // a density with a different rate: checked up to n_max only
        let other = basic_density(1, &rat(1, 5)).unwrap();
        assert!(matches!(
            is_observable(&other, &l, 6),
            Observability::InconclusiveBeyond { n_max: 6 }
                | Observability::NegativeCoefficient { .. }
        ));
    }

    #[test]
    fn pure_state_combination_is_not_a_distribution() {
        let l = lam(1, 2);
        let inv = basis_inversion(&l, 3).unwrap();
        let p = inv.pure_state_distribution(1).unwrap();
        assert!(!p.normalized || p.positivity != Positivity::Nonnegative);
        assert!(matches!(
            is_observable(&p, &l, 3),
            Observability::NotADistribution { .. }
        ));
        let c = fourier_laguerre(&p, &l, 3);
        assert_eq!(c.entries, vec![int(0), int(1), int(0), int(0)]);
    }

    #[test]
    fn duality_examples() {
        assert_eq!(duality_check(0, 0, &lam(1, 3)).unwrap(), int(1));
        assert_eq!(duality_check(0, 1, &lam(1, 3)).unwrap(), int(0));
        assert_eq!(duality_check(2, 2, &lam(1, 2)).unwrap(), int(1));
        assert!(duality_check(0, 0, &DeformParam::normal()).is_err());
        let g = duality_matrix(&lam(1, 4), 5).unwrap();
        assert!(is_identity(&g));
    }

    #[test]
    fn inversion_examples() {
        let inv = basis_inversion(&lam(1, 2), 0).unwrap();
        assert_eq!(inv.inverse, vec![vec![int(1)]]);
        let inv = basis_inversion(&lam(1, 2), 2).unwrap();
        assert_eq!(
            inv.inverse,
            vec![
                vec![int(1), int(0), int(0)],
                vec![int(-1), int(2), int(0)],
                vec![int(1), int(-4), int(4)],
            ]
        );
        assert!(inv.product_is_identity());
        assert!(inv.has_negative_entries());
        assert!(basis_inversion(&DeformParam::normal(), 2).is_err());
        assert!(basis_inversion(&DeformParam::normal(), 0).is_ok());
    }

    #[test]
    fn negativity_search_examples() {
        assert_eq!(
            negativity_search(&lam(1, 2), &rat(1, 10), 1).unwrap(),
            vec![1]
        );
        assert!(negativity_search(&DeformParam::normal(), &int(3), 40)
            .unwrap()
            .is_empty());
        // at mu = 100, lambda = 1/4 the Laguerre argument 1600/3 exceeds every
        // zero of L_n for n <= 50, so the first witnesses appear only later
        assert!(negativity_search(&lam(1, 4), &int(100), 50)
            .unwrap()
            .is_empty());
        let far = negativity_search(&lam(1, 4), &int(100), 200).unwrap();
        assert_eq!(far.first(), Some(&141));
    }
}
