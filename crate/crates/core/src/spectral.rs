//! Spectral projectors `pi_n` of the oscillator under the `lambda` family,
//! the shifted spectrum `E_n = (n + lambda) hbar omega`, and the star
//! exponential `exp_*(-i t H / hbar) = sum_n pi_n exp(-i (n + lambda) omega t)`.
//!
//! Radial quantities are functions of `mu = H / (hbar omega)` and every
//! integral is taken in `dmu`. The phase-space normalization `2 pi hbar` is
//! divided out once here, so `int_0^inf pi_n dmu = 1`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul};

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{
    binomial, factorial, format_gauss, imag_unit, int, pow, rat, real, serde_str, to_f64, ExpPoly,
    Gauss, HalfLineSign, Rational, RationalPoly,
};
use crate::laguerre::{laguerre, laguerre_f64, laguerre_values};
use crate::phase::{DeformParam, ModelParams};

/// `pi_n^(lambda)` as an exact exponential polynomial in `mu`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Projector {
    pub n: u32,
    #[serde(with = "serde_str")]
    pub lambda: Rational,
    pub form: ExpPoly,
}

impl Projector {
    pub fn eval_f64(&self, mu: f64) -> f64 {
        self.form.eval_f64(mu)
    }

    pub fn value_at_zero(&self) -> Rational {
        self.form.at_zero()
    }

    pub fn integral(&self) -> Rational {
        self.form.integral().expect("projector rates are positive")
    }

    /// Exact sign decision over `mu >= 0`.
    pub fn sign_on_half_line(&self) -> HalfLineSign {
        self.form
            .sign_on_half_line()
            .expect("projectors carry a single rate")
    }

    /// Some `mu > 0` with `pi_n(mu) < 0`, decided by exact root isolation.
    pub fn negative_witness(&self) -> Option<Rational> {
        match self.sign_on_half_line() {
            HalfLineSign::Nonnegative => None,
            HalfLineSign::NegativeAt(mu) if mu.is_positive() => Some(mu),
            HalfLineSign::NegativeAt(_) => {
                // negative at 0, hence on some (0, eps)
                let mut mu = Rational::one();
                while self.form.sign_at(&mu) != Some(std::cmp::Ordering::Less) {
                    mu /= int(2);
                }
                Some(mu)
            }
        }
    }

    /// Exponential rate `1/(1 - lambda)`.
    pub fn rate(&self) -> Rational {
        rate_for(&self.lambda)
    }
}

fn rate_for(lambda: &Rational) -> Rational {
    Rational::one() / (Rational::one() - lambda)
}

/// Closed form
/// `(1/(1-l)) (-l/(1-l))^n L_n(mu/(l(1-l))) exp(-mu/(1-l))`,
/// reducing to the Poisson term `mu^n e^-mu / n!` at `l = 0`.
pub fn projector_closed(n: u32, lambda: &DeformParam) -> Projector {
    projector_for(n, lambda.value())
}

fn projector_for(n: u32, lambda: &Rational) -> Projector {
    let form = if lambda.is_zero() {
        ExpPoly::single(
            RationalPoly::monomial(
                Rational::one() / Rational::from_integer(factorial(n)),
                n as usize,
            ),
            Rational::one(),
        )
    } else {
        let one_minus = Rational::one() - lambda;
        let prefactor = pow(&(-lambda / &one_minus), n) / &one_minus;
        let poly = laguerre(n)
            .poly
            .rescale_arg(&(Rational::one() / (lambda * &one_minus)))
            .scale(&prefactor);
        ExpPoly::single(poly, rate_for(lambda))
    };
    Projector {
        n,
        lambda: lambda.clone(),
        form,
    }
}

/// `sum_{k<K} c_k` partial sums of
/// `pi_n = (-1)^n sum_k l^(n+k) C(n+k,k) L_(n+k)(mu/l)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeriesEval {
    pub n: u32,
    #[serde(with = "serde_str")]
    pub lambda: Rational,
    pub mu: f64,
    pub terms: usize,
    pub value: f64,
    /// Set at `lambda = 1/2`, where the series converges only conditionally.
    pub conditional: bool,
}

fn series_domain(lambda: &Rational) -> Result<()> {
    if !lambda.is_positive() || *lambda > rat(1, 2) {
        return Err(Error::Domain(format!(
            "the projector series needs 0 < lambda <= 1/2, got {lambda}"
        )));
    }
    Ok(())
}

pub fn projector_series(n: u32, lambda: &DeformParam, terms: usize, mu: f64) -> Result<SeriesEval> {
    let l = lambda.value();
    series_domain(l)?;
    let lf = to_f64(l);
    let x = mu / lf;
    // weight_k = l^(n+k) C(n+k,k); L_(n+k)(x) advanced by the three-term recurrence
    let mut weight = lf.powi(n as i32);
    let mut prev = if n == 0 { 0.0 } else { laguerre_f64(n - 1, x) };
    let mut cur = laguerre_f64(n, x);
    let mut sum = 0.0;
    for k in 0..terms {
        sum += weight * cur;
        let m = (n as usize + k) as f64;
        weight *= lf * (m + 1.0) / (k as f64 + 1.0);
        let next = ((2.0 * m + 1.0 - x) * cur - m * prev) / (m + 1.0);
        prev = cur;
        cur = next;
    }
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(SeriesEval {
        n,
        lambda: l.clone(),
        mu,
        terms,
        value: sign * sum,
        conditional: *l == rat(1, 2),
    })
}

/// Exact partial sum of the projector series at a rational point.
pub fn projector_series_exact(
    n: u32,
    lambda: &DeformParam,
    terms: usize,
    mu: &Rational,
) -> Result<Rational> {
    let l = lambda.value();
    series_domain(l)?;
    let values = laguerre_values(n + terms as u32, &(mu / l));
    let sum = (0..terms as u32).fold(Rational::zero(), |acc, k| {
        acc + pow(l, n + k) * Rational::from_integer(binomial(n + k, k)) * &values[(n + k) as usize]
    });
    Ok(if n.is_multiple_of(2) { sum } else { -sum })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumEntry {
    pub n: u32,
    #[serde(with = "serde_str")]
    pub lambda: Rational,
    /// `(n + lambda) hbar omega`
    #[serde(with = "serde_str")]
    pub energy: Rational,
}

pub fn spectrum(lambda: &DeformParam, n_max: u32, model: &ModelParams) -> Vec<SpectrumEntry> {
    (0..=n_max)
        .map(|n| SpectrumEntry {
            n,
            lambda: lambda.value().clone(),
            energy: (int(n as i64) + lambda.value()) * model.quantum(),
        })
        .collect()
}

/// Function spaces on which the radial star-Hamiltonian acts.
pub trait RadialFunction: Sized {
    fn derivative(&self) -> Self;
    fn mul_mu(&self) -> Self;
    fn scale(&self, s: &Rational) -> Self;
    fn plus(&self, other: &Self) -> Self;
}

impl RadialFunction for ExpPoly {
    fn derivative(&self) -> Self {
        ExpPoly::derivative(self)
    }
    fn mul_mu(&self) -> Self {
        ExpPoly::mul_mu(self)
    }
    fn scale(&self, s: &Rational) -> Self {
        ExpPoly::scale(self, s)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
}

impl RadialFunction for RationalPoly {
    fn derivative(&self) -> Self {
        RationalPoly::derivative(self)
    }
    fn mul_mu(&self) -> Self {
        self.shift_up()
    }
    fn scale(&self, s: &Rational) -> Self {
        RationalPoly::scale(self, s)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
}

/// `H *_l f` for radial `f(mu)` in units `hbar = omega = 1`:
/// `mu f + (1 - 2l) mu f' - l(1-l) (f' + mu f'')`.
pub fn radial_star_apply<F: RadialFunction>(f: &F, lambda: &DeformParam) -> F {
    let l = lambda.value();
    let d1 = f.derivative();
    let d2 = d1.derivative();
    let drift = Rational::one() - int(2) * l;
    let diffusion = -(l * (Rational::one() - l));
    f.mul_mu()
        .plus(&d1.mul_mu().scale(&drift))
        .plus(&d1.plus(&d2.mul_mu()).scale(&diffusion))
}

/// Value of the star exponential at one `(lambda, mu, omega t)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StarExpEval {
    #[serde(with = "serde_str")]
    pub lambda: Rational,
    pub mu: f64,
    pub omega_t: f64,
    pub re: f64,
    pub im: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms: Option<usize>,
}

impl StarExpEval {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

const POLE_EPS: f64 = 1e-12;

fn phase(omega_t: f64) -> Complex64 {
    Complex64::from_polar(1.0, -omega_t)
}

/// `e^(-i l wt) / (1 - l + l e^(-i wt)) * exp(mu (e^(-i wt) - 1) / (1 - l + l e^(-i wt)))`
pub fn star_exp_closed(lambda: &DeformParam, mu: f64, omega_t: f64) -> Result<StarExpEval> {
    let l = to_f64(lambda.value());
    let w = phase(omega_t);
    let denom = (1.0 - l) + l * w;
    if denom.norm() < POLE_EPS {
        return Err(Error::Pole { t: omega_t });
    }
    let value = phase(l * omega_t) / denom * (mu * (w - 1.0) / denom).exp();
    Ok(StarExpEval {
        lambda: lambda.value().clone(),
        mu,
        omega_t,
        re: value.re,
        im: value.im,
        terms: None,
    })
}

/// Truncated Fourier-Dirichlet sum `sum_{n<N} pi_n(mu) e^(-i (n + l) wt)`.
pub fn star_exp_series(lambda: &DeformParam, mu: f64, omega_t: f64, terms: usize) -> StarExpEval {
    let l = lambda.value();
    let lf = to_f64(l);
    let value: Complex64 = (0..terms as u32)
        .map(|n| projector_value_f64(n, l, mu) * phase((n as f64 + lf) * omega_t))
        .sum();
    StarExpEval {
        lambda: l.clone(),
        mu,
        omega_t,
        re: value.re,
        im: value.im,
        terms: Some(terms),
    }
}

/// `pi_n(mu)` in floating point without building the exact polynomial.
pub fn projector_value_f64(n: u32, lambda: &Rational, mu: f64) -> f64 {
    let l = to_f64(lambda);
    if l == 0.0 {
        // e^-mu mu^n / n! in log space
        let log_fact: f64 = (1..=n).map(|k| (k as f64).ln()).sum();
        if mu == 0.0 {
            return if n == 0 { 1.0 } else { 0.0 };
        }
        return (n as f64 * mu.ln() - mu - log_fact).exp();
    }
    let ratio = -l / (1.0 - l);
    ratio.powi(n as i32) / (1.0 - l)
        * laguerre_f64(n, mu / (l * (1.0 - l)))
        * (-mu / (1.0 - l)).exp()
}

/// Normal-ordered solution `e^-mu exp(e^(-i wt) mu)`.
pub fn star_exp_normal_form(mu: f64, omega_t: f64) -> Complex64 {
    (-mu).exp() * (phase(omega_t) * mu).exp()
}

/// The general closed form with exponent coefficient `2 mu` instead of `mu`.
pub fn star_exp_doubled_exponent(lambda: &DeformParam, mu: f64, omega_t: f64) -> Result<Complex64> {
    let doubled = star_exp_closed(lambda, 2.0 * mu, omega_t)?;
    let single = star_exp_closed(lambda, 0.0, omega_t)?;
    // prefactor from the mu = 0 evaluation, exponential from the 2 mu one
    Ok(single.value() * (doubled.value() / single.value()))
}

/// Groenewold-Moyal form `exp(2 mu tan(wt/2) / sign_i) / cos(wt/2)` with
/// `sign_i = -i` (the sign as it is usually displayed) or `+i`.
pub fn star_exp_gm_tangent(mu: f64, omega_t: f64, minus_i: bool) -> Complex64 {
    let half = omega_t / 2.0;
    let unit = if minus_i {
        Complex64::new(0.0, -1.0)
    } else {
        Complex64::new(0.0, 1.0)
    };
    (2.0 * mu * half.tan() / unit).exp() / half.cos()
}

/// Deviation of the partial sums `sum_{n<=N} pi_n(mu)` from 1.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartitionReport {
    #[serde(with = "serde_str")]
    pub lambda: Rational,
    #[serde(with = "serde_str")]
    pub mu: Rational,
    /// Last index included.
    pub n: u32,
    pub deviation: f64,
    pub reached: bool,
    pub conditional: bool,
}

/// Smallest `N <= n_max` with `|sum_{n<=N} pi_n(mu) - 1| < tolerance`; the
/// partial sums are exact rationals times the common factor `exp(-mu/(1-l))`.
pub fn partition_of_unity(
    lambda: &DeformParam,
    mu: &Rational,
    tolerance: f64,
    n_max: u32,
) -> PartitionReport {
    let l = lambda.value();
    let damping = (-to_f64(&(rate_for(l) * mu))).exp();
    // c_n with pi_n(mu) = c_n exp(-mu/(1-l)), produced one index at a time
    let one_minus = Rational::one() - l;
    let x = if l.is_zero() {
        Rational::zero()
    } else {
        mu / (l * &one_minus)
    };
    let ratio = -l / &one_minus;
    let mut power = Rational::one() / &one_minus;
    let (mut prev, mut cur) = (Rational::zero(), Rational::one());
    let coefficients = (0..=n_max).map(|n| {
        if l.is_zero() {
            if n > 0 {
                cur = &cur * mu / int(n as i64);
            }
            return cur.clone();
        }
        if n > 0 {
            // L_n from L_(n-1), L_(n-2)
            let m = int(n as i64 - 1);
            let next = ((int(2 * n as i64 - 1) - &x) * &cur - &m * &prev) / int(n as i64);
            prev = std::mem::replace(&mut cur, next);
        }
        let c = &power * &cur;
        power *= &ratio;
        c
    });
    let mut sum = Rational::zero();
    let mut deviation = f64::INFINITY;
    for (n, c) in coefficients.enumerate() {
        sum += c;
        deviation = (to_f64(&sum) * damping - 1.0).abs();
        if deviation < tolerance {
            return PartitionReport {
                lambda: l.clone(),
                mu: mu.clone(),
                n: n as u32,
                deviation,
                reached: true,
                conditional: *l == rat(1, 2),
            };
        }
    }
    PartitionReport {
        lambda: l.clone(),
        mu: mu.clone(),
        n: n_max,
        deviation,
        reached: false,
        conditional: *l == rat(1, 2),
    }
}

/// `|sum_{n<=N} (n + l) pi_n(mu) - mu|`
pub fn energy_identity_deviation(lambda: &DeformParam, mu: f64, n_max: u32) -> f64 {
    let l = lambda.value();
    let lf = to_f64(l);
    let sum: f64 = (0..=n_max)
        .map(|n| (n as f64 + lf) * projector_value_f64(n, l, mu))
        .sum();
    (sum - mu).abs()
}

/// Polynomial in `s` and `w = exp(-i omega t)` with Gaussian coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct SwPoly(BTreeMap<(u32, u32), Gauss>);

impl SwPoly {
    fn term(c: Gauss, s: u32, w: u32) -> Self {
        let mut p = SwPoly::default();
        p.add_term(c, s, w);
        p
    }

    fn add_term(&mut self, c: Gauss, s: u32, w: u32) {
        let e = self.0.entry((s, w)).or_insert_with(Gauss::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&(s, w));
        }
    }

    fn d_s(&self) -> Self {
        let mut out = SwPoly::default();
        for (&(s, w), c) in &self.0 {
            if s > 0 {
                out.add_term(c * real(int(s as i64)), s - 1, w);
            }
        }
        out
    }

    /// `d/dt` using `dw/dt = -i omega w`.
    fn d_t(&self, omega: &Rational) -> Self {
        let mut out = SwPoly::default();
        let factor = -(imag_unit() * real(omega.clone()));
        for (&(s, w), c) in &self.0 {
            out.add_term(c * &factor * real(int(w as i64)), s, w);
        }
        out
    }

    fn scale(&self, c: &Gauss) -> Self {
        let mut out = SwPoly::default();
        for (&(s, w), v) in &self.0 {
            out.add_term(v * c, s, w);
        }
        out
    }

    fn at_w_one(&self) -> SwPoly {
        let mut out = SwPoly::default();
        for (&(s, _), v) in &self.0 {
            out.add_term(v.clone(), s, 0);
        }
        out
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.0
            .iter()
            .map(|(&(s, w), c)| format!("({}) s^{s} w^{w}", format_gauss(c)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl Add for &SwPoly {
    type Output = SwPoly;
    fn add(self, rhs: &SwPoly) -> SwPoly {
        let mut out = self.clone();
        for (&(s, w), c) in &rhs.0 {
            out.add_term(c.clone(), s, w);
        }
        out
    }
}

impl Mul for &SwPoly {
    type Output = SwPoly;
    fn mul(self, rhs: &SwPoly) -> SwPoly {
        let mut out = SwPoly::default();
        for (&(s1, w1), c1) in &self.0 {
            for (&(s2, w2), c2) in &rhs.0 {
                out.add_term(c1 * c2, s1 + s2, w1 + w2);
            }
        }
        out
    }
}

/// Outcome of substituting `F(s,t) = e^(-s/hbar) exp(e^(-i omega t) s / hbar)` into
/// the normal-ordered radial equation, in two readings:
/// `i hbar F_t = omega s F + omega hbar s F_s` (from the radial star operator) and
/// `i hbar F_t = omega s F + omega hbar F_s` (without the factor `s`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadialPdeReport {
    /// Residual divided by `F`, as a polynomial in `s` and `w = e^(-i omega t)`.
    pub residual_with_s: String,
    pub residual_without_s: String,
    pub satisfies_with_s: bool,
    pub satisfies_without_s: bool,
    pub initial_value_is_one: bool,
}

pub fn verify_radial_pde(model: &ModelParams) -> RadialPdeReport {
    let inv_hbar = real(Rational::one() / &model.hbar);
    let hbar = real(model.hbar.clone());
    let omega = real(model.omega.clone());
    let i = imag_unit();
    // log F = s (w - 1) / hbar; every derivative of F is F times a polynomial
    let log_f = &SwPoly::term(inv_hbar.clone(), 1, 1) + &SwPoly::term(-inv_hbar, 1, 0);
    let ft = log_f.d_t(&model.omega);
    let fs = log_f.d_s();
    let lhs = ft.scale(&(&i * &hbar));
    let s = SwPoly::term(Gauss::one(), 1, 0);
    let potential = s.scale(&omega);
    let with_s = &potential + &(&s * &fs).scale(&(&omega * &hbar));
    let without_s = &potential + &fs.scale(&(&omega * &hbar));
    let minus_one = real(-Rational::one());
    let residual_with = &lhs + &with_s.scale(&minus_one);
    let residual_without = &lhs + &without_s.scale(&minus_one);
    RadialPdeReport {
        residual_with_s: residual_with.render(),
        residual_without_s: residual_without.render(),
        satisfies_with_s: residual_with.is_zero(),
        satisfies_without_s: residual_without.is_zero(),
        initial_value_is_one: log_f.at_w_one().is_zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase::{star, PhasePoly};

    fn lam(n: i64, d: i64) -> DeformParam {
        DeformParam::from_ratio(n, d).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        for l in [lam(1, 4), lam(1, 3), lam(1, 2)] {
            let p0 = projector_closed(0, &l);
            assert_eq!(p0.value_at_zero(), Rational::one() / (int(1) - l.value()));
        }
        let p1 = projector_closed(1, &DeformParam::normal());
        assert!((p1.eval_f64(1.0) - (-1.0f64).exp()).abs() < 1e-15);
        for n in 0..6 {
            let p = projector_closed(n, &lam(1, 2));
            let sign = if n % 2 == 0 { 2 } else { -2 };
            let expect = ExpPoly::single(
                laguerre(n).poly.rescale_arg(&int(4)).scale(&int(sign)),
                int(2),
            );
            assert_eq!(p.form, expect);
        }
        assert_eq!(projector_closed(0, &lam(1, 2)).value_at_zero(), int(2));
    }

    #[test]
    fn normalized() {
        for l in [DeformParam::normal(), lam(1, 4), lam(1, 3), lam(1, 2)] {
            for n in 0..8 {
                assert_eq!(projector_closed(n, &l).integral(), int(1));
            }
        }
    }

    #[test]
    fn series_matches_closed_form() {
        let l = lam(1, 4);
        let s = projector_series(0, &l, 60, 1.0).unwrap();
        assert!((s.value - projector_closed(0, &l).eval_f64(1.0)).abs() < 1e-10);
        let s = projector_series(1, &l, 60, 0.0).unwrap();
        assert!((s.value + 4.0 / 9.0).abs() < 1e-10);
        for n in 0..5 {
            let s = projector_series(n, &l, 80, 0.7).unwrap();
            assert!(
                (s.value - projector_closed(n, &l).eval_f64(0.7)).abs() < 1e-10,
                "n = {n}"
            );
            assert!(!s.conditional);
        }
        let exact = projector_series_exact(2, &l, 30, &rat(1, 3)).unwrap();
        let float = projector_series(2, &l, 30, 1.0 / 3.0).unwrap().value;
        assert!((to_f64(&exact) - float).abs() < 1e-12);
        assert!(projector_series(0, &lam(2, 3), 10, 1.0).is_err());
        assert!(projector_series(0, &DeformParam::normal(), 10, 1.0).is_err());
    }

    #[test]
    fn gm_series_is_flagged() {
        let s = projector_series(0, &lam(1, 2), 10_000, 1.0).unwrap();
        assert!(s.conditional);
        assert!(s.value.is_finite());
    }

    #[test]
    fn spectrum_gaps() {
        let model = ModelParams::new(rat(1, 2), int(3)).unwrap();
        let levels = spectrum(&lam(1, 3), 5, &model);
        assert_eq!(levels[0].energy, rat(1, 2));
        for w in levels.windows(2) {
            assert_eq!(&w[1].energy - &w[0].energy, model.quantum());
        }
    }

    #[test]
    fn radial_operator_matches_star_product() {
        let h = PhasePoly::hamiltonian(&int(1));
        for l in [DeformParam::normal(), lam(1, 4), lam(1, 2)] {
            for coeffs in [vec![1], vec![0, 1], vec![2, -1, 3], vec![1, 0, 0, -2, 1]] {
                let f = RationalPoly::from_ints(&coeffs);
                let via_star = star(&h, &PhasePoly::from_radial(&f), &l)
                    .radial_poly(&int(1))
                    .unwrap();
                assert_eq!(radial_star_apply(&f, &l), via_star);
            }
        }
        // H * 1 = H
        let one = ExpPoly::polynomial(RationalPoly::one());
        let mu = ExpPoly::polynomial(RationalPoly::from_ints(&[0, 1]));
        assert_eq!(radial_star_apply(&one, &DeformParam::normal()), mu);
    }

    #[test]
    fn eigen_relation() {
        for l in [DeformParam::normal(), lam(1, 4), lam(1, 2)] {
            for n in 0..6 {
                let p = projector_closed(n, &l);
                let energy = int(n as i64) + l.value();
                assert_eq!(radial_star_apply(&p.form, &l), p.form.scale(&energy));
            }
        }
    }

    #[test]
    fn star_exponential_forms() {
        for l in [DeformParam::normal(), lam(1, 4), lam(1, 2)] {
            let v = star_exp_closed(&l, 1.3, 0.0).unwrap().value();
            assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        }
        for t in [0.3, 1.0, 2.0] {
            let a = star_exp_closed(&DeformParam::normal(), 1.5, t)
                .unwrap()
                .value();
            assert!((a - star_exp_normal_form(1.5, t)).norm() < 1e-12);
        }
        let closed = star_exp_closed(&lam(1, 4), 1.0, 1.0).unwrap().value();
        let series = star_exp_series(&lam(1, 4), 1.0, 1.0, 200).value();
        assert!((closed - series).norm() < 1e-8);
        assert!(matches!(
            star_exp_closed(&lam(1, 2), 1.0, std::f64::consts::PI),
            Err(Error::Pole { .. })
        ));
    }

    #[test]
    fn gm_tangent_sign() {
        let closed = star_exp_closed(&lam(1, 2), 0.8, 1.1).unwrap().value();
        let plus = star_exp_gm_tangent(0.8, 1.1, false);
        let minus = star_exp_gm_tangent(0.8, 1.1, true);
        assert!((closed - plus).norm() < 1e-12);
        assert!((closed - minus).norm() > 1e-3);
        let doubled = star_exp_doubled_exponent(&lam(1, 4), 1.0, 1.0).unwrap();
        assert!((doubled - closed).norm() > 1e-3);
    }

    #[test]
    fn radial_pde_readings() {
        for model in [
            ModelParams::default(),
            ModelParams::new(rat(2, 3), rat(5, 2)).unwrap(),
        ] {
            let r = verify_radial_pde(&model);
            assert!(r.satisfies_with_s, "{}", r.residual_with_s);
            assert!(!r.satisfies_without_s);
            assert!(r.initial_value_is_one);
            assert_eq!(r.residual_with_s, "0");
        }
    }

    #[test]
    fn partition_and_energy() {
        let l = lam(1, 4);
        for mu in [rat(1, 2), int(1), int(5)] {
            let r = partition_of_unity(&l, &mu, 1e-6, 500);
            assert!(r.reached, "{r:?}");
        }
        let r = partition_of_unity(&DeformParam::normal(), &int(3), 1e-9, 200);
        assert!(r.reached);
        assert!(energy_identity_deviation(&l, 2.0, 200) < 1e-8);
    }

    #[test]
    fn negativity() {
        for l in [lam(1, 4), lam(1, 2)] {
            for n in 1..4 {
                match projector_closed(n, &l).negative_witness() {
                    Some(mu) => {
                        assert!(mu.is_positive());
                        assert_eq!(
                            projector_closed(n, &l).form.sign_at(&mu),
                            Some(std::cmp::Ordering::Less)
                        );
                    }
                    None => panic!("pi_{n} should dip below zero"),
                }
            }
            assert_eq!(
                projector_closed(0, &l).sign_on_half_line(),
                HalfLineSign::Nonnegative
            );
        }
    }
}
