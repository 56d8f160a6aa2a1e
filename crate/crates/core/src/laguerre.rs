//! Laguerre polynomials `L_n` (weight `e^-z`, `L_n(0) = 1`) and the exact
//! identities they satisfy.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{
    binomial, exp_integral, factorial, int, pow, quadrature, rat, serde_str, to_f64,
    BivariateSeries, ExpPoly, QuadratureOptions, Rational, RationalPoly,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaguerrePoly {
    pub n: u32,
    pub poly: RationalPoly,
}

/// `L_n(z) = sum_j C(n,j) (-1)^j z^j / j!`
pub fn laguerre(n: u32) -> LaguerrePoly {
    let coeffs = (0..=n)
        .map(|j| {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            Rational::new(BigInt::from(sign) * binomial(n, j), factorial(j))
        })
        .collect();
    LaguerrePoly {
        n,
        poly: RationalPoly::new(coeffs),
    }
}

/// `L_0 .. L_n` evaluated at a rational point through the three-term recurrence.
pub fn laguerre_values(n_max: u32, x: &Rational) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n_max as usize + 1);
    out.push(Rational::one());
    if n_max == 0 {
        return out;
    }
    out.push(Rational::one() - x);
    for k in 1..n_max {
        let kk = int(k as i64);
        let next = ((int(2 * k as i64 + 1) - x) * &out[k as usize] - &kk * &out[k as usize - 1])
            / int(k as i64 + 1);
        out.push(next);
    }
    out
}

/// `L_n(x)` in floating point.
pub fn laguerre_f64(n: u32, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 1.0 - x);
    if n == 0 {
        return prev;
    }
    for k in 1..n {
        let k = k as f64;
        let next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Lower-triangular change-of-basis matrix `A[i][j] = (-1)^j C(i,j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisMatrix {
    size: usize,
    entries: Vec<Vec<Rational>>,
}

impl BasisMatrix {
    pub fn new(size: usize) -> Self {
        let entries = (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| {
                        let sign = if j % 2 == 0 { 1 } else { -1 };
                        Rational::from_integer(BigInt::from(sign) * binomial(i as u32, j as u32))
                    })
                    .collect()
            })
            .collect();
        BasisMatrix { size, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }

    pub fn squared(&self) -> Vec<Vec<Rational>> {
        mat_mul(&self.entries, &self.entries)
    }

    pub fn is_involution(&self) -> bool {
        is_identity(&self.squared())
    }

    /// `L = A D X`: the Laguerre polynomials from the monomials.
    pub fn laguerre_from_monomials(&self) -> Vec<RationalPoly> {
        (0..self.size)
            .map(|i| {
                let coeffs = (0..self.size)
                    .map(|j| &self.entries[i][j] / Rational::from_integer(factorial(j as u32)))
                    .collect();
                RationalPoly::new(coeffs)
            })
            .collect()
    }

    /// `X = D^-1 A L`: monomials rebuilt from Laguerre polynomials.
    pub fn monomials_from_laguerre(&self) -> Vec<RationalPoly> {
        (0..self.size)
            .map(|r| {
                let scale = Rational::from_integer(factorial(r as u32));
                (0..self.size).fold(RationalPoly::zero(), |acc, i| {
                    &acc + &laguerre(i as u32)
                        .poly
                        .scale(&(&self.entries[r][i] * &scale))
                })
            })
            .collect()
    }
}

pub(crate) fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    a[i].iter()
                        .zip(b.iter())
                        .filter(|(x, _)| !x.is_zero())
                        .map(|(x, row)| x * &row[j])
                        .fold(Rational::zero(), |s, v| s + v)
                })
                .collect()
        })
        .collect()
}

pub(crate) fn is_identity(m: &[Vec<Rational>]) -> bool {
    m.iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, v)| if i == j { v.is_one() } else { v.is_zero() })
    })
}

/// An exact quantity obtained by two independent routes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoWay {
    #[serde(with = "serde_str")]
    pub formula: Rational,
    #[serde(with = "serde_str")]
    pub integral: Rational,
}

impl TwoWay {
    pub fn agrees(&self) -> bool {
        self.formula == self.integral
    }
}

/// `(-1)^n C(k,n) k!` for `k >= n`, else 0.
pub fn moment_formula(k: u32, n: u32) -> Rational {
    if k < n {
        return Rational::zero();
    }
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    Rational::from_integer(BigInt::from(sign) * binomial(k, n) * factorial(k))
}

/// `int_0^inf z^k L_n(z) e^-z dz`, by integration and by formula.
pub fn moment_integral(k: u32, n: u32) -> TwoWay {
    let integrand = ExpPoly::single(
        &RationalPoly::monomial(Rational::one(), k as usize) * &laguerre(n).poly,
        Rational::one(),
    );
    TwoWay {
        formula: moment_formula(k, n),
        integral: exp_integral(&integrand).expect("unit rate is integrable"),
    }
}

fn open_unit(lambda: &Rational) -> Result<()> {
    if !lambda.is_positive() || *lambda >= Rational::one() {
        return Err(Error::Domain(format!(
            "lambda = {lambda} must lie in (0, 1)"
        )));
    }
    Ok(())
}

/// `int_0^inf L_m((1-l) z) L_n(z) e^-z dz` against `C(m,n) l^m ((1-l)/l)^n` (zero for `m < n`).
pub fn mixed_orthogonality(m: u32, n: u32, lambda: &Rational) -> Result<TwoWay> {
    open_unit(lambda)?;
    let one_minus = Rational::one() - lambda;
    let integrand = ExpPoly::single(
        &laguerre(m).poly.rescale_arg(&one_minus) * &laguerre(n).poly,
        Rational::one(),
    );
    let formula = if m >= n {
        Rational::from_integer(binomial(m, n)) * pow(lambda, m) * pow(&(&one_minus / lambda), n)
    } else {
        Rational::zero()
    };
    Ok(TwoWay {
        formula,
        integral: exp_integral(&integrand)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesComparison {
    pub n: u32,
    pub orders: (usize, usize),
    /// `(lambda power, z power)` of every mismatching coefficient.
    pub mismatches: Vec<(usize, usize)>,
    pub nonzero_coefficients: usize,
}

impl SeriesComparison {
    pub fn equal(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Left side of the series/closed-form identity for the projectors:
/// `(-1)^n sum_k l^(n+k) C(n+k,k) L_(n+k)(z/l)` as a series in `(l, z)`.
pub fn lagid_series_side(n: u32, orders: (usize, usize)) -> BivariateSeries {
    let mut out = BivariateSeries::zero(orders);
    let sign = if n.is_multiple_of(2) { int(1) } else { int(-1) };
    // l^m L_m(z/l) = sum_j C(m,j) (-1)^j z^j l^(m-j) / j!  contributes l^(m-j) z^j
    let k_stop = (orders.0 + orders.1) as u32;
    for k in 0..k_stop {
        let m = n + k;
        let outer = &sign * Rational::from_integer(binomial(m, k));
        for j in 0..=m.min(orders.1 as u32) {
            let lp = (m - j) as usize;
            if lp >= orders.0 {
                continue;
            }
            let jsign = if j % 2 == 0 { int(1) } else { int(-1) };
            let c = &outer * jsign * Rational::new(binomial(m, j), factorial(j));
            out.add_term(&c, lp, j as usize);
        }
    }
    out
}

/// Right side: `(1/(1-l)) (-l/(1-l))^n L_n(z/(l(1-l))) exp(-z/(1-l))`.
pub fn lagid_closed_side(n: u32, orders: (usize, usize)) -> BivariateSeries {
    let one = BivariateSeries::one(orders);
    let lam = BivariateSeries::x(orders);
    let z = BivariateSeries::y(orders);
    let u = (&one - &lam).inverse();
    // (-l)^n L_n(z u / l) = (-1)^n sum_j C(n,j) (-1)^j / j! z^j u^j l^(n-j)
    let mut poly_part = BivariateSeries::zero(orders);
    for j in 0..=n {
        let jsign = if (n + j).is_multiple_of(2) {
            int(1)
        } else {
            int(-1)
        };
        let c = jsign * Rational::new(binomial(n, j), factorial(j));
        let term = &(&z.pow(j) * &u.pow(j)) * &lam.pow(n - j);
        poly_part = &poly_part + &term.scale(&c);
    }
    let damping = (-(&z * &u)).exp();
    &(&u.pow(n + 1) * &poly_part) * &damping
}

/// Compares both sides of the projector identity as truncated series in `(lambda, z)`.
pub fn verify_lagid(n: u32, orders: (usize, usize)) -> Result<SeriesComparison> {
    if orders.0 < n as usize || orders.1 < n as usize {
        return Err(Error::Domain(format!(
            "truncation orders {orders:?} must be at least n = {n}"
        )));
    }
    let lhs = lagid_series_side(n, orders);
    let rhs = lagid_closed_side(n, orders);
    let nonzero = (0..orders.0)
        .flat_map(|i| (0..orders.1).map(move |j| (i, j)))
        .filter(|&(i, j)| !lhs.coeff(i, j).is_zero())
        .count();
    Ok(SeriesComparison {
        n,
        orders,
        mismatches: lhs.differences(&rhs),
        nonzero_coefficients: nonzero,
    })
}

/// `sum_k x^k (-1)^k L_k(z)` against `(1/(1+x)) exp(z x/(1+x))` as series in `(x, z)`.
pub fn verify_generating_function(order: usize) -> SeriesComparison {
    let orders = (order, order);
    let mut lhs = BivariateSeries::zero(orders);
    for k in 0..order as u32 {
        let sign = if k % 2 == 0 { int(1) } else { int(-1) };
        for (j, c) in laguerre(k).poly.coeffs().iter().enumerate() {
            lhs.add_term(&(&sign * c), k as usize, j);
        }
    }
    let one = BivariateSeries::one(orders);
    let x = BivariateSeries::x(orders);
    let inv = (&one + &x).inverse();
    let rhs = &inv * &(&(&BivariateSeries::y(orders) * &x) * &inv).exp();
    SeriesComparison {
        n: 0,
        orders,
        mismatches: lhs.differences(&rhs),
        nonzero_coefficients: 0,
    }
}

/// Exact check of `sum_k (1/2)^(n+k) C(n+k,k) = 2` through its partial sums.
///
/// With `S_K = sum_{k<K} C(n+k,k)/2^(n+k)` the negative-binomial tail gives
/// `S_K + 2 P(Bin(n+K, 1/2) <= n) = 2` for every `K`; the tail term tends to 0.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HalfSumCheck {
    pub n: u32,
    pub terms: u32,
    #[serde(with = "serde_str")]
    pub partial_sum: Rational,
    #[serde(with = "serde_str")]
    pub tail: Rational,
    pub identity_holds: bool,
}

pub fn half_sum_check(n: u32, terms: u32) -> HalfSumCheck {
    let half = rat(1, 2);
    let partial = (0..terms).fold(Rational::zero(), |acc, k| {
        acc + Rational::from_integer(binomial(n + k, k)) * pow(&half, n + k)
    });
    let trials = n + terms;
    let tail = (0..=n).fold(Rational::zero(), |acc, j| {
        acc + Rational::from_integer(binomial(trials, j)) * pow(&half, trials)
    }) * int(2);
    HalfSumCheck {
        n,
        terms,
        identity_holds: &partial + &tail == int(2),
        partial_sum: partial,
        tail,
    }
}

/// `Gamma(h) = c sqrt(pi)` for half-integer `h`; returns `c`.
pub fn half_integer_gamma(h: &Rational) -> Option<Rational> {
    let twice = h * int(2);
    if !twice.is_integer() || twice.to_integer() % 2 == BigInt::zero() {
        return None;
    }
    let half = rat(1, 2);
    let mut c = Rational::one();
    let mut x = half.clone();
    while x < *h {
        c *= &x;
        x += int(1);
    }
    while x > *h {
        x -= int(1);
        c /= &x;
    }
    Some(c)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GammaMomentReport {
    #[serde(with = "serde_str")]
    pub p: Rational,
    pub n: u32,
    pub quadrature: f64,
    pub panels: usize,
    pub formula: f64,
    /// Exact value as a rational multiple of `sqrt(pi)` when `p` is a half-integer.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sqrt_pi_multiple: Option<String>,
}

impl GammaMomentReport {
    pub fn difference(&self) -> f64 {
        (self.quadrature - self.formula).abs()
    }
}

/// `int_0^inf z^p L_n(z) e^-z dz` by quadrature, against
/// `(-1)^n Gamma(p+1)^2 / (n! Gamma(p-n+1))`.
pub fn gamma_moment(p: &Rational, n: u32, tolerance: f64) -> Result<GammaMomentReport> {
    if *p <= int(-1) {
        return Err(Error::Domain(format!("p = {p} must exceed -1")));
    }
    let pf = to_f64(p);
    let poly = laguerre(n).poly;
    let q = quadrature(
        |z| {
            if z == 0.0 {
                return if pf > 0.0 { 0.0 } else { f64::NAN };
            }
            z.powf(pf) * poly.eval_f64(z) * (-z).exp()
        },
        QuadratureOptions::with_tolerance(tolerance),
    )?;
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let one = int(1);
    let (formula, exact) = if p.is_integer() {
        let k = p.to_integer().to_u32().expect("p > -1");
        let exact = moment_formula(k, n);
        (to_f64(&exact), Some(exact.to_string()))
    } else if let (Some(top), Some(bottom)) = (
        half_integer_gamma(&(p + &one)),
        half_integer_gamma(&(p - int(n as i64) + &one)),
    ) {
        let c = &top * &top / (Rational::from_integer(factorial(n)) * bottom) * int(sign as i64);
        (
            to_f64(&c) * std::f64::consts::PI.sqrt(),
            Some(format!("{c}")),
        )
    } else {
        let g = |x: f64| statrs::function::gamma::gamma(x);
        let top = g(pf + 1.0);
        let bottom = g(pf - n as f64 + 1.0);
        (
            sign * top * top / (to_f64(&Rational::from_integer(factorial(n))) * bottom),
            None,
        )
    };
    Ok(GammaMomentReport {
        p: p.clone(),
        n,
        quadrature: q.value,
        panels: q.panels,
        formula,
        sqrt_pi_multiple: exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_polynomials() {
        assert_eq!(laguerre(0).poly, RationalPoly::one());
        assert_eq!(laguerre(1).poly, RationalPoly::from_ints(&[1, -1]));
        assert_eq!(
            laguerre(2).poly,
            RationalPoly::new(vec![int(1), int(-2), rat(1, 2)])
        );
        for n in 0..10 {
            assert_eq!(laguerre(n).poly.eval(&Rational::zero()), int(1));
        }
    }

    #[test]
    fn basis_construction_matches() {
        let a = BasisMatrix::new(12);
        for (n, l) in a.laguerre_from_monomials().iter().enumerate() {
            assert_eq!(*l, laguerre(n as u32).poly);
        }
        for (r, x) in a.monomials_from_laguerre().iter().enumerate() {
            assert_eq!(*x, RationalPoly::monomial(int(1), r));
        }
        assert!(a.is_involution());
    }

    #[test]
    fn recurrence_matches_coefficients() {
        let x = rat(7, 3);
        let vals = laguerre_values(12, &x);
        for (n, v) in vals.iter().enumerate() {
            assert_eq!(*v, laguerre(n as u32).poly.eval(&x));
            assert!((laguerre_f64(n as u32, 7.0 / 3.0) - to_f64(v)).abs() < 1e-12);
        }
    }

    #[test]
    fn orthonormal() {
        for m in 0..8u32 {
            for n in 0..8u32 {
                let f = ExpPoly::single(&laguerre(m).poly * &laguerre(n).poly, int(1));
                let expect = if m == n { int(1) } else { int(0) };
                assert_eq!(exp_integral(&f).unwrap(), expect);
            }
        }
    }

    #[test]
    fn moment_examples() {
        assert_eq!(moment_integral(0, 0).integral, int(1));
        assert_eq!(moment_integral(2, 1).integral, int(-4));
        assert_eq!(moment_integral(1, 2).integral, int(0));
        assert!(moment_integral(7, 3).agrees());
    }

    #[test]
    fn mixed_examples() {
        assert_eq!(
            mixed_orthogonality(1, 0, &rat(1, 2)).unwrap().integral,
            rat(1, 2)
        );
        assert_eq!(
            mixed_orthogonality(0, 1, &rat(1, 3)).unwrap().integral,
            int(0)
        );
        let l = rat(2, 7);
        for n in 0..6 {
            let r = mixed_orthogonality(n, n, &l).unwrap();
            assert_eq!(r.integral, pow(&(int(1) - &l), n));
            assert!(r.agrees());
        }
        assert!(mixed_orthogonality(1, 1, &int(0)).is_err());
        assert!(mixed_orthogonality(1, 1, &int(1)).is_err());
    }

    #[test]
    fn lagid_small_orders() {
        for n in 0..3 {
            let r = verify_lagid(n, (8, 8)).unwrap();
            assert!(r.equal(), "n = {n}: {:?}", r.mismatches);
            assert!(r.nonzero_coefficients > 0);
        }
        assert!(verify_lagid(5, (4, 8)).is_err());
    }

    #[test]
    fn lagid_detects_a_wrong_side() {
        // shifting the projector index must break the identity
        let lhs = lagid_series_side(1, (6, 6));
        let rhs = lagid_closed_side(2, (6, 6));
        assert!(!lhs.differences(&rhs).is_empty());
    }

    #[test]
    fn generating_function() {
        assert!(verify_generating_function(8).equal());
    }

    #[test]
    fn half_sums() {
        for n in 0..6 {
            let c = half_sum_check(n, 40);
            assert!(c.identity_holds);
            assert!(c.tail < rat(1, 1000));
        }
    }

    #[test]
    fn half_integer_gammas() {
        assert_eq!(half_integer_gamma(&rat(1, 2)), Some(int(1)));
        assert_eq!(half_integer_gamma(&rat(3, 2)), Some(rat(1, 2)));
        assert_eq!(half_integer_gamma(&rat(5, 2)), Some(rat(3, 4)));
        assert_eq!(half_integer_gamma(&rat(-1, 2)), Some(int(-2)));
        assert_eq!(half_integer_gamma(&int(2)), None);
    }

    #[test]
    fn gamma_moments() {
        let sqrt_pi = std::f64::consts::PI.sqrt();
        let r = gamma_moment(&rat(1, 2), 0, 1e-9).unwrap();
        assert!((r.formula - sqrt_pi / 2.0).abs() < 1e-14);
        assert!(r.difference() < 1e-6);
        let r = gamma_moment(&rat(1, 2), 1, 1e-9).unwrap();
        assert!((r.formula + sqrt_pi / 4.0).abs() < 1e-14);
        assert!(r.difference() < 1e-6);
        let r = gamma_moment(&int(3), 2, 1e-9).unwrap();
        assert_eq!(r.formula, 18.0);
        assert!(r.difference() < 1e-6);
        let r = gamma_moment(&rat(1, 3), 2, 1e-9).unwrap();
        assert!(r.difference() < 1e-6, "{r:?}");
        assert!(gamma_moment(&int(-1), 0, 1e-9).is_err());
    }
}
