//! Exponential polynomials `sum_i P_i(mu) exp(-c_i mu)` with rational data.
//!
//! The class is closed under sums, products and `d/dmu`, and every member
//! with positive rates integrates exactly over `[0, inf)` through
//! `int_0^inf mu^k exp(-c mu) dmu = k! / c^(k+1)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::poly::{HalfLineSign, RationalPoly};
use super::rational::{factorial, format_rational, parse_rational, pow, to_f64, Rational};
use crate::error::{Error, Result};

/// One `P(mu) exp(-rate mu)` term.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExpTerm {
    pub poly: RationalPoly,
    pub rate: Rational,
}

/// Canonical form: terms sorted by rate, rates distinct, no zero polynomials.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ExpPoly {
    terms: Vec<ExpTerm>,
}

impl ExpPoly {
    pub fn zero() -> Self {
        ExpPoly { terms: Vec::new() }
    }

    /// `P(mu) exp(-rate mu)`
    pub fn single(poly: RationalPoly, rate: Rational) -> Self {
        Self::from_terms(vec![ExpTerm { poly, rate }])
    }

    pub fn polynomial(poly: RationalPoly) -> Self {
        Self::single(poly, Rational::zero())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ExpTerm>) -> Self {
        let mut all: Vec<ExpTerm> = terms.into_iter().collect();
        all.sort_by(|a, b| a.rate.cmp(&b.rate));
        let mut merged: Vec<ExpTerm> = Vec::with_capacity(all.len());
        for t in all {
            match merged.last_mut() {
                Some(last) if last.rate == t.rate => last.poly = &last.poly + &t.poly,
                _ => merged.push(t),
            }
        }
        merged.retain(|t| !t.poly.is_zero());
        ExpPoly { terms: merged }
    }

    pub fn terms(&self) -> &[ExpTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|t| ExpTerm {
            poly: t.poly.scale(s),
            rate: t.rate.clone(),
        }))
    }

    /// `mu * f(mu)`
    pub fn mul_mu(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|t| ExpTerm {
            poly: t.poly.shift_up(),
            rate: t.rate.clone(),
        }))
    }

    pub fn derivative(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|t| ExpTerm {
            poly: &t.poly.derivative() - &t.poly.scale(&t.rate),
            rate: t.rate.clone(),
        }))
    }

    /// Exact `int_0^inf f(mu) dmu`; every rate must be positive.
    pub fn integral(&self) -> Result<Rational> {
        let mut total = Rational::zero();
        for t in &self.terms {
            if !t.rate.is_positive() {
                return Err(Error::NotIntegrable {
                    rate: t.rate.clone(),
                });
            }
            let inv = Rational::one() / &t.rate;
            let mut inv_pow = inv.clone();
            for (k, c) in t.poly.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    total += c * Rational::from_integer(factorial(k as u32)) * &inv_pow;
                }
                inv_pow *= &inv;
            }
        }
        Ok(total)
    }

    /// Value at `mu = 0`, exact.
    pub fn at_zero(&self) -> Rational {
        self.terms
            .iter()
            .map(|t| t.poly.coeff(0))
            .fold(Rational::zero(), |a, b| a + b)
    }

    pub fn eval_f64(&self, mu: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| t.poly.eval_f64(mu) * (-to_f64(&t.rate) * mu).exp())
            .sum()
    }

    /// `(P_i(mu), rate_i * mu)` pairs so that `f(mu) = sum P_i exp(-rate_i mu)`
    /// with every factor except the exponentials exact.
    pub fn eval_parts(&self, mu: &Rational) -> Vec<(Rational, Rational)> {
        self.terms
            .iter()
            .map(|t| (t.poly.eval(mu), &t.rate * mu))
            .collect()
    }

    /// Exact sign at a rational point when at most one rate is present.
    pub fn sign_at(&self, mu: &Rational) -> Option<std::cmp::Ordering> {
        match self.terms.as_slice() {
            [] => Some(std::cmp::Ordering::Equal),
            [t] => Some(t.poly.eval(mu).cmp(&Rational::zero())),
            _ => None,
        }
    }

    /// Exact sign decision on `[0, inf)`; `None` when several rates are present.
    pub fn sign_on_half_line(&self) -> Option<HalfLineSign> {
        match self.terms.as_slice() {
            [] => Some(HalfLineSign::Nonnegative),
            [t] => Some(t.poly.sign_on_half_line()),
            _ => None,
        }
    }

    pub fn to_json_terms(&self) -> Vec<ExpTermJson> {
        self.terms
            .iter()
            .map(|t| ExpTermJson {
                coeffs: t.poly.coeffs().iter().map(format_rational).collect(),
                rate: format_rational(&t.rate),
            })
            .collect()
    }

    pub fn from_json_terms(terms: &[ExpTermJson]) -> Result<Self> {
        let mut out = Vec::with_capacity(terms.len());
        for t in terms {
            let coeffs = t
                .coeffs
                .iter()
                .map(|c| parse_rational(c))
                .collect::<Result<Vec<_>>>()?;
            out.push(ExpTerm {
                poly: RationalPoly::new(coeffs),
                rate: parse_rational(&t.rate)?,
            });
        }
        Ok(Self::from_terms(out))
    }
}

/// Wire form of one term: `{"coeffs": ["p/q", ...], "rate": "p/q"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpTermJson {
    pub coeffs: Vec<String>,
    pub rate: String,
}

impl Serialize for ExpPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_terms().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExpPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<ExpTermJson>::deserialize(d)?;
        ExpPoly::from_json_terms(&terms).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{}] exp(-{} mu)", t.poly, t.rate)?;
        }
        Ok(())
    }
}

impl Add for &ExpPoly {
    type Output = ExpPoly;
    fn add(self, rhs: &ExpPoly) -> ExpPoly {
        ExpPoly::from_terms(self.terms.iter().chain(rhs.terms.iter()).cloned())
    }
}

impl Sub for &ExpPoly {
    type Output = ExpPoly;
    fn sub(self, rhs: &ExpPoly) -> ExpPoly {
        self + &(-rhs.clone())
    }
}

impl Mul for &ExpPoly {
    type Output = ExpPoly;
    fn mul(self, rhs: &ExpPoly) -> ExpPoly {
        let mut out = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for a in &self.terms {
            for b in &rhs.terms {
                out.push(ExpTerm {
                    poly: &a.poly * &b.poly,
                    rate: &a.rate + &b.rate,
                });
            }
        }
        ExpPoly::from_terms(out)
    }
}

impl Neg for ExpPoly {
    type Output = ExpPoly;
    fn neg(self) -> ExpPoly {
        self.scale(&-Rational::one())
    }
}

impl Add for ExpPoly {
    type Output = ExpPoly;
    fn add(self, rhs: ExpPoly) -> ExpPoly {
        &self + &rhs
    }
}

impl Sub for ExpPoly {
    type Output = ExpPoly;
    fn sub(self, rhs: ExpPoly) -> ExpPoly {
        &self - &rhs
    }
}

impl Mul for ExpPoly {
    type Output = ExpPoly;
    fn mul(self, rhs: ExpPoly) -> ExpPoly {
        &self * &rhs
    }
}

/// `int_0^inf f dmu`, see [`ExpPoly::integral`].
pub fn exp_integral(f: &ExpPoly) -> Result<Rational> {
    f.integral()
}

/// `int_0^inf mu^k exp(-c mu) dmu = k!/c^(k+1)`
pub fn gamma_moment(k: u32, rate: &Rational) -> Rational {
    Rational::from_integer(factorial(k)) / pow(rate, k + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use proptest::prelude::*;

    fn e(coeffs: &[i64], rate: Rational) -> ExpPoly {
        ExpPoly::single(RationalPoly::from_ints(coeffs), rate)
    }

    #[test]
    fn integral_examples() {
        assert_eq!(exp_integral(&e(&[1], int(1))).unwrap(), int(1));
        assert_eq!(exp_integral(&e(&[0, 0, 1], int(1))).unwrap(), int(2));
        // (1 - 4 mu) * 2 * (-1) * exp(-2 mu) = pi_1 at lambda = 1/2
        let f = e(&[1, -4], int(2)).scale(&int(-2));
        // term by term: -2 * (1/2) + 8 * (1/4) = 1
        assert_eq!(exp_integral(&f).unwrap(), int(1));
    }

    #[test]
    fn integral_rejects_nonpositive_rates() {
        assert!(matches!(
            exp_integral(&e(&[1], int(0))),
            Err(Error::NotIntegrable { .. })
        ));
        assert!(exp_integral(&e(&[1], int(-1))).is_err());
        assert_eq!(exp_integral(&ExpPoly::zero()).unwrap(), int(0));
    }

    #[test]
    fn canonical_merge() {
        let a = e(&[1, 2], rat(1, 2));
        let b = e(&[-1, -2], rat(2, 4));
        assert!((&a + &b).is_zero());
        let c = &a + &e(&[3], int(1));
        assert_eq!(c.terms().len(), 2);
        assert_eq!(c.terms()[0].rate, rat(1, 2));
    }

    #[test]
    fn sign_and_values() {
        let f = e(&[1, -4], int(2));
        assert_eq!(f.sign_at(&rat(1, 10)), Some(std::cmp::Ordering::Greater));
        assert_eq!(f.sign_at(&rat(1, 2)), Some(std::cmp::Ordering::Less));
        assert!((f.eval_f64(0.5) - -(-1.0f64).exp()).abs() < 1e-15);
        assert_eq!(f.at_zero(), int(1));
    }

    #[test]
    fn json_shape() {
        let f = e(&[1, -4], int(2)).scale(&rat(1, 3));
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"[{"coeffs":["1/3","-4/3"],"rate":"2"}]"#);
        let back: ExpPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
    }

    fn arb_exppoly() -> impl Strategy<Value = ExpPoly> {
        prop::collection::vec(
            (prop::collection::vec(-4i64..4, 0..4), 1i64..4, 1i64..3),
            0..3,
        )
        .prop_map(|ts| {
            ExpPoly::from_terms(ts.into_iter().map(|(c, n, d)| ExpTerm {
                poly: RationalPoly::from_ints(&c),
                rate: rat(n, d),
            }))
        })
    }

    proptest! {
        #[test]
        fn distributive(f in arb_exppoly(), g in arb_exppoly(), h in arb_exppoly()) {
            prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
        }

        #[test]
        fn integral_is_linear(f in arb_exppoly(), g in arb_exppoly(), a in -5i64..5, b in -5i64..5) {
            let (a, b) = (int(a), int(b));
            let lhs = exp_integral(&(&f.scale(&a) + &g.scale(&b))).unwrap();
            let rhs = a * exp_integral(&f).unwrap() + b * exp_integral(&g).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn integration_by_parts(f in arb_exppoly()) {
            // int_0^inf f' = -f(0)
            prop_assert_eq!(exp_integral(&f.derivative()).unwrap(), -f.at_zero());
        }

        #[test]
        fn product_rule(f in arb_exppoly(), g in arb_exppoly()) {
            let lhs = (&f * &g).derivative();
            let rhs = &(&f.derivative() * &g) + &(&f * &g.derivative());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
