//! Truncated double power series `sum_{i<K1, j<K2} c_ij x^i y^j`.
//!
//! Binary operations truncate to the smaller order in each variable.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{factorial, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateSeries {
    orders: (usize, usize),
    // row-major, orders.0 rows of orders.1 entries
    coeffs: Vec<Rational>,
}

impl BivariateSeries {
    pub fn zero(orders: (usize, usize)) -> Self {
        BivariateSeries {
            orders,
            coeffs: vec![Rational::zero(); orders.0 * orders.1],
        }
    }

    pub fn one(orders: (usize, usize)) -> Self {
        Self::monomial(Rational::one(), 0, 0, orders)
    }

    /// `c x^i y^j`, dropped when beyond the truncation orders.
    pub fn monomial(c: Rational, i: usize, j: usize, orders: (usize, usize)) -> Self {
        let mut s = Self::zero(orders);
        if i < orders.0 && j < orders.1 {
            s.coeffs[i * orders.1 + j] = c;
        }
        s
    }

    pub fn x(orders: (usize, usize)) -> Self {
        Self::monomial(Rational::one(), 1, 0, orders)
    }

    pub fn y(orders: (usize, usize)) -> Self {
        Self::monomial(Rational::one(), 0, 1, orders)
    }

    pub fn orders(&self) -> (usize, usize) {
        self.orders
    }

    pub fn coeff(&self, i: usize, j: usize) -> Rational {
        if i < self.orders.0 && j < self.orders.1 {
            self.coeffs[i * self.orders.1 + j].clone()
        } else {
            Rational::zero()
        }
    }

    pub fn add_term(&mut self, c: &Rational, i: usize, j: usize) {
        if i < self.orders.0 && j < self.orders.1 {
            self.coeffs[i * self.orders.1 + j] += c;
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0, 0)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        BivariateSeries {
            orders: self.orders,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    fn truncate_to(&self, orders: (usize, usize)) -> Self {
        let mut out = Self::zero(orders);
        for i in 0..orders.0.min(self.orders.0) {
            for j in 0..orders.1.min(self.orders.1) {
                out.coeffs[i * orders.1 + j] = self.coeff(i, j);
            }
        }
        out
    }

    fn meet(&self, other: &Self) -> (usize, usize) {
        (
            self.orders.0.min(other.orders.0),
            self.orders.1.min(other.orders.1),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.orders), |acc, _| &acc * self)
    }

    /// `1/f`; the constant term must be nonzero.
    pub fn inverse(&self) -> Self {
        let c0 = self.constant_term();
        assert!(
            !c0.is_zero(),
            "series inverse needs a nonzero constant term"
        );
        let inv0 = Rational::one() / &c0;
        // f = c0 (1 + h), h without constant term
        let mut h = self.scale(&inv0);
        h.coeffs[0] = Rational::zero();
        let neg_h = -h;
        let mut term = Self::one(self.orders);
        let mut sum = Self::one(self.orders);
        for _ in 1..self.nilpotency() {
            term = &term * &neg_h;
            sum = &sum + &term;
        }
        sum.scale(&inv0)
    }

    /// `exp(f)` for `f` without constant term.
    pub fn exp(&self) -> Self {
        assert!(
            self.constant_term().is_zero(),
            "series exp needs a zero constant term"
        );
        let mut term = Self::one(self.orders);
        let mut sum = Self::one(self.orders);
        for m in 1..self.nilpotency() {
            term = &term * self;
            sum = &sum
                + &term.scale(&(Rational::one() / Rational::from_integer(factorial(m as u32))));
        }
        sum
    }

    // any product of this many series without constant term vanishes
    fn nilpotency(&self) -> usize {
        self.orders.0 + self.orders.1
    }

    /// Indices of coefficients where the two series differ.
    pub fn differences(&self, other: &Self) -> Vec<(usize, usize)> {
        let orders = self.meet(other);
        let mut out = Vec::new();
        for i in 0..orders.0 {
            for j in 0..orders.1 {
                if self.coeff(i, j) != other.coeff(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

impl Add for &BivariateSeries {
    type Output = BivariateSeries;
    fn add(self, rhs: &BivariateSeries) -> BivariateSeries {
        let orders = self.meet(rhs);
        let mut out = self.truncate_to(orders);
        for i in 0..orders.0 {
            for j in 0..orders.1 {
                out.coeffs[i * orders.1 + j] += rhs.coeff(i, j);
            }
        }
        out
    }
}

impl Sub for &BivariateSeries {
    type Output = BivariateSeries;
    fn sub(self, rhs: &BivariateSeries) -> BivariateSeries {
        self + &(-rhs.clone())
    }
}

impl Neg for BivariateSeries {
    type Output = BivariateSeries;
    fn neg(self) -> BivariateSeries {
        BivariateSeries {
            orders: self.orders,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &BivariateSeries {
    type Output = BivariateSeries;
    fn mul(self, rhs: &BivariateSeries) -> BivariateSeries {
        let orders = self.meet(rhs);
        let mut out = BivariateSeries::zero(orders);
        for i1 in 0..orders.0 {
            for j1 in 0..orders.1 {
                let a = self.coeff(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..orders.0 - i1 {
                    for j2 in 0..orders.1 - j1 {
                        let b = &rhs.coeffs[i2 * rhs.orders.1 + j2];
                        if !b.is_zero() {
                            out.coeffs[(i1 + i2) * orders.1 + j1 + j2] += &a * b;
                        }
                    }
                }
            }
        }
        out
    }
}
