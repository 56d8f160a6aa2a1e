//! Dense univariate polynomials over the rationals.
//!
//! Besides the ring operations this module carries the exact real-root
//! machinery (square-free factorization and Sturm sequences) used to decide
//! the sign of a polynomial on the half line `[0, inf)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{int, to_f64, Rational};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RationalPoly {
    coeffs: Vec<Rational>,
}

impl fmt::Debug for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{k}")?,
            }
        }
        Ok(())
    }
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    pub fn zero() -> Self {
        RationalPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c z^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// `z * p(z)`
    pub fn shift_up(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs)
    }

    /// `p(s z)`
    pub fn rescale_arg(&self, s: &Rational) -> Self {
        let mut pw = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &pw);
            pw *= s;
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lc = self.leading();
        self.scale(&(Rational::one() / lc))
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.coeffs.len() - 1;
        let lc = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dd] / &lc;
            if q.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * dc;
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's square-free factorization: `(factor, multiplicity)` pairs with
    /// monic square-free factors whose product (with powers) is `self.monic()`.
    pub fn square_free_factors(&self) -> Vec<(RationalPoly, u32)> {
        let f = self.monic();
        if f.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let c = df.div_rem(&a0).0;
        let mut d = &c - &b.derivative();
        let mut out = Vec::new();
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            let nb = b.div_rem(&a).0;
            let nc = d.div_rem(&a).0;
            d = &nc - &nb.derivative();
            b = nb;
            if a.degree().unwrap_or(0) > 0 {
                out.push((a, i));
            }
            i += 1;
        }
        out
    }

    /// Bound strictly exceeding the absolute value of every real root.
    pub fn root_bound(&self) -> Rational {
        let lc = self.leading().abs();
        let max = self
            .coeffs
            .iter()
            .take(self.coeffs.len().saturating_sub(1))
            .map(|c| c.abs() / &lc)
            .max()
            .unwrap_or_else(Rational::zero);
        max + int(1)
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`;
    /// `hi = None` stands for `+inf`.
    pub fn count_roots(&self, lo: &Rational, hi: Option<&Rational>) -> usize {
        let sf = self.square_free_part();
        let seq = sturm_sequence(&sf);
        sign_changes(&seq, Some(lo)) - sign_changes(&seq, hi)
    }

    fn square_free_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }

    /// Decides exactly whether `self(z) >= 0` for every `z >= 0`.
    pub fn sign_on_half_line(&self) -> HalfLineSign {
        if self.is_zero() {
            return HalfLineSign::Nonnegative;
        }
        let zero = Rational::zero();
        if self.eval(&zero).is_negative() {
            return HalfLineSign::NegativeAt(zero);
        }
        // only odd-multiplicity factors change sign
        let odd = self
            .square_free_factors()
            .into_iter()
            .filter(|(_, m)| m % 2 == 1)
            .fold(Self::one(), |acc, (f, _)| &acc * &f);
        let bound = self.root_bound();
        if odd.degree().unwrap_or(0) == 0 || odd.count_roots(&zero, None) == 0 {
            return if self.leading().is_positive() {
                HalfLineSign::Nonnegative
            } else {
                HalfLineSign::NegativeAt(bound)
            };
        }
        let seq = sturm_sequence(&odd);
        let count = |lo: &Rational, hi: &Rational| {
            sign_changes(&seq, Some(lo)) - sign_changes(&seq, Some(hi))
        };
        let two = int(2);
        let (mut lo, mut hi) = (zero, bound);
        loop {
            let mid = (&lo + &hi) / &two;
            if count(&lo, &mid) >= 1 {
                hi = mid;
            } else {
                lo = mid;
            }
            if count(&lo, &hi) != 1 {
                continue;
            }
            let width = &hi - &lo;
            let mut candidates = vec![lo.clone()];
            if odd.eval(&hi).is_zero() {
                let beyond = &hi + &width;
                if count(&hi, &beyond) == 0 {
                    candidates.push(beyond);
                }
            } else {
                candidates.push(hi.clone());
            }
            if let Some(w) = candidates.into_iter().find(|x| self.eval(x).is_negative()) {
                return HalfLineSign::NegativeAt(w);
            }
        }
    }
}

/// Exact verdict on the sign of a function over `[0, inf)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HalfLineSign {
    Nonnegative,
    NegativeAt(Rational),
}

fn sturm_sequence(p: &RationalPoly) -> Vec<RationalPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    while !seq[seq.len() - 1].is_zero() {
        let n = seq.len();
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
        seq.push(-r);
    }
    seq.pop();
    seq
}

fn sign_changes(seq: &[RationalPoly], x: Option<&Rational>) -> usize {
    let signs: Vec<bool> = seq
        .iter()
        .map(|p| match x {
            Some(x) => p.eval(x),
            None => p.leading(),
        })
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

impl Add for &RationalPoly {
    type Output = RationalPoly;
    fn add(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &RationalPoly {
    type Output = RationalPoly;
    fn sub(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;
    fn mul(self, rhs: &RationalPoly) -> RationalPoly {
        if self.is_zero() || rhs.is_zero() {
            return RationalPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPoly::new(out)
    }
}

impl Neg for RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        RationalPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Add for RationalPoly {
    type Output = RationalPoly;
    fn add(self, rhs: RationalPoly) -> RationalPoly {
        &self + &rhs
    }
}

impl Sub for RationalPoly {
    type Output = RationalPoly;
    fn sub(self, rhs: RationalPoly) -> RationalPoly {
        &self - &rhs
    }
}

impl Mul for RationalPoly {
    type Output = RationalPoly;
    fn mul(self, rhs: RationalPoly) -> RationalPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> RationalPoly {
        RationalPoly::from_ints(c)
    }

    #[test]
    fn trims_and_degrees() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[0]).degree(), None);
        let a = p(&[1, 1]);
        let b = p(&[-1, 0, 3]);
        assert_eq!((&a * &b).degree(), Some(3));
    }

    #[test]
    fn division_and_gcd() {
        // (z-1)^2 (z+2) and (z-1)(z+3)
        let f = &p(&[1, -2, 1]) * &p(&[2, 1]);
        let g = &p(&[-1, 1]) * &p(&[3, 1]);
        assert_eq!(f.gcd(&g), p(&[-1, 1]));
        let (q, r) = f.div_rem(&g);
        assert_eq!(&(&q * &g) + &r, f);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn yun_factorization() {
        // (z-1)^3 (z+2)^2 z
        let f = &(&p(&[-1, 1]).pow(3) * &p(&[2, 1]).pow(2)) * &p(&[0, 1]);
        let factors = f.square_free_factors();
        let rebuilt = factors
            .iter()
            .fold(RationalPoly::one(), |acc, (g, m)| &acc * &g.pow(*m));
        assert_eq!(rebuilt, f.monic());
        let mults: Vec<u32> = factors.iter().map(|(_, m)| *m).collect();
        assert_eq!(mults, vec![1, 2, 3]);
    }

    #[test]
    fn sturm_counts() {
        // roots 1, 2, 3
        let f = &(&p(&[-1, 1]) * &p(&[-2, 1])) * &p(&[-3, 1]);
        assert_eq!(f.count_roots(&rat(0, 1), None), 3);
        assert_eq!(f.count_roots(&rat(3, 2), Some(&rat(3, 1))), 2);
        assert_eq!(f.count_roots(&rat(0, 1), Some(&rat(1, 2))), 0);
        // z^2 + 1 has no real roots
        assert_eq!(p(&[1, 0, 1]).count_roots(&rat(-10, 1), None), 0);
    }

    #[test]
    fn half_line_sign() {
        use HalfLineSign::*;
        // (z-1)^2 touches zero but never goes negative
        assert_eq!(p(&[1, -2, 1]).sign_on_half_line(), Nonnegative);
        // z^2 - 2 is negative near 0
        assert_eq!(p(&[-2, 0, 1]).sign_on_half_line(), NegativeAt(rat(0, 1)));
        // (z-1)(z-2) = z^2 - 3z + 2 dips below zero inside (1,2)
        let f = p(&[2, -3, 1]);
        match f.sign_on_half_line() {
            NegativeAt(w) => {
                assert!(f.eval(&w).is_negative());
                assert!(w > rat(1, 1) && w < rat(2, 1));
            }
            other => panic!("expected a witness, got {other:?}"),
        }
        // (z-1)^3 with a dyadic root: negative just left of it
        let g = p(&[-1, 1]).pow(3).scale(&rat(-1, 1));
        assert!(matches!(g.sign_on_half_line(), NegativeAt(w) if g.eval(&w).is_negative()));
        // - (z - 1/3)^2 (z+1) is nonpositive, negative away from 1/3
        let h = (&RationalPoly::new(vec![rat(-1, 3), rat(1, 1)]).pow(2) * &p(&[1, 1]))
            .scale(&rat(-1, 1));
        assert!(matches!(h.sign_on_half_line(), NegativeAt(w) if h.eval(&w).is_negative()));
        assert_eq!(RationalPoly::zero().sign_on_half_line(), Nonnegative);
    }

    proptest! {
        #[test]
        fn ring_laws(a in prop::collection::vec(-5i64..5, 0..5),
                     b in prop::collection::vec(-5i64..5, 0..5),
                     c in prop::collection::vec(-5i64..5, 0..5)) {
            let (a, b, c) = (p(&a), p(&b), p(&c));
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() && !b.is_zero() {
                prop_assert_eq!((&a * &b).degree().unwrap(), a.degree().unwrap() + b.degree().unwrap());
            }
        }

        #[test]
        fn half_line_witness_is_negative(a in prop::collection::vec(-6i64..6, 1..6)) {
            let f = p(&a);
            if let HalfLineSign::NegativeAt(w) = f.sign_on_half_line() {
                prop_assert!(f.eval(&w).is_negative());
                prop_assert!(!w.is_negative());
            } else {
                // a nonnegative verdict must survive a dense sample
                for k in 0..200 {
                    let x = rat(k, 8);
                    prop_assert!(!f.eval(&x).is_negative());
                }
            }
        }
    }
}
