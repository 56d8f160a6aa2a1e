//! Star products on `C[a, abar]` with a formal `hbar`.
//!
//! The family is
//!
//! ```text
//! f *_l g = f exp(hbar ((1 - l) <d_a d_abar> - l <d_abar d_a>)) g
//! ```
//!
//! where `<d_x d_y>` differentiates `f` in `x` and `g` in `y`. For
//! polynomials the exponential series terminates. `l = 0` is the normal
//! ordering, `l = 1/2` the Groenewold-Moyal product, and every member is
//! obtained from the normal one by conjugating with `T_l = exp(l hbar d_a d_abar)`.
//!
//! The `q, p` view uses `a = q + i p/2`, `abar = q - i p/2`, i.e. the
//! holomorphic substitution with `m omega / 2 = 1`, so that `[q, p] = i hbar`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{
    factorial, falling, format_gauss, imag_unit, int, parse_gauss, pow, rat, real, Gauss, Rational,
    RationalPoly,
};

/// Deformation parameter `lambda`, `0 <= lambda < 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DeformParam(Rational);

impl DeformParam {
    pub fn new(lambda: Rational) -> Result<Self> {
        if lambda.is_negative() || lambda >= Rational::one() {
            return Err(Error::Domain(format!(
                "lambda = {lambda} is outside [0, 1)"
            )));
        }
        Ok(DeformParam(lambda))
    }

    pub fn from_ratio(n: i64, d: i64) -> Result<Self> {
        Self::new(rat(n, d))
    }

    pub fn normal() -> Self {
        DeformParam(Rational::zero())
    }

    pub fn groenewold_moyal() -> Self {
        DeformParam(rat(1, 2))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    /// `1 - lambda`; the dual of the normal form (`lambda = 1`) is excluded.
    pub fn dual(&self) -> Result<Self> {
        Self::new(Rational::one() - &self.0)
    }

    /// True for `0 <= lambda <= 1/2`, the range in which the family needs to be studied.
    pub fn is_canonical(&self) -> bool {
        self.0 <= rat(1, 2)
    }

    pub fn is_interior(&self) -> bool {
        self.0.is_positive()
    }
}

impl fmt::Display for DeformParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Physical constants; the dimensionless mode has both equal to one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelParams {
    pub hbar: Rational,
    pub omega: Rational,
}

impl Default for ModelParams {
    fn default() -> Self {
        ModelParams {
            hbar: Rational::one(),
            omega: Rational::one(),
        }
    }
}

impl ModelParams {
    pub fn new(hbar: Rational, omega: Rational) -> Result<Self> {
        if !hbar.is_positive() || !omega.is_positive() {
            return Err(Error::Domain("hbar and omega must be positive".into()));
        }
        Ok(ModelParams { hbar, omega })
    }

    pub fn quantum(&self) -> Rational {
        &self.hbar * &self.omega
    }
}

/// Real and imaginary parts.
type GaussInt = (BigInt, BigInt);

/// Exponents of `a^i abar^j hbar^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub a: u32,
    pub abar: u32,
    pub hbar: u32,
}

/// Sparse polynomial in `a, abar, hbar` with Gaussian rational coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct PhasePoly {
    terms: BTreeMap<Monomial, Gauss>,
}

impl PhasePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(real(Rational::one()))
    }

    pub fn constant(c: Gauss) -> Self {
        Self::monomial(c, 0, 0, 0)
    }

    pub fn monomial(c: Gauss, a: u32, abar: u32, hbar: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial { a, abar, hbar }, c);
        p
    }

    pub fn a() -> Self {
        Self::monomial(real(Rational::one()), 1, 0, 0)
    }

    pub fn abar() -> Self {
        Self::monomial(real(Rational::one()), 0, 1, 0)
    }

    pub fn hbar() -> Self {
        Self::monomial(real(Rational::one()), 0, 0, 1)
    }

    /// `q = (a + abar)/2`
    pub fn q() -> Self {
        (&Self::a() + &Self::abar()).scale_real(&rat(1, 2))
    }

    /// `p = i (abar - a)`
    pub fn p() -> Self {
        (&Self::abar() - &Self::a()).scale(&imag_unit())
    }

    /// `H = omega a abar`
    pub fn hamiltonian(omega: &Rational) -> Self {
        Self::monomial(real(omega.clone()), 1, 1, 0)
    }

    /// Polynomial in `s = a abar`.
    pub fn from_radial(p: &RationalPoly) -> Self {
        let mut out = Self::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            out.add_term(
                Monomial {
                    a: k as u32,
                    abar: k as u32,
                    hbar: 0,
                },
                real(c.clone()),
            );
        }
        out
    }

    /// Substitutes `q, p` polynomials: `sum c_ij q^i p^j`.
    pub fn from_qp(terms: &[(Gauss, u32, u32)]) -> Self {
        let (q, p) = (Self::q(), Self::p());
        terms.iter().fold(Self::zero(), |acc, (c, i, j)| {
            &acc + &(&q.pow(*i) * &p.pow(*j)).scale(c)
        })
    }

    fn add_term(&mut self, m: Monomial, c: Gauss) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Gauss::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Gauss)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: u32, abar: u32, hbar: u32) -> Gauss {
        self.terms
            .get(&Monomial { a, abar, hbar })
            .cloned()
            .unwrap_or_else(Gauss::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree in `a, abar` (zero for the zero polynomial).
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.a + m.abar).max().unwrap_or(0)
    }

    pub fn hbar_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.hbar).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Gauss) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            out.add_term(*m, v * c);
        }
        out
    }

    pub fn scale_real(&self, c: &Rational) -> Self {
        self.scale(&real(c.clone()))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn conj(&self) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            out.add_term(
                Monomial {
                    a: m.abar,
                    abar: m.a,
                    hbar: m.hbar,
                },
                v.conj(),
            );
        }
        out
    }

    /// `d^r/da^r d^s/dabar^s`
    pub fn derivative(&self, r: u32, s: u32) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            if m.a < r || m.abar < s {
                continue;
            }
            let factor = Rational::from_integer(falling(m.a, r) * falling(m.abar, s));
            out.add_term(
                Monomial {
                    a: m.a - r,
                    abar: m.abar - s,
                    hbar: m.hbar,
                },
                v * real(factor),
            );
        }
        out
    }

    /// Coefficient of `hbar^k`, as an `hbar`-free polynomial.
    pub fn hbar_coefficient(&self, k: u32) -> Self {
        let mut out = Self::zero();
        for (m, v) in self.terms.iter().filter(|(m, _)| m.hbar == k) {
            out.add_term(Monomial { hbar: 0, ..*m }, v.clone());
        }
        out
    }

    /// Substitutes a numerical value for `hbar`.
    pub fn at_hbar(&self, hbar: &Rational) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            out.add_term(Monomial { hbar: 0, ..*m }, v * real(pow(hbar, m.hbar)));
        }
        out
    }

    /// Reads the polynomial as a real polynomial in `s = a abar` after
    /// setting `hbar` to the given value; `None` if it is not of that shape.
    pub fn radial_poly(&self, hbar: &Rational) -> Option<RationalPoly> {
        let flat = self.at_hbar(hbar);
        let mut coeffs = vec![Rational::zero(); flat.degree() as usize / 2 + 1];
        for (m, v) in &flat.terms {
            if m.a != m.abar || !v.im.is_zero() {
                return None;
            }
            coeffs[m.a as usize] += &v.re;
        }
        Some(RationalPoly::new(coeffs))
    }

    pub fn to_json(&self) -> PhasePolyJson {
        let mut grouped: BTreeMap<(u32, u32), Vec<Gauss>> = BTreeMap::new();
        for (m, v) in &self.terms {
            let slot = grouped.entry((m.a, m.abar)).or_default();
            if slot.len() <= m.hbar as usize {
                slot.resize(m.hbar as usize + 1, Gauss::zero());
            }
            slot[m.hbar as usize] = v.clone();
        }
        PhasePolyJson {
            terms: grouped
                .into_iter()
                .map(|((a, abar), coeffs)| PhaseTermJson {
                    a,
                    abar,
                    coeff: coeffs.iter().map(format_gauss).collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &PhasePolyJson) -> Result<Self> {
        let mut out = Self::zero();
        for t in &json.terms {
            for (k, c) in t.coeff.iter().enumerate() {
                out.add_term(
                    Monomial {
                        a: t.a,
                        abar: t.abar,
                        hbar: k as u32,
                    },
                    parse_gauss(c)?,
                );
            }
        }
        Ok(out)
    }

    /// Integer coefficients `c q^hbar D` with the common denominator `D` of
    /// all coefficient parts, returned alongside `D`.
    fn scaled_integers(&self, q: &BigInt) -> (Vec<(Monomial, GaussInt)>, BigInt) {
        let den = self.terms.values().fold(BigInt::one(), |d, v| {
            let d = d.lcm(v.re.denom());
            d.lcm(v.im.denom())
        });
        let scaled = self
            .terms
            .iter()
            .map(|(m, v)| {
                let s = Rational::from_integer(&den * num_traits::pow(q.clone(), m.hbar as usize));
                let re = (&v.re * &s).to_integer();
                let im = (&v.im * &s).to_integer();
                (*m, (re, im))
            })
            .collect();
        (scaled, den)
    }

    /// Random polynomial of total degree `<= max_degree` in `a, abar`,
    /// Gaussian-integer coefficients with parts in `-3..=3`, at most linear in `hbar`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, max_degree: u32, with_hbar: bool) -> Self {
        let mut out = Self::zero();
        let hbar_max = u32::from(with_hbar);
        for a in 0..=max_degree {
            for abar in 0..=(max_degree - a) {
                for hbar in 0..=hbar_max {
                    // keep roughly half the monomials
                    if rng.gen_bool(0.5) {
                        continue;
                    }
                    let c = Gauss::new(int(rng.gen_range(-3..=3)), int(rng.gen_range(-3..=3)));
                    out.add_term(Monomial { a, abar, hbar }, c);
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhasePolyJson {
    pub terms: Vec<PhaseTermJson>,
}

/// `coeff[k]` is the coefficient of `hbar^k a^a abar^abar`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseTermJson {
    pub a: u32,
    pub abar: u32,
    pub coeff: Vec<String>,
}

impl Serialize for PhasePoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for PhasePoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let json = PhasePolyJson::deserialize(d)?;
        PhasePoly::from_json(&json).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for PhasePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PhasePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, v)| {
                let mut s = format!("({})", format_gauss(v));
                for (name, e) in [("a", m.a), ("abar", m.abar), ("hbar", m.hbar)] {
                    match e {
                        0 => {}
                        1 => s.push_str(&format!(" {name}")),
                        _ => s.push_str(&format!(" {name}^{e}")),
                    }
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for &PhasePoly {
    type Output = PhasePoly;
    fn add(self, rhs: &PhasePoly) -> PhasePoly {
        let mut out = self.clone();
        for (m, v) in &rhs.terms {
            out.add_term(*m, v.clone());
        }
        out
    }
}

impl Sub for &PhasePoly {
    type Output = PhasePoly;
    fn sub(self, rhs: &PhasePoly) -> PhasePoly {
        let mut out = self.clone();
        for (m, v) in &rhs.terms {
            out.add_term(*m, -v.clone());
        }
        out
    }
}

impl Neg for PhasePoly {
    type Output = PhasePoly;
    fn neg(self) -> PhasePoly {
        self.scale(&real(-Rational::one()))
    }
}

/// Commutative (pointwise) product.
impl Mul for &PhasePoly {
    type Output = PhasePoly;
    fn mul(self, rhs: &PhasePoly) -> PhasePoly {
        let mut out = PhasePoly::zero();
        for (m1, v1) in &self.terms {
            for (m2, v2) in &rhs.terms {
                out.add_term(
                    Monomial {
                        a: m1.a + m2.a,
                        abar: m1.abar + m2.abar,
                        hbar: m1.hbar + m2.hbar,
                    },
                    v1 * v2,
                );
            }
        }
        out
    }
}

/// `f *_lambda g`
pub fn star(f: &PhasePoly, g: &PhasePoly, lambda: &DeformParam) -> PhasePoly {
    star_with(f, g, lambda.value())
}

fn star_with(f: &PhasePoly, g: &PhasePoly, lambda: &Rational) -> PhasePoly {
    // With l = p/q, the (r, s) term carries (q - p)^r (-p)^s / q^(r+s) and raises
    // the hbar degree by r + s. Storing the hbar^k coefficient times q^k (and
    // times a common denominator) makes every step integer arithmetic.
    let q = lambda.denom().clone();
    let p = lambda.numer().clone();
    let (fs, f_den) = f.scaled_integers(&q);
    let (gs, g_den) = g.scaled_integers(&q);
    let rmax = f.terms.keys().map(|m| m.a).max().unwrap_or(0);
    let smax = f.terms.keys().map(|m| m.abar).max().unwrap_or(0);
    let forward: Vec<BigInt> = powers(&(&q - &p), rmax);
    let backward: Vec<BigInt> = powers(&-p, smax);
    let mut acc: HashMap<Monomial, GaussInt> = HashMap::new();
    for (m1, (re1, im1)) in &fs {
        for (m2, (re2, im2)) in &gs {
            let re = re1 * re2 - im1 * im2;
            let im = re1 * im2 + im1 * re2;
            // r derivatives d_a on f paired with d_abar on g; s of d_abar on f with d_a on g
            for r in 0..=m1.a.min(m2.abar) {
                let left = choose(m1.a, r) * falling_u128(m2.abar, r);
                for s in 0..=m1.abar.min(m2.a) {
                    if backward[s as usize].is_zero() {
                        continue;
                    }
                    let count = BigInt::from(left * choose(m1.abar, s) * falling_u128(m2.a, s));
                    let weight = count * &forward[r as usize] * &backward[s as usize];
                    let entry = acc
                        .entry(Monomial {
                            a: m1.a - r + m2.a - s,
                            abar: m1.abar - s + m2.abar - r,
                            hbar: m1.hbar + m2.hbar + r + s,
                        })
                        .or_insert_with(|| (BigInt::zero(), BigInt::zero()));
                    entry.0 += &re * &weight;
                    entry.1 += &im * &weight;
                }
            }
        }
    }
    let den = f_den * g_den;
    let mut out = PhasePoly::zero();
    for (m, (re, im)) in acc {
        if re.is_zero() && im.is_zero() {
            continue;
        }
        let scale = Rational::from_integer(&den * num_traits::pow(q.clone(), m.hbar as usize));
        out.add_term(
            m,
            Gauss::new(
                Rational::from_integer(re) / &scale,
                Rational::from_integer(im) / &scale,
            ),
        );
    }
    out
}

fn powers(base: &BigInt, max: u32) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(max as usize + 1);
    let mut cur = BigInt::one();
    for _ in 0..=max {
        out.push(cur.clone());
        cur *= base;
    }
    out
}

fn choose(n: u32, k: u32) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn falling_u128(n: u32, k: u32) -> u128 {
    (0..k).map(|i| (n - i) as u128).product()
}

/// `f *_lambda g - g *_lambda f`
pub fn commutator(f: &PhasePoly, g: &PhasePoly, lambda: &DeformParam) -> PhasePoly {
    &star(f, g, lambda) - &star(g, f, lambda)
}

/// `T_lambda f = exp(lambda hbar d_a d_abar) f`, or its inverse.
pub fn apply_t(f: &PhasePoly, lambda: &DeformParam, inverse: bool) -> PhasePoly {
    let step = if inverse {
        -lambda.value().clone()
    } else {
        lambda.value().clone()
    };
    let max = f.terms.keys().map(|m| m.a.min(m.abar)).max().unwrap_or(0);
    let mut out = PhasePoly::zero();
    let mut current = f.clone();
    for k in 0..=max {
        let weight = pow(&step, k) / Rational::from_integer(factorial(k));
        let shifted = &current * &PhasePoly::hbar().pow(k);
        out = &out + &shifted.scale_real(&weight);
        current = current.derivative(1, 1);
    }
    out
}

/// `f *_lambda g == T^-1 (T f *_N T g)`, exactly.
pub fn check_equivalence(f: &PhasePoly, g: &PhasePoly, lambda: &DeformParam) -> bool {
    let direct = star(f, g, lambda);
    let normal = DeformParam::normal();
    let via_normal = apply_t(
        &star(
            &apply_t(f, lambda, false),
            &apply_t(g, lambda, false),
            &normal,
        ),
        lambda,
        true,
    );
    direct == via_normal
}

/// `(f * g) * h == f * (g * h)`, exactly.
pub fn check_associativity(
    f: &PhasePoly,
    g: &PhasePoly,
    h: &PhasePoly,
    lambda: &DeformParam,
) -> bool {
    star(&star(f, g, lambda), h, lambda) == star(f, &star(g, h, lambda), lambda)
}

/// Poisson bracket in holomorphic coordinates, `d_a f d_abar g - d_abar f d_a g`.
pub fn poisson_bracket(f: &PhasePoly, g: &PhasePoly) -> PhasePoly {
    &(&f.derivative(1, 0) * &g.derivative(0, 1)) - &(&f.derivative(0, 1) * &g.derivative(1, 0))
}
