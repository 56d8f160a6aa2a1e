//! Classical and quantum energy spreads of the basic distributions `p_k`.
//!
//! Classically `p_k` has mean `l(k+1)` and variance `l^2 (k+1)`. Quantized,
//! level `n` carries weight `C(k,n) l^n (1-l)^(k-n)` and energy `n + l`, so
//! the variance becomes `k l (1-l)`. Requiring the quantum spread to stay
//! below the classical one for every `k` forces `l = 1/2`.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{ceil, int, rat, serde_str, to_f64, Rational, RationalPoly};
use crate::observability::{basic_density, binomial_weights};
use crate::phase::{star, DeformParam, PhasePoly};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Moments {
    #[serde(with = "serde_str")]
    pub mean: Rational,
    #[serde(with = "serde_str")]
    pub second: Rational,
    #[serde(with = "serde_str")]
    pub variance: Rational,
}

impl Moments {
    fn from_raw(mean: Rational, second: Rational) -> Self {
        let variance = &second - &mean * &mean;
        Moments {
            mean,
            second,
            variance,
        }
    }

    pub fn std_dev(&self) -> f64 {
        to_f64(&self.variance).sqrt()
    }
}

fn require_interior(lambda: &Rational) -> Result<()> {
    if !lambda.is_positive() || *lambda >= Rational::one() {
        return Err(Error::Domain(format!(
            "lambda = {lambda} must lie in (0, 1)"
        )));
    }
    Ok(())
}

/// `l(k+1)`, `l^2 (k+1)(k+2)`.
pub fn classical_moments_formula(k: u32, lambda: &Rational) -> Moments {
    let k1 = int(k as i64 + 1);
    let mean = lambda * &k1;
    let second = lambda * lambda * &k1 * int(k as i64 + 2);
    Moments::from_raw(mean, second)
}

/// Moments of `p_k` by exact integration.
pub fn classical_moments_integral(k: u32, lambda: &Rational) -> Result<Moments> {
    let p = basic_density(k, lambda)?;
    Ok(Moments::from_raw(p.mean(), p.second_moment()))
}

/// Closed formulas, after checking them against exact integration.
pub fn classical_moments(k: u32, lambda: &Rational) -> Result<Moments> {
    let by_integral = classical_moments_integral(k, lambda)?;
    let by_formula = classical_moments_formula(k, lambda);
    if by_integral != by_formula {
        return Err(Error::Domain(format!(
            "classical moments of p_{k} disagree at lambda = {lambda}"
        )));
    }
    Ok(by_formula)
}

/// Binomial-weighted sums of `(n + l)` and `(n + l)^2` over `n <= k`.
pub fn quantum_moments(k: u32, lambda: &Rational) -> Result<Moments> {
    require_interior(lambda)?;
    let mut mean = Rational::zero();
    let mut second = Rational::zero();
    for (n, w) in binomial_weights(k, lambda).iter().enumerate() {
        let e = int(n as i64) + lambda;
        mean += w * &e;
        second += w * &e * &e;
    }
    Ok(Moments::from_raw(mean, second))
}

/// `(k+1) l`, `(k^2+k+1) l^2 + k l`.
pub fn quantum_moments_formula(k: u32, lambda: &Rational) -> Moments {
    let kk = int(k as i64);
    let mean = (&kk + int(1)) * lambda;
    let second = (&kk * &kk + &kk + int(1)) * lambda * lambda + &kk * lambda;
    Moments::from_raw(mean, second)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentReport {
    pub k: u32,
    #[serde(with = "serde_str")]
    pub lambda: Rational,
    pub classical: Moments,
    pub quantum: Moments,
    pub classical_std: f64,
    pub quantum_std: f64,
}

impl MomentReport {
    pub fn means_agree(&self) -> bool {
        self.classical.mean == self.quantum.mean
    }
}

pub fn moment_report(k: u32, lambda: &Rational) -> Result<MomentReport> {
    let classical = classical_moments(k, lambda)?;
    let quantum = quantum_moments(k, lambda)?;
    Ok(MomentReport {
        k,
        lambda: lambda.clone(),
        classical_std: classical.std_dev(),
        quantum_std: quantum.std_dev(),
        classical,
        quantum,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HStarCheck {
    pub k: u32,
    #[serde(with = "serde_str")]
    pub lambda: Rational,
    /// `star(H, H) / (hbar omega)^2` as a polynomial in `mu`.
    #[serde(skip)]
    pub quadratic: RationalPoly,
    #[serde(with = "serde_str")]
    pub integral: Rational,
    #[serde(with = "serde_str")]
    pub binomial_sum: Rational,
}

impl HStarCheck {
    pub fn agrees(&self) -> bool {
        self.integral == self.binomial_sum
    }
}

/// Integrates the radial form of `H * H` against `p_k` and compares with the
/// quantum second moment.
pub fn hstar_cross_check(k: u32, lambda: &DeformParam) -> Result<HStarCheck> {
    let l = lambda.value();
    let h = PhasePoly::hamiltonian(&Rational::one());
    let quadratic = star(&h, &h, lambda)
        .radial_poly(&Rational::one())
        .ok_or_else(|| Error::Domain("H * H is not radial".into()))?;
    let p = basic_density(k, l)?;
    let weighted = crate::exact::ExpPoly::polynomial(quadratic.clone());
    let integral = (&weighted * &p.form).integral()?;
    Ok(HStarCheck {
        k,
        lambda: l.clone(),
        quadratic,
        integral,
        binomial_sum: quantum_moments(k, l)?.second,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    /// Equality `l = k/(2k+1)`; fails the strict inequality.
    Boundary,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Selection {
    pub k: u32,
    #[serde(with = "serde_str")]
    pub lambda: Rational,
    #[serde(with = "serde_str")]
    pub quantum_variance: Rational,
    #[serde(with = "serde_str")]
    pub classical_variance: Rational,
    pub verdict: Verdict,
}

impl Selection {
    pub fn passes(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn require_scan_range(lambda: &Rational) -> Result<()> {
    if !lambda.is_positive() || *lambda > rat(1, 2) {
        return Err(Error::Domain(format!(
            "lambda = {lambda} must lie in (0, 1/2]"
        )));
    }
    Ok(())
}

/// Strict `k l (1-l) < (k+1) l^2`.
pub fn selection_inequality(k: u32, lambda: &Rational) -> Result<Selection> {
    require_scan_range(lambda)?;
    let quantum_variance = int(k as i64) * lambda * (Rational::one() - lambda);
    let classical_variance = int(k as i64 + 1) * lambda * lambda;
    let verdict = match quantum_variance.cmp(&classical_variance) {
        std::cmp::Ordering::Less => Verdict::Pass,
        std::cmp::Ordering::Equal => Verdict::Boundary,
        std::cmp::Ordering::Greater => Verdict::Fail,
    };
    Ok(Selection {
        k,
        lambda: lambda.clone(),
        quantum_variance,
        classical_variance,
        verdict,
    })
}

/// Every reduced `p/q` in `(0, 1/2]` with `q <= max_denominator`, ascending.
pub fn farey_grid(max_denominator: u32) -> Vec<Rational> {
    let mut grid: Vec<Rational> = (1..=max_denominator as i64)
        .flat_map(|q| (1..=q / 2).map(move |p| rat(p, q)))
        .filter(|r| *r.denom() <= (max_denominator as i64).into())
        .collect();
    grid.sort();
    grid.dedup();
    grid
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanEntry {
    #[serde(with = "serde_str")]
    pub lambda: Rational,
    /// Least `k <= k_max` violating the strict inequality.
    pub first_failing: Option<Selection>,
    /// `ceil(l / (1 - 2l))`; absent at `l = 1/2`.
    pub predicted: Option<u32>,
}

impl ScanEntry {
    pub fn first_failing_k(&self) -> Option<u32> {
        self.first_failing.as_ref().map(|s| s.k)
    }

    /// The observed failure matches the threshold prediction, or lies past `k_max`.
    pub fn consistent(&self, k_max: u32) -> bool {
        match (self.first_failing_k(), self.predicted) {
            (Some(k), Some(p)) => k == p,
            (None, Some(p)) => p > k_max,
            (None, None) => true,
            (Some(_), None) => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanResult {
    pub k_max: u32,
    pub entries: Vec<ScanEntry>,
}

impl ScanResult {
    pub fn consistent(&self) -> bool {
        self.entries.iter().all(|e| e.consistent(self.k_max))
    }

    /// Grid values with no failure up to `k_max`.
    pub fn survivors(&self) -> Vec<&Rational> {
        self.entries
            .iter()
            .filter(|e| e.first_failing.is_none())
            .map(|e| &e.lambda)
            .collect()
    }
}

pub fn scan_lambda(grid: &[Rational], k_max: u32) -> Result<ScanResult> {
    let half = rat(1, 2);
    let entries = grid
        .iter()
        .map(|lambda| {
            require_scan_range(lambda)?;
            let predicted = (*lambda < half).then(|| {
                let bound = ceil(&(lambda / (Rational::one() - lambda * int(2))));
                u32::try_from(bound).unwrap_or(u32::MAX)
            });
            let mut first_failing = None;
            for k in 0..=k_max {
                let s = selection_inequality(k, lambda)?;
                if !s.passes() {
                    first_failing = Some(s);
                    break;
                }
            }
            Ok(ScanEntry {
                lambda: lambda.clone(),
                first_failing,
                predicted,
            })
        })
        .collect::<Result<_>>()?;
    Ok(ScanResult { k_max, entries })
}

/// `sqrt(l^2 (k+1)) - sqrt(k l (1-l))`, classical minus quantum spread.
pub fn uncertainty_gap(k: u64, lambda: f64) -> f64 {
    (lambda * lambda * (k as f64 + 1.0)).sqrt() - (k as f64 * lambda * (1.0 - lambda)).sqrt()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GmRow {
    pub k: u32,
    #[serde(with = "serde_str")]
    pub classical_variance: Rational,
    #[serde(with = "serde_str")]
    pub quantum_variance: Rational,
    #[serde(with = "serde_str")]
    pub variance_gap: Rational,
    pub uncertainty_gap: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GmAsymptotics {
    pub rows: Vec<GmRow>,
}

impl GmAsymptotics {
    pub fn variance_gap_is_quarter(&self) -> bool {
        self.rows.iter().all(|r| r.variance_gap == rat(1, 4))
    }

    pub fn gaps_decrease(&self) -> bool {
        self.rows
            .windows(2)
            .all(|w| w[1].uncertainty_gap < w[0].uncertainty_gap)
    }
}

/// Variance and spread gaps at `l = 1/2` for `k <= k_max`.
pub fn gm_asymptotics(k_max: u32) -> GmAsymptotics {
    let half = rat(1, 2);
    let rows = (0..=k_max)
        .map(|k| {
            let classical_variance = int(k as i64 + 1) * &half * &half;
            let quantum_variance = int(k as i64) * &half * &half;
            GmRow {
                k,
                variance_gap: &classical_variance - &quantum_variance,
                classical_variance,
                quantum_variance,
                uncertainty_gap: ((k as f64 + 1.0).sqrt() - (k as f64).sqrt()) / 2.0,
            }
        })
        .collect();
    GmAsymptotics { rows }
}

/// `(k, gap)` samples at fixed `lambda`; off `1/2` the gap grows without bound.
pub fn fixed_lambda_gaps(lambda: &Rational, ks: &[u64]) -> Result<Vec<(u64, f64)>> {
    require_scan_range(lambda)?;
    let l = to_f64(lambda);
    Ok(ks.iter().map(|&k| (k, uncertainty_gap(k, l))).collect())
}
