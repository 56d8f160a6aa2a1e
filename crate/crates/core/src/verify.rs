//! Catalog of identity checks grouped into suites.
//!
//! Exact checks compare rationals with `==`. Numeric checks carry their
//! tolerance and the observed deviation. Erratum checks confirm that a known
//! misprinted form disagrees with the computed reference while the corrected
//! form agrees; they fail only if that picture changes.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{imag_unit, int, rat, Rational, RationalPoly};
use crate::laguerre::{
    gamma_moment, half_sum_check, is_identity, laguerre, mixed_orthogonality, moment_integral,
    verify_generating_function, verify_lagid, BasisMatrix,
};
use crate::observability::{
    basic_density, basis_inversion, binomial_weights, duality_matrix, fourier_laguerre,
};
use crate::phase::{
    check_associativity, check_equivalence, commutator, star, DeformParam, ModelParams, PhasePoly,
};
use crate::spectral::{
    energy_identity_deviation, partition_of_unity, projector_closed, projector_series,
    radial_star_apply, star_exp_closed, star_exp_doubled_exponent, star_exp_gm_tangent,
    star_exp_normal_form, star_exp_series, verify_radial_pde,
};
use crate::uncertainty::{
    classical_moments_formula, classical_moments_integral, farey_grid, fixed_lambda_gaps,
    gm_asymptotics, hstar_cross_check, quantum_moments, quantum_moments_formula, scan_lambda,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    All,
    Exact,
    Numeric,
    Errata,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Suite::All),
            "exact" => Ok(Suite::Exact),
            "numeric" => Ok(Suite::Numeric),
            "errata" => Ok(Suite::Errata),
            other => Err(Error::Parse {
                input: other.to_string(),
                reason: "expected all, exact, numeric or errata".into(),
            }),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Suite::All => "all",
            Suite::Exact => "exact",
            Suite::Numeric => "numeric",
            Suite::Errata => "errata",
        };
        f.write_str(name)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CheckStatus {
    ExactPass,
    NumericPass { tolerance: f64, deviation: f64 },
    Fail { detail: String },
    DocumentedErratum { detail: String },
}

impl CheckStatus {
    pub fn is_failure(&self) -> bool {
        matches!(self, CheckStatus::Fail { .. })
    }

    fn label(&self) -> &'static str {
        match self {
            CheckStatus::ExactPass => "exact",
            CheckStatus::NumericPass { .. } => "numeric",
            CheckStatus::Fail { .. } => "FAIL",
            CheckStatus::DocumentedErratum { .. } => "erratum",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub description: &'static str,
    #[serde(flatten)]
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub checks: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        !self.checks.iter().any(|c| c.status.is_failure())
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| c.status.is_failure())
    }

    /// Drops timings so that reports for the same seed compare equal.
    pub fn without_timings(mut self) -> Self {
        for c in &mut self.checks {
            c.elapsed_ms = None;
        }
        self
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {} (seed {})", self.suite, self.seed)?;
        for c in &self.checks {
            write!(
                f,
                "  [{:>7}] {:<28} {}",
                c.status.label(),
                c.name,
                c.description
            )?;
            match &c.status {
                CheckStatus::NumericPass {
                    tolerance,
                    deviation,
                } => write!(f, " (deviation {deviation:.3e} < {tolerance:.0e})")?,
                CheckStatus::Fail { detail } | CheckStatus::DocumentedErratum { detail } => {
                    write!(f, ": {detail}")?
                }
                CheckStatus::ExactPass => {}
            }
            if let Some(ms) = c.elapsed_ms {
                write!(f, " [{ms:.1} ms]")?;
            }
            writeln!(f)?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

type CheckFn = fn(u64) -> CheckStatus;

struct Check {
    name: &'static str,
    description: &'static str,
    kind: Suite,
    run: CheckFn,
}

#[rustfmt::skip]
const CATALOG: &[Check] = &[
    Check { name: "fund-table", description: "int z^k L_n(z) e^-z dz = (-1)^n C(k,n) k!, k,n <= 20", kind: Suite::Exact, run: fund_table },
    Check { name: "basis-matrix", description: "A = ((-1)^j C(i,j)) is an involution and maps monomials to Laguerre", kind: Suite::Exact, run: basis_matrix },
    Check { name: "mixed-orthogonality", description: "int L_m((1-l)z) L_n(z) e^-z dz, m,n <= 15", kind: Suite::Exact, run: mixed_orth },
    Check { name: "lagid-series", description: "Laguerre generating identity as bivariate series to order (12,12)", kind: Suite::Exact, run: lagid },
    Check { name: "half-sum", description: "sum_k 2^-(n+k) C(n+k,k) = 2, n <= 10", kind: Suite::Exact, run: half_sum },
    Check { name: "generating-function", description: "sum_n L_n(x) t^n = exp(-xt/(1-t))/(1-t)", kind: Suite::Exact, run: generating },
    Check { name: "star-hh", description: "H * H = H^2 + (1-2l) hbar w H - l(1-l) hbar^2 w^2", kind: Suite::Exact, run: star_hh },
    Check { name: "commutators", description: "[a, abar] = hbar and [q, p] = i hbar for every l", kind: Suite::Exact, run: commutators },
    Check { name: "random-algebra", description: "associativity and T-equivalence on seeded random polynomials", kind: Suite::Exact, run: random_algebra },
    Check { name: "radial-reduction", description: "radial star operator agrees with the phase-space product", kind: Suite::Exact, run: radial_reduction },
    Check { name: "projector-normalization", description: "int pi_n dmu = 1, n <= 12", kind: Suite::Exact, run: normalization },
    Check { name: "eigen-relation", description: "H * pi_n = (n + l) pi_n, n <= 8", kind: Suite::Exact, run: eigen },
    Check { name: "duality", description: "int pi_n^(l) pi_m^(1-l) dmu = delta_nm, n,m <= 12", kind: Suite::Exact, run: duality },
    Check { name: "radial-pde", description: "closed solution satisfies the radial equation", kind: Suite::Exact, run: radial_pde },
    Check { name: "basic-coefficients", description: "Fourier-Laguerre coefficients of p_k are binomial, k <= 10", kind: Suite::Exact, run: basic_coefficients },
    Check { name: "basis-inversion", description: "M M^-1 = I at N = 16 and pure states rebuilt from p_k", kind: Suite::Exact, run: inversion },
    Check { name: "negativity", description: "pi_n^(1/2) takes negative values, n = 1, 2, 3", kind: Suite::Exact, run: negativity },
    Check { name: "moments", description: "classical and quantum moments three ways, k <= 50", kind: Suite::Exact, run: moments },
    Check { name: "selection-scan", description: "first failing k = ceil(l/(1-2l)) on the denominator-64 grid", kind: Suite::Exact, run: selection },
    Check { name: "gm-variance-gap", description: "classical minus quantum variance is 1/4 at l = 1/2, k <= 100", kind: Suite::Exact, run: gm_gap },
    Check { name: "partition-of-unity", description: "sum_n pi_n^(1/4)(mu) -> 1 within 1e-6", kind: Suite::Numeric, run: partition },
    Check { name: "star-exponential", description: "closed star exponential against 200-term series", kind: Suite::Numeric, run: star_exponential },
    Check { name: "star-exponential-normal", description: "l = 0 closed form equals the normal-ordered solution", kind: Suite::Numeric, run: star_exponential_normal },
    Check { name: "star-exponential-gm", description: "tangent form at l = 1/2 with +i", kind: Suite::Numeric, run: star_exponential_gm },
    Check { name: "projector-series", description: "alternating Laguerre series against the closed projector", kind: Suite::Numeric, run: projector_series_check },
    Check { name: "energy-identity", description: "sum_n (n + l) pi_n(mu) = mu", kind: Suite::Numeric, run: energy },
    Check { name: "gamma-moment", description: "int z^(1/2) L_1(z) e^-z dz = -sqrt(pi)/4", kind: Suite::Numeric, run: gamma },
    Check { name: "gm-uncertainty-gap", description: "(sqrt(k+1) - sqrt(k))/2 decreases and is < 0.05 for k >= 25", kind: Suite::Numeric, run: gm_uncertainty },
    Check { name: "off-gm-gap", description: "at l = 1/4 the spread gap grows like sqrt(k) instead of vanishing", kind: Suite::Numeric, run: off_gm },
    Check { name: "star-exponential-factor", description: "general closed form printed with 2 mu in the exponent", kind: Suite::Errata, run: erratum_factor },
    Check { name: "gm-tangent-sign", description: "tangent form printed with -i in the denominator", kind: Suite::Errata, run: erratum_tangent },
    Check { name: "radial-pde-factor", description: "radial equation printed without the factor s on F_s", kind: Suite::Errata, run: erratum_pde },
];

/// Runs every check of `suite`, in catalog order.
pub fn run_suite(suite: Suite, seed: u64) -> SuiteReport {
    let checks = CATALOG
        .iter()
        .filter(|c| suite == Suite::All || c.kind == suite)
        .map(|c| {
            let start = Instant::now();
            let status = (c.run)(seed);
            CheckOutcome {
                name: c.name,
                description: c.description,
                status,
                elapsed_ms: Some(start.elapsed().as_secs_f64() * 1e3),
            }
        })
        .collect();
    SuiteReport {
        suite,
        seed,
        checks,
    }
}

/// Names of the checks in `suite`.
pub fn catalog(suite: Suite) -> Vec<&'static str> {
    CATALOG
        .iter()
        .filter(|c| suite == Suite::All || c.kind == suite)
        .map(|c| c.name)
        .collect()
}

fn exact(ok: bool, detail: impl FnOnce() -> String) -> CheckStatus {
    if ok {
        CheckStatus::ExactPass
    } else {
        CheckStatus::Fail { detail: detail() }
    }
}

fn numeric(deviation: f64, tolerance: f64) -> CheckStatus {
    if deviation < tolerance {
        CheckStatus::NumericPass {
            tolerance,
            deviation,
        }
    } else {
        CheckStatus::Fail {
            detail: format!("deviation {deviation:.3e} exceeds {tolerance:.0e}"),
        }
    }
}

fn lam(n: i64, d: i64) -> DeformParam {
    DeformParam::from_ratio(n, d).expect("valid lambda")
}

fn three_lambdas() -> [DeformParam; 3] {
    [lam(1, 4), lam(1, 3), lam(1, 2)]
}

fn first<T>(mut items: impl Iterator<Item = T>) -> Option<T> {
    items.next()
}

fn fund_table(_: u64) -> CheckStatus {
    let bad = first(
        (0..=20)
            .flat_map(|k| (0..=20).map(move |n| (k, n)))
            .filter(|&(k, n)| !moment_integral(k, n).agrees()),
    );
    exact(bad.is_none(), || format!("mismatch at (k, n) = {bad:?}"))
}

fn basis_matrix(_: u64) -> CheckStatus {
    let a = BasisMatrix::new(21);
    let laguerre_ok = a
        .laguerre_from_monomials()
        .iter()
        .enumerate()
        .all(|(n, p)| *p == laguerre(n as u32).poly);
    let monomial_ok = a
        .monomials_from_laguerre()
        .iter()
        .enumerate()
        .all(|(r, p)| *p == RationalPoly::monomial(Rational::one(), r));
    exact(a.is_involution() && laguerre_ok && monomial_ok, || {
        format!(
            "involution {}, L = ADX {laguerre_ok}, X = D^-1 A L {monomial_ok}",
            a.is_involution()
        )
    })
}

fn mixed_orth(_: u64) -> CheckStatus {
    for l in three_lambdas() {
        for m in 0..=15 {
            for n in 0..=15 {
                match mixed_orthogonality(m, n, l.value()) {
                    Ok(t) if t.agrees() => {}
                    _ => {
                        return CheckStatus::Fail {
                            detail: format!("(m, n, l) = ({m}, {n}, {l})"),
                        }
                    }
                }
            }
        }
    }
    CheckStatus::ExactPass
}

fn lagid(_: u64) -> CheckStatus {
    for n in 0..=3 {
        match verify_lagid(n, (12, 12)) {
            Ok(c) if c.equal() => {}
            Ok(c) => {
                return CheckStatus::Fail {
                    detail: format!("n = {n}: {} mismatched coefficients", c.mismatches.len()),
                }
            }
            Err(e) => {
                return CheckStatus::Fail {
                    detail: e.to_string(),
                }
            }
        }
    }
    CheckStatus::ExactPass
}

fn half_sum(_: u64) -> CheckStatus {
    let bad = first((0..=10).filter(|&n| (1..=40).any(|k| !half_sum_check(n, k).identity_holds)));
    exact(bad.is_none(), || format!("n = {bad:?}"))
}

fn generating(_: u64) -> CheckStatus {
    let c = verify_generating_function(12);
    exact(c.equal(), || {
        format!("{} mismatched coefficients", c.mismatches.len())
    })
}

fn star_hh(_: u64) -> CheckStatus {
    let omega = rat(3, 2);
    let h = PhasePoly::hamiltonian(&omega);
    let hbar = PhasePoly::hbar();
    for l in [DeformParam::normal(), lam(1, 4), lam(1, 3), lam(1, 2)] {
        let v = l.value();
        let drift = (Rational::one() - int(2) * v) * &omega;
        let diffusion = -(v * (Rational::one() - v)) * &omega * &omega;
        let expect =
            &(&(&h * &h) + &(&hbar * &h).scale_real(&drift)) + &hbar.pow(2).scale_real(&diffusion);
        if star(&h, &h, &l) != expect {
            return CheckStatus::Fail {
                detail: format!("l = {l}"),
            };
        }
    }
    CheckStatus::ExactPass
}

fn commutators(_: u64) -> CheckStatus {
    let ih = PhasePoly::hbar().scale(&imag_unit());
    for l in [
        DeformParam::normal(),
        lam(1, 4),
        lam(1, 3),
        lam(1, 2),
        lam(3, 4),
    ] {
        if commutator(&PhasePoly::a(), &PhasePoly::abar(), &l) != PhasePoly::hbar()
            || commutator(&PhasePoly::q(), &PhasePoly::p(), &l) != ih
        {
            return CheckStatus::Fail {
                detail: format!("l = {l}"),
            };
        }
    }
    CheckStatus::ExactPass
}

/// Associativity on 100 random triples and T-equivalence on 100 random pairs
/// of degree `<= 4`, for `l` in `{0, 1/4, 1/2}`.
pub fn random_algebra_failures(seed: u64, samples: usize) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for l in [DeformParam::normal(), lam(1, 4), lam(1, 2)] {
        for i in 0..samples {
            let with_hbar = rng.gen_bool(0.5);
            let f = PhasePoly::random(&mut rng, 4, with_hbar);
            let g = PhasePoly::random(&mut rng, 4, with_hbar);
            let h = PhasePoly::random(&mut rng, 4, with_hbar);
            if !check_associativity(&f, &g, &h, &l) {
                failures.push(format!("associativity, l = {l}, sample {i}"));
            }
            if !check_equivalence(&f, &g, &l) {
                failures.push(format!("equivalence, l = {l}, sample {i}"));
            }
        }
    }
    failures
}

fn random_algebra(seed: u64) -> CheckStatus {
    let failures = random_algebra_failures(seed, 100);
    exact(failures.is_empty(), || failures.join("; "))
}

fn radial_reduction(_: u64) -> CheckStatus {
    let h = PhasePoly::hamiltonian(&Rational::one());
    for l in [DeformParam::normal(), lam(1, 4), lam(1, 3), lam(1, 2)] {
        for j in 0..=5 {
            let f = RationalPoly::monomial(Rational::one(), j);
            let via_phase = star(&h, &PhasePoly::from_radial(&f), &l).radial_poly(&Rational::one());
            if via_phase.as_ref() != Some(&radial_star_apply(&f, &l)) {
                return CheckStatus::Fail {
                    detail: format!("mu^{j}, l = {l}"),
                };
            }
        }
    }
    CheckStatus::ExactPass
}

fn normalization(_: u64) -> CheckStatus {
    for l in [DeformParam::normal(), lam(1, 4), lam(1, 3), lam(1, 2)] {
        if let Some(n) = (0..=12).find(|&n| !projector_closed(n, &l).integral().is_one()) {
            return CheckStatus::Fail {
                detail: format!("n = {n}, l = {l}"),
            };
        }
    }
    CheckStatus::ExactPass
}

fn eigen(_: u64) -> CheckStatus {
    for l in [DeformParam::normal(), lam(1, 4), lam(1, 3), lam(1, 2)] {
        for n in 0..=8 {
            let p = projector_closed(n, &l);
            let energy = int(n as i64) + l.value();
            if radial_star_apply(&p.form, &l) != p.form.scale(&energy) {
                return CheckStatus::Fail {
                    detail: format!("n = {n}, l = {l}"),
                };
            }
        }
    }
    CheckStatus::ExactPass
}

fn duality(_: u64) -> CheckStatus {
    for l in three_lambdas() {
        match duality_matrix(&l, 12) {
            Ok(g) if is_identity(&g) => {}
            _ => {
                return CheckStatus::Fail {
                    detail: format!("l = {l}"),
                }
            }
        }
    }
    CheckStatus::ExactPass
}

fn radial_pde(_: u64) -> CheckStatus {
    let models = [
        ModelParams::default(),
        ModelParams::new(rat(1, 3), rat(5, 2)).expect("positive"),
    ];
    let bad = first(models.iter().filter(|m| {
        let r = verify_radial_pde(m);
        !(r.satisfies_with_s && r.initial_value_is_one)
    }));
    exact(bad.is_none(), || format!("model {bad:?}"))
}

fn basic_coefficients(_: u64) -> CheckStatus {
    for l in three_lambdas() {
        for k in 0..=10 {
            let p = basic_density(k, l.value()).expect("interior lambda");
            let c = fourier_laguerre(&p, &l, 12);
            let mut expect = binomial_weights(k, l.value());
            expect.resize(13, Rational::zero());
            if c.entries != expect {
                return CheckStatus::Fail {
                    detail: format!("k = {k}, l = {l}"),
                };
            }
        }
    }
    CheckStatus::ExactPass
}

fn inversion(_: u64) -> CheckStatus {
    let l = lam(1, 3);
    let inv = match basis_inversion(&l, 16) {
        Ok(inv) => inv,
        Err(e) => {
            return CheckStatus::Fail {
                detail: e.to_string(),
            }
        }
    };
    if !inv.product_is_identity() || !inv.has_negative_entries() {
        return CheckStatus::Fail {
            detail: "M M^-1 != I or no negative entries".into(),
        };
    }
    for n in 0..=4 {
        let p = inv.pure_state_distribution(n).expect("interior lambda");
        let c = fourier_laguerre(&p, &l, 16);
        let unit: Vec<Rational> = (0..=16)
            .map(|i| if i == n { int(1) } else { int(0) })
            .collect();
        if c.entries != unit {
            return CheckStatus::Fail {
                detail: format!("pure state {n} not reconstructed"),
            };
        }
    }
    CheckStatus::ExactPass
}

fn negativity(_: u64) -> CheckStatus {
    let gm = DeformParam::groenewold_moyal();
    for n in 1..=3 {
        let p = projector_closed(n, &gm);
        let ok = p
            .negative_witness()
            .map(|mu| p.form.sign_at(&mu) == Some(std::cmp::Ordering::Less))
            .unwrap_or(false);
        if !ok {
            return CheckStatus::Fail {
                detail: format!("no witness for n = {n}"),
            };
        }
    }
    CheckStatus::ExactPass
}

fn moments(_: u64) -> CheckStatus {
    for l in three_lambdas() {
        let v = l.value();
        for k in 0..=50 {
            let classical_ok =
                classical_moments_integral(k, v).ok() == Some(classical_moments_formula(k, v));
            let quantum = quantum_moments(k, v).expect("interior lambda");
            let quantum_ok = quantum == quantum_moments_formula(k, v);
            let hstar_ok = hstar_cross_check(k, &l)
                .map(|c| c.agrees())
                .unwrap_or(false);
            if !(classical_ok
                && quantum_ok
                && hstar_ok
                && quantum.mean == classical_moments_formula(k, v).mean)
            {
                return CheckStatus::Fail {
                    detail: format!("k = {k}, l = {l}"),
                };
            }
        }
    }
    CheckStatus::ExactPass
}

fn selection(_: u64) -> CheckStatus {
    match scan_lambda(&farey_grid(64), 1000) {
        Ok(r) => exact(r.consistent() && r.survivors() == vec![&rat(1, 2)], || {
            format!(
                "consistent {}, survivors {:?}",
                r.consistent(),
                r.survivors()
            )
        }),
        Err(e) => CheckStatus::Fail {
            detail: e.to_string(),
        },
    }
}

fn gm_gap(_: u64) -> CheckStatus {
    exact(gm_asymptotics(100).variance_gap_is_quarter(), || {
        "gap differs from 1/4".into()
    })
}

fn partition(_: u64) -> CheckStatus {
    let l = lam(1, 4);
    let mut worst = 0.0f64;
    for mu in [rat(1, 2), int(1), int(2), int(5), int(10)] {
        let r = partition_of_unity(&l, &mu, 1e-6, 500);
        if !r.reached {
            return CheckStatus::Fail {
                detail: format!("mu = {mu}: deviation {:.3e} at N = 500", r.deviation),
            };
        }
        worst = worst.max(r.deviation);
    }
    numeric(worst, 1e-6)
}

fn sample_points(seed: u64) -> Vec<(f64, f64)> {
    let mut points = vec![];
    for mu in [0.5, 1.0, 2.0] {
        for wt in [0.3, 1.0, 2.0] {
            points.push((mu, wt));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    points.extend((0..5).map(|_| (rng.gen_range(0.1..2.0), rng.gen_range(0.1..2.5))));
    points
}

fn star_exponential(seed: u64) -> CheckStatus {
    let mut worst = 0.0f64;
    for l in [DeformParam::normal(), lam(1, 4)] {
        for &(mu, wt) in &sample_points(seed) {
            let closed = match star_exp_closed(&l, mu, wt) {
                Ok(c) => c.value(),
                Err(e) => {
                    return CheckStatus::Fail {
                        detail: e.to_string(),
                    }
                }
            };
            let series = star_exp_series(&l, mu, wt, 200).value();
            worst = worst.max((closed - series).norm());
        }
    }
    numeric(worst, 1e-8)
}

fn star_exponential_normal(seed: u64) -> CheckStatus {
    let l = DeformParam::normal();
    let worst = sample_points(seed)
        .iter()
        .map(|&(mu, wt)| {
            let closed = star_exp_closed(&l, mu, wt)
                .expect("no pole at l = 0")
                .value();
            (closed - star_exp_normal_form(mu, wt)).norm()
        })
        .fold(0.0, f64::max);
    numeric(worst, 1e-12)
}

fn star_exponential_gm(seed: u64) -> CheckStatus {
    let gm = DeformParam::groenewold_moyal();
    let worst = sample_points(seed)
        .iter()
        .map(|&(mu, wt)| {
            let closed = star_exp_closed(&gm, mu, wt).expect("wt < pi").value();
            (closed - star_exp_gm_tangent(mu, wt, false)).norm()
        })
        .fold(0.0, f64::max);
    numeric(worst, 1e-10)
}

fn projector_series_check(seed: u64) -> CheckStatus {
    let l = lam(1, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for n in 0..=5 {
        let mu: f64 = rng.gen_range(0.0..3.0);
        let s = projector_series(n, &l, 120, mu).expect("l in (0, 1/2]");
        worst = worst.max((s.value - projector_closed(n, &l).eval_f64(mu)).abs());
    }
    numeric(worst, 1e-9)
}

fn energy(_: u64) -> CheckStatus {
    let worst = [0.5, 1.0, 2.0, 5.0]
        .iter()
        .map(|&mu| energy_identity_deviation(&lam(1, 4), mu, 400))
        .fold(0.0, f64::max);
    numeric(worst, 1e-8)
}

fn gamma(_: u64) -> CheckStatus {
    match gamma_moment(&rat(1, 2), 1, 1e-10) {
        Ok(r) => {
            let target = -std::f64::consts::PI.sqrt() / 4.0;
            numeric((r.quadrature - target).abs(), 1e-6)
        }
        Err(e) => CheckStatus::Fail {
            detail: e.to_string(),
        },
    }
}

fn gm_uncertainty(_: u64) -> CheckStatus {
    let t = gm_asymptotics(1000);
    if !t.gaps_decrease() {
        return CheckStatus::Fail {
            detail: "gaps not decreasing".into(),
        };
    }
    let worst = t.rows[25..]
        .iter()
        .map(|r| r.uncertainty_gap)
        .fold(0.0, f64::max);
    numeric(worst, 0.05)
}

fn off_gm(_: u64) -> CheckStatus {
    // relative distance from the asymptote (1 - sqrt 3) sqrt(k) / 4
    let k = 10_000u64;
    let gaps = fixed_lambda_gaps(&rat(1, 4), &[k]).expect("l in (0, 1/2]");
    let asymptote = (1.0 - 3f64.sqrt()) * (k as f64).sqrt() / 4.0;
    numeric((gaps[0].1 / asymptote - 1.0).abs(), 1e-3)
}

/// Erratum status when the printed form is off by more than `1e-3` and the
/// corrected one agrees within `1e-8`.
fn erratum(printed: f64, corrected: f64, detail: &str) -> CheckStatus {
    if corrected < 1e-8 && printed > 1e-3 {
        CheckStatus::DocumentedErratum {
            detail: format!(
                "{detail}; printed form off by {printed:.3e}, corrected by {corrected:.1e}"
            ),
        }
    } else {
        CheckStatus::Fail {
            detail: format!("printed deviation {printed:.3e}, corrected deviation {corrected:.3e}"),
        }
    }
}

fn erratum_factor(_: u64) -> CheckStatus {
    let l = lam(1, 4);
    let (mu, wt) = (1.0, 1.0);
    let series = star_exp_series(&l, mu, wt, 200).value();
    let printed = (star_exp_doubled_exponent(&l, mu, wt).expect("no pole") - series).norm();
    let corrected = (star_exp_closed(&l, mu, wt).expect("no pole").value() - series).norm();
    erratum(printed, corrected, "exponent coefficient is mu, not 2 mu")
}

fn erratum_tangent(_: u64) -> CheckStatus {
    let gm = DeformParam::groenewold_moyal();
    let (mu, wt) = (1.0, 1.0);
    // the series converges only conditionally at 1/2; compare with the general closed form
    let reference = star_exp_closed(&gm, mu, wt).expect("wt < pi").value();
    let printed = (star_exp_gm_tangent(mu, wt, true) - reference).norm();
    let corrected = (star_exp_gm_tangent(mu, wt, false) - reference).norm();
    erratum(printed, corrected, "denominator is +i")
}

fn erratum_pde(_: u64) -> CheckStatus {
    let r = verify_radial_pde(&ModelParams::default());
    if r.satisfies_with_s && !r.satisfies_without_s {
        CheckStatus::DocumentedErratum {
            detail: format!(
                "F_s needs the factor s; without it the residual is {}",
                r.residual_without_s
            ),
        }
    } else {
        CheckStatus::Fail {
            detail: format!(
                "with s: {}, without s: {}",
                r.residual_with_s, r.residual_without_s
            ),
        }
    }
}
