//! One test per acceptance criterion; each prints a PASS/FAIL line.
//! Run with `cargo test -p starlambda-core --test acceptance -- --nocapture`
//! to see the lines.

use std::time::{Duration, Instant};

use num_traits::{One, Signed, Zero};
use starlambda_core::exact::{binomial, ceil, factorial, int, pow, rat, to_f64, Rational};
use starlambda_core::laguerre::{
    gamma_moment, half_sum_check, mixed_orthogonality, moment_integral, verify_lagid,
};
use starlambda_core::observability::{
    basic_density, basis_inversion, binomial_weights, duality_check, fourier_laguerre,
};
use starlambda_core::phase::{commutator, DeformParam, PhasePoly};
use starlambda_core::spectral::{
    partition_of_unity, projector_closed, radial_star_apply, star_exp_closed,
    star_exp_doubled_exponent, star_exp_normal_form, star_exp_series,
};
use starlambda_core::uncertainty::{
    farey_grid, gm_asymptotics, hstar_cross_check, scan_lambda, selection_inequality,
};
use starlambda_core::verify::random_algebra_failures;

fn lam(n: i64, d: i64) -> DeformParam {
    DeformParam::from_ratio(n, d).unwrap()
}

fn report(id: u32, title: &str, outcome: Result<String, String>) {
    match outcome {
        Ok(note) => println!("criterion {id:>2} PASS  {title}{}", suffix(&note)),
        Err(why) => {
            println!("criterion {id:>2} FAIL  {title}: {why}");
            panic!("criterion {id} failed: {why}");
        }
    }
}

fn suffix(note: &str) -> String {
    if note.is_empty() {
        String::new()
    } else {
        format!(" ({note})")
    }
}

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

#[test]
fn criterion_01_fund_table() {
    let run = || {
        let start = Instant::now();
        for k in 0..=20u32 {
            for n in 0..=20u32 {
                let expect = if k >= n {
                    let sign = if n % 2 == 0 { 1 } else { -1 };
                    Rational::from_integer(binomial(k, n) * factorial(k) * sign)
                } else {
                    Rational::zero()
                };
                let got = moment_integral(k, n).integral;
                ensure(got == expect, || {
                    format!("(k, n) = ({k}, {n}): {got} != {expect}")
                })?;
            }
        }
        let elapsed = start.elapsed();
        ensure(elapsed < Duration::from_secs(1), || {
            format!("took {elapsed:?}")
        })?;
        Ok(format!("{:.0} ms", elapsed.as_secs_f64() * 1e3))
    };
    report(1, "fund table k, n <= 20 exact", run());
}

#[test]
fn criterion_02_mixed_orthogonality() {
    let run = || {
        for l in [rat(1, 4), rat(1, 3), rat(1, 2)] {
            let ratio = (Rational::one() - &l) / &l;
            for m in 0..=15u32 {
                for n in 0..=15u32 {
                    let expect = if m >= n {
                        Rational::from_integer(binomial(m, n)) * pow(&l, m) * pow(&ratio, n)
                    } else {
                        Rational::zero()
                    };
                    let got = mixed_orthogonality(m, n, &l)
                        .map_err(|e| e.to_string())?
                        .integral;
                    ensure(got == expect, || format!("(m, n, l) = ({m}, {n}, {l})"))?;
                }
            }
        }
        Ok(String::new())
    };
    report(2, "mixed orthogonality m, n <= 15 exact", run());
}

#[test]
fn criterion_03_lagid() {
    let run = || {
        for n in 0..=3 {
            let c = verify_lagid(n, (12, 12)).map_err(|e| e.to_string())?;
            ensure(c.equal(), || {
                format!("n = {n}: {} mismatches", c.mismatches.len())
            })?;
        }
        for n in 0..=10 {
            for terms in [1, 5, 20, 60] {
                let c = half_sum_check(n, terms);
                ensure(c.identity_holds, || format!("n = {n}, K = {terms}"))?;
            }
            // the binomial tail is what separates S_K from 2, and it vanishes
            let tail = half_sum_check(n, 400).tail;
            ensure(to_f64(&tail) < 1e-40, || format!("tail {tail} at n = {n}"))?;
        }
        Ok(String::new())
    };
    report(3, "LagId series to order (12, 12) and half-sum = 2", run());
}

#[test]
fn criterion_04_duality() {
    let run = || {
        for l in [lam(1, 4), lam(1, 3), lam(1, 2)] {
            for n in 0..=12 {
                for m in 0..=12 {
                    let v = duality_check(n, m, &l).map_err(|e| e.to_string())?;
                    let expect = if n == m { int(1) } else { int(0) };
                    ensure(v == expect, || format!("(n, m, l) = ({n}, {m}, {l}): {v}"))?;
                }
            }
        }
        ensure(lam(1, 2).dual().unwrap() == lam(1, 2), || {
            "1/2 is not self-dual".into()
        })?;
        Ok(String::new())
    };
    report(4, "duality delta_nm for n, m <= 12", run());
}

#[test]
fn criterion_05_projectors() {
    let run = || {
        for l in [DeformParam::normal(), lam(1, 4), lam(1, 2)] {
            for n in 0..=12 {
                let i = projector_closed(n, &l).integral();
                ensure(i.is_one(), || format!("int pi_{n}^({l}) = {i}"))?;
            }
            for n in 0..=8 {
                let p = projector_closed(n, &l);
                let expect = p.form.scale(&(int(n as i64) + l.value()));
                ensure(radial_star_apply(&p.form, &l) == expect, || {
                    format!("eigen-relation n = {n}, l = {l}")
                })?;
            }
        }
        Ok(String::new())
    };
    report(5, "projector normalization and eigen-relation", run());
}

#[test]
fn criterion_06_partition_of_unity() {
    let run = || {
        let mut worst_n = 0;
        for mu in [rat(1, 2), int(1), int(2), int(5), int(10)] {
            let r = partition_of_unity(&lam(1, 4), &mu, 1e-6, 500);
            ensure(r.reached, || {
                format!("mu = {mu}: deviation {:.3e} at N = 500", r.deviation)
            })?;
            worst_n = worst_n.max(r.n);
        }
        let gm = partition_of_unity(&lam(1, 2), &int(1), 1e-6, 500);
        Ok(format!(
            "l = 1/4 needs N <= {worst_n}; l = 1/2 at mu = 1 conditional: deviation {:.2e} after N = {}, not asserted",
            gm.deviation, gm.n
        ))
    };
    report(6, "partition of unity at l = 1/4 within 1e-6", run());
}

#[test]
fn criterion_07_star_exponential() {
    let run = || {
        let mut worst = 0.0f64;
        for l in [DeformParam::normal(), lam(1, 4)] {
            for mu in [0.5, 1.0, 2.0] {
                for wt in [0.3, 1.0, 2.0] {
                    let closed = star_exp_closed(&l, mu, wt)
                        .map_err(|e| e.to_string())?
                        .value();
                    let series = star_exp_series(&l, mu, wt, 200).value();
                    let d = (closed - series).norm();
                    ensure(d < 1e-8, || {
                        format!("l = {l}, mu = {mu}, wt = {wt}: {d:.3e}")
                    })?;
                    worst = worst.max(d);
                    if l.value().is_zero() {
                        let d0 = (closed - star_exp_normal_form(mu, wt)).norm();
                        ensure(d0 < 1e-12, || {
                            format!("normal form at mu = {mu}, wt = {wt}: {d0:.3e}")
                        })?;
                    }
                }
            }
        }
        let series = star_exp_series(&lam(1, 4), 1.0, 1.0, 200).value();
        let printed = (star_exp_doubled_exponent(&lam(1, 4), 1.0, 1.0).unwrap() - series).norm();
        ensure(printed > 1e-3, || {
            "printed 2 mu form unexpectedly agrees".into()
        })?;
        Ok(format!(
            "max deviation {worst:.2e}; printed 2 mu form off by {printed:.2e}, documented erratum"
        ))
    };
    report(
        7,
        "corrected star exponential against 200-term series",
        run(),
    );
}

#[test]
fn criterion_08_quantum_moments() {
    let run = || {
        for l in [lam(1, 4), lam(1, 3), lam(1, 2)] {
            let v = l.value();
            for k in 0..=50u32 {
                let kk = int(k as i64);
                let (mut first, mut second) = (Rational::zero(), Rational::zero());
                for (n, w) in binomial_weights(k, v).iter().enumerate() {
                    let e = int(n as i64) + v;
                    first += w * &e;
                    second += w * &e * &e;
                }
                ensure(first == (&kk + int(1)) * v, || {
                    format!("mean k = {k}, l = {l}")
                })?;
                let expect = (&kk * &kk + &kk + int(1)) * v * v + &kk * v;
                ensure(second == expect, || {
                    format!("second moment k = {k}, l = {l}")
                })?;
                let c = hstar_cross_check(k, &l).map_err(|e| e.to_string())?;
                ensure(c.integral == expect, || {
                    format!("H * H integral k = {k}, l = {l}")
                })?;
            }
        }
        Ok(String::new())
    };
    report(
        8,
        "quantum weights and moments k <= 50, H * H cross-check",
        run(),
    );
}

#[test]
fn criterion_09_selection_scan() {
    let run = || {
        let grid: Vec<Rational> = farey_grid(64)
            .into_iter()
            .filter(|l| *l < rat(1, 2))
            .collect();
        let scan = scan_lambda(&grid, 1000).map_err(|e| e.to_string())?;
        for e in &scan.entries {
            let predicted = ceil(&(&e.lambda / (Rational::one() - int(2) * &e.lambda)));
            let got = e
                .first_failing_k()
                .ok_or_else(|| format!("l = {} never fails", e.lambda))?;
            ensure(predicted == got.into(), || {
                format!(
                    "l = {}: first failure {got}, expected {predicted}",
                    e.lambda
                )
            })?;
        }
        for k in 0..=1000 {
            ensure(
                selection_inequality(k, &rat(1, 2)).unwrap().passes(),
                || format!("l = 1/2 fails at k = {k}"),
            )?;
        }
        let gm = gm_asymptotics(1000);
        ensure(
            gm.rows[..=100].iter().all(|r| r.variance_gap == rat(1, 4)),
            || "variance gap".into(),
        )?;
        let late = gm.rows[25..]
            .iter()
            .map(|r| r.uncertainty_gap)
            .fold(0.0, f64::max);
        ensure(late < 0.05, || format!("uncertainty gap {late} at k >= 25"))?;
        Ok(format!("{} grid values below 1/2", grid.len()))
    };
    report(9, "selection scan forces l = 1/2", run());
}

#[test]
fn criterion_10_algebra_properties() {
    let run = || {
        let start = Instant::now();
        let failures = random_algebra_failures(2024, 100);
        ensure(failures.is_empty(), || failures.join("; "))?;
        for l in [DeformParam::normal(), lam(1, 4), lam(1, 2)] {
            let c = commutator(&PhasePoly::a(), &PhasePoly::abar(), &l);
            ensure(c == PhasePoly::hbar(), || {
                format!("[a, abar] = {c} at l = {l}")
            })?;
        }
        let elapsed = start.elapsed();
        ensure(elapsed < Duration::from_secs(10), || {
            format!("took {elapsed:?}")
        })?;
        Ok(format!("{:.2} s", elapsed.as_secs_f64()))
    };
    report(
        10,
        "associativity, T-equivalence and [a, abar] = hbar",
        run(),
    );
}

#[test]
fn criterion_11_observability() {
    let run = || {
        for l in [lam(1, 4), lam(1, 3), lam(1, 2)] {
            let v = l.value();
            for k in 0..=10u32 {
                let c = fourier_laguerre(&basic_density(k, v).unwrap(), &l, 12);
                for (n, got) in c.entries.iter().enumerate() {
                    let n = n as u32;
                    let expect = if n <= k {
                        Rational::from_integer(binomial(k, n))
                            * pow(v, n)
                            * pow(&(Rational::one() - v), k - n)
                    } else {
                        Rational::zero()
                    };
                    ensure(*got == expect, || format!("c_{n}(p_{k}) at l = {l}"))?;
                }
            }
        }
        let inv = basis_inversion(&lam(1, 3), 16).map_err(|e| e.to_string())?;
        ensure(inv.product_is_identity(), || "M M^-1 != I".into())?;
        for n in 1..=3 {
            let p = projector_closed(n, &lam(1, 2));
            let mu = p
                .negative_witness()
                .ok_or_else(|| format!("no witness for n = {n}"))?;
            let exact_sign = p
                .form
                .eval_parts(&mu)
                .iter()
                .fold(Rational::zero(), |acc, (c, _)| acc + c);
            ensure(mu.is_positive() && exact_sign.is_negative(), || {
                format!("n = {n}, mu = {mu}")
            })?;
        }
        Ok(String::new())
    };
    report(
        11,
        "binomial coefficients, basis inversion, negativity witnesses",
        run(),
    );
}

#[test]
fn criterion_12_gamma_generalization() {
    let run = || {
        let r = gamma_moment(&rat(1, 2), 1, 1e-10).map_err(|e| e.to_string())?;
        let target = -std::f64::consts::PI.sqrt() / 4.0;
        let d = (r.quadrature - target).abs();
        ensure(d < 1e-6, || {
            format!("quadrature {} vs {target}", r.quadrature)
        })?;
        Ok(format!("deviation {d:.1e} with {} panels", r.panels))
    };
    report(12, "int z^(1/2) L_1(z) e^-z dz = -sqrt(pi)/4", run());
}
