//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! wall-clock limits are part of the criterion.

use std::time::{Duration, Instant};

use jcmnet::cmnet::{cm_check_1d, mixed_difference_binomial, mixed_difference_iterated, Grid};
use jcmnet::counterex::{delta11_at, family_condition_value, threshold_bisect, Family};
use jcmnet::criteria::{
    classify_21_poly, criteria_report, derivative_inequality_check, Classification, Tristate,
};
use jcmnet::decomp::{has_interlacing_signs, partial_fractions, reconstruct_and_verify};
use jcmnet::moments::{log_moment_identity, measure_moment, WeightParams};
use jcmnet::ratpoly::{int, ratio, Rational, TwoVarPoly};
use jcmnet::sampling;
use jcmnet::shifts::{
    build_profile, essential_normality_report, norm_z_sq_closed_form, spectral_radius_estimate,
    subnormal_contraction_check,
};
use jcmnet::{jcm_check, Window};
use rand::Rng;

const MOMENT_TOL: f64 = 1e-8;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

struct Ledger {
    failures: Vec<String>,
}

impl Ledger {
    fn run(&mut self, id: usize, name: &str, limit: Duration, f: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed();
        let ok = result.ok && elapsed < limit;
        println!(
            "{} criterion {id} [{name}]: {} ({:.3} s, limit {:.1} s)",
            if ok { "PASS" } else { "FAIL" },
            result.detail,
            elapsed.as_secs_f64(),
            limit.as_secs_f64()
        );
        if !ok {
            self.failures.push(format!("criterion {id} [{name}]"));
        }
    }
}

fn interlacing_21() -> TwoVarPoly {
    // (b0, b1, b2, a0, a1) = (1, 1, 3, 1, 2)
    TwoVarPoly::monic_int(&[1, 3], &[2])
}

fn thresholds() -> Outcome {
    let tol = ratio(1, 100_000);
    let mut details = Vec::new();
    let mut ok = true;
    for (family, lo, hi, accept) in [
        (Family::Family1, 4, 6, (ratio(493, 100), ratio(495, 100))),
        (Family::Family2, 8, 9, (ratio(818, 100), ratio(820, 100))),
    ] {
        let start = Instant::now();
        match threshold_bisect(family, &int(lo), &int(hi), &tol) {
            Ok(t) => {
                ok &= t.lo >= accept.0
                    && t.hi <= accept.1
                    && start.elapsed() < Duration::from_secs(1);
                details.push(format!("{family:?} root in {t}"));
            }
            Err(e) => {
                ok = false;
                details.push(format!("{family:?}: {e}"));
            }
        }
    }
    outcome(ok, details.join("; "))
}

fn counterexample() -> Outcome {
    let b = int(9);
    let p = Family::Family2.polynomial(&b).expect("family polynomial");
    let cert = jcm_check(&p, Window::new(2, 2).unwrap());
    let condition = family_condition_value(Family::Family2, &b).unwrap();
    let Some(w) = cert.violation_at(&[0, 1], &[1, 1]) else {
        return outcome(false, "no violation recorded at alpha=(0,1), beta=(1,1)");
    };
    let diff = delta11_at(&p, 0, 1).unwrap();
    let cleared = diff.cleared_numerator();
    let recleared = &w.value * &diff.d1 * &diff.d2;
    let ok = diff.value == w.value
        && cleared == recleared
        && cleared == condition
        && condition == int(-61252);
    outcome(
        ok,
        format!(
            "verdict {}, value {}, cleared numerator {cleared}, condition value {condition}",
            cert.verdict, w.value
        ),
    )
}

fn quadratic_over_linear() -> Outcome {
    let p = interlacing_21();
    let class = classify_21_poly(&p).unwrap();
    let cert = jcm_check(&p, Window::square(12).unwrap());
    let report = criteria_report(&p, &[int(0), int(1), int(10)]).unwrap();
    let ok = class == Classification::Jcm
        && cert.is_pass()
        && !report.necessary.product.holds
        && !report.necessary.sum.holds
        && report.product_necessary == Tristate::NotApplicable
        && report.sum_necessary == Tristate::NotApplicable;
    outcome(
        ok,
        format!(
            "classify {class:?}, 12x12 {}, prod {} <= {} fails, sum {} <= {} fails, both flagged {:?}",
            cert.verdict,
            report.necessary.product.lhs,
            report.necessary.product.rhs,
            report.necessary.sum.lhs,
            report.necessary.sum.rhs,
            report.product_necessary
        ),
    )
}

fn decomposition_identity() -> Outcome {
    let mut rng = sampling::rng(41);
    let mut reconstructed = 0;
    let mut sign_ok = 0;
    for _ in 0..50 {
        let k = rng.gen_range(1..=6);
        let p = sampling::unconstrained(&mut rng, k);
        if let Ok(pf) = partial_fractions(&p.b, &p.a) {
            if reconstruct_and_verify(&pf, &p.b, &p.a).is_ok() {
                reconstructed += 1;
            }
        }
        let q = sampling::interlacing(&mut rng, k);
        if let Ok(pf) = partial_fractions(&q.b, &q.a) {
            if reconstruct_and_verify(&pf, &q.b, &q.a).is_ok() && has_interlacing_signs(&pf, false)
            {
                sign_ok += 1;
            }
        }
    }
    outcome(
        reconstructed == 50 && sign_ok == 50,
        format!("{reconstructed}/50 exact reconstructions, {sign_ok}/50 interlacing sign patterns"),
    )
}

fn moment_machinery() -> Outcome {
    let mut worst_identity: f64 = 0.0;
    for k in 1..=5 {
        for x in [ratio(1, 2), int(1), ratio(3, 2)] {
            for n in 0..=3 {
                match log_moment_identity(k, &x, n) {
                    Ok(c) => worst_identity = worst_identity.max(c.abs_error()),
                    Err(e) => return outcome(false, format!("log moment k={k} x={x} n={n}: {e}")),
                }
            }
        }
    }

    let mut rng = sampling::rng(5);
    let mut worst_moment: f64 = 0.0;
    let mut checked = 0;
    for _ in 0..10 {
        let k = rng.gen_range(2..=4);
        let p = sampling::interlacing(&mut rng, k);
        let pf = partial_fractions(&p.b, &p.a).unwrap();
        for r in &pf.residues {
            for t in [0.1, 0.5, 0.9] {
                let wp = WeightParams::new(r.value.clone(), r.root.clone(), t).unwrap();
                for m in 0..=10 {
                    let target = wp.moment_target(m);
                    let got = match measure_moment(&wp, m, MOMENT_TOL * 1e-2) {
                        Ok(q) => q.value,
                        Err(e) => return outcome(false, format!("measure moment: {e}")),
                    };
                    worst_moment = worst_moment.max((got - target).abs() / target.abs().max(1.0));
                    checked += 1;
                }
            }
        }
    }
    outcome(
        worst_identity <= MOMENT_TOL && worst_moment <= MOMENT_TOL,
        format!(
            "log-moment worst |err| {worst_identity:.2e}; {checked} measure moments, worst scaled err {worst_moment:.2e}"
        ),
    )
}

fn interlacing_sufficiency() -> Outcome {
    let mut rng = sampling::rng(6);
    let grid: Vec<Rational> = [0, 1, 2, 5, 10, 50].iter().map(|&x| int(x)).collect();
    let window = Window::square(15).unwrap();
    let (mut passed, mut consistent) = (0, 0);
    for _ in 0..25 {
        let k = rng.gen_range(1..=4);
        let p = sampling::interlacing(&mut rng, k);
        if jcm_check(&p, window).is_pass() {
            passed += 1;
            let report = criteria_report(&p, &grid).unwrap();
            let derivative = derivative_inequality_check(&p, &grid).unwrap();
            if report.reciprocal_sum_necessary && derivative.holds_on_grid {
                consistent += 1;
            }
        }
    }
    outcome(
        passed == 25 && consistent == 25,
        format!(
            "{passed}/25 pass window 15x15, {consistent}/25 satisfy the necessary inequalities"
        ),
    )
}

fn shift_suite() -> Outcome {
    let p = interlacing_21();
    let profile = build_profile(&p, 1, 1000).unwrap();
    let sub = subnormal_contraction_check(&profile, 30).unwrap();
    let prefix_pass = cm_check_1d(&profile.beta[..30]).unwrap().is_pass();
    let normal = essential_normality_report(&profile).unwrap();
    let slope = normal.decay_exponent.unwrap_or(f64::NAN);
    let spectral = spectral_radius_estimate(&profile, &[64], 100_000).unwrap();
    let r = spectral.last().unwrap_or(f64::NAN);
    let closed = norm_z_sq_closed_form(&p, 1);
    let ok = sub.contraction
        && prefix_pass
        && normal.tail_max_abs < 1e-4
        && (-2.3..=-1.7).contains(&slope)
        && (0.99..=1.0).contains(&r)
        && profile.norm_z_sq == closed
        && closed == ratio(5, 11);
    outcome(
        ok,
        format!(
            "contraction {}, prefix CM {}, tail max {:.3e}, slope {slope:.3}, r est {r:.6}, ||z||^2 {}",
            sub.contraction, prefix_pass, normal.tail_max_abs, profile.norm_z_sq
        ),
    )
}

fn forward_grid(g: &Grid, axis: usize) -> Grid {
    let (rows, cols) = if axis == 0 {
        (g.rows() - 1, g.cols())
    } else {
        (g.rows(), g.cols() - 1)
    };
    Grid::from_fn(rows, cols, |m, n| {
        if axis == 0 {
            g.get(m + 1, n) - g.get(m, n)
        } else {
            g.get(m, n + 1) - g.get(m, n)
        }
    })
}

fn difference_engine() -> Outcome {
    let mut rng = sampling::rng(8);
    let (mut agree, mut commute) = (0, 0);
    for _ in 0..100 {
        let rows = rng.gen_range(2..=8);
        let cols = rng.gen_range(2..=8);
        let g = Grid::from_fn(rows, cols, |_, _| {
            ratio(rng.gen_range(-50..=50), rng.gen_range(1..=12))
        });
        let beta = [rng.gen_range(0..rows), rng.gen_range(0..cols)];
        let alpha = [
            rng.gen_range(0..rows - beta[0]),
            rng.gen_range(0..cols - beta[1]),
        ];
        let b = mixed_difference_binomial(&g, alpha, beta).unwrap();
        let i = mixed_difference_iterated(&g, alpha, beta).unwrap();
        if b == i {
            agree += 1;
        }
        let d12 = forward_grid(&forward_grid(&g, 1), 0);
        let d21 = forward_grid(&forward_grid(&g, 0), 1);
        if d12 == d21 {
            commute += 1;
        }
    }
    outcome(
        agree == 100 && commute == 100,
        format!("{agree}/100 binomial = iterated, {commute}/100 Delta1 Delta2 = Delta2 Delta1"),
    )
}

fn main() {
    let mut ledger = Ledger {
        failures: Vec::new(),
    };
    ledger.run(
        1,
        "threshold reproduction",
        Duration::from_secs(2),
        thresholds,
    );
    ledger.run(
        2,
        "counterexample certificate",
        Duration::from_millis(100),
        counterexample,
    );
    ledger.run(
        3,
        "quadratic-over-linear interlacing",
        Duration::from_secs(5),
        quadratic_over_linear,
    );
    ledger.run(
        4,
        "partial-fraction identity",
        Duration::from_secs(2),
        decomposition_identity,
    );
    ledger.run(
        5,
        "moment machinery",
        Duration::from_secs(30),
        moment_machinery,
    );
    ledger.run(
        6,
        "interlacing sufficiency",
        Duration::from_secs(60),
        interlacing_sufficiency,
    );
    ledger.run(
        7,
        "weighted shift suite",
        Duration::from_secs(30),
        shift_suite,
    );
    ledger.run(
        8,
        "difference engine",
        Duration::from_secs(5),
        difference_engine,
    );
    if !ledger.failures.is_empty() {
        eprintln!("failed: {:?}", ledger.failures);
        std::process::exit(1);
    }
}
