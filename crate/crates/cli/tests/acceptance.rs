//! Acceptance criteria 1-8, one PASS/FAIL line each. Exits nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use coeffbounds::bounds::{self, Params};
use coeffbounds::extremal::{self, DEFAULT_ORDER};
use coeffbounds::harness::{self, CheckReport, HarnessConfig};
use coeffbounds::num_complex::Complex64;
use coeffbounds::prokhorov::{self, Region};
use coeffbounds::Series;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into() }
    }
}

/// Folds harness reports into one outcome, naming any failures.
fn from_reports(reports: &[CheckReport], extra: Vec<Outcome>) -> Outcome {
    let mut failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.pass)
        .map(|r| format!("{} worst={:e}", r.name, r.worst_violation))
        .collect();
    failed.extend(extra.iter().filter(|o| !o.pass).map(|o| o.detail.clone()));
    if failed.is_empty() {
        let names: Vec<&str> = reports.iter().map(|r| r.name.as_str()).collect();
        Outcome::new(true, format!("{} checks ({})", names.len() + extra.len(), names.join(", ")))
    } else {
        Outcome::new(false, failed.join("; "))
    }
}

fn close(label: &str, got: f64, want: f64, tol: f64) -> Outcome {
    let err = (got - want).abs();
    Outcome::new(err <= tol, format!("{label}: got {got}, want {want} +- {tol:e} (err {err:e})"))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let alpha = rng.gen_range(1e-3..0.999);
        let gamma = rng.gen_range(1e-3..=1.0);
        let p = Params::new(alpha, gamma).unwrap();
        let t = prokhorov::random_triple(&mut rng);
        let closed = extremal::coeffs_closed(p, &t);
        let omega = Series::new(
            DEFAULT_ORDER,
            [Complex64::new(0.0, 0.0), t.c1(), t.c2(), t.c3()],
        );
        let series = extremal::coeffs_series(p, &omega, DEFAULT_ORDER).unwrap();
        for k in 0..3 {
            let a = closed[k];
            let err = (a - series.get(k + 2)).norm() / a.norm().max(1.0);
            worst = worst.max(err);
        }
    }
    let elapsed = start.elapsed();
    let pass = worst <= 1e-10 && elapsed < Duration::from_secs(10);
    Outcome::new(
        pass,
        format!("1000 draws, worst scaled diff {worst:e} (tol 1e-10), {:.2}s (< 10s)", elapsed.as_secs_f64()),
    )
}

fn criterion_2(cfg: &HarnessConfig) -> Outcome {
    let r = harness::check_domination(cfg);
    let extra = vec![Outcome::new(
        r.evaluated >= 20 * 20 * 100_000,
        format!("domination evaluated only {} triples", r.evaluated),
    )];
    from_reports(&[r], extra)
}

fn criterion_3(cfg: &HarnessConfig) -> Outcome {
    let reports = [harness::check_sharpness(cfg), harness::check_extremal_attainment(cfg)];
    // Designated branches, at points where each branch is the active one.
    let mut extra = Vec::new();
    let labels = |alpha: f64, gamma: f64, i: usize| -> Vec<String> {
        let p = Params::new(alpha, gamma).unwrap();
        let f = extremal::extremal_function(p, i, DEFAULT_ORDER).unwrap();
        extremal::attained(p, &f, 1e-9)
            .into_iter()
            .map(|a| format!("a{}:{}", a.coefficient, a.branch))
            .collect()
    };
    let expect = |got: Vec<String>, want: &[&str], what: &str| {
        let ok = want.iter().all(|w| got.iter().any(|g| g == w));
        Outcome::new(ok, format!("{what}: attained {got:?}, expected {want:?}"))
    };
    extra.push(expect(labels(0.5, 1.0, 1), &["a2:a2", "a3:Large", "a4:Case2"], "f1"));
    extra.push(expect(labels(0.5, 0.05, 2), &["a3:Small"], "f2"));
    extra.push(expect(labels(0.5, 0.05, 3), &["a4:Case1"], "f3"));
    from_reports(&reports, extra)
}

fn criterion_4(cfg: &HarnessConfig) -> Outcome {
    let reports = harness::check_phi_oracle(cfg);
    let per_region = Region::COVERED.len();
    let extra = vec![Outcome::new(
        reports.iter().all(|r| r.evaluated >= 20 * (per_region - 1) + 1),
        "fewer sampled points than 20 per region plus (2,1)",
    )];
    from_reports(&reports, extra)
}

fn criterion_5(cfg: &HarnessConfig) -> Outcome {
    let mut reports = harness::check_alpha_nu();
    reports.extend(harness::check_limits());
    reports.extend(harness::check_case1_l1_r1(cfg));
    reports.extend(harness::check_case2_inequalities(cfg));

    let a = bounds::alpha_nu();
    let residual = bounds::crossover_cubic(a).abs();
    let l1_sup = {
        let m = harness::case1_mu_ceiling();
        4.0 / 27.0 * (m + 1.0).powi(3) - (m + 1.0)
    };
    let d_max = harness::linspace(1e-4, 1.0 - 1e-4, 1000)
        .into_iter()
        .map(harness::case2_discriminant)
        .fold(f64::NEG_INFINITY, f64::max);
    let tiny = 1e-8;
    let t = bounds::thresholds(tiny).unwrap();
    let extra = vec![
        close("alpha_nu", a, 0.951226, 1e-5),
        Outcome::new(residual < 1e-8, format!("cubic residual {residual:e}")),
        Outcome::new(t.gamma_half < 0.1 && 0.1 - t.gamma_half < 1e-6, "gamma_half -> 1/10-"),
        Outcome::new(t.gamma_2 < 0.4 && 0.4 - t.gamma_2 < 1e-6, "gamma_2 -> 2/5-"),
        Outcome::new(t.gamma_4 < 0.8 && 0.8 - t.gamma_4 < 1e-6, "gamma_4 -> 4/5-"),
        close("gamma_nu limit", t.gamma_nu, 0.342997, 1e-4),
        Outcome::new(l1_sup < 0.24984, format!("L1 supremum {l1_sup}")),
        Outcome::new(d_max < 0.0, format!("max D(alpha) = {d_max:e}")),
    ];
    from_reports(&reports, extra)
}

fn criterion_6(cfg: &HarnessConfig) -> Outcome {
    let reports = harness::check_remark(cfg);
    let phi = bounds::gamma_star_gap(1.0 / std::f64::consts::PI).unwrap();
    let p = Params::new(1e-8, 1.0).unwrap();
    let extra = vec![
        close("phi(1/pi)", phi, -0.5, 1e-12),
        close("a4 at (0+, 1)", bounds::bound_a4(p).0, 4.0, 1e-6),
    ];
    from_reports(&reports, extra)
}

fn criterion_7() -> Outcome {
    let report = harness::check_continuity();
    let mut worst = 0.0f64;
    for alpha in harness::linspace(1e-3, 0.999, 100) {
        let g = bounds::a3_threshold(alpha);
        let p = Params::new(alpha, g).unwrap();
        worst = worst.max((bounds::a3_small(p) - bounds::a3_large(p)).abs());
        let g = bounds::gamma_nu(alpha);
        if g <= 1.0 {
            let p = Params::new(alpha, g).unwrap();
            let case1 = bounds::a4_prefactor(p);
            worst = worst.max((case1 - case1 * bounds::nu_of(alpha, g)).abs());
        }
    }
    let extra = vec![Outcome::new(worst <= 1e-9, format!("direct branch gap {worst:e}"))];
    from_reports(&[report], extra)
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_coeffbounds"))
        .args(["verify", "--suite", "all", "--seed", "7"])
        .output()
        .expect("spawn coeffbounds");
    let elapsed = start.elapsed();
    let code = out.status.code();
    let pass = code == Some(0) && elapsed < Duration::from_secs(300);
    let mut detail = format!("exit {code:?} in {:.1}s (< 300s)", elapsed.as_secs_f64());
    if !pass {
        detail.push('\n');
        detail.push_str(&String::from_utf8_lossy(&out.stdout));
    }
    Outcome::new(pass, detail)
}

fn main() -> ExitCode {
    let cfg = HarnessConfig::default();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("1 oracle equivalence", Box::new(criterion_1)),
        ("2 domination", Box::new(|| criterion_2(&cfg))),
        ("3 sharpness", Box::new(|| criterion_3(&cfg))),
        ("4 phi verification", Box::new(|| criterion_4(&cfg))),
        ("5 numeric waypoints", Box::new(|| criterion_5(&cfg))),
        ("6 theorem A / remark", Box::new(|| criterion_6(&cfg))),
        ("7 branch continuity", Box::new(criterion_7)),
        ("8 verify --suite all", Box::new(criterion_8)),
    ];
    let mut failed = 0;
    for (name, f) in &criteria {
        let o = f();
        if !o.pass {
            failed += 1;
        }
        println!(
            "{} criterion {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!("acceptance: {} criteria, {failed} failed", criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
