//! Grid checks of the inequalities used to place `(mu, nu)` in the regions
//! where `Phi` is known, and of the threshold and limit claims.

use std::f64::consts::PI;

use super::{linspace, CheckReport, HarnessConfig, Tracker, GRID_MARGIN};
use crate::bounds::{
    self, a3_large, a3_small, a3_threshold, a4_prefactor, alpha_nu, beta_star, crossover_cubic,
    gamma_2, gamma_4, gamma_half, gamma_nu, gamma_star, gamma_star_gap, mu_of, nu_of, Params,
};
use crate::prokhorov::{classify, d2_floor, phi, MuNu, Region};

fn params(alpha: f64, gamma: f64) -> Params {
    Params::new(alpha, gamma).expect("grid point satisfies the class hypotheses")
}

/// Upper bound `10/sqrt(34)` of `mu` on the first case's domain.
pub fn case1_mu_ceiling() -> f64 {
    10.0 / 34.0_f64.sqrt()
}

/// `d2_floor` at [`case1_mu_ceiling`], approximately `0.249838`.
pub fn case1_l1_ceiling() -> f64 {
    d2_floor(case1_mu_ceiling())
}

/// `(43 - 23a + 5a^2 - a^3) gamma^2 / ((1-a)^3 (2-a)^2)`; at least one
/// exactly when `nu >= (mu^2 + 8)/12`.
pub fn case2_d6_lhs(alpha: f64, gamma: f64) -> f64 {
    let a = alpha;
    let num = 43.0 - 23.0 * a + 5.0 * a * a - a * a * a;
    num * gamma * gamma / ((1.0 - a).powi(3) * (2.0 - a).powi(2))
}

/// `8 (1-a)^3 (a^3 - 2a^2 + 17a - 52)`.
pub fn case2_discriminant(alpha: f64) -> f64 {
    let a = alpha;
    8.0 * (1.0 - a).powi(3) * (((a - 2.0) * a + 17.0) * a - 52.0)
}

/// `b^2 - 4ac` of `2q g^2 - 4(1-a)^2(5-a) g + 3(1-a)^3(2-a)`, the quadratic in
/// `gamma` equivalent to `nu >= (2/3)(mu - 1)`.
pub fn case2_discriminant_from_trinomial(alpha: f64) -> f64 {
    let a = alpha;
    let qa = 2.0 * (a * a - 6.0 * a + 17.0);
    let qb = -4.0 * (1.0 - a).powi(2) * (5.0 - a);
    let qc = 3.0 * (1.0 - a).powi(3) * (2.0 - a);
    qb * qb - 4.0 * qa * qc
}

fn describe_grid(cfg: &HarnessConfig, what: &str) -> String {
    format!("{} alpha x {} gamma, {what}", cfg.alpha_points, cfg.gamma_points)
}

pub fn check_case1_l1_r1(cfg: &HarnessConfig) -> Vec<CheckReport> {
    let crossover = alpha_nu();
    let alphas: Vec<f64> = cfg
        .alpha_grid()
        .into_iter()
        .filter(|&a| a < crossover)
        .collect();
    let mu_cap = case1_mu_ceiling();
    let parts = cfg.mode.map(alphas.len(), |i| {
        let a = alphas[i];
        let mut t = [
            Tracker::default(),
            Tracker::default(),
            Tracker::default(),
            Tracker::default(),
        ];
        for g in linspace(gamma_half(a), gamma_nu(a), cfg.gamma_points) {
            let (mu, nu) = (mu_of(a, g), nu_of(a, g));
            let l1 = d2_floor(mu);
            let inputs = [("alpha", a), ("gamma", g)];
            let values = [("mu", mu), ("L1", l1), ("R1", nu)];
            t[0].record(l1 - nu, &inputs, &values);
            t[1].record(mu - mu_cap, &inputs, &values);
            t[2].record(l1 - 0.24984, &inputs, &values);
            t[3].record(1.0 / 3.0 - nu, &inputs, &values);
        }
        t
    });
    let mut merged: [Vec<Tracker>; 4] = Default::default();
    for part in parts {
        for (slot, t) in merged.iter_mut().zip(part) {
            slot.push(t);
        }
    }
    let desc = describe_grid(cfg, "alpha < alpha_nu, gamma in [gamma_half, gamma_nu]");
    let names = [
        ("case1_l1_below_r1", "L1 < R1"),
        ("case1_mu_ceiling", "mu < 10/sqrt(34)"),
        ("case1_l1_ceiling", "L1 < 0.24984"),
        ("case1_r1_floor", "R1 > 1/3"),
    ];
    merged
        .into_iter()
        .zip(names)
        .map(|(parts, (name, claim))| {
            Tracker::merge(parts).finish(name, format!("{claim}; {desc}"), 0.0, None)
        })
        .collect()
}

pub fn check_case2_inequalities(cfg: &HarnessConfig) -> Vec<CheckReport> {
    let alphas = cfg.alpha_grid();
    let parts = cfg.mode.map(alphas.len(), |i| {
        let a = alphas[i];
        let mut t: [Tracker; 6] = Default::default();
        let g2 = gamma_2(a);
        for g in linspace(g2, gamma_4(a).min(1.0), cfg.gamma_points) {
            let (mu, nu) = (mu_of(a, g), nu_of(a, g));
            let lhs = case2_d6_lhs(a, g);
            let inputs = [("alpha", a), ("gamma", g)];
            t[0].record(1.0 - lhs, &inputs, &[("lhs", lhs)]);
            let floor = (mu * mu + 8.0) / 12.0;
            t[1].record(floor - nu, &inputs, &[("mu", mu), ("nu", nu), ("floor", floor)]);
        }

        let lhs2 = case2_d6_lhs(a, g2) - 1.0;
        let quad = a * a - 2.0 * a - 3.0;
        let agree = (lhs2 >= 0.0) == (quad <= 0.0);
        let v = if agree { quad } else { 1.0 + quad.abs() };
        t[2].record(v, &[("alpha", a)], &[("lhs_minus_1", lhs2), ("a2_2a_3", quad)]);

        let d = case2_discriminant(a);
        let d_alt = case2_discriminant_from_trinomial(a);
        t[3].record(d, &[("alpha", a)], &[("D", d), ("b2_4ac", d_alt)]);
        t[4].record((d - d_alt).abs() / d.abs().max(1.0), &[("alpha", a)], &[("D", d), ("b2_4ac", d_alt)]);

        for g in linspace(gamma_4(a), 1.0, cfg.gamma_points) {
            let (mu, nu) = (mu_of(a, g), nu_of(a, g));
            let floor = 2.0 / 3.0 * (mu - 1.0);
            t[5].record(floor - nu, &[("alpha", a), ("gamma", g)], &[("mu", mu), ("nu", nu)]);
        }
        t
    });
    let mut merged: [Vec<Tracker>; 6] = Default::default();
    for part in parts {
        for (slot, t) in merged.iter_mut().zip(part) {
            slot.push(t);
        }
    }
    let spec = [
        ("case2_d6_reduction", "LHS(alpha, gamma) >= 1 on [gamma_2, gamma_4]", 0.0),
        ("case2_d6_direct", "nu >= (mu^2+8)/12 on [gamma_2, gamma_4]", 0.0),
        ("case2_gamma2_reduction", "LHS(gamma_2) >= 1 <=> a^2-2a-3 <= 0, and a^2-2a-3 <= 0", 0.0),
        ("case2_discriminant", "D(alpha) < 0", 0.0),
        ("case2_discriminant_identity", "D(alpha) equals b^2-4ac of the trinomial (relative)", 1e-12),
        ("case2_d7_direct", "nu >= (2/3)(mu-1) on [gamma_4, 1]", 0.0),
    ];
    merged
        .into_iter()
        .zip(spec)
        .map(|(parts, (name, claim, tol))| {
            let desc = format!("{claim}; {} alpha points", cfg.alpha_points);
            Tracker::merge(parts).finish(name, desc, tol, None)
        })
        .collect()
}

pub fn check_equivalences(cfg: &HarnessConfig) -> Vec<CheckReport> {
    let alphas = cfg.alpha_grid();
    let gammas = cfg.gamma_grid();
    let parts = cfg.mode.map(alphas.len(), |i| {
        let a = alphas[i];
        let mut defs = Tracker::default();
        let mut sides = Tracker::default();
        let curves = [
            ("gamma_half", gamma_half(a), 0.5),
            ("gamma_2", gamma_2(a), 2.0),
            ("gamma_4", gamma_4(a), 4.0),
        ];
        for (name, g, target) in curves {
            let mu = mu_of(a, g);
            defs.record((mu - target).abs(), &[("alpha", a)], &[(name, g), ("mu", mu)]);
        }
        let gn = gamma_nu(a);
        let nu = nu_of(a, gn);
        defs.record((nu - 1.0).abs(), &[("alpha", a)], &[("gamma_nu", gn), ("nu", nu)]);

        for &g in &gammas {
            let (mu, nu) = (mu_of(a, g), nu_of(a, g));
            let inputs = [("alpha", a), ("gamma", g)];
            for (name, gt, target) in curves {
                // same sign on both sides of the equivalence
                let v = -(gt - g) * (target - mu);
                sides.record(v, &inputs, &[(name, gt), ("mu", mu)]);
            }
            sides.record(-(gn - g) * (1.0 - nu), &inputs, &[("gamma_nu", gn), ("nu", nu)]);
        }
        (defs, sides)
    });
    let (defs, sides): (Vec<_>, Vec<_>) = parts.into_iter().unzip();
    vec![
        Tracker::merge(defs).finish(
            "threshold_equivalences",
            format!(
                "mu at gamma_half/gamma_2/gamma_4 is 1/2/2/4, nu(gamma_nu) = 1; {} alpha points",
                cfg.alpha_points
            ),
            1e-12,
            None,
        ),
        Tracker::merge(sides).finish(
            "threshold_sides",
            describe_grid(cfg, "gamma <= threshold iff functional <= its level"),
            1e-12,
            None,
        ),
    ]
}

pub fn check_thresholds(cfg: &HarnessConfig) -> Vec<CheckReport> {
    let alphas = cfg.alpha_grid();
    let curves = |a: f64| [gamma_half(a), gamma_2(a), gamma_4(a), gamma_nu(a)];
    let caps = [0.1, 0.4, 0.8, (2.0_f64 / 17.0).sqrt()];
    let names = ["gamma_half", "gamma_2", "gamma_4", "gamma_nu"];
    let crossover = alpha_nu();

    let mut order = Tracker::default();
    let mut caps_t = Tracker::default();
    let mut mono = Tracker::default();
    let mut cross = Tracker::default();
    for (k, &a) in alphas.iter().enumerate() {
        let [gh, g2, g4, gn] = curves(a);
        let inputs = [("alpha", a)];
        let values = [("gamma_half", gh), ("gamma_2", g2), ("gamma_4", g4), ("gamma_nu", gn)];
        for v in [-gh, gh - g2, g2 - g4, -gn, gn - g2] {
            order.record(v, &inputs, &values);
        }
        for (g, cap) in curves(a).into_iter().zip(caps) {
            caps_t.record(g - cap, &inputs, &values);
        }
        if let Some(&next) = alphas.get(k + 1) {
            for ((now, later), name) in curves(a).into_iter().zip(curves(next)).zip(names) {
                mono.record(later - now, &[("alpha", a), ("alpha_next", next)], &[(name, now)]);
            }
        }
        cross.record(
            -(gn - gh) * (crossover - a),
            &inputs,
            &[("gamma_half", gh), ("gamma_nu", gn), ("alpha_nu", crossover)],
        );
    }
    let n = cfg.alpha_points;
    vec![
        order.finish(
            "threshold_order",
            format!("0 < gamma_half < gamma_2 < gamma_4, 0 < gamma_nu < gamma_2; {n} alpha points"),
            0.0,
            None,
        ),
        caps_t.finish(
            "threshold_upper_limits",
            format!("gamma_half < 1/10, gamma_2 < 2/5, gamma_4 < 4/5, gamma_nu < sqrt(2/17); {n} alpha points"),
            0.0,
            None,
        ),
        mono.finish(
            "threshold_monotone",
            format!("all four thresholds strictly decreasing; {n} alpha points"),
            0.0,
            None,
        ),
        cross.finish(
            "threshold_crossover",
            format!("gamma_half <= gamma_nu iff alpha <= alpha_nu; {n} alpha points"),
            1e-12,
            None,
        ),
    ]
}

pub fn check_alpha_nu() -> Vec<CheckReport> {
    let r = alpha_nu();
    let res = crossover_cubic(r);
    let values = [("alpha_nu", r), ("residual", res)];
    let single = |name: &str, desc: &str, v: f64, tol: f64| {
        let mut t = Tracker::default();
        t.record(v, &[], &values);
        t.finish(name, desc.to_string(), tol, None)
    };
    vec![
        single("alpha_nu_value", "alpha_nu = 0.951226", (r - 0.951226).abs(), 1e-5),
        single(
            "alpha_nu_residual",
            "|5a^3 - 56a^2 + 177a - 122| at alpha_nu",
            res.abs(),
            1e-8,
        ),
        single(
            "alpha_nu_crossover",
            "gamma_half(alpha_nu) = gamma_nu(alpha_nu)",
            (gamma_half(r) - gamma_nu(r)).abs(),
            1e-8,
        ),
        single(
            "case1_l1_bound_value",
            "4/27 (10/sqrt34 + 1)^3 - (10/sqrt34 + 1) = 0.249838",
            (case1_l1_ceiling() - 0.249838).abs(),
            1e-6,
        ),
    ]
}

/// Limits of the thresholds as `alpha -> 0+`, evaluated at `alpha = 1e-8`.
pub fn check_limits() -> Vec<CheckReport> {
    let a = 1e-8;
    let sup = (2.0_f64 / 17.0).sqrt();
    let cases = [
        ("limit_gamma_half", gamma_half(a), 0.1, 0.1, 1e-6),
        ("limit_gamma_2", gamma_2(a), 0.4, 0.4, 1e-6),
        ("limit_gamma_4", gamma_4(a), 0.8, 0.8, 1e-6),
        ("limit_gamma_nu", gamma_nu(a), sup, 0.342997, 1e-4),
        ("limit_gamma_a3", a3_threshold(a), 1.0 / 3.0, 1.0 / 3.0, 1e-6),
    ];
    cases
        .into_iter()
        .map(|(name, v, sup, target, tol)| {
            let mut t = Tracker::default();
            // approached from below
            let violation = if v < sup { (v - target).abs() } else { 1.0 + (v - sup) };
            t.record(violation, &[("alpha", a)], &[("value", v), ("limit", target)]);
            t.finish(name, format!("-> {target} from below at alpha = 1e-8"), tol, None)
        })
        .collect()
}

pub fn check_remark(cfg: &HarnessConfig) -> Vec<CheckReport> {
    let n = cfg.alpha_points;
    let upper = 2.0 / PI;
    let mut below = Tracker::default();
    let mut minimum = Tracker::default();
    let at = 1.0 / PI;
    let phi_at = gamma_star_gap(at).expect("1/pi is in range");
    minimum.record((phi_at + 0.5).abs(), &[("alpha", at)], &[("phi", phi_at)]);
    for a in linspace(GRID_MARGIN, upper - GRID_MARGIN, n) {
        let gs = gamma_star(a).expect("grid inside (0, 2/pi)");
        below.record(gs - (1.0 - a), &[("alpha", a)], &[("gamma_star", gs)]);
        let phi_a = gs - (1.0 - a);
        minimum.record(-0.5 - phi_a, &[("alpha", a)], &[("phi", phi_a)]);
    }
    let mut beta = Tracker::default();
    let b = beta_star(at).expect("1/pi is in range");
    let gs = gamma_star(at).expect("1/pi is in range");
    beta.record((b - 0.5).abs(), &[("alpha", at)], &[("beta", b)]);
    beta.record((gs - (0.5 - 1.0 / PI)).abs(), &[("alpha", at)], &[("gamma_star", gs)]);

    let a0 = 1e-8;
    let mut zero = Tracker::default();
    for g in cfg.gamma_grid() {
        let r = bounds::report(params(a0, g));
        let a3 = if g <= 1.0 / 3.0 { g } else { 3.0 * g * g };
        let a4 = if g <= (2.0_f64 / 17.0).sqrt() {
            2.0 * g / 3.0
        } else {
            2.0 * g * (1.0 + 17.0 * g * g) / 9.0
        };
        let inputs = [("alpha", a0), ("gamma", g)];
        zero.record((r.a2_bound - 2.0 * g).abs(), &inputs, &[("a2", r.a2_bound)]);
        zero.record((r.a3_bound - a3).abs(), &inputs, &[("a3", r.a3_bound), ("remark", a3)]);
        zero.record((r.a4_bound - a4).abs(), &inputs, &[("a4", r.a4_bound), ("remark", a4)]);
        zero.record(r.a4_bound - 4.0, &inputs, &[("a4", r.a4_bound)]);
    }

    let mut one = Tracker::default();
    for a in cfg.alpha_grid() {
        let r = bounds::report(params(a, 1.0));
        let q = a * a - 6.0 * a + 17.0;
        let want = [
            2.0 / (1.0 - a),
            2.0 * (3.0 - a) / ((1.0 - a).powi(2) * (2.0 - a)),
            2.0 / (3.0 - a) * (1.0 / 3.0 + 2.0 / 3.0 * q / ((1.0 - a).powi(3) * (2.0 - a))),
        ];
        for (got, want) in [r.a2_bound, r.a3_bound, r.a4_bound].into_iter().zip(want) {
            one.record((got - want).abs() / want, &[("alpha", a)], &[("bound", got), ("remark", want)]);
        }
    }

    let mut limit = Tracker::default();
    let (a4, _) = bounds::bound_a4(params(a0, 1.0));
    limit.record((a4 - 4.0).abs(), &[("alpha", a0), ("gamma", 1.0)], &[("a4", a4)]);

    vec![
        below.finish(
            "gamma_star_below_one_minus_alpha",
            format!("gamma_star(alpha) < 1 - alpha; {n} points in (0, 2/pi)"),
            0.0,
            None,
        ),
        minimum.finish(
            "gamma_star_gap_minimum",
            format!("phi(1/pi) = -1/2 and phi >= -1/2 on {n} points"),
            1e-12,
            None,
        ),
        beta.finish(
            "theorem_a_at_one_over_pi",
            "beta(1/pi) = 1/2, gamma_star(1/pi) = 1/2 - 1/pi".to_string(),
            1e-12,
            None,
        ),
        zero.finish(
            "remark_alpha_zero",
            format!("bounds at alpha = 1e-8 vs the alpha -> 0 formulas, and a4 <= 4; {} gamma points", cfg.gamma_points),
            1e-6,
            None,
        ),
        one.finish(
            "remark_gamma_one",
            format!("bounds at gamma = 1 vs the gamma = 1 formulas (relative); {n} alpha points"),
            1e-12,
            None,
        ),
        limit.finish(
            "remark_a4_limit",
            "a4 bound at (alpha = 1e-8, gamma = 1) equals 4".to_string(),
            1e-6,
            None,
        ),
    ]
}

/// Branch agreement at the `a3` and `a4` switch points on 100 alpha values.
pub fn check_continuity() -> CheckReport {
    let n = 100;
    let mut t = Tracker::default();
    for a in linspace(GRID_MARGIN, 1.0 - GRID_MARGIN, n) {
        let g = a3_threshold(a);
        let p = params(a, g);
        let (small, large) = (a3_small(p), a3_large(p));
        let below = bounds::bound_a3(params(a, g * (1.0 - 1e-12))).0;
        let above = bounds::bound_a3(params(a, g * (1.0 + 1e-12))).0;
        let inputs = [("alpha", a), ("gamma", g)];
        t.record((small - large).abs(), &inputs, &[("small", small), ("large", large)]);
        t.record((below - above).abs(), &inputs, &[("below", below), ("above", above)]);

        let g = gamma_nu(a);
        let p = params(a, g);
        let case1 = a4_prefactor(p);
        let case2 = case1 * bounds::mu_nu(p).nu;
        let below = bounds::bound_a4(params(a, g * (1.0 - 1e-12))).0;
        let above = bounds::bound_a4(params(a, g * (1.0 + 1e-12))).0;
        let inputs = [("alpha", a), ("gamma", g)];
        t.record((case1 - case2).abs(), &inputs, &[("case1", case1), ("case2", case2)]);
        t.record((below - above).abs(), &inputs, &[("below", below), ("above", above)]);
    }
    t.finish(
        "branch_continuity",
        format!("a3 branches at (1-a)^2/(3-a), a4 branches at gamma_nu; {n} alpha points"),
        1e-9,
        None,
    )
}

/// Every `(mu(alpha, gamma), nu(alpha, gamma))` falls in a covered region
/// and `Phi` equals 1 for `gamma <= gamma_nu`, `nu` beyond.
pub fn check_region_coverage(cfg: &HarnessConfig) -> CheckReport {
    let alphas = cfg.alpha_grid();
    let gammas = cfg.gamma_grid();
    let parts = cfg.mode.map(alphas.len(), |i| {
        let a = alphas[i];
        let gn = gamma_nu(a);
        let mut t = Tracker::default();
        for &g in &gammas {
            let mn = MuNu::new(mu_of(a, g), nu_of(a, g));
            let region = classify(mn);
            let case1 = g <= gn;
            let expected = if case1 { 1.0 } else { mn.nu };
            let on_seam = (mn.nu - 1.0).abs() <= 1e-12;
            let label_ok = if case1 {
                region.is_unit()
            } else {
                region.is_abs_nu() || (on_seam && region.is_unit())
            };
            let v = match phi(mn) {
                None => 1.0,
                Some(_) if !label_ok => 1.0,
                Some(value) => (value - expected).abs() / expected.max(1.0),
            };
            let region_code = Region::COVERED
                .iter()
                .position(|&r| r == region)
                .map_or(-1.0, |k| k as f64);
            t.record(
                v,
                &[("alpha", a), ("gamma", g)],
                &[("mu", mn.mu), ("nu", mn.nu), ("region_index", region_code)],
            );
        }
        t
    });
    Tracker::merge(parts).finish(
        "region_coverage",
        describe_grid(cfg, "Phi covered; Phi = 1 up to gamma_nu, nu beyond"),
        1e-12,
        None,
    )
}
