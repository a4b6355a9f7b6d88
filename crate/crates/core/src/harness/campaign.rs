//! Sampling campaigns: domination and attainment of the coefficient bounds,
//! agreement of the two coefficient extractions, and the `Phi` oracle.
//!
//! Bounds grow like `(1 - alpha)^{-3}`, so comparisons against them are
//! scaled by `max(1, bound)`; for bounds of order one this is the plain
//! absolute difference.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CheckReport, HarnessConfig, Tracker, GRID_MARGIN};
use crate::bounds::{self, a3_large, a3_small, a4_prefactor, Params};
use crate::extremal::{coeffs_closed, coeffs_series, extremal_function, DEFAULT_ORDER};
use crate::par::Mode;
use crate::powerseries::Series;
use crate::prokhorov::{
    classify, d2_floor, phi, psi, random_triple, BodySearch, MuNu, Region, SchwarzTriple,
};

const DOMINATION_TOL: f64 = 1e-9;
const SHARPNESS_TOL: f64 = 5e-3;
const ATTAINMENT_TOL: f64 = 1e-9;
const SERIES_TOL: f64 = 1e-10;
const ORACLE_SOUND_TOL: f64 = 1e-6;
const PSI_SOUND_TOL: f64 = 1e-9;
const SOUNDNESS_POINTS: usize = 50;

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn scaled(excess: f64, bound: f64) -> f64 {
    excess / bound.max(1.0)
}

fn bound_triplet(p: Params) -> [f64; 3] {
    [bounds::bound_a2(p), bounds::bound_a3(p).0, bounds::bound_a4(p).0]
}

fn pinputs(p: Params) -> [(&'static str, f64); 2] {
    [("alpha", p.alpha()), ("gamma", p.gamma())]
}

fn dominate_point(p: Params, samples: usize, rng: &mut ChaCha8Rng) -> Tracker {
    let b = bound_triplet(p);
    let mut t = Tracker::default();
    let mut worst = [f64::NEG_INFINITY; 3];
    let mut worst_triple = [None; 3];
    for _ in 0..samples {
        let triple = random_triple(rng);
        let a = coeffs_closed(p, &triple);
        for k in 0..3 {
            let v = scaled(a[k].norm() - b[k], b[k]);
            if v > worst[k] {
                worst[k] = v;
                worst_triple[k] = Some((triple, a[k].norm()));
            }
        }
    }
    // one witness per coefficient keeps the report small
    for k in 0..3 {
        if let Some((tr, value)) = worst_triple[k] {
            t.record(
                worst[k],
                &pinputs(p),
                &[
                    ("coefficient", (k + 2) as f64),
                    ("value", value),
                    ("bound", b[k]),
                    ("c1_abs", tr.c1().norm()),
                    ("c2_abs", tr.c2().norm()),
                    ("c3_abs", tr.c3().norm()),
                ],
            );
        }
    }
    t.evaluated = samples;
    t
}

fn sharpen_point(p: Params, budget: usize, seed: u64, mode: Mode) -> Tracker {
    let b = bound_triplet(p);
    let mut t = Tracker::default();
    for k in 0..3 {
        let found = BodySearch::new(budget, seed)
            .with_mode(mode)
            .maximize(|tr| coeffs_closed(p, tr)[k].norm());
        t.record(
            b[k] - found.value,
            &pinputs(p),
            &[
                ("coefficient", (k + 2) as f64),
                ("found", found.value),
                ("bound", b[k]),
                ("evaluations", found.evaluations as f64),
            ],
        );
    }
    t
}

/// Each extremal function reproduces its closed-form value, and the one
/// designated for the active branch reproduces the bound itself.
fn attain_point(p: Params) -> Tracker {
    let mut t = Tracker::default();
    let f: Vec<_> = (1..=3)
        .map(|i| extremal_function(p, i, DEFAULT_ORDER).expect("valid index and order"))
        .collect();
    let (a3b, a3_branch) = bounds::bound_a3(p);
    let (a4b, a4_branch) = bounds::bound_a4(p);
    let nu = bounds::mu_nu(p).nu;
    let pairs = [
        (1, 2, bounds::bound_a2(p)),
        (1, 3, a3_large(p)),
        (1, 4, a4_prefactor(p) * nu),
        (2, 3, a3_small(p)),
        (3, 4, a4_prefactor(p)),
    ];
    for (i, k, want) in pairs {
        let got = f[i - 1].get(k).norm();
        t.record(
            scaled((got - want).abs(), want),
            &pinputs(p),
            &[("extremal", i as f64), ("coefficient", k as f64), ("value", got), ("target", want)],
        );
    }
    let designated_a3 = match a3_branch {
        bounds::A3Branch::Small => &f[1],
        bounds::A3Branch::Large => &f[0],
    };
    let designated_a4 = match a4_branch {
        bounds::A4Branch::Case1 => &f[2],
        bounds::A4Branch::Case2 => &f[0],
    };
    for (k, fv, bound) in [(3, designated_a3, a3b), (4, designated_a4, a4b)] {
        let got = fv.get(k).norm();
        t.record(
            scaled((got - bound).abs(), bound),
            &pinputs(p),
            &[("coefficient", k as f64), ("value", got), ("bound", bound)],
        );
    }
    t
}

/// Domination, chart-optimization sharpness and extremal attainment at one
/// parameter point.
pub fn campaign_domination_sharpness(
    p: Params,
    samples: usize,
    budget: usize,
    seed: u64,
) -> Vec<CheckReport> {
    let at = format!("alpha = {}, gamma = {}", p.alpha(), p.gamma());
    vec![
        dominate_point(p, samples, &mut rng_for(seed, 0)).finish(
            "domination",
            format!("|a_k| <= bound_k + 1e-9 (scaled); {samples} triples at {at}"),
            DOMINATION_TOL,
            Some(seed),
        ),
        sharpen_point(p, budget, seed, Mode::default()).finish(
            "sharpness",
            format!("chart maximum within 5e-3 of each bound; budget {budget} at {at}"),
            SHARPNESS_TOL,
            Some(seed),
        ),
        attain_point(p).finish(
            "extremal_attainment",
            format!("f_1, f_2, f_3 attain their branches at {at}"),
            ATTAINMENT_TOL,
            Some(seed),
        ),
    ]
}

fn grid_params(grid: &[(f64, f64)]) -> Vec<Params> {
    grid.iter()
        .map(|&(a, g)| Params::new(a, g).expect("campaign grid satisfies the hypotheses"))
        .collect()
}

pub fn check_domination(cfg: &HarnessConfig) -> CheckReport {
    let pts = grid_params(&cfg.campaign_grid(cfg.campaign_side));
    let parts = cfg.mode.map(pts.len(), |i| {
        dominate_point(pts[i], cfg.samples, &mut rng_for(cfg.seed, i as u64))
    });
    Tracker::merge(parts).finish(
        "domination",
        format!(
            "|a2|,|a3|,|a4| <= bounds + 1e-9 (scaled by max(1,bound)); {} triples at each of {}x{} points",
            cfg.samples, cfg.campaign_side, cfg.campaign_side
        ),
        DOMINATION_TOL,
        Some(cfg.seed),
    )
}

pub fn check_sharpness(cfg: &HarnessConfig) -> CheckReport {
    let pts = grid_params(&cfg.campaign_grid(cfg.sharpness_side));
    let parts = cfg.mode.map(pts.len(), |i| {
        sharpen_point(pts[i], cfg.budget, cfg.seed, Mode::Sequential)
    });
    Tracker::merge(parts).finish(
        "sharpness",
        format!(
            "chart maximum of |a_k| within 5e-3 of the bound; budget {} at each of {}x{} points",
            cfg.budget, cfg.sharpness_side, cfg.sharpness_side
        ),
        SHARPNESS_TOL,
        Some(cfg.seed),
    )
}

pub fn check_extremal_attainment(cfg: &HarnessConfig) -> CheckReport {
    let pts = grid_params(&cfg.campaign_grid(cfg.campaign_side));
    let parts = cfg.mode.map(pts.len(), |i| attain_point(pts[i]));
    Tracker::merge(parts).finish(
        "extremal_attainment",
        format!(
            "f_1 -> a2, a3 Large, a4 Case2; f_2 -> a3 Small; f_3 -> a4 Case1 (scaled); {}x{} points",
            cfg.campaign_side, cfg.campaign_side
        ),
        ATTAINMENT_TOL,
        Some(cfg.seed),
    )
}

/// Closed-form `(a2, a3, a4)` against the order-by-order series solution.
pub fn check_series_equivalence(cfg: &HarnessConfig) -> CheckReport {
    let n = cfg.series_draws;
    let parts = cfg.mode.map(n, |i| {
        let mut rng = rng_for(cfg.seed ^ 0x5e71e5, i as u64);
        let a = rng.gen_range(GRID_MARGIN..1.0 - GRID_MARGIN);
        let g = rng.gen_range(GRID_MARGIN..=1.0);
        let p = Params::new(a, g).expect("sampled inside the hypotheses");
        let tr = random_triple(&mut rng);
        let omega = Series::new(DEFAULT_ORDER, [0.0.into(), tr.c1(), tr.c2(), tr.c3()]);
        let f = coeffs_series(p, &omega, DEFAULT_ORDER).expect("omega(0) = 0 and order >= 4");
        let closed = coeffs_closed(p, &tr);
        let mut t = Tracker::default();
        let v = f
            .leading()
            .iter()
            .zip(closed)
            .map(|(s, c)| (s - c).norm() / c.norm().max(1.0))
            .fold(0.0, f64::max);
        t.record(
            v,
            &[("alpha", a), ("gamma", g), ("c1_abs", tr.c1().norm()), ("c2_abs", tr.c2().norm()), ("c3_abs", tr.c3().norm())],
            &[("a4_closed_abs", closed[2].norm())],
        );
        t
    });
    Tracker::merge(parts).finish(
        "series_equivalence",
        format!("closed-form vs series-recurrence a2..a4 (scaled by max(1,|a|)); {n} random draws"),
        SERIES_TOL,
        Some(cfg.seed),
    )
}

/// Points classified into `region`, drawn from a bounded box around it.
pub fn region_samples(region: Region, count: usize, seed: u64) -> Vec<MuNu> {
    if region == Region::Point21 {
        return vec![MuNu::new(2.0, 1.0); count.min(1)];
    }
    if region == Region::Uncovered {
        return Vec::new();
    }
    let stream = Region::COVERED.iter().position(|&r| r == region).unwrap() as u64 + 100;
    let mut rng = rng_for(seed, stream);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let (m, nu) = match region {
            Region::D1 => (rng.gen_range(0.0..=0.5), rng.gen_range(-1.0..=1.0)),
            Region::D2 => {
                let m = rng.gen_range(0.5..=2.0);
                (m, rng.gen_range(d2_floor(m)..=1.0))
            }
            Region::D3 => (rng.gen_range(0.0..=0.5), rng.gen_range(-5.0..=-1.0)),
            Region::D4 => {
                let m = rng.gen_range(0.5..=5.0);
                let top = -2.0 / 3.0 * (m + 1.0);
                (m, rng.gen_range(top - 4.0..=top))
            }
            Region::D5 => (rng.gen_range(0.0..=2.0), rng.gen_range(1.0..=5.0)),
            Region::D6 => {
                let m: f64 = rng.gen_range(2.0..=4.0);
                let floor = (m * m + 8.0) / 12.0;
                (m, rng.gen_range(floor..=floor + 4.0))
            }
            Region::D7 => {
                let m = rng.gen_range(4.0..=8.0);
                let floor = 2.0 / 3.0 * (m - 1.0);
                (m, rng.gen_range(floor..=floor + 4.0))
            }
            Region::Point21 | Region::Uncovered => unreachable!(),
        };
        let mn = MuNu::new(sign * m, nu);
        if classify(mn) == region {
            out.push(mn);
        }
    }
    out
}

fn oracle_points(cfg: &HarnessConfig, per_region: usize) -> Vec<(Region, MuNu)> {
    Region::COVERED
        .iter()
        .flat_map(|&r| {
            region_samples(r, per_region, cfg.seed)
                .into_iter()
                .map(move |mn| (r, mn))
        })
        .collect()
}

fn region_code(r: Region) -> f64 {
    Region::COVERED.iter().position(|&x| x == r).unwrap() as f64
}

/// Brute-force maximum of `psi` against `Phi`: never above it by more than
/// 1e-6, never below it by more than 5e-3.
pub fn check_phi_oracle(cfg: &HarnessConfig) -> Vec<CheckReport> {
    let pts = oracle_points(cfg, cfg.region_points);
    let parts = cfg.mode.map(pts.len(), |i| {
        let (region, mn) = pts[i];
        let want = phi(mn).expect("sampled inside a covered region");
        let found = BodySearch::new(cfg.budget, cfg.seed)
            .with_mode(Mode::Sequential)
            .maximize(|t| psi(mn, t));
        let inputs = [("mu", mn.mu), ("nu", mn.nu), ("region_index", region_code(region))];
        let values = [("phi", want), ("oracle", found.value)];
        let mut below = Tracker::default();
        let mut above = Tracker::default();
        below.record(want - found.value, &inputs, &values);
        above.record(found.value - want, &inputs, &values);
        (below, above)
    });
    let (below, above): (Vec<_>, Vec<_>) = parts.into_iter().unzip();
    let desc = format!(
        "{} points in each of D1..D7 plus (2,1); budget {}",
        cfg.region_points, cfg.budget
    );
    vec![
        Tracker::merge(below).finish(
            "phi_oracle_sharp",
            format!("oracle >= Phi - 5e-3; {desc}"),
            SHARPNESS_TOL,
            Some(cfg.seed),
        ),
        Tracker::merge(above).finish(
            "phi_oracle_sound",
            format!("oracle <= Phi + 1e-6; {desc}"),
            ORACLE_SOUND_TOL,
            Some(cfg.seed),
        ),
    ]
}

/// Random admissible triples never push `psi` above `Phi`.
pub fn check_phi_soundness(cfg: &HarnessConfig) -> CheckReport {
    let pts = oracle_points(cfg, SOUNDNESS_POINTS);
    let chunks = crate::par::chunk_ranges(cfg.samples, 64);
    let parts = cfg.mode.map(chunks.len(), |c| {
        let mut rng = rng_for(cfg.seed ^ 0x50_u64, c as u64);
        let mut worst: Vec<(f64, Option<SchwarzTriple>)> = vec![(f64::NEG_INFINITY, None); pts.len()];
        for _ in chunks[c].clone() {
            let tr = random_triple(&mut rng);
            for (j, &(_, mn)) in pts.iter().enumerate() {
                let v = psi(mn, &tr) - phi(mn).expect("covered");
                if v > worst[j].0 {
                    worst[j] = (v, Some(tr));
                }
            }
        }
        let mut t = Tracker::default();
        for (j, (v, tr)) in worst.into_iter().enumerate() {
            if let Some(tr) = tr {
                let (region, mn) = pts[j];
                t.record(
                    v,
                    &[("mu", mn.mu), ("nu", mn.nu), ("region_index", region_code(region))],
                    &[("c1_abs", tr.c1().norm()), ("c2_abs", tr.c2().norm()), ("c3_abs", tr.c3().norm())],
                );
            }
        }
        t.evaluated = chunks[c].len() * pts.len();
        t
    });
    Tracker::merge(parts).finish(
        "phi_soundness",
        format!(
            "psi <= Phi + 1e-9; {} triples against {} points per region",
            cfg.samples, SOUNDNESS_POINTS
        ),
        PSI_SOUND_TOL,
        Some(cfg.seed),
    )
}
