//! Executable verification of the bound inequalities and their proof steps.
//!
//! Each check produces a [`CheckReport`]: the largest signed violation over
//! its grid or sample (a check passes when that value does not exceed the
//! declared tolerance) and the five worst witnesses. Grid loops run through
//! [`Mode::map`] and merge in index order, so reports are reproducible
//! bit for bit.

mod campaign;
mod proof;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::par::Mode;

pub use campaign::{
    campaign_domination_sharpness, check_domination, check_extremal_attainment,
    check_phi_oracle, check_phi_soundness, check_series_equivalence, check_sharpness,
    region_samples,
};
pub use proof::{
    check_alpha_nu, check_case1_l1_r1, check_case2_inequalities, check_continuity,
    check_equivalences, check_limits, check_region_coverage, check_remark, check_thresholds,
    case1_l1_ceiling, case1_mu_ceiling, case2_discriminant, case2_discriminant_from_trinomial,
    case2_d6_lhs,
};

const WITNESSES: usize = 5;

/// Margin kept from the open ends of the parameter intervals.
pub const GRID_MARGIN: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub violation: f64,
    pub inputs: BTreeMap<String, f64>,
    pub values: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub description: String,
    pub tolerance: f64,
    pub worst_violation: f64,
    pub pass: bool,
    pub seed: Option<u64>,
    pub evaluated: usize,
    pub witnesses: Vec<Witness>,
}

impl CheckReport {
    pub fn summary_line(&self) -> String {
        format!(
            "{} {:<36} worst={:+.6e} tol={:.1e} n={} [{}]",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.worst_violation,
            self.tolerance,
            self.evaluated,
            self.description
        )
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.summary_line())
    }
}

/// Keeps the worst few violations seen so far.
#[derive(Debug, Clone, Default)]
pub(crate) struct Tracker {
    worst: Vec<Witness>,
    evaluated: usize,
}

impl Tracker {
    fn admits(&self, violation: f64) -> bool {
        self.worst.len() < WITNESSES
            || self
                .worst
                .last()
                .is_some_and(|w| violation.total_cmp(&w.violation).is_gt())
    }

    pub(crate) fn record(&mut self, violation: f64, inputs: &[(&str, f64)], values: &[(&str, f64)]) {
        self.evaluated += 1;
        // NaN must surface as the worst case
        let violation = if violation.is_nan() { f64::INFINITY } else { violation };
        if !self.admits(violation) {
            return;
        }
        let to_map = |kv: &[(&str, f64)]| kv.iter().map(|&(k, v)| (k.to_string(), v)).collect();
        let w = Witness {
            violation,
            inputs: to_map(inputs),
            values: to_map(values),
        };
        let pos = self
            .worst
            .iter()
            .position(|x| violation.total_cmp(&x.violation).is_gt())
            .unwrap_or(self.worst.len());
        self.worst.insert(pos, w);
        self.worst.truncate(WITNESSES);
    }

    /// Ordered merge; ties keep the earlier tracker's witness first.
    pub(crate) fn merge(parts: impl IntoIterator<Item = Tracker>) -> Tracker {
        let mut out = Tracker::default();
        for part in parts {
            out.evaluated += part.evaluated;
            for w in part.worst {
                let pos = out
                    .worst
                    .iter()
                    .position(|x| w.violation.total_cmp(&x.violation).is_gt())
                    .unwrap_or(out.worst.len());
                out.worst.insert(pos, w);
            }
            out.worst.truncate(WITNESSES);
        }
        out
    }

    pub(crate) fn finish(
        self,
        name: &str,
        description: String,
        tolerance: f64,
        seed: Option<u64>,
    ) -> CheckReport {
        let worst_violation = self.worst.first().map_or(f64::INFINITY, |w| w.violation);
        CheckReport {
            name: name.to_string(),
            description,
            tolerance,
            worst_violation,
            pass: worst_violation <= tolerance,
            seed,
            evaluated: self.evaluated,
            witnesses: self.worst,
        }
    }
}

/// `n` evenly spaced points from `lo` to `hi` inclusive (`lo` alone if `n == 1`).
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// Grid sizes, sample counts and seed for a verification run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarnessConfig {
    pub alpha_points: usize,
    pub gamma_points: usize,
    /// Monte Carlo triples per parameter point.
    pub samples: usize,
    /// Side of the `(alpha, gamma)` grid for the domination and attainment campaigns.
    pub campaign_side: usize,
    /// Side of the grid for chart optimization against each bound.
    pub sharpness_side: usize,
    /// Evaluation budget for each chart optimization.
    pub budget: usize,
    /// `(mu, nu)` points per region for the oracle comparison.
    pub region_points: usize,
    pub series_draws: usize,
    pub seed: u64,
    pub mode: Mode,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        Self {
            alpha_points: 1000,
            gamma_points: 1000,
            samples: 100_000,
            campaign_side: 20,
            sharpness_side: 5,
            budget: 100_000,
            region_points: 20,
            series_draws: 1000,
            seed: 7,
            mode: Mode::default(),
        }
    }
}

impl HarnessConfig {
    pub fn alpha_grid(&self) -> Vec<f64> {
        linspace(GRID_MARGIN, 1.0 - GRID_MARGIN, self.alpha_points)
    }

    pub fn gamma_grid(&self) -> Vec<f64> {
        linspace(GRID_MARGIN, 1.0, self.gamma_points)
    }

    /// Cell-centred `alpha` values and right-closed `gamma` values for the
    /// campaigns: `alpha = (i + 1/2)/n`, `gamma = (j + 1)/n`.
    pub fn campaign_grid(&self, side: usize) -> Vec<(f64, f64)> {
        let n = side.max(1) as f64;
        (0..side)
            .flat_map(|i| (0..side).map(move |j| ((i as f64 + 0.5) / n, (j as f64 + 1.0) / n)))
            .collect()
    }
}

/// Named groups of checks selectable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Case1,
    Case2,
    Equivalences,
    Thresholds,
    Waypoints,
    Remark,
    Continuity,
    Coverage,
    Series,
    Domination,
    Sharpness,
    Phi,
}

impl Suite {
    pub const NAMES: [&'static str; 13] = [
        "all",
        "case1",
        "case2",
        "equivalences",
        "thresholds",
        "waypoints",
        "remark",
        "continuity",
        "coverage",
        "series",
        "domination",
        "sharpness",
        "phi",
    ];

    const PARTS: [Suite; 12] = [
        Suite::Case1,
        Suite::Case2,
        Suite::Equivalences,
        Suite::Thresholds,
        Suite::Waypoints,
        Suite::Remark,
        Suite::Continuity,
        Suite::Coverage,
        Suite::Series,
        Suite::Domination,
        Suite::Sharpness,
        Suite::Phi,
    ];

    pub fn run(self, cfg: &HarnessConfig) -> Vec<CheckReport> {
        match self {
            Suite::All => Suite::PARTS.iter().flat_map(|s| s.run(cfg)).collect(),
            Suite::Case1 => check_case1_l1_r1(cfg),
            Suite::Case2 => check_case2_inequalities(cfg),
            Suite::Equivalences => check_equivalences(cfg),
            Suite::Thresholds => check_thresholds(cfg),
            Suite::Waypoints => {
                let mut v = check_alpha_nu();
                v.extend(check_limits());
                v
            }
            Suite::Remark => check_remark(cfg),
            Suite::Continuity => vec![check_continuity()],
            Suite::Coverage => vec![check_region_coverage(cfg)],
            Suite::Series => vec![check_series_equivalence(cfg)],
            Suite::Domination => vec![check_domination(cfg)],
            Suite::Sharpness => vec![check_sharpness(cfg), check_extremal_attainment(cfg)],
            Suite::Phi => {
                let mut v = check_phi_oracle(cfg);
                v.push(check_phi_soundness(cfg));
                v
            }
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let idx = Suite::NAMES
            .iter()
            .position(|n| n.eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown suite '{s}'; expected one of {}", Suite::NAMES.join(", ")))?;
        Ok(if idx == 0 { Suite::All } else { Suite::PARTS[idx - 1] })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx = match self {
            Suite::All => 0,
            s => 1 + Suite::PARTS.iter().position(|p| p == s).unwrap(),
        };
        f.write_str(Suite::NAMES[idx])
    }
}

/// A complete verification run as written to disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyDocument {
    pub suite: String,
    pub seed: u64,
    pub pass: bool,
    pub checks: Vec<CheckReport>,
}

pub fn verify(suite: Suite, cfg: &HarnessConfig) -> VerifyDocument {
    let checks = suite.run(cfg);
    VerifyDocument {
        suite: suite.to_string(),
        seed: cfg.seed,
        pass: checks.iter().all(|c| c.pass),
        checks,
    }
}
