//! Closed-form coefficient bounds, threshold curves and the auxiliary
//! starlikeness formulas.
//!
//! The function class is parametrized by `0 < alpha < 1` and
//! `0 < gamma <= 1`. All quantities here are explicit rational or algebraic
//! expressions in these two parameters; the piecewise bounds switch branch at
//! `gamma = (1 - alpha)^2 / (3 - alpha)` (for `a3`) and `gamma = gamma_nu`
//! (for `a4`), taking the left branch on equality.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const ALPHA_HYPOTHESIS: &str = "alpha must lie in (0,1)";
pub const GAMMA_HYPOTHESIS: &str = "gamma must lie in (0,1]";
pub const STARLIKE_ALPHA_HYPOTHESIS: &str = "alpha must lie in (0,2/pi)";

/// The class parameters `(alpha, gamma)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Params {
    alpha: f64,
    gamma: f64,
}

impl Params {
    pub fn new(alpha: f64, gamma: f64) -> Result<Self> {
        check_alpha(alpha)?;
        if !(gamma > 0.0 && gamma <= 1.0) {
            return Err(Error::Hypothesis(GAMMA_HYPOTHESIS));
        }
        Ok(Self { alpha, gamma })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::Hypothesis(ALPHA_HYPOTHESIS))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum A3Branch {
    Small,
    Large,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum A4Branch {
    Case1,
    Case2,
}

impl fmt::Display for A3Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl fmt::Display for A4Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Threshold curves in `gamma` as functions of `alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    /// `mu <= 1/2` iff `gamma <= gamma_half`.
    pub gamma_half: f64,
    /// `mu <= 2` iff `gamma <= gamma_2`.
    pub gamma_2: f64,
    /// `mu <= 4` iff `gamma <= gamma_4`.
    pub gamma_4: f64,
    /// `nu <= 1` iff `gamma <= gamma_nu`.
    pub gamma_nu: f64,
    /// Switch point of the `a3` bound.
    pub gamma_a3: f64,
}

/// Functional parameters `(mu, nu)` of `c3 + mu c1 c2 + nu c1^3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MuNu {
    pub mu: f64,
    pub nu: f64,
}

impl MuNu {
    pub fn new(mu: f64, nu: f64) -> Self {
        Self { mu, nu }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub a2_bound: f64,
    pub a3_bound: f64,
    pub a3_branch: A3Branch,
    pub a4_bound: f64,
    pub a4_branch: A4Branch,
    pub mu: f64,
    pub nu: f64,
}

pub fn bound_a2(p: Params) -> f64 {
    2.0 * p.gamma / (1.0 - p.alpha)
}

pub fn a3_threshold(alpha: f64) -> f64 {
    (1.0 - alpha).powi(2) / (3.0 - alpha)
}

/// Small branch `2 gamma / (2 - alpha)` (attained by `c2 = 1`).
pub fn a3_small(p: Params) -> f64 {
    2.0 * p.gamma / (2.0 - p.alpha)
}

/// Large branch `2 (3 - alpha) gamma^2 / ((1 - alpha)^2 (2 - alpha))`
/// (attained by `c1 = 1`).
pub fn a3_large(p: Params) -> f64 {
    let (a, g) = (p.alpha, p.gamma);
    2.0 * (3.0 - a) * g * g / ((1.0 - a).powi(2) * (2.0 - a))
}

pub fn bound_a3(p: Params) -> (f64, A3Branch) {
    if p.gamma <= a3_threshold(p.alpha) {
        (a3_small(p), A3Branch::Small)
    } else {
        (a3_large(p), A3Branch::Large)
    }
}

/// `2 gamma / (3 - alpha)`, the common prefactor of `a4`.
pub fn a4_prefactor(p: Params) -> f64 {
    2.0 * p.gamma / (3.0 - p.alpha)
}

pub fn bound_a4(p: Params) -> (f64, A4Branch) {
    if p.gamma <= gamma_nu(p.alpha) {
        (a4_prefactor(p), A4Branch::Case1)
    } else {
        (a4_prefactor(p) * mu_nu(p).nu, A4Branch::Case2)
    }
}

pub fn mu_of(alpha: f64, gamma: f64) -> f64 {
    2.0 * (5.0 - alpha) * gamma / ((1.0 - alpha) * (2.0 - alpha))
}

pub fn nu_of(alpha: f64, gamma: f64) -> f64 {
    let q = alpha * alpha - 6.0 * alpha + 17.0;
    1.0 / 3.0 + 2.0 / 3.0 * q * gamma * gamma / ((1.0 - alpha).powi(3) * (2.0 - alpha))
}

pub fn mu_nu(p: Params) -> MuNu {
    MuNu {
        mu: mu_of(p.alpha, p.gamma),
        nu: nu_of(p.alpha, p.gamma),
    }
}

pub fn report(p: Params) -> BoundReport {
    let (a3_bound, a3_branch) = bound_a3(p);
    let (a4_bound, a4_branch) = bound_a4(p);
    let mn = mu_nu(p);
    BoundReport {
        a2_bound: bound_a2(p),
        a3_bound,
        a3_branch,
        a4_bound,
        a4_branch,
        mu: mn.mu,
        nu: mn.nu,
    }
}

pub fn gamma_half(alpha: f64) -> f64 {
    (1.0 - alpha) * (2.0 - alpha) / (4.0 * (5.0 - alpha))
}

pub fn gamma_2(alpha: f64) -> f64 {
    (1.0 - alpha) * (2.0 - alpha) / (5.0 - alpha)
}

pub fn gamma_4(alpha: f64) -> f64 {
    2.0 * (1.0 - alpha) * (2.0 - alpha) / (5.0 - alpha)
}

pub fn gamma_nu(alpha: f64) -> f64 {
    let q = alpha * alpha - 6.0 * alpha + 17.0;
    ((1.0 - alpha).powi(3) * (2.0 - alpha) / q).sqrt()
}

pub fn thresholds(alpha: f64) -> Result<Thresholds> {
    check_alpha(alpha)?;
    Ok(Thresholds {
        gamma_half: gamma_half(alpha),
        gamma_2: gamma_2(alpha),
        gamma_4: gamma_4(alpha),
        gamma_nu: gamma_nu(alpha),
        gamma_a3: a3_threshold(alpha),
    })
}

/// The cubic whose root in `(0, 1)` is the crossover of `gamma_half` and
/// `gamma_nu`.
pub fn crossover_cubic(alpha: f64) -> f64 {
    ((5.0 * alpha - 56.0) * alpha + 177.0) * alpha - 122.0
}

/// Root of [`crossover_cubic`] in `(0, 1)` by bisection.
///
/// The cubic is `-122` at 0 and `4` at 1 and increasing on `[0, 1]`.
pub fn alpha_nu() -> f64 {
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if crossover_cubic(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn starlike_root(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 2.0 / PI) {
        return Err(Error::Hypothesis(STARLIKE_ALPHA_HYPOTHESIS));
    }
    Ok((2.0 / (PI * alpha) - 1.0).sqrt())
}

/// `(2/pi) arctan(s) - alpha s` with `s = sqrt(2/(pi alpha) - 1)`.
pub fn gamma_star(alpha: f64) -> Result<f64> {
    let s = starlike_root(alpha)?;
    Ok(2.0 / PI * s.atan() - alpha * s)
}

/// Order of strong starlikeness `(2/pi) arctan(s)`.
pub fn beta_star(alpha: f64) -> Result<f64> {
    let s = starlike_root(alpha)?;
    Ok(2.0 / PI * s.atan())
}

/// `gamma_star(alpha) - (1 - alpha)`, negative on `(0, 2/pi)`.
pub fn gamma_star_gap(alpha: f64) -> Result<f64> {
    Ok(gamma_star(alpha)? - (1.0 - alpha))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn p(a: f64, g: f64) -> Params {
        Params::new(a, g).unwrap()
    }

    #[test]
    fn params_validation() {
        assert_eq!(
            Params::new(1.2, 0.5),
            Err(Error::Hypothesis(ALPHA_HYPOTHESIS))
        );
        assert!(Params::new(0.0, 0.5).is_err());
        assert!(Params::new(1.0, 0.5).is_err());
        assert_eq!(
            Params::new(0.5, 0.0),
            Err(Error::Hypothesis(GAMMA_HYPOTHESIS))
        );
        assert!(Params::new(0.5, 1.0 + 1e-12).is_err());
        assert!(Params::new(f64::NAN, 0.5).is_err());
        assert!(Params::new(0.5, 1.0).is_ok());
        assert!(thresholds(1.0).is_err());
    }

    #[test]
    fn a2_examples() {
        assert_relative_eq!(bound_a2(p(1e-8, 1.0)), 2.0, epsilon = 1e-7);
        assert_eq!(bound_a2(p(0.5, 1.0)), 4.0);
        assert_eq!(bound_a2(p(0.5, 0.5)), 2.0);
    }

    #[test]
    fn a3_examples() {
        let (v, b) = bound_a3(p(0.5, 0.05));
        assert_relative_eq!(v, 1.0 / 15.0, epsilon = 1e-15);
        assert_eq!(b, A3Branch::Small);
        let (v, b) = bound_a3(p(0.5, 1.0));
        assert_relative_eq!(v, 40.0 / 3.0, epsilon = 1e-12);
        assert_eq!(b, A3Branch::Large);
        assert_relative_eq!(a3_threshold(1e-8), 1.0 / 3.0, epsilon = 1e-8);
    }

    #[test]
    fn a4_examples() {
        let (v, b) = bound_a4(p(1e-8, 1.0));
        assert_relative_eq!(v, 4.0, epsilon = 1e-6);
        assert_eq!(b, A4Branch::Case2);
        let (v, b) = bound_a4(p(0.5, 1.0));
        assert_relative_eq!(v, 40.8, epsilon = 1e-12);
        assert_eq!(b, A4Branch::Case2);
        assert_relative_eq!(gamma_nu(1e-8), (2.0_f64 / 17.0).sqrt(), epsilon = 1e-8);
        assert!((gamma_nu(1e-8) - 0.342997).abs() < 1e-6);
    }

    #[test]
    fn mu_nu_examples() {
        let mn = mu_nu(p(0.5, 1.0));
        assert_relative_eq!(mn.mu, 12.0, epsilon = 1e-12);
        assert_relative_eq!(mn.nu, 51.0, epsilon = 1e-12);
        for a in [0.01, 0.3, 0.5, 0.9, 0.99] {
            assert_relative_eq!(nu_of(a, gamma_nu(a)), 1.0, epsilon = 1e-12);
            assert_relative_eq!(mu_of(a, gamma_2(a)), 2.0, epsilon = 1e-12);
        }
    }

    /// Bisection on a monotone function, independent of the closed forms.
    fn solve_increasing(f: impl Fn(f64) -> f64, target: f64) -> f64 {
        let (mut lo, mut hi) = (0.0, 1.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid) < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn thresholds_examples() {
        let t = thresholds(0.5).unwrap();
        assert_relative_eq!(t.gamma_nu, (0.1875_f64 / 14.25).sqrt(), epsilon = 1e-15);
        assert!((t.gamma_nu - 0.114708).abs() < 1e-6);
        assert_relative_eq!(t.gamma_2, 1.0 / 6.0, epsilon = 1e-15);
        assert_relative_eq!(t.gamma_a3, 0.1, epsilon = 1e-15);

        let by_bisection = solve_increasing(|g| nu_of(0.5, g), 1.0);
        assert!((t.gamma_nu - by_bisection).abs() < 1e-12);
        let by_bisection = solve_increasing(|g| mu_of(0.5, g), 2.0);
        assert!((t.gamma_2 - by_bisection).abs() < 1e-12);
    }

    #[test]
    fn alpha_nu_root() {
        let r = alpha_nu();
        assert!((r - 0.951226).abs() < 1e-5, "{r}");
        assert!(crossover_cubic(r).abs() < 1e-8);
        assert!((gamma_half(r) - gamma_nu(r)).abs() < 1e-8);
    }

    #[test]
    fn gamma_star_examples() {
        let a = 1.0 / PI;
        assert_relative_eq!(gamma_star(a).unwrap(), 0.5 - 1.0 / PI, epsilon = 1e-15);
        assert!((gamma_star(a).unwrap() - 0.181690).abs() < 1e-6);
        assert_relative_eq!(beta_star(a).unwrap(), 0.5, epsilon = 1e-15);
        assert_relative_eq!(gamma_star_gap(a).unwrap(), -0.5, epsilon = 1e-12);
        assert_eq!(
            gamma_star(2.0 / PI),
            Err(Error::Hypothesis(STARLIKE_ALPHA_HYPOTHESIS))
        );
        assert!(beta_star(0.7).is_err());
    }

    #[test]
    fn branches_continuous_at_switch_points() {
        for a in [0.05, 0.3, 0.5, 0.8, 0.97] {
            let g = a3_threshold(a);
            let (lo, _) = bound_a3(p(a, g * (1.0 - 1e-12)));
            let (hi, bh) = bound_a3(p(a, g * (1.0 + 1e-12)));
            assert_eq!(bh, A3Branch::Large);
            assert!((lo - hi).abs() < 1e-9);
            assert_eq!(bound_a3(p(a, g)).1, A3Branch::Small);

            let g = gamma_nu(a);
            let (lo, _) = bound_a4(p(a, g * (1.0 - 1e-12)));
            let (hi, bh) = bound_a4(p(a, g * (1.0 + 1e-12)));
            assert_eq!(bh, A4Branch::Case2);
            assert!((lo - hi).abs() < 1e-9);
            assert_eq!(bound_a4(p(a, g)).1, A4Branch::Case1);
        }
    }

    #[test]
    fn gamma_one_formulas() {
        for a in [0.1, 0.5, 0.9] {
            let r = report(p(a, 1.0));
            let q = a * a - 6.0 * a + 17.0;
            assert_relative_eq!(r.a2_bound, 2.0 / (1.0 - a), epsilon = 1e-12);
            assert_relative_eq!(
                r.a3_bound,
                2.0 * (3.0 - a) / ((1.0 - a).powi(2) * (2.0 - a)),
                max_relative = 1e-12
            );
            assert_relative_eq!(
                r.a4_bound,
                2.0 / (3.0 - a) * (1.0 / 3.0 + 2.0 / 3.0 * q / ((1.0 - a).powi(3) * (2.0 - a))),
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn near_one_alpha_is_finite() {
        let r = report(p(1.0 - 1e-6, 1.0));
        assert!(r.a4_bound.is_finite() && r.a4_bound > 0.0);
    }
}
