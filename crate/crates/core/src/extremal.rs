//! Taylor coefficients of `f(z) = z + a2 z^2 + ...` from the defining
//! identity
//!
//! ```text
//! (f(z)/z)^{-(1+alpha)} f'(z) = ((1 + w(z)) / (1 - w(z)))^gamma
//! ```
//!
//! both in closed form (through `a4`) and by solving the identity order by
//! order in the truncated series ring.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bounds::{self, Params};
use crate::error::{Error, Result};
use crate::powerseries::Series;
use crate::prokhorov::SchwarzTriple;

pub const DEFAULT_ORDER: usize = 8;
const MIN_ORDER: usize = 4;

/// `a[1..=N]` with `a[1] = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffVector {
    a: Vec<Complex64>,
}

impl CoeffVector {
    /// Highest coefficient index `N`.
    pub fn order(&self) -> usize {
        self.a.len()
    }

    /// `a_k` for `1 <= k <= N`.
    pub fn get(&self, k: usize) -> Complex64 {
        assert!(k >= 1 && k <= self.order(), "coefficient index {k} out of range");
        self.a[k - 1]
    }

    /// `(a2, a3, a4)`.
    pub fn leading(&self) -> [Complex64; 3] {
        [self.get(2), self.get(3), self.get(4)]
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        self.a.iter().enumerate().map(|(i, &c)| (i + 1, c))
    }
}

/// `(a2, a3, a4)` from `(c1, c2, c3)`.
pub fn coeffs_closed(p: Params, t: &SchwarzTriple) -> [Complex64; 3] {
    let (a, g) = (p.alpha(), p.gamma());
    let (c1, c2, c3) = (t.c1(), t.c2(), t.c3());
    let mn = bounds::mu_nu(p);
    let a2 = c1 * (2.0 * g / (1.0 - a));
    let a3 = c2 * (2.0 * g / (2.0 - a))
        + c1 * c1 * (2.0 * (3.0 - a) * g * g / ((1.0 - a).powi(2) * (2.0 - a)));
    let a4 = (c3 + mn.mu * c1 * c2 + mn.nu * c1 * c1 * c1) * bounds::a4_prefactor(p);
    [a2, a3, a4]
}

/// `((1 + w) / (1 - w))^gamma` as a truncated series.
pub fn subordinate_series(gamma: f64, omega: &Series) -> Result<Series> {
    let n = omega.order();
    let one = Series::one(n);
    let num = one.add_scale(omega, 1.0.into())?;
    let den = one.add_scale(omega, (-1.0).into())?.pow_real(-1.0)?;
    num.mul(&den)?.pow_real(gamma)
}

/// Solves `g + z g' = g^{1+alpha} R` for `g = f/z`, one order at a time.
///
/// With `P = g^{1+alpha}` the `n`-th coefficient of `P R` is
/// `(1+alpha) b_n + S_n`, where `S_n` only involves `b_1..b_{n-1}`, so
/// `(n - alpha) b_n = S_n`.
pub fn coeffs_series(p: Params, omega: &Series, order: usize) -> Result<CoeffVector> {
    if order < MIN_ORDER {
        return Err(Error::OrderTooLow {
            min: MIN_ORDER,
            got: order,
        });
    }
    let w0 = omega.coeff(0);
    if w0 != Complex64::new(0.0, 0.0) {
        return Err(Error::ConstantTerm {
            expected: 0.0,
            found: w0.to_string(),
        });
    }
    let m = order - 1;
    let r = subordinate_series(p.gamma(), &omega.with_order(m))?;
    let r = r.coeffs();
    let e = 1.0 + p.alpha();

    let zero = Complex64::new(0.0, 0.0);
    let mut b = vec![zero; m + 1];
    let mut pw = vec![zero; m + 1];
    b[0] = 1.0.into();
    pw[0] = 1.0.into();
    for n in 1..=m {
        let mut partial = zero;
        for k in 1..n {
            partial += b[k] * pw[n - k] * (e * k as f64 - (n - k) as f64);
        }
        partial /= n as f64;
        let mut s = partial;
        for j in 0..n {
            s += pw[j] * r[n - j];
        }
        b[n] = s / (n as f64 - p.alpha());
        pw[n] = partial + b[n] * e;
    }
    Ok(CoeffVector { a: b })
}

/// Coefficients of `f_i`, the member with `w(z) = z^i`.
pub fn extremal_function(p: Params, i: usize, order: usize) -> Result<CoeffVector> {
    if !(1..=3).contains(&i) {
        return Err(Error::ExtremalIndex(i));
    }
    let omega = Series::monomial(order, i, 1.0.into());
    coeffs_series(p, &omega, order)
}

/// Which bound branches `f_i` attains, as `(coefficient index, label)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Attainment {
    pub coefficient: usize,
    pub branch: String,
    pub value: f64,
    pub bound: f64,
}

/// Bounds from the closed-form module that `coeffs` reaches within `tol`.
pub fn attained(p: Params, coeffs: &CoeffVector, tol: f64) -> Vec<Attainment> {
    let (a3, a3b) = bounds::bound_a3(p);
    let (a4, a4b) = bounds::bound_a4(p);
    let targets = [
        (2, "a2".to_string(), bounds::bound_a2(p)),
        (3, a3b.to_string(), a3),
        (4, a4b.to_string(), a4),
    ];
    targets
        .into_iter()
        .filter_map(|(k, branch, bound)| {
            let value = coeffs.get(k).norm();
            ((value - bound).abs() <= tol).then_some(Attainment {
                coefficient: k,
                branch,
                value,
                bound,
            })
        })
        .collect()
}
