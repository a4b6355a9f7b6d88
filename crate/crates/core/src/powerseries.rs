//! Truncated power series with complex coefficients.
//!
//! A [`Series`] of order `N` stores `c[0..=N]` and represents the class of
//! `c[0] + c[1] z + ... + c[N] z^N` modulo `z^{N+1}`. Binary operations
//! require equal orders; there is no implicit promotion.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    coeffs: Vec<Complex64>,
}

impl Series {
    /// Builds a series of the given order from leading coefficients; missing
    /// coefficients are zero and extra ones are truncated.
    pub fn new<I>(order: usize, coeffs: I) -> Self
    where
        I: IntoIterator<Item = Complex64>,
    {
        let mut c: Vec<Complex64> = coeffs.into_iter().take(order + 1).collect();
        c.resize(order + 1, Complex64::new(0.0, 0.0));
        Self { coeffs: c }
    }

    pub fn from_real(order: usize, coeffs: &[f64]) -> Self {
        Self::new(order, coeffs.iter().map(|&x| Complex64::new(x, 0.0)))
    }

    pub fn zero(order: usize) -> Self {
        Self::new(order, std::iter::empty())
    }

    pub fn constant(order: usize, value: Complex64) -> Self {
        Self::new(order, std::iter::once(value))
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, Complex64::new(1.0, 0.0))
    }

    /// The identity series `z`.
    pub fn var(order: usize) -> Self {
        Self::monomial(order, 1, Complex64::new(1.0, 0.0))
    }

    /// `value * z^power`, which is zero when `power > order`.
    pub fn monomial(order: usize, power: usize, value: Complex64) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = value;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    /// Re-truncates or zero-pads to a new order.
    pub fn with_order(&self, order: usize) -> Self {
        Self::new(order, self.coeffs.iter().copied())
    }

    fn check_order(&self, other: &Series) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Series) -> Series {
        let n = self.order();
        let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (j, &b) in other.coeffs[..=n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Series { coeffs: out }
    }

    /// `self + scale * other`, coefficientwise.
    pub fn add_scale(&self, other: &Series, scale: Complex64) -> Result<Series> {
        self.check_order(other)?;
        Ok(Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| a + scale * b)
                .collect(),
        })
    }

    pub fn scale(&self, factor: Complex64) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|&c| c * factor).collect(),
        }
    }

    /// Binomial series `(1 + u)^e` where `self = 1 + u`.
    ///
    /// Solves `a P' = e a' P` coefficientwise; with `a_0 = 1` this gives
    /// `n P_n = sum_{k=1}^{n} (e k - n + k) a_k P_{n-k}`.
    pub fn pow_real(&self, e: f64) -> Result<Series> {
        let c0 = self.coeffs[0];
        if c0 != Complex64::new(1.0, 0.0) {
            return Err(Error::ConstantTerm {
                expected: 1.0,
                found: c0.to_string(),
            });
        }
        let n = self.order();
        let a = &self.coeffs;
        let mut p = vec![Complex64::new(0.0, 0.0); n + 1];
        p[0] = Complex64::new(1.0, 0.0);
        for m in 1..=n {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 1..=m {
                let w = e * k as f64 - (m - k) as f64;
                acc += a[k] * p[m - k] * w;
            }
            p[m] = acc / m as f64;
        }
        Ok(Series { coeffs: p })
    }

    /// `outer(inner(z))` by Horner's scheme in the truncated ring.
    pub fn compose(outer: &Series, inner: &Series) -> Result<Series> {
        outer.check_order(inner)?;
        let c0 = inner.coeffs[0];
        if c0 != Complex64::new(0.0, 0.0) {
            return Err(Error::ConstantTerm {
                expected: 0.0,
                found: c0.to_string(),
            });
        }
        let n = outer.order();
        let mut acc = Series::constant(n, outer.coeffs[n]);
        for k in (0..n).rev() {
            acc = acc.mul_unchecked(inner);
            acc.coeffs[0] += outer.coeffs[k];
        }
        Ok(acc)
    }

    /// Largest coefficientwise distance to another series of equal order.
    pub fn max_abs_diff(&self, other: &Series) -> Result<f64> {
        self.check_order(other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})z^{k}")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}
