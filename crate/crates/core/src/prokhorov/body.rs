//! The coefficient body of Schwarz functions truncated at degree three.
//!
//! For `w(z) = c1 z + c2 z^2 + c3 z^3 + ...` analytic in the disk with
//! `|w| < 1`, the reachable triples are exactly those with
//!
//! ```text
//! |c1| <= 1,   |c2| <= 1 - |c1|^2,
//! |c3 (1 - |c1|^2) + conj(c1) c2^2| <= (1 - |c1|^2)^2 - |c2|^2.
//! ```
//!
//! The Schur-parameter chart `(z1, z2, z3)` in the closed tridisk maps onto
//! this body.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Boundary slack for [`body_contains`].
pub const BODY_TOL: f64 = 1e-12;

/// First three Taylor coefficients of a Schwarz function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchwarzTriple {
    c1: Complex64,
    c2: Complex64,
    c3: Complex64,
}

impl SchwarzTriple {
    pub fn new(c1: Complex64, c2: Complex64, c3: Complex64) -> Result<Self> {
        if body_contains(c1, c2, c3) {
            Ok(Self { c1, c2, c3 })
        } else {
            Err(Error::Inadmissible)
        }
    }

    pub fn real(c1: f64, c2: f64, c3: f64) -> Result<Self> {
        Self::new(c1.into(), c2.into(), c3.into())
    }

    /// `w(z) = z^i`, for `i` in `1..=3`.
    pub fn unit(i: usize) -> Result<Self> {
        match i {
            1 => Self::real(1.0, 0.0, 0.0),
            2 => Self::real(0.0, 1.0, 0.0),
            3 => Self::real(0.0, 0.0, 1.0),
            _ => Err(Error::ExtremalIndex(i)),
        }
    }

    pub fn c1(&self) -> Complex64 {
        self.c1
    }

    pub fn c2(&self) -> Complex64 {
        self.c2
    }

    pub fn c3(&self) -> Complex64 {
        self.c3
    }

    /// Chart image without range checks on the parameters.
    pub(crate) fn from_chart(z: &[Complex64; 3]) -> Self {
        let s1 = 1.0 - z[0].norm_sqr();
        let s2 = 1.0 - z[1].norm_sqr();
        Self {
            c1: z[0],
            c2: z[1] * s1,
            c3: (z[2] * s2 - z[0].conj() * z[1] * z[1]) * s1,
        }
    }
}

/// Admissibility of `(c1, c2, c3)` with boundary slack [`BODY_TOL`].
pub fn body_contains(c1: Complex64, c2: Complex64, c3: Complex64) -> bool {
    let all_finite = [c1, c2, c3].iter().all(|c| c.re.is_finite() && c.im.is_finite());
    if !all_finite {
        return false;
    }
    let s = 1.0 - c1.norm_sqr();
    if c1.norm() > 1.0 + BODY_TOL || c2.norm() > s + BODY_TOL {
        return false;
    }
    let lhs = (c3 * s + c1.conj() * c2 * c2).norm();
    let rhs = s * s - c2.norm_sqr();
    lhs <= rhs + BODY_TOL
}

/// Maps Schur parameters in the closed unit tridisk onto the body.
pub fn body_sample(z1: Complex64, z2: Complex64, z3: Complex64) -> Result<SchwarzTriple> {
    let z = [z1, z2, z3];
    for (index, w) in z.iter().enumerate() {
        let modulus = w.norm();
        if !(modulus <= 1.0 + BODY_TOL) {
            return Err(Error::OutsideDisk {
                index: index + 1,
                modulus,
            });
        }
    }
    Ok(SchwarzTriple::from_chart(&z))
}

/// Draws a chart point; a quarter of the moduli land exactly on the circle,
/// where the extremals of the coefficient functionals live.
pub fn random_chart_point<R: Rng + ?Sized>(rng: &mut R) -> [Complex64; 3] {
    std::array::from_fn(|_| {
        let r = if rng.gen_bool(0.25) {
            1.0
        } else {
            rng.gen::<f64>().sqrt()
        };
        Complex64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU))
    })
}

pub fn random_triple<R: Rng + ?Sized>(rng: &mut R) -> SchwarzTriple {
    SchwarzTriple::from_chart(&random_chart_point(rng))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn contains_examples() {
        assert!(body_contains(c(1.0), c(0.0), c(0.0)));
        // third condition reads 0.28125 <= 0
        assert!(!body_contains(c(0.5), c(0.75), c(0.0)));
        assert!(body_contains(c(0.5), c(0.75), c(-0.375)));
        assert!(!body_contains(c(1.1), c(0.0), c(0.0)));
        assert!(!body_contains(c(0.0), c(0.0), c(1.0 + 1e-9)));
        assert!(!body_contains(c(f64::NAN), c(0.0), c(0.0)));
    }

    #[test]
    fn sample_examples() {
        let t = body_sample(c(0.0), c(0.0), c(1.0)).unwrap();
        assert_eq!((t.c1(), t.c2(), t.c3()), (c(0.0), c(0.0), c(1.0)));

        let t = body_sample(c(1.0), Complex64::new(0.3, -0.8), c(-0.9)).unwrap();
        assert_eq!(t.c1(), c(1.0));
        assert!(t.c2().norm() == 0.0 && t.c3().norm() == 0.0);

        let t = body_sample(c(0.5), c(1.0), c(0.0)).unwrap();
        assert_eq!((t.c1(), t.c2(), t.c3()), (c(0.5), c(0.75), c(-0.375)));
    }

    #[test]
    fn sample_rejects_outside_disk() {
        assert_eq!(
            body_sample(c(0.0), c(1.5), c(0.0)),
            Err(Error::OutsideDisk {
                index: 2,
                modulus: 1.5
            })
        );
    }

    #[test]
    fn triple_constructor_validates() {
        assert_eq!(SchwarzTriple::real(0.5, 0.75, 0.0), Err(Error::Inadmissible));
        assert!(SchwarzTriple::unit(4).is_err());
        assert_eq!(SchwarzTriple::unit(2).unwrap().c2(), c(1.0));
    }
}
