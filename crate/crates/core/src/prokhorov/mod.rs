//! Sharp bound `Phi(mu, nu)` of `|c3 + mu c1 c2 + nu c1^3|` over Schwarz
//! functions, on the regions `D1..D7` and the point `(2, 1)`.
//!
//! ```text
//! D1: |mu| <= 1/2,        -1 <= nu <= 1
//! D2: 1/2 <= |mu| <= 2,   (4/27)(|mu|+1)^3 - (|mu|+1) <= nu <= 1
//! D3: |mu| <= 1/2,        nu <= -1
//! D4: |mu| >= 1/2,        nu <= -(2/3)(|mu|+1)
//! D5: |mu| <= 2,          nu >= 1
//! D6: 2 <= |mu| <= 4,     nu >= (mu^2 + 8)/12
//! D7: |mu| >= 4,          nu >= (2/3)(|mu|-1)
//! ```
//!
//! `Phi = 1` on `D1`, `D2` and `(2, 1)`; `Phi = |nu|` on `D3..D7`. Elsewhere
//! the value is not provided and classification yields `Uncovered`.

mod body;
mod search;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use self::body::{
    body_contains, body_sample, random_chart_point, random_triple, SchwarzTriple, BODY_TOL,
};
pub use self::search::{BodySearch, SearchResult, MIN_BUDGET};
pub use crate::bounds::MuNu;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    D1,
    D2,
    D3,
    D4,
    D5,
    D6,
    D7,
    Point21,
    Uncovered,
}

impl Region {
    pub const COVERED: [Region; 8] = [
        Region::D1,
        Region::D2,
        Region::D3,
        Region::D4,
        Region::D5,
        Region::D6,
        Region::D7,
        Region::Point21,
    ];

    /// True where `Phi = 1`.
    pub fn is_unit(self) -> bool {
        matches!(self, Region::D1 | Region::D2 | Region::Point21)
    }

    /// True where `Phi = |nu|`.
    pub fn is_abs_nu(self) -> bool {
        matches!(
            self,
            Region::D3 | Region::D4 | Region::D5 | Region::D6 | Region::D7
        )
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Lower boundary of `D2` as a function of `|mu|`.
pub fn d2_floor(abs_mu: f64) -> f64 {
    let s = abs_mu + 1.0;
    4.0 / 27.0 * s * s * s - s
}

/// Membership in a single region, boundaries inclusive.
pub fn in_region(region: Region, mn: MuNu) -> bool {
    let (m, nu) = (mn.mu.abs(), mn.nu);
    match region {
        Region::D1 => m <= 0.5 && (-1.0..=1.0).contains(&nu),
        Region::D2 => (0.5..=2.0).contains(&m) && d2_floor(m) <= nu && nu <= 1.0,
        Region::D3 => m <= 0.5 && nu <= -1.0,
        Region::D4 => m >= 0.5 && nu <= -2.0 / 3.0 * (m + 1.0),
        Region::D5 => m <= 2.0 && nu >= 1.0,
        Region::D6 => (2.0..=4.0).contains(&m) && nu >= (mn.mu * mn.mu + 8.0) / 12.0,
        Region::D7 => m >= 4.0 && nu >= 2.0 / 3.0 * (m - 1.0),
        Region::Point21 => mn.mu == 2.0 && nu == 1.0,
        Region::Uncovered => !Region::COVERED.iter().any(|&r| in_region(r, mn)),
    }
}

const PRECEDENCE: [Region; 8] = [
    Region::Point21,
    Region::D1,
    Region::D2,
    Region::D3,
    Region::D4,
    Region::D5,
    Region::D6,
    Region::D7,
];

/// First matching region in the order `Point21, D1, D2, D3, .., D7`.
pub fn classify(mn: MuNu) -> Region {
    PRECEDENCE
        .iter()
        .copied()
        .find(|&r| in_region(r, mn))
        .unwrap_or(Region::Uncovered)
}

/// `Phi(mu, nu)`, or `None` outside the covered regions.
pub fn phi(mn: MuNu) -> Option<f64> {
    let r = classify(mn);
    if r.is_unit() {
        Some(1.0)
    } else if r.is_abs_nu() {
        Some(mn.nu.abs())
    } else {
        None
    }
}

/// `|c3 + mu c1 c2 + nu c1^3|`.
pub fn psi(mn: MuNu, t: &SchwarzTriple) -> f64 {
    let c1 = t.c1();
    (t.c3() + mn.mu * c1 * t.c2() + mn.nu * c1 * c1 * c1).norm()
}

/// Brute-force lower bound on `max psi` over the body.
pub fn phi_oracle(mn: MuNu, budget: usize, seed: u64) -> f64 {
    phi_search(mn, BodySearch::new(budget, seed)).value
}

pub fn phi_search(mn: MuNu, search: BodySearch) -> SearchResult {
    search.maximize(|t| psi(mn, t))
}
