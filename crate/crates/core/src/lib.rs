//! Sharp bounds for the initial coefficients `a2, a3, a4` of normalized
//! analytic functions satisfying
//!
//! ```text
//! |arg[(z/f(z))^{1+alpha} f'(z)]| < gamma pi / 2,   0 < alpha < 1, 0 < gamma <= 1,
//! ```
//!
//! together with the machinery used to check them: truncated power series,
//! the bound `Phi(mu, nu)` of the third-coefficient functional over Schwarz
//! functions with a brute-force oracle, the extremal functions, and an
//! executable verification harness.

pub mod bounds;
pub mod error;
pub mod extremal;
pub mod harness;
pub mod par;
pub mod powerseries;
pub mod prokhorov;

pub use num_complex;

pub use bounds::{BoundReport, MuNu, Params, Thresholds};
pub use error::{Error, Result};
pub use par::Mode;
pub use powerseries::Series;
pub use prokhorov::{Region, SchwarzTriple};
