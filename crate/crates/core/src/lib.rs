//! Zeros of the Macdonald function `K_ν` (modified Bessel function of the
//! second kind) for real order `ν ≥ 3/2`.
//!
//! The zeros are obtained as roots of explicit real algebraic equations whose
//! coefficients come from the large-argument expansion of `K_{ν+1}/K_ν` and
//! from the signed moments `cos(πν)∫₀^∞ y^{k-1}/G_ν(y) dy`. Every root is then
//! polished by Newton's method on `K_ν` itself, evaluated independently in the
//! complex plane (including the analytic continuation across the cut).
//!
//! Module map:
//!
//! * [`bessel`]: `I_ν`, `K_ν`, derivatives, Hankel symbols, continuation.
//! * [`special`]: `G_ν`, the special points `x_n` and their identities.
//! * [`moments`]: the signed moment integrals feeding the recurrences.
//! * [`coefficients`]: `a_k`, `α_m`, half-odd polynomials, limit families.
//! * [`reference`]: the published zero table.
//! * [`zeros`]: counting, solving, polishing and verifying zero sets.
//! * [`sweep`]: zero trajectories over a grid of orders.
//! * [`check`]: the invariant suite behind `kzeros check`.

pub mod bessel;
pub mod check;
pub mod coefficients;
mod error;
pub mod moments;
mod order;
pub mod poly;
pub mod quad;
pub mod reference;
pub mod special;
pub mod sweep;
mod assign;
pub mod zeros;

pub use error::{Error, Result};
pub use order::{cos_pi, nu_n, sin_pi, snap_half_odd, Order, OrderClass, Precision};

pub use coefficients::{CoefficientSet, RealPolynomial};
pub use moments::MomentVector;
pub use special::SpecialPoint;
pub use sweep::SweepResult;
pub use zeros::{Method, ZeroSet};
pub use check::{CheckOutcome, Level};

/// Real scalar used throughout the crate.
pub type Real = f64;

/// Complex scalar used throughout the crate.
pub type Cplx = num_complex::Complex<Real>;
