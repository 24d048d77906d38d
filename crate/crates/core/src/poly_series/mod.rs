//! Exact arithmetic in Z[X,Y], rational functions, truncated power series in
//! X and Y, and polynomials over F_2.

mod gcd;
mod gf2;
mod poly;
mod rational;
mod series;

pub use gcd::{poly_gcd, poly_lcm};
pub use gf2::{GF2Poly, Order};
pub use poly::{BivariatePoly, Monomial};
pub use rational::RationalFunction;
pub use series::{expand_rational, TruncatedSeries};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomial division is not exact")]
    NotDivisible,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("denominator is not invertible as a power series (its Y^0 part must be 1)")]
    NonInvertibleDenominator,
    #[error("coefficient is not divisible in the exact slice division")]
    NotExact,
}
