//! Bessel functions, their zeros, and bracketed scalar root finding.

mod bessel;
mod roots;
mod zeros;

pub use bessel::{
    bessel_i, bessel_j, bessel_j_prime, j_hankel, j_miller, j_regime, j_series, JRegime,
    ASYMPTOTIC_MIN_X,
};
pub(crate) use bessel::j_unchecked;
pub use roots::{bracket_root, find_root, RootBracket, ROOT_TOL};
pub use zeros::{bessel_j_prime_zero, bessel_j_zero, BesselZeroTable};
