//! Special functions, quadrature and combinatorics used by the closed forms.
//!
//! Everything here is pure and reentrant.

mod bessel;
mod combinatorics;
mod quadrature;
mod special;
mod summation;

pub use bessel::{bessel_k, bessel_k_regular_scaled, bessel_k_scaled};
pub use combinatorics::{compositions, log_binomial, log_multinomial, Composition};
pub use quadrature::{
    integrate_finite, integrate_semi_infinite, Quadrature, QuadratureOptions,
};
pub use special::{log_factorial, log_gamma};
pub use summation::{CompensatedSum, SignedLogSum};
