//! Special functions and constants needed by the spectral derivations:
//! Riemann and Hurwitz zeta, their derivatives at the points the presets
//! touch, and log-gamma. Everything is evaluated at the working precision of
//! the arguments.

mod bernoulli;
mod constants;
mod gamma;
mod zeta;

pub use bernoulli::bernoulli_upto;
pub use constants::{euler_gamma, log_glaisher};
pub use gamma::log_gamma;
pub use zeta::{
    hurwitz_zeta, hurwitz_zeta_deriv0, riemann_zeta, riemann_zeta_deriv, zeta_deriv_numeric,
};

pub(crate) use constants::ln_two_pi;
pub(crate) use zeta::{hurwitz_unchecked, riemann_unchecked};
