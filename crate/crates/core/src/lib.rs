//! Exact coefficients and explicit asymptotics for multiplicative generating
//! functions f(z) = ∏_j S(a_j z^j)^{b_j} with subexponential coefficient growth.
//!
//! The crate is organised bottom-up:
//!
//! - [`hp`]: the high-precision scalar [`RealHP`] and the working-precision knob.
//! - [`specfun`]: zeta, Hurwitz zeta, log-gamma and related constants.
//! - [`model`]: base functions, weight/scale rules, and the log-coefficients Λ_k.
//! - [`spectrum`]: poles and residues of Γ(s)D(s) for the preset models.
//! - [`khintchine`]: the saddle-point equation for δ_n and its solver.
//! - [`asymptotics`]: the Khintchine-form and explicit log-estimates of c_n.
//! - [`exact`]: exact c_n by the log-derivative recurrence, plus oracles.

pub mod asymptotics;
pub mod error;
pub mod exact;
pub mod hp;
pub mod khintchine;
pub mod model;
pub mod specfun;
pub mod spectrum;

pub use asymptotics::{
    kappa, log_estimate_explicit, log_estimate_khintchine, q_constant, q_correction,
    remainder_delta, to_decimal, ExplicitFormula, FormulaKind, LogEstimate,
};
pub use error::{Error, Result};
pub use exact::{exact_coefficients, pentagonal_oracle, product_dp, Coefficients, ExactSeries};
pub use hp::RealHP;
pub use khintchine::{initial_guess, khintchine_lhs, solve_delta, KhintchineSolution};
pub use model::{
    lambda_coeffs, llt_condition_report, make_preset, BaseFunction, LambdaSeries, LltRow,
    ModelKind, ModelSpec, Scale, ScaleRule, WeightRule,
};
pub use spectrum::{
    derive_spectrum, load_custom_spectrum, validate_spectrum, Classification, Pole, SpectralData,
    SpectrumDocument, ValidationReport,
};
