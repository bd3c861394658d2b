//! Analytic kernels: generalized exponential integrals, Hurwitz zeta jets,
//! log-Gamma and the fused integrand kernel `Z_m`.

mod expint;
mod hurwitz;
mod kernel;

pub use expint::{e1_log_derivs, e_negn_derivs, exp_integral_E, negn_table, series_boost};
pub use hurwitz::{gamma_real, hurwitz_params, hurwitz_zeta_jet, log_gamma, EMParams, MAX_EM_TERMS};
pub use kernel::{log_i_over_sqrt_n, zm_from_jet, zm_kernel};
