//! Formal stationary phase in one variable and the Gamma asymptotics.

pub mod gamma_hat;
pub mod stationary;

pub use gamma_hat::{
    bernoulli, bernoulli_table, gamma_hat_series, gamma_stationary_coefficients, gamma_vs_stationary_phase, Series1D,
};
pub use stationary::{
    check_total_derivative, gaussian_moment, stationary_phase, stationary_phase_branch, AmplitudeData,
    AsymptoticExpansion, PhaseData, XSeries, ZLaurent,
};
