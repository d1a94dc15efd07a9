//! Evaluation kernel: Γ, ζ, Hurwitz ζ, L₋₄ and the completed functions built on them.

mod functions;
mod gamma;
mod zeta;

pub use functions::{
    critical_line_form, critical_line_log_scale, critical_line_normalized,
    critical_line_normalized_with, evaluate, evaluate_scaled, evaluate_with, laurent_check,
    self_test, xi1_scaled, ComplexPoint, FunctionId, Parity, SelfTestReport,
};
pub use gamma::{gamma, gamma_scaled, ln_gamma, ln_sin_pi, recip_gamma_scaled};
pub use zeta::{dirichlet_l4, hurwitz_zeta, riemann_zeta, EvalOptions};
