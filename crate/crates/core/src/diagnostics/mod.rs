//! Energy functionals, effective viscous flux, and residuals of the elliptic
//! and transport identities satisfied by smooth solutions.

mod functionals;
mod identities;
mod record;

pub use functionals::{
    functionals_a1_a2, sigma, smallness_report, FunctionalSample, FunctionalsAccumulator,
    SmallnessReport,
};
pub use identities::{
    boundary_shell_perturbation, check_elliptic_f, check_elliptic_omega,
    check_lambda_transport, check_laplacian_decomposition, construction_identity_residual,
    dissipation, effective_viscous_flux, elliptic_f_residual, elliptic_omega_residual,
    grad_norm_sq, hoff_decomposition, hoff_from, identity_report, lambda1, lambda2,
    laplacian_decomposition_residual, material_derivative_u, ratio_bounds, total_energy,
    total_momentum, Energy, HoffPair, IdentityReport, StateAnalysis,
};
pub use record::{DiagnosticsRecord, RecordBuilder, COLUMNS};
