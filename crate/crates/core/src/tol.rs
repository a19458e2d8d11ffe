//! Default tolerances. Every tolerance used by the library is a parameter;
//! these are the values used when a caller does not supply one.

/// Max |m - m†| entry accepted by the eigensolver and spectral functions.
pub const HERMITIAN: f64 = 1e-10;

/// Eigenvalues in `[-CLAMP, 0)` are set to zero before fractional powers.
pub const CLAMP: f64 = 1e-10;

/// Jacobi stops once the off-diagonal Frobenius norm drops below this
/// fraction of the input's Frobenius norm.
pub const JACOBI_RELATIVE_OFF_NORM: f64 = 1e-14;

pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Hermiticity, unit trace and positivity tolerance for density matrices.
pub const DENSITY: f64 = 1e-10;

/// Slack on the strict entanglement inequalities; equality counts as separable.
pub const ENTANGLEMENT: f64 = 1e-12;

/// Slack on X-state parameter invariants (unit trace, positivity).
pub const X_PARAMS: f64 = 1e-12;

/// Allowed deviation of |a|^2 + |b|^2 from one for Gisin parameters.
pub const GISIN_NORM_SLACK: f64 = 0.02;

pub const ROOT_GRID: usize = 2048;
pub const ROOT_TOL: f64 = 1e-10;

/// Margin below which an audited inequality is reported as violated.
pub const AUDIT: f64 = 1e-9;

pub const SWEEP_POINTS: usize = 200;
