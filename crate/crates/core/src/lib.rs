//! Purity parameters and trace inequalities for block-structured density matrices.
//!
//! A density matrix of dimension `N = n·m` is viewed as an `n×n` array of
//! `m×m` blocks. Two block maps play the role of partial traces even when the
//! state describes a single qudit with no physical subsystems:
//!
//! * [`density::block_trace`] takes the trace of every block (an `n×n` matrix),
//! * [`density::block_sum`] adds up the diagonal blocks (an `m×m` matrix).
//!
//! On top of these the crate evaluates the purity parameters, the deformed
//! purity inequality, the two-parameter Minkowski trace inequality and its
//! purity corollaries, and provides the X-state families (Werner, Gisin,
//! β-state) used to study how the resulting bound relates to entanglement.

pub mod cli;
pub mod density;
pub mod error;
pub mod families;
pub mod inequality;
pub mod linalg;
pub mod matrix_io;
pub mod rng;
pub mod sweep;
pub mod tol;

pub use density::{BlockShape, DensityMatrix, PuritySet};
pub use error::{Error, Result};
pub use inequality::{Direction, InequalityKind, InequalityReport, MinkowskiParams};
pub use linalg::{ComplexMatrix, HermitianEigen};
pub use num_complex::Complex64;
