use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |m - m†| entry is {deviation:e}")]
    NotHermitian { deviation: f64 },

    #[error("Jacobi iteration did not converge within {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("matrix has a negative eigenvalue {min_eigenvalue:e} below the clamping tolerance")]
    NegativeSpectrum { min_eigenvalue: f64 },

    #[error("negative exponent {exponent} applied to a singular matrix")]
    ZeroToNegativePower { exponent: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },

    #[error("trace is not one: |Tr - 1| = {deviation:e}")]
    TraceNotOne { deviation: f64 },

    #[error("matrix is not positive semidefinite: min eigenvalue {min_eigenvalue:e}")]
    NotPositive { min_eigenvalue: f64 },

    #[error("matrix of dimension {dim} does not match block shape {n}x{m}")]
    ShapeMismatch { dim: usize, n: usize, m: usize },

    #[error("rank {rank} outside 1..={dim}")]
    BadRank { rank: usize, dim: usize },

    #[error("bad root-search interval [{lo}, {hi}] with grid {grid}")]
    BadInterval { lo: f64, hi: f64, grid: usize },

    #[error("{name} = {value} is outside its domain {domain}")]
    DomainError {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("|a|^2 + |b|^2 = {norm} differs from 1 by more than the slack {slack}")]
    NormalizationSlack { norm: f64, slack: f64 },

    #[error("partial-transpose test is only conclusive up to 2x3 (got {n}x{m}); partial transpose is {}", if *npt { "not positive" } else { "positive" })]
    ShapeUnsupported { n: usize, m: usize, npt: bool },

    #[error("invalid sweep spec: {0}")]
    SpecError(String),

    #[error("matrix file line {line}: {message}")]
    MatrixFormat { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
