//! Validated density matrices with a block shape, the two block partial
//! traces, purity parameters and random-state generation.
//!
//! Row `i·m + k` of an `N = n·m` matrix is the pair `(i, k)`: `i` selects the
//! block (subsystem 1, size `n`), `k` the position inside the block
//! (subsystem 2, size `m`). Writing the matrix as blocks `a_ij`:
//!
//! * `ρ1 = Tr_2 ρ` is the `n×n` matrix with entries `Tr a_ij`,
//! * `ρ2 = Tr_1 ρ` is the `m×m` matrix `Σ_k a_kk`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::inequality;
use crate::linalg::{hermitian_eig, ComplexMatrix};
use crate::rng::SplitMix64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BlockShape {
    n: usize,
    m: usize,
}

impl BlockShape {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::ShapeMismatch { dim: n * m, n, m });
        }
        Ok(Self { n, m })
    }

    /// Number of blocks per row.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Block size.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.n * self.m
    }

    fn check(&self, mat: &ComplexMatrix) -> Result<()> {
        if mat.dim() != self.dim() {
            return Err(Error::ShapeMismatch {
                dim: mat.dim(),
                n: self.n,
                m: self.m,
            });
        }
        Ok(())
    }
}

impl fmt::Display for BlockShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.n, self.m)
    }
}

impl FromStr for BlockShape {
    type Err = Error;

    /// Parses `"NxM"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::SpecError(format!("shape must look like 2x3, got {s:?}"));
        let (n, m) = s.split_once(['x', 'X']).ok_or_else(bad)?;
        let n = n.trim().parse().map_err(|_| bad())?;
        let m = m.trim().parse().map_err(|_| bad())?;
        Self::new(n, m).map_err(|_| bad())
    }
}

/// `Tr_2`: the `n×n` matrix of block traces.
pub fn block_trace(mat: &ComplexMatrix, shape: BlockShape) -> Result<ComplexMatrix> {
    shape.check(mat)?;
    let m = shape.m;
    Ok(ComplexMatrix::from_fn(shape.n, |i, j| {
        (0..m).map(|k| mat[(i * m + k, j * m + k)]).sum()
    }))
}

/// `Tr_1`: the `m×m` sum of diagonal blocks.
pub fn block_sum(mat: &ComplexMatrix, shape: BlockShape) -> Result<ComplexMatrix> {
    shape.check(mat)?;
    let m = shape.m;
    Ok(ComplexMatrix::from_fn(m, |k, l| {
        (0..shape.n).map(|i| mat[(i * m + k, i * m + l)]).sum()
    }))
}

/// Hermitian, unit-trace, positive semidefinite matrix with a block shape.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
    shape: BlockShape,
    tol: f64,
}

impl DensityMatrix {
    /// Validates `mat` against `tol` and stores it unmodified.
    pub fn new(mat: ComplexMatrix, shape: BlockShape, tol: f64) -> Result<Self> {
        shape.check(&mat)?;
        let deviation = mat.hermitian_deviation();
        if !(deviation <= tol) || !mat.is_finite() {
            return Err(Error::NotHermitian { deviation });
        }
        let tr = mat.trace();
        let deviation = (tr - Complex64::new(1.0, 0.0)).norm();
        if deviation > tol {
            return Err(Error::TraceNotOne { deviation });
        }
        let min = hermitian_eig(&mat, tol)?.min_eigenvalue();
        if min < -tol {
            return Err(Error::NotPositive {
                min_eigenvalue: min,
            });
        }
        Ok(Self { mat, shape, tol })
    }

    /// Divides by the trace before validating. Used for generated states
    /// (`GG†`, convex mixtures) that are positive by construction.
    pub fn normalized(mat: ComplexMatrix, shape: BlockShape, tol: f64) -> Result<Self> {
        let tr = mat.trace().re;
        if !(tr > 0.0) {
            return Err(Error::TraceNotOne {
                deviation: (tr - 1.0).abs(),
            });
        }
        Self::new(mat.scale(1.0 / tr), shape, tol)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn shape(&self) -> BlockShape {
        self.shape
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    /// `ρ1 = Tr_2 ρ`, the `n×n` block-trace matrix.
    pub fn partial_trace_over_2(&self) -> Result<DensityMatrix> {
        let reduced = block_trace(&self.mat, self.shape)?;
        let shape = BlockShape::new(self.shape.n, 1)?;
        DensityMatrix::new(reduced, shape, self.tol)
    }

    /// `ρ2 = Tr_1 ρ`, the `m×m` block sum.
    pub fn partial_trace_over_1(&self) -> Result<DensityMatrix> {
        let reduced = block_sum(&self.mat, self.shape)?;
        let shape = BlockShape::new(self.shape.m, 1)?;
        DensityMatrix::new(reduced, shape, self.tol)
    }

    /// `μ = Tr ρ²`.
    pub fn purity(&self) -> f64 {
        purity_of(&self.mat)
    }

    pub fn purity_set(&self) -> Result<PuritySet> {
        purity_set(self)
    }
}

/// Real part of `Tr(m·m)` without forming the product.
pub(crate) fn purity_of(m: &ComplexMatrix) -> f64 {
    let n = m.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            sum += (m[(i, j)] * m[(j, i)]).re;
        }
    }
    sum
}

/// The purity parameters of one state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PuritySet {
    /// `Tr ρ²`
    pub mu12: f64,
    /// `Tr ρ1²`
    pub mu1: f64,
    /// `Tr ρ2²`
    pub mu2: f64,
    pub mu_tilde: f64,
    /// `mu_tilde - mu12`
    pub delta: f64,
}

impl PuritySet {
    pub fn new(mu12: f64, mu1: f64, mu2: f64, mu_tilde: f64) -> Self {
        Self {
            mu12,
            mu1,
            mu2,
            mu_tilde,
            delta: mu_tilde - mu12,
        }
    }

    /// Left side shared by the deformed inequality and its Minkowski
    /// counterpart: `μ1 + μ2 - 1`.
    pub fn lhs5(&self) -> f64 {
        self.mu1 + self.mu2 - 1.0
    }
}

pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.purity()
}

pub fn purity_set(rho: &DensityMatrix) -> Result<PuritySet> {
    let mu1 = purity_of(&block_trace(rho.matrix(), rho.shape())?);
    let mu2 = purity_of(&block_sum(rho.matrix(), rho.shape())?);
    Ok(PuritySet::new(
        rho.purity(),
        mu1,
        mu2,
        inequality::mu_tilde(rho)?,
    ))
}

pub fn make_density(mat: ComplexMatrix, shape: BlockShape, tol: f64) -> Result<DensityMatrix> {
    DensityMatrix::new(mat, shape, tol)
}

/// `GG† / Tr(GG†)` with `G` an `N×rank` complex Ginibre matrix.
///
/// `G` is filled row-major from one [`SplitMix64`] stream seeded with `seed`.
pub fn random_density(n: usize, m: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    let shape = BlockShape::new(n, m)?;
    let dim = shape.dim();
    if rank == 0 || rank > dim {
        return Err(Error::BadRank { rank, dim });
    }
    let mut rng = SplitMix64::new(seed);
    let g: Vec<Complex64> = (0..dim * rank).map(|_| rng.complex_normal()).collect();
    let gg = ComplexMatrix::from_fn(dim, |i, j| {
        (0..rank)
            .map(|k| g[i * rank + k] * g[j * rank + k].conj())
            .sum()
    });
    DensityMatrix::normalized(gg, shape, crate::tol::DENSITY)
}

/// A separable state together with its mixing weights.
#[derive(Clone, Debug)]
pub struct SeparableSample {
    pub state: DensityMatrix,
    pub weights: Vec<f64>,
}

/// Convex mixture `Σ w_k σ_k ⊗ τ_k` of random pure product states.
pub fn random_separable(n: usize, m: usize, terms: usize, seed: u64) -> Result<DensityMatrix> {
    random_separable_sample(n, m, terms, seed).map(|s| s.state)
}

/// Per term the stream yields the weight draw, then the `n` amplitudes of
/// `σ_k`, then the `m` amplitudes of `τ_k`; weights are normalized exponentials.
pub fn random_separable_sample(
    n: usize,
    m: usize,
    terms: usize,
    seed: u64,
) -> Result<SeparableSample> {
    let shape = BlockShape::new(n, m)?;
    if terms == 0 {
        return Err(Error::SpecError("separable mixture needs at least one term".into()));
    }
    let mut rng = SplitMix64::new(seed);
    let mut raw = Vec::with_capacity(terms);
    let mut products = Vec::with_capacity(terms);
    for _ in 0..terms {
        raw.push(rng.exponential());
        let sigma = random_pure(&mut rng, n);
        let tau = random_pure(&mut rng, m);
        products.push(sigma.kron(&tau));
    }
    let total: f64 = raw.iter().sum();
    let weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
    let mut mix = ComplexMatrix::zeros(shape.dim());
    for (w, p) in weights.iter().zip(&products) {
        mix = &mix + &p.scale(*w);
    }
    let state = DensityMatrix::normalized(mix, shape, crate::tol::DENSITY)?;
    Ok(SeparableSample { state, weights })
}

fn random_pure(rng: &mut SplitMix64, dim: usize) -> ComplexMatrix {
    let psi: Vec<Complex64> = (0..dim).map(|_| rng.complex_normal()).collect();
    let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
    ComplexMatrix::from_fn(dim, |i, j| psi[i] * psi[j].conj() / norm)
}
