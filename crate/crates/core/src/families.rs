//! X-states and their Werner, Gisin and β-state specializations, closed-form
//! purities, and entanglement tests.
//!
//! An X-state has nonzero entries only on the diagonal and anti-diagonal:
//!
//! ```text
//! | d1   0    0    c14 |
//! | 0    d2   c23  0   |
//! | 0    c23* d3   0   |
//! | c14* 0    0    d4  |
//! ```
//!
//! As a 2x2 block matrix its blocks are `a11 = diag(d1, d2)`,
//! `a12 = [[0, c14], [c23, 0]]`, `a22 = diag(d3, d4)`.

use num_complex::Complex64;

use crate::density::{BlockShape, DensityMatrix, PuritySet};
use crate::error::{Error, Result};
use crate::inequality::{Direction, InequalityKind, InequalityReport};
use crate::linalg::{hermitian_eig, ComplexMatrix};
use crate::rng::SplitMix64;
use crate::tol;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct XStateParams {
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
    pub d4: f64,
    pub c14: Complex64,
    pub c23: Complex64,
}

impl XStateParams {
    /// Checks unit trace and `d2·d3 ≥ |c23|²`, `d1·d4 ≥ |c14|²`.
    pub fn new(d1: f64, d2: f64, d3: f64, d4: f64, c14: Complex64, c23: Complex64) -> Result<Self> {
        let params = Self {
            d1,
            d2,
            d3,
            d4,
            c14,
            c23,
        };
        params.validate(tol::X_PARAMS)?;
        Ok(params)
    }

    pub fn validate(&self, tol: f64) -> Result<()> {
        let diag = [self.d1, self.d2, self.d3, self.d4];
        if let Some(&d) = diag.iter().find(|d| !(**d >= -tol) || !d.is_finite()) {
            return Err(Error::NotPositive { min_eigenvalue: d });
        }
        let deviation = (diag.iter().sum::<f64>() - 1.0).abs();
        if deviation > tol {
            return Err(Error::TraceNotOne { deviation });
        }
        let inner = self.d2 * self.d3 - self.c23.norm_sqr();
        let outer = self.d1 * self.d4 - self.c14.norm_sqr();
        if inner < -tol || outer < -tol {
            return Err(Error::NotPositive {
                min_eigenvalue: inner.min(outer),
            });
        }
        Ok(())
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::diagonal(&[self.d1, self.d2, self.d3, self.d4]);
        m[(0, 3)] = self.c14;
        m[(3, 0)] = self.c14.conj();
        m[(1, 2)] = self.c23;
        m[(2, 1)] = self.c23.conj();
        m
    }

    fn diag_square_sum(&self) -> f64 {
        self.d1 * self.d1 + self.d2 * self.d2 + self.d3 * self.d3 + self.d4 * self.d4
    }

    fn coherence(&self) -> f64 {
        self.c14.norm_sqr() + self.c23.norm_sqr()
    }

    /// `2Σd_i² + 2(d1 + d4)(d2 + d3) - 1`, i.e. `μ1 + μ2 - 1`.
    fn eq11_lhs(&self) -> f64 {
        2.0 * self.diag_square_sum() + 2.0 * (self.d1 + self.d4) * (self.d2 + self.d3) - 1.0
    }
}

pub fn x_state(params: &XStateParams) -> Result<DensityMatrix> {
    params.validate(tol::X_PARAMS)?;
    DensityMatrix::new(params.to_matrix(), shape22(), tol::DENSITY)
}

fn shape22() -> BlockShape {
    BlockShape::new(2, 2).expect("2x2 is a valid shape")
}

/// Closed-form purity parameters of an X-state.
pub fn x_state_purities(params: &XStateParams) -> PuritySet {
    let XStateParams { d1, d2, d3, d4, .. } = *params;
    let s = params.diag_square_sum();
    let c = params.coherence();
    let mu12 = s + 2.0 * c;
    let mu1 = s + 2.0 * (d1 * d2 + d3 * d4);
    let mu2 = s + 2.0 * (d1 * d3 + d2 * d4);
    let root = |x: f64, y: f64| (x * x + y * y + c).sqrt();
    let mu_tilde = 2.0 * root(d1, d2) * root(d3, d4)
        + 2.0 * s
        + 2.0 * root(d1, d3) * root(d2, d4)
        + 4.0 * c
        - 1.0;
    PuritySet::new(mu12, mu1, mu2, mu_tilde)
}

/// Deformed purity inequality written in X-state parameters.
pub fn check_eq11(params: &XStateParams, tol: f64) -> InequalityReport {
    InequalityReport::new(
        InequalityKind::Eq11,
        params.eq11_lhs(),
        x_state_purities(params).mu12,
        Direction::LeqExpected,
        tol,
    )
}

/// `μ1 + μ2 - 1 ≤ μ̃` written in X-state parameters.
pub fn check_eq12(params: &XStateParams, tol: f64) -> InequalityReport {
    InequalityReport::new(
        InequalityKind::Eq12,
        params.eq11_lhs(),
        x_state_purities(params).mu_tilde,
        Direction::LeqExpected,
        tol,
    )
}

/// Which of the two entanglement chains holds:
/// `|c23| ≤ √(d2 d3) < |c14| ≤ √(d1 d4)` and
/// `|c14| ≤ √(d1 d4) < |c23| ≤ √(d2 d3)`.
/// At most one can be true.
pub fn entanglement_chains(params: &XStateParams) -> (bool, bool) {
    let t = tol::ENTANGLEMENT;
    let c14 = params.c14.norm_sqr();
    let c23 = params.c23.norm_sqr();
    let inner = params.d2 * params.d3;
    let outer = params.d1 * params.d4;
    let first = c23 <= inner + t && inner + t < c14 && c14 <= outer + t;
    let second = c14 <= outer + t && outer + t < c23 && c23 <= inner + t;
    (first, second)
}

/// `|c14|² > d2·d3` or `|c23|² > d1·d4`; equality counts as separable.
pub fn xstate_entangled(params: &XStateParams) -> bool {
    let t = tol::ENTANGLEMENT;
    params.c14.norm_sqr() > params.d2 * params.d3 + t
        || params.c23.norm_sqr() > params.d1 * params.d4 + t
}

/// Transpose inside every block: entry `((i,k),(j,l))` moves to `((i,l),(j,k))`.
pub fn partial_transpose(mat: &ComplexMatrix, shape: BlockShape) -> Result<ComplexMatrix> {
    if mat.dim() != shape.dim() {
        return Err(Error::ShapeMismatch {
            dim: mat.dim(),
            n: shape.n(),
            m: shape.m(),
        });
    }
    let m = shape.m();
    Ok(ComplexMatrix::from_fn(mat.dim(), |r, c| {
        let (i, k) = (r / m, r % m);
        let (j, l) = (c / m, c % m);
        mat[(i * m + l, j * m + k)]
    }))
}

/// Peres–Horodecki test: entangled iff the partial transpose has an
/// eigenvalue below `-tol`.
///
/// Conclusive only when `n·m ≤ 6`; larger shapes return
/// [`Error::ShapeUnsupported`] carrying the witness verdict.
pub fn ppt_entangled(rho: &DensityMatrix, tol: f64) -> Result<bool> {
    let shape = rho.shape();
    let pt = partial_transpose(rho.matrix(), shape)?;
    let min = hermitian_eig(&pt, rho.tol().max(tol))?.min_eigenvalue();
    let npt = min < -tol;
    if shape.dim() > 6 {
        return Err(Error::ShapeUnsupported {
            n: shape.n(),
            m: shape.m(),
            npt,
        });
    }
    Ok(npt)
}

/// Uniform X-state parameters: Dirichlet(1,1,1,1) diagonal, coherences with
/// uniform modulus inside the positivity bound and uniform phase.
pub fn random_x_params(seed: u64) -> XStateParams {
    let mut rng = SplitMix64::new(seed);
    let raw: Vec<f64> = (0..4).map(|_| rng.exponential()).collect();
    let total: f64 = raw.iter().sum();
    let d: Vec<f64> = raw.iter().map(|x| x / total).collect();
    let mut coherence = |bound: f64| {
        let modulus = bound.sqrt() * rng.uniform();
        Complex64::from_polar(modulus, std::f64::consts::TAU * rng.uniform())
    };
    let c14 = coherence(d[0] * d[3]);
    let c23 = coherence(d[1] * d[2]);
    XStateParams {
        d1: d[0],
        d2: d[1],
        d3: d[2],
        d4: d[3],
        c14,
        c23,
    }
}

// ---------------------------------------------------------------- Werner

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WernerParam(f64);

impl WernerParam {
    pub fn new(p: f64) -> Result<Self> {
        if !(-1.0 / 3.0..=1.0).contains(&p) {
            return Err(Error::DomainError {
                name: "p",
                value: p,
                domain: "[-1/3, 1]",
            });
        }
        Ok(Self(p))
    }

    pub fn value(&self) -> f64 {
        self.0
    }

    pub fn x_params(&self) -> XStateParams {
        werner_x_params(self.0)
    }
}

/// Werner parameters without the domain check, for closed-form curves.
pub fn werner_x_params(p: f64) -> XStateParams {
    XStateParams {
        d1: (1.0 + p) / 4.0,
        d2: (1.0 - p) / 4.0,
        d3: (1.0 - p) / 4.0,
        d4: (1.0 + p) / 4.0,
        c14: real(p / 2.0),
        c23: ZERO,
    }
}

pub fn werner_state(p: WernerParam) -> Result<DensityMatrix> {
    x_state(&p.x_params())
}

// ---------------------------------------------------------------- β-state

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BetaParam(f64);

impl BetaParam {
    pub fn new(beta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&beta) {
            return Err(Error::DomainError {
                name: "beta",
                value: beta,
                domain: "[0, 1]",
            });
        }
        Ok(Self(beta))
    }

    pub fn value(&self) -> f64 {
        self.0
    }

    pub fn x_params(&self) -> XStateParams {
        beta_x_params(self.0)
    }
}

pub fn beta_x_params(beta: f64) -> XStateParams {
    let outer = beta / 2.0;
    let inner = (1.0 - beta) / 2.0;
    XStateParams {
        d1: outer,
        d2: inner,
        d3: inner,
        d4: outer,
        c14: real(outer),
        c23: real(inner),
    }
}

pub fn beta_state(beta: BetaParam) -> Result<DensityMatrix> {
    x_state(&beta.x_params())
}

// ---------------------------------------------------------------- Gisin

/// Gisin state parameters. `a` and `b` are stored as given; only
/// `| |a|² + |b|² - 1 | ≤ slack` is enforced so that printed, rounded
/// amplitudes can be used verbatim.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GisinParams {
    pub x: f64,
    pub a: Complex64,
    pub b: Complex64,
    pub slack: f64,
}

impl GisinParams {
    pub fn new(x: f64, a: Complex64, b: Complex64) -> Result<Self> {
        Self::with_slack(x, a, b, tol::GISIN_NORM_SLACK)
    }

    pub fn real(x: f64, a: f64, b: f64) -> Result<Self> {
        Self::new(x, real(a), real(b))
    }

    pub fn with_slack(x: f64, a: Complex64, b: Complex64, slack: f64) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::DomainError {
                name: "x",
                value: x,
                domain: "(0, 1)",
            });
        }
        let norm = a.norm_sqr() + b.norm_sqr();
        if !((norm - 1.0).abs() <= slack) {
            return Err(Error::NormalizationSlack { norm, slack });
        }
        Ok(Self { x, a, b, slack })
    }

    /// `1 / (1 + 2|ab|)`, computed from the raw amplitudes.
    pub fn x_max(&self) -> f64 {
        1.0 / (1.0 + 2.0 * self.a.norm() * self.b.norm())
    }

    pub fn at(&self, x: f64) -> Self {
        Self { x, ..*self }
    }

    pub fn x_params(&self) -> XStateParams {
        let x = self.x;
        let corner = (1.0 - x) / 2.0;
        XStateParams {
            d1: corner,
            d2: x * self.a.norm_sqr(),
            d3: x * self.b.norm_sqr(),
            d4: corner,
            c14: ZERO,
            c23: self.a * self.b.conj() * x,
        }
    }

    pub fn closed_forms(&self) -> GisinClosedForms {
        gisin_closed_forms(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GisinClosedForms {
    /// `μ1 + μ2 - 1 = x²(2(|a|⁴ + |b|⁴) - 1)`
    pub lhs5: f64,
    /// `x(3x - 2) + √(x²(4|a|² + 1) - 2x + 1)·√(x²(4|b|² + 1) - 2x + 1)`
    pub mu_tilde: f64,
    /// `3x²/2 - x + 1/2`
    pub mu12: f64,
}

impl GisinClosedForms {
    pub fn delta(&self) -> f64 {
        self.mu_tilde - self.mu12
    }
}

pub fn gisin_closed_forms(g: &GisinParams) -> GisinClosedForms {
    let x = g.x;
    let a2 = g.a.norm_sqr();
    let b2 = g.b.norm_sqr();
    let lhs5 = x * x * (2.0 * (a2 * a2 + b2 * b2) - 1.0);
    let root = |w: f64| (x * x * (4.0 * w + 1.0) - 2.0 * x + 1.0).max(0.0).sqrt();
    let mu_tilde = x * (3.0 * x - 2.0) + root(a2) * root(b2);
    let mu12 = 1.5 * x * x - x + 0.5;
    GisinClosedForms {
        lhs5,
        mu_tilde,
        mu12,
    }
}

/// The Gisin matrix for `x ∈ (0, 1)`. It is positive semidefinite on the
/// whole interval; `x > x_max` gives an entangled state. Amplitudes that are
/// not normalized fail the unit-trace check.
pub fn gisin_state(g: &GisinParams) -> Result<DensityMatrix> {
    if !(g.x > 0.0 && g.x < 1.0) {
        return Err(Error::DomainError {
            name: "x",
            value: g.x,
            domain: "(0, 1)",
        });
    }
    DensityMatrix::new(g.x_params().to_matrix(), shape22(), tol::DENSITY)
}
