//! Parameter sweeps over the X-state families, random inequality audits and
//! the Δ-positivity scan, plus their CSV encodings.

use std::fmt;
use std::io::{self, Write};
use std::path::Path;
use std::str::FromStr;

use crate::density::{random_density, random_separable, BlockShape, DensityMatrix, PuritySet};
use crate::error::{Error, Result};
use crate::families::{
    beta_state, beta_x_params, gisin_state, ppt_entangled, random_x_params, werner_state,
    werner_x_params, x_state, x_state_purities, xstate_entangled, BetaParam, GisinParams,
    WernerParam, XStateParams,
};
use crate::inequality::{check_all, InequalityKind, InequalityReport};
use crate::rng::derive_seed;
use crate::tol;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Werner,
    Gisin,
    Beta,
    /// Random X-states; the grid value only labels the row.
    XRandom,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "werner" => Ok(Self::Werner),
            "gisin" => Ok(Self::Gisin),
            "beta" => Ok(Self::Beta),
            "xrandom" | "x-random" => Ok(Self::XRandom),
            _ => Err(Error::SpecError(format!(
                "unknown family {s:?} (werner, gisin, beta, xrandom)"
            ))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Werner => "werner",
            Self::Gisin => "gisin",
            Self::Beta => "beta",
            Self::XRandom => "xrandom",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub family: Family,
    pub start: f64,
    pub stop: f64,
    /// Grid points, endpoints included.
    pub count: usize,
    /// Gisin amplitudes.
    pub a: f64,
    pub b: f64,
    pub slack: f64,
    /// Base seed for `XRandom`.
    pub seed: u64,
}

impl SweepSpec {
    pub fn new(family: Family, start: f64, stop: f64, count: usize) -> Self {
        Self {
            family,
            start,
            stop,
            count,
            a: 1.0,
            b: 0.0,
            slack: tol::GISIN_NORM_SLACK,
            seed: 0,
        }
    }

    pub fn gisin(start: f64, stop: f64, count: usize, a: f64, b: f64) -> Self {
        Self {
            a,
            b,
            ..Self::new(Family::Gisin, start, stop, count)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.count < 2 {
            return Err(Error::SpecError(format!("count must be >= 2, got {}", self.count)));
        }
        if !(self.start < self.stop) || !self.start.is_finite() || !self.stop.is_finite() {
            return Err(Error::SpecError(format!(
                "need finite start < stop, got [{}, {}]",
                self.start, self.stop
            )));
        }
        if self.family == Family::Gisin {
            self.gisin_params(self.start)?;
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<f64> {
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i == self.count - 1 {
                    self.stop
                } else {
                    self.start + step * i as f64
                }
            })
            .collect()
    }

    fn gisin_params(&self, x: f64) -> Result<GisinParams> {
        GisinParams::with_slack(x, self.a.into(), self.b.into(), self.slack)
    }
}

/// One grid point. `None` marks a column left blank.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub param: f64,
    /// The state constructor succeeded and the generic pipeline filled the row.
    pub valid: bool,
    pub mu12: Option<f64>,
    pub mu1: Option<f64>,
    pub mu2: Option<f64>,
    pub mu_tilde: Option<f64>,
    pub delta: Option<f64>,
    pub lhs5: Option<f64>,
    pub entangled: bool,
}

impl SweepRow {
    fn from_purities(param: f64, valid: bool, ps: &PuritySet, entangled: bool) -> Self {
        Self {
            param,
            valid,
            mu12: Some(ps.mu12),
            mu1: Some(ps.mu1),
            mu2: Some(ps.mu2),
            mu_tilde: Some(ps.mu_tilde),
            delta: Some(ps.delta),
            lhs5: Some(ps.lhs5()),
            entangled,
        }
    }
}

/// Generic-pipeline row for a valid state.
fn generic_row(param: f64, rho: &DensityMatrix) -> Result<SweepRow> {
    let ps = rho.purity_set()?;
    let entangled = ppt_entangled(rho, tol::ENTANGLEMENT)?;
    Ok(SweepRow::from_purities(param, true, &ps, entangled))
}

fn x_family_row(param: f64, params: &XStateParams, state: Result<DensityMatrix>) -> Result<SweepRow> {
    match state {
        Ok(rho) => generic_row(param, &rho),
        Err(_) => Ok(SweepRow::from_purities(
            param,
            false,
            &x_state_purities(params),
            xstate_entangled(params),
        )),
    }
}

pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    spec.grid()
        .into_iter()
        .enumerate()
        .map(|(i, t)| match spec.family {
            Family::Werner => {
                let params = werner_x_params(t);
                let state = WernerParam::new(t).and_then(werner_state);
                x_family_row(t, &params, state)
            }
            Family::Beta => {
                let params = beta_x_params(t);
                let state = BetaParam::new(t).and_then(beta_state);
                x_family_row(t, &params, state)
            }
            Family::XRandom => {
                let params = random_x_params(derive_seed(spec.seed, i as u64));
                x_family_row(t, &params, x_state(&params))
            }
            Family::Gisin => {
                let g = spec.gisin_params(t)?;
                match gisin_state(&g) {
                    Ok(rho) => generic_row(t, &rho),
                    Err(_) => {
                        let f = g.closed_forms();
                        Ok(SweepRow {
                            param: t,
                            valid: false,
                            mu12: Some(f.mu12),
                            mu1: None,
                            mu2: None,
                            mu_tilde: Some(f.mu_tilde),
                            delta: Some(f.delta()),
                            lhs5: Some(f.lhs5),
                            entangled: xstate_entangled(&g.x_params()),
                        })
                    }
                }
            }
        })
        .collect()
}

pub const SWEEP_HEADER: &str = "param,valid,mu12,mu1,mu2,mu_tilde,delta,lhs5,entangled";

/// Shortest representation that parses back to the same `f64`
/// (at most 17 significant digits), never in exponent form.
pub fn format_number(v: f64) -> String {
    if v == 0.0 {
        "0".to_owned()
    } else {
        format!("{v}")
    }
}

fn format_cell(v: Option<f64>) -> String {
    v.map(format_number).unwrap_or_default()
}

pub fn write_csv<W: Write>(rows: &[SweepRow], mut out: W) -> io::Result<()> {
    writeln!(out, "{SWEEP_HEADER}")?;
    for row in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            format_number(row.param),
            row.valid,
            format_cell(row.mu12),
            format_cell(row.mu1),
            format_cell(row.mu2),
            format_cell(row.mu_tilde),
            format_cell(row.delta),
            format_cell(row.lhs5),
            row.entangled
        )?;
    }
    Ok(())
}

pub fn emit_csv(rows: &[SweepRow], path: &Path) -> Result<()> {
    let file = std::fs::File::create(path)?;
    let mut out = io::BufWriter::new(file);
    write_csv(rows, &mut out)?;
    out.flush()?;
    Ok(())
}

// ---------------------------------------------------------------- audit

#[derive(Clone, Debug)]
pub struct AuditFailure {
    pub index: u64,
    pub seed: u64,
    pub rank: usize,
    pub report: InequalityReport,
}

#[derive(Clone, Debug)]
pub struct AuditReport {
    pub shape: BlockShape,
    pub samples: u64,
    /// Smallest margin seen per inequality, in `check_all` order.
    pub worst_margins: Vec<(InequalityKind, f64)>,
    pub failures: Vec<AuditFailure>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Ginibre rank used for sample `index`: cycles through `1..=N`.
pub fn audit_rank(shape: BlockShape, index: u64) -> usize {
    1 + (index % shape.dim() as u64) as usize
}

/// Evaluates every `check_all` inequality on `samples` random states. Sample `i` is
/// `random_density(n, m, audit_rank(i), derive_seed(seed, i))`.
pub fn audit(shape: BlockShape, samples: u64, seed: u64, tol: f64) -> Result<AuditReport> {
    let mut worst: Vec<(InequalityKind, f64)> = Vec::new();
    let mut failures = Vec::new();
    for index in 0..samples {
        let sample_seed = derive_seed(seed, index);
        let rank = audit_rank(shape, index);
        let rho = random_density(shape.n(), shape.m(), rank, sample_seed)?;
        for report in check_all(&rho, tol)? {
            match worst.iter_mut().find(|(k, _)| *k == report.name) {
                Some((_, m)) => *m = m.min(report.margin),
                None => worst.push((report.name, report.margin)),
            }
            if !report.satisfied {
                failures.push(AuditFailure {
                    index,
                    seed: sample_seed,
                    rank,
                    report,
                });
            }
        }
    }
    Ok(AuditReport {
        shape,
        samples,
        worst_margins: worst,
        failures,
    })
}

// ---------------------------------------------------------------- scan

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleKind {
    Ginibre { rank: usize },
    Separable { terms: usize },
}

impl fmt::Display for SampleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Ginibre { rank } => write!(f, "ginibre,{rank}"),
            Self::Separable { terms } => write!(f, "separable,{terms}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanRecord {
    pub index: u64,
    pub seed: u64,
    pub kind: SampleKind,
    pub mu12: f64,
    pub mu_tilde: f64,
    pub delta: f64,
    pub entangled: bool,
}

impl ScanRecord {
    /// Rebuilds the sampled state from its seed.
    pub fn rederive(&self, shape: BlockShape) -> Result<DensityMatrix> {
        match self.kind {
            SampleKind::Ginibre { rank } => random_density(shape.n(), shape.m(), rank, self.seed),
            SampleKind::Separable { terms } => {
                random_separable(shape.n(), shape.m(), terms, self.seed)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeltaStats {
    pub count: u64,
    pub min: f64,
    pub max: f64,
    sum: f64,
}

impl Default for DeltaStats {
    fn default() -> Self {
        Self {
            count: 0,
            min: f64::INFINITY,
            max: f64::NEG_INFINITY,
            sum: 0.0,
        }
    }
}

impl DeltaStats {
    fn push(&mut self, delta: f64) {
        self.count += 1;
        self.min = self.min.min(delta);
        self.max = self.max.max(delta);
        self.sum += delta;
    }

    pub fn mean(&self) -> Option<f64> {
        (self.count > 0).then(|| self.sum / self.count as f64)
    }
}

#[derive(Clone, Debug)]
pub struct ScanReport {
    pub shape: BlockShape,
    pub samples: u64,
    pub seed: u64,
    pub tol: f64,
    pub records: Vec<ScanRecord>,
    /// Entangled samples with `Δ ≤ tol`.
    pub counterexamples: Vec<ScanRecord>,
    pub entangled: DeltaStats,
    pub separable: DeltaStats,
}

/// Sample kind for scan index `i`: even indices are Ginibre states with rank
/// cycling through `1..=N`, odd indices separable mixtures with `1..=N` terms.
pub fn scan_kind(shape: BlockShape, index: u64) -> SampleKind {
    let cycle = 1 + ((index / 2) % shape.dim() as u64) as usize;
    if index % 2 == 0 {
        SampleKind::Ginibre { rank: cycle }
    } else {
        SampleKind::Separable { terms: cycle }
    }
}

/// Samples states and checks whether every entangled one has `Δ > tol`.
/// Entanglement is decided by the partial-transpose test, so the shape must
/// have `n·m ≤ 6`.
pub fn scan_conjecture(shape: BlockShape, samples: u64, seed: u64, tol: f64) -> Result<ScanReport> {
    if shape.dim() > 6 {
        return Err(Error::ShapeUnsupported {
            n: shape.n(),
            m: shape.m(),
            npt: false,
        });
    }
    let mut report = ScanReport {
        shape,
        samples,
        seed,
        tol,
        records: Vec::with_capacity(samples as usize),
        counterexamples: Vec::new(),
        entangled: DeltaStats::default(),
        separable: DeltaStats::default(),
    };
    for index in 0..samples {
        let mut record = ScanRecord {
            index,
            seed: derive_seed(seed, index),
            kind: scan_kind(shape, index),
            mu12: 0.0,
            mu_tilde: 0.0,
            delta: 0.0,
            entangled: false,
        };
        let rho = record.rederive(shape)?;
        let ps = rho.purity_set()?;
        record.mu12 = ps.mu12;
        record.mu_tilde = ps.mu_tilde;
        record.delta = ps.delta;
        record.entangled = ppt_entangled(&rho, tol::ENTANGLEMENT)?;
        if record.entangled {
            report.entangled.push(record.delta);
            if record.delta <= tol {
                report.counterexamples.push(record.clone());
            }
        } else {
            report.separable.push(record.delta);
        }
        report.records.push(record);
    }
    Ok(report)
}

pub const SCAN_HEADER: &str = "index,seed,kind,size,entangled,mu12,mu_tilde,delta";

pub fn write_scan_csv<W: Write>(report: &ScanReport, mut out: W) -> io::Result<()> {
    writeln!(out, "{SCAN_HEADER}")?;
    for r in &report.records {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.index,
            r.seed,
            r.kind,
            r.entangled,
            format_number(r.mu12),
            format_number(r.mu_tilde),
            format_number(r.delta)
        )?;
    }
    Ok(())
}
