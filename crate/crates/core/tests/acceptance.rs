//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs without the libtest harness.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use qudit_purity::density::{block_sum, block_trace, random_density, BlockShape};
use qudit_purity::families::{
    beta_state, check_eq11, check_eq12, gisin_state, ppt_entangled, random_x_params,
    werner_state, x_state, x_state_purities, BetaParam, GisinParams, WernerParam,
};
use qudit_purity::inequality::find_delta_roots;
use qudit_purity::linalg::{hermitian_eig, ComplexMatrix};
use qudit_purity::rng::{derive_seed, SplitMix64};
use qudit_purity::sweep::{audit, run_sweep, scan_conjecture, Family, SampleKind, SweepSpec};
use qudit_purity::tol;

type Outcome = Result<String, String>;

fn grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| {
            if i + 1 == count {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (count - 1) as f64
            }
        })
        .collect()
}

/// Tracks the largest deviation seen and where it occurred.
#[derive(Default)]
struct Worst {
    value: f64,
    at: String,
}

impl Worst {
    fn see(&mut self, err: f64, at: impl FnOnce() -> String) {
        if !(err <= self.value) {
            self.value = err;
            self.at = at();
        }
    }
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn werner_closed_forms() -> Outcome {
    let start = Instant::now();
    let rows = run_sweep(&SweepSpec::new(Family::Werner, -1.0 / 3.0, 1.0, 200))
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let mut purities = Worst::default();
    let mut tilde = Worst::default();
    for row in &rows {
        let p = row.param;
        ensure(row.valid, format!("p={p} rejected"))?;
        let got = [row.mu12, row.mu1, row.mu2].map(Option::unwrap);
        let want = [(3.0 * p * p + 1.0) / 4.0, 0.5, 0.5];
        for (g, w) in got.iter().zip(want) {
            purities.see((g - w).abs(), || format!("p={p}"));
        }
        tilde.see((row.mu_tilde.unwrap() - 3.0 * p * p).abs(), || format!("p={p}"));
    }
    let summary = format!(
        "{} points, purity err {:.2e} (tol 1e-12), mu_tilde err {:.2e} (tol 1e-10), {:.3} s (limit 1 s)",
        rows.len(),
        purities.value,
        tilde.value,
        elapsed.as_secs_f64()
    );
    ensure(rows.len() == 200, format!("{summary}; wrong row count"))?;
    ensure(purities.value <= 1e-12, format!("{summary}; worst at {}", purities.at))?;
    ensure(tilde.value <= 1e-10, format!("{summary}; worst at {}", tilde.at))?;
    ensure(elapsed < Duration::from_secs(1), format!("{summary}; too slow"))?;
    Ok(summary)
}

fn werner_delta(p: f64) -> f64 {
    let rho = werner_state(WernerParam::new(p).unwrap()).unwrap();
    rho.purity_set().unwrap().delta
}

fn werner_entangled(p: f64) -> bool {
    let rho = werner_state(WernerParam::new(p).unwrap()).unwrap();
    ppt_entangled(&rho, tol::ENTANGLEMENT).unwrap()
}

fn werner_threshold() -> Outcome {
    let roots = find_delta_roots(werner_delta, 1e-9, 1.0, tol::ROOT_GRID, tol::ROOT_TOL)
        .map_err(|e| e.to_string())?;
    ensure(roots.len() == 1, format!("expected one root in (0, 1], found {roots:?}"))?;
    let root = roots[0];
    ensure(
        (root - 1.0 / 3.0).abs() <= 1e-8,
        format!("root {root} is not within 1e-8 of 1/3"),
    )?;

    // refine the PPT flip by bisection down to 1e-8
    let (mut lo, mut hi) = (0.0, 1.0);
    ensure(!werner_entangled(lo) && werner_entangled(hi), "no PPT flip on [0, 1]")?;
    while hi - lo > 1e-9 {
        let mid = 0.5 * (lo + hi);
        if werner_entangled(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let flip = 0.5 * (lo + hi);
    ensure(
        (flip - 1.0 / 3.0).abs() <= 1e-8,
        format!("PPT flips at {flip}, not within 1e-8 of 1/3"),
    )?;
    Ok(format!("delta root {root:.12}, PPT flip {flip:.12} (target 1/3 +- 1e-8)"))
}

const GISIN_SETS: [(f64, f64); 3] = [(1.0, 0.0), (0.2, 0.9797958971132712), (0.6, 0.8)];

fn gisin_closed_forms() -> Outcome {
    let mut worst = Worst::default();
    let xs = grid(0.01, 0.99, 50);
    for &(a, b) in &GISIN_SETS {
        for &x in &xs {
            let g = GisinParams::real(x, a, b).map_err(|e| e.to_string())?;
            let ps = gisin_state(&g)
                .and_then(|rho| rho.purity_set())
                .map_err(|e| format!("{{{a}, {b}}} x={x}: {e}"))?;
            let cf = g.closed_forms();
            for (got, want) in [(ps.mu12, cf.mu12), (ps.lhs5(), cf.lhs5), (ps.mu_tilde, cf.mu_tilde)] {
                worst.see((got - want).abs(), || format!("{{{a}, {b}}} x={x}"));
            }
        }
    }
    ensure(
        worst.value <= 1e-10,
        format!("closed-form err {:.2e} at {} exceeds 1e-10", worst.value, worst.at),
    )?;

    let targets = [
        ((1.0, 0.0), 1.0, 1e-12),
        ((0.2, 0.9797958971132712), 0.718, 0.001),
        ((0.6, 0.8), 0.51, 0.005),
        ((0.07, 0.99), 0.87, 0.01),
    ];
    let mut found = Vec::new();
    for ((a, b), want, tol) in targets {
        let x_max = GisinParams::real(0.5, a, b).map_err(|e| e.to_string())?.x_max();
        ensure(
            (x_max - want).abs() <= tol,
            format!("x_max for {{{a}, {b}}} is {x_max}, expected {want} +- {tol}"),
        )?;
        found.push(format!("{x_max:.4}"));
    }
    Ok(format!(
        "3 sets x 50 points, closed-form err {:.2e} (tol 1e-10); x_max = {}",
        worst.value,
        found.join(", ")
    ))
}

fn gisin_sign_structure() -> Outcome {
    let g = GisinParams::real(0.5, 0.6, 0.8).map_err(|e| e.to_string())?;
    let x_max = g.x_max();
    let delta = |x: f64| g.at(x).closed_forms().delta();
    let generic = |x: f64| gisin_state(&g.at(x)).and_then(|r| r.purity_set()).map(|p| p.delta);

    let mut min_above = f64::INFINITY;
    for x in grid(x_max, 0.999, 200).into_iter().skip(1) {
        let d = generic(x).map_err(|e| format!("x={x}: {e}"))?;
        min_above = min_above.min(d);
    }
    let roots = find_delta_roots(delta, 1e-6, 0.999, tol::ROOT_GRID, tol::ROOT_TOL)
        .map_err(|e| e.to_string())?;
    let nearest = roots
        .iter()
        .copied()
        .min_by(|a, b| (a - x_max).abs().total_cmp(&(b - x_max).abs()));
    let summary = format!(
        "x_max {x_max:.4}, min delta above x_max {min_above:.4}, roots {:?}, delta(x_max) {:.4}",
        roots.iter().map(|r| format!("{r:.4}")).collect::<Vec<_>>(),
        delta(x_max)
    );
    ensure(min_above > 0.0, format!("{summary}; delta not positive above x_max"))?;
    match nearest {
        Some(r) if (r - x_max).abs() <= 0.02 => Ok(summary),
        _ => Err(format!("{summary}; no root within 0.02 of x_max")),
    }
}

fn beta_state_forms() -> Outcome {
    let mut worst = Worst::default();
    let mut min_delta = f64::INFINITY;
    for b in grid(0.0, 1.0, 200).into_iter().chain([0.5]) {
        let ps = beta_state(BetaParam::new(b).map_err(|e| e.to_string())?)
            .and_then(|rho| rho.purity_set())
            .map_err(|e| format!("beta={b}: {e}"))?;
        worst.see((ps.mu_tilde - (8.0 * b * b - 8.0 * b + 3.0)).abs(), || format!("beta={b}"));
        worst.see((ps.mu12 - (2.0 * b * b - 2.0 * b + 1.0)).abs(), || format!("beta={b}"));
        min_delta = min_delta.min(ps.delta);
    }
    let summary = format!(
        "200 points + beta=1/2, closed-form err {:.2e} (tol 1e-12), min delta {min_delta:.12}",
        worst.value
    );
    ensure(worst.value <= 1e-12, format!("{summary}; worst at {}", worst.at))?;
    ensure(min_delta >= 0.5 - 1e-12, format!("{summary}; delta below 1/2"))?;
    Ok(summary)
}

fn inequality_audit() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    for ((n, m), samples) in [((2, 2), 10_000), ((2, 3), 1_000)] {
        let shape = BlockShape::new(n, m).unwrap();
        let report = audit(shape, samples, 20_240_601, tol::AUDIT).map_err(|e| e.to_string())?;
        let worst = report
            .worst_margins
            .iter()
            .map(|(_, m)| *m)
            .fold(f64::INFINITY, f64::min);
        ensure(
            report.passed() && worst >= -tol::AUDIT,
            format!("{shape}: {} violations, worst margin {worst:e}", report.failures.len()),
        )?;
        parts.push(format!("{shape} x{samples} worst margin {worst:.3e}"));
    }
    let elapsed = start.elapsed();
    let summary = format!("{}, {:.2} s (limit 30 s)", parts.join("; "), elapsed.as_secs_f64());
    ensure(elapsed < Duration::from_secs(30), format!("{summary}; too slow"))?;
    Ok(summary)
}

/// Reduced matrices written with explicit (i, k) pair indices.
fn index_oracle(rho: &ComplexMatrix, n: usize, m: usize) -> (ComplexMatrix, ComplexMatrix) {
    let idx = |i: usize, k: usize| i * m + k;
    let over_2 = ComplexMatrix::from_fn(n, |i, j| (0..m).map(|k| rho[(idx(i, k), idx(j, k))]).sum());
    let over_1 = ComplexMatrix::from_fn(m, |k, l| (0..n).map(|i| rho[(idx(i, k), idx(i, l))]).sum());
    (over_2, over_1)
}

fn max_entry_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.entries()
        .iter()
        .zip(b.entries())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn oracle_equivalence() -> Outcome {
    let mut x_worst = Worst::default();
    for i in 0..10_000u64 {
        let params = random_x_params(derive_seed(77, i));
        let ps = x_state(&params)
            .and_then(|rho| rho.purity_set())
            .map_err(|e| format!("X-state {i}: {e}"))?;
        let cf = x_state_purities(&params);
        let e11 = check_eq11(&params, 0.0);
        let e12 = check_eq12(&params, 0.0);
        let pairs = [
            (cf.mu12, ps.mu12),
            (cf.mu1, ps.mu1),
            (cf.mu2, ps.mu2),
            (cf.mu_tilde, ps.mu_tilde),
            (e11.lhs, ps.lhs5()),
            (e11.rhs, ps.mu12),
            (e12.lhs, ps.lhs5()),
            (e12.rhs, ps.mu_tilde),
        ];
        for (a, b) in pairs {
            x_worst.see((a - b).abs(), || format!("sample {i}"));
        }
    }
    ensure(
        x_worst.value <= 1e-12,
        format!("X-state err {:.2e} at {} exceeds 1e-12", x_worst.value, x_worst.at),
    )?;

    let mut pt_worst = Worst::default();
    for (n, m) in [(2, 2), (2, 3), (3, 2), (4, 2)] {
        let shape = BlockShape::new(n, m).unwrap();
        for i in 0..1_000u64 {
            let rank = 1 + (i as usize % shape.dim());
            let rho = random_density(n, m, rank, derive_seed(99, i)).map_err(|e| e.to_string())?;
            let (want2, want1) = index_oracle(rho.matrix(), n, m);
            let got2 = block_trace(rho.matrix(), shape).map_err(|e| e.to_string())?;
            let got1 = block_sum(rho.matrix(), shape).map_err(|e| e.to_string())?;
            let err = max_entry_diff(&got2, &want2).max(max_entry_diff(&got1, &want1));
            pt_worst.see(err, || format!("{shape} sample {i}"));
        }
    }
    ensure(
        pt_worst.value <= 1e-14,
        format!("partial-trace err {:.2e} at {} exceeds 1e-14", pt_worst.value, pt_worst.at),
    )?;
    Ok(format!(
        "10^4 X-states err {:.2e} (tol 1e-12); 4 shapes x 10^3 partial traces err {:.2e} (tol 1e-14)",
        x_worst.value, pt_worst.value
    ))
}

fn conjecture_scan() -> Outcome {
    let shape = BlockShape::new(2, 2).unwrap();
    let first = scan_conjecture(shape, 10_000, 2024, tol::ENTANGLEMENT).map_err(|e| e.to_string())?;
    let second = scan_conjecture(shape, 10_000, 2024, tol::ENTANGLEMENT).map_err(|e| e.to_string())?;
    ensure(first.records == second.records, "two runs with one seed differ")?;
    ensure(
        first.counterexamples == second.counterexamples,
        "counterexample lists differ between runs",
    )?;
    let separable_labeled = first
        .counterexamples
        .iter()
        .filter(|c| matches!(c.kind, SampleKind::Separable { .. }))
        .count();
    ensure(
        separable_labeled == 0,
        format!("{separable_labeled} separable-kind samples reported as counterexamples"),
    )?;
    for c in &first.counterexamples {
        let rho = c.rederive(shape).map_err(|e| e.to_string())?;
        let ps = rho.purity_set().map_err(|e| e.to_string())?;
        let entangled = ppt_entangled(&rho, tol::ENTANGLEMENT).map_err(|e| e.to_string())?;
        ensure(
            ps.delta == c.delta && entangled,
            format!("counterexample {} (seed {}) does not re-derive", c.index, c.seed),
        )?;
    }
    Ok(format!(
        "10^4 samples, {} entangled, {} counterexamples (all re-derived), deterministic",
        first.entangled.count,
        first.counterexamples.len()
    ))
}

fn eigensolver_quality() -> Outcome {
    let mut recon = Worst::default();
    let mut unitary = Worst::default();
    for i in 0..1_000u64 {
        let dim = 2 + (i as usize % 7);
        let mut rng = SplitMix64::new(derive_seed(5, i));
        let g = ComplexMatrix::from_fn(dim, |_, _| rng.complex_normal());
        let h = (&g + &g.adjoint()).scale(0.5);
        let eig = hermitian_eig(&h, tol::JACOBI_RELATIVE_OFF_NORM).map_err(|e| e.to_string())?;
        let v = &eig.eigenvectors;
        let r = (&eig.reconstruct() - &h).frobenius_norm();
        let u = (&(&v.adjoint() * v) - &ComplexMatrix::identity(dim)).frobenius_norm();
        recon.see(r, || format!("dim {dim} sample {i}"));
        unitary.see(u, || format!("dim {dim} sample {i}"));
    }
    let summary = format!(
        "10^3 matrices dims 2-8, reconstruction {:.2e}, unitarity {:.2e} (tol 1e-10)",
        recon.value, unitary.value
    );
    ensure(recon.value <= 1e-10, format!("{summary}; worst at {}", recon.at))?;
    ensure(unitary.value <= 1e-10, format!("{summary}; worst at {}", unitary.at))?;
    Ok(summary)
}

fn main() -> ExitCode {
    let criteria: [(&str, &str, fn() -> Outcome); 9] = [
        ("AC1", "Werner closed forms", werner_closed_forms),
        ("AC2", "Werner threshold coincidence", werner_threshold),
        ("AC3", "Gisin closed forms and x_max", gisin_closed_forms),
        ("AC4", "Gisin sign structure", gisin_sign_structure),
        ("AC5", "beta-state closed forms", beta_state_forms),
        ("AC6", "random-state inequality audit", inequality_audit),
        ("AC7", "oracle equivalence", oracle_equivalence),
        ("AC8", "conjecture scan", conjecture_scan),
        ("AC9", "eigensolver quality", eigensolver_quality),
    ];
    let mut failed = 0;
    for (id, name, check) in criteria {
        match check() {
            Ok(detail) => println!("[PASS] {id} {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {id} {name}: {detail}");
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
