//! Numerical maximization of the zero-free arc length over coefficient
//! vectors with a prescribed 1-D spectrum.
//!
//! The objective (largest arc between zeros of the rebuilt polynomial) is
//! scale-invariant and non-smooth: zeros collide and annihilate as
//! coefficients move, so the gap jumps at touching configurations.  The
//! maximizer is therefore a derivative-free pattern search over the unit
//! sphere of coefficient parameters, restarted from seeded random draws.
//! A coarse spherical-grid enumeration serves as an independent lower-bound
//! oracle, and an experiment harness produces result tables for spectrum
//! families with no known closed form.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectrum::{ProgressionParams, Spectrum};
use crate::trigpoly::{gap_of, TrigPoly1D};

/// Restart seeds are the master seed advanced by multiples of this odd
/// constant; parallel restarts stay reproducible and extending the restart
/// count keeps every earlier seed.
const SEED_SPLIT: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NormRule {
    UnitL2,
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub spectrum: Spectrum,
    pub restarts: u32,
    pub seed: u64,
    /// Max objective evaluations per restart.
    pub budget: u32,
    /// Pattern-search step floor: polls stop once the step shrinks past it.
    pub tol: f64,
    pub norm: NormRule,
}

impl SearchConfig {
    pub fn new(spectrum: Spectrum, restarts: u32, seed: u64, budget: u32, tol: f64) -> Result<Self> {
        if spectrum.is_empty() {
            return Err(Error::InvalidParameter("search spectrum is empty".into()));
        }
        if spectrum.dim() != 1 {
            return Err(Error::DimensionMismatch { expected: 1, got: spectrum.dim() });
        }
        if restarts == 0 {
            return Err(Error::InvalidParameter("restarts must be >= 1".into()));
        }
        if budget < 100 {
            return Err(Error::InvalidParameter(format!(
                "budget must be >= 100, got {budget}"
            )));
        }
        if !(tol > 0.0) {
            return Err(Error::InvalidParameter("tol must be positive".into()));
        }
        Ok(SearchConfig { spectrum, restarts, seed, budget, tol, norm: NormRule::UnitL2 })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchResult {
    /// Unit-norm parameter vector: (Re, Im) pairs for the positive
    /// frequencies in ascending order.
    pub best_coeffs: Vec<f64>,
    pub best_gap: f64,
    /// (start, length) of the winning arc.
    pub gap_interval: (f64, f64),
    pub evals_used: u64,
    /// (seed, best gap) per restart, in restart order.
    pub per_restart: Vec<(u64, f64)>,
}

fn l2_norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn build_poly(params: &[f64], positive: &[i64]) -> Option<TrigPoly1D> {
    let norm = l2_norm(params);
    if norm < 1e-12 {
        return None;
    }
    let half: Vec<(i64, Complex64)> = positive
        .iter()
        .enumerate()
        .map(|(i, &l)| (l, Complex64::new(params[2 * i] / norm, params[2 * i + 1] / norm)))
        .collect();
    TrigPoly1D::from_positive_half(&half).ok()
}

fn objective(params: &[f64], positive: &[i64]) -> f64 {
    match build_poly(params, positive) {
        Some(f) => gap_of(&f).map(|r| r.max_gap).unwrap_or(0.0),
        None => 0.0,
    }
}

/// Largest zero-free arc of the polynomial encoded by `params` ((Re, Im)
/// pairs for the positive frequencies of `spectrum`, ascending), after
/// normalization to unit coefficient norm.  Degenerate all-zero input maps
/// to 0.
pub fn gap_objective(params: &[f64], spectrum: &Spectrum) -> Result<f64> {
    let positive = spectrum.positive_scalars()?;
    if params.len() != 2 * positive.len() {
        return Err(Error::DimensionMismatch {
            expected: 2 * positive.len(),
            got: params.len(),
        });
    }
    Ok(objective(params, &positive))
}

/// Random orthonormal basis via Gram-Schmidt on Gaussian draws.  Polling
/// along rotated bases instead of fixed coordinates lets the search track
/// ridges where several coefficients must move together.
fn random_basis(n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n);
    while basis.len() < n {
        let mut v: Vec<f64> = (0..n).map(|_| StandardNormal.sample(rng)).collect();
        for b in &basis {
            let dot: f64 = v.iter().zip(b).map(|(a, c)| a * c).sum();
            v.iter_mut().zip(b).for_each(|(a, c)| *a -= dot * c);
        }
        let norm = l2_norm(&v);
        if norm > 1e-9 {
            v.iter_mut().for_each(|a| *a /= norm);
            basis.push(v);
        }
    }
    basis
}

/// Pattern search on the parameter sphere: each round polls +-h along a
/// freshly drawn orthonormal basis, takes the best improvement, expands the
/// step on success and shrinks it on failure.  When the step bottoms out
/// with budget left, it re-anneals to escape ridges.  Deterministic given
/// the rng state.
fn local_search(
    positive: &[i64],
    mut x: Vec<f64>,
    budget: u32,
    step_floor: f64,
    rng: &mut ChaCha8Rng,
) -> (Vec<f64>, f64, u32) {
    let n = x.len();
    let mut fx = objective(&x, positive);
    let mut used = 1u32;
    let mut h = 0.35f64;
    let floor = step_floor.max(1e-9);
    while used < budget {
        if h <= floor {
            h = 0.2; // re-anneal: the step collapsed but budget remains
        }
        let basis = random_basis(n, rng);
        let mut best: Option<(Vec<f64>, f64)> = None;
        'poll: for dir in &basis {
            for s in [1.0, -1.0] {
                if used >= budget {
                    break 'poll;
                }
                let y: Vec<f64> = x.iter().zip(dir).map(|(a, d)| a + s * h * d).collect();
                let v = objective(&y, positive);
                used += 1;
                if v > fx && best.as_ref().map_or(true, |(_, bv)| v > *bv) {
                    best = Some((y, v));
                }
            }
        }
        match best {
            Some((y, v)) => {
                x = y;
                fx = v;
                let norm = l2_norm(&x);
                if norm > 1e-12 {
                    x.iter_mut().for_each(|c| *c /= norm);
                }
                h = (h * 1.6).min(0.5);
            }
            None => h *= 0.5,
        }
    }
    (x, fx, used)
}

/// Multi-start maximization of the zero-free arc over unit-norm coefficient
/// vectors on `cfg.spectrum`.  Restarts run in parallel and reduce in seed
/// order; the whole run is deterministic given the config.  The returned gap
/// is gated against the ball bound of the spectrum.
pub fn estimate_max_gap(cfg: &SearchConfig) -> Result<SearchResult> {
    let positive = cfg.spectrum.positive_scalars()?;
    if positive.is_empty() {
        return Err(Error::InvalidParameter("search spectrum is empty".into()));
    }
    let n = 2 * positive.len();

    let runs: Vec<(u64, Vec<f64>, f64, u32)> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| {
            let seed_r = cfg.seed.wrapping_add((r as u64).wrapping_mul(SEED_SPLIT));
            let mut rng = ChaCha8Rng::seed_from_u64(seed_r);
            let mut x0: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
            let norm = l2_norm(&x0);
            if norm < 1e-9 {
                x0 = vec![0.0; n];
                x0[0] = 1.0;
            } else {
                x0.iter_mut().for_each(|c| *c /= norm);
            }
            let (x, fx, used) = local_search(&positive, x0, cfg.budget, cfg.tol, &mut rng);
            (seed_r, x, fx, used)
        })
        .collect();

    let mut best_idx = 0usize;
    for (i, run) in runs.iter().enumerate() {
        if run.2 > runs[best_idx].2 {
            best_idx = i;
        }
    }
    let per_restart: Vec<(u64, f64)> = runs.iter().map(|r| (r.0, r.2)).collect();
    let evals_used: u64 = runs.iter().map(|r| r.3 as u64).sum();
    let mut best_coeffs = runs[best_idx].1.clone();
    let norm = l2_norm(&best_coeffs);
    if norm > 1e-12 {
        best_coeffs.iter_mut().for_each(|c| *c /= norm);
    }

    // rebuild from the stored parameters; the reported gap must reproduce
    let report = match build_poly(&best_coeffs, &positive) {
        Some(f) => gap_of(&f)?,
        None => return Err(Error::ZeroPolynomial),
    };
    let best_gap = runs[best_idx].2;
    assert!(
        (report.max_gap - best_gap).abs() <= 1e-6,
        "reconstruction drift: {} vs {}",
        report.max_gap,
        best_gap
    );

    let bound = cfg.spectrum.ball_bound();
    if best_gap > bound + 1e-6 {
        return Err(Error::BallBoundGate { gap: best_gap, bound });
    }

    Ok(SearchResult {
        best_coeffs,
        best_gap,
        gap_interval: (report.gap_start, report.max_gap),
        evals_used,
        per_restart,
    })
}

/// Exhaustive lower-bound oracle for tiny spectra: enumerates coefficient
/// vectors on a spherical grid (translation degeneracy removed by forcing
/// the top coefficient real nonnegative), scans gaps by dense sampling, and
/// confirms the leading candidates with the rootfinder before reporting.
pub fn brute_force_max_gap(spectrum: &Spectrum, grid_per_dim: u32) -> Result<f64> {
    let positive = spectrum.positive_scalars()?;
    if positive.is_empty() {
        return Err(Error::InvalidParameter("brute force: spectrum is empty".into()));
    }
    if spectrum.len() > 6 {
        return Err(Error::InvalidParameter(format!(
            "brute force supports |S| <= 6, got {}",
            spectrum.len()
        )));
    }
    if !(2..=17).contains(&grid_per_dim) {
        return Err(Error::InvalidParameter(format!(
            "brute force grid must lie in 2..=17, got {grid_per_dim}"
        )));
    }
    let h = positive.len();
    let n = 2 * h;
    // parameter slice: Im(c_top) = 0, Re(c_top) >= 0; remaining n-1 sphere
    // coordinates in hyperspherical angles
    let m = n - 1; // sphere dimension count of free coordinates
    let angles = m - 1;
    let g = grid_per_dim as usize;
    let total: usize = g.pow(angles as u32).max(1);

    let params_for = |flat: usize| -> Vec<f64> {
        let mut phis = Vec::with_capacity(angles);
        let mut rest = flat;
        for a in 0..angles {
            let t = (rest % g) as f64 / (g - 1) as f64;
            rest /= g;
            // first angle stays in [0, pi/2] (top coefficient nonnegative),
            // middle angles span [0, pi], the last spans [0, 2 pi)
            let span = if a == 0 {
                0.5 * std::f64::consts::PI
            } else if a + 1 == angles {
                2.0 * std::f64::consts::PI * (g as f64 - 1.0) / g as f64
            } else {
                std::f64::consts::PI
            };
            phis.push(t * span);
        }
        // hyperspherical point in R^m: first coordinate is Re(c_top)
        let mut coords = Vec::with_capacity(m);
        let mut sin_prod = 1.0f64;
        for &phi in &phis {
            coords.push(sin_prod * phi.cos());
            sin_prod *= phi.sin();
        }
        coords.push(sin_prod);
        // assemble (Re, Im) pairs, top frequency last
        let mut params = vec![0.0; n];
        params[n - 2] = coords[0]; // Re(c_top)
        params[n - 1] = 0.0; // Im(c_top) fixed by translation
        for (j, &v) in coords[1..].iter().enumerate() {
            params[j] = v;
        }
        params
    };

    // dense scan, then rootfinder confirmation of the leaders
    let scanned: Vec<(usize, f64)> = (0..total)
        .into_par_iter()
        .map(|flat| {
            let params = params_for(flat);
            let gap = match build_poly(&params, &positive) {
                Some(f) => crate::trigpoly::dense_gap(&f, 10_000)
                    .map(|d| d.max_gap)
                    .unwrap_or(0.0),
                None => 0.0,
            };
            (flat, gap)
        })
        .collect();
    let mut order: Vec<usize> = (0..total).collect();
    order.sort_by(|&a, &b| {
        scanned[b]
            .1
            .partial_cmp(&scanned[a].1)
            .unwrap()
            .then(a.cmp(&b))
    });
    let confirm = order.len().min(32);
    let best = order[..confirm]
        .par_iter()
        .map(|&flat| objective(&params_for(flat), &positive))
        .reduce(|| 0.0, f64::max);
    Ok(best)
}

// --- experiment harness ---------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum ExperimentFamily {
    /// Progressions +-{N, N+b, ..., N+Kb} with b >= 2N, where no closed form
    /// is known; one row per K in 1..=k_max.
    ProgressionLargeB { n: u32, b: u32, k_max: u32 },
    /// +-{n^2 : N <= n <= N+K}; one row per K in 1..=k_max.
    Squares { n: u32, k_max: u32 },
    /// Independent inclusion of each frequency in 1..=nmax with probability
    /// tau; `count` seeded draws.
    RandomSpectra { nmax: u32, tau: f64, count: u32 },
    /// +-{1 + subset sums of 2, 4, ..., 2^order}; one row per order.
    Nets { order_max: u32 },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub schema_version: u32,
    pub family: String,
    pub label: String,
    pub positive_frequencies: Vec<i64>,
    pub size: usize,
    pub ball_diameter_bound: f64,
    pub closed_form_gap: Option<f64>,
    pub estimated_gap: f64,
    pub restarts: u32,
    pub budget: u32,
    pub seed: u64,
}

pub const EXPERIMENT_SCHEMA_VERSION: u32 = 1;

/// Search settings shared by every row of an experiment.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ExperimentSettings {
    pub restarts: u32,
    pub budget: u32,
    pub seed: u64,
    pub tol: f64,
}

fn family_instances(family: &ExperimentFamily) -> Result<Vec<(String, String, Spectrum, Option<f64>)>> {
    let mut out = Vec::new();
    match *family {
        ExperimentFamily::ProgressionLargeB { n, b, k_max } => {
            if b < 2 * n {
                return Err(Error::InvalidParameter(format!(
                    "large-step family needs b >= 2N, got b={b}, N={n}"
                )));
            }
            for k in 1..=k_max {
                let p = ProgressionParams::new(n, k, b)?;
                let s = Spectrum::progression(&p);
                out.push((
                    "progression_large_b".into(),
                    format!("N={n} b={b} K={k}"),
                    s,
                    None, // no closed form in this regime
                ));
            }
        }
        ExperimentFamily::Squares { n, k_max } => {
            for k in 1..=k_max {
                let s = Spectrum::squares(n, k)?;
                out.push(("squares".into(), format!("N={n} K={k}"), s, None));
            }
        }
        ExperimentFamily::RandomSpectra { nmax, tau, count } => {
            for i in 0..count {
                // spectrum seeds split off index i; the search seed splits
                // separately per row below
                let s = Spectrum::random(nmax, tau, (i as u64).wrapping_mul(SEED_SPLIT))?;
                if s.is_empty() {
                    continue;
                }
                out.push((
                    "random".into(),
                    format!("Nmax={nmax} tau={tau} draw={i}"),
                    s,
                    None,
                ));
            }
        }
        ExperimentFamily::Nets { order_max } => {
            for order in 1..=order_max {
                let mut params = vec![1i64];
                params.extend((1..=order).map(|i| 1i64 << i));
                let s = Spectrum::net(&params)?;
                out.push(("net".into(), format!("order={order}"), s, None));
            }
        }
    }
    Ok(out)
}

/// Runs the search on every instance of the family and returns one row per
/// instance.  Row seeds derive from `settings.seed` by the restart splitting
/// rule, so reruns are reproducible and rows are independent.
pub fn run_experiment(
    family: &ExperimentFamily,
    settings: &ExperimentSettings,
) -> Result<Vec<ExperimentRow>> {
    let instances = family_instances(family)?;
    let mut rows = Vec::with_capacity(instances.len());
    for (i, (family_name, label, spectrum, closed_form)) in instances.into_iter().enumerate() {
        let row_seed = settings
            .seed
            .wrapping_add((i as u64).wrapping_mul(SEED_SPLIT.rotate_left(17)));
        let cfg = SearchConfig::new(
            spectrum.clone(),
            settings.restarts,
            row_seed,
            settings.budget,
            settings.tol,
        )?;
        let result = estimate_max_gap(&cfg)?;
        rows.push(ExperimentRow {
            schema_version: EXPERIMENT_SCHEMA_VERSION,
            family: family_name,
            label,
            positive_frequencies: spectrum.positive_scalars()?,
            size: spectrum.len(),
            ball_diameter_bound: spectrum.ball_bound(),
            closed_form_gap: closed_form,
            estimated_gap: result.best_gap,
            restarts: settings.restarts,
            budget: settings.budget,
            seed: row_seed,
        });
    }
    Ok(rows)
}

/// CSV rendering of experiment rows (header + one line per row); frequency
/// lists are space-separated to keep cells comma-free.
pub fn rows_to_csv(rows: &[ExperimentRow]) -> String {
    let mut out = String::from(
        "schema_version,family,label,positive_frequencies,size,ball_diameter_bound,closed_form_gap,estimated_gap,restarts,budget,seed\n",
    );
    for r in rows {
        let freqs = r
            .positive_frequencies
            .iter()
            .map(|f| f.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        let closed = r
            .closed_form_gap
            .map(|v| format!("{v:.12e}"))
            .unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{:.12e},{},{:.12e},{},{},{}\n",
            r.schema_version,
            r.family,
            r.label,
            freqs,
            r.size,
            r.ball_diameter_bound,
            closed,
            r.estimated_gap,
            r.restarts,
            r.budget,
            r.seed
        ));
    }
    out
}
