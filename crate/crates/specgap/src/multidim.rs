//! Trigonometric polynomials on the d-torus: evaluation, the frequency-
//! removing fold, and sampled searches for the largest zero-free ball or
//! axis-aligned cube.
//!
//! The fold replaces f by f(x) + f(x + mu) with mu = nu / (2 |nu|^2); every
//! coefficient picks up the factor 1 + e^{2 pi i <mu, lambda>}, which is -1+1=0
//! at lambda = +-nu.  Since <mu, lambda> is the exact rational
//! <nu,lambda>/(2|nu|^2), vanishing multipliers are detected in integer
//! arithmetic and the removed frequencies are dropped exactly, never left as
//! roundoff dust.
//!
//! The region searches are sampled lower-bound maximizers, not certifications:
//! they scan a lattice for sign-constant candidate centers, grow the region by
//! bisection against a sign test, and locally refine the center.  Boundary
//! sampling always includes the exact extreme points (axis points of a ball,
//! corners of a cube) so that the saturating single-frequency cases measure
//! their known tangent radii to machine precision rather than overshooting.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectrum::{FrequencyVector, Spectrum};
use crate::trigpoly::TrigPoly1D;

const TAU: f64 = 2.0 * std::f64::consts::PI;
const HERMITIAN_TOL: f64 = 1e-12;

/// Coefficients below this magnitude are dropped after a fold.
const FOLD_PRUNE_TOL: f64 = 1e-12;

/// A real trigonometric polynomial on T^d.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPolyNd {
    dim: usize,
    terms: BTreeMap<FrequencyVector, Complex64>,
}

impl TrigPolyNd {
    /// Builds from (frequency, coefficient) pairs; duplicates are summed.
    /// The support must be symmetric with c(-lambda) = conj(c(lambda)).
    pub fn new(dim: usize, pairs: Vec<(FrequencyVector, Complex64)>) -> Result<Self> {
        let mut terms: BTreeMap<FrequencyVector, Complex64> = BTreeMap::new();
        for (v, c) in pairs {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: v.dim() });
            }
            *terms.entry(v).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        terms.retain(|_, c| c.norm() > 0.0);
        let scale = terms.values().map(|c| c.norm()).fold(0.0, f64::max);
        let tol = HERMITIAN_TOL * scale.max(1.0);
        for (v, c) in &terms {
            let mirror = terms
                .get(&v.negated())
                .copied()
                .unwrap_or(Complex64::new(0.0, 0.0));
            if (mirror.conj() - *c).norm() > tol {
                return Err(Error::NotHermitian(v.components().to_vec()));
            }
        }
        Ok(TrigPolyNd { dim, terms })
    }

    /// Positive-half constructor: mirrors each canonical frequency exactly.
    pub fn from_canonical_half(dim: usize, half: &[(FrequencyVector, Complex64)]) -> Result<Self> {
        let mut pairs = Vec::with_capacity(2 * half.len());
        for (v, c) in half {
            if !v.is_canonical() {
                return Err(Error::InvalidParameter(format!(
                    "half-spectrum frequency {:?} is not canonical",
                    v.components()
                )));
            }
            pairs.push((v.clone(), *c));
            pairs.push((v.negated(), c.conj()));
        }
        Self::new(dim, pairs)
    }

    /// Embeds a 1-D polynomial as a d=1 torus polynomial.
    pub fn from_1d(f: &TrigPoly1D) -> Self {
        let terms = f
            .terms()
            .iter()
            .map(|&(l, c)| (FrequencyVector::new(vec![l]).unwrap(), c))
            .collect();
        TrigPolyNd { dim: 1, terms }
    }

    /// Random Hermitian coefficients (standard complex normal on the
    /// canonical half of the spectrum), deterministic given the rng state.
    pub fn random_on<R: rand::Rng>(spectrum: &Spectrum, rng: &mut R) -> Result<Self> {
        use rand_distr::StandardNormal;
        if spectrum.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        let half: Vec<(FrequencyVector, Complex64)> = spectrum
            .positive_half()
            .into_iter()
            .map(|v| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                (v, Complex64::new(re, im))
            })
            .collect();
        Self::from_canonical_half(spectrum.dim(), &half)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FrequencyVector, &Complex64)> {
        self.terms.iter()
    }

    pub fn coeff(&self, v: &FrequencyVector) -> Complex64 {
        self.terms.get(v).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        Spectrum::from_vectors(
            self.terms.keys().map(|v| v.components().to_vec()).collect(),
            false,
        )
    }

    pub fn coeff_scale(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() || self.terms.values().all(|c| c.norm() < 1e-14)
    }

    pub fn evaluate_complex(&self, x: &[f64]) -> Result<Complex64> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        Ok(self.eval_unchecked(x))
    }

    fn eval_unchecked(&self, x: &[f64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (v, c) in &self.terms {
            let phase: f64 = v
                .components()
                .iter()
                .zip(x)
                .map(|(&l, &xi)| l as f64 * xi)
                .sum();
            acc += c * Complex64::from_polar(1.0, TAU * phase);
        }
        acc
    }

    /// f(x).  The imaginary residue is roundoff by symmetry; checked against
    /// 1e-10 * sum|c| and discarded.
    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        let v = self.evaluate_complex(x)?;
        debug_assert!(
            v.im.abs() <= 1e-10 * self.coeff_scale().max(f64::MIN_POSITIVE),
            "imaginary residue {} exceeds realness tolerance",
            v.im
        );
        Ok(v.re)
    }
}

/// f(x) + f(x + mu) with mu = nu / (2 |nu|^2).  Annihilates +-nu exactly;
/// other coefficients are multiplied by 1 + e^{2 pi i <nu,lambda>/(2|nu|^2)},
/// evaluated exactly at the integer points (multiplier 2 or 0).
pub fn fold(f: &TrigPolyNd, nu: &FrequencyVector) -> Result<TrigPolyNd> {
    if !f.terms.contains_key(nu) {
        return Err(Error::FrequencyNotPresent(nu.components().to_vec()));
    }
    let den = 2 * nu.norm_l2_sq();
    let mut terms = BTreeMap::new();
    for (v, c) in &f.terms {
        let num = nu.dot(v.components());
        let r = num.rem_euclid(den);
        let mult = if r == 0 {
            Complex64::new(2.0, 0.0)
        } else if 2 * r == den {
            continue; // multiplier exactly zero; +-nu always land here
        } else {
            Complex64::new(1.0, 0.0) + Complex64::from_polar(1.0, TAU * r as f64 / den as f64)
        };
        let folded = c * mult;
        if folded.norm() > FOLD_PRUNE_TOL {
            terms.insert(v.clone(), folded);
        }
    }
    assert!(!terms.contains_key(nu) && !terms.contains_key(&nu.negated()));
    Ok(TrigPolyNd { dim: f.dim, terms })
}

/// The translation vector mu = nu / (2 |nu|^2) of a fold.
pub fn fold_shift(nu: &FrequencyVector) -> Vec<f64> {
    let den = 2.0 * nu.norm_l2_sq() as f64;
    nu.components().iter().map(|&l| l as f64 / den).collect()
}

// --- region sampling ----------------------------------------------------------

fn wrap_point(x: &[f64]) -> Vec<f64> {
    x.iter().map(|&v| v.rem_euclid(1.0)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegionShape {
    Ball,
    Cube,
}

/// Interior lattice half-counts per axis.  Higher dimensions get coarser
/// lattices so a sign test stays a few thousand points.
fn interior_half_count(d: usize, resolution: usize) -> i64 {
    match d {
        1 => resolution.max(64) as i64,
        2 => resolution.min(16) as i64,
        _ => resolution.min(6) as i64,
    }
}

/// Exact extreme points of the region: axis points of a ball, corners of a
/// cube.  These pin the saturating single-frequency cases to machine
/// precision; the dense boundary only has to cover oblique tangencies.
fn extreme_points(shape: RegionShape, center: &[f64], r: f64) -> Vec<Vec<f64>> {
    let d = center.len();
    match shape {
        RegionShape::Ball => {
            let mut pts = Vec::with_capacity(2 * d);
            for i in 0..d {
                for s in [-1.0, 1.0] {
                    let mut p = center.to_vec();
                    p[i] += s * r;
                    pts.push(wrap_point(&p));
                }
            }
            pts
        }
        RegionShape::Cube => (0..1usize << d)
            .map(|mask| {
                let p: Vec<f64> = center
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c + if mask >> i & 1 == 1 { r } else { -r })
                    .collect();
                wrap_point(&p)
            })
            .collect(),
    }
}

fn interior_lattice(shape: RegionShape, center: &[f64], r: f64, n: i64) -> Vec<Vec<f64>> {
    let d = center.len();
    let step = r / n as f64;
    let mut pts = Vec::new();
    let mut idx = vec![-n; d];
    'lattice: loop {
        let off: Vec<f64> = idx.iter().map(|&i| i as f64 * step).collect();
        let inside = match shape {
            RegionShape::Ball => off.iter().map(|o| o * o).sum::<f64>() <= r * r,
            RegionShape::Cube => true,
        };
        if inside {
            let p: Vec<f64> = center.iter().zip(&off).map(|(c, o)| c + o).collect();
            pts.push(wrap_point(&p));
        }
        for k in 0..d {
            idx[k] += 1;
            if idx[k] <= n {
                continue 'lattice;
            }
            idx[k] = -n;
        }
        break;
    }
    pts
}

/// Dense boundary sampling.  Counts are fixed so that the sampled-tangency
/// overshoot r(1 - cos(pi/m)) stays below 1e-6 for every radius in range.
fn dense_boundary(shape: RegionShape, center: &[f64], r: f64) -> Vec<Vec<f64>> {
    let d = center.len();
    let mut pts = Vec::new();
    match (shape, d) {
        (_, 1) => {} // endpoints are already the extreme points
        (RegionShape::Ball, 2) => {
            let m = 4096;
            for k in 0..m {
                let th = TAU * k as f64 / m as f64;
                let p = [center[0] + r * th.cos(), center[1] + r * th.sin()];
                pts.push(wrap_point(&p));
            }
        }
        (RegionShape::Ball, _) => {
            // Fibonacci sphere
            let m = 4096;
            let golden = std::f64::consts::PI * (3.0 - 5.0f64.sqrt());
            for k in 0..m {
                let z = 1.0 - 2.0 * (k as f64 + 0.5) / m as f64;
                let rho = (1.0 - z * z).sqrt();
                let th = golden * k as f64;
                let p = [
                    center[0] + r * rho * th.cos(),
                    center[1] + r * rho * th.sin(),
                    center[2] + r * z,
                ];
                pts.push(wrap_point(&p));
            }
        }
        (RegionShape::Cube, 2) => {
            let m = 1024;
            for edge in 0..4 {
                for k in 0..=m {
                    let t = -r + 2.0 * r * k as f64 / m as f64;
                    let p = match edge {
                        0 => [center[0] + t, center[1] - r],
                        1 => [center[0] + t, center[1] + r],
                        2 => [center[0] - r, center[1] + t],
                        _ => [center[0] + r, center[1] + t],
                    };
                    pts.push(wrap_point(&p));
                }
            }
        }
        (RegionShape::Cube, _) => {
            let m = 48;
            for axis in 0..3 {
                for s in [-r, r] {
                    for i in 0..=m {
                        for j in 0..=m {
                            let u = -r + 2.0 * r * i as f64 / m as f64;
                            let v = -r + 2.0 * r * j as f64 / m as f64;
                            let mut p = center.to_vec();
                            p[axis] += s;
                            p[(axis + 1) % 3] += u;
                            p[(axis + 2) % 3] += v;
                            pts.push(wrap_point(&p));
                        }
                    }
                }
            }
        }
    }
    pts
}

/// All sample points of the region, for callers that need the full set.
/// `r` is the ball radius or the cube half-side.
fn region_samples(shape: RegionShape, center: &[f64], r: f64, n_int: i64) -> Vec<Vec<f64>> {
    let mut pts = extreme_points(shape, center, r);
    pts.extend(interior_lattice(shape, center, r, n_int));
    pts.extend(dense_boundary(shape, center, r));
    pts
}

/// Sign-constancy test, staged cheapest-first so violated radii exit early
/// during bisection: extreme points, then the interior lattice, then the
/// dense boundary.
fn region_ok(f: &TrigPolyNd, shape: RegionShape, center: &[f64], r: f64, n_int: i64, sign: f64) -> bool {
    let pass = |pts: Vec<Vec<f64>>| pts.iter().all(|p| sign * f.eval_unchecked(p).re > 0.0);
    pass(extreme_points(shape, center, r))
        && pass(interior_lattice(shape, center, r, n_int))
        && pass(dense_boundary(shape, center, r))
}

/// Outcome of a zero-free region search.  `radius` is the ball radius or the
/// cube half-side; the region is sign-constant at all sampled points (stated
/// interior resolution plus the dense boundary), so it is a lower-bound
/// witness, never a certification.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BallSearchResult {
    pub center: Vec<f64>,
    pub radius: f64,
    pub sign: i8,
    /// Interior lattice half-count per axis used by the sign test.
    pub resolution: usize,
    pub shape: RegionShape,
}

impl BallSearchResult {
    /// Diameter (ball) or full side length (cube).
    pub fn extent(&self) -> f64 {
        2.0 * self.radius
    }
}

// pre: ok(lo) holds, ok(hi) fails
fn bisect_radius(ok: &dyn Fn(f64) -> bool, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..60 {
        if hi - lo < 1e-12 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if ok(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Largest sampled sign-constant radius at `center`, by bisection on [0, cap].
fn max_radius_at(
    f: &TrigPolyNd,
    shape: RegionShape,
    center: &[f64],
    n_int: i64,
    cap: f64,
) -> Option<(f64, f64)> {
    let v0 = f.eval_unchecked(center).re;
    if v0 == 0.0 {
        return None;
    }
    let sign = v0.signum();
    let ok = |r: f64| region_ok(f, shape, center, r, n_int, sign);
    let probe = cap * 1e-4;
    if !ok(probe) {
        return Some((0.0, sign));
    }
    if ok(cap) {
        return Some((cap, sign));
    }
    Some((bisect_radius(&ok, probe, cap), sign))
}

/// Radius probe for a polled center during refinement: returns the max
/// radius only if it can exceed `best_r`; bails out cheaply otherwise.
/// Moving the center by h changes the inscribed radius by at most h, so a
/// window of width a couple of h around best_r brackets the answer.
fn poll_radius(
    f: &TrigPolyNd,
    shape: RegionShape,
    center: &[f64],
    n_int: i64,
    cap: f64,
    best_r: f64,
    w: f64,
) -> Option<f64> {
    let v0 = f.eval_unchecked(center).re;
    if v0 == 0.0 {
        return None;
    }
    let sign = v0.signum();
    let ok = |r: f64| region_ok(f, shape, center, r, n_int, sign);
    let lo0 = (best_r - w).max(cap * 1e-6);
    if !ok(lo0) {
        return None; // max radius here is below best_r - w: no improvement
    }
    let mut lo = lo0;
    let mut hi = (best_r + w).min(cap);
    let mut span = 2.0 * w;
    while ok(hi) {
        if hi >= cap {
            return Some(hi);
        }
        lo = hi;
        hi = (hi + span).min(cap);
        span *= 2.0;
    }
    Some(bisect_radius(&ok, lo, hi))
}

/// Searches for the largest sampled zero-free region of the given shape.
/// Grid-scans candidate centers, grows each by radius bisection, refines the
/// best centers by coordinate pattern search, and returns the winner.
/// Deterministic: parallel candidates reduce in lattice order.
pub fn largest_zero_free_region(
    f: &TrigPolyNd,
    shape: RegionShape,
    grid_n: usize,
    refine_iters: usize,
) -> Result<BallSearchResult> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let d = f.dim;
    if d > 3 {
        return Err(Error::InvalidParameter(format!(
            "region search supports d <= 3, got {d}"
        )));
    }
    let grid_n = grid_n.max(4);
    let n_int = interior_half_count(d, 32);
    let cap = match shape {
        RegionShape::Ball => 0.5 * (d as f64).sqrt(),
        RegionShape::Cube => 0.5,
    };

    // candidate centers: lattice points whose |f| is locally maximal
    let total = grid_n.pow(d as u32);
    let point_at = |flat: usize| -> Vec<f64> {
        let mut p = Vec::with_capacity(d);
        let mut rest = flat;
        for _ in 0..d {
            p.push((rest % grid_n) as f64 / grid_n as f64);
            rest /= grid_n;
        }
        p
    };
    let values: Vec<f64> = (0..total)
        .into_par_iter()
        .map(|i| f.eval_unchecked(&point_at(i)).re)
        .collect();
    let neighbor = |flat: usize, axis: usize, delta: i64| -> usize {
        let scale = grid_n.pow(axis as u32);
        let coord = (flat / scale) % grid_n;
        let moved = (coord as i64 + delta).rem_euclid(grid_n as i64) as usize;
        flat - coord * scale + moved * scale
    };
    let mut candidates: Vec<usize> = (0..total)
        .filter(|&i| {
            let v = values[i].abs();
            v > 0.0
                && (0..d).all(|ax| {
                    v >= values[neighbor(i, ax, 1)].abs() && v >= values[neighbor(i, ax, -1)].abs()
                })
        })
        .collect();
    // strongest few candidates; lattice order breaks ties
    candidates.sort_by(|&a, &b| {
        values[b]
            .abs()
            .partial_cmp(&values[a].abs())
            .unwrap()
            .then(a.cmp(&b))
    });
    candidates.truncate(8);
    if candidates.is_empty() {
        candidates.push(0);
    }

    let searched: Vec<Option<BallSearchResult>> = candidates
        .par_iter()
        .map(|&flat| {
            let mut center = point_at(flat);
            let (mut best_r, sign) = max_radius_at(f, shape, &center, n_int, cap)?;
            let mut h = 0.5 / grid_n as f64;
            for _ in 0..refine_iters {
                let mut improved = false;
                for ax in 0..d {
                    for dir in [-1.0, 1.0] {
                        let mut cand = center.clone();
                        cand[ax] = (cand[ax] + dir * h).rem_euclid(1.0);
                        if let Some(r) =
                            poll_radius(f, shape, &cand, n_int, cap, best_r, 2.0 * h)
                        {
                            if r > best_r {
                                best_r = r;
                                center = cand;
                                improved = true;
                            }
                        }
                    }
                }
                if !improved {
                    h *= 0.5;
                    if h < 1e-9 {
                        break;
                    }
                }
            }
            Some(BallSearchResult {
                center,
                radius: best_r,
                sign: if sign > 0.0 { 1 } else { -1 },
                resolution: n_int as usize,
                shape,
            })
        })
        .collect();

    searched
        .into_iter()
        .flatten()
        .max_by(|a, b| a.radius.partial_cmp(&b.radius).unwrap())
        .ok_or(Error::ZeroPolynomial)
}

pub fn largest_zero_free_ball(f: &TrigPolyNd, grid_n: usize, refine_iters: usize) -> Result<BallSearchResult> {
    largest_zero_free_region(f, RegionShape::Ball, grid_n, refine_iters)
}

pub fn largest_zero_free_cube(f: &TrigPolyNd, grid_n: usize, refine_iters: usize) -> Result<BallSearchResult> {
    largest_zero_free_region(f, RegionShape::Cube, grid_n, refine_iters)
}

/// Verdict of comparing a found zero-free extent against a bound.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundCheck {
    pub found_extent: f64,
    pub bound: f64,
    /// bound - found_extent; negative beyond 1e-6 means violation.
    pub margin: f64,
    pub pass: bool,
    pub result: Option<BallSearchResult>,
}

/// Pure verdict rule, exposed so that fabricated extents can be judged in
/// negative-control tests.
pub fn judge_extent(found_extent: f64, bound: f64) -> BoundCheck {
    BoundCheck {
        found_extent,
        bound,
        margin: bound - found_extent,
        pass: found_extent <= bound + 1e-6,
        result: None,
    }
}

/// Finds the largest sampled zero-free ball and checks its diameter against
/// the ball bound of the spectrum.
pub fn check_ball_bound(f: &TrigPolyNd, grid_n: usize, refine_iters: usize) -> Result<BoundCheck> {
    let bound = f.spectrum()?.ball_bound();
    let found = largest_zero_free_ball(f, grid_n, refine_iters)?;
    let mut check = judge_extent(found.extent(), bound);
    check.result = Some(found);
    Ok(check)
}

/// Finds the largest sampled zero-free axis-aligned cube and checks its side
/// against the cube bound of the spectrum.
pub fn check_cube_bound(f: &TrigPolyNd, grid_n: usize, refine_iters: usize) -> Result<BoundCheck> {
    let bound = f.spectrum()?.cube_bound();
    let found = largest_zero_free_cube(f, grid_n, refine_iters)?;
    let mut check = judge_extent(found.extent(), bound);
    check.result = Some(found);
    Ok(check)
}

/// Outcome of the executable induction step: if f > 0 on the sampled ball
/// B(y, R), then fold(f, nu) > 0 on the sampled shrunk ball
/// B(y - mu/2, R - |mu|/2).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FoldPositivityReport {
    pub pass: bool,
    /// Set when the claim is vacuous: the fold is identically zero or the
    /// shrunk ball is empty.
    pub degenerate: bool,
    pub min_before: f64,
    pub min_after: f64,
    pub shrunk_center: Vec<f64>,
    pub shrunk_radius: f64,
}

pub fn fold_positivity(
    f: &TrigPolyNd,
    nu: &FrequencyVector,
    center: &[f64],
    radius: f64,
    resolution: usize,
) -> Result<FoldPositivityReport> {
    if center.len() != f.dim {
        return Err(Error::DimensionMismatch { expected: f.dim, got: center.len() });
    }
    let n_int = interior_half_count(f.dim, resolution);
    let before = region_samples(RegionShape::Ball, center, radius, n_int);
    let min_before = before
        .iter()
        .map(|p| f.eval_unchecked(p).re)
        .fold(f64::INFINITY, f64::min);
    if min_before <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "precondition failed: f is not positive on the sampled ball (min {min_before:.3e})"
        )));
    }

    let folded = fold(f, nu)?;
    let mu = fold_shift(nu);
    let mu_norm = mu.iter().map(|m| m * m).sum::<f64>().sqrt();
    let shrunk_center: Vec<f64> = center
        .iter()
        .zip(&mu)
        .map(|(c, m)| (c - 0.5 * m).rem_euclid(1.0))
        .collect();
    let shrunk_radius = radius - 0.5 * mu_norm;

    if folded.is_zero() || shrunk_radius <= 0.0 {
        return Ok(FoldPositivityReport {
            pass: true,
            degenerate: true,
            min_before,
            min_after: f64::INFINITY,
            shrunk_center,
            shrunk_radius,
        });
    }
    let after = region_samples(RegionShape::Ball, &shrunk_center, shrunk_radius, n_int);
    let min_after = after
        .iter()
        .map(|p| folded.eval_unchecked(p).re)
        .fold(f64::INFINITY, f64::min);
    Ok(FoldPositivityReport {
        pass: min_after > 0.0,
        degenerate: false,
        min_before,
        min_after,
        shrunk_center,
        shrunk_radius,
    })
}

// --- JSON schema ----------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
pub struct NdTermJson {
    pub lambda: Vec<i64>,
    pub re: f64,
    pub im: f64,
}

/// On-disk form of an N-D polynomial: the full symmetric term list.
#[derive(Debug, Serialize, Deserialize)]
pub struct NdPolyJson {
    pub d: usize,
    pub terms: Vec<NdTermJson>,
}

impl TrigPolyNd {
    pub fn to_json(&self) -> NdPolyJson {
        NdPolyJson {
            d: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(v, c)| NdTermJson {
                    lambda: v.components().to_vec(),
                    re: c.re,
                    im: c.im,
                })
                .collect(),
        }
    }

    pub fn from_json(json: &NdPolyJson) -> Result<Self> {
        let pairs = json
            .terms
            .iter()
            .map(|t| {
                FrequencyVector::new(t.lambda.clone()).map(|v| (v, Complex64::new(t.re, t.im)))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(json.d, pairs)
    }
}
