//! Real trigonometric polynomials on the circle and their zero structure.
//!
//! A polynomial is stored as Fourier coefficients c(lambda) over a symmetric
//! set of nonzero integer frequencies with c(-lambda) = conj(c(lambda)), so
//! evaluation is real.  Substituting z = e^{2 pi i t} turns f into a Laurent
//! polynomial; multiplying by z^M (M = max |lambda|) gives an ordinary
//! polynomial P of degree 2M whose unit-circle roots are the zeros of f.
//! `circle_zeros` locates them through the dense rootfinder and polishes each
//! angle on f itself; `dense_gap` is a deliberately separate estimation path
//! (uniform sampling plus sign changes) used to cross-check the first one.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots;
use crate::spectrum::Spectrum;

const TAU: f64 = 2.0 * std::f64::consts::PI;

/// Tolerance for the conjugate-symmetry check in constructors, relative to
/// the largest coefficient (absolute for unit-scale data).
const HERMITIAN_TOL: f64 = 1e-12;

/// Everything below this coefficient magnitude is the zero polynomial.
pub const ZERO_POLY_TOL: f64 = 1e-14;

/// Roots are accepted as on-circle when | |z| - 1 | is below this.
pub const DEFAULT_CIRCLE_TOL: f64 = 1e-8;

/// Acceptance threshold for refined zeros, relative to the coefficient scale.
pub const DEFAULT_REFINE_TOL: f64 = 1e-10;

/// Root angles closer than this merge before refinement (touching zeros
/// split a double root into a tight pair).
const CLUSTER_TOL: f64 = 1e-6;

/// Refined angles closer than this collapse into one zero.
const DEDUP_TOL: f64 = 1e-10;

/// Roots well outside the circle band are still checked against f itself;
/// they are kept only if refinement brings the residual under the acceptance
/// threshold.  Double roots of large-coefficient polynomials are displaced
/// off the circle by roughly sqrt(residual * conditioning), so the band is
/// generous; acceptance never relies on it, only on the f-residual.
const RESCUE_BAND: f64 = 1e-3;

fn cyc_dist(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

/// A real trigonometric polynomial in one variable, t on the unit circle.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPoly1D {
    /// (frequency, coefficient), strictly ascending, no zero frequency.
    terms: Vec<(i64, Complex64)>,
}

impl TrigPoly1D {
    /// Builds from explicit (frequency, coefficient) pairs.  Frequencies must
    /// be nonzero; duplicates are summed; the set must be symmetric with
    /// c(-lambda) equal to conj(c(lambda)) within tolerance.
    pub fn new(pairs: Vec<(i64, Complex64)>) -> Result<Self> {
        let mut terms: Vec<(i64, Complex64)> = Vec::with_capacity(pairs.len());
        let mut sorted = pairs;
        sorted.sort_by_key(|&(l, _)| l);
        for (l, c) in sorted {
            if l == 0 {
                return Err(Error::ZeroFrequency);
            }
            match terms.last_mut() {
                Some(last) if last.0 == l => last.1 += c,
                _ => terms.push((l, c)),
            }
        }
        terms.retain(|&(_, c)| c.norm() > 0.0);
        let scale = terms.iter().map(|&(_, c)| c.norm()).fold(0.0, f64::max);
        let tol = HERMITIAN_TOL * scale.max(1.0);
        for &(l, c) in &terms {
            let mirror = terms
                .binary_search_by_key(&-l, |&(m, _)| m)
                .map(|i| terms[i].1)
                .unwrap_or(Complex64::new(0.0, 0.0));
            if (mirror.conj() - c).norm() > tol {
                return Err(Error::NotHermitian(vec![l]));
            }
        }
        Ok(TrigPoly1D { terms })
    }

    /// Builds from the positive-frequency half; the negative half is mirrored
    /// exactly, so the result is Hermitian by construction.
    pub fn from_positive_half(half: &[(i64, Complex64)]) -> Result<Self> {
        let mut pairs = Vec::with_capacity(2 * half.len());
        for &(l, c) in half {
            if l <= 0 {
                return Err(Error::InvalidParameter(format!(
                    "positive half must have positive frequencies, got {l}"
                )));
            }
            pairs.push((l, c));
            pairs.push((-l, c.conj()));
        }
        Self::new(pairs)
    }

    pub fn terms(&self) -> &[(i64, Complex64)] {
        &self.terms
    }

    pub fn coeff(&self, lambda: i64) -> Complex64 {
        self.terms
            .binary_search_by_key(&lambda, |&(l, _)| l)
            .map(|i| self.terms[i].1)
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn positive_terms(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.terms.iter().copied().filter(|&(l, _)| l > 0)
    }

    pub fn spectrum(&self) -> Spectrum {
        let vs: Vec<Vec<i64>> = self.terms.iter().map(|&(l, _)| vec![l]).collect();
        Spectrum::from_vectors(vs, true).expect("terms are valid frequencies")
    }

    /// Sum of coefficient magnitudes; the natural scale for residual checks.
    pub fn coeff_scale(&self) -> f64 {
        self.terms.iter().map(|&(_, c)| c.norm()).sum()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.iter().map(|&(_, c)| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.max_abs_coeff() < ZERO_POLY_TOL
    }

    /// The full exponential sum at t, before discarding the imaginary part.
    pub fn evaluate_complex(&self, t: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &(l, c) in &self.terms {
            acc += c * Complex64::from_polar(1.0, TAU * l as f64 * t);
        }
        acc
    }

    /// f(t).  The imaginary part of the sum is roundoff by symmetry; it is
    /// checked against 1e-10 * (sum |c|) and discarded.
    pub fn evaluate(&self, t: f64) -> f64 {
        let v = self.evaluate_complex(t);
        debug_assert!(
            v.im.abs() <= 1e-10 * self.coeff_scale().max(f64::MIN_POSITIVE),
            "imaginary residue {} exceeds realness tolerance",
            v.im
        );
        v.re
    }

    /// f, f', f'' at t in one pass.
    pub fn eval_with_derivs(&self, t: f64) -> (f64, f64, f64) {
        let mut f = 0.0;
        let mut d1 = 0.0;
        let mut d2 = 0.0;
        for &(l, c) in &self.terms {
            let w = TAU * l as f64;
            let e = Complex64::from_polar(1.0, w * t);
            let v = c * e;
            f += v.re;
            d1 += -w * v.im; // Re(i w v)
            d2 += -w * w * v.re;
        }
        (f, d1, d2)
    }

    /// The translate t -> t + s, i.e. coefficients c(lambda) e^{2 pi i lambda s}.
    pub fn translate(&self, s: f64) -> TrigPoly1D {
        let terms = self
            .terms
            .iter()
            .map(|&(l, c)| (l, c * Complex64::from_polar(1.0, TAU * l as f64 * s)))
            .collect();
        TrigPoly1D { terms }
    }

    pub fn scaled(&self, factor: f64) -> TrigPoly1D {
        let terms = self.terms.iter().map(|&(l, c)| (l, c * factor)).collect();
        TrigPoly1D { terms }
    }

    /// Random Hermitian coefficients (standard complex normal on the positive
    /// half) over a 1-D spectrum.  Deterministic given the rng state.
    pub fn random_on<R: rand::Rng>(spectrum: &Spectrum, rng: &mut R) -> Result<TrigPoly1D> {
        use rand_distr::StandardNormal;
        let pos = spectrum.positive_scalars()?;
        if pos.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        let half: Vec<(i64, Complex64)> = pos
            .iter()
            .map(|&l| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                (l, Complex64::new(re, im))
            })
            .collect();
        Self::from_positive_half(&half)
    }

    /// P(z) = sum c(lambda) z^{lambda + M} with M = max |lambda|.
    pub fn algebraic_form(&self) -> Result<AlgebraicForm> {
        if self.terms.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        let m = self.terms.iter().map(|&(l, _)| l.abs()).max().unwrap();
        let mut coeffs = vec![Complex64::new(0.0, 0.0); (2 * m + 1) as usize];
        for &(l, c) in &self.terms {
            coeffs[(l + m) as usize] = c;
        }
        Ok(AlgebraicForm { shift: m, coeffs })
    }

    /// The analytic half of f: the minimal positive frequency N and the
    /// polynomial Q with f(t) = Re(e^{2 pi i N t} Q(e^{2 pi i t})), which is
    /// Q(z) = sum over positive lambda of 2 c(lambda) z^{lambda - N}.
    pub fn analytic_part(&self) -> Result<(i64, Vec<Complex64>)> {
        let pos: Vec<(i64, Complex64)> = self.positive_terms().collect();
        if pos.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        let n = pos[0].0;
        let top = pos[pos.len() - 1].0;
        let mut q = vec![Complex64::new(0.0, 0.0); (top - n + 1) as usize];
        for (l, c) in pos {
            q[(l - n) as usize] = 2.0 * c;
        }
        Ok((n, q))
    }
}

/// The ordinary-polynomial view of a trigonometric polynomial.
#[derive(Debug, Clone)]
pub struct AlgebraicForm {
    shift: i64,
    coeffs: Vec<Complex64>,
}

impl AlgebraicForm {
    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// Ascending coefficients p_0 .. p_{2M}; p_j = c(j - M).
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn eval_circle(&self, t: f64) -> Complex64 {
        roots::eval(&self.coeffs, Complex64::from_polar(1.0, TAU * t))
    }
}

/// Zeros of f on the circle as angles in [0, 1), with relative residuals
/// |f(t)| / sum|c| and a touching flag for zeros found as merged root pairs
/// or sign-preserving minima.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ZeroSet {
    pub angles: Vec<f64>,
    pub residuals: Vec<f64>,
    pub touching: Vec<bool>,
}

impl ZeroSet {
    /// Test helper: a zero set with given angles and clean residuals.
    pub fn from_angles(mut angles: Vec<f64>) -> ZeroSet {
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let n = angles.len();
        ZeroSet {
            angles,
            residuals: vec![0.0; n],
            touching: vec![false; n],
        }
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }
}

/// The largest zero-free arc.  `degenerate` is set when near-coincident
/// angles had to be collapsed at the dedup tolerance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GapReport {
    pub max_gap: f64,
    pub gap_start: f64,
    pub degenerate: bool,
    #[serde(flatten)]
    pub zeros: ZeroSet,
}

/// Locates all zeros of f on the circle.  `circle_tol` is the band around
/// |z| = 1 in which polynomial roots are taken as circle candidates;
/// `refine_tol` is the relative acceptance threshold on |f| after polishing.
pub fn circle_zeros(f: &TrigPoly1D, circle_tol: f64, refine_tol: f64) -> Result<ZeroSet> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let scale = f.coeff_scale();
    let p = f.algebraic_form()?;
    let all = roots::all_roots(p.coeffs())?;

    let band = circle_tol.max(RESCUE_BAND);
    let mut candidates: Vec<f64> = all
        .iter()
        .filter(|z| (z.norm() - 1.0).abs() <= band)
        .map(|z| (z.arg() / TAU).rem_euclid(1.0))
        .collect();
    candidates.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let clusters = cluster_cyclic(&candidates, CLUSTER_TOL);
    let reps: Vec<f64> = clusters.iter().map(|c| c.0).collect();

    let mut found: Vec<(f64, f64, bool)> = Vec::new();
    for (i, &(rep, count)) in clusters.iter().enumerate() {
        let neighbor = nearest_other(&reps, i);
        let h = (0.45 * neighbor).clamp(1e-9, 1e-4);
        if let Some((t, residual, touching)) = refine_zero(f, rep, h, count > 1) {
            if residual / scale <= refine_tol {
                found.push((t.rem_euclid(1.0), residual / scale, touching));
            }
        }
    }
    found.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());

    // final cyclic dedup at 1e-10
    let mut angles = Vec::new();
    let mut residuals = Vec::new();
    let mut touching = Vec::new();
    for (t, r, tch) in found {
        if let Some(&last) = angles.last() {
            if cyc_dist(last, t) < DEDUP_TOL {
                let i = angles.len() - 1;
                if r < residuals[i] {
                    residuals[i] = r;
                }
                touching[i] = touching[i] || tch;
                continue;
            }
        }
        angles.push(t);
        residuals.push(r);
        touching.push(tch);
    }
    if angles.len() > 1 && cyc_dist(angles[0], *angles.last().unwrap()) < DEDUP_TOL {
        angles.pop();
        residuals.pop();
        touching.pop();
    }
    Ok(ZeroSet { angles, residuals, touching })
}

/// Clusters sorted angles cyclically; returns (circular mean, member count).
fn cluster_cyclic(sorted: &[f64], tol: f64) -> Vec<(f64, usize)> {
    if sorted.is_empty() {
        return Vec::new();
    }
    let mut groups: Vec<Vec<f64>> = vec![vec![sorted[0]]];
    for &a in &sorted[1..] {
        let last = *groups.last().unwrap().last().unwrap();
        if a - last <= tol {
            groups.last_mut().unwrap().push(a);
        } else {
            groups.push(vec![a]);
        }
    }
    // wrap-around: join last group into first if they touch across 1.0
    if groups.len() > 1 {
        let first_lo = groups[0][0];
        let last_hi = *groups.last().unwrap().last().unwrap();
        if first_lo + 1.0 - last_hi <= tol {
            let tail = groups.pop().unwrap();
            for a in tail {
                groups[0].push(a - 1.0);
            }
        }
    }
    groups
        .into_iter()
        .map(|g| {
            let mean = g.iter().sum::<f64>() / g.len() as f64;
            (mean.rem_euclid(1.0), g.len())
        })
        .collect()
}

fn nearest_other(reps: &[f64], i: usize) -> f64 {
    let mut best = 1.0f64;
    for (j, &r) in reps.iter().enumerate() {
        if j != i {
            best = best.min(cyc_dist(reps[i], r));
        }
    }
    best
}

/// Polishes a candidate angle on f itself.  A sign change across the bracket
/// is bisected; otherwise the point is treated as a touching candidate and
/// the extremum of f is located through f'.
fn refine_zero(f: &TrigPoly1D, rep: f64, h: f64, hint_touching: bool) -> Option<(f64, f64, bool)> {
    let fa = f.evaluate(rep - h);
    let fb = f.evaluate(rep + h);
    if fa == 0.0 {
        return Some((rep - h, 0.0, hint_touching));
    }
    if fb == 0.0 {
        return Some((rep + h, 0.0, hint_touching));
    }
    if fa.signum() != fb.signum() {
        let t = bisect(|t| f.evaluate(t), rep - h, rep + h, fa);
        return Some((t, f.evaluate(t).abs(), hint_touching));
    }
    // No crossing: search for the interior extremum of f via f'.
    let d = |t: f64| f.eval_with_derivs(t).1;
    let (da, db) = (d(rep - h), d(rep + h));
    let t = if da.signum() != db.signum() && da != 0.0 {
        bisect(d, rep - h, rep + h, da)
    } else {
        // Newton on f'.  The window is wider than the bracket because a
        // rescued member of a displaced double-root pair can start up to
        // ~1e-3 away from the true touching zero; both members then converge
        // to the same point and the dedup pass merges them.
        let w = h.max(1e-3);
        let mut t = rep;
        for _ in 0..60 {
            let (_, d1, d2) = f.eval_with_derivs(t);
            if d2 == 0.0 {
                break;
            }
            let step = d1 / d2;
            let next = (t - step).clamp(rep - w, rep + w);
            if (next - t).abs() < 1e-16 {
                t = next;
                break;
            }
            t = next;
        }
        t
    };
    Some((t, f.evaluate(t).abs(), true))
}

fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, fa: f64) -> f64 {
    let mut sa = fa.signum();
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if b - a < 1e-15 {
            return mid;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == sa {
            a = mid;
            sa = fm.signum();
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

/// The largest cyclic gap between consecutive zeros.  Angles closer than the
/// dedup tolerance collapse first and set the degenerate flag.  No zeros at
/// all means the whole circle is reported as one gap of length 1.
pub fn max_gap(zeros: &ZeroSet) -> GapReport {
    let mut idx: Vec<usize> = (0..zeros.len()).collect();
    idx.sort_by(|&a, &b| zeros.angles[a].partial_cmp(&zeros.angles[b]).unwrap());

    let mut angles: Vec<f64> = Vec::with_capacity(zeros.len());
    let mut residuals = Vec::with_capacity(zeros.len());
    let mut touching = Vec::with_capacity(zeros.len());
    let mut degenerate = false;
    for &i in &idx {
        let a = zeros.angles[i].rem_euclid(1.0);
        if let Some(&last) = angles.last() {
            if cyc_dist(last, a) < DEDUP_TOL {
                degenerate = true;
                continue;
            }
        }
        angles.push(a);
        residuals.push(zeros.residuals.get(i).copied().unwrap_or(0.0));
        touching.push(zeros.touching.get(i).copied().unwrap_or(false));
    }
    if angles.len() > 1 && cyc_dist(angles[0], *angles.last().unwrap()) < DEDUP_TOL {
        angles.pop();
        residuals.pop();
        touching.pop();
        degenerate = true;
    }

    let cleaned = ZeroSet { angles, residuals, touching };
    if cleaned.is_empty() {
        return GapReport {
            max_gap: 1.0,
            gap_start: 0.0,
            degenerate,
            zeros: cleaned,
        };
    }
    let n = cleaned.angles.len();
    let mut best_len = -1.0;
    let mut best_start = 0.0;
    for i in 0..n {
        let start = cleaned.angles[i];
        let len = if i + 1 < n {
            cleaned.angles[i + 1] - start
        } else {
            1.0 - start + cleaned.angles[0]
        };
        // strict improvement keeps the smallest gap_start among ties
        if len > best_len {
            best_len = len;
            best_start = start;
        }
    }
    GapReport {
        max_gap: best_len,
        gap_start: best_start,
        degenerate,
        zeros: cleaned,
    }
}

/// Zero set and largest gap with default tolerances.
pub fn gap_of(f: &TrigPoly1D) -> Result<GapReport> {
    let zeros = circle_zeros(f, DEFAULT_CIRCLE_TOL, DEFAULT_REFINE_TOL)?;
    Ok(max_gap(&zeros))
}

/// Gap estimate by uniform sampling and sign changes, refined by bisection.
/// This path never touches the rootfinder; it exists to cross-check it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DenseGapEstimate {
    pub zeros: Vec<f64>,
    pub max_gap: f64,
    pub gap_start: f64,
}

pub fn dense_gap(f: &TrigPoly1D, samples: usize) -> Result<DenseGapEstimate> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = samples.max(16);
    // incremental rotators: one complex multiply per positive term per sample
    let pos: Vec<(i64, Complex64)> = f.positive_terms().collect();
    let rot: Vec<Complex64> = pos
        .iter()
        .map(|&(l, _)| Complex64::from_polar(1.0, TAU * l as f64 / n as f64))
        .collect();
    let mut state: Vec<Complex64> = pos.iter().map(|&(_, c)| c).collect();
    let mut values = Vec::with_capacity(n + 1);
    for _ in 0..n {
        let v: f64 = state.iter().map(|u| u.re).sum::<f64>() * 2.0;
        values.push(v);
        for (u, r) in state.iter_mut().zip(&rot) {
            *u *= *r;
        }
    }

    let mut zeros = Vec::new();
    for i in 0..n {
        let a = values[i];
        let b = values[(i + 1) % n];
        let ta = i as f64 / n as f64;
        let tb = (i + 1) as f64 / n as f64;
        if a == 0.0 {
            zeros.push(ta);
        } else if a.signum() != b.signum() && b != 0.0 {
            // bisect on the exact evaluator
            let mut lo = ta;
            let mut hi = tb;
            let mut flo = f.evaluate(lo);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                let fm = f.evaluate(mid);
                if fm == 0.0 || hi - lo < 1e-14 {
                    lo = mid;
                    break;
                }
                if fm.signum() == flo.signum() {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            zeros.push(0.5 * (lo + hi));
        }
    }
    zeros.sort_by(|a, b| a.partial_cmp(b).unwrap());

    // Cyclic max gap, kept separate from `max_gap` on purpose: the two gap
    // routes must not share code they are meant to check against each other.
    if zeros.is_empty() {
        return Ok(DenseGapEstimate { zeros, max_gap: 1.0, gap_start: 0.0 });
    }
    let m = zeros.len();
    let mut best_len = -1.0;
    let mut best_start = 0.0;
    for i in 0..m {
        let start = zeros[i];
        let len = if i + 1 < m {
            zeros[i + 1] - start
        } else {
            1.0 - start + zeros[0]
        };
        if len > best_len {
            best_len = len;
            best_start = start;
        }
    }
    Ok(DenseGapEstimate { zeros, max_gap: best_len, gap_start: best_start })
}

// --- argument variation along circle arcs ------------------------------------

/// Continuous argument variation of P(e^{2 pi i t}) for t in [t0, t1], in
/// radians: the imaginary part of the integral of P'/P 2 pi i z dt.  Composite
/// midpoint panels double until two refinements agree to 1e-8 or the
/// evaluation budget of 2^22 points runs out (the last estimate is returned;
/// in practice that regime only occurs with a root very near the arc).
pub fn arc_index(coeffs: &[Complex64], t0: f64, t1: f64, initial_steps: usize) -> Result<f64> {
    guard_arc_distance(coeffs, t0, t1, 1e-9)?;
    arc_index_unguarded(coeffs, t0, t1, initial_steps)
}

fn arc_index_unguarded(coeffs: &[Complex64], t0: f64, t1: f64, initial_steps: usize) -> Result<f64> {
    let integrand = |t: f64| {
        let z = Complex64::from_polar(1.0, TAU * t);
        let (p, dp) = roots::eval_with_derivative(coeffs, z);
        (dp / p * Complex64::new(0.0, TAU) * z).im
    };
    let mut n = initial_steps.max(8);
    let mut prev = midpoint_sum(&integrand, t0, t1, n);
    let mut total = n;
    loop {
        n *= 2;
        let cur = midpoint_sum(&integrand, t0, t1, n);
        total += n;
        if (cur - prev).abs() < 1e-8 || total >= (1 << 22) {
            return Ok(cur);
        }
        prev = cur;
    }
}

/// Winding of P around 0 along the whole circle; 2 pi times the number of
/// roots strictly inside the unit disc when none sit near the circle.
pub fn winding_total(coeffs: &[Complex64]) -> Result<f64> {
    guard_arc_distance(coeffs, 0.0, 1.0, 1e-6)?;
    arc_index_unguarded(coeffs, 0.0, 1.0, 4096)
}

/// Rejects arcs that pass within `limit` of a root of P, estimating the
/// distance by the Newton displacement |P|/|P'| sampled along the arc.
fn guard_arc_distance(coeffs: &[Complex64], t0: f64, t1: f64, limit: f64) -> Result<()> {
    let m = 4096;
    let mut min_est = f64::INFINITY;
    for k in 0..=m {
        let t = t0 + (t1 - t0) * k as f64 / m as f64;
        let z = Complex64::from_polar(1.0, TAU * t);
        let (p, dp) = roots::eval_with_derivative(coeffs, z);
        let est = if dp.norm() > 0.0 {
            p.norm() / dp.norm()
        } else if p.norm() > 0.0 {
            f64::INFINITY
        } else {
            0.0
        };
        min_est = min_est.min(est);
    }
    if min_est < limit {
        return Err(Error::NearZeroOnArc { estimated: min_est, limit });
    }
    Ok(())
}

fn midpoint_sum(g: &impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    // Kahan summation: panel counts reach millions near integrand peaks
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for k in 0..n {
        let t = a + (k as f64 + 0.5) * h;
        let y = g(t) - comp;
        let s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    sum * h
}

// --- JSON schema --------------------------------------------------------------

/// On-disk form of a 1-D polynomial: the full symmetric frequency list with
/// parallel real and imaginary coefficient arrays.
#[derive(Debug, Serialize, Deserialize)]
pub struct PolyJson {
    pub lambdas: Vec<i64>,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl TrigPoly1D {
    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            lambdas: self.terms.iter().map(|&(l, _)| l).collect(),
            re: self.terms.iter().map(|&(_, c)| c.re).collect(),
            im: self.terms.iter().map(|&(_, c)| c.im).collect(),
        }
    }

    pub fn from_json(json: &PolyJson) -> Result<TrigPoly1D> {
        if json.lambdas.len() != json.re.len() || json.lambdas.len() != json.im.len() {
            return Err(Error::InvalidParameter(
                "polynomial json: lambdas, re, im must have equal length".into(),
            ));
        }
        let pairs = json
            .lambdas
            .iter()
            .zip(json.re.iter().zip(&json.im))
            .map(|(&l, (&re, &im))| (l, Complex64::new(re, im)))
            .collect();
        TrigPoly1D::new(pairs)
    }
}
