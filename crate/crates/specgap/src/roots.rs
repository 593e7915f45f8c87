//! Dense polynomial rootfinding by Aberth-Ehrlich simultaneous iteration.
//!
//! The polynomials that arrive here are self-inversive (coefficients read the
//! same reversed and conjugated), so their roots sit on or symmetric about
//! the unit circle.  Residuals are therefore measured scale-free: for a root
//! inside the closed unit disc we take |P(z)| / max|p_j|, outside we evaluate
//! the reversed polynomial at 1/z, which keeps the backward error meaningful
//! at any radius.  The accepted contract is max residual <= 1e-9 for degrees
//! up to a few hundred.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const RESIDUAL_CONTRACT: f64 = 1e-9;

const MAX_SWEEPS: usize = 512;
const CORRECTION_TOL: f64 = 1e-13;

/// Evaluates p and p' at z by a single Horner pass (ascending coefficients).
pub fn eval_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

pub fn eval(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut p = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        p = p * z + c;
    }
    p
}

fn reversed(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs.iter().rev().map(|c| c.conj()).collect()
}

/// Scale-free residual of a candidate root; see the module header.
fn residual(coeffs: &[Complex64], rev: &[Complex64], scale: f64, z: Complex64) -> f64 {
    if z.norm() <= 1.0 {
        eval(coeffs, z).norm() / scale
    } else {
        eval(rev, z.inv().conj()).norm() / scale
    }
}

/// All complex roots of the polynomial with ascending coefficients `coeffs`.
/// Exact zero leading/trailing coefficients are stripped first (roots at the
/// origin are reported directly).  Fails if the residual contract cannot be
/// met after a deterministic ladder of restart radii.
pub fn all_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Err(Error::ZeroPolynomial);
    }

    // strip exact-zero high coefficients
    let mut hi = coeffs.len();
    while hi > 0 && coeffs[hi - 1].norm() == 0.0 {
        hi -= 1;
    }
    // strip roots at the origin
    let mut lo = 0;
    while lo < hi && coeffs[lo].norm() == 0.0 {
        lo += 1;
    }
    let work = &coeffs[lo..hi];
    let n = work.len().saturating_sub(1);
    let mut roots: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); lo];
    if n == 0 {
        return Ok(roots);
    }
    if n == 1 {
        roots.push(-work[0] / work[1]);
        return Ok(roots);
    }

    let rev = reversed(work);
    let wscale = work.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let cauchy = 1.0
        + work[..n]
            .iter()
            .map(|c| (c / work[n]).norm())
            .fold(0.0, f64::max);

    // Deterministic restart ladder; the first rung almost always suffices for
    // circle-flavoured polynomials.
    let radii = [
        1.0 + 0.5 / n as f64,
        0.75,
        1.5,
        0.5 * cauchy.min(8.0),
    ];
    let mut best: Option<(f64, Vec<Complex64>)> = None;
    for (attempt, &radius) in radii.iter().enumerate() {
        let found = aberth_sweeps(work, radius, attempt);
        let max_res = found
            .iter()
            .map(|&z| residual(work, &rev, wscale, z))
            .fold(0.0, f64::max);
        if max_res <= RESIDUAL_CONTRACT {
            roots.extend(found);
            return Ok(roots);
        }
        if best.as_ref().map_or(true, |(r, _)| max_res < *r) {
            best = Some((max_res, found));
        }
    }
    Err(Error::RootfinderFailed {
        max_residual: best.map(|(r, _)| r).unwrap_or(f64::INFINITY),
        limit: RESIDUAL_CONTRACT,
    })
}

fn aberth_sweeps(coeffs: &[Complex64], radius: f64, attempt: usize) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    // Initial guesses on a circle, rotated off any symmetry axis.  The magic
    // offsets only break ties; results do not depend on them once converged.
    let phase0 = 0.5777 + 1.2371 * attempt as f64;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.368) / n as f64 + phase0;
            Complex64::from_polar(radius, theta)
        })
        .collect();

    let mut converged = vec![false; n];
    for _sweep in 0..MAX_SWEEPS {
        let mut max_step = 0.0f64;
        for k in 0..n {
            if converged[k] {
                continue;
            }
            let (p, dp) = eval_with_derivative(coeffs, z[k]);
            if p.norm() == 0.0 {
                converged[k] = true;
                continue;
            }
            let w = if dp.norm() == 0.0 {
                // give a stalled point a nudge; the deflation term recovers it
                Complex64::new(1e-8, 1e-8)
            } else {
                p / dp
            };
            let mut defl = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != k {
                    let d = z[k] - z[j];
                    if d.norm_sqr() > 1e-300 {
                        defl += d.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - w * defl;
            let step = if denom.norm_sqr() > 1e-300 { w / denom } else { w };
            z[k] -= step;
            let rel = step.norm() / (1.0 + z[k].norm());
            if rel < CORRECTION_TOL {
                converged[k] = true;
            }
            max_step = max_step.max(rel);
        }
        if max_step < CORRECTION_TOL {
            break;
        }
    }

    // Newton polish; for simple roots this lands on the attainable floor,
    // for multiple roots it halves the error per step.
    for zk in z.iter_mut() {
        for _ in 0..8 {
            let (p, dp) = eval_with_derivative(coeffs, *zk);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            if step.norm() <= 1e-16 * (1.0 + zk.norm()) {
                break;
            }
            *zk -= step;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Builds a monic polynomial from its roots by convolution.
    fn poly_from_roots(roots: &[Complex64]) -> Vec<Complex64> {
        let mut coeffs = vec![c(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![c(0.0, 0.0); coeffs.len() + 1];
            for (i, &a) in coeffs.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= a * r;
            }
            coeffs = next;
        }
        coeffs
    }

    fn sort_key(z: &Complex64) -> (i64, i64) {
        ((z.re * 1e9).round() as i64, (z.im * 1e9).round() as i64)
    }

    #[test]
    fn quadratic_known_roots() {
        // (z-2)(z+1) = z^2 - z - 2
        let mut r = all_roots(&[c(-2.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0)]).unwrap();
        r.sort_by_key(sort_key);
        assert!((r[0] - c(-1.0, 0.0)).norm() < 1e-10);
        assert!((r[1] - c(2.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn roots_of_unity() {
        // z^16 - 1
        let mut coeffs = vec![c(0.0, 0.0); 17];
        coeffs[0] = c(-1.0, 0.0);
        coeffs[16] = c(1.0, 0.0);
        let roots = all_roots(&coeffs).unwrap();
        assert_eq!(roots.len(), 16);
        for z in &roots {
            assert!((z.norm() - 1.0).abs() < 1e-12);
            assert!(eval(&coeffs, *z).norm() < 1e-12);
        }
    }

    #[test]
    fn origin_and_leading_zeros_are_handled() {
        // z^2 (z - 1), with an extra zero leading coefficient appended
        let coeffs = [c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)];
        let mut r = all_roots(&coeffs).unwrap();
        r.sort_by_key(sort_key);
        assert_eq!(r.len(), 3);
        assert!(r[0].norm() < 1e-14 && r[1].norm() < 1e-14);
        assert!((r[2] - c(1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn double_root_on_circle_meets_contract() {
        // (z - i)^2 (z + 0.5)
        let coeffs = poly_from_roots(&[c(0.0, 1.0), c(0.0, 1.0), c(-0.5, 0.0)]);
        let roots = all_roots(&coeffs).unwrap();
        let near_i: Vec<_> = roots.iter().filter(|z| (*z - c(0.0, 1.0)).norm() < 1e-4).collect();
        assert_eq!(near_i.len(), 2);
        // The computed pair splits by ~sqrt(eps) around the true double root;
        // its mean lands well inside the clustering radius used downstream.
        let mean = (near_i[0] + near_i[1]) / 2.0;
        assert!((mean - c(0.0, 1.0)).norm() < 1e-7);
    }

    #[test]
    fn residual_contract_on_random_self_inversive() {
        // Random Hermitian-symmetric trig coefficients give self-inversive P.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..30 {
            let m = 3 + (trial % 40);
            let mut coeffs = vec![c(0.0, 0.0); 2 * m + 1];
            for j in 1..=m {
                let a = c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
                coeffs[m + j] = a;
                coeffs[m - j] = a.conj();
            }
            let scale = coeffs.iter().map(|x| x.norm()).fold(0.0, f64::max);
            let rev: Vec<Complex64> = coeffs.iter().rev().map(|x| x.conj()).collect();
            let roots = all_roots(&coeffs).unwrap();
            assert_eq!(roots.len(), 2 * m);
            for z in &roots {
                assert!(residual(&coeffs, &rev, scale, *z) <= RESIDUAL_CONTRACT);
            }
        }
    }

    #[test]
    fn contract_holds_at_degree_400() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m = 200usize;
        let mut coeffs = vec![c(0.0, 0.0); 2 * m + 1];
        for j in 1..=m {
            let a = c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
            coeffs[m + j] = a;
            coeffs[m - j] = a.conj();
        }
        let roots = all_roots(&coeffs).unwrap();
        assert_eq!(roots.len(), 400);
    }

    #[test]
    fn zero_polynomial_is_an_error() {
        assert!(matches!(
            all_roots(&[c(0.0, 0.0), c(0.0, 0.0)]),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn determinism() {
        let coeffs = poly_from_roots(&[c(0.3, 0.4), c(-1.2, 0.1), c(0.0, -0.9), c(2.0, 0.0)]);
        let a = all_roots(&coeffs).unwrap();
        let b = all_roots(&coeffs).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x, y);
        }
    }
}
