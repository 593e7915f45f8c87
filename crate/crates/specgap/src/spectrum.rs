//! Symmetric frequency sets and the bounds they induce on zero-free regions.
//!
//! A spectrum is a finite set S of nonzero integer vectors with -S = S.
//! For a real trigonometric polynomial with that spectrum, the diameter of
//! any zero-free Euclidean ball is at most `ball_bound` and the side of any
//! zero-free axis-parallel cube is at most `cube_bound`.  For arithmetic
//! progressions ±{N, N+b, ..., N+Kb} with b < 2N the supremum of zero-free
//! interval lengths is known exactly and `closed_form_max_gap` returns it as
//! a rational.

use std::collections::BTreeSet;

use num_rational::Ratio;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A nonzero integer frequency vector.  Ordering is lexicographic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FrequencyVector(Vec<i64>);

impl FrequencyVector {
    pub fn new(components: Vec<i64>) -> Result<Self> {
        if components.is_empty() || components.iter().all(|&c| c == 0) {
            return Err(Error::ZeroFrequency);
        }
        Ok(FrequencyVector(components))
    }

    /// 1-D convenience constructor.
    pub fn scalar(n: i64) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn components(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Squared Euclidean norm, exact in integers.
    pub fn norm_l2_sq(&self) -> i64 {
        self.0.iter().map(|&c| c * c).sum()
    }

    pub fn norm_l2(&self) -> f64 {
        (self.norm_l2_sq() as f64).sqrt()
    }

    pub fn norm_inf(&self) -> i64 {
        self.0.iter().map(|&c| c.abs()).max().unwrap_or(0)
    }

    pub fn negated(&self) -> Self {
        FrequencyVector(self.0.iter().map(|&c| -c).collect())
    }

    /// True when the first nonzero component is positive.  Exactly one of
    /// {v, -v} is canonical; files store only the canonical half.
    pub fn is_canonical(&self) -> bool {
        for &c in &self.0 {
            if c != 0 {
                return c > 0;
            }
        }
        false
    }

    pub fn canonical(&self) -> Self {
        if self.is_canonical() {
            self.clone()
        } else {
            self.negated()
        }
    }

    pub fn dot(&self, other: &[i64]) -> i64 {
        self.0.iter().zip(other).map(|(a, b)| a * b).sum()
    }
}

/// A finite symmetric set of nonzero frequencies, stored sorted and deduplicated.
/// The empty spectrum is a valid value; both bounds are then 0 and the only
/// polynomial it supports is identically zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    dim: usize,
    freqs: Vec<FrequencyVector>,
}

impl Spectrum {
    /// Builds a spectrum from raw vectors.  With `symmetrize` the union with
    /// the negated set is taken; without it the input must already be
    /// symmetric or the call fails.
    pub fn from_vectors(vectors: Vec<Vec<i64>>, symmetrize: bool) -> Result<Self> {
        let mut dim: Option<usize> = None;
        let mut set: BTreeSet<FrequencyVector> = BTreeSet::new();
        for v in vectors {
            let fv = FrequencyVector::new(v)?;
            match dim {
                None => dim = Some(fv.dim()),
                Some(d) if d != fv.dim() => {
                    return Err(Error::DimensionMismatch {
                        expected: d,
                        got: fv.dim(),
                    })
                }
                _ => {}
            }
            if symmetrize {
                set.insert(fv.negated());
            }
            set.insert(fv);
        }
        if !symmetrize {
            for fv in &set {
                if !set.contains(&fv.negated()) {
                    return Err(Error::AsymmetricInput(fv.components().to_vec()));
                }
            }
        }
        Ok(Spectrum {
            dim: dim.unwrap_or(1),
            freqs: set.into_iter().collect(),
        })
    }

    pub fn empty(dim: usize) -> Self {
        Spectrum { dim, freqs: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.freqs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.freqs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &FrequencyVector> {
        self.freqs.iter()
    }

    pub fn contains(&self, v: &FrequencyVector) -> bool {
        self.freqs.binary_search(v).is_ok()
    }

    /// The canonical (lexicographically positive) half, sorted.
    pub fn positive_half(&self) -> Vec<FrequencyVector> {
        self.freqs.iter().filter(|f| f.is_canonical()).cloned().collect()
    }

    /// For 1-D spectra: the positive frequencies in ascending order.
    pub fn positive_scalars(&self) -> Result<Vec<i64>> {
        if self.dim != 1 {
            return Err(Error::DimensionMismatch { expected: 1, got: self.dim });
        }
        Ok(self
            .freqs
            .iter()
            .map(|f| f.components()[0])
            .filter(|&n| n > 0)
            .collect())
    }

    /// Upper bound on the diameter of a zero-free Euclidean ball:
    /// the sum of 1/(4 ||lambda||_2) over the full symmetric set.
    pub fn ball_bound(&self) -> f64 {
        self.freqs.iter().map(|f| 0.25 / f.norm_l2()).sum()
    }

    /// Upper bound on the side of a zero-free axis-parallel cube:
    /// the sum of ||lambda||_inf / (4 ||lambda||_2^2).
    pub fn cube_bound(&self) -> f64 {
        self.freqs
            .iter()
            .map(|f| f.norm_inf() as f64 / (4.0 * f.norm_l2_sq() as f64))
            .sum()
    }

    /// ±{N, N+b, ..., N+Kb} in one dimension.
    pub fn progression(p: &ProgressionParams) -> Self {
        let freqs = (0..=p.k)
            .map(|j| (p.n as i64) + (j as i64) * (p.b as i64))
            .collect::<Vec<_>>();
        Self::from_scalars_symmetrized(&freqs)
    }

    /// ±{n^2 : N <= n <= N+K}.
    pub fn squares(n: u32, k: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("squares: N must be >= 1".into()));
        }
        let freqs = (n..=n + k).map(|m| (m as i64) * (m as i64)).collect::<Vec<_>>();
        Ok(Self::from_scalars_symmetrized(&freqs))
    }

    /// Random 1-D spectrum: each n in {1..Nmax} joins independently with
    /// probability tau, then the set is symmetrized.  The draw uses ChaCha8
    /// seeded with `seed` and consumes one f64 per candidate in increasing
    /// order of n; this sequence is part of the reproducibility contract.
    pub fn random(nmax: u32, tau: f64, seed: u64) -> Result<Self> {
        if nmax == 0 {
            return Err(Error::InvalidParameter("random: Nmax must be >= 1".into()));
        }
        if !(tau > 0.0 && tau <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "random: tau must lie in (0, 1], got {tau}"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut freqs = Vec::new();
        for n in 1..=nmax {
            if rng.gen::<f64>() < tau {
                freqs.push(n as i64);
            }
        }
        Ok(Self::from_scalars_symmetrized(&freqs))
    }

    /// Net spectrum: ±{a0 + sum of any subset of {a1..am}} for positive ai.
    pub fn net(params: &[i64]) -> Result<Self> {
        if params.is_empty() {
            return Err(Error::InvalidParameter("net: need at least a0".into()));
        }
        if params.iter().any(|&a| a <= 0) {
            return Err(Error::InvalidParameter(
                "net: all parameters must be positive integers".into(),
            ));
        }
        let (a0, rest) = (params[0], &params[1..]);
        let mut sums: BTreeSet<i64> = BTreeSet::new();
        sums.insert(a0);
        for &a in rest {
            let mut next = sums.clone();
            for &s in &sums {
                next.insert(s + a);
            }
            sums = next;
        }
        let freqs: Vec<i64> = sums.into_iter().collect();
        Ok(Self::from_scalars_symmetrized(&freqs))
    }

    fn from_scalars_symmetrized(scalars: &[i64]) -> Self {
        let mut set: BTreeSet<FrequencyVector> = BTreeSet::new();
        for &n in scalars {
            if n != 0 {
                set.insert(FrequencyVector(vec![n]));
                set.insert(FrequencyVector(vec![-n]));
            }
        }
        Spectrum {
            dim: 1,
            freqs: set.into_iter().collect(),
        }
    }
}

/// Arithmetic progression parameters: base N >= 1, K+1 terms, step b >= 1.
/// b >= 2N is allowed here; the closed form and the extremal construction
/// refuse it themselves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProgressionParams {
    pub n: u32,
    pub k: u32,
    pub b: u32,
}

impl ProgressionParams {
    pub fn new(n: u32, k: u32, b: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("progression: N must be >= 1".into()));
        }
        if b == 0 {
            return Err(Error::InvalidParameter("progression: b must be >= 1".into()));
        }
        Ok(ProgressionParams { n, k, b })
    }

    /// bK + 2N, the reciprocal of the touching-zero grid step.
    pub fn modulus(&self) -> i64 {
        self.b as i64 * self.k as i64 + 2 * self.n as i64
    }

    pub fn step_within_bound(&self) -> bool {
        self.b < 2 * self.n
    }
}

/// Exact supremum of zero-free interval lengths over all real trigonometric
/// polynomials with spectrum ±{N, N+b, ..., N+Kb}, valid for b < 2N:
/// (K+1) / (bK + 2N).
pub fn closed_form_max_gap(p: &ProgressionParams) -> Result<Ratio<i64>> {
    if !p.step_within_bound() {
        return Err(Error::UnsupportedRegime { b: p.b, n: p.n });
    }
    Ok(Ratio::new(p.k as i64 + 1, p.modulus()))
}

// --- JSON schema ------------------------------------------------------------

/// On-disk form: dimension plus the canonical positive-lexicographic half.
/// Readers symmetrize, so a file listing both halves still round-trips.
#[derive(Debug, Serialize, Deserialize)]
pub struct SpectrumJson {
    pub d: usize,
    pub lambdas: Vec<Vec<i64>>,
}

impl Spectrum {
    pub fn to_json(&self) -> SpectrumJson {
        SpectrumJson {
            d: self.dim,
            lambdas: self
                .positive_half()
                .iter()
                .map(|f| f.components().to_vec())
                .collect(),
        }
    }

    pub fn from_json(json: &SpectrumJson) -> Result<Self> {
        if json.lambdas.is_empty() {
            return Ok(Spectrum::empty(json.d));
        }
        let s = Spectrum::from_vectors(json.lambdas.clone(), true)?;
        if s.dim() != json.d {
            return Err(Error::DimensionMismatch { expected: json.d, got: s.dim() });
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    fn scalars(s: &Spectrum) -> Vec<i64> {
        s.iter().map(|f| f.components()[0]).collect()
    }

    #[test]
    fn ball_bound_single_pair() {
        let s = Spectrum::from_vectors(vec![vec![1]], true).unwrap();
        assert_relative_eq!(s.ball_bound(), 0.5, max_relative = 1e-15);
    }

    #[test]
    fn ball_bound_interval_one_to_four() {
        // Hand evaluation: sum over ±{1,2,3,4} of 1/(4n) = 1/2+1/4+1/6+1/8 = 25/24.
        let s = Spectrum::progression(&ProgressionParams::new(1, 3, 1).unwrap());
        assert_relative_eq!(s.ball_bound(), 25.0 / 24.0, max_relative = 1e-15);
    }

    #[test]
    fn ball_bound_diagonal_pair_2d() {
        let s = Spectrum::from_vectors(vec![vec![1, 1]], true).unwrap();
        assert_relative_eq!(s.ball_bound(), 0.5 / 2f64.sqrt(), max_relative = 1e-15);
    }

    #[test]
    fn cube_bound_examples() {
        let s = Spectrum::from_vectors(vec![vec![1, 1]], true).unwrap();
        assert_relative_eq!(s.cube_bound(), 0.25, max_relative = 1e-15);
        let s1 = Spectrum::from_vectors(vec![vec![3]], true).unwrap();
        // two terms of 3/(4*9)
        assert_relative_eq!(s1.cube_bound(), 1.0 / 6.0, max_relative = 1e-15);
    }

    #[test]
    fn bounds_of_empty_spectrum_are_zero() {
        let s = Spectrum::empty(2);
        assert_eq!(s.ball_bound(), 0.0);
        assert_eq!(s.cube_bound(), 0.0);
    }

    #[test]
    fn in_one_dim_cube_and_ball_bounds_agree() {
        let s = Spectrum::progression(&ProgressionParams::new(2, 5, 3).unwrap());
        assert_relative_eq!(s.ball_bound(), s.cube_bound(), max_relative = 1e-14);
    }

    #[test]
    fn zero_vector_rejected() {
        assert!(Spectrum::from_vectors(vec![vec![0]], true).is_err());
        assert!(Spectrum::from_vectors(vec![vec![0, 0]], false).is_err());
        assert!(FrequencyVector::new(vec![]).is_err());
    }

    #[test]
    fn asymmetric_input_rejected_without_symmetrize() {
        let err = Spectrum::from_vectors(vec![vec![1], vec![-1], vec![2]], false);
        assert!(matches!(err, Err(Error::AsymmetricInput(_))));
        // and accepted with symmetrize on
        let s = Spectrum::from_vectors(vec![vec![1], vec![-1], vec![2]], true).unwrap();
        assert_eq!(scalars(&s), vec![-2, -1, 1, 2]);
    }

    #[test]
    fn mixed_dimensions_rejected() {
        let err = Spectrum::from_vectors(vec![vec![1], vec![1, 0]], true);
        assert!(matches!(err, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn progression_examples() {
        let s = Spectrum::progression(&ProgressionParams::new(2, 3, 1).unwrap());
        assert_eq!(scalars(&s), vec![-5, -4, -3, -2, 2, 3, 4, 5]);
        let s = Spectrum::progression(&ProgressionParams::new(1, 2, 3).unwrap());
        assert_eq!(scalars(&s), vec![-7, -4, -1, 1, 4, 7]);
    }

    #[test]
    fn squares_example() {
        let s = Spectrum::squares(2, 2).unwrap();
        assert_eq!(scalars(&s), vec![-16, -9, -4, 4, 9, 16]);
        assert_relative_eq!(
            s.ball_bound(),
            1.0 / 8.0 + 1.0 / 18.0 + 1.0 / 32.0,
            max_relative = 1e-15
        );
    }

    #[test]
    fn net_subset_sum_oracle() {
        // Independent enumeration for (1, 1, 2): subsets of {1,2} added to 1
        // give {1, 2, 3, 4}.
        let s = Spectrum::net(&[1, 1, 2]).unwrap();
        assert_eq!(scalars(&s), vec![-4, -3, -2, -1, 1, 2, 3, 4]);

        // Exhaustive subset-sum oracle for a larger net.
        let params = [3i64, 1, 4, 9];
        let s = Spectrum::net(&params).unwrap();
        let mut expected = BTreeSet::new();
        for mask in 0u32..8 {
            let mut v = params[0];
            for (i, &a) in params[1..].iter().enumerate() {
                if mask & (1 << i) != 0 {
                    v += a;
                }
            }
            expected.insert(v);
            expected.insert(-v);
        }
        assert_eq!(scalars(&s), expected.into_iter().collect::<Vec<_>>());

        assert!(Spectrum::net(&[]).is_err());
        assert!(Spectrum::net(&[2, -1]).is_err());
    }

    #[test]
    fn random_spectrum_is_deterministic_and_symmetric() {
        let a = Spectrum::random(50, 0.2, 7).unwrap();
        let b = Spectrum::random(50, 0.2, 7).unwrap();
        assert_eq!(a, b);
        for f in a.iter() {
            assert!(a.contains(&f.negated()));
        }
        let full = Spectrum::random(10, 1.0, 3).unwrap();
        assert_eq!(scalars(&full).len(), 20);
    }

    #[test]
    fn random_spectrum_hits_expected_density() {
        // Mean positive-half size over many seeds must sit near Nmax*tau.
        // Binomial(100, 0.1): mean 10, sd 3; with 300 seeds the sample mean
        // has sd 3/sqrt(300) ~ 0.173, so a 3-sigma band is +-0.52.
        let mut total = 0usize;
        let seeds = 300u64;
        for seed in 0..seeds {
            total += Spectrum::random(100, 0.1, seed).unwrap().len() / 2;
        }
        let mean = total as f64 / seeds as f64;
        assert!((mean - 10.0).abs() < 0.52, "mean {mean} too far from 10");
    }

    #[test]
    fn closed_form_values() {
        let m = closed_form_max_gap(&ProgressionParams::new(100, 10, 10).unwrap()).unwrap();
        assert_eq!(m, Ratio::new(11, 300));
        let m = closed_form_max_gap(&ProgressionParams::new(1, 1, 1).unwrap()).unwrap();
        assert_eq!(m, Ratio::new(2, 3));
        let m = closed_form_max_gap(&ProgressionParams::new(1, 0, 1).unwrap()).unwrap();
        assert_eq!(m, Ratio::new(1, 2));
    }

    #[test]
    fn closed_form_rejects_wide_step() {
        let err = closed_form_max_gap(&ProgressionParams::new(1, 5, 2).unwrap());
        assert!(matches!(err, Err(Error::UnsupportedRegime { .. })));
    }

    #[test]
    fn closed_form_limits() {
        // K = 0 gives 1/(2N); large K approaches 1 from below.
        for n in 1..20u32 {
            let m = closed_form_max_gap(&ProgressionParams::new(n, 0, 1).unwrap()).unwrap();
            assert_eq!(m, Ratio::new(1, 2 * n as i64));
        }
        let mut last = 0.0;
        for k in [1u32, 10, 100, 1000, 10000] {
            let m = closed_form_max_gap(&ProgressionParams::new(1, k, 1).unwrap())
                .unwrap()
                .to_f64()
                .unwrap();
            assert!(m < 1.0 && m > last);
            last = m;
        }
        assert!(last > 0.999);
    }

    #[test]
    fn closed_form_stays_below_ball_bound() {
        // Strict inequality for every K >= 1 in a desk-scale sweep.
        for n in 1..=50u32 {
            for k in 1..=50u32 {
                let p = ProgressionParams::new(n, k, 1).unwrap();
                let m = closed_form_max_gap(&p).unwrap().to_f64().unwrap();
                let d = Spectrum::progression(&p).ball_bound();
                assert!(m < d, "M={m} !< D={d} at N={n} K={k}");
            }
        }
    }

    #[test]
    fn json_round_trip_uses_canonical_half() {
        let s = Spectrum::from_vectors(vec![vec![1, -2], vec![-1, 2], vec![3, 0]], true).unwrap();
        let j = s.to_json();
        assert_eq!(j.d, 2);
        // canonical representatives have positive leading component
        assert_eq!(j.lambdas, vec![vec![1, -2], vec![3, 0]]);
        let back = Spectrum::from_json(&j).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn json_empty_round_trip() {
        let s = Spectrum::empty(3);
        let back = Spectrum::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
    }

    proptest! {
        #[test]
        fn ball_bound_invariant_under_sign_flips_and_permutation(
            vecs in proptest::collection::vec(
                proptest::collection::vec(-20i64..=20, 3), 1..6),
            signs in proptest::collection::vec(any::<bool>(), 6),
        ) {
            let nonzero: Vec<Vec<i64>> = vecs
                .into_iter()
                .filter(|v| v.iter().any(|&c| c != 0))
                .collect();
            prop_assume!(!nonzero.is_empty());
            let s1 = Spectrum::from_vectors(nonzero.clone(), true).unwrap();
            // negate an arbitrary subset and rotate coordinates
            let flipped: Vec<Vec<i64>> = nonzero
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    let w: Vec<i64> = vec![v[1], v[2], v[0]];
                    if signs[i % signs.len()] { w.iter().map(|c| -c).collect() } else { w }
                })
                .collect();
            let s2 = Spectrum::from_vectors(flipped, true).unwrap();
            prop_assert!((s1.ball_bound() - s2.ball_bound()).abs() < 1e-12);
            prop_assert!((s1.cube_bound() - s2.cube_bound()).abs() < 1e-12);
        }

        #[test]
        fn symmetrized_spectra_are_symmetric(
            vecs in proptest::collection::vec(
                proptest::collection::vec(-9i64..=9, 2), 1..8),
        ) {
            let nonzero: Vec<Vec<i64>> = vecs
                .into_iter()
                .filter(|v| v.iter().any(|&c| c != 0))
                .collect();
            prop_assume!(!nonzero.is_empty());
            let s = Spectrum::from_vectors(nonzero, true).unwrap();
            for f in s.iter() {
                prop_assert!(s.contains(&f.negated()));
            }
        }
    }
}
