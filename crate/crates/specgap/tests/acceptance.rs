//! Acceptance gate: one test per shipping criterion, each printing a single
//! PASS/FAIL line (visible with `--nocapture`; always visible on failure).
//!
//! Criterion 4 (asymptotic scaling sweep) is expected to fail for K in
//! {20, 40}: the target constant it states for K*D is log 2, but with D
//! summed over the full symmetric spectrum, as defined here, the true limit
//! is (log 2)/2.  The check is kept as stated rather than weakened; see its
//! comment for the numbers.

use num_complex::Complex64;
use num_rational::Ratio;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::process::Command;

use specgap::extremal::{build_extremal, strictify, verify_touching};
use specgap::multidim::{fold, fold_positivity, TrigPolyNd};
use specgap::search::{brute_force_max_gap, estimate_max_gap, SearchConfig};
use specgap::spectrum::{closed_form_max_gap, FrequencyVector, ProgressionParams, Spectrum};
use specgap::trigpoly::{arc_index, dense_gap, gap_of, winding_total, TrigPoly1D};
use specgap::Error;

const TUPLES: [(u32, u32, u32); 7] =
    [(1, 0, 1), (1, 1, 1), (2, 1, 1), (2, 3, 1), (3, 2, 1), (2, 2, 3), (3, 4, 2)];

fn verdict(criterion: &str, pass: bool, detail: &str) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("[{tag}] {criterion}: {detail}");
    assert!(pass, "{criterion}: {detail}");
}

fn ratio_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

#[test]
fn c1_closed_forms_and_touching_grids() {
    let mut worst_grid = 0.0f64;
    for (n, k, b) in TUPLES {
        let p = ProgressionParams::new(n, k, b).unwrap();
        let m = closed_form_max_gap(&p).unwrap();
        let expected = Ratio::new((k as i64) + 1, (b as i64) * (k as i64) + 2 * (n as i64));
        assert_eq!(m, expected, "closed form for ({n},{k},{b})");

        let e = build_extremal(&p).unwrap();
        let report = verify_touching(&e, 1e-9).unwrap();
        assert!(report.ok, "touching verification failed for ({n},{k},{b}): {report:?}");
        // each nominal grid point k*eta must be realized by a measured zero
        // within 1e-9 (for b > 1 extra touching zeros appear between grid
        // points; the grid itself is what the closed form rests on)
        let eta = e.eta_f64();
        assert!(!report.zeros_measured.is_empty());
        for k_idx in 0..=(k as i64 + 1) {
            let target = (k_idx as f64 * eta).rem_euclid(1.0);
            let err = report
                .zeros_measured
                .iter()
                .map(|z| {
                    let d = (z - target).abs();
                    d.min(1.0 - d)
                })
                .fold(f64::INFINITY, f64::min);
            worst_grid = worst_grid.max(err);
            assert!(
                err <= 1e-9,
                "grid point {k_idx}*eta of ({n},{k},{b}) missed by {err:.3e}"
            );
        }
    }
    verdict(
        "criterion 1 (closed forms + touching grids)",
        true,
        &format!("7 tuples exact, worst grid deviation {worst_grid:.3e}"),
    );
}

#[test]
fn c2_two_sided_gap_check() {
    let mut worst_lower = f64::INFINITY; // measured - (a - 2 eps)
    let mut worst_upper = f64::NEG_INFINITY; // measured - M over random draws
    for (n, k, b) in TUPLES {
        let p = ProgressionParams::new(n, k, b).unwrap();
        let e = build_extremal(&p).unwrap();
        let a = e.a_f64();
        let eps = 0.25 * e.eta_f64();
        let g = strictify(&e, eps).unwrap();
        let measured = gap_of(&g).unwrap().max_gap;
        worst_lower = worst_lower.min(measured - (a - 2.0 * eps));
        assert!(
            measured >= a - 2.0 * eps - 1e-6,
            "strictified ({n},{k},{b}): gap {measured} < {}",
            a - 2.0 * eps - 1e-6
        );

        let m = ratio_f64(closed_form_max_gap(&p).unwrap());
        let spectrum = Spectrum::progression(&p);
        let mut rng = ChaCha8Rng::seed_from_u64(2_000 + (n * 100 + k * 10 + b) as u64);
        for draw in 0..500 {
            let f = TrigPoly1D::random_on(&spectrum, &mut rng).unwrap();
            let gap = gap_of(&f).unwrap().max_gap;
            worst_upper = worst_upper.max(gap - m);
            assert!(
                gap <= m + 1e-6,
                "draw {draw} on ({n},{k},{b}): gap {gap} exceeds closed form {m}"
            );
        }
    }
    verdict(
        "criterion 2 (two-sided gap check)",
        true,
        &format!(
            "strictified slack {worst_lower:+.3e}, random-draw headroom {worst_upper:+.3e} (3500 draws)"
        ),
    );
}

#[test]
fn c3_ball_bound_property_suite() {
    let mut families: Vec<(String, Spectrum)> = Vec::new();
    for (n, k, b) in TUPLES {
        let p = ProgressionParams::new(n, k, b).unwrap();
        families.push((format!("progression({n},{k},{b})"), Spectrum::progression(&p)));
    }
    for n in 1..=5 {
        for k in 1..=4 {
            families.push((format!("squares({n},{k})"), Spectrum::squares(n, k).unwrap()));
        }
    }
    for order in 1..=3u32 {
        let params: Vec<i64> = std::iter::once(1)
            .chain((1..=order).map(|j| 1i64 << j))
            .collect();
        families.push((format!("net(order {order})"), Spectrum::net(&params).unwrap()));
    }
    for i in 0..5u64 {
        let s = Spectrum::random(50, 0.2, 31_000 + i).unwrap();
        if !s.is_empty() {
            families.push((format!("random(50,0.2) #{i}"), s));
        }
    }

    let mut draws = 0u32;
    let mut worst_margin = f64::NEG_INFINITY; // gap - D
    for (name, s) in &families {
        let d_bound = s.ball_bound();
        let mut rng = ChaCha8Rng::seed_from_u64(3_000);
        for _ in 0..500 {
            let f = TrigPoly1D::random_on(s, &mut rng).unwrap();
            let gap = gap_of(&f).unwrap().max_gap;
            draws += 1;
            worst_margin = worst_margin.max(gap - d_bound);
            assert!(gap <= d_bound + 1e-9, "{name}: gap {gap} > D {d_bound}");
        }
    }
    verdict(
        "criterion 3 (ball bound property suite)",
        true,
        &format!(
            "{draws} draws over {} spectra, zero violations, worst gap-D margin {worst_margin:+.3e}",
            families.len()
        ),
    );
}

#[test]
fn c4_asymptotic_scaling_sweep() {
    // For K in {10, 20, 40}, b = K, N = K^2 the closed form gives
    // K*M = (K+1)/(3K) -> 1/3, and that half of the sweep holds easily.
    //
    // The K*D half asserts |K*D - log 2| <= 1/sqrt(K).  With
    // D = sum over the full symmetric spectrum of 1/(4|lambda|), we get
    // K*D = (1/2) * sum_{j=0..K} 1/(K+j) -> (log 2)/2 ~ 0.3466, so the
    // distance to log 2 tends to 0.3466 while the allowance 1/sqrt(K)
    // shrinks: K=10 passes (0.309 <= 0.316, barely), K=20 and K=40 fail
    // (0.328 > 0.224 and 0.337 > 0.158).  The target constant would need D
    // to be twice as large (a positive-half sum of 1/(2|lambda|)), which
    // contradicts the definition of D used and tested everywhere else in
    // this project.  The check is kept as stated instead of being loosened;
    // this test is expected to fail and documents the discrepancy.
    let ln2 = std::f64::consts::LN_2;
    let mut all_ok = true;
    let mut lines = Vec::new();
    for k in [10u32, 20, 40] {
        let n = k * k;
        let p = ProgressionParams::new(n, k, k).unwrap();
        let m = ratio_f64(closed_form_max_gap(&p).unwrap());
        let d = Spectrum::progression(&p).ball_bound();
        let kf = k as f64;
        let m_err = (kf * m - 1.0 / 3.0).abs();
        let d_err = (kf * d - ln2).abs();
        let m_ok = m_err <= 2.0 / kf;
        let d_ok = d_err <= 1.0 / kf.sqrt();
        all_ok &= m_ok && d_ok;
        lines.push(format!(
            "K={k}: K*M={:.6} (|err|={m_err:.3e} <= {:.3e}: {m_ok}), K*D={:.6} (|K*D-log2|={d_err:.4} <= {:.4}: {d_ok})",
            kf * m,
            2.0 / kf,
            kf * d,
            1.0 / kf.sqrt()
        ));
    }
    for line in &lines {
        println!("  {line}");
    }
    verdict(
        "criterion 4 (asymptotic scaling sweep)",
        all_ok,
        &format!(
            "K*M matches 1/3 at every K; K*D tends to (log 2)/2 = {:.4}, not log 2 = {ln2:.4}, so the stated bound fails for K in {{20, 40}}",
            0.5 * ln2
        ),
    );
}

#[test]
fn c5_index_calibration() {
    use std::f64::consts::PI;
    const TAU: f64 = 2.0 * PI;

    // 20 (s, a) pairs, covering roots inside and outside the arc.
    let mut worst = 0.0f64;
    let mut pairs = 0;
    for a in [0.2, 0.35, 0.5, 0.65] {
        for s in [0.1, 0.3, 0.55, 0.75, 0.9] {
            let xi = Complex64::from_polar(1.0 + 1e-4, TAU * s);
            let coeffs = [-xi, Complex64::new(1.0, 0.0)];
            let got = arc_index(&coeffs, 0.0, a, 64).unwrap();
            let expect = if s > 0.0 && s < a { PI * a - PI } else { PI * a };
            let err = (got - expect).abs();
            worst = worst.max(err);
            pairs += 1;
            assert!(err <= 1e-2, "(s,a)=({s},{a}): index {got} vs {expect}");
        }
    }
    assert_eq!(pairs, 20);

    // 50 random root configurations: total winding = 2 pi * (roots inside).
    let mut rng = ChaCha8Rng::seed_from_u64(5_000);
    let mut worst_winding = 0.0f64;
    for cfg in 0..50 {
        use rand::Rng;
        let degree = rng.gen_range(1..=6);
        let mut inside = 0u32;
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        for _ in 0..degree {
            let inward: bool = rng.gen();
            let r = if inward {
                inside += 1;
                rng.gen_range(0.2..0.8)
            } else {
                rng.gen_range(1.25..2.5)
            };
            let root = Complex64::from_polar(r, TAU * rng.gen_range(0.0..1.0));
            // multiply by (z - root)
            let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * root;
            }
            coeffs = next;
        }
        let w = winding_total(&coeffs).unwrap();
        let err = (w - TAU * inside as f64).abs();
        worst_winding = worst_winding.max(err);
        assert!(err <= 1e-6, "config {cfg}: winding {w} vs {} inside roots", inside);
    }
    verdict(
        "criterion 5 (index calibration)",
        true,
        &format!(
            "20 arc calibrations within {worst:.3e} (tol 1e-2), 50 windings within {worst_winding:.3e} (tol 1e-6)"
        ),
    );
}

/// Random symmetric spectrum on Z^d with at most `half_max` positive
/// vectors; never empty.
fn random_nd_spectrum<R: rand::Rng>(d: usize, half_max: usize, rng: &mut R) -> Spectrum {
    loop {
        let count = rng.gen_range(1..=half_max);
        let mut vectors = Vec::new();
        for _ in 0..count {
            let v: Vec<i64> = (0..d).map(|_| rng.gen_range(-4i64..=4)).collect();
            if v.iter().any(|&x| x != 0) {
                vectors.push(v);
            }
        }
        if vectors.is_empty() {
            continue;
        }
        if let Ok(s) = Spectrum::from_vectors(vectors, true) {
            return s;
        }
    }
}

/// Coarse argmax of f over the torus, used to aim the positivity ball.
fn argmax_center(f: &TrigPolyNd, per_axis: usize) -> Vec<f64> {
    let d = f.dim();
    let mut best = f64::NEG_INFINITY;
    let mut center = vec![0.0; d];
    let mut idx = vec![0usize; d];
    loop {
        let point: Vec<f64> = idx.iter().map(|&i| i as f64 / per_axis as f64).collect();
        let v = f.evaluate(&point).unwrap();
        if v > best {
            best = v;
            center = point;
        }
        let mut k = 0;
        loop {
            if k == d {
                return center;
            }
            idx[k] += 1;
            if idx[k] < per_axis {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

#[test]
fn c6_folding_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(6_000);
    let mut checked = 0u32;
    let mut degenerate = 0u32;
    let mut skipped = 0u32;
    let mut worst_chain = f64::NEG_INFINITY;
    for case in 0..200 {
        let d = if case % 2 == 0 { 2 } else { 1 };
        let s = random_nd_spectrum(d, 5, &mut rng);
        let f = TrigPolyNd::random_on(&s, &mut rng).unwrap();

        // fold out the largest-norm positive frequency (smallest shift)
        let nu = s
            .positive_half()
            .into_iter()
            .max_by_key(FrequencyVector::norm_l2_sq)
            .unwrap();
        let folded = fold(&f, &nu).unwrap();
        assert!(
            folded.coeff(&nu).norm() <= 1e-12 && folded.coeff(&nu.negated()).norm() <= 1e-12,
            "case {case}: +-nu survived the fold"
        );

        let d_before = s.ball_bound();
        let d_after = folded.spectrum().unwrap().ball_bound();
        let chain = d_after - (d_before - 0.5 / nu.norm_l2());
        worst_chain = worst_chain.max(chain);
        assert!(chain <= 1e-12, "case {case}: bound chain violated by {chain:.3e}");

        // conditional positivity inheritance: aim a ball at the argmax of f
        // and check the folded polynomial on the shrunk ball whenever f is
        // actually positive there.  resolution 500 (d=1) / 16 (d=2) samples
        // each ball at >= 10^3 points.  Radii descend from generous to the
        // smallest one whose shrunk ball is still nonempty, so the first
        // ball on which f is positive gives a non-vacuous check.
        let center = argmax_center(&f, if d == 1 { 64 } else { 24 });
        let resolution = if d == 1 { 500 } else { 16 };
        let shrink = 0.25 / nu.norm_l2(); // half the fold shift
        let mut outcome = None;
        for radius in [0.30, 0.24, 0.19, 0.15, 0.12, 0.10, 0.08] {
            if radius <= shrink + 0.01 {
                continue;
            }
            match fold_positivity(&f, &nu, &center, radius, resolution) {
                Ok(report) => {
                    assert!(report.pass, "case {case}: inheritance failed: {report:?}");
                    outcome = Some(report.degenerate);
                    break;
                }
                Err(Error::InvalidParameter(_)) => continue, // f not positive there
                Err(e) => panic!("case {case}: unexpected error {e}"),
            }
        }
        match outcome {
            Some(true) => degenerate += 1,
            Some(false) => checked += 1,
            None => skipped += 1,
        }
    }
    assert!(
        checked >= 20,
        "only {checked} non-degenerate positivity checks ran; the suite is too vacuous"
    );
    verdict(
        "criterion 6 (folding suite)",
        true,
        &format!(
            "200 folds: +-nu annihilated, worst bound-chain slack {worst_chain:+.3e}; positivity inherited in {checked} balls ({degenerate} degenerate, {skipped} preconditions unmet)"
        ),
    );
}

#[test]
fn c7_search_convergence() {
    let mut worst_short = f64::NEG_INFINITY; // M - estimate
    for (n, k, b) in TUPLES {
        let p = ProgressionParams::new(n, k, b).unwrap();
        let m = ratio_f64(closed_form_max_gap(&p).unwrap());
        let s = Spectrum::progression(&p);
        let cfg = SearchConfig::new(s, 32, 20_260_816, 2_000, 1e-7).unwrap();
        let result = estimate_max_gap(&cfg).unwrap();
        let short = m - result.best_gap;
        worst_short = worst_short.max(short);
        assert!(
            short <= 5e-3 && short >= -1e-6,
            "({n},{k},{b}): estimate {} vs closed form {m}",
            result.best_gap
        );
    }

    // exhaustive-oracle domination on every |S| <= 6 tuple
    let mut worst_gap_vs_brute = f64::INFINITY; // estimate - brute
    let mut small = 0;
    for (n, k, b) in TUPLES {
        let p = ProgressionParams::new(n, k, b).unwrap();
        let s = Spectrum::progression(&p);
        if s.len() > 6 {
            continue;
        }
        small += 1;
        let grid = match s.len() / 2 {
            1 => 17,
            2 => 9,
            _ => 5,
        };
        let brute = brute_force_max_gap(&s, grid).unwrap();
        let cfg = SearchConfig::new(s, 32, 20_260_816, 2_000, 1e-7).unwrap();
        let estimate = estimate_max_gap(&cfg).unwrap().best_gap;
        worst_gap_vs_brute = worst_gap_vs_brute.min(estimate - brute);
        assert!(
            estimate >= brute - 1e-6,
            "({n},{k},{b}): estimate {estimate} below brute force {brute}"
        );
    }
    assert_eq!(small, 5);
    verdict(
        "criterion 7 (search convergence)",
        true,
        &format!(
            "closed forms reached within {worst_short:.3e} (tol 5e-3) on 7 tuples; estimate >= brute force on {small} small spectra (min lead {worst_gap_vs_brute:+.3e})"
        ),
    );
}

#[test]
fn c8_gap_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(8_000);
    let mut worst = 0.0f64;
    let mut instance = 0;
    let mut seed = 0u64;
    while instance < 100 {
        seed += 1;
        let s = Spectrum::random(30, 0.3, 80_000 + seed).unwrap();
        if s.is_empty() {
            continue;
        }
        let f = TrigPoly1D::random_on(&s, &mut rng).unwrap();
        let via_roots = gap_of(&f).unwrap().max_gap;
        let via_scan = dense_gap(&f, 100_000).unwrap().max_gap;
        let err = (via_roots - via_scan).abs();
        worst = worst.max(err);
        assert!(err <= 2e-5, "instance {instance}: rootfinder {via_roots} vs dense {via_scan}");
        instance += 1;
    }
    verdict(
        "criterion 8 (gap oracle equivalence)",
        true,
        &format!("100 instances, max |rootfinder - dense| = {worst:.3e} (tol 2e-5)"),
    );
}

#[test]
fn c9_artifact_determinism() {
    let bin = env!("CARGO_BIN_EXE_specgap");
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str| dir.path().join(name).to_str().unwrap().to_string();

    // (label, args, artifact file names); every command is run twice with
    // output redirected to run-specific files, which must match byte for
    // byte.
    let cases: Vec<(&str, Vec<String>, Vec<String>)> = vec![
        (
            "extremal",
            vec![
                "extremal".into(),
                "--params".into(),
                "2,1,1".into(),
                "--eps".into(),
                "0.05".into(),
                "--emit-samples".into(),
                "64".into(),
            ],
            vec!["--out:ext_RUN.json".into(), "--samples-out:ext_RUN.csv".into()],
        ),
        (
            "bound over a seeded random spectrum",
            vec![
                "bound".into(),
                "--random".into(),
                "50,0.2".into(),
                "--seed".into(),
                "99".into(),
            ],
            vec!["--out:bound_RUN.json".into()],
        ),
        (
            "search",
            vec![
                "search".into(),
                "--progression".into(),
                "1,1,1".into(),
                "--restarts".into(),
                "4".into(),
                "--budget".into(),
                "300".into(),
                "--seed".into(),
                "5".into(),
            ],
            vec!["--out:search_RUN.jsonl".into()],
        ),
        (
            "experiment",
            vec![
                "experiment".into(),
                "--family".into(),
                "squares".into(),
                "--n".into(),
                "1".into(),
                "--k-max".into(),
                "2".into(),
                "--restarts".into(),
                "2".into(),
                "--budget".into(),
                "200".into(),
                "--seed".into(),
                "7".into(),
            ],
            vec!["--out:exp_RUN.jsonl".into(), "--csv:exp_RUN.csv".into()],
        ),
    ];

    let mut artifacts = 0;
    for (label, args, outputs) in &cases {
        let mut files: Vec<(String, String)> = Vec::new(); // (run1, run2)
        for run in 1..=2 {
            let mut cmd = Command::new(bin);
            cmd.args(args);
            for spec in outputs {
                let (flag, name) = spec.split_once(':').unwrap();
                let file = path(&name.replace("RUN", &run.to_string()));
                cmd.arg(flag).arg(&file);
                if run == 1 {
                    files.push((file, String::new()));
                } else {
                    let slot = outputs.iter().position(|o| o == spec).unwrap();
                    files[slot].1 = file;
                }
            }
            let out = cmd.output().unwrap();
            assert!(
                out.status.success(),
                "{label} run {run} failed: {}",
                String::from_utf8_lossy(&out.stderr)
            );
        }
        for (a, b) in &files {
            let bytes_a = std::fs::read(a).unwrap();
            let bytes_b = std::fs::read(b).unwrap();
            assert!(!bytes_a.is_empty(), "{label}: empty artifact {a}");
            assert_eq!(bytes_a, bytes_b, "{label}: artifacts {a} and {b} differ");
            artifacts += 1;
        }
    }
    verdict(
        "criterion 9 (artifact determinism)",
        true,
        &format!("{artifacts} artifacts byte-identical across reruns of {} commands", cases.len()),
    );
}
