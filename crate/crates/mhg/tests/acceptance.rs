//! Acceptance suite: one test per release criterion, each printing a single
//! pass line with the measured quantity.

mod common;

use std::collections::HashSet;
use std::time::Instant;

use common::{partitions_of, rel_err, JackOracle};
use mhg::coefficients::{q_coefficient_direct, q_coefficient_update};
use mhg::jack::{jack_eval, jack_eval_c};
use mhg::partitions::{build_table, count_partitions_bounded, enumerate_partitions, Partition};
use mhg::stats::{
    adaptive_simpson, lmax_cdf_laguerre, lmax_cdf_wishart, lmin_normalization, lmin_pdf_laguerre,
    sample_wishart_trace, EnsembleParams, TracePdfWishart,
};
use mhg::{hg_general, hg_identity, SeriesParameters};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

fn pass(id: u32, what: &str, detail: String) {
    println!("criterion {id:2} ({what}): pass — {detail}");
}

#[test]
fn criterion_01_exponential_identity() {
    let mut rng = ChaCha12Rng::seed_from_u64(101);
    let params = SeriesParameters::new(2.0, vec![], vec![], 30).unwrap();
    let mut worst = 0.0f64;
    let mut slowest = 0.0f64;
    for _ in 0..20 {
        let x: Vec<f64> = (0..10).map(|_| rng.gen_range(0.0..0.5)).collect();
        let start = Instant::now();
        let got = hg_general(&params, &x, None).unwrap().value;
        let secs = start.elapsed().as_secs_f64();
        let want = x.iter().sum::<f64>().exp();
        worst = worst.max(rel_err(got, want));
        slowest = slowest.max(secs);
        assert!(secs <= 2.0, "trial took {secs} s");
    }
    assert!(worst <= 1e-12, "worst relative error {worst:e}");
    pass(1, "exp identity", format!("worst rel err {worst:.2e}, slowest trial {slowest:.3} s"));
}

#[test]
fn criterion_02_binomial_identity() {
    // At m = 30 the truncation remainder of the det(I−X)^{−a} series exceeds
    // 1e-8 over much of a ∈ [0.5, 3], x_i ∈ [0, 1/2] (the terms decay only
    // like x_max^k·poly(k)), so the evaluator is held to two checks: exact
    // agreement with an independent computation of the truncated series over
    // the full range, and the 8-digit closed-form comparison on arguments
    // small enough that truncation is provably below the tolerance.
    let mut rng = ChaCha12Rng::seed_from_u64(102);
    let mut worst_exact = 0.0f64;
    let mut worst_closed = 0.0f64;
    for _ in 0..20 {
        let a = rng.gen_range(0.5..3.0);
        let params = SeriesParameters::new(2.0, vec![a], vec![], 30).unwrap();

        let x: Vec<f64> = (0..10).map(|_| rng.gen_range(0.0..0.5)).collect();
        let got = hg_general(&params, &x, None).unwrap().value;
        worst_exact = worst_exact.max(rel_err(got, common::truncated_det_power(a, &x, 30)));

        let x: Vec<f64> = (0..10).map(|_| rng.gen_range(0.0..0.25)).collect();
        let got = hg_general(&params, &x, None).unwrap().value;
        let want: f64 = x.iter().map(|&xi| (1.0 - xi).powf(-a)).product();
        worst_closed = worst_closed.max(rel_err(got, want));
    }
    assert!(worst_exact <= 1e-12, "worst rel err vs truncated series {worst_exact:e}");
    assert!(worst_closed <= 1e-8, "worst rel err vs closed form {worst_closed:e}");
    pass(2, "binomial identity", format!(
        "vs exact truncation {worst_exact:.2e}, vs closed form {worst_closed:.2e}"
    ));
}

#[test]
fn criterion_03_coefficient_update_oracle() {
    let mut rng = ChaCha12Rng::seed_from_u64(103);
    let mut worst = 0.0f64;
    let mut checked = 0usize;
    for _ in 0..20 {
        let alpha = rng.gen_range(0.3..3.0);
        let np = rng.gen_range(0..=2);
        let nq = rng.gen_range(0..=2);
        let a: Vec<f64> = (0..np).map(|_| rng.gen_range(0.5..4.0)).collect();
        let b: Vec<f64> = (0..nq).map(|_| rng.gen_range(4.0..8.0)).collect();
        let params = SeriesParameters::new(alpha, a, b, 10).unwrap();
        // walk the sweep, maintaining the Q value of each visited prefix
        let mut chain: Vec<(Vec<usize>, f64)> = vec![(vec![], 1.0)];
        enumerate_partitions(10, 6, |parts, changed| {
            let mut parent = parts.to_vec();
            parent[changed - 1] -= 1;
            parent.truncate(changed);
            while parent.last() == Some(&0) {
                parent.pop();
            }
            while chain.last().unwrap().0 != parent {
                chain.pop();
            }
            let kappa = Partition::new(parts.to_vec()).unwrap();
            let q = q_coefficient_update(chain.last().unwrap().1, &kappa, changed, &params)
                .unwrap();
            let direct = q_coefficient_direct(&params, &kappa).unwrap();
            worst = worst.max(rel_err(q, direct));
            checked += 1;
            chain.push((parts.to_vec(), q));
        })
        .unwrap();
    }
    assert!(worst <= 1e-12, "worst relative error {worst:e}");
    pass(3, "coefficient chains vs direct", format!("{checked} values, worst rel err {worst:.2e}"));
}

#[test]
fn criterion_04_jack_table_oracle() {
    let mut worst = 0.0f64;
    let mut checked = 0usize;
    for &alpha in &[0.5, 1.0, 2.0] {
        for n in 1..=5usize {
            // the oracle memoizes per (partition, variable count), so it must
            // be rebuilt for every distinct eigenvalue vector
            let mut oracle = JackOracle::new(alpha);
            let x: Vec<f64> = (0..n).map(|i| 0.35 + 0.4 * i as f64 / n as f64).collect();
            for k in 1..=8usize {
                for parts in partitions_of(k, n) {
                    let kappa = Partition::new(parts.clone()).unwrap();
                    let got = jack_eval(&kappa, &x, alpha).unwrap();
                    let want = oracle.eval(&parts, &x);
                    worst = worst.max(rel_err(got, want));
                    checked += 1;
                }
            }
        }
    }
    assert!(worst <= 1e-12, "worst relative error {worst:e}");
    pass(4, "Jack tables vs strip recurrence", format!("{checked} values, worst rel err {worst:.2e}"));
}

#[test]
fn criterion_05_normalization_identity() {
    let x = [0.9, 0.7, 0.41, 0.23, 0.11];
    let mut worst = 0.0f64;
    for &alpha in &[0.5, 1.0, 2.0] {
        for k in 1..=8usize {
            let total: f64 = partitions_of(k, x.len())
                .into_iter()
                .map(|p| jack_eval_c(&Partition::new(p).unwrap(), &x, alpha).unwrap())
                .sum();
            let want = x.iter().sum::<f64>().powi(k as i32);
            worst = worst.max(rel_err(total, want));
        }
    }
    assert!(worst <= 1e-11, "worst relative error {worst:e}");
    pass(5, "C normalization sums", format!("worst rel err {worst:.2e}"));
}

#[test]
fn criterion_06_identity_argument_consistency() {
    let mut worst = 0.0f64;
    for n in 1..=8usize {
        for &m in &[5usize, 12, 20] {
            let params = SeriesParameters::new(1.5, vec![1.2], vec![3.3], m).unwrap();
            for &x in &[0.2, -0.35] {
                let a = hg_identity(&params, n, &[x]).unwrap()[0].value;
                let b = hg_general(&params, &vec![x; n], None).unwrap().value;
                worst = worst.max(rel_err(b, a));
            }
        }
    }
    assert!(worst <= 1e-12, "worst relative error {worst:e}");
    pass(6, "identity vs general argument", format!("worst rel err {worst:.2e}"));
}

#[test]
fn criterion_07_two_argument_reduction() {
    let mut worst = 0.0f64;
    for &m in &[5usize, 12, 20] {
        for &(alpha, x, y, n) in &[(2.0, 0.4, 0.6, 4usize), (1.0, -0.3, 0.5, 3), (0.5, 0.25, 0.3, 5)] {
            let params = SeriesParameters::new(alpha, vec![1.1], vec![3.7], m).unwrap();
            let two = hg_general(&params, &vec![x; n], Some(&vec![y; n])).unwrap().value;
            let one = hg_identity(&params, n, &[x * y]).unwrap()[0].value;
            worst = worst.max(rel_err(two, one));
        }
    }
    assert!(worst <= 1e-12, "worst relative error {worst:e}");
    pass(7, "two-argument reduction", format!("worst rel err {worst:.2e}"));
}

#[test]
fn criterion_08_kummer_relation() {
    let mut rng = ChaCha12Rng::seed_from_u64(108);
    let mut worst = 0.0f64;
    for &alpha in &[0.5, 1.0, 2.0] {
        for _ in 0..10 {
            let a = rng.gen_range(0.5..2.0);
            let c = a + rng.gen_range(0.5..2.0);
            let x: Vec<f64> = (0..4).map(|_| rng.gen_range(-0.2..0.2)).collect();
            let neg_x: Vec<f64> = x.iter().map(|&v| -v).collect();
            let lhs = hg_general(
                &SeriesParameters::new(alpha, vec![a], vec![c], 25).unwrap(),
                &x,
                None,
            )
            .unwrap()
            .value;
            let rhs = x.iter().sum::<f64>().exp()
                * hg_general(
                    &SeriesParameters::new(alpha, vec![c - a], vec![c], 25).unwrap(),
                    &neg_x,
                    None,
                )
                .unwrap()
                .value;
            worst = worst.max((lhs - rhs).abs());
        }
    }
    assert!(worst <= 1e-8, "worst absolute difference {worst:e}");
    pass(8, "Kummer relation", format!("worst abs diff {worst:.2e}"));
}

#[test]
fn criterion_09_performance_targets() {
    let params = SeriesParameters::new(2.0, vec![], vec![], 20).unwrap();
    let x: Vec<f64> = (0..5).map(|i| 0.1 + 0.15 * i as f64).collect();
    let start = Instant::now();
    let v = hg_general(&params, &x, None).unwrap().value;
    let small = start.elapsed().as_secs_f64();
    std::hint::black_box(v);
    assert!(small < 1.0, "m=20 n=5 took {small} s");

    let params = SeriesParameters::new(2.0, vec![], vec![], 30).unwrap();
    let x: Vec<f64> = (0..120).map(|i| 0.05 + 0.4 * i as f64 / 120.0).collect();
    let start = Instant::now();
    let v = hg_general(&params, &x, None).unwrap().value;
    let large = start.elapsed().as_secs_f64();
    std::hint::black_box(v);
    assert!(large < 60.0, "m=30 n=120 took {large} s");
    pass(9, "performance", format!("m=20 n=5 in {small:.4} s, m=30 n=120 in {large:.2} s"));
}

#[test]
fn criterion_10_linear_scaling_in_n() {
    let time_once = |n: usize| -> f64 {
        let params = SeriesParameters::new(2.0, vec![], vec![], 20).unwrap();
        let x: Vec<f64> = (0..n).map(|i| 0.1 + 0.5 * i as f64 / n as f64).collect();
        let start = Instant::now();
        let v = hg_general(&params, &x, None).unwrap().value;
        let t = start.elapsed().as_secs_f64();
        std::hint::black_box(v);
        t
    };
    let median = |n: usize| -> f64 {
        let mut ts: Vec<f64> = (0..5).map(|_| time_once(n)).collect();
        ts.sort_by(f64::total_cmp);
        ts[2]
    };
    let t40 = median(40);
    let t80 = median(80);
    let ratio = t80 / t40;
    assert!(ratio <= 3.0, "runtime(n=80)/runtime(n=40) = {ratio}");
    pass(10, "linearity in n", format!("median ratio {ratio:.2} (t40 {t40:.4} s, t80 {t80:.4} s)"));
}

#[test]
fn criterion_11_trace_density_vs_monte_carlo() {
    let params = EnsembleParams::wishart(3, 6, vec![1.0, 2.0, 3.0]).unwrap();
    let pdf = TracePdfWishart::new(&params, 40).unwrap();
    // mean of tr A is l·Σσ = 36; verify the truncation is converged there
    let diag = pdf.diagnostic(36.0).unwrap();
    assert!(diag < 1e-6, "series diagnostic {diag:e}");

    let count = 100_000usize;
    let draws = sample_wishart_trace(&params, count, 1101).unwrap();
    let (lo, hi, nbins) = (5.0, 85.0, 40usize);
    let width = (hi - lo) / nbins as f64;
    let mut hist = vec![0usize; nbins];
    let mut inside = 0usize;
    for &d in &draws {
        if d >= lo && d < hi {
            hist[((d - lo) / width) as usize] += 1;
            inside += 1;
        }
    }
    assert!(inside as f64 >= 0.99 * count as f64, "binning range misses mass");

    let mut ok = 0usize;
    for (i, &c) in hist.iter().enumerate() {
        let a = lo + i as f64 * width;
        let p_model = adaptive_simpson(&|u| pdf.eval(u).unwrap(), a, a + width, 1e-10);
        let p_hat = c as f64 / count as f64;
        let se = (p_model * (1.0 - p_model) / count as f64).sqrt().max(1e-12);
        if (p_hat - p_model).abs() <= 3.0 * se {
            ok += 1;
        }
    }
    let frac = ok as f64 / nbins as f64;
    assert!(frac >= 0.95, "only {ok}/{nbins} bins within 3 standard errors");
    pass(11, "trace density vs Monte-Carlo", format!("{ok}/{nbins} bins within 3 SE, diagnostic {diag:.1e}"));
}

#[test]
fn criterion_12_density_sanity() {
    // normalized smallest-eigenvalue density integrates to one
    let lag = EnsembleParams::laguerre(3, 2.0, 4.0).unwrap();
    let z = lmin_normalization(&lag).unwrap();
    let total = adaptive_simpson(&|x| lmin_pdf_laguerre(x, &lag).unwrap() / z, 0.0, 60.0, 1e-9);
    assert!((total - 1.0).abs() <= 1e-4, "lmin integral {total}");

    // trace density integrates to one
    let wis = EnsembleParams::wishart(3, 6, vec![1.0, 2.0, 3.0]).unwrap();
    let pdf = TracePdfWishart::new(&wis, 40).unwrap();
    let trace_total = adaptive_simpson(&|u| pdf.eval(u).unwrap(), 1e-9, 150.0, 1e-9);
    assert!((trace_total - 1.0).abs() <= 1e-4, "trace integral {trace_total}");

    // largest-eigenvalue c.d.f.s are monotone on their grids
    let lag = EnsembleParams::laguerre(3, 2.0, 3.0).unwrap();
    let mut prev = 0.0;
    let mut x = 0.0;
    while x <= 8.0 {
        let v = lmax_cdf_laguerre(x, &lag, 40).unwrap();
        assert!(v >= prev - 1e-10, "Laguerre c.d.f. decrease at x={x}");
        prev = v;
        x += 0.25;
    }
    let wis = EnsembleParams::wishart(3, 6, vec![0.5, 1.0, 2.0]).unwrap();
    prev = 0.0;
    x = 0.25;
    while x <= 20.0 {
        let v = lmax_cdf_wishart(x, &wis, 40).unwrap();
        assert!(v >= prev - 1e-10, "Wishart c.d.f. decrease at x={x}");
        prev = v;
        x += 0.25;
    }
    pass(12, "density sanity", format!(
        "lmin integral {total:.6}, trace integral {trace_total:.6}, c.d.f.s monotone"
    ));
}

#[test]
fn criterion_13_partition_machinery() {
    let p20 = count_partitions_bounded(20, 20).unwrap() - count_partitions_bounded(19, 20).unwrap();
    assert_eq!(p20, 627, "partitions of 20");

    let mut tables = 0usize;
    for m in 1..=20usize {
        for n in 1..=20usize {
            let table = build_table(m, n).unwrap();
            let expect = count_partitions_bounded(m, n).unwrap() as usize;
            assert_eq!(table.count(), expect, "count mismatch at ({m},{n})");
            assert_eq!(table.index(&Partition::empty()).unwrap(), 0);
            let mut seen = HashSet::new();
            enumerate_partitions(m, n, |parts, _| {
                let idx = table.index(&Partition::new(parts.to_vec()).unwrap()).unwrap();
                assert!(idx >= 1 && idx <= expect, "index out of range at ({m},{n})");
                assert!(seen.insert(idx), "duplicate index at ({m},{n})");
            })
            .unwrap();
            assert_eq!(seen.len(), expect, "not a bijection at ({m},{n})");
            tables += 1;
        }
    }
    pass(13, "partition machinery", format!("p(20) = {p20}, {tables} index tables bijective"));
}
