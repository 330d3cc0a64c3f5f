//! Shared helpers for integration tests: an independent Jack-function oracle
//! built directly on the horizontal-strip recurrence, using none of the
//! workspace/table machinery it is meant to check.

// each test binary compiles this module separately and uses a subset of it
#![allow(dead_code)]

use std::collections::HashMap;

use mhg::jack::beta_direct;
use mhg::partitions::Partition;

pub struct JackOracle {
    alpha: f64,
    memo: HashMap<(Vec<usize>, usize), f64>,
}

impl JackOracle {
    pub fn new(alpha: f64) -> Self {
        Self {
            alpha,
            memo: HashMap::new(),
        }
    }

    /// J_κ^(α)(x_1, …, x_t) by peeling horizontal strips off the last
    /// variable: J_κ(x_1..x_t) = Σ_μ β_{κμ} J_μ(x_1..x_{t−1}) x_t^{|κ/μ|}.
    pub fn eval(&mut self, kappa: &[usize], x: &[f64]) -> f64 {
        let t = x.len();
        if kappa.is_empty() {
            return 1.0;
        }
        if t == 0 || kappa.len() > t {
            return 0.0;
        }
        let key = (kappa.to_vec(), t);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let kp = Partition::new(kappa.to_vec()).unwrap();
        let mut total = 0.0;
        let mut mu = kappa.to_vec();
        self.strip_sum(&kp, kappa, &mut mu, 0, x, &mut total);
        self.memo.insert(key, total);
        total
    }

    /// Enumerates all μ with κ/μ a horizontal strip (μ_i ∈ [κ_{i+1}, κ_i])
    /// by choosing μ row by row.
    fn strip_sum(
        &mut self,
        kp: &Partition,
        kappa: &[usize],
        mu: &mut Vec<usize>,
        row: usize,
        x: &[f64],
        total: &mut f64,
    ) {
        if row == kappa.len() {
            let trimmed: Vec<usize> = mu.iter().copied().filter(|&p| p > 0).collect();
            let mp = Partition::new(trimmed.clone()).unwrap();
            let beta = beta_direct(kp, &mp, self.alpha).unwrap();
            let dropped: usize = kappa.iter().sum::<usize>() - trimmed.iter().sum::<usize>();
            let (head, last) = x.split_at(x.len() - 1);
            let inner = self.eval(&trimmed, head);
            *total += beta * inner * last[0].powi(dropped as i32);
            return;
        }
        let lo = if row + 1 < kappa.len() { kappa[row + 1] } else { 0 };
        let hi = kappa[row].min(if row == 0 { usize::MAX } else { mu[row - 1] });
        for v in lo..=hi {
            mu[row] = v;
            self.strip_sum(kp, kappa, mu, row + 1, x, total);
        }
        mu[row] = kappa[row];
    }
}

/// All partitions of weight exactly `k` with at most `n` parts,
/// lexicographically by construction.
pub fn partitions_of(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rem: usize, maxp: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        if cur.len() == n {
            return;
        }
        for v in (1..=rem.min(maxp)).rev() {
            cur.push(v);
            rec(rem - v, v, n, cur, out);
            cur.pop();
        }
    }
    rec(k, k, n, &mut cur, &mut out);
    out
}

pub fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(1e-300)
}

/// Degree-≤m Taylor partial sum of ∏_i (1 − x_i t)^{−a} at t = 1, via the
/// log-derivative recurrence. For X = diag(x) this equals the series for
/// det(I − X)^{−a} truncated at total degree m (the degree-k component of
/// the partition sum is independent of the Jack parameter), giving an exact
/// reference for the truncated evaluator.
pub fn truncated_det_power(a: f64, x: &[f64], m: usize) -> f64 {
    let mut log_coeffs = vec![0.0f64; m + 1];
    for (k, lc) in log_coeffs.iter_mut().enumerate().skip(1) {
        let pk: f64 = x.iter().map(|&xi| xi.powi(k as i32)).sum();
        *lc = a * pk / k as f64;
    }
    let mut f = vec![0.0f64; m + 1];
    f[0] = 1.0;
    for k in 1..=m {
        let mut s = 0.0;
        for j in 1..=k {
            s += j as f64 * log_coeffs[j] * f[k - j];
        }
        f[k] = s / k as f64;
    }
    f.iter().sum()
}
