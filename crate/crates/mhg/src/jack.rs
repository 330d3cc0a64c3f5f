//! Jack functions in J- and C-normalization: hook-product β coefficients in
//! direct and update form, the identity-argument product, and the memoized
//! n-variable recurrence
//!
//!   J_κ(x_1..x_t) = Σ_{μ : κ/μ horizontal strip} J_μ(x_1..x_{t−1}) · x_t^{|κ/μ|} · β_{κμ}
//!
//! evaluated over the linearized partition table.

use crate::coefficients::j_norm;
use crate::error::{Error, Result};
use crate::partitions::{is_horizontal_strip, Partition, PartitionTable};

/// β_{κμ} from the hook-product formula: the box factor is the upper hook
/// when κ′_j = μ′_j and the lower hook otherwise, taken over κ's boxes in the
/// numerator and μ's in the denominator.
pub fn beta_direct(kappa: &Partition, mu: &Partition, alpha: f64) -> Result<f64> {
    if !is_horizontal_strip(kappa, mu) {
        return Err(Error::InvalidArgument(format!(
            "{kappa}/{mu} is not a horizontal strip"
        )));
    }
    let kc = kappa.conj_parts();
    let mc = mu.conj_parts();
    let col_eq = |j: usize| {
        let k = kc.get(j - 1).copied().unwrap_or(0);
        let m = mc.get(j - 1).copied().unwrap_or(0);
        k == m
    };
    let box_product = |nu: &Partition| -> f64 {
        let nc = nu.conj_parts();
        let mut prod = 1.0;
        for (row, &p) in nu.parts().iter().enumerate() {
            let i = (row + 1) as f64;
            for j in 1..=p {
                let cj = nc[j - 1] as f64;
                prod *= if col_eq(j) {
                    // upper hook of nu
                    cj - i + alpha * (p as f64 - j as f64 + 1.0)
                } else {
                    // lower hook of nu
                    cj - i + 1.0 + alpha * (p as f64 - j as f64)
                };
            }
        }
        prod
    };
    Ok(box_product(kappa) / box_product(mu))
}

/// The raw Lemma-style ratio β_{κν}/β_{κμ} for ν = μ_(k); `mu`/`mu_conj`
/// describe μ *before* the decrement. Shared by the public update and the
/// workspace recursion.
fn beta_step_raw(kappa: &[usize], mu: &[usize], mu_conj: &[usize], k: usize, alpha: f64) -> f64 {
    let ap = alpha - 1.0;
    let l = mu[k - 1];
    let t = k as f64 - alpha * l as f64;
    let q = t + 1.0;
    let mut ratio = alpha;
    for r in 1..=k {
        let u = q - r as f64 + alpha * kappa[r - 1] as f64;
        ratio *= u / (u + ap);
    }
    for r in 1..k {
        let v = t - r as f64 + alpha * mu[r - 1] as f64;
        ratio *= (v + alpha) / v;
    }
    for r in 1..l {
        let w = mu_conj[r - 1] as f64 - t - alpha * r as f64;
        ratio *= (w + alpha) / w;
    }
    ratio
}

/// β_{κ,μ_(k)} updated from β_{κμ}. Preconditions: μ_(k) is a partition,
/// κ/μ and κ/μ_(k) are horizontal strips, and κ′_r = μ′_r for columns
/// r < k of the decremented part's row index.
pub fn beta_update(
    beta_prev: f64,
    kappa: &Partition,
    mu: &Partition,
    k: usize,
    alpha: f64,
) -> Result<f64> {
    if k < 1 || k > mu.len() {
        return Err(Error::InvalidArgument(format!(
            "row {k} out of range for μ = {mu}"
        )));
    }
    if mu.part(k) <= mu.part(k + 1) {
        return Err(Error::InvalidArgument(format!(
            "μ_({k}) is not a partition for μ = {mu}"
        )));
    }
    let mut nu_parts = mu.parts().to_vec();
    nu_parts[k - 1] -= 1;
    let nu = Partition::new(nu_parts)?;
    if !is_horizontal_strip(kappa, mu) || !is_horizontal_strip(kappa, &nu) {
        return Err(Error::InvalidArgument(format!(
            "κ/μ and κ/ν must both be horizontal strips (κ={kappa}, μ={mu})"
        )));
    }
    Ok(beta_prev * beta_step_raw(kappa.parts(), mu.parts(), mu.conj_parts(), k, alpha))
}

/// J_κ^(α)(xI_n) = x^{|κ|} ∏_{(i,j)∈κ} (n − (i−1) + α(j−1)), with the
/// vanishing rule for κ with more than n parts enforced explicitly.
pub fn jack_identity_arg(kappa: &Partition, alpha: f64, n: usize, x: f64) -> f64 {
    if kappa.len() > n {
        return 0.0;
    }
    let mut prod = x.powi(kappa.weight() as i32);
    for (row, &p) in kappa.parts().iter().enumerate() {
        for j in 1..=p {
            prod *= n as f64 - row as f64 + alpha * (j as f64 - 1.0);
        }
    }
    prod
}

/// One-box update J_κ(xI) = J_{κ_(i)}(xI) · x · (n − i + 1 + α(κ_i − 1)).
pub fn jack_identity_update(
    j_prev: f64,
    kappa: &Partition,
    i: usize,
    alpha: f64,
    n: usize,
    x: f64,
) -> f64 {
    j_prev * x * (n as f64 - i as f64 + 1.0 + alpha * (kappa.part(i) as f64 - 1.0))
}

/// C_κ = α^{|κ|}(|κ|)!/j_κ · J_κ.
pub fn c_from_j(jval: f64, kappa: &Partition, alpha: f64) -> f64 {
    let k = kappa.weight();
    let mut fact = 1.0;
    for i in 2..=k {
        fact *= i as f64;
    }
    alpha.powi(k as i32) * fact / j_norm(kappa, alpha) * jval
}

/// Memory cap for the dense Jack table (in f64 entries).
const MAX_JACK_ENTRIES: u64 = 1 << 28;

/// The dense (P_{mn}+1) × n memo table of J_κ^(α)(x_1..x_t) values, plus
/// precomputed powers of the eigenvalues.
///
/// Row `N_κ`, column `t−1` holds J_κ(x_1..x_t). Row 0 (the empty partition)
/// is all ones; rows of partitions with more parts than variables stay zero.
pub struct JackWorkspace {
    ptable: PartitionTable,
    alpha: f64,
    x: Vec<f64>,
    /// powers[(t−1)·(m+1) + e] = x_t^e
    powers: Vec<f64>,
    table: Vec<f64>,
    // scratch for the strip recursion
    s_kappa: Vec<usize>,
    s_mu: Vec<usize>,
    s_conj: Vec<usize>,
    s_nprefix: Vec<usize>,
    s_len: usize,
}

impl JackWorkspace {
    pub fn new(m: usize, x: &[f64], alpha: f64) -> Result<Self> {
        if x.is_empty() {
            return Err(Error::InvalidArgument(
                "eigenvalue list must be non-empty".into(),
            ));
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("eigenvalues must be finite".into()));
        }
        if alpha <= 0.0 || !alpha.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "alpha must be positive and finite, got {alpha}"
            )));
        }
        let nparts = m.min(x.len()).max(1);
        let ptable = PartitionTable::build(m, nparts)?;
        let rows = (ptable.count() + 1) as u64;
        let cols = x.len() as u64;
        if rows * cols > MAX_JACK_ENTRIES {
            return Err(Error::Resource(format!(
                "Jack table for m={m}, n={} needs {} entries",
                x.len(),
                rows * cols
            )));
        }
        let nv = x.len();
        let mut powers = Vec::with_capacity(nv * (m + 1));
        for &xi in x {
            let mut p = 1.0;
            for e in 0..=m {
                if e > 0 {
                    p *= xi;
                }
                powers.push(p);
            }
        }
        let mut table = vec![0.0; (ptable.count() + 1) * nv];
        table[..nv].fill(1.0); // empty partition row
        let cap = nparts + 1;
        Ok(Self {
            ptable,
            alpha,
            x: x.to_vec(),
            powers,
            table,
            s_kappa: Vec::with_capacity(cap),
            s_mu: Vec::with_capacity(cap),
            s_conj: Vec::with_capacity(m + 1),
            s_nprefix: Vec::with_capacity(cap),
            s_len: 0,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.x
    }

    pub fn partition_table(&self) -> &PartitionTable {
        &self.ptable
    }

    /// Fills the table for every partition in range, in sweep order.
    pub fn evaluate(&mut self) -> Result<()> {
        let m = self.ptable.m();
        let nparts = self.ptable.max_parts();
        let mut nprefix: Vec<usize> = Vec::with_capacity(nparts);
        crate::partitions::enumerate_partitions(m, nparts, |parts, changed| {
            nprefix.truncate(changed - 1);
            let nk = if changed == 1 {
                parts[0]
            } else {
                self.ptable.child_pointer(nprefix[changed - 2]) + parts[changed - 1] - 1
            };
            nprefix.push(nk);
            self.fill_row(parts, nk);
        })
    }

    /// J_κ(x_1..x_n) after `evaluate`.
    pub fn value(&self, kappa: &Partition) -> Result<f64> {
        self.value_prefix(kappa, self.x.len())
    }

    /// J_κ(x_1..x_t) after `evaluate`.
    pub fn value_prefix(&self, kappa: &Partition, t: usize) -> Result<f64> {
        if t < 1 || t > self.x.len() {
            return Err(Error::InvalidArgument(format!(
                "variable count {t} out of range 1..={}",
                self.x.len()
            )));
        }
        if kappa.len() > self.ptable.max_parts() {
            // more parts than variables: J vanishes
            if kappa.weight() <= self.ptable.m() {
                return Ok(0.0);
            }
        }
        let nk = self.ptable.index(kappa)?;
        Ok(self.table[nk * self.x.len() + (t - 1)])
    }

    pub(crate) fn row_value(&self, nk: usize) -> f64 {
        self.table[nk * self.x.len() + (self.x.len() - 1)]
    }

    /// Computes row N_κ for all variable counts. `kappa` must be the next
    /// partition in sweep order (all strip predecessors already filled).
    pub(crate) fn fill_row(&mut self, kappa: &[usize], nk: usize) {
        let nv = self.x.len();
        let lenk = kappa.len();
        debug_assert!(lenk >= 1);
        if lenk == 1 {
            // one-variable recurrence along the one-part chain
            self.table[nk * nv] =
                self.x[0] * (1.0 + self.alpha * (kappa[0] as f64 - 1.0)) * self.table[(nk - 1) * nv];
        }
        if nv < 2 || lenk > nv {
            return;
        }
        self.s_kappa.clear();
        self.s_kappa.extend_from_slice(kappa);
        self.s_mu.clear();
        self.s_mu.extend_from_slice(kappa);
        self.s_len = lenk;
        self.s_conj.clear();
        self.s_conj.resize(kappa[0], 0);
        for &p in kappa {
            for c in self.s_conj.iter_mut().take(p) {
                *c += 1;
            }
        }
        self.s_nprefix.clear();
        self.s_nprefix.push(kappa[0]);
        for &part in &kappa[1..] {
            let prev = *self.s_nprefix.last().unwrap();
            self.s_nprefix
                .push(self.ptable.child_pointer(prev) + part - 1);
        }
        debug_assert_eq!(self.s_nprefix[lenk - 1], nk);
        for t in lenk.max(2)..=nv {
            self.strip_sum(0, 1.0, 0, t, nk);
        }
    }

    fn recompute_nprefix(&mut self, from_row: usize) {
        for r in from_row..=self.s_len {
            let nk = if r == 1 {
                self.s_mu[0]
            } else {
                self.ptable.child_pointer(self.s_nprefix[r - 2]) + self.s_mu[r - 1] - 1
            };
            self.s_nprefix[r - 1] = nk;
        }
    }

    /// Accumulates the strip sum for J(N_κ, t), enumerating μ by decrementing
    /// parts of μ left to right; `k` is the lowest row still eligible for a
    /// decrement, `c` = |κ/μ| so far, `beta` = β_{κμ} for the current μ.
    fn strip_sum(&mut self, k: usize, beta: f64, c: usize, t: usize, nk: usize) {
        let nv = self.x.len();
        let m1 = self.ptable.m() + 1;
        for i in k.max(1)..=self.s_len {
            let cur = self.s_mu[i - 1];
            let nxt = if i < self.s_len { self.s_mu[i] } else { 0 };
            if cur > nxt {
                let nb = beta * beta_step_raw(&self.s_kappa, &self.s_mu, &self.s_conj, i, self.alpha);
                self.s_mu[i - 1] = cur - 1;
                self.s_conj[cur - 1] -= 1;
                let saved_len = self.s_len;
                if cur == 1 {
                    self.s_len = i - 1;
                }
                self.recompute_nprefix(i);
                if cur > 1 {
                    self.strip_sum(i, nb, c + 1, t, nk);
                } else {
                    let nmu = if self.s_len == 0 {
                        0
                    } else {
                        self.s_nprefix[self.s_len - 1]
                    };
                    self.table[nk * nv + (t - 1)] += nb
                        * self.table[nmu * nv + (t - 2)]
                        * self.powers[(t - 1) * m1 + (c + 1)];
                }
                self.s_len = saved_len;
                self.s_mu[i - 1] = cur;
                self.s_conj[cur - 1] += 1;
                self.recompute_nprefix(i);
            }
        }
        if k == 0 {
            // μ = κ term: β = 1, no power of x_t
            self.table[nk * nv + (t - 1)] += self.table[nk * nv + (t - 2)];
        } else {
            let nmu = self.s_nprefix[self.s_len - 1];
            self.table[nk * nv + (t - 1)] +=
                beta * self.table[nmu * nv + (t - 2)] * self.powers[(t - 1) * m1 + c];
        }
    }
}

/// Convenience single-κ evaluation of J_κ^(α)(x).
pub fn jack_eval(kappa: &Partition, x: &[f64], alpha: f64) -> Result<f64> {
    if kappa.is_empty() {
        return Ok(1.0);
    }
    if kappa.len() > x.len() {
        return Ok(0.0);
    }
    let mut ws = JackWorkspace::new(kappa.weight(), x, alpha)?;
    ws.evaluate()?;
    ws.value(kappa)
}

/// C_κ^(α)(x) = α^{|κ|}(|κ|)!/j_κ · J_κ^(α)(x).
pub fn jack_eval_c(kappa: &Partition, x: &[f64], alpha: f64) -> Result<f64> {
    Ok(c_from_j(jack_eval(kappa, x, alpha)?, kappa, alpha))
}
