//! The truncated hypergeometric series of a matrix argument.
//!
//! Both evaluators sweep the partitions `|κ| ≤ m` in tree order, carrying the
//! κ-term along the sweep by one-part updates: the coefficient Q_κ through
//! the Pochhammer/hook ratio and the Jack factor through either the
//! identity-argument one-box product or the memoized strip recurrence.

use crate::coefficients::{q_update_factor, SeriesParameters};
use crate::error::{Error, Result};
use crate::jack::JackWorkspace;
use crate::partitions::Partition;

/// Convergence flags attached to a truncation. The truncated sum is always a
/// finite computation; these never abort an evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Warning {
    /// p > q+1 with no terminating numerator parameter: the infinite series
    /// diverges and the truncation is a formal value.
    DivergentSeries,
    /// p = q+1 and some |x_i| ≥ 1: outside the convergence domain.
    OutsideConvergenceRadius,
}

impl std::fmt::Display for Warning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Warning::DivergentSeries => write!(f, "series diverges for p > q+1 (non-terminating)"),
            Warning::OutsideConvergenceRadius => {
                write!(f, "outside convergence radius: p = q+1 needs max|x_i| < 1")
            }
        }
    }
}

/// A truncated series value with per-degree partial sums and a tail estimate.
#[derive(Debug, Clone)]
pub struct TruncationResult {
    /// The truncated sum over all |κ| ≤ m.
    pub value: f64,
    /// Entry k = partial sum through all |κ| ≤ k; entry 0 is always 1.
    pub degree_partials: Vec<f64>,
    /// max |κ-term| over |κ| = m (the κ = () term itself when m = 0).
    pub tail_magnitude: f64,
    pub warnings: Vec<Warning>,
}

impl TruncationResult {
    /// Heuristic relative tail estimate; not a rigorous error bound.
    pub fn diagnostic(&self) -> f64 {
        self.tail_magnitude / self.value.abs().max(1.0)
    }
}

/// Heuristic relative tail estimate for a truncation; documented as NOT a
/// rigorous bound (the κ-term need not decrease monotonically).
pub fn convergence_diagnostic(result: &TruncationResult) -> f64 {
    result.diagnostic()
}

fn divergence_warnings(params: &SeriesParameters, max_abs_x: f64) -> Vec<Warning> {
    let (p, q) = (params.a.len(), params.b.len());
    let mut w = Vec::new();
    if p > q + 1 && !params.is_terminating() {
        w.push(Warning::DivergentSeries);
    }
    if p == q + 1 && max_abs_x >= 1.0 {
        w.push(Warning::OutsideConvergenceRadius);
    }
    w
}

/// Accumulates per-degree sums during a sweep.
struct Accumulator {
    m: usize,
    degree_sums: Vec<f64>,
    tail: f64,
}

impl Accumulator {
    fn new(m: usize) -> Self {
        let mut degree_sums = vec![0.0; m + 1];
        degree_sums[0] = 1.0; // κ = () term
        Self {
            m,
            degree_sums,
            tail: if m == 0 { 1.0 } else { 0.0 },
        }
    }

    fn add(&mut self, weight: usize, term: f64) {
        self.degree_sums[weight] += term;
        if weight == self.m {
            self.tail = self.tail.max(term.abs());
        }
    }

    fn finish(self, warnings: Vec<Warning>) -> TruncationResult {
        let mut partials = self.degree_sums;
        for k in 1..partials.len() {
            partials[k] += partials[k - 1];
        }
        TruncationResult {
            value: *partials.last().unwrap(),
            degree_partials: partials,
            tail_magnitude: self.tail,
            warnings,
        }
    }
}

// ---------------------------------------------------------------------------
// Identity argument: X = xI, vectorized over a list of x values.
// ---------------------------------------------------------------------------

struct IdentityEngine<'a> {
    alpha: f64,
    a: &'a [f64],
    b: &'a [f64],
    m: usize,
    nmat: f64,
    nparts: usize,
    xs: &'a [f64],
    kappa: Vec<usize>,
    conj: Vec<usize>,
    acc: Vec<Accumulator>,
}

impl<'a> IdentityEngine<'a> {
    fn sweep(&mut self, row: usize, budget: usize, z_parent: &[f64]) -> Result<()> {
        let prev = if row == 1 {
            budget
        } else {
            self.kappa[row - 2]
        };
        let r = prev.min(budget);
        let mut z = z_parent.to_vec();
        self.kappa.push(0);
        let mut reached = 0;
        for v in 1..=r {
            self.kappa[row - 1] = v;
            self.conj[v - 1] += 1;
            reached = v;
            let t = q_update_factor(&self.kappa, &self.conj, row, self.alpha, self.a, self.b)?;
            let jfac = self.nmat - row as f64 + 1.0 + self.alpha * (v as f64 - 1.0);
            let weight = self.m - budget + v;
            for (s, zs) in z.iter_mut().enumerate() {
                *zs *= t * jfac * self.xs[s];
                self.acc[s].add(weight, *zs);
            }
            if budget > v && row < self.nparts {
                self.sweep(row + 1, budget - v, &z)?;
            }
        }
        for c in 0..reached {
            self.conj[c] -= 1;
        }
        self.kappa.pop();
        Ok(())
    }
}

/// Evaluates the truncation at X = xI_n for each x in `xs`, sharing a single
/// partition sweep across the whole list.
pub fn hg_identity(
    params: &SeriesParameters,
    n: usize,
    xs: &[f64],
) -> Result<Vec<TruncationResult>> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!(
            "matrix size must be at least 1, got {n}"
        )));
    }
    if xs.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("x values must be finite".into()));
    }
    let m = params.m;
    let mut engine = IdentityEngine {
        alpha: params.alpha,
        a: &params.a,
        b: &params.b,
        m,
        nmat: n as f64,
        nparts: m.min(n).max(1),
        xs,
        kappa: Vec::with_capacity(m.min(n) + 1),
        conj: vec![0; m + 1],
        acc: xs.iter().map(|_| Accumulator::new(m)).collect(),
    };
    if m >= 1 && !xs.is_empty() {
        let seed = vec![1.0; xs.len()];
        engine.sweep(1, m, &seed)?;
    }
    let acc = std::mem::take(&mut engine.acc);
    Ok(acc
        .into_iter()
        .zip(xs)
        .map(|(a, &x)| a.finish(divergence_warnings(params, x.abs())))
        .collect())
}

// ---------------------------------------------------------------------------
// General argument: X = diag(x), optionally a second argument Y = diag(y).
// ---------------------------------------------------------------------------

#[allow(clippy::large_enum_variant)] // held once per evaluation
enum TermWeight<'a> {
    /// Q_κ J_κ(X)
    Single,
    /// Q_κ J_κ(X) J_κ(Y) / J_κ(I)
    TwoArgument { ws_y: JackWorkspace },
    /// a_κ · C_κ(X) for arbitrary coefficients a_κ
    Custom {
        coeff: &'a mut dyn FnMut(&Partition) -> f64,
    },
}

struct GeneralEngine<'a> {
    alpha: f64,
    a: &'a [f64],
    b: &'a [f64],
    m: usize,
    nmat: f64,
    nparts: usize,
    ws: JackWorkspace,
    mode: TermWeight<'a>,
    kappa: Vec<usize>,
    conj: Vec<usize>,
    nprefix: Vec<usize>,
    acc: Accumulator,
}

impl<'a> GeneralEngine<'a> {
    /// `q` is Q_{prefix}, `jid` is J_{prefix}(I_n), `fact` is |prefix|!.
    fn sweep(&mut self, row: usize, budget: usize, q_parent: f64, jid_parent: f64, fact_parent: f64) -> Result<()> {
        let prev = if row == 1 {
            budget
        } else {
            self.kappa[row - 2]
        };
        let r = prev.min(budget);
        let mut q = q_parent;
        let mut jid = jid_parent;
        let mut fact = fact_parent;
        self.kappa.push(0);
        self.nprefix.push(0);
        let mut reached = 0;
        for v in 1..=r {
            self.kappa[row - 1] = v;
            self.conj[v - 1] += 1;
            reached = v;
            let weight = self.m - budget + v;
            q *= q_update_factor(&self.kappa, &self.conj, row, self.alpha, self.a, self.b)?;
            jid *= self.nmat - row as f64 + 1.0 + self.alpha * (v as f64 - 1.0);
            fact *= weight as f64;
            let nk = if row == 1 {
                v
            } else {
                self.ws.partition_table().child_pointer(self.nprefix[row - 2]) + v - 1
            };
            self.nprefix[row - 1] = nk;
            self.ws.fill_row(&self.kappa, nk);
            let jx = self.ws.row_value(nk);
            let term = match &mut self.mode {
                TermWeight::Single => q * jx,
                TermWeight::TwoArgument { ws_y } => {
                    ws_y.fill_row(&self.kappa, nk);
                    q * jx * ws_y.row_value(nk) / jid
                }
                TermWeight::Custom { coeff } => {
                    let kappa = Partition::from_parts_unchecked(self.kappa.clone());
                    coeff(&kappa) * fact * q * jx
                }
            };
            self.acc.add(weight, term);
            if budget > v && row < self.nparts {
                self.sweep(row + 1, budget - v, q, jid, fact)?;
            }
        }
        for c in 0..reached {
            self.conj[c] -= 1;
        }
        self.kappa.pop();
        self.nprefix.pop();
        Ok(())
    }

    fn run(mut self, warnings: Vec<Warning>) -> Result<TruncationResult> {
        if self.m >= 1 {
            self.sweep(1, self.m, 1.0, 1.0, 1.0)?;
        }
        Ok(self.acc.finish(warnings))
    }
}

fn check_eigenvalues(x: &[f64]) -> Result<()> {
    if x.is_empty() {
        return Err(Error::InvalidArgument(
            "eigenvalue list must be non-empty".into(),
        ));
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("eigenvalues must be finite".into()));
    }
    Ok(())
}

/// Evaluates the truncation at X = diag(x), or the two-matrix-argument form
/// when `y` is given (each term additionally weighted by C_κ(Y)/C_κ(I)).
pub fn hg_general(
    params: &SeriesParameters,
    x: &[f64],
    y: Option<&[f64]>,
) -> Result<TruncationResult> {
    check_eigenvalues(x)?;
    let m = params.m;
    let n = x.len();
    let mode = match y {
        None => TermWeight::Single,
        Some(y) => {
            check_eigenvalues(y)?;
            if y.len() != n {
                return Err(Error::InvalidArgument(format!(
                    "second argument has {} eigenvalues, expected {n}",
                    y.len()
                )));
            }
            TermWeight::TwoArgument {
                ws_y: JackWorkspace::new(m, y, params.alpha)?,
            }
        }
    };
    let ws = JackWorkspace::new(m, x, params.alpha)?;
    let nparts = ws.partition_table().max_parts();
    let max_abs_x = x.iter().fold(0.0f64, |a, &v| a.max(v.abs()));
    let warnings = divergence_warnings(params, max_abs_x);
    let engine = GeneralEngine {
        alpha: params.alpha,
        a: &params.a,
        b: &params.b,
        m,
        nmat: n as f64,
        nparts,
        ws,
        mode,
        kappa: Vec::with_capacity(nparts + 1),
        conj: vec![0; m + 1],
        nprefix: Vec::with_capacity(nparts + 1),
        acc: Accumulator::new(m),
    };
    engine.run(warnings)
}

/// Σ_{|κ| ≤ m} a_κ · C_κ^(α)(x) for arbitrary coefficients supplied by the
/// callback, sharing the Jack machinery of the general evaluator.
pub fn hg_custom(
    m: usize,
    alpha: f64,
    mut coeff: impl FnMut(&Partition) -> f64,
    x: &[f64],
) -> Result<TruncationResult> {
    check_eigenvalues(x)?;
    let ws = JackWorkspace::new(m, x, alpha)?;
    let nparts = ws.partition_table().max_parts();
    let empty_coeff = coeff(&Partition::empty());
    let engine = GeneralEngine {
        alpha,
        a: &[],
        b: &[],
        m,
        nmat: x.len() as f64,
        nparts,
        ws,
        mode: TermWeight::Custom { coeff: &mut coeff },
        kappa: Vec::with_capacity(nparts + 1),
        conj: vec![0; m + 1],
        nprefix: Vec::with_capacity(nparts + 1),
        acc: {
            let mut acc = Accumulator::new(m);
            // the κ = () term carries the caller's coefficient
            acc.degree_sums[0] = empty_coeff;
            if m == 0 {
                acc.tail = empty_coeff.abs();
            }
            acc
        },
    };
    engine.run(Vec::new())
}
