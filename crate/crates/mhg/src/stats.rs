//! Eigenvalue statistics of β-Laguerre and Wishart random matrices.
//!
//! Everything here reduces to a hypergeometric evaluation with a
//! Gamma-function prefactor: the c.d.f. of the largest eigenvalue (in its
//! Kummer-stabilized form), the p.d.f. of the smallest eigenvalue (a
//! terminating ₂F₀), and the p.d.f. of the Wishart trace (a Gamma-density
//! mixture over the series degrees). Prefactors are assembled in log space.

use crate::coefficients::{pochhammer, SeriesParameters};
use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::series::{hg_custom, hg_general, hg_identity};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};
use statrs::function::gamma::ln_gamma;

/// Parameters of a β-Laguerre or Wishart ensemble.
///
/// The Laguerre side uses `n`, `beta`, `a`; the Wishart side uses `n`, `l`,
/// `sigma_eigs` (with β = 2, a = l/2). Both constructors fill the fields of
/// the other side with the matching defaults so every instance is valid for
/// either family of formulas.
#[derive(Debug, Clone)]
pub struct EnsembleParams {
    /// Matrix size.
    pub n: usize,
    /// Laguerre parameter, a > β(n−1)/2.
    pub a: f64,
    /// Dyson-like parameter β > 0; the series parameter is α = 2/β.
    pub beta: f64,
    /// Wishart degrees of freedom, l > n.
    pub l: usize,
    /// Eigenvalues of the covariance matrix Σ, all positive.
    pub sigma_eigs: Vec<f64>,
}

impl EnsembleParams {
    /// β-Laguerre ensemble of size n with parameter a.
    pub fn laguerre(n: usize, beta: f64, a: f64) -> Result<Self> {
        let p = Self {
            n,
            a,
            beta,
            l: n + 1,
            sigma_eigs: vec![1.0; n.max(1)],
        };
        p.validate()?;
        Ok(p)
    }

    /// Wishart ensemble W_n(l, Σ) with Σ given by its eigenvalues.
    pub fn wishart(n: usize, l: usize, sigma_eigs: Vec<f64>) -> Result<Self> {
        let p = Self {
            n,
            a: l as f64 / 2.0,
            beta: 2.0,
            l,
            sigma_eigs,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn alpha(&self) -> f64 {
        2.0 / self.beta
    }

    fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::InvalidArgument("matrix size must be at least 1".into()));
        }
        if self.beta <= 0.0 || !self.beta.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "beta must be positive and finite, got {}",
                self.beta
            )));
        }
        let bound = self.beta / 2.0 * (self.n as f64 - 1.0);
        if self.a <= bound || !self.a.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "Laguerre parameter a = {} must exceed β(n−1)/2 = {bound}",
                self.a
            )));
        }
        if self.l <= self.n {
            return Err(Error::InvalidArgument(format!(
                "degrees of freedom l = {} must exceed n = {}",
                self.l, self.n
            )));
        }
        if self.sigma_eigs.len() != self.n {
            return Err(Error::InvalidArgument(format!(
                "expected {} covariance eigenvalues, got {}",
                self.n,
                self.sigma_eigs.len()
            )));
        }
        if self.sigma_eigs.iter().any(|&s| s <= 0.0 || !s.is_finite()) {
            return Err(Error::InvalidArgument(
                "covariance eigenvalues must be positive and finite".into(),
            ));
        }
        Ok(())
    }
}

/// log Γ_n^(α)(c) = (n(n−1)/(2α)) log π + Σ_{i=1..n} log Γ(c − (i−1)/α),
/// valid for c > (n−1)/α.
pub fn ln_mv_gamma(alpha: f64, n: usize, c: f64) -> Result<f64> {
    if n < 1 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if alpha <= 0.0 || !alpha.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "alpha must be positive and finite, got {alpha}"
        )));
    }
    let bound = (n as f64 - 1.0) / alpha;
    if c.is_nan() || c <= bound {
        return Err(Error::InvalidArgument(format!(
            "multivariate Gamma requires c > (n−1)/α = {bound}, got c = {c}"
        )));
    }
    let nf = n as f64;
    let mut acc = nf * (nf - 1.0) / (2.0 * alpha) * std::f64::consts::PI.ln();
    for i in 0..n {
        acc += ln_gamma(c - i as f64 / alpha);
    }
    Ok(acc)
}

/// Γ_n^(α)(c); prefer [`ln_mv_gamma`] in products of large factors.
pub fn mv_gamma(alpha: f64, n: usize, c: f64) -> Result<f64> {
    Ok(ln_mv_gamma(alpha, n, c)?.exp())
}

// ---------------------------------------------------------------------------
// Largest eigenvalue
// ---------------------------------------------------------------------------

/// P(λ_max < x) for the β-Laguerre ensemble, Kummer-stabilized: the ₁F₁
/// argument is +xI/2 with an e^{−nx/2} prefactor, so all series terms are
/// positive and no catastrophic cancellation occurs.
pub fn lmax_cdf_laguerre(x: f64, params: &EnsembleParams, m: usize) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::InvalidArgument(format!("x must be nonnegative, got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let (n, a, alpha) = (params.n, params.a, params.alpha());
    let shift = (n as f64 - 1.0) / alpha + 1.0;
    let sp = SeriesParameters::new(alpha, vec![shift], vec![a + shift], m)?;
    let f = hg_identity(&sp, n, &[x / 2.0])?.remove(0);
    let ln_pref = ln_mv_gamma(alpha, n, shift)? - ln_mv_gamma(alpha, n, a + shift)?
        + a * n as f64 * (x / 2.0).ln()
        - n as f64 * x / 2.0;
    Ok(ln_pref.exp() * f.value)
}

/// The unstabilized form of [`lmax_cdf_laguerre`]: ₁F₁(a; a+(n−1)/α+1; −xI/2)
/// with no exponential prefactor. Alternating series — kept for cross-checks
/// at small x only.
pub fn lmax_cdf_laguerre_direct(x: f64, params: &EnsembleParams, m: usize) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::InvalidArgument(format!("x must be nonnegative, got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let (n, a, alpha) = (params.n, params.a, params.alpha());
    let shift = (n as f64 - 1.0) / alpha + 1.0;
    let sp = SeriesParameters::new(alpha, vec![a], vec![a + shift], m)?;
    let f = hg_identity(&sp, n, &[-x / 2.0])?.remove(0);
    let ln_pref = ln_mv_gamma(alpha, n, shift)? - ln_mv_gamma(alpha, n, a + shift)?
        + a * n as f64 * (x / 2.0).ln();
    Ok(ln_pref.exp() * f.value)
}

/// P(λ_max < x) for the Wishart ensemble W_n(l, Σ), Kummer-stabilized, with
/// the matrix argument xΣ⁻¹/2 passed through its eigenvalues x/(2σ_i).
pub fn lmax_cdf_wishart(x: f64, params: &EnsembleParams, m: usize) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::InvalidArgument(format!("x must be positive, got {x}")));
    }
    let (n, l) = (params.n, params.l as f64);
    let nf = n as f64;
    let eigs: Vec<f64> = params.sigma_eigs.iter().map(|&s| x / (2.0 * s)).collect();
    let sp = SeriesParameters::new(2.0, vec![(nf + 1.0) / 2.0], vec![(nf + l + 1.0) / 2.0], m)?;
    let f = hg_general(&sp, &eigs, None)?;
    let ln_det: f64 = eigs.iter().map(|&e| e.ln()).sum();
    let tr: f64 = eigs.iter().sum();
    let ln_pref = ln_mv_gamma(2.0, n, (nf + 1.0) / 2.0)?
        - ln_mv_gamma(2.0, n, (l + nf + 1.0) / 2.0)?
        + l / 2.0 * ln_det
        - tr;
    Ok(ln_pref.exp() * f.value)
}

// ---------------------------------------------------------------------------
// Smallest eigenvalue
// ---------------------------------------------------------------------------

fn lmin_c(params: &EnsembleParams) -> Result<usize> {
    let c = params.a - params.beta / 2.0 * (params.n as f64 - 1.0) - 1.0;
    let rounded = c.round();
    if rounded < 0.0 || (c - rounded).abs() > 1e-9 {
        return Err(Error::InvalidArgument(format!(
            "smallest-eigenvalue density requires c = a − β(n−1)/2 − 1 to be a \
             nonnegative integer, got c = {c}"
        )));
    }
    Ok(rounded as usize)
}

/// Unnormalized p.d.f. of λ_min of the β-Laguerre ensemble:
/// x^{cn} e^{−nx/2} ₂F₀^(2/β)(−c, βn/2+1; −(2/x)I_{n−1}) with
/// c = a − β(n−1)/2 − 1 a nonnegative integer. The ₂F₀ terminates at degree
/// c(n−1), so no truncation parameter is needed. Normalize with
/// [`lmin_normalization`].
pub fn lmin_pdf_laguerre(x: f64, params: &EnsembleParams) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::InvalidArgument(format!("x must be nonnegative, got {x}")));
    }
    let (n, beta) = (params.n, params.beta);
    let c = lmin_c(params)?;
    if x == 0.0 {
        return Ok(if c == 0 { 1.0 } else { 0.0 });
    }
    let envelope = x.powi((c * n) as i32) * (-(n as f64) * x / 2.0).exp();
    if n == 1 {
        // no remaining eigenvalues to integrate out; the 2F0 factor is empty
        return Ok(envelope);
    }
    let m = c * (n - 1);
    let sp = SeriesParameters::new(
        2.0 / beta,
        vec![-(c as f64), beta * n as f64 / 2.0 + 1.0],
        vec![],
        m,
    )?;
    let f = hg_identity(&sp, n - 1, &[-2.0 / x])?.remove(0);
    Ok(envelope * f.value)
}

/// Normalizing constant Z = ∫₀^∞ f(x) dx for [`lmin_pdf_laguerre`], computed
/// by adaptive quadrature on [0, U] with U pushed out until the integrand is
/// below 10⁻¹² of its peak.
pub fn lmin_normalization(params: &EnsembleParams) -> Result<f64> {
    let c = lmin_c(params)?;
    let f = |x: f64| lmin_pdf_laguerre(x, params).unwrap_or(0.0);
    // envelope peak of x^{cn} e^{−nx/2} is at x = 2c
    let mut peak = f64::MIN_POSITIVE;
    let scan_to = 2.0 * c as f64 + 10.0;
    let mut xi = 0.0;
    while xi <= scan_to {
        peak = peak.max(f(xi));
        xi += scan_to / 200.0;
    }
    let mut upper = scan_to;
    while f(upper) > peak * 1e-12 {
        upper *= 1.5;
        if upper > 1e6 {
            return Err(Error::Resource(
                "smallest-eigenvalue density tail does not decay".into(),
            ));
        }
    }
    Ok(adaptive_simpson(&f, 0.0, upper, 1e-10 * peak * upper))
}

// ---------------------------------------------------------------------------
// Trace of a Wishart matrix
// ---------------------------------------------------------------------------

/// P.d.f. of tr A for A = W_n(l, Σ): a mixture of Gamma densities
/// g_{ln/2+k, 2λ} weighted by per-degree sums over partitions,
/// S_k = Σ_{κ⊢k} (l/2)_κ^(2) C_κ^(2)(I − λΣ⁻¹) / k!.
///
/// The S_k are independent of the evaluation point, so building the value
/// once and evaluating on a grid costs one series sweep total.
#[derive(Debug, Clone)]
pub struct TracePdfWishart {
    degree_sums: Vec<f64>,
    lambda: f64,
    ln_det_pref: f64,
    r0: f64,
}

impl TracePdfWishart {
    pub fn new(params: &EnsembleParams, m: usize) -> Result<Self> {
        params.validate()?;
        let (n, l) = (params.n, params.l as f64);
        let smax = params.sigma_eigs.iter().cloned().fold(f64::MIN, f64::max);
        let smin = params.sigma_eigs.iter().cloned().fold(f64::MAX, f64::min);
        let lambda = 2.0 * smax * smin / (smax + smin);
        let eigs: Vec<f64> = params.sigma_eigs.iter().map(|&s| 1.0 - lambda / s).collect();
        let half_l = l / 2.0;
        let coeff = |kappa: &Partition| {
            let mut fact = 1.0;
            for i in 2..=kappa.weight() {
                fact *= i as f64;
            }
            pochhammer(half_l, kappa, 2.0) / fact
        };
        let series = hg_custom(m, 2.0, coeff, &eigs)?;
        let mut degree_sums = Vec::with_capacity(m + 1);
        let mut prev = 0.0;
        for &p in &series.degree_partials {
            degree_sums.push(p - prev);
            prev = p;
        }
        let ln_det_pref: f64 = params
            .sigma_eigs
            .iter()
            .map(|&s| half_l * (lambda.ln() - s.ln()))
            .sum();
        Ok(Self {
            degree_sums,
            lambda,
            ln_det_pref,
            r0: l * n as f64 / 2.0,
        })
    }

    /// The density at u > 0.
    pub fn eval(&self, u: f64) -> Result<f64> {
        if u.is_nan() || u <= 0.0 {
            return Err(Error::InvalidArgument(format!("u must be positive, got {u}")));
        }
        Ok(self.terms(u)?.into_iter().sum::<f64>())
    }

    /// |last retained term| / |value| at u — a heuristic truncation check.
    pub fn diagnostic(&self, u: f64) -> Result<f64> {
        let terms = self.terms(u)?;
        let value: f64 = terms.iter().sum();
        let last = terms.last().copied().unwrap_or(0.0);
        Ok(last.abs() / value.abs().max(f64::MIN_POSITIVE))
    }

    fn terms(&self, u: f64) -> Result<Vec<f64>> {
        if u.is_nan() || u <= 0.0 {
            return Err(Error::InvalidArgument(format!("u must be positive, got {u}")));
        }
        let two_l = 2.0 * self.lambda;
        // g_{r0, 2λ}(u), then the recurrence g_{r+1}/g_r = u / (2λ r)
        let mut ln_g = -u / two_l + (self.r0 - 1.0) * u.ln() - self.r0 * two_l.ln()
            - ln_gamma(self.r0);
        ln_g += self.ln_det_pref;
        let mut g = ln_g.exp();
        let mut out = Vec::with_capacity(self.degree_sums.len());
        for (k, &s) in self.degree_sums.iter().enumerate() {
            out.push(g * s);
            g *= u / (two_l * (self.r0 + k as f64));
        }
        Ok(out)
    }
}

/// One-shot evaluation of the Wishart trace density; build a
/// [`TracePdfWishart`] instead when evaluating on a grid.
pub fn trace_pdf_wishart(u: f64, params: &EnsembleParams, m: usize) -> Result<f64> {
    TracePdfWishart::new(params, m)?.eval(u)
}

/// Draws `count` samples of tr A for A = W_n(l, Σ) with diagonal Σ:
/// tr A = Σ_j σ_j · Σ_{i=1..l} z_{ij}² with independent standard normals.
/// Deterministic for a fixed seed.
pub fn sample_wishart_trace(params: &EnsembleParams, count: usize, seed: u64) -> Result<Vec<f64>> {
    if count < 1 {
        return Err(Error::InvalidArgument("count must be at least 1".into()));
    }
    params.validate()?;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let normal = StandardNormal;
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut tr = 0.0;
        for &sigma in &params.sigma_eigs {
            let mut ss = 0.0;
            for _ in 0..params.l {
                let z: f64 = normal.sample(&mut rng);
                ss += z * z;
            }
            tr += sigma * ss;
        }
        out.push(tr);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
    h / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adaptive_step(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(fa, flm, fm, m - a);
    let right = simpson(fm, frm, fb, b - m);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    adaptive_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
        + adaptive_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// Adaptive Simpson quadrature of `f` over [a, b] to absolute tolerance `tol`.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(fa, fm, fb, b - a);
    adaptive_step(f, a, b, fa, fm, fb, whole, tol.max(1e-300), 40)
}
