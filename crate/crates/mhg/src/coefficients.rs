//! Generalized Pochhammer symbols, α-deformed hook products, and the series
//! coefficient Q_κ in direct and update form.

use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Below this magnitude a denominator Pochhammer factor is treated as an
/// exact zero (a pole) rather than propagated as Inf/NaN.
pub(crate) const POLE_EPS: f64 = 1e-300;

/// Parameters of a truncated series: α, numerator list a, denominator list b,
/// truncation degree m.
#[derive(Debug, Clone)]
pub struct SeriesParameters {
    pub alpha: f64,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub m: usize,
}

impl SeriesParameters {
    pub fn new(alpha: f64, a: Vec<f64>, b: Vec<f64>, m: usize) -> Result<Self> {
        if alpha <= 0.0 || !alpha.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "alpha must be positive and finite, got {alpha}"
            )));
        }
        if a.iter().chain(b.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(
                "series parameters must be finite".into(),
            ));
        }
        Ok(Self { alpha, a, b, m })
    }

    /// True when some numerator parameter is a nonpositive integer, which
    /// makes the series terminate at a finite degree.
    pub(crate) fn is_terminating(&self) -> bool {
        self.a
            .iter()
            .any(|&ai| ai <= 0.0 && (ai - ai.round()).abs() < 1e-12)
    }
}

fn check_box(kappa: &Partition, i: usize, j: usize) -> Result<()> {
    if i < 1 || j < 1 || i > kappa.len() || j > kappa.part(i) {
        return Err(Error::InvalidArgument(format!(
            "box ({i},{j}) outside diagram of {kappa}"
        )));
    }
    Ok(())
}

/// Upper hook length h*_κ(i,j) = κ′_j − i + α(κ_i − j + 1).
pub fn hook_upper(kappa: &Partition, i: usize, j: usize, alpha: f64) -> Result<f64> {
    check_box(kappa, i, j)?;
    Ok(kappa.conj_part(j) as f64 - i as f64 + alpha * (kappa.part(i) as f64 - j as f64 + 1.0))
}

/// Lower hook length h^κ_*(i,j) = κ′_j − i + 1 + α(κ_i − j).
pub fn hook_lower(kappa: &Partition, i: usize, j: usize, alpha: f64) -> Result<f64> {
    check_box(kappa, i, j)?;
    Ok(kappa.conj_part(j) as f64 - i as f64 + 1.0 + alpha * (kappa.part(i) as f64 - j as f64))
}

/// Generalized Pochhammer symbol (a)_κ^(α) = ∏_{(i,j)∈κ} (a − (i−1)/α + j − 1).
pub fn pochhammer(a: f64, kappa: &Partition, alpha: f64) -> f64 {
    let mut prod = 1.0;
    for (row, &p) in kappa.parts().iter().enumerate() {
        let base = a - row as f64 / alpha;
        for j in 1..=p {
            prod *= base + j as f64 - 1.0;
        }
    }
    prod
}

/// j_κ = ∏ boxes of lower·upper hook lengths; strictly positive for α > 0.
pub fn j_norm(kappa: &Partition, alpha: f64) -> f64 {
    let conj = kappa.conj_parts();
    let mut prod = 1.0;
    for (row, &p) in kappa.parts().iter().enumerate() {
        let i = (row + 1) as f64;
        for j in 1..=p {
            let cj = conj[j - 1] as f64;
            let upper = cj - i + alpha * (p as f64 - j as f64 + 1.0);
            let lower = cj - i + 1.0 + alpha * (p as f64 - j as f64);
            prod *= upper * lower;
        }
    }
    prod
}

/// Q_κ = α^{|κ|} ∏(a_i)_κ / (j_κ ∏(b_j)_κ), evaluated from scratch.
pub fn q_coefficient_direct(params: &SeriesParameters, kappa: &Partition) -> Result<f64> {
    let alpha = params.alpha;
    let mut q = alpha.powi(kappa.weight() as i32) / j_norm(kappa, alpha);
    for &ai in &params.a {
        q *= pochhammer(ai, kappa, alpha);
    }
    for &bj in &params.b {
        let denom = pochhammer(bj, kappa, alpha);
        if denom.abs() < POLE_EPS {
            // locate the offending box for the diagnostic
            for (row, &p) in kappa.parts().iter().enumerate() {
                for j in 1..=p {
                    let f = bj - row as f64 / alpha + j as f64 - 1.0;
                    if f.abs() < POLE_EPS {
                        return Err(Error::Pole {
                            b: bj,
                            row: row + 1,
                            col: j,
                            kappa: kappa.parts().to_vec(),
                        });
                    }
                }
            }
            return Err(Error::Pole {
                b: bj,
                row: 0,
                col: 0,
                kappa: kappa.parts().to_vec(),
            });
        }
        q /= denom;
    }
    Ok(q)
}

/// The update ratio T = Q_κ / Q_{κ_(i)}: numerator/denominator shifts at the
/// new box plus the two hook correction products. `kappa`/`conj` describe the
/// partition *after* the part increment at (1-based) row `i`.
pub(crate) fn q_update_factor(
    kappa: &[usize],
    conj: &[usize],
    i: usize,
    alpha: f64,
    a: &[f64],
    b: &[f64],
) -> Result<f64> {
    let ki = kappa[i - 1];
    let c = -((i - 1) as f64) / alpha + ki as f64 - 1.0;
    let mut t = 1.0;
    for &aj in a {
        t *= aj + c;
    }
    for &bj in b {
        let f = bj + c;
        if f.abs() < POLE_EPS {
            return Err(Error::Pole {
                b: bj,
                row: i,
                col: ki,
                kappa: kappa.to_vec(),
            });
        }
        t /= f;
    }
    let d = ki as f64 * alpha - i as f64;
    for j in 1..ki {
        let e = d - j as f64 * alpha + conj[j - 1] as f64;
        let g = e + 1.0;
        t *= (g - alpha) * e / (g * (e + alpha));
    }
    for j in 1..i {
        let f = kappa[j - 1] as f64 * alpha - j as f64 - d;
        let h = f + alpha;
        let l = h * f;
        t *= (l - f) / (l + h);
    }
    Ok(t)
}

/// Q_κ updated from Q_{κ_(i)}; `kappa` is the partition after the increment
/// at row `i` (requires κ_i > κ_{i+1} so that κ_(i) is a partition).
pub fn q_coefficient_update(
    q_prev: f64,
    kappa: &Partition,
    i: usize,
    params: &SeriesParameters,
) -> Result<f64> {
    if i < 1 || i > kappa.len() {
        return Err(Error::InvalidArgument(format!(
            "row {i} out of range for {kappa}"
        )));
    }
    if kappa.part(i) <= kappa.part(i + 1) {
        return Err(Error::InvalidArgument(format!(
            "κ_({i}) is not a partition for κ = {kappa}"
        )));
    }
    let t = q_update_factor(
        kappa.parts(),
        kappa.conj_parts(),
        i,
        params.alpha,
        &params.a,
        &params.b,
    )?;
    Ok(q_prev * t)
}
