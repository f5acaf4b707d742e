//! Log-log slope estimation for scaling sweeps: given norm values measured
//! along a parameter family λ ↦ v(λ), fit ln v = slope·ln λ + intercept by
//! least squares and report the fit quality.

use crate::error::{Error, Result};

/// A fitted power law v(λ) ≈ e^intercept · λ^slope.
#[derive(Debug, Clone, PartialEq)]
pub struct SlopeReport {
    /// The parameter values, strictly increasing, all ≥ 1.
    pub lambdas: Vec<f64>,
    /// The measured values at each parameter, all > 0.
    pub values: Vec<f64>,
    /// Least-squares slope in log-log coordinates.
    pub slope: f64,
    /// Least-squares intercept (ln v at λ = 1).
    pub intercept: f64,
    /// Largest |ln v − (slope·ln λ + intercept)| over the points.
    pub max_residual: f64,
}

/// Fit a power law through (λᵢ, vᵢ). Requires at least three points,
/// strictly increasing λ ≥ 1, and positive values.
pub fn scaling_slope(lambdas: &[f64], values: &[f64]) -> Result<SlopeReport> {
    if lambdas.len() != values.len() {
        return Err(Error::invalid(format!(
            "{} parameters vs {} values",
            lambdas.len(),
            values.len()
        )));
    }
    if lambdas.len() < 3 {
        return Err(Error::invalid("slope fit needs at least three points"));
    }
    for pair in lambdas.windows(2) {
        if !(pair[0] < pair[1]) {
            return Err(Error::invalid("parameters must be strictly increasing"));
        }
    }
    if lambdas[0] < 1.0 {
        return Err(Error::invalid("parameters must be >= 1"));
    }
    if values.iter().any(|v| !(*v > 0.0) || !v.is_finite()) {
        return Err(Error::invalid("values must be positive and finite"));
    }
    let xs: Vec<f64> = lambdas.iter().map(|l| l.ln()).collect();
    let ys: Vec<f64> = values.iter().map(|v| v.ln()).collect();
    let n = xs.len() as f64;
    let (sx, sy) = (xs.iter().sum::<f64>(), ys.iter().sum::<f64>());
    let sxx = xs.iter().map(|x| x * x).sum::<f64>();
    let sxy = xs.iter().zip(&ys).map(|(x, y)| x * y).sum::<f64>();
    let denom = n * sxx - sx * sx;
    let slope = (n * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / n;
    let max_residual = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - (slope * x + intercept)).abs())
        .fold(0.0f64, f64::max);
    Ok(SlopeReport {
        lambdas: lambdas.to_vec(),
        values: values.to_vec(),
        slope,
        intercept,
        max_residual,
    })
}
