//! Deterministic search for real times approximating a torus point.
//!
//! Rationally independent frequencies wind a line densely around the torus,
//! so every target is hit to any tolerance eventually.  The search walks the
//! exact solutions for the first coordinate, `t_n = θ₁/λ₁ + 2πn/λ₁` with
//! `n = 0, 1, -1, 2, -2, …`, and accepts the first one placing all other
//! coordinates within the tolerance.

use std::f64::consts::TAU;

use super::FrequencyBasis;
use crate::error::{Error, Result};

/// Distance on the circle between angles, at most π.
pub fn angular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// First `t` with `max_j dist(λⱼt, θⱼ) ≤ eps`, scanning `|t| ≤ t_max`.
/// Returns `None` when the budget runs out before a hit; never a false
/// positive, since each candidate is checked directly.
pub fn kronecker_search(
    basis: &FrequencyBasis,
    theta: &[f64],
    eps: f64,
    t_max: f64,
) -> Result<Option<f64>> {
    if theta.len() != basis.dim() {
        return Err(Error::DimensionMismatch { expected: basis.dim(), got: theta.len() });
    }
    if eps <= 0.0 || t_max <= 0.0 || eps.is_nan() || t_max.is_nan() {
        return Err(Error::InvalidParameter("eps and t_max must be positive".into()));
    }
    let lambda = basis.lambda();
    let base = theta[0].rem_euclid(TAU) / lambda[0];
    let stride = TAU / lambda[0];
    let hits = |t: f64| {
        theta
            .iter()
            .zip(lambda)
            .all(|(&th, &l)| angular_distance(l * t, th) <= eps)
    };
    let mut n: i64 = 0;
    loop {
        let t = base + n as f64 * stride;
        if t.abs() > t_max && (base - (n.abs() + 1) as f64 * stride).abs() > t_max {
            return Ok(None);
        }
        if t.abs() <= t_max && hits(t) {
            return Ok(Some(t));
        }
        n = if n > 0 { -n } else { -n + 1 };
    }
}
