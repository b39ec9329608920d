//! Bohr means and Fourier-Bohr coefficients with certified error bounds.
//!
//! Every estimate carries two bounds with distinct sources:
//!
//! * the truncation bound covers replacing the limit `T → ∞` by a finite
//!   horizon, using `|(1/2T)∫e^{iωt}dt| ≤ 1/(T|ω|)` per cross term plus
//!   `mass/(2T)` for the integrable part;
//! * the quadrature bound covers the composite midpoint rule, `h²/24·max|g″|`
//!   per unit length on smooth pieces plus a kink penalty `L·h²/4` for each
//!   panel where the tent part is not differentiable.

use num_complex::Complex64;

use super::{AAPFunction, TrigPolynomial};
use crate::error::{Error, Result};

/// A numerical mean with its certified error split.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct MeanEstimate {
    pub value: Complex64,
    /// Error from the finite horizon `T`.
    pub truncation_bound: f64,
    /// Error from the midpoint rule at the chosen panel count.
    pub quadrature_bound: f64,
}

impl MeanEstimate {
    pub fn bound(&self) -> f64 {
        self.truncation_bound + self.quadrature_bound
    }
}

/// Composite midpoint value of `(1/2T)∫_{-T}^{T} f(t)·e^{-iμt} dt`.
/// Panel contributions are combined by pairwise summation so the result is
/// deterministic and accurate at large panel counts.
pub fn midpoint_mean(f: &AAPFunction, mu: f64, horizon: f64, panels: usize) -> Result<Complex64> {
    if horizon <= 0.0 || horizon.is_nan() || panels == 0 {
        return Err(Error::InvalidParameter("horizon and panels must be positive".into()));
    }
    let h = 2.0 * horizon / panels as f64;
    let mut terms: Vec<Complex64> = (0..panels)
        .map(|i| {
            let t = -horizon + (i as f64 + 0.5) * h;
            f.evaluate(t) * Complex64::cis(-mu * t)
        })
        .collect();
    // Pairwise reduction.
    while terms.len() > 1 {
        let mut next = Vec::with_capacity(terms.len().div_ceil(2));
        for pair in terms.chunks(2) {
            next.push(pair.iter().sum());
        }
        terms = next;
    }
    Ok(terms[0] / panels as f64)
}

fn truncation_bound(f: &AAPFunction, mu: f64, horizon: f64) -> f64 {
    let cross: f64 = f
        .appart
        .coeffs()
        .filter_map(|(k, c)| {
            let gap = f.appart.basis().pairing(k).unwrap() - mu;
            (gap != 0.0).then(|| c.norm() / (horizon * gap.abs()))
        })
        .sum();
    cross + f.c0part.mass_bound() / (2.0 * horizon)
}

/// Coefficient of `h²` in the quadrature bound, so that the midpoint error
/// of the mean is at most `h²·Q`.
fn quadrature_factor(f: &AAPFunction, mu: f64, horizon: f64) -> f64 {
    let m2: f64 = f
        .appart
        .coeffs()
        .map(|(k, c)| {
            let gap = f.appart.basis().pairing(k).unwrap() - mu;
            c.norm() * gap * gap
        })
        .sum();
    let lip = f.c0part.lipschitz();
    let sup = f.c0part.sup_norm();
    let tent_smooth = 2.0 * mu.abs() * lip + mu * mu * sup;
    let kinks = 3.0 * f.c0part.tents().len() as f64;
    let kink_penalty = kinks * (lip + mu.abs() * sup) / (4.0 * 2.0 * horizon);
    (m2 + tent_smooth) / 24.0 + kink_penalty
}

/// Panel count making the quadrature bound at most a tenth of the
/// truncation bound, and never coarser than four panels per unit of the
/// fastest phase.
pub fn auto_panels(f: &AAPFunction, mu: f64, horizon: f64) -> usize {
    let omega_max = f
        .appart
        .coeffs()
        .map(|(k, _)| (f.appart.basis().pairing(k).unwrap() - mu).abs())
        .fold(mu.abs(), f64::max);
    let floor = (horizon * (omega_max + 1.0) * 4.0).ceil() as usize;
    let trunc = truncation_bound(f, mu, horizon);
    let q = quadrature_factor(f, mu, horizon);
    let refined = if q > 0.0 && trunc > 0.0 {
        let h_req = (0.1 * trunc / q).sqrt();
        (2.0 * horizon / h_req).ceil() as usize
    } else {
        0
    };
    floor.max(refined).max(1)
}

/// Fourier-Bohr coefficient `M(f·e^{-iμt})` at horizon `T`, with bounds.
pub fn fourier_bohr(f: &AAPFunction, mu: f64, horizon: f64, panels: usize) -> Result<MeanEstimate> {
    let value = midpoint_mean(f, mu, horizon, panels)?;
    let h = 2.0 * horizon / panels as f64;
    Ok(MeanEstimate {
        value,
        truncation_bound: truncation_bound(f, mu, horizon),
        quadrature_bound: h * h * quadrature_factor(f, mu, horizon),
    })
}

/// Bohr mean `M(f)`; equals `fourier_bohr` at `μ = 0`.
pub fn bohr_mean(f: &AAPFunction, horizon: f64, panels: usize) -> Result<MeanEstimate> {
    fourier_bohr(f, 0.0, horizon, panels)
}

/// One probed frequency in a decomposition run.
#[derive(Clone, PartialEq, Debug)]
pub struct ResidualWindow {
    pub k: Vec<i64>,
    pub estimate: Complex64,
    pub bound: f64,
}

/// Result of probing all integer vectors `|k|∞ ≤ kmax`.
#[derive(Clone, PartialEq, Debug)]
pub struct DecompositionReport {
    /// Estimated polynomial built from coefficients that cleared their own
    /// error bound.
    pub recovered: TrigPolynomial,
    /// Every probed frequency with its raw estimate and bound.
    pub windows: Vec<ResidualWindow>,
    pub max_bound: f64,
    /// True when every kept coefficient exceeds twice its bound and every
    /// dropped estimate sits below its bound, so the classification is
    /// certified rather than a guess.
    pub decisive: bool,
}

/// Recover the almost periodic coefficients of `f` in the box `|k|∞ ≤ kmax`
/// by Fourier-Bohr probing at horizon `T`.
pub fn decompose(f: &AAPFunction, kmax: i64, horizon: f64) -> Result<DecompositionReport> {
    if kmax < 0 {
        return Err(Error::InvalidParameter("kmax must be nonnegative".into()));
    }
    let basis = f.appart.basis().clone();
    let d = basis.dim();
    let mut recovered = TrigPolynomial::zero(basis.clone());
    let mut windows = Vec::new();
    let mut max_bound: f64 = 0.0;
    let mut decisive = true;

    let mut k = vec![-kmax; d];
    loop {
        let mu = basis.pairing(&k)?;
        let est = fourier_bohr(f, mu, horizon, auto_panels(f, mu, horizon))?;
        let bound = est.bound();
        max_bound = max_bound.max(bound);
        if est.value.norm() > bound {
            recovered.set_coeff(k.clone(), est.value)?;
            if est.value.norm() <= 2.0 * bound {
                decisive = false;
            }
        }
        windows.push(ResidualWindow { k: k.clone(), estimate: est.value, bound });

        let mut i = 0;
        loop {
            if i == d {
                return Ok(DecompositionReport { recovered, windows, max_bound, decisive });
            }
            k[i] += 1;
            if k[i] <= kmax {
                break;
            }
            k[i] = -kmax;
            i += 1;
        }
    }
}
