//! Asymptotically almost periodic functions over a finitely generated
//! frequency module, and their spectrum `ℝ ⊔ 𝕋^d`.
//!
//! The algebra is presented exactly: the vanishing-at-infinity part is a
//! finite sum of tents, the almost periodic part a trigonometric polynomial
//! over declared rationally independent frequencies.  Characters are point
//! evaluation on ℝ or torus evaluation killing the tent part.

mod kronecker;
mod mean;
mod opens;

pub use kronecker::{angular_distance, kronecker_search};
pub use mean::{
    auto_panels, bohr_mean, decompose, fourier_bohr, midpoint_mean, DecompositionReport,
    MeanEstimate, ResidualWindow,
};
pub use opens::{basic_open_contains, type3_preimage_d1, Arc, BasicOpen, PeriodicIntervals};

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Positive, strictly increasing frequencies, declared rationally
/// independent.  Independence is undecidable from floats, so construction
/// only *screens* for small-integer relations `|Σ kⱼλⱼ| < τ` with
/// `0 ≠ |k|∞ ≤ K`.
#[derive(Clone, PartialEq, Debug)]
pub struct FrequencyBasis {
    lambda: Vec<f64>,
}

impl FrequencyBasis {
    pub const DEFAULT_REL_BOUND: i64 = 10;
    pub const DEFAULT_REL_TOL: f64 = 1e-9;

    pub fn new(lambda: Vec<f64>) -> Result<Self> {
        Self::with_screen(lambda, Self::DEFAULT_REL_BOUND, Self::DEFAULT_REL_TOL)
    }

    pub fn with_screen(lambda: Vec<f64>, rel_bound: i64, rel_tol: f64) -> Result<Self> {
        if lambda.is_empty() {
            return Err(Error::BadBasis("at least one frequency required".into()));
        }
        if lambda.len() > 6 {
            return Err(Error::BadBasis("at most 6 generators supported".into()));
        }
        for w in lambda.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::BadBasis("frequencies must be strictly increasing".into()));
            }
        }
        if lambda[0] <= 0.0 || !lambda.iter().all(|l| l.is_finite()) {
            return Err(Error::BadBasis("frequencies must be positive and finite".into()));
        }
        let basis = FrequencyBasis { lambda };
        if let Some(k) = basis.small_relation(rel_bound, rel_tol) {
            return Err(Error::BadBasis(format!(
                "near rational relation detected at integer vector {k:?}"
            )));
        }
        Ok(basis)
    }

    fn small_relation(&self, bound: i64, tol: f64) -> Option<Vec<i64>> {
        let d = self.dim();
        let mut k = vec![-bound; d];
        loop {
            if k.iter().any(|&c| c != 0) && self.pairing(&k).unwrap().abs() < tol {
                return Some(k);
            }
            let mut i = 0;
            loop {
                if i == d {
                    return None;
                }
                k[i] += 1;
                if k[i] <= bound {
                    break;
                }
                k[i] = -bound;
                i += 1;
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.lambda.len()
    }

    pub fn lambda(&self) -> &[f64] {
        &self.lambda
    }

    /// `⟨k, λ⟩`.
    pub fn pairing(&self, k: &[i64]) -> Result<f64> {
        if k.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: k.len() });
        }
        Ok(k.iter()
            .zip(&self.lambda)
            .map(|(&ki, &li)| ki as f64 * li)
            .sum())
    }
}

/// A finite trigonometric polynomial `Σ c_k exp(i⟨k,λ⟩t)`.
#[derive(Clone, PartialEq, Debug)]
pub struct TrigPolynomial {
    basis: FrequencyBasis,
    coeffs: BTreeMap<Vec<i64>, Complex64>,
}

impl TrigPolynomial {
    pub fn zero(basis: FrequencyBasis) -> Self {
        TrigPolynomial { basis, coeffs: BTreeMap::new() }
    }

    pub fn constant(basis: FrequencyBasis, c: Complex64) -> Self {
        let mut p = Self::zero(basis);
        let k = vec![0; p.basis.dim()];
        p.set_coeff(k, c).unwrap();
        p
    }

    pub fn monomial(basis: FrequencyBasis, k: Vec<i64>, c: Complex64) -> Result<Self> {
        let mut p = Self::zero(basis);
        p.set_coeff(k, c)?;
        Ok(p)
    }

    pub fn from_coeffs(
        basis: FrequencyBasis,
        coeffs: impl IntoIterator<Item = (Vec<i64>, Complex64)>,
    ) -> Result<Self> {
        let mut p = Self::zero(basis);
        for (k, c) in coeffs {
            let sum = p.coeff(&k) + c;
            p.set_coeff(k, sum)?;
        }
        Ok(p)
    }

    pub fn set_coeff(&mut self, k: Vec<i64>, c: Complex64) -> Result<()> {
        if k.len() != self.basis.dim() {
            return Err(Error::DimensionMismatch { expected: self.basis.dim(), got: k.len() });
        }
        if c == Complex64::ZERO {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, c);
        }
        Ok(())
    }

    pub fn basis(&self) -> &FrequencyBasis {
        &self.basis
    }

    pub fn coeff(&self, k: &[i64]) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(Complex64::ZERO)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&Vec<i64>, Complex64)> {
        self.coeffs.iter().map(|(k, &c)| (k, c))
    }

    pub fn constant_coeff(&self) -> Complex64 {
        self.coeff(&vec![0; self.basis.dim()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        self.coeffs
            .iter()
            .map(|(k, c)| c * Complex64::cis(self.basis.pairing(k).unwrap() * t))
            .sum()
    }

    /// Value of the character at torus angles θ: `Σ c_k exp(i⟨k,θ⟩)`.
    pub fn eval_angles(&self, theta: &[f64]) -> Result<Complex64> {
        if theta.len() != self.basis.dim() {
            return Err(Error::DimensionMismatch { expected: self.basis.dim(), got: theta.len() });
        }
        Ok(self
            .coeffs
            .iter()
            .map(|(k, c)| {
                let phase: f64 = k.iter().zip(theta).map(|(&ki, &th)| ki as f64 * th).sum();
                c * Complex64::cis(phase)
            })
            .sum())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch);
        }
        let mut out = self.clone();
        for (k, c) in other.coeffs() {
            let sum = out.coeff(k) + c;
            out.set_coeff(k.clone(), sum)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = Self::zero(self.basis.clone());
        for (k, v) in self.coeffs() {
            out.set_coeff(k.clone(), v * c).unwrap();
        }
        out
    }

    /// Coefficient convolution `(f·g)_k = Σ_{a+b=k} f_a g_b`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch);
        }
        let mut out = Self::zero(self.basis.clone());
        for (a, ca) in self.coeffs() {
            for (b, cb) in other.coeffs() {
                let k: Vec<i64> = a.iter().zip(b).map(|(&x, &y)| x + y).collect();
                let sum = out.coeff(&k) + ca * cb;
                out.set_coeff(k, sum)?;
            }
        }
        Ok(out)
    }

    /// `Σ|c_k|`; an exact sup-norm bound.
    pub fn one_norm(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).sum()
    }

    /// `Σ|c_k|·|⟨k,λ⟩|`; Lipschitz constant in time.
    pub fn time_lipschitz(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|(k, c)| c.norm() * self.basis.pairing(k).unwrap().abs())
            .sum()
    }

    /// `Σ|c_k|·|k|₁`; Lipschitz constant on the torus in the max angular
    /// metric.
    pub fn torus_lipschitz(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|(k, c)| c.norm() * k.iter().map(|ki| ki.unsigned_abs()).sum::<u64>() as f64)
            .sum()
    }

    /// The ℝ-action `t ↦ t + s` on coefficients: `c_k ↦ c_k·e^{i⟨k,λ⟩s}`.
    pub fn translate(&self, s: f64) -> Self {
        let mut out = Self::zero(self.basis.clone());
        for (k, c) in self.coeffs() {
            let phase = Complex64::cis(self.basis.pairing(k).unwrap() * s);
            out.set_coeff(k.clone(), c * phase).unwrap();
        }
        out
    }

    /// Real-valued iff `c_{-k} = conj(c_k)` throughout.
    pub fn is_real_valued(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|(k, c)| {
            let neg: Vec<i64> = k.iter().map(|&x| -x).collect();
            (self.coeff(&neg) - c.conj()).norm() <= tol
        })
    }
}

/// A single tent `amplitude·max(0, 1 − |t−center|/halfwidth)`.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Tent {
    pub center: f64,
    pub halfwidth: f64,
    pub amplitude: Complex64,
}

impl Tent {
    pub fn eval(&self, t: f64) -> Complex64 {
        self.amplitude * (1.0 - (t - self.center).abs() / self.halfwidth).max(0.0)
    }
}

/// A compactly supported continuous function: a finite sum of tents.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct BumpFunction {
    tents: Vec<Tent>,
}

impl BumpFunction {
    pub fn new(tents: Vec<Tent>) -> Result<Self> {
        for t in &tents {
            if t.halfwidth <= 0.0 || t.halfwidth.is_nan() || !t.center.is_finite() {
                return Err(Error::InvalidParameter("tent halfwidth must be positive".into()));
            }
        }
        Ok(BumpFunction { tents })
    }

    pub fn zero() -> Self {
        BumpFunction { tents: Vec::new() }
    }

    pub fn tents(&self) -> &[Tent] {
        &self.tents
    }

    pub fn is_zero(&self) -> bool {
        self.tents.is_empty()
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        self.tents.iter().map(|tent| tent.eval(t)).sum()
    }

    /// `Σ|amp|·halfwidth = Σ ∫|tent|`; bounds `∫|f|`.
    pub fn mass_bound(&self) -> f64 {
        self.tents.iter().map(|t| t.amplitude.norm() * t.halfwidth).sum()
    }

    pub fn lipschitz(&self) -> f64 {
        self.tents.iter().map(|t| t.amplitude.norm() / t.halfwidth).sum()
    }

    /// Smallest closed interval containing the support, if nonempty.
    pub fn support(&self) -> Option<(f64, f64)> {
        if self.tents.is_empty() {
            return None;
        }
        let lo = self.tents.iter().map(|t| t.center - t.halfwidth).fold(f64::INFINITY, f64::min);
        let hi = self
            .tents
            .iter()
            .map(|t| t.center + t.halfwidth)
            .fold(f64::NEG_INFINITY, f64::max);
        Some((lo, hi))
    }

    /// Exact sup-norm: the function is piecewise linear, and `|f|²` is
    /// convex on each piece, so the max sits on the breakpoint grid.
    pub fn sup_norm(&self) -> f64 {
        let mut breakpoints: Vec<f64> = Vec::new();
        for t in &self.tents {
            breakpoints.extend([t.center - t.halfwidth, t.center, t.center + t.halfwidth]);
        }
        breakpoints
            .iter()
            .map(|&t| self.eval(t).norm())
            .fold(0.0, f64::max)
    }
}

/// An element `a₀ + a₁` of the AAP algebra.  The two summands live in
/// different representations, so the decomposition is unique by
/// construction.
#[derive(Clone, PartialEq, Debug)]
pub struct AAPFunction {
    pub c0part: BumpFunction,
    pub appart: TrigPolynomial,
}

impl AAPFunction {
    pub fn new(c0part: BumpFunction, appart: TrigPolynomial) -> Self {
        AAPFunction { c0part, appart }
    }

    pub fn basis(&self) -> &FrequencyBasis {
        self.appart.basis()
    }

    pub fn evaluate(&self, t: f64) -> Complex64 {
        self.c0part.eval(t) + self.appart.eval(t)
    }
}

/// A point of the spectrum `ℝ ⊔ 𝕋^d`.
#[derive(Clone, PartialEq, Debug)]
pub enum SpectrumPoint {
    Real(f64),
    /// Angles reduced to `[0, 2π)`.
    Torus(Vec<f64>),
}

impl SpectrumPoint {
    pub fn torus(angles: impl IntoIterator<Item = f64>) -> Self {
        SpectrumPoint::Torus(angles.into_iter().map(|a| a.rem_euclid(TAU)).collect())
    }
}

/// `ι₁` restricted to the finitely generated module: `θⱼ = λⱼ·t mod 2π`.
/// The natural mapping `ι` itself is the identity `t ↦ Real(t)`.
pub fn natural_map(basis: &FrequencyBasis, t: f64) -> SpectrumPoint {
    SpectrumPoint::torus(basis.lambda().iter().map(|&l| l * t))
}

/// Character evaluation.  Real points evaluate the whole function; torus
/// points evaluate the almost periodic part only, annihilating `𝔄₀`.
pub fn evaluate_character(p: &SpectrumPoint, f: &AAPFunction) -> Result<Complex64> {
    match p {
        SpectrumPoint::Real(t) => Ok(f.evaluate(*t)),
        SpectrumPoint::Torus(theta) => f.appart.eval_angles(theta),
    }
}
