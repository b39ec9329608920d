//! Membership tests for basic open sets of the spectrum `ℝ ⊔ 𝕋^d`.
//!
//! Three shapes generate the topology: open subsets of the line alone,
//! complements of compacta together with the whole torus, and arc boxes on
//! the torus pulled back to the line along the winding.

use std::f64::consts::{PI, TAU};

use super::{kronecker::angular_distance, FrequencyBasis, SpectrumPoint};
use crate::error::{Error, Result};

/// An open arc on the circle, all angles within `radius` of `center`.
/// A radius of π or more is the full circle.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Arc {
    pub center: f64,
    pub radius: f64,
}

impl Arc {
    pub fn new(center: f64, radius: f64) -> Result<Self> {
        if radius <= 0.0 || radius.is_nan() || !center.is_finite() {
            return Err(Error::InvalidParameter("arc radius must be positive".into()));
        }
        Ok(Arc { center: center.rem_euclid(TAU), radius })
    }

    pub fn contains(&self, angle: f64) -> bool {
        self.radius >= PI || angular_distance(angle, self.center) < self.radius
    }
}

/// A basic open set of the twisted sum `ℝ ⊔ 𝕋^d`.
#[derive(Clone, PartialEq, Debug)]
pub enum BasicOpen {
    /// An open subset of the line, not meeting the torus.
    Type1 { intervals: Vec<(f64, f64)> },
    /// The whole torus plus the line outside a compact union of closed
    /// intervals.
    Type2 { excluded: Vec<(f64, f64)> },
    /// An arc box on the torus, together with its preimage on the line
    /// under the winding `t ↦ (λ₁t, …, λ_dt)`.
    Type3 { arcs: Vec<Arc> },
}

impl BasicOpen {
    pub fn type1(intervals: Vec<(f64, f64)>) -> Result<Self> {
        check_intervals(&intervals)?;
        Ok(BasicOpen::Type1 { intervals })
    }

    pub fn type2(excluded: Vec<(f64, f64)>) -> Result<Self> {
        check_intervals(&excluded)?;
        Ok(BasicOpen::Type2 { excluded })
    }

    pub fn type3(arcs: Vec<Arc>) -> Self {
        BasicOpen::Type3 { arcs }
    }
}

fn check_intervals(intervals: &[(f64, f64)]) -> Result<()> {
    for &(a, b) in intervals {
        if a >= b || !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidParameter(format!("bad interval ({a}, {b})")));
        }
    }
    Ok(())
}

/// Membership of a spectrum point in a basic open set.
pub fn basic_open_contains(
    basis: &FrequencyBasis,
    set: &BasicOpen,
    point: &SpectrumPoint,
) -> Result<bool> {
    if let SpectrumPoint::Torus(theta) = point {
        if theta.len() != basis.dim() {
            return Err(Error::DimensionMismatch { expected: basis.dim(), got: theta.len() });
        }
    }
    match (set, point) {
        (BasicOpen::Type1 { intervals }, SpectrumPoint::Real(t)) => {
            Ok(intervals.iter().any(|&(a, b)| a < *t && *t < b))
        }
        (BasicOpen::Type1 { .. }, SpectrumPoint::Torus(_)) => Ok(false),
        (BasicOpen::Type2 { excluded }, SpectrumPoint::Real(t)) => {
            Ok(!excluded.iter().any(|&(a, b)| a <= *t && *t <= b))
        }
        (BasicOpen::Type2 { .. }, SpectrumPoint::Torus(_)) => Ok(true),
        (BasicOpen::Type3 { arcs }, point) => {
            if arcs.len() != basis.dim() {
                return Err(Error::DimensionMismatch { expected: basis.dim(), got: arcs.len() });
            }
            match point {
                SpectrumPoint::Torus(theta) => {
                    Ok(arcs.iter().zip(theta).all(|(arc, &th)| arc.contains(th)))
                }
                SpectrumPoint::Real(t) => Ok(arcs
                    .iter()
                    .zip(basis.lambda())
                    .all(|(arc, &l)| arc.contains((l * t).rem_euclid(TAU)))),
            }
        }
    }
}

/// The preimage of an arc box on the line in dimension one: a periodic
/// family of open intervals, one per winding of the circle.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct PeriodicIntervals {
    /// One representative interval, the rest repeat with the period.
    pub base: (f64, f64),
    pub period: f64,
    /// True when the arc is the full circle and the preimage is all of ℝ.
    pub whole_line: bool,
}

impl PeriodicIntervals {
    pub fn contains(&self, t: f64) -> bool {
        if self.whole_line {
            return true;
        }
        let shifted = (t - self.base.0).rem_euclid(self.period);
        shifted < self.base.1 - self.base.0
    }

    /// Preimages of nonempty arcs recur forever in both directions.
    pub fn is_unbounded(&self) -> bool {
        true
    }
}

/// Compute `{t : λ₁t mod 2π ∈ arc}` for a one dimensional basis.
pub fn type3_preimage_d1(basis: &FrequencyBasis, arc: Arc) -> Result<PeriodicIntervals> {
    if basis.dim() != 1 {
        return Err(Error::Unsupported(
            "closed form preimage is only available in dimension one".into(),
        ));
    }
    let l = basis.lambda()[0];
    let period = TAU / l;
    if arc.radius >= PI {
        return Ok(PeriodicIntervals { base: (0.0, period), period, whole_line: true });
    }
    let lo = (arc.center - arc.radius) / l;
    let hi = (arc.center + arc.radius) / l;
    Ok(PeriodicIntervals { base: (lo, hi), period, whole_line: false })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis2() -> FrequencyBasis {
        FrequencyBasis::new(vec![1.0, 2f64.sqrt()]).unwrap()
    }

    #[test]
    fn arcs_wrap_around() {
        let arc = Arc::new(0.0, 0.5).unwrap();
        assert!(arc.contains(0.3));
        assert!(arc.contains(TAU - 0.3));
        assert!(!arc.contains(1.0));
        let full = Arc::new(1.0, PI).unwrap();
        assert!(full.contains(4.0));
        assert!(Arc::new(0.0, 0.0).is_err());
    }

    #[test]
    fn type1_misses_the_torus() {
        let b = basis2();
        let u = BasicOpen::type1(vec![(0.0, 1.0), (5.0, 6.0)]).unwrap();
        assert!(basic_open_contains(&b, &u, &SpectrumPoint::Real(0.5)).unwrap());
        assert!(basic_open_contains(&b, &u, &SpectrumPoint::Real(5.5)).unwrap());
        assert!(!basic_open_contains(&b, &u, &SpectrumPoint::Real(2.0)).unwrap());
        assert!(!basic_open_contains(&b, &u, &SpectrumPoint::torus([0.0, 0.0])).unwrap());
    }

    #[test]
    fn type2_contains_the_whole_torus() {
        let b = basis2();
        let u = BasicOpen::type2(vec![(-1.0, 1.0)]).unwrap();
        assert!(basic_open_contains(&b, &u, &SpectrumPoint::torus([2.0, 3.0])).unwrap());
        assert!(!basic_open_contains(&b, &u, &SpectrumPoint::Real(0.0)).unwrap());
        assert!(basic_open_contains(&b, &u, &SpectrumPoint::Real(1.5)).unwrap());
    }

    #[test]
    fn type3_matches_the_winding() {
        let b = basis2();
        let w = BasicOpen::type3(vec![Arc::new(0.0, 0.4).unwrap(), Arc::new(0.0, 0.4).unwrap()]);
        // t = 0 winds to the origin of the torus.
        assert!(basic_open_contains(&b, &w, &SpectrumPoint::Real(0.0)).unwrap());
        assert!(basic_open_contains(&b, &w, &SpectrumPoint::torus([0.1, TAU - 0.1])).unwrap());
        assert!(!basic_open_contains(&b, &w, &SpectrumPoint::torus([0.1, 1.0])).unwrap());
        // t = 2π: first coordinate back at 0, second at 2π(√2−1) ≈ 2.6.
        assert!(!basic_open_contains(&b, &w, &SpectrumPoint::Real(TAU)).unwrap());
    }

    #[test]
    fn type3_arity_checked() {
        let b = basis2();
        let w = BasicOpen::type3(vec![Arc::new(0.0, 0.4).unwrap()]);
        assert!(basic_open_contains(&b, &w, &SpectrumPoint::Real(0.0)).is_err());
        assert!(basic_open_contains(&b, &w, &SpectrumPoint::torus([0.0])).is_err());
    }

    #[test]
    fn d1_preimage_is_the_periodic_family() {
        let b = FrequencyBasis::new(vec![2.0]).unwrap();
        let arc = Arc::new(0.0, 0.5).unwrap();
        let pre = type3_preimage_d1(&b, arc).unwrap();
        assert!((pre.period - PI).abs() < 1e-12);
        assert!(pre.is_unbounded());
        let w = BasicOpen::type3(vec![arc]);
        for t in [-7.3, -0.2, 0.0, 0.1, 0.3, 1.0, 2.9, 3.15, 100.05] {
            assert_eq!(
                pre.contains(t),
                basic_open_contains(&b, &w, &SpectrumPoint::Real(t)).unwrap(),
                "t = {t}"
            );
        }
    }

    #[test]
    fn d1_full_circle_preimage_is_the_line() {
        let b = FrequencyBasis::new(vec![1.0]).unwrap();
        let pre = type3_preimage_d1(&b, Arc::new(0.0, PI).unwrap()).unwrap();
        assert!(pre.whole_line);
        assert!(pre.contains(1234.5));
        assert!(type3_preimage_d1(&basis2(), Arc::new(0.0, 1.0).unwrap()).is_err());
    }
}
