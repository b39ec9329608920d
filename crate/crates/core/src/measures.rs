//! Direct-sum Borel measures on the three twisted-sum carriers.
//!
//! Every finite Borel measure on a sum space splits as `μ₁ ⊕ μ₂` along the
//! two blocks, and conversely every such sum is a measure.  This module
//! realizes both directions concretely: atomic measures on the discrete
//! carriers, Haar plus atoms on the torus factor, an evaluator-based
//! decomposition over the finite Borel algebra, and exact inner-regularity
//! witnesses in the integer-line model.

use num_complex::Complex64;

use crate::aap::{Arc, TrigPolynomial};
use crate::error::{Error, Result};
use crate::fintop::{borel_algebra, Subset, SumSpace};
use crate::zline::{TwistedZ, ZSumSet};

use std::f64::consts::TAU;

/// A purely atomic finite measure with nonnegative weights.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct AtomicMeasure<P> {
    atoms: Vec<(P, f64)>,
}

impl<P: PartialEq + Clone> AtomicMeasure<P> {
    pub fn new(atoms: Vec<(P, f64)>) -> Result<Self> {
        let mut merged: Vec<(P, f64)> = Vec::new();
        for (p, w) in atoms {
            if w < 0.0 || !w.is_finite() {
                return Err(Error::InvalidParameter("atom weights must be nonnegative".into()));
            }
            match merged.iter_mut().find(|(q, _)| *q == p) {
                Some((_, old)) => *old += w,
                None => merged.push((p, w)),
            }
        }
        merged.retain(|&(_, w)| w > 0.0);
        Ok(AtomicMeasure { atoms: merged })
    }

    pub fn zero() -> Self {
        AtomicMeasure { atoms: Vec::new() }
    }

    pub fn atoms(&self) -> &[(P, f64)] {
        &self.atoms
    }

    pub fn mass(&self) -> f64 {
        self.atoms.iter().map(|&(_, w)| w).sum()
    }

    pub fn weight(&self, p: &P) -> f64 {
        self.atoms
            .iter()
            .find_map(|(q, w)| (q == p).then_some(*w))
            .unwrap_or(0.0)
    }

    /// Mass carried inside a set given by a membership predicate.
    pub fn measure_where(&self, mut member: impl FnMut(&P) -> bool) -> f64 {
        self.atoms.iter().filter(|(p, _)| member(p)).map(|&(_, w)| w).sum()
    }
}

/// Haar measure scaled by `haar_weight`, plus finitely many atoms, on 𝕋^d.
/// Normalized Haar is `haar_weight = 1` with no atoms.
#[derive(Clone, PartialEq, Debug)]
pub struct TorusMeasure {
    pub haar_weight: f64,
    pub atoms: AtomicMeasure<Vec<f64>>,
}

impl TorusMeasure {
    pub fn new(haar_weight: f64, atoms: AtomicMeasure<Vec<f64>>) -> Result<Self> {
        if haar_weight < 0.0 || !haar_weight.is_finite() {
            return Err(Error::InvalidParameter("haar weight must be nonnegative".into()));
        }
        Ok(TorusMeasure { haar_weight, atoms })
    }

    pub fn haar() -> Self {
        TorusMeasure { haar_weight: 1.0, atoms: AtomicMeasure::zero() }
    }

    pub fn mass(&self) -> f64 {
        self.haar_weight + self.atoms.mass()
    }

    /// Measure of an arc box: Haar of a box is the product of arc lengths
    /// over `(2π)^d`.
    pub fn box_measure(&self, arcs: &[Arc]) -> f64 {
        let haar_part: f64 = arcs.iter().map(|a| (2.0 * a.radius).min(TAU) / TAU).product();
        let atomic = self.atoms.measure_where(|theta| {
            theta.len() == arcs.len()
                && arcs.iter().zip(theta).all(|(arc, &th)| arc.contains(th))
        });
        self.haar_weight * haar_part + atomic
    }
}

/// `μ₁ ⊕ μ₂` on a finite sum space, both blocks atomic.
#[derive(Clone, PartialEq, Debug)]
pub struct FiniteSumMeasure {
    pub mu_y: AtomicMeasure<usize>,
    pub mu_z: AtomicMeasure<usize>,
}

impl FiniteSumMeasure {
    /// Measure of a subset of the joined ground set.
    pub fn measure_of(&self, space: &SumSpace, u: Subset) -> f64 {
        let (a, b) = space.split(u);
        self.mu_y.measure_where(|&p| a.contains(p)) + self.mu_z.measure_where(|&q| b.contains(q))
    }

    pub fn mass(&self) -> f64 {
        self.mu_y.mass() + self.mu_z.mass()
    }
}

/// `μ₁ ⊕ μ₂` on the integer-line model: atoms on ℤ and atoms on the finite
/// remainder.
#[derive(Clone, PartialEq, Debug)]
pub struct ZSumMeasure {
    pub mu_y: AtomicMeasure<i64>,
    pub mu_z: AtomicMeasure<usize>,
}

impl ZSumMeasure {
    pub fn measure_of(&self, s: &ZSumSet) -> f64 {
        self.mu_y.measure_where(|&p| s.ypart.contains(p))
            + self.mu_z.measure_where(|&q| s.zpart.contains(q))
    }

    pub fn mass(&self) -> f64 {
        self.mu_y.mass() + self.mu_z.mass()
    }
}

/// `μ₁ ⊕ μ₂` on the AAP spectrum `ℝ ⊔ 𝕋^d`.
#[derive(Clone, PartialEq, Debug)]
pub struct AapSumMeasure {
    pub mu_y: AtomicMeasure<f64>,
    pub mu_z: TorusMeasure,
}

/// A representable subset of `ℝ ⊔ 𝕋^d`: a finite union of intervals on the
/// line and a finite disjoint union of arc boxes on the torus.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct AapSet {
    pub intervals: Vec<(f64, f64)>,
    pub boxes: Vec<Vec<Arc>>,
}

fn arcs_disjoint(a: &Arc, b: &Arc) -> bool {
    crate::aap::angular_distance(a.center, b.center) >= a.radius + b.radius
}

impl AapSumMeasure {
    pub fn measure_of(&self, s: &AapSet) -> Result<f64> {
        // overlapping boxes would double count the Haar part; boxes are
        // disjoint iff they are disjoint in some coordinate
        for (i, bi) in s.boxes.iter().enumerate() {
            for bj in &s.boxes[i + 1..] {
                if bi.len() != bj.len() {
                    return Err(Error::DimensionMismatch { expected: bi.len(), got: bj.len() });
                }
                if !bi.iter().zip(bj).any(|(x, y)| arcs_disjoint(x, y)) {
                    return Err(Error::InvalidParameter(
                        "torus boxes must be pairwise disjoint".into(),
                    ));
                }
            }
        }
        let line = self
            .mu_y
            .measure_where(|&t| s.intervals.iter().any(|&(a, b)| a < t && t < b));
        let torus: f64 = s.boxes.iter().map(|b| self.mu_z.box_measure(b)).sum();
        Ok(line + torus)
    }

    pub fn mass(&self) -> f64 {
        self.mu_y.mass() + self.mu_z.mass()
    }
}

/// One block of an evaluator decomposition: the minimal algebra sets of
/// that block and the mass each one carries.
#[derive(Clone, PartialEq, Debug)]
pub struct BlockMeasure {
    pub cells: Vec<(Subset, f64)>,
}

impl BlockMeasure {
    pub fn mass(&self) -> f64 {
        self.cells.iter().map(|&(_, w)| w).sum()
    }
}

/// Result of splitting a measure, given only as an evaluator on the Borel
/// algebra of a finite sum space, into its two block components.
#[derive(Clone, PartialEq, Debug)]
pub struct FiniteMeasureDecomposition {
    pub mu_y: BlockMeasure,
    pub mu_z: BlockMeasure,
}

impl FiniteMeasureDecomposition {
    /// Measure of an algebra set from the components alone.
    pub fn recombined(&self, u: Subset) -> f64 {
        self.mu_y
            .cells
            .iter()
            .chain(&self.mu_z.cells)
            .filter(|(cell, _)| cell.is_subset_of(u))
            .map(|&(_, w)| w)
            .sum()
    }
}

/// Split a measure on the finite twisted sum into `μ₁ ⊕ μ₂`.
///
/// The measure is handed over as an evaluator on the generated Borel
/// algebra.  The algebra partitions the space into minimal cells, each of
/// which lies entirely in one block; the components are the cell weights.
/// Fails when the evaluator is not additive over the algebra.
pub fn decompose_measure(
    space: &SumSpace,
    eval: &dyn Fn(Subset) -> f64,
) -> Result<FiniteMeasureDecomposition> {
    let algebra = borel_algebra(space);
    let total = space.y_block().union(space.z_block());

    // Minimal cell containing each point: intersect everything containing it.
    let mut cells: Vec<Subset> = Vec::new();
    for p in total.points() {
        let cell = algebra
            .iter()
            .filter(|u| u.contains(p))
            .fold(total, |acc, &u| acc.intersection(u));
        if !cells.contains(&cell) {
            cells.push(cell);
        }
    }

    let mut y_cells = Vec::new();
    let mut z_cells = Vec::new();
    for &cell in &cells {
        let w = eval(cell);
        if w < 0.0 || w.is_nan() {
            return Err(Error::InvalidParameter("evaluator returned a negative mass".into()));
        }
        if cell.is_subset_of(space.y_block()) {
            y_cells.push((cell, w));
        } else if cell.is_subset_of(space.z_block()) {
            z_cells.push((cell, w));
        } else {
            // cannot happen: both blocks are Borel, so cells never straddle
            return Err(Error::NotATopology("algebra cell straddles the blocks".into()));
        }
    }
    let out = FiniteMeasureDecomposition {
        mu_y: BlockMeasure { cells: y_cells },
        mu_z: BlockMeasure { cells: z_cells },
    };

    for &u in &algebra {
        let direct = eval(u);
        let rebuilt = out.recombined(u);
        if (direct - rebuilt).abs() > 1e-12 * (1.0 + direct.abs()) {
            return Err(Error::InvalidParameter(format!(
                "evaluator is not additive on the algebra at {u:?}: {direct} vs {rebuilt}"
            )));
        }
    }
    Ok(out)
}

/// Integral of a trigonometric polynomial against normalized Haar measure
/// on the torus.  Exact by orthogonality: only `c₀` survives.
pub fn haar_integral(f1: &TrigPolynomial) -> Complex64 {
    f1.constant_coeff()
}

/// The ℝ-action on the almost periodic part: `c_k ↦ c_k·e^{i⟨k,λ⟩s}`.
/// Haar integration is exactly invariant since `c₀` is untouched.
pub fn translation_action(f1: &TrigPolynomial, s: f64) -> TrigPolynomial {
    f1.translate(s)
}

/// Inner-regularity witness for a set in the integer-line model.
#[derive(Clone, PartialEq, Debug)]
pub struct InnerRegularityReport {
    pub set_measure: f64,
    /// The finite set of charged Y-points inside the set.
    pub witness_ypart: Vec<i64>,
    pub witness_measure: f64,
    pub witness_compact: bool,
    pub holds: bool,
}

/// Verify `μ(s) = sup{μ(K) : K ⊆ s compact}` by exhibiting the exhaustion:
/// the charged atoms of `s.ypart` form a finite set `F`, and `F ⊔ s.zpart`
/// is compact and carries all the mass.
pub fn inner_regularity_check(m: &ZSumMeasure, z: &TwistedZ, s: &ZSumSet) -> InnerRegularityReport {
    let set_measure = m.measure_of(s);
    let witness_ypart: Vec<i64> = m
        .mu_y
        .atoms()
        .iter()
        .filter(|(p, _)| s.ypart.contains(*p))
        .map(|&(p, _)| p)
        .collect();
    let witness = ZSumSet {
        ypart: crate::zline::PeriodicSet::finite(witness_ypart.iter().copied()),
        zpart: s.zpart,
    };
    let witness_measure = m.measure_of(&witness);
    let witness_compact = z.is_compact(&witness).compact;
    InnerRegularityReport {
        set_measure,
        witness_ypart,
        witness_measure,
        witness_compact,
        holds: witness_compact && witness_measure == set_measure,
    }
}
