//! The twisted sum `ℤ ⊔_f Z` with discrete ℤ and finite `Z`.
//!
//! The decision procedures below are specializations of the basis lemma to
//! this model; each answer carries its own certificate (a basis decomposition
//! when open, an explicit infinite defect or uncovered set when not), so the
//! derivations are checkable without being trusted.

use crate::error::{Error, Result};
use crate::fintop::{FiniteTopology, Subset};
use crate::zline::{PeriodicMap, PeriodicSet};

/// `ℤ ⊔_f Z` for a finite space `Z` and an eventually periodic `f`.
#[derive(Clone, Debug)]
pub struct TwistedZ {
    z: FiniteTopology,
    f: PeriodicMap,
}

/// A subset `A ⊔ B` of the twisted sum.  Openness is a query, not an
/// invariant; arbitrary Borel-style sets are representable.
#[derive(Clone, PartialEq, Debug)]
pub struct ZSumSet {
    pub ypart: PeriodicSet,
    pub zpart: Subset,
}

/// Basis elements of the twisted topology over ℤ.
#[derive(Clone, PartialEq, Debug)]
pub enum ZBasisElement {
    /// `A ⊔ ∅`; every subset of the discrete ℤ is open.
    Type1(PeriodicSet),
    /// `(f⁻¹(W) \ K) ⊔ W` with finite `K` (the compact closed sets of ℤ)
    /// and `W` open in `Z`.
    Type23 { excluded: PeriodicSet, window: Subset },
}

/// Outcome of the openness test: self-certifying in both directions.
#[derive(Clone, Debug)]
pub enum Openness {
    Open { decomposition: Vec<ZBasisElement> },
    ZpartNotOpen,
    /// `witness_point`'s minimal window pulls back to an infinite set missed
    /// by the Y-part.
    InfiniteDefect { witness_point: usize, defect: PeriodicSet },
}

impl Openness {
    pub fn is_open(&self) -> bool {
        matches!(self, Openness::Open { .. })
    }
}

#[derive(Clone, Debug)]
pub struct CompactnessResult {
    pub compact: bool,
    /// The infinite part of the Y-block not absorbed by any window around the
    /// Z-part, when non-compact.
    pub uncovered: Option<PeriodicSet>,
}

/// Statements (1), (5), (6) of the sum-comparison proposition, each tested
/// independently.
#[derive(Clone, Debug)]
pub struct CoincidenceReport {
    pub sums_equal: bool,
    pub z_block_open: bool,
    pub finite_preimage_cover: bool,
}

impl CoincidenceReport {
    pub fn coincide(&self) -> bool {
        self.sums_equal
    }

    pub fn agree(&self) -> bool {
        self.sums_equal == self.z_block_open && self.z_block_open == self.finite_preimage_cover
    }
}

#[derive(Clone, Debug)]
pub struct LimitReport {
    /// Z-points every eventually recurring value clusters at.
    pub limit_set: Subset,
    pub converges: Option<usize>,
}

impl ZSumSet {
    pub fn new(ypart: PeriodicSet, zpart: Subset) -> Self {
        ZSumSet { ypart, zpart }
    }

    pub fn whole(z: &FiniteTopology) -> Self {
        ZSumSet::new(PeriodicSet::all(), z.full())
    }

    pub fn y_only(ypart: PeriodicSet) -> Self {
        ZSumSet::new(ypart, Subset::EMPTY)
    }

    pub fn z_only(zpart: Subset) -> Self {
        ZSumSet::new(PeriodicSet::empty(), zpart)
    }
}

impl ZBasisElement {
    pub fn realize(&self, t: &TwistedZ) -> ZSumSet {
        match self {
            ZBasisElement::Type1(a) => ZSumSet::y_only(a.clone()),
            ZBasisElement::Type23 { excluded, window } => {
                ZSumSet::new(t.f.preimage(*window).difference(excluded), *window)
            }
        }
    }
}

impl TwistedZ {
    pub fn new(z: FiniteTopology, f: PeriodicMap) -> Result<Self> {
        if f.target() != &z {
            return Err(Error::EndpointMismatch);
        }
        Ok(TwistedZ { z, f })
    }

    /// The one-point compactification fixture: `Z = {∞}`, constant gluing map.
    pub fn one_point() -> Self {
        let z = FiniteTopology::discrete(1);
        let f = PeriodicMap::constant(z.clone(), 0).unwrap();
        TwistedZ { z, f }
    }

    pub fn z(&self) -> &FiniteTopology {
        &self.z
    }

    pub fn f(&self) -> &PeriodicMap {
        &self.f
    }

    /// `A ⊔ B` is open iff `B` is open in `Z` and, for every `φ ∈ B`, the
    /// preimage of `φ`'s minimal window escapes `A` only finitely often.
    pub fn is_open(&self, s: &ZSumSet) -> Openness {
        if !self.z.is_open(s.zpart) {
            return Openness::ZpartNotOpen;
        }
        let mut decomposition = vec![ZBasisElement::Type1(s.ypart.clone())];
        for phi in s.zpart.points() {
            let window = self.z.minimal_neighborhood(phi).expect("phi in ground set");
            let defect = self.f.preimage(window).difference(&s.ypart);
            if !defect.is_finite() {
                return Openness::InfiniteDefect { witness_point: phi, defect };
            }
            decomposition.push(ZBasisElement::Type23 { excluded: defect, window });
        }
        Openness::Open { decomposition }
    }

    /// Closure in the twisted topology.  The Y-block is discrete, so only
    /// Z-points are added: those whose minimal window pulls back to an
    /// infinite part of `A`.
    pub fn closure(&self, s: &ZSumSet) -> ZSumSet {
        let mut zpart = s.zpart;
        for phi in 0..self.z.n() {
            let window = self.z.minimal_neighborhood(phi).expect("phi in ground set");
            if !self.f.preimage(window).intersection(&s.ypart).is_finite() {
                zpart = zpart.union(Subset::singleton(phi));
            }
        }
        ZSumSet::new(s.ypart.clone(), self.z.closure(zpart))
    }

    /// Largest open set inside `s`, from the openness criterion pointwise.
    pub fn interior(&self, s: &ZSumSet) -> ZSumSet {
        let zpart = Subset::from_points((0..self.z.n()).filter(|&phi| {
            let window = self.z.minimal_neighborhood(phi).expect("phi in ground set");
            window.is_subset_of(s.zpart)
                && self.f.preimage(window).difference(&s.ypart).is_finite()
        }));
        ZSumSet::new(s.ypart.clone(), zpart)
    }

    /// `A ⊔ B` is compact iff `A` is covered, up to finitely many points, by
    /// the preimage of the windows around `B`.
    pub fn is_compact(&self, s: &ZSumSet) -> CompactnessResult {
        let mut windows = Subset::EMPTY;
        for phi in s.zpart.points() {
            windows =
                windows.union(self.z.minimal_neighborhood(phi).expect("phi in ground set"));
        }
        let uncovered = s.ypart.difference(&self.f.preimage(windows));
        if uncovered.is_finite() {
            CompactnessResult { compact: true, uncovered: None }
        } else {
            CompactnessResult { compact: false, uncovered: Some(uncovered) }
        }
    }

    /// ℤ is locally compact Hausdorff; the sum is Hausdorff iff `Z` is, and a
    /// finite `Z` is Hausdorff iff discrete.
    pub fn is_hausdorff(&self) -> bool {
        self.z.is_hausdorff()
    }

    /// Tests statements (1), (5) and (6) independently.
    ///
    /// (1) is equality with the direct sum: every `∅ ⊔ B` with `B` open must
    /// be twisted-open.  (5) is openness of `∅ ⊔ Z`.  (6) is the
    /// minimal-window cover with finite preimages.
    pub fn sums_coincide(&self) -> CoincidenceReport {
        let sums_equal = self
            .z
            .opens()
            .iter()
            .all(|&b| self.is_open(&ZSumSet::z_only(b)).is_open());
        let z_block_open = self.is_open(&ZSumSet::z_only(self.z.full())).is_open();
        let finite_preimage_cover = (0..self.z.n()).all(|phi| {
            let window = self.z.minimal_neighborhood(phi).expect("phi in ground set");
            self.f.preimage(window).is_finite()
        });
        CoincidenceReport { sums_equal, z_block_open, finite_preimage_cover }
    }

    /// Statement (6) over all open windows instead of the minimal ones.
    pub fn finite_preimage_cover_exhaustive(&self) -> bool {
        let mut covered = Subset::EMPTY;
        for &w in self.z.opens() {
            if self.f.preimage(w).is_finite() {
                covered = covered.union(w);
            }
        }
        covered == self.z.full()
    }

    /// Cluster behaviour of the arithmetic progression `start + k·step`,
    /// `k → ∞`, decided from the residue structure of `f`.
    pub fn limit_points(&self, start: i64, step: i64) -> Result<LimitReport> {
        if step < 1 {
            return Err(Error::InvalidParameter("step must be >= 1".into()));
        }
        let m = self.f.modulus() as i64;
        let g = num_integer::gcd(step, m);
        // Residues visited infinitely often: exactly those ≡ start (mod g).
        let recurring = Subset::from_points(
            (0..m)
                .filter(|r| (r - start).rem_euclid(g) == 0)
                .map(|r| self.f.residue_values()[r as usize]),
        );
        let limit_set = Subset::from_points((0..self.z.n()).filter(|&phi| {
            let window = self.z.minimal_neighborhood(phi).expect("phi in ground set");
            recurring.is_subset_of(window)
        }));
        let converges = (self.is_hausdorff() && limit_set.len() == 1)
            .then(|| limit_set.points().next().unwrap());
        Ok(LimitReport { limit_set, converges })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn parity_model() -> TwistedZ {
        let z = FiniteTopology::discrete(2);
        let f = PeriodicMap::new(vec![0, 1], BTreeMap::new(), z.clone()).unwrap();
        TwistedZ::new(z, f).unwrap()
    }

    fn evens() -> PeriodicSet {
        PeriodicSet::from_residues(2, [0]).unwrap()
    }

    #[test]
    fn type1_sets_always_open() {
        let t = TwistedZ::one_point();
        assert!(t.is_open(&ZSumSet::y_only(evens())).is_open());
        assert!(t.is_open(&ZSumSet::y_only(PeriodicSet::finite([3, -7]))).is_open());
    }

    #[test]
    fn one_point_open_sets_are_classical() {
        let t = TwistedZ::one_point();
        let infty = Subset::singleton(0);
        // cofinite ⊔ {∞} is open
        let cofinite = PeriodicSet::finite([0, 5]).complement();
        assert!(t.is_open(&ZSumSet::new(cofinite, infty)).is_open());
        // evens ⊔ {∞} is not: the odds form an infinite defect
        match t.is_open(&ZSumSet::new(evens(), infty)) {
            Openness::InfiniteDefect { witness_point, defect } => {
                assert_eq!(witness_point, 0);
                assert_eq!(defect, evens().complement());
            }
            other => panic!("expected infinite defect, got {other:?}"),
        }
    }

    #[test]
    fn z_block_not_open_when_residues_cover() {
        let t = parity_model();
        let s = ZSumSet::z_only(t.z().full());
        assert!(!t.is_open(&s).is_open());
    }

    #[test]
    fn openness_self_certifies() {
        let t = TwistedZ::one_point();
        let s = ZSumSet::new(PeriodicSet::finite([1, 2]).complement(), Subset::singleton(0));
        let Openness::Open { decomposition } = t.is_open(&s) else {
            panic!("expected open")
        };
        let mut acc = ZSumSet::new(PeriodicSet::empty(), Subset::EMPTY);
        for e in &decomposition {
            let part = e.realize(&t);
            acc = ZSumSet::new(acc.ypart.union(&part.ypart), acc.zpart.union(part.zpart));
        }
        assert_eq!(acc, s);
    }

    #[test]
    fn closure_of_evens_reaches_infinity() {
        let t = TwistedZ::one_point();
        let c = t.closure(&ZSumSet::y_only(evens()));
        assert_eq!(c, ZSumSet::new(evens(), Subset::singleton(0)));
        // finite sets have no cluster points
        let f = ZSumSet::y_only(PeriodicSet::finite([0, 1, 2]));
        assert_eq!(t.closure(&f), f);
    }

    #[test]
    fn closure_on_z_block_is_relative() {
        let z = FiniteTopology::sierpinski();
        let f = PeriodicMap::constant(z.clone(), 0).unwrap();
        let t = TwistedZ::new(z.clone(), f).unwrap();
        let s = ZSumSet::z_only(Subset::singleton(0));
        assert_eq!(t.closure(&s).zpart, z.closure(Subset::singleton(0)));
    }

    #[test]
    fn interior_is_inside_and_open() {
        let t = TwistedZ::one_point();
        let s = ZSumSet::new(evens(), Subset::singleton(0));
        let i = t.interior(&s);
        assert_eq!(i, ZSumSet::y_only(evens())); // ∞ cannot stay: defect infinite
        assert!(t.is_open(&i).is_open());
    }

    #[test]
    fn compactness_fixtures() {
        let t = TwistedZ::one_point();
        assert!(t.is_compact(&ZSumSet::whole(t.z())).compact);
        let r = t.is_compact(&ZSumSet::y_only(PeriodicSet::all()));
        assert!(!r.compact);
        assert_eq!(r.uncovered.unwrap(), PeriodicSet::all());
        assert!(t.is_compact(&ZSumSet::y_only(PeriodicSet::finite([1, 2]))).compact);
        assert!(t.is_compact(&ZSumSet::new(evens(), Subset::singleton(0))).compact);
    }

    #[test]
    fn hausdorff_cases() {
        assert!(TwistedZ::one_point().is_hausdorff());
        assert!(parity_model().is_hausdorff());
        let z = FiniteTopology::sierpinski();
        let f = PeriodicMap::constant(z.clone(), 0).unwrap();
        assert!(!TwistedZ::new(z, f).unwrap().is_hausdorff());
    }

    #[test]
    fn sums_never_coincide_for_nonempty_z() {
        for t in [TwistedZ::one_point(), parity_model()] {
            let r = t.sums_coincide();
            assert!(!r.coincide());
            assert!(r.agree());
            assert_eq!(r.finite_preimage_cover, t.finite_preimage_cover_exhaustive());
        }
    }

    #[test]
    fn natural_numbers_converge_to_infinity() {
        let t = TwistedZ::one_point();
        let r = t.limit_points(0, 1).unwrap();
        assert_eq!(r.converges, Some(0));
    }

    #[test]
    fn parity_limits() {
        let t = parity_model();
        // Even progression converges to the even target.
        let r = t.limit_points(0, 2).unwrap();
        assert_eq!(r.converges, Some(0));
        // Step 1 hits both values; no point's window contains both.
        let r = t.limit_points(0, 1).unwrap();
        assert!(r.limit_set.is_empty());
        assert_eq!(r.converges, None);
    }

    #[test]
    fn step_zero_rejected() {
        assert!(TwistedZ::one_point().limit_points(0, 0).is_err());
    }
}
