//! The integer line glued to a finite space.
//!
//! Subsets of ℤ are kept in a canonical "residue classes plus finite
//! perturbations" form, so membership, Boolean algebra and finiteness are
//! all decidable and equality is structural.

mod map;
mod twisted;

pub use map::PeriodicMap;
pub use twisted::{
    CoincidenceReport, CompactnessResult, LimitReport, Openness, TwistedZ, ZBasisElement,
    ZSumSet,
};

use std::collections::BTreeSet;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A subset of ℤ: residue classes `R` modulo `m`, plus finitely many added
/// and removed integers.  Always normalized:
/// `added` avoids the periodic part, `removed` lies inside it, and the
/// modulus is the minimal period.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PeriodicSet {
    modulus: u64,
    residues: BTreeSet<u64>,
    added: BTreeSet<i64>,
    removed: BTreeSet<i64>,
}

impl PeriodicSet {
    pub fn new(
        modulus: u64,
        residues: impl IntoIterator<Item = u64>,
        added: impl IntoIterator<Item = i64>,
        removed: impl IntoIterator<Item = i64>,
    ) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::ZeroModulus);
        }
        let raw = PeriodicSet {
            modulus,
            residues: residues.into_iter().map(|r| r % modulus).collect(),
            added: added.into_iter().collect(),
            removed: removed.into_iter().collect(),
        };
        Ok(raw.normalized())
    }

    pub fn empty() -> Self {
        PeriodicSet {
            modulus: 1,
            residues: BTreeSet::new(),
            added: BTreeSet::new(),
            removed: BTreeSet::new(),
        }
    }

    pub fn all() -> Self {
        PeriodicSet {
            modulus: 1,
            residues: [0].into_iter().collect(),
            added: BTreeSet::new(),
            removed: BTreeSet::new(),
        }
    }

    pub fn from_residues(modulus: u64, residues: impl IntoIterator<Item = u64>) -> Result<Self> {
        Self::new(modulus, residues, [], [])
    }

    pub fn finite(points: impl IntoIterator<Item = i64>) -> Self {
        PeriodicSet {
            modulus: 1,
            residues: BTreeSet::new(),
            added: points.into_iter().collect(),
            removed: BTreeSet::new(),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residues(&self) -> &BTreeSet<u64> {
        &self.residues
    }

    pub fn added(&self) -> &BTreeSet<i64> {
        &self.added
    }

    pub fn removed(&self) -> &BTreeSet<i64> {
        &self.removed
    }

    fn periodic_member(&self, k: i64) -> bool {
        self.residues.contains(&k.rem_euclid(self.modulus as i64).unsigned_abs())
    }

    pub fn contains(&self, k: i64) -> bool {
        (self.periodic_member(k) && !self.removed.contains(&k)) || self.added.contains(&k)
    }

    fn normalized(self) -> Self {
        let m = self.modulus;
        // Settle exceptions against the periodic part.
        let mut added = BTreeSet::new();
        let mut removed = BTreeSet::new();
        for &k in self.added.iter().chain(self.removed.iter()) {
            let desired = self.contains(k);
            let base = self.periodic_member(k);
            if desired && !base {
                added.insert(k);
            } else if !desired && base {
                removed.insert(k);
            }
        }
        // Shrink the modulus to the minimal period dividing m.
        let mut best = m;
        let mut best_res = self.residues.clone();
        for d in 1..=m {
            if !m.is_multiple_of(d) {
                continue;
            }
            let low: BTreeSet<u64> = self.residues.iter().copied().filter(|&r| r < d).collect();
            if (0..m).all(|r| self.residues.contains(&r) == low.contains(&(r % d))) {
                best = d;
                best_res = low;
                break;
            }
        }
        PeriodicSet {
            modulus: best,
            residues: best_res,
            added,
            removed,
        }
    }

    pub fn complement(&self) -> Self {
        let residues = (0..self.modulus)
            .filter(|r| !self.residues.contains(r))
            .collect();
        PeriodicSet {
            modulus: self.modulus,
            residues,
            added: self.removed.clone(),
            removed: self.added.clone(),
        }
        .normalized()
    }

    fn combine(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Self {
        let m = self.modulus.lcm(&other.modulus);
        let residues: BTreeSet<u64> = (0..m)
            .filter(|&r| {
                op(
                    self.residues.contains(&(r % self.modulus)),
                    other.residues.contains(&(r % other.modulus)),
                )
            })
            .collect();
        let mut added = BTreeSet::new();
        let mut removed = BTreeSet::new();
        for &k in self
            .added
            .iter()
            .chain(self.removed.iter())
            .chain(other.added.iter())
            .chain(other.removed.iter())
        {
            let desired = op(self.contains(k), other.contains(k));
            let base = residues.contains(&k.rem_euclid(m as i64).unsigned_abs());
            if desired && !base {
                added.insert(k);
            } else if !desired && base {
                removed.insert(k);
            }
        }
        PeriodicSet {
            modulus: m,
            residues,
            added,
            removed,
        }
        .normalized()
    }

    pub fn union(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a && !b)
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty() && self.added.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn is_cofinite(&self) -> bool {
        self.complement().is_finite()
    }

    /// The members, when the set is finite.
    pub fn finite_members(&self) -> Option<BTreeSet<i64>> {
        self.is_finite().then(|| self.added.clone())
    }
}
