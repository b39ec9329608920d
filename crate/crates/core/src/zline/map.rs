use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fintop::{FiniteTopology, Subset};
use crate::zline::PeriodicSet;

/// An eventually periodic map ℤ → Z-points.  Y = ℤ is discrete, so every such
/// map is continuous; preimages are periodic sets by construction.
#[derive(Clone, PartialEq, Debug)]
pub struct PeriodicMap {
    modulus: u64,
    residue_values: Vec<usize>,
    exceptions: BTreeMap<i64, usize>,
    target: FiniteTopology,
}

impl PeriodicMap {
    pub fn new(
        residue_values: Vec<usize>,
        exceptions: BTreeMap<i64, usize>,
        target: FiniteTopology,
    ) -> Result<Self> {
        if residue_values.is_empty() {
            return Err(Error::ZeroModulus);
        }
        for &v in residue_values.iter().chain(exceptions.values()) {
            if v >= target.n() {
                return Err(Error::PointOutOfRange { point: v, n: target.n() });
            }
        }
        let modulus = residue_values.len() as u64;
        let raw = PeriodicMap {
            modulus,
            residue_values,
            exceptions,
            target,
        };
        Ok(raw.normalized())
    }

    pub fn constant(target: FiniteTopology, point: usize) -> Result<Self> {
        Self::new(vec![point], BTreeMap::new(), target)
    }

    fn normalized(mut self) -> Self {
        let m = self.modulus;
        let rv = std::mem::take(&mut self.residue_values);
        self.exceptions
            .retain(|&k, &mut v| rv[k.rem_euclid(m as i64) as usize] != v);
        self.residue_values = rv;
        for d in 1..=m {
            if !m.is_multiple_of(d) {
                continue;
            }
            let d_us = d as usize;
            if (0..m as usize).all(|r| self.residue_values[r] == self.residue_values[r % d_us]) {
                self.residue_values.truncate(d_us);
                self.modulus = d;
                break;
            }
        }
        self
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residue_values(&self) -> &[usize] {
        &self.residue_values
    }

    pub fn exceptions(&self) -> &BTreeMap<i64, usize> {
        &self.exceptions
    }

    pub fn target(&self) -> &FiniteTopology {
        &self.target
    }

    pub fn value_at(&self, k: i64) -> usize {
        *self
            .exceptions
            .get(&k)
            .unwrap_or(&self.residue_values[k.rem_euclid(self.modulus as i64) as usize])
    }

    /// Exact preimage of a set of target points, as a normalized periodic set.
    pub fn preimage(&self, b: Subset) -> PeriodicSet {
        let residues = (0..self.modulus).filter(|&r| b.contains(self.residue_values[r as usize]));
        let mut added = Vec::new();
        let mut removed = Vec::new();
        for (&k, &v) in &self.exceptions {
            let base = b.contains(self.residue_values[k.rem_euclid(self.modulus as i64) as usize]);
            let desired = b.contains(v);
            if desired && !base {
                added.push(k);
            } else if !desired && base {
                removed.push(k);
            }
        }
        PeriodicSet::new(self.modulus, residues, added, removed)
            .expect("modulus is positive")
    }
}
