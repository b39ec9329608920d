//! Topologies on finite ground sets, given as explicit open-set families.
//!
//! Points are indices `0..n`. Subsets are bitmasks, so every operation here
//! is exact and exhaustive enumeration over opens is cheap.

mod diagram;
mod enumerate;
mod map;
mod sum;

pub use diagram::{check_diagram, statement6_exhaustive, statement6_minimal, DiagramReport};
pub use enumerate::{all_continuous_maps, all_topologies};
pub use map::ContinuousFiniteMap;
pub use sum::{
    borel_algebra, borel_of, direct_sum, twisted_sum, BasisElement, SumFlavor, SumSpace,
};

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported ground set; keeps the `2^n` subset lattice enumerable.
pub const MAX_GROUND: usize = 12;

/// A subset of a ground set `{0..n-1}`, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_GROUND);
        Subset(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(p: usize) -> Self {
        Subset(1 << p)
    }

    pub fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    pub fn from_points<I: IntoIterator<Item = usize>>(points: I) -> Self {
        let mut bits = 0u32;
        for p in points {
            bits |= 1 << p;
        }
        Subset(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, p: usize) -> bool {
        self.0 >> p & 1 == 1
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn complement(self, n: usize) -> Subset {
        Subset(Self::full(n).0 & !self.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn points(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |p| self.0 >> p & 1 == 1)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.points()).finish()
    }
}

/// A topology on `{0..n-1}`: a family of opens containing `∅` and the full
/// set, closed under pairwise union and intersection.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteTopology {
    n: usize,
    opens: BTreeSet<Subset>,
}

impl FiniteTopology {
    /// Validates the topology axioms on an explicit family.
    pub fn new(n: usize, opens: BTreeSet<Subset>) -> Result<Self> {
        check_ground(n)?;
        let full = Subset::full(n);
        for &o in &opens {
            if !o.is_subset_of(full) {
                return Err(Error::PointOutOfRange {
                    point: o.points().last().unwrap_or(0),
                    n,
                });
            }
        }
        if !opens.contains(&Subset::EMPTY) {
            return Err(Error::NotATopology("missing empty set".into()));
        }
        if !opens.contains(&full) {
            return Err(Error::NotATopology("missing full ground set".into()));
        }
        for &a in &opens {
            for &b in &opens {
                if !opens.contains(&a.union(b)) || !opens.contains(&a.intersection(b)) {
                    return Err(Error::NotATopology(format!(
                        "not closed under union/intersection at {a:?}, {b:?}"
                    )));
                }
            }
        }
        Ok(FiniteTopology { n, opens })
    }

    /// The smallest topology containing `subbasis`: fixpoint closure of
    /// `subbasis ∪ {∅, full}` under pairwise union and intersection.
    pub fn from_subbasis<I: IntoIterator<Item = Subset>>(n: usize, subbasis: I) -> Result<Self> {
        check_ground(n)?;
        let full = Subset::full(n);
        let mut seed = vec![Subset::EMPTY, full];
        for s in subbasis {
            if !s.is_subset_of(full) {
                return Err(Error::PointOutOfRange {
                    point: s.points().last().unwrap_or(0),
                    n,
                });
            }
            seed.push(s);
        }
        let opens = close_under(n, seed, |a, b| [a.union(b), a.intersection(b)]);
        Ok(FiniteTopology { n, opens })
    }

    pub fn discrete(n: usize) -> Self {
        FiniteTopology::from_subbasis(n, (0..n).map(Subset::singleton)).unwrap()
    }

    pub fn indiscrete(n: usize) -> Self {
        FiniteTopology::from_subbasis(n, []).unwrap()
    }

    /// The Sierpiński space `{∅, {0}, {0,1}}`.
    pub fn sierpinski() -> Self {
        FiniteTopology::from_subbasis(2, [Subset::singleton(0)]).unwrap()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn opens(&self) -> &BTreeSet<Subset> {
        &self.opens
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.n)
    }

    pub fn is_open(&self, s: Subset) -> bool {
        self.opens.contains(&s)
    }

    pub fn is_closed(&self, s: Subset) -> bool {
        self.is_open(s.complement(self.n))
    }

    /// Intersection of all opens containing `p` — the smallest open
    /// neighbourhood, well defined because the family is finite and ∩-closed.
    pub fn minimal_neighborhood(&self, p: usize) -> Result<Subset> {
        if p >= self.n {
            return Err(Error::PointOutOfRange { point: p, n: self.n });
        }
        let mut acc = self.full();
        for &o in &self.opens {
            if o.contains(p) {
                acc = acc.intersection(o);
            }
        }
        Ok(acc)
    }

    /// Complement of the union of opens disjoint from `s`.
    pub fn closure(&self, s: Subset) -> Subset {
        let mut avoid = Subset::EMPTY;
        for &o in &self.opens {
            if o.intersection(s).is_empty() {
                avoid = avoid.union(o);
            }
        }
        avoid.complement(self.n)
    }

    /// Union of opens contained in `s`.
    pub fn interior(&self, s: Subset) -> Subset {
        let mut acc = Subset::EMPTY;
        for &o in &self.opens {
            if o.is_subset_of(s) {
                acc = acc.union(o);
            }
        }
        acc
    }

    /// For finite spaces this holds iff the topology is discrete.
    pub fn is_hausdorff(&self) -> bool {
        for p in 0..self.n {
            for q in p + 1..self.n {
                let up = self.minimal_neighborhood(p).unwrap();
                let uq = self.minimal_neighborhood(q).unwrap();
                if !up.intersection(uq).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_discrete(&self) -> bool {
        self.opens.len() == 1usize << self.n
    }
}

fn check_ground(n: usize) -> Result<()> {
    if n > MAX_GROUND {
        return Err(Error::GroundSetTooLarge { n, max: MAX_GROUND });
    }
    Ok(())
}

/// Incremental pairwise closure of a family of subsets of `{0..n-1}`.
pub(crate) fn close_under<F>(n: usize, seed: Vec<Subset>, ops: F) -> BTreeSet<Subset>
where
    F: Fn(Subset, Subset) -> [Subset; 2],
{
    let size = 1usize << n;
    let mut seen = vec![false; size];
    let mut members: Vec<Subset> = Vec::new();
    for s in seed {
        if !seen[s.bits() as usize] {
            seen[s.bits() as usize] = true;
            members.push(s);
        }
    }
    let mut i = 0;
    while i < members.len() {
        for j in 0..=i {
            for c in ops(members[i], members[j]) {
                if !seen[c.bits() as usize] {
                    seen[c.bits() as usize] = true;
                    members.push(c);
                }
            }
        }
        i += 1;
    }
    members.into_iter().collect()
}
