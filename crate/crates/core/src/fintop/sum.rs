//! Twisted and direct sums of finite spaces on the shared disjoint ground set.
//!
//! Y-points keep their indices; Z-point `k` becomes index `y.n() + k`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::fintop::{close_under, ContinuousFiniteMap, FiniteTopology, Subset};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SumFlavor {
    Twisted,
    Direct,
}

#[derive(Clone, Debug)]
pub struct SumSpace {
    y: FiniteTopology,
    z: FiniteTopology,
    f: Option<ContinuousFiniteMap>,
    topology: FiniteTopology,
    flavor: SumFlavor,
}

/// A basis element of the twisted topology: either a type-1 set `V ⊔ ∅` or a
/// type-23 set `(∁K ∩ f⁻¹(W)) ⊔ W` with `K` closed in `Y`, `W` open in `Z`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BasisElement {
    Type1 { v: Subset },
    Type23 { k: Subset, w: Subset },
}

impl SumSpace {
    pub fn y(&self) -> &FiniteTopology {
        &self.y
    }

    pub fn z(&self) -> &FiniteTopology {
        &self.z
    }

    pub fn map(&self) -> Option<&ContinuousFiniteMap> {
        self.f.as_ref()
    }

    pub fn topology(&self) -> &FiniteTopology {
        &self.topology
    }

    pub fn flavor(&self) -> SumFlavor {
        self.flavor
    }

    pub fn y_block(&self) -> Subset {
        Subset::full(self.y.n())
    }

    pub fn z_block(&self) -> Subset {
        self.embed_z(Subset::full(self.z.n()))
    }

    pub fn embed_y(&self, a: Subset) -> Subset {
        a
    }

    pub fn embed_z(&self, b: Subset) -> Subset {
        Subset::from_bits(b.bits() << self.y.n())
    }

    pub fn join(&self, a: Subset, b: Subset) -> Subset {
        self.embed_y(a).union(self.embed_z(b))
    }

    /// Splits a subset of the disjoint ground set into its Y- and Z-parts.
    pub fn split(&self, u: Subset) -> (Subset, Subset) {
        let a = u.intersection(self.y_block());
        let b = Subset::from_bits(u.bits() >> self.y.n());
        (a, b)
    }

    pub fn realize(&self, e: &BasisElement) -> Result<Subset> {
        match e {
            BasisElement::Type1 { v } => Ok(self.embed_y(*v)),
            BasisElement::Type23 { k, w } => {
                let f = self.f.as_ref().ok_or(Error::Unsupported(
                    "type-23 sets need the twisting map".into(),
                ))?;
                Ok(self.join(f.preimage(*w).difference(*k), *w))
            }
        }
    }

    /// Writes an open `u` as a union of type-1 and type-23 basis elements.
    ///
    /// For each Z-point of `u` we take its minimal open window `W = U_φ` and
    /// excise the closure of `f⁻¹(W) \ A`; the Y-part is covered by a single
    /// type-1 element.
    pub fn basis_decomposition(&self, u: Subset) -> Result<Vec<BasisElement>> {
        if self.flavor != SumFlavor::Twisted {
            return Err(Error::Unsupported("basis_decomposition needs a twisted sum".into()));
        }
        if !self.topology.is_open(u) {
            return Err(Error::NotOpen);
        }
        let f = self.f.as_ref().expect("twisted sums carry their map");
        let (a, b) = self.split(u);
        let mut elements = Vec::new();
        if !a.is_empty() || b.is_empty() {
            elements.push(BasisElement::Type1 { v: a });
        }
        for phi in b.points() {
            let w = self.z.minimal_neighborhood(phi)?;
            let k = self.y.closure(f.preimage(w).difference(a));
            elements.push(BasisElement::Type23 { k, w });
        }
        Ok(elements)
    }
}

/// The `f`-twisted sum: the topology generated by the type-1 sets `V ⊔ ∅`,
/// type-2 sets `∁K ⊔ Z` (`K` closed, hence compact, in the finite `Y`) and
/// type-3 sets `f⁻¹(W) ⊔ W`.
pub fn twisted_sum(
    y: &FiniteTopology,
    z: &FiniteTopology,
    f: &ContinuousFiniteMap,
) -> Result<SumSpace> {
    if f.source() != y || f.target() != z {
        return Err(Error::EndpointMismatch);
    }
    let n = y.n() + z.n();
    let space = SumSpace {
        y: y.clone(),
        z: z.clone(),
        f: Some(f.clone()),
        topology: FiniteTopology::indiscrete(0),
        flavor: SumFlavor::Twisted,
    };
    let mut subbasis = Vec::new();
    for &v in y.opens() {
        subbasis.push(space.embed_y(v)); // type 1
    }
    for &o in y.opens() {
        // type 2: ∁K ⊔ Z with K = ∁O closed (every closed set is compact here)
        subbasis.push(space.join(o, Subset::full(z.n())));
    }
    for &w in z.opens() {
        subbasis.push(space.join(f.preimage(w), w)); // type 3
    }
    let topology = FiniteTopology::from_subbasis(n, subbasis)?;
    Ok(SumSpace { topology, ..space })
}

/// The direct sum: opens are exactly the `V ⊔ W` with `V` open in `Y` and
/// `W` open in `Z`.
pub fn direct_sum(y: &FiniteTopology, z: &FiniteTopology) -> Result<SumSpace> {
    let n = y.n() + z.n();
    let space = SumSpace {
        y: y.clone(),
        z: z.clone(),
        f: None,
        topology: FiniteTopology::indiscrete(0),
        flavor: SumFlavor::Direct,
    };
    let mut opens = BTreeSet::new();
    for &v in y.opens() {
        for &w in z.opens() {
            opens.insert(space.join(v, w));
        }
    }
    let topology = FiniteTopology::new(n, opens)?;
    Ok(SumSpace { topology, ..space })
}

/// The algebra generated by the open sets under complement and union.  On a
/// finite ground set this is the full Borel (σ-)algebra of the topology.
pub fn borel_algebra(s: &SumSpace) -> BTreeSet<Subset> {
    borel_of(s.topology())
}

pub fn borel_of(t: &FiniteTopology) -> BTreeSet<Subset> {
    let n = t.n();
    close_under(n, t.opens().iter().copied().collect(), |a, b| {
        [a.union(b), a.complement(n)]
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_y_gives_z() {
        let y = FiniteTopology::indiscrete(0);
        let z = FiniteTopology::sierpinski();
        let f = ContinuousFiniteMap::new(y.clone(), z.clone(), vec![]).unwrap();
        let s = twisted_sum(&y, &z, &f).unwrap();
        assert_eq!(s.topology(), &z);
    }

    #[test]
    fn two_singletons_twist_to_direct_sum() {
        let y = FiniteTopology::discrete(1);
        let z = FiniteTopology::discrete(1);
        let f = ContinuousFiniteMap::constant(y.clone(), z.clone(), 0).unwrap();
        let s = twisted_sum(&y, &z, &f).unwrap();
        assert_eq!(s.topology().opens().len(), 4);
        let d = direct_sum(&y, &z).unwrap();
        assert_eq!(s.topology(), d.topology());
    }

    #[test]
    fn direct_sum_counts() {
        let y = FiniteTopology::indiscrete(2);
        let z = FiniteTopology::discrete(1);
        let d = direct_sum(&y, &z).unwrap();
        assert_eq!(d.topology().opens().len(), 4);
    }

    #[test]
    fn sierpinski_glued_to_point() {
        let y = FiniteTopology::sierpinski();
        let z = FiniteTopology::discrete(1);
        let f = ContinuousFiniteMap::constant(y.clone(), z.clone(), 0).unwrap();
        let s = twisted_sum(&y, &z, &f).unwrap();
        // Matches the brute-force subbasis closure: in the finite model the
        // twisted sum equals the direct sum (Y is compact).
        let d = direct_sum(&y, &z).unwrap();
        assert_eq!(s.topology(), d.topology());
        assert_eq!(s.topology().opens().len(), 6);
    }

    #[test]
    fn relative_topologies_and_blocks() {
        let y = FiniteTopology::sierpinski();
        let z = FiniteTopology::indiscrete(2);
        let f = ContinuousFiniteMap::constant(y.clone(), z.clone(), 1).unwrap();
        let s = twisted_sum(&y, &z, &f).unwrap();
        let rel_y: BTreeSet<_> = s
            .topology()
            .opens()
            .iter()
            .map(|&u| s.split(u).0)
            .collect();
        assert_eq!(&rel_y, y.opens());
        let rel_z: BTreeSet<_> = s
            .topology()
            .opens()
            .iter()
            .map(|&u| s.split(u).1)
            .collect();
        assert_eq!(&rel_z, z.opens());
        assert!(s.topology().is_open(s.y_block()));
        assert!(s.topology().is_closed(s.z_block()));
    }

    #[test]
    fn decomposition_of_full_space() {
        let y = FiniteTopology::sierpinski();
        let z = FiniteTopology::discrete(1);
        let f = ContinuousFiniteMap::constant(y.clone(), z.clone(), 0).unwrap();
        let s = twisted_sum(&y, &z, &f).unwrap();
        let u = Subset::full(3);
        let parts = s.basis_decomposition(u).unwrap();
        let mut acc = Subset::EMPTY;
        for e in &parts {
            acc = acc.union(s.realize(e).unwrap());
        }
        assert_eq!(acc, u);
    }

    #[test]
    fn decomposition_rejects_non_open() {
        let y = FiniteTopology::sierpinski();
        let z = FiniteTopology::discrete(1);
        let f = ContinuousFiniteMap::constant(y.clone(), z.clone(), 0).unwrap();
        let s = twisted_sum(&y, &z, &f).unwrap();
        // {1} alone is not open in the Sierpiński block.
        assert!(matches!(
            s.basis_decomposition(Subset::singleton(1)),
            Err(Error::NotOpen)
        ));
    }

    #[test]
    fn borel_of_discrete_sum_is_power_set() {
        let y = FiniteTopology::discrete(2);
        let z = FiniteTopology::discrete(1);
        let d = direct_sum(&y, &z).unwrap();
        assert_eq!(borel_algebra(&d).len(), 8);
    }

    #[test]
    fn borel_blocks_for_indiscrete_y() {
        let y = FiniteTopology::indiscrete(2);
        let z = FiniteTopology::discrete(1);
        let f = ContinuousFiniteMap::constant(y.clone(), z.clone(), 0).unwrap();
        let s = twisted_sum(&y, &z, &f).unwrap();
        let alg = borel_algebra(&s);
        // {∅, Y} ⊕ {∅, Z} blocks: 2 × 2 = 4 sets.
        assert_eq!(alg.len(), 4);
        let d = direct_sum(&y, &z).unwrap();
        assert_eq!(alg, borel_algebra(&d));
    }
}
