//! Exhaustive enumeration of small topologies and continuous maps, used by
//! the sweep subcommand and the acceptance suite.

use std::collections::BTreeSet;

use crate::fintop::{ContinuousFiniteMap, FiniteTopology, Subset};

/// All topologies on `{0..n-1}`.  Intended for `n <= 4`; the candidate count
/// is `2^(2^n - 2)`.
pub fn all_topologies(n: usize) -> Vec<FiniteTopology> {
    if n == 0 {
        return vec![FiniteTopology::indiscrete(0)];
    }
    let full = Subset::full(n);
    let middles: Vec<Subset> = (1..full.bits())
        .map(Subset::from_bits)
        .collect();
    let mut out = Vec::new();
    for choice in 0u64..1 << middles.len() {
        let mut opens: BTreeSet<Subset> = [Subset::EMPTY, full].into_iter().collect();
        for (i, &m) in middles.iter().enumerate() {
            if choice >> i & 1 == 1 {
                opens.insert(m);
            }
        }
        if let Ok(t) = FiniteTopology::new(n, opens) {
            out.push(t);
        }
    }
    out
}

/// All continuous maps from `y` to `z`.
pub fn all_continuous_maps(y: &FiniteTopology, z: &FiniteTopology) -> Vec<ContinuousFiniteMap> {
    if y.n() == 0 {
        return vec![ContinuousFiniteMap::new(y.clone(), z.clone(), vec![]).unwrap()];
    }
    if z.n() == 0 {
        return vec![]; // no map into the empty space from a nonempty one
    }
    let mut out = Vec::new();
    let mut values = vec![0usize; y.n()];
    loop {
        if let Ok(f) = ContinuousFiniteMap::new(y.clone(), z.clone(), values.clone()) {
            out.push(f);
        }
        // odometer over z.n()^y.n()
        let mut i = 0;
        loop {
            if i == values.len() {
                return out;
            }
            values[i] += 1;
            if values[i] < z.n() {
                break;
            }
            values[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn topology_counts() {
        // Known counts of topologies on labelled n-point sets.
        assert_eq!(all_topologies(0).len(), 1);
        assert_eq!(all_topologies(1).len(), 1);
        assert_eq!(all_topologies(2).len(), 4);
        assert_eq!(all_topologies(3).len(), 29);
    }

    #[test]
    fn continuous_map_counts() {
        let d2 = FiniteTopology::discrete(2);
        let i2 = FiniteTopology::indiscrete(2);
        // Everything is continuous into an indiscrete space.
        assert_eq!(all_continuous_maps(&d2, &i2).len(), 4);
        // From a discrete space everything is continuous too.
        assert_eq!(all_continuous_maps(&d2, &d2).len(), 4);
        // Indiscrete to discrete: only the constants survive.
        assert_eq!(all_continuous_maps(&i2, &d2).len(), 2);
    }
}
