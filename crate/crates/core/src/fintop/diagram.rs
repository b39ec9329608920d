//! The six-statement comparison between the twisted and the direct sum.

use serde::Serialize;

use crate::error::Result;
use crate::fintop::{direct_sum, twisted_sum, ContinuousFiniteMap, FiniteTopology, Subset};

/// Truth values of the six statements, plus the implication verdicts.
///
/// Statements (2) "Y compact" and (3) "Y locally compact" are constant true
/// on finite ground sets; the non-trivial witnesses for their one-way arrows
/// live in the integer-line model.
#[derive(Clone, Debug, Serialize)]
pub struct DiagramReport {
    /// (1) sum topologies coincide, (2) Y compact, (3) Y locally compact,
    /// (4) f(Y) closed in Z, (5) ∅ ⊔ Z open in the twisted sum,
    /// (6) Z covered by opens whose preimages lie in compacta.
    pub statements: [bool; 6],
    pub z_hausdorff: bool,
    pub violations: Vec<String>,
}

impl DiagramReport {
    pub fn verdicts_hold(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_diagram(
    y: &FiniteTopology,
    z: &FiniteTopology,
    f: &ContinuousFiniteMap,
) -> Result<DiagramReport> {
    let tw = twisted_sum(y, z, f)?;
    let di = direct_sum(y, z)?;

    let s1 = tw.topology().opens() == di.topology().opens();
    let s2 = true; // finite spaces are compact
    let s3 = true; // ... and locally compact
    let image = f.image();
    let s4 = z.closure(image) == image;
    let s5 = tw.topology().is_open(tw.z_block());
    let s6 = statement6_minimal(y, z, f)?;
    let z_hausdorff = z.is_hausdorff();

    let mut violations = Vec::new();
    let mut check = |name: &str, ok: bool| {
        if !ok {
            violations.push(name.to_string());
        }
    };
    check("(1)<=>(5)", s1 == s5);
    check("(5)<=>(6)", s5 == s6);
    check("(2)=>(6)", !s2 || s6);
    check("(6)=>(3)", !s6 || s3);
    if z_hausdorff {
        check("(6)=>(4) [Z Hausdorff]", !s6 || s4);
    }

    Ok(DiagramReport {
        statements: [s1, s2, s3, s4, s5, s6],
        z_hausdorff,
        violations,
    })
}

/// Statement (6) tested on the minimal-neighborhood cover: every point's
/// smallest open window must have its preimage inside a compact set.  The
/// preimage shrinks with the window, so this cover is the hardest instance.
pub fn statement6_minimal(
    y: &FiniteTopology,
    z: &FiniteTopology,
    f: &ContinuousFiniteMap,
) -> Result<bool> {
    for phi in 0..z.n() {
        let w = z.minimal_neighborhood(phi)?;
        let pre = f.preimage(w);
        // Compacta of a finite space are all subsets, so Y itself works.
        if !pre.is_subset_of(Subset::full(y.n())) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Statement (6) by exhaustive search: collect every open window whose
/// preimage sits inside a compactum and ask whether those windows cover Z.
pub fn statement6_exhaustive(
    y: &FiniteTopology,
    z: &FiniteTopology,
    f: &ContinuousFiniteMap,
) -> bool {
    let mut covered = Subset::EMPTY;
    for &w in z.opens() {
        if f.preimage(w).is_subset_of(Subset::full(y.n())) {
            covered = covered.union(w);
        }
    }
    covered == Subset::full(z.n())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coarse_z_coincides_for_compact_y() {
        // Z carrying the coarsest topology: coincidence iff Y compact, and a
        // finite Y always is.
        let y = FiniteTopology::sierpinski();
        let z = FiniteTopology::indiscrete(2);
        let f = ContinuousFiniteMap::constant(y.clone(), z.clone(), 0).unwrap();
        let r = check_diagram(&y, &z, &f).unwrap();
        assert!(r.statements[0]);
        assert!(r.verdicts_hold());
    }

    #[test]
    fn identity_map_all_true() {
        let y = FiniteTopology::discrete(2);
        let f = ContinuousFiniteMap::identity(y.clone());
        let r = check_diagram(&y, &y, &f).unwrap();
        assert_eq!(r.statements, [true; 6]);
        assert!(r.verdicts_hold());
    }

    #[test]
    fn minimal_cover_matches_exhaustive() {
        let y = FiniteTopology::sierpinski();
        let z = FiniteTopology::sierpinski();
        let f = ContinuousFiniteMap::identity(y.clone());
        assert_eq!(
            statement6_minimal(&y, &z, &f).unwrap(),
            statement6_exhaustive(&y, &z, &f)
        );
    }
}
