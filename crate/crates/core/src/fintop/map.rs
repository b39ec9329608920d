use crate::error::{Error, Result};
use crate::fintop::{FiniteTopology, Subset};

/// A continuous map between finite topological spaces, checked at construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ContinuousFiniteMap {
    source: FiniteTopology,
    target: FiniteTopology,
    values: Vec<usize>,
}

impl ContinuousFiniteMap {
    pub fn new(source: FiniteTopology, target: FiniteTopology, values: Vec<usize>) -> Result<Self> {
        if values.len() != source.n() {
            return Err(Error::EndpointMismatch);
        }
        for &v in &values {
            if v >= target.n() {
                return Err(Error::PointOutOfRange { point: v, n: target.n() });
            }
        }
        let map = ContinuousFiniteMap { source, target, values };
        for &w in map.target.opens() {
            if !map.source.is_open(map.preimage(w)) {
                return Err(Error::NotContinuous(format!("{w:?}")));
            }
        }
        Ok(map)
    }

    pub fn constant(source: FiniteTopology, target: FiniteTopology, point: usize) -> Result<Self> {
        let n = source.n();
        Self::new(source, target, vec![point; n])
    }

    pub fn identity(space: FiniteTopology) -> Self {
        let values = (0..space.n()).collect();
        ContinuousFiniteMap {
            source: space.clone(),
            target: space,
            values,
        }
    }

    pub fn source(&self) -> &FiniteTopology {
        &self.source
    }

    pub fn target(&self) -> &FiniteTopology {
        &self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, p: usize) -> usize {
        self.values[p]
    }

    pub fn preimage(&self, b: Subset) -> Subset {
        Subset::from_points(
            (0..self.source.n()).filter(|&p| b.contains(self.values[p])),
        )
    }

    pub fn image(&self) -> Subset {
        Subset::from_points(self.values.iter().copied())
    }
}
