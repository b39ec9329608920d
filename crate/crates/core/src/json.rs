//! Wire format: serde structs mirroring the documented JSON schemas, with
//! conversions into the validated domain types.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::aap::{AAPFunction, BumpFunction, FrequencyBasis, Tent, TrigPolynomial};
use crate::error::{Error, Result};
use crate::fintop::{ContinuousFiniteMap, FiniteTopology, Subset};
use crate::zline::{PeriodicMap, PeriodicSet, TwistedZ};

use num_complex::Complex64;

/// `{"n": int, "opens": [[int]]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TopologyJson {
    pub n: usize,
    pub opens: Vec<Vec<usize>>,
}

impl TopologyJson {
    pub fn to_topology(&self) -> Result<FiniteTopology> {
        let mut opens = BTreeSet::new();
        for points in &self.opens {
            for &p in points {
                if p >= self.n {
                    return Err(Error::PointOutOfRange { point: p, n: self.n });
                }
            }
            opens.insert(Subset::from_points(points.iter().copied()));
        }
        FiniteTopology::new(self.n, opens)
    }

    pub fn from_topology(t: &FiniteTopology) -> Self {
        TopologyJson {
            n: t.n(),
            opens: t.opens().iter().map(|u| u.points().collect()).collect(),
        }
    }
}

/// `{"values": [int]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapJson {
    pub values: Vec<usize>,
}

impl MapJson {
    pub fn to_map(&self, source: &FiniteTopology, target: &FiniteTopology) -> Result<ContinuousFiniteMap> {
        ContinuousFiniteMap::new(source.clone(), target.clone(), self.values.clone())
    }
}

/// `{"m": int, "residues": [int], "added": [int], "removed": [int]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PeriodicSetJson {
    pub m: u64,
    #[serde(default)]
    pub residues: Vec<u64>,
    #[serde(default)]
    pub added: Vec<i64>,
    #[serde(default)]
    pub removed: Vec<i64>,
}

impl PeriodicSetJson {
    pub fn to_set(&self) -> Result<PeriodicSet> {
        PeriodicSet::new(
            self.m,
            self.residues.iter().copied(),
            self.added.iter().copied(),
            self.removed.iter().copied(),
        )
    }

    pub fn from_set(s: &PeriodicSet) -> Self {
        PeriodicSetJson {
            m: s.modulus(),
            residues: s.residues().iter().copied().collect(),
            added: s.added().iter().copied().collect(),
            removed: s.removed().iter().copied().collect(),
        }
    }
}

/// `{"residue_values": [int], "exceptions": {"n": int}}`; JSON object keys
/// are strings, so exception points arrive as decimal strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PeriodicMapJson {
    pub residue_values: Vec<usize>,
    #[serde(default)]
    pub exceptions: BTreeMap<String, usize>,
}

impl PeriodicMapJson {
    pub fn to_map(&self, target: &FiniteTopology) -> Result<PeriodicMap> {
        let mut exceptions = BTreeMap::new();
        for (k, &v) in &self.exceptions {
            let point: i64 = k
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad exception point {k:?}")))?;
            exceptions.insert(point, v);
        }
        PeriodicMap::new(self.residue_values.clone(), exceptions, target.clone())
    }
}

/// `{"z": topology, "f": periodic map}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZModelJson {
    pub z: TopologyJson,
    pub f: PeriodicMapJson,
}

impl ZModelJson {
    pub fn to_model(&self) -> Result<TwistedZ> {
        let z = self.z.to_topology()?;
        let f = self.f.to_map(&z)?;
        TwistedZ::new(z, f)
    }
}

/// One almost periodic coefficient `{"k": [int], "re": real, "im": real}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ApCoeffJson {
    pub k: Vec<i64>,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

/// One tent `{"center": real, "halfwidth": real, "re": real, "im": real}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BumpJson {
    pub center: f64,
    pub halfwidth: f64,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BasisJson {
    pub lambda: Vec<f64>,
}

/// `{"basis": {"lambda": [real]}, "ap": [...], "bumps": [...]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AapFunctionJson {
    pub basis: BasisJson,
    #[serde(default)]
    pub ap: Vec<ApCoeffJson>,
    #[serde(default)]
    pub bumps: Vec<BumpJson>,
}

impl AapFunctionJson {
    pub fn to_function(&self) -> Result<AAPFunction> {
        let basis = FrequencyBasis::new(self.basis.lambda.clone())?;
        let ap = TrigPolynomial::from_coeffs(
            basis,
            self.ap
                .iter()
                .map(|c| (c.k.clone(), Complex64::new(c.re, c.im))),
        )?;
        let bumps = BumpFunction::new(
            self.bumps
                .iter()
                .map(|b| Tent {
                    center: b.center,
                    halfwidth: b.halfwidth,
                    amplitude: Complex64::new(b.re, b.im),
                })
                .collect(),
        )?;
        Ok(AAPFunction::new(bumps, ap))
    }
}

/// `{"point": ..., "w": real}`; the point encoding depends on the carrier,
/// so it stays a raw JSON value until the model is known.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AtomJson {
    pub point: serde_json::Value,
    pub w: f64,
}

/// `{"haar": real, "atoms": [...]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZMeasureJson {
    #[serde(default)]
    pub haar: f64,
    #[serde(default)]
    pub atoms: Vec<AtomJson>,
}

/// `{"y_atoms": [{"point": ..., "w": real}], "z": {"haar": real, "atoms": [...]}}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MeasureFixtureJson {
    #[serde(default)]
    pub y_atoms: Vec<AtomJson>,
    pub z: ZMeasureJson,
}

pub fn atom_as_i64(a: &AtomJson) -> Result<(i64, f64)> {
    let p = a
        .point
        .as_i64()
        .ok_or_else(|| Error::InvalidParameter(format!("expected integer point, got {}", a.point)))?;
    Ok((p, a.w))
}

pub fn atom_as_usize(a: &AtomJson) -> Result<(usize, f64)> {
    let p = a
        .point
        .as_u64()
        .ok_or_else(|| Error::InvalidParameter(format!("expected point index, got {}", a.point)))?;
    Ok((p as usize, a.w))
}

pub fn atom_as_f64(a: &AtomJson) -> Result<(f64, f64)> {
    let p = a
        .point
        .as_f64()
        .ok_or_else(|| Error::InvalidParameter(format!("expected real point, got {}", a.point)))?;
    Ok((p, a.w))
}

pub fn atom_as_angles(a: &AtomJson) -> Result<(Vec<f64>, f64)> {
    let arr = a
        .point
        .as_array()
        .ok_or_else(|| Error::InvalidParameter(format!("expected angle list, got {}", a.point)))?;
    let mut theta = Vec::with_capacity(arr.len());
    for v in arr {
        theta.push(v.as_f64().ok_or_else(|| {
            Error::InvalidParameter(format!("expected real angle, got {v}"))
        })?);
    }
    Ok((theta, a.w))
}
