//! Tractability reports shared by the subshift, shift-like and
//! piecewise-linear analyses. Serialized as JSON with rationals as strings.

use serde::{Deserialize, Serialize};

use crate::markov::{DecayCertificate, GenericityReport};
use crate::relation::{BasicSetDecomposition, FiniteRelation};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TractabilityReport {
    pub system: String,
    pub basic_sets: Vec<BasicSetEntry>,
    pub terminal: Vec<Vec<String>>,
    pub transient: Vec<String>,
    /// `[a, b]`: basic set `b` is reachable from basic set `a`.
    pub order: Vec<[usize; 2]>,
    pub stationary: Vec<StationaryEntry>,
    pub decay: DecayEntry,
    pub trac: TracStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genericity: Option<GenericityReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub measures: Vec<MeasureDescriptor>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub caveats: Vec<Caveat>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasicSetEntry {
    pub index: usize,
    pub members: Vec<String>,
    pub terminal: bool,
    /// Visible at the level of the subshift; coincides with `terminal`.
    pub visible: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StationaryEntry {
    pub class: Vec<String>,
    pub weights: Vec<WeightEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightEntry {
    pub element: String,
    pub value: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayEntry {
    pub n: usize,
    pub rho: f64,
}

impl From<DecayCertificate> for DecayEntry {
    fn from(d: DecayCertificate) -> Self {
        DecayEntry { n: d.n, rho: d.rho }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TracItem {
    pub holds: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TracStatus {
    pub trac1: TracItem,
    pub trac2: TracItem,
    pub trac3: TracItem,
    pub trac4: TracItem,
}

impl TracStatus {
    pub fn for_decomposition(decomp: &BasicSetDecomposition, measures: &str) -> Self {
        let terminal = decomp.terminal_classes().count();
        TracStatus {
            trac1: TracItem {
                holds: true,
                detail: format!("{} basic sets", decomp.len()),
            },
            trac2: TracItem {
                holds: terminal > 0,
                detail: format!(
                    "{terminal} {measures}; non-generic points are null (transient mass decays geometrically)"
                ),
            },
            trac3: TracItem {
                holds: true,
                detail: format!("{terminal} visible basic sets, exactly the terminal classes"),
            },
            trac4: TracItem {
                holds: true,
                detail: "supports lie in pairwise disjoint basic sets".into(),
            },
        }
    }
}

/// An invariant measure as weights on cells (intervals or cylinders).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureDescriptor {
    pub class: Vec<String>,
    /// Support as a union of closed intervals `[a, b]`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub support: Vec<[String; 2]>,
    /// Support as a union of cylinder sets.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub support_cylinders: Vec<String>,
    pub density: Vec<DensityEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cylinder: Option<String>,
    /// Mass of the cell.
    pub weight: String,
    /// Lebesgue density on the cell, for intervals.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub density: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Caveat {
    pub kind: String,
    pub classes: Vec<Vec<String>>,
    pub point: String,
    pub detail: String,
}

impl TractabilityReport {
    /// Report skeleton filled with the basic-set structure of `g`.
    pub fn from_decomposition(
        system: &str,
        g: &FiniteRelation,
        decomp: &BasicSetDecomposition,
    ) -> Self {
        let basic_sets = (0..decomp.len())
            .map(|c| BasicSetEntry {
                index: c,
                members: decomp.class_labels(g, c),
                terminal: decomp.is_terminal(c),
                visible: decomp.is_terminal(c),
            })
            .collect();
        TractabilityReport {
            system: system.to_string(),
            basic_sets,
            terminal: decomp
                .terminal_classes()
                .map(|c| decomp.class_labels(g, c))
                .collect(),
            transient: decomp
                .transient()
                .iter()
                .map(|&v| g.label(v).to_string())
                .collect(),
            order: decomp.order().iter().map(|&(a, b)| [a, b]).collect(),
            stationary: Vec::new(),
            decay: DecayEntry { n: 1, rho: 0.0 },
            trac: TracStatus::for_decomposition(decomp, "ergodic measures"),
            genericity: None,
            measures: Vec::new(),
            caveats: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
