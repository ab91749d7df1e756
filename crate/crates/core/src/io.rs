//! JSON file formats. Rationals are written as `"p/q"` strings.
//!
//! | file | shape |
//! |---|---|
//! | relation | `{"elements": [..], "edges": [[a, b], ..]}` |
//! | cover | `{"relation": {..}, "matrix": [[..], ..]}` with `matrix[j][i]` the probability of `i → j` |
//! | model | `{"Kstar": [..], "K": [..], "J": {..}, "gamma": {..}, "nu": {..}}` |
//! | γ-table | `{"N": 2, "n": 1, "k": 1, "gamma": [..]}` |
//! | code | `{"N": 2, "m": 2, "phi": [..]}` |
//! | complex | `{"vertices": ["0", "1/2", ..]}` |
//! | system | `{"K": [..], "Kstar": [..], "vmap": {"1/2": "0", ..}}` |
//! | samples | `{"samples": [["0", "1"], ..], "lipschitz": "2"}` |

use std::collections::BTreeMap;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::markov::StochasticCover;
use crate::rational::{self, Rational};
use crate::relation::FiniteRelation;
use crate::shiftlike::{ShiftLikeSystem, SlidingBlockCode};
use crate::simplicial1d::{IntervalComplex, SimplicialMap1D};
use crate::two_alphabet::{DistributionData, TwoAlphabetModel};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationFile {
    pub elements: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverFile {
    pub relation: RelationFile,
    pub matrix: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    #[serde(rename = "Kstar")]
    pub kstar: Vec<String>,
    #[serde(rename = "K")]
    pub k: Vec<String>,
    #[serde(rename = "J")]
    pub j: BTreeMap<String, String>,
    pub gamma: BTreeMap<String, String>,
    /// Strings are read as exact rationals, numbers as floats.
    pub nu: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GammaTableFile {
    #[serde(rename = "N")]
    pub base: usize,
    pub n: usize,
    pub k: usize,
    pub gamma: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeFile {
    #[serde(rename = "N")]
    pub base: usize,
    pub m: usize,
    pub phi: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub vertices: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    #[serde(rename = "K")]
    pub k: Vec<String>,
    #[serde(rename = "Kstar")]
    pub kstar: Vec<String>,
    pub vmap: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplesFile {
    pub samples: Vec<[String; 2]>,
    pub lipschitz: String,
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

impl RelationFile {
    pub fn from_relation(g: &FiniteRelation) -> Self {
        RelationFile {
            elements: g.elements().to_vec(),
            edges: g
                .edges()
                .map(|(a, b)| [g.label(a).to_string(), g.label(b).to_string()])
                .collect(),
        }
    }

    pub fn build(&self) -> Result<FiniteRelation> {
        let pairs: Vec<(&str, &str)> = self.edges.iter().map(|[a, b]| (a.as_str(), b.as_str())).collect();
        let elements: Vec<&str> = self.elements.iter().map(String::as_str).collect();
        FiniteRelation::from_labels(&elements, &pairs)
    }
}

impl CoverFile {
    pub fn build(&self) -> Result<StochasticCover> {
        StochasticCover::new(self.relation.build()?, self.matrix.clone())
    }
}

fn lookup(labels: &[String], label: &str, what: &str) -> Result<usize> {
    labels
        .iter()
        .position(|l| l == label)
        .ok_or_else(|| Error::InvalidModel(format!("unknown {what} label `{label}`")))
}

fn total_map(map: &BTreeMap<String, String>, domain: &[String], range: &[String], name: &str) -> Result<Vec<usize>> {
    if map.len() != domain.len() {
        return Err(Error::InvalidModel(format!("{name} must be defined on every element of K*")));
    }
    domain
        .iter()
        .map(|s| {
            let image = map
                .get(s)
                .ok_or_else(|| Error::InvalidModel(format!("{name}(`{s}`) is missing")))?;
            lookup(range, image, "K")
        })
        .collect()
}

impl ModelFile {
    pub fn build(&self) -> Result<TwoAlphabetModel> {
        let j = total_map(&self.j, &self.kstar, &self.k, "J")?;
        let gamma = total_map(&self.gamma, &self.kstar, &self.k, "gamma")?;
        if self.nu.len() != self.kstar.len() {
            return Err(Error::InvalidModel("nu must be defined on every element of K*".into()));
        }
        let values = self
            .kstar
            .iter()
            .map(|s| {
                self.nu
                    .get(s)
                    .ok_or_else(|| Error::InvalidModel(format!("nu(`{s}`) is missing")))
            })
            .collect::<Result<Vec<&Value>>>()?;
        let nu = if values.iter().all(|v| v.is_string()) {
            DistributionData::Exact(
                values
                    .iter()
                    .map(|v| rational::parse(v.as_str().expect("checked")))
                    .collect::<Result<_>>()?,
            )
        } else {
            DistributionData::Float(
                values
                    .iter()
                    .map(|v| match v {
                        Value::Number(n) => n.as_f64().ok_or_else(|| Error::Parse("bad number".into())),
                        Value::String(s) => rational::parse(s).map(|r| rational::to_f64(&r)),
                        _ => Err(Error::Parse("nu values must be numbers or strings".into())),
                    })
                    .collect::<Result<_>>()?,
            )
        };
        TwoAlphabetModel::new(self.kstar.clone(), self.k.clone(), j, gamma, nu)
    }
}

impl GammaTableFile {
    pub fn from_system(system: &ShiftLikeSystem) -> Self {
        GammaTableFile {
            base: crate::shiftlike::PrefixMap::base(system),
            n: system.n(),
            k: system.k(),
            gamma: system.gamma().to_vec(),
        }
    }

    pub fn build(&self) -> Result<ShiftLikeSystem> {
        ShiftLikeSystem::new(self.base, self.n, self.k, self.gamma.clone())
    }
}

impl CodeFile {
    pub fn build(&self) -> Result<SlidingBlockCode> {
        SlidingBlockCode::new(self.base, self.m, self.phi.clone())
    }
}

fn parse_vertices(text: &[String]) -> Result<IntervalComplex> {
    IntervalComplex::new(text.iter().map(|s| rational::parse(s)).collect::<Result<_>>()?)
}

fn format_vertices(k: &IntervalComplex) -> Vec<String> {
    k.vertices().iter().map(rational::format).collect()
}

impl ComplexFile {
    pub fn from_complex(k: &IntervalComplex) -> Self {
        ComplexFile {
            vertices: format_vertices(k),
        }
    }

    pub fn build(&self) -> Result<IntervalComplex> {
        parse_vertices(&self.vertices)
    }
}

impl SystemFile {
    pub fn from_map(map: &SimplicialMap1D) -> Self {
        let vmap = map
            .kstar()
            .vertices()
            .iter()
            .zip(map.vmap())
            .map(|(x, &v)| (rational::format(x), rational::format(map.k().vertex(v))))
            .collect();
        SystemFile {
            k: format_vertices(map.k()),
            kstar: format_vertices(map.kstar()),
            vmap,
        }
    }

    /// The vertex map, possibly degenerate.
    pub fn build(&self) -> Result<SimplicialMap1D> {
        let pairs = self
            .vmap
            .iter()
            .map(|(x, y)| Ok((rational::parse(x)?, rational::parse(y)?)))
            .collect::<Result<Vec<_>>>()?;
        SimplicialMap1D::from_pairs(parse_vertices(&self.k)?, parse_vertices(&self.kstar)?, &pairs)
    }
}

/// A map known through samples, interpolated linearly between them.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledMap {
    points: Vec<(Rational, Rational)>,
    pub lipschitz: Rational,
}

impl SampledMap {
    pub fn eval(&self, x: &Rational) -> Rational {
        let i = self.points.partition_point(|(p, _)| p <= x);
        if i == 0 {
            return self.points[0].1.clone();
        }
        if i == self.points.len() {
            return self.points[i - 1].1.clone();
        }
        let (x0, y0) = &self.points[i - 1];
        let (x1, y1) = &self.points[i];
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }

    pub fn points(&self) -> &[(Rational, Rational)] {
        &self.points
    }
}

impl SamplesFile {
    /// Sorted samples with distinct abscissae covering the given interval.
    pub fn build(&self, k: &IntervalComplex) -> Result<SampledMap> {
        let mut points = self
            .samples
            .iter()
            .map(|[x, y]| Ok((rational::parse(x)?, rational::parse(y)?)))
            .collect::<Result<Vec<_>>>()?;
        points.sort_by(|a, b| a.0.cmp(&b.0));
        if points.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Parse("repeated sample abscissa".into()));
        }
        match (points.first(), points.last()) {
            (Some(first), Some(last)) if &first.0 <= k.left() && &last.0 >= k.right() => {}
            _ => return Err(Error::Precondition("samples must cover X(K)".into())),
        }
        Ok(SampledMap {
            points,
            lipschitz: rational::parse(&self.lipschitz)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn relation_roundtrip() {
        let text = r#"{"elements": ["I1", "I2", "I3"], "edges": [["I1","I1"],["I2","I2"],["I2","I3"],["I3","I3"]]}"#;
        let file: RelationFile = serde_json::from_str(text).unwrap();
        let g = file.build().unwrap();
        assert_eq!(RelationFile::from_relation(&g), file);
        let bad = r#"{"elements": ["a"], "edges": [["a","b"]]}"#;
        let file: RelationFile = serde_json::from_str(bad).unwrap();
        assert!(file.build().is_err());
        let extra = r#"{"elements": [], "edges": [], "x": 1}"#;
        assert!(serde_json::from_str::<RelationFile>(extra).is_err());
    }

    #[test]
    fn model_exact_and_float() {
        let text = r#"{"Kstar": ["a", "b"], "K": ["s"], "J": {"a": "s", "b": "s"},
            "gamma": {"a": "s", "b": "s"}, "nu": {"a": "1/3", "b": "2/3"}}"#;
        let m = serde_json::from_str::<ModelFile>(text).unwrap().build().unwrap();
        assert_eq!(m.nu_exact().unwrap(), &[ratio(1, 3), ratio(2, 3)]);
        let text = text.replace("\"1/3\"", "0.25").replace("\"2/3\"", "0.75");
        let m = serde_json::from_str::<ModelFile>(&text).unwrap().build().unwrap();
        assert!(m.nu_exact().is_none());
    }

    #[test]
    fn system_roundtrip() {
        let sys = crate::simplicial1d::examples::example_a();
        let file = SystemFile::from_map(sys.map());
        assert_eq!(file.vmap.get("1/2").map(String::as_str), Some("0"));
        assert_eq!(&file.build().unwrap(), sys.map());
    }

    #[test]
    fn sampled_map() {
        let k = IntervalComplex::from_ints(&[0, 2]).unwrap();
        let file = SamplesFile {
            samples: vec![["0".into(), "0".into()], ["1".into(), "1".into()], ["2".into(), "0".into()]],
            lipschitz: "1".into(),
        };
        let f = file.build(&k).unwrap();
        assert_eq!(f.eval(&ratio(1, 2)), ratio(1, 2));
        assert_eq!(f.eval(&ratio(3, 2)), ratio(1, 2));
        let short = SamplesFile {
            samples: vec![["0".into(), "0".into()]],
            lipschitz: "1".into(),
        };
        assert!(short.build(&k).is_err());
    }
}
