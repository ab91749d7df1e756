//! Interval complexes: a strictly increasing list of rational vertices whose
//! consecutive pairs are the 1-simplices.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalComplex {
    vertices: Vec<Rational>,
}

/// The open simplex containing a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Carrier {
    Vertex(usize),
    Edge(usize),
}

/// Nonzero barycentric coordinates of a point, by vertex index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Barycentric {
    pub carrier: Carrier,
    pub coords: Vec<(usize, Rational)>,
}

impl IntervalComplex {
    pub fn new(vertices: Vec<Rational>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::InvalidComplex("need at least two vertices".into()));
        }
        if let Some(w) = vertices.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidComplex(format!(
                "vertices not strictly increasing at {}",
                rational::format(&w[1])
            )));
        }
        Ok(IntervalComplex { vertices })
    }

    pub fn from_ints(vertices: &[i64]) -> Result<Self> {
        Self::new(vertices.iter().map(|&v| rational::int(v)).collect())
    }

    pub fn vertices(&self) -> &[Rational] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Rational {
        &self.vertices[i]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn edge(&self, i: usize) -> (&Rational, &Rational) {
        (&self.vertices[i], &self.vertices[i + 1])
    }

    pub fn edge_len(&self, i: usize) -> Rational {
        &self.vertices[i + 1] - &self.vertices[i]
    }

    pub fn left(&self) -> &Rational {
        &self.vertices[0]
    }

    pub fn right(&self) -> &Rational {
        self.vertices.last().expect("nonempty")
    }

    /// Largest edge length.
    pub fn mesh(&self) -> Rational {
        (0..self.edge_count())
            .map(|i| self.edge_len(i))
            .max()
            .expect("at least one edge")
    }

    pub fn min_edge_len(&self) -> Rational {
        (0..self.edge_count())
            .map(|i| self.edge_len(i))
            .min()
            .expect("at least one edge")
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.left() <= x && x <= self.right()
    }

    pub fn vertex_index(&self, x: &Rational) -> Option<usize> {
        self.vertices.binary_search(x).ok()
    }

    pub fn carrier(&self, x: &Rational) -> Result<Carrier> {
        if !self.contains(x) {
            return Err(Error::OutsidePolyhedron(rational::format(x)));
        }
        Ok(match self.vertices.binary_search(x) {
            Ok(v) => Carrier::Vertex(v),
            Err(i) => Carrier::Edge(i - 1),
        })
    }

    /// An edge containing `x`; at an interior vertex, the edge to its right.
    pub fn edge_containing(&self, x: &Rational) -> Result<usize> {
        Ok(match self.carrier(x)? {
            Carrier::Edge(e) => e,
            Carrier::Vertex(v) => v.min(self.edge_count() - 1),
        })
    }

    /// `V(self) ⊇ V(coarse)` with the same endpoints.
    pub fn is_subdivision_of(&self, coarse: &IntervalComplex) -> bool {
        self.left() == coarse.left()
            && self.right() == coarse.right()
            && coarse
                .vertices
                .iter()
                .all(|v| self.vertices.binary_search(v).is_ok())
    }

    /// Adds the midpoint of every edge.
    pub fn derived(&self) -> IntervalComplex {
        let two = rational::int(2);
        let mut vertices = Vec::with_capacity(2 * self.vertices.len() - 1);
        for w in self.vertices.windows(2) {
            vertices.push(w[0].clone());
            vertices.push((&w[0] + &w[1]) / &two);
        }
        vertices.push(self.right().clone());
        IntervalComplex { vertices }
    }

    /// Splits edge `i` into `parts` equal pieces for every edge.
    pub fn uniform_subdivision(&self, parts: &[usize]) -> IntervalComplex {
        let mut vertices = Vec::new();
        for (i, &q) in parts.iter().enumerate() {
            let (a, _) = self.edge(i);
            let step = self.edge_len(i) / rational::int(q as i64);
            for r in 0..q {
                vertices.push(a + &step * rational::int(r as i64));
            }
        }
        vertices.push(self.right().clone());
        IntervalComplex { vertices }
    }

    pub fn edge_label(i: usize) -> String {
        format!("I{}", i + 1)
    }
}

/// Barycentric coordinates of `x` with respect to `k`.
pub fn barycentric(k: &IntervalComplex, x: &Rational) -> Result<Barycentric> {
    let carrier = k.carrier(x)?;
    let coords = match carrier {
        Carrier::Vertex(v) => vec![(v, rational::int(1))],
        Carrier::Edge(e) => {
            let (a, b) = k.edge(e);
            let len = b - a;
            vec![(e, (b - x) / &len), (e + 1, (x - a) / len)]
        }
    };
    Ok(Barycentric { carrier, coords })
}

/// `d_K(x, y)`: L¹ distance between barycentric coordinate vectors.
pub fn d_k(k: &IntervalComplex, x: &Rational, y: &Rational) -> Result<Rational> {
    let mut diff: BTreeMap<usize, Rational> = BTreeMap::new();
    for (v, c) in barycentric(k, x)?.coords {
        *diff.entry(v).or_insert_with(Rational::zero) += c;
    }
    for (v, c) in barycentric(k, y)?.coords {
        *diff.entry(v).or_insert_with(Rational::zero) -= c;
    }
    let total = diff.values().map(Signed::abs).sum();
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::rng::SplitMix64;

    fn k012() -> IntervalComplex {
        IntervalComplex::from_ints(&[0, 1, 2]).unwrap()
    }

    #[test]
    fn construction() {
        assert!(IntervalComplex::from_ints(&[0]).is_err());
        assert!(IntervalComplex::from_ints(&[0, 2, 1]).is_err());
        assert!(IntervalComplex::from_ints(&[0, 0]).is_err());
        let k = k012();
        assert_eq!(k.mesh(), ratio(1, 1));
        assert_eq!(k.derived().vertices().len(), 5);
        assert!(k.derived().is_subdivision_of(&k));
        assert!(!k.is_subdivision_of(&k.derived()));
    }

    #[test]
    fn barycentric_examples() {
        let k = k012();
        let b = barycentric(&k, &ratio(1, 2)).unwrap();
        assert_eq!(b.carrier, Carrier::Edge(0));
        assert_eq!(b.coords, vec![(0, ratio(1, 2)), (1, ratio(1, 2))]);
        let b = barycentric(&k, &ratio(1, 1)).unwrap();
        assert_eq!(b.carrier, Carrier::Vertex(1));
        assert_eq!(b.coords, vec![(1, ratio(1, 1))]);
        assert!(matches!(barycentric(&k, &ratio(3, 1)), Err(Error::OutsidePolyhedron(_))));
    }

    #[test]
    fn d_k_closed_form_within_edge() {
        let k = IntervalComplex::new(vec![ratio(0, 1), ratio(1, 3), ratio(2, 1)]).unwrap();
        let mut rng = SplitMix64::new(1);
        for _ in 0..200 {
            let e = rng.below(2) as usize;
            let (a, b) = k.edge(e);
            let len = b - a;
            let pick = |rng: &mut SplitMix64| a + &len * ratio(rng.below(1000) as i64, 999);
            let (x, y) = (pick(&mut rng), pick(&mut rng));
            let expected = ratio(2, 1) * (&x - &y).abs() / &len;
            assert_eq!(d_k(&k, &x, &y).unwrap(), expected);
        }
    }

    #[test]
    fn d_k_across_edges() {
        let k = k012();
        assert_eq!(d_k(&k, &ratio(0, 1), &ratio(2, 1)).unwrap(), ratio(2, 1));
        assert_eq!(d_k(&k, &ratio(1, 2), &ratio(3, 2)).unwrap(), ratio(1, 1));
    }
}
