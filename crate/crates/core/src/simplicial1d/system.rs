//! Simplicial maps `γ : V(K*) → V(K)` from a subdivision `K*` of `K`, and the
//! piecewise-linear map `g` they induce on `X(K)`.

use num_traits::Zero;

use super::complex::IntervalComplex;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::two_alphabet::{DistributionData, TwoAlphabetModel};

/// A simplicial map from a proper subdivision, possibly degenerate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialMap1D {
    k: IntervalComplex,
    kstar: IntervalComplex,
    vmap: Vec<usize>,
    /// `J`: the `K` edge containing each `K*` edge.
    j: Vec<usize>,
    /// Position of each `K*` edge inside its `K` edge.
    rank: Vec<usize>,
}

impl SimplicialMap1D {
    /// Checks that `kstar` properly subdivides `k` (every `K` edge is split)
    /// and that adjacent `K*` vertices have equal or adjacent images.
    pub fn new(k: IntervalComplex, kstar: IntervalComplex, vmap: Vec<usize>) -> Result<Self> {
        if !kstar.is_subdivision_of(&k) {
            return Err(Error::NotSubdivision(
                "K* must contain every K vertex and share its endpoints".into(),
            ));
        }
        if vmap.len() != kstar.vertex_count() {
            return Err(Error::Dimension {
                expected: kstar.vertex_count(),
                found: vmap.len(),
            });
        }
        if let Some(&v) = vmap.iter().find(|&&v| v >= k.vertex_count()) {
            return Err(Error::InvalidComplex(format!("vertex index {v} outside K")));
        }
        let mut j = Vec::with_capacity(kstar.edge_count());
        let mut rank = Vec::with_capacity(kstar.edge_count());
        let mut pieces = vec![0usize; k.edge_count()];
        let mut current = 0;
        for e in 0..kstar.edge_count() {
            if kstar.vertex(e) == k.vertex(current + 1) {
                current += 1;
            }
            j.push(current);
            rank.push(pieces[current]);
            pieces[current] += 1;
        }
        if let Some(e) = pieces.iter().position(|&p| p < 2) {
            return Err(Error::Improper(IntervalComplex::edge_label(e)));
        }
        let map = SimplicialMap1D { k, kstar, vmap, j, rank };
        for e in 0..map.kstar.edge_count() {
            let (a, b) = (map.vmap[e], map.vmap[e + 1]);
            if a.abs_diff(b) > 1 {
                return Err(Error::NotSimplicial(
                    map.kstar_label(e),
                    format!("images {} and {} are not adjacent", map.k_vertex_text(a), map.k_vertex_text(b)),
                ));
            }
        }
        Ok(map)
    }

    /// Builds the vertex map from `(x, γ(x))` pairs; every `K*` vertex must appear once.
    pub fn from_pairs(
        k: IntervalComplex,
        kstar: IntervalComplex,
        pairs: &[(Rational, Rational)],
    ) -> Result<Self> {
        let mut vmap = vec![usize::MAX; kstar.vertex_count()];
        for (x, y) in pairs {
            let i = kstar
                .vertex_index(x)
                .ok_or_else(|| Error::InvalidComplex(format!("{} is not a K* vertex", rational::format(x))))?;
            let v = k
                .vertex_index(y)
                .ok_or_else(|| Error::InvalidComplex(format!("{} is not a K vertex", rational::format(y))))?;
            if vmap[i] != usize::MAX {
                return Err(Error::InvalidComplex(format!("{} mapped twice", rational::format(x))));
            }
            vmap[i] = v;
        }
        if let Some(i) = vmap.iter().position(|&v| v == usize::MAX) {
            return Err(Error::InvalidComplex(format!(
                "no image for K* vertex {}",
                rational::format(kstar.vertex(i))
            )));
        }
        Self::new(k, kstar, vmap)
    }

    pub fn k(&self) -> &IntervalComplex {
        &self.k
    }

    pub fn kstar(&self) -> &IntervalComplex {
        &self.kstar
    }

    pub fn vmap(&self) -> &[usize] {
        &self.vmap
    }

    /// `J(s*)`, the `K` edge containing `K*` edge `e`.
    pub fn j(&self, e: usize) -> usize {
        self.j[e]
    }

    /// `K*` edges with both vertices sent to the same `K` vertex.
    pub fn degenerate_edges(&self) -> Vec<usize> {
        (0..self.kstar.edge_count())
            .filter(|&e| self.vmap[e] == self.vmap[e + 1])
            .collect()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.degenerate_edges().is_empty()
    }

    /// `g(x) = Σ b_v(x) γ(v)`, linear on each `K*` edge.
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let e = self.kstar.edge_containing(x)?;
        let (a, b) = self.kstar.edge(e);
        let (ga, gb) = (self.k.vertex(self.vmap[e]), self.k.vertex(self.vmap[e + 1]));
        let t = (x - a) / (b - a);
        Ok(ga + (gb - ga) * t)
    }

    /// Label `I{j}.{r}`: the `r`-th `K*` edge inside `K` edge `I{j}`.
    pub fn kstar_label(&self, e: usize) -> String {
        format!("{}.{}", IntervalComplex::edge_label(self.j[e]), self.rank[e] + 1)
    }

    fn k_vertex_text(&self, v: usize) -> String {
        rational::format(self.k.vertex(v))
    }
}

/// A non-degenerate simplicial dynamical system on an interval complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialSystem1D {
    map: SimplicialMap1D,
}

impl SimplicialSystem1D {
    pub fn new(map: SimplicialMap1D) -> Result<Self> {
        if let Some(&e) = map.degenerate_edges().first() {
            return Err(Error::Degenerate(
                map.kstar_label(e),
                format!("both vertices map to {}", map.k_vertex_text(map.vmap[e])),
            ));
        }
        Ok(SimplicialSystem1D { map })
    }

    pub fn map(&self) -> &SimplicialMap1D {
        &self.map
    }

    pub fn k(&self) -> &IntervalComplex {
        &self.map.k
    }

    pub fn kstar(&self) -> &IntervalComplex {
        &self.map.kstar
    }

    pub fn vmap(&self) -> &[usize] {
        &self.map.vmap
    }

    pub fn j(&self, e: usize) -> usize {
        self.map.j[e]
    }

    /// `γ(s*)`: the `K` edge spanned by the images of the endpoints.
    pub fn gamma_edge(&self, e: usize) -> usize {
        self.map.vmap[e].min(self.map.vmap[e + 1])
    }

    /// Whether `g` is increasing on `K*` edge `e`.
    pub fn increasing(&self, e: usize) -> bool {
        self.map.vmap[e] < self.map.vmap[e + 1]
    }

    pub fn kstar_label(&self, e: usize) -> String {
        self.map.kstar_label(e)
    }

    pub fn pl_eval(&self, x: &Rational) -> Result<Rational> {
        self.map.eval(x)
    }

    /// `θ(K*, K)`: the smallest positive `K` barycentric coordinate of a `K*` vertex.
    pub fn theta(&self) -> Rational {
        let (k, kstar) = (self.k(), self.kstar());
        (1..kstar.vertex_count() - 1)
            .filter(|&i| k.vertex_index(kstar.vertex(i)).is_none())
            .map(|i| {
                let w = kstar.vertex(i);
                let (u, v) = k.edge(self.map.j[i]);
                let len = v - u;
                ((v - w) / &len).min((w - u) / &len)
            })
            .min()
            .expect("proper subdivisions have interior vertices")
    }

    /// `ḡ_{s*}(x) = αx + β`, the affine inverse of `g|s*` from `γ(s*)` onto `s*`.
    pub fn local_inverse_coeffs(&self, e: usize) -> (Rational, Rational) {
        let (a, b) = self.kstar().edge(e);
        let (ga, gb) = (self.k().vertex(self.map.vmap[e]), self.k().vertex(self.map.vmap[e + 1]));
        let alpha = (b - a) / (gb - ga);
        let beta = a - &alpha * ga;
        (alpha, beta)
    }

    /// `ḡ_{s*}(x)` for `x ∈ γ(s*)`.
    pub fn local_inverse(&self, e: usize, x: &Rational) -> Result<Rational> {
        let (lo, hi) = self.k().edge(self.gamma_edge(e));
        if x < lo || x > hi {
            return Err(Error::OutsidePolyhedron(format!(
                "{} is not in γ({})",
                rational::format(x),
                self.kstar_label(e)
            )));
        }
        let (alpha, beta) = self.local_inverse_coeffs(e);
        Ok(alpha * x + beta)
    }

    /// `d_K` Lipschitz constant of `ḡ_{s*}`: `len(s*) / len(J(s*))`.
    pub fn contraction_factor(&self, e: usize) -> Rational {
        self.kstar().edge_len(e) / self.k().edge_len(self.j(e))
    }

    /// `ν(s*) = len(s*) / len(J(s*))`; sums to one on every fiber.
    pub fn lebesgue_distribution_data(&self) -> Vec<Rational> {
        (0..self.kstar().edge_count())
            .map(|e| self.contraction_factor(e))
            .collect()
    }

    /// The two-alphabet model on edges with Lebesgue distribution data.
    pub fn model(&self) -> Result<TwoAlphabetModel> {
        let kstar = (0..self.kstar().edge_count()).map(|e| self.kstar_label(e)).collect();
        let k = (0..self.k().edge_count()).map(IntervalComplex::edge_label).collect();
        let gamma = (0..self.kstar().edge_count()).map(|e| self.gamma_edge(e)).collect();
        TwoAlphabetModel::new(
            kstar,
            k,
            self.map.j.clone(),
            gamma,
            DistributionData::Exact(self.lebesgue_distribution_data()),
        )
    }

    /// Whether `x` lies in the closed `K*` edge `e`.
    pub fn in_kstar_edge(&self, e: usize, x: &Rational) -> bool {
        let (a, b) = self.kstar().edge(e);
        a <= x && x <= b
    }
}

/// Validates a vertex map given as `(x, γ(x))` pairs.
pub fn build_system(
    k: IntervalComplex,
    kstar: IntervalComplex,
    vmap: &[(Rational, Rational)],
) -> Result<SimplicialSystem1D> {
    SimplicialSystem1D::new(SimplicialMap1D::from_pairs(k, kstar, vmap)?)
}

/// `θ(K*, K)` of the system's subdivision.
pub fn theta(system: &SimplicialSystem1D) -> Rational {
    system.theta()
}

/// The exact image `g(x)`.
pub fn pl_eval(system: &SimplicialSystem1D, x: &Rational) -> Result<Rational> {
    system.pl_eval(x)
}

/// Sum of `ν` over each fiber, for checking.
pub fn fiber_sums(system: &SimplicialSystem1D) -> Vec<Rational> {
    let nu = system.lebesgue_distribution_data();
    let mut sums = vec![Rational::zero(); system.k().edge_count()];
    for (e, x) in nu.into_iter().enumerate() {
        sums[system.j(e)] += x;
    }
    sums
}
