//! Brute-force oracles and random generators shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeSet;

use tractable_core::rational::{int, ratio};
use tractable_core::rng::SplitMix64;
use tractable_core::simplicial1d::{IntervalComplex, SimplicialMap1D, SimplicialSystem1D};
use tractable_core::two_alphabet::{DistributionData, TwoAlphabetModel};
use tractable_core::{FiniteRelation, Rational};

/// `reach[a][b]`: a path of length ≥ 1 from `a` to `b` (Warshall).
pub fn closure(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut reach = vec![vec![false; n]; n];
    for &(a, b) in edges {
        reach[a][b] = true;
    }
    for m in 0..n {
        for a in 0..n {
            if reach[a][m] {
                for b in 0..n {
                    if reach[m][b] {
                        reach[a][b] = true;
                    }
                }
            }
        }
    }
    reach
}

#[derive(Debug, PartialEq, Eq)]
pub struct OracleDecomposition {
    pub classes: Vec<Vec<usize>>,
    pub terminal: Vec<bool>,
    pub transient: Vec<usize>,
    pub order: BTreeSet<(usize, usize)>,
}

/// Basic sets straight from the definitions on the transitive closure.
pub fn basic_sets(n: usize, edges: &[(usize, usize)]) -> OracleDecomposition {
    let reach = closure(n, edges);
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for x in (0..n).filter(|&x| reach[x][x]) {
        if classes.iter().any(|c| c.contains(&x)) {
            continue;
        }
        classes.push((0..n).filter(|&y| reach[x][y] && reach[y][x]).collect());
    }
    let terminal: Vec<bool> = classes
        .iter()
        .map(|c| (0..n).all(|y| !reach[c[0]][y] || c.contains(&y)))
        .collect();
    let transient = (0..n)
        .filter(|&x| !classes.iter().zip(&terminal).any(|(c, &t)| t && c.contains(&x)))
        .collect();
    let mut order = BTreeSet::new();
    for (a, ca) in classes.iter().enumerate() {
        for (b, cb) in classes.iter().enumerate() {
            if a != b && reach[ca[0]][cb[0]] {
                order.insert((a, b));
            }
        }
    }
    OracleDecomposition {
        classes,
        terminal,
        transient,
        order,
    }
}

pub fn labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// Random relation on `n` elements; every element gets a successor when
/// `full_domain` is set.
pub fn random_relation(rng: &mut SplitMix64, n: usize, full_domain: bool) -> (FiniteRelation, Vec<(usize, usize)>) {
    let density = 0.1 + 0.4 * rng.next_f64();
    let mut edges = Vec::new();
    for a in 0..n {
        let mut row: Vec<usize> = (0..n).filter(|_| rng.next_f64() < density).collect();
        if full_domain && row.is_empty() {
            row.push(rng.below(n as u64) as usize);
        }
        edges.extend(row.into_iter().map(|b| (a, b)));
    }
    (FiniteRelation::new(labels("x", n), edges.clone()).unwrap(), edges)
}

/// A random positive rational in `(lo, hi)` with small denominator.
pub fn rational_between(rng: &mut SplitMix64, lo: &Rational, hi: &Rational) -> Rational {
    let q = 2 + rng.below(30) as i64;
    let p = 1 + rng.below((q - 1) as u64) as i64;
    lo + (hi - lo) * ratio(p, q)
}

/// A random non-degenerate simplicial system: each `K` edge split into
/// `2..=max_split` pieces at random rational points, images a ±1 walk.
pub fn random_system(rng: &mut SplitMix64, max_edges: usize, max_split: usize) -> SimplicialSystem1D {
    let edges = 1 + rng.below(max_edges as u64) as usize;
    let mut k = vec![int(0)];
    for _ in 0..edges {
        let step = ratio(1 + rng.below(5) as i64, 1 + rng.below(3) as i64);
        let next = k.last().unwrap() + step;
        k.push(next);
    }
    let mut kstar = vec![int(0)];
    for w in k.windows(2) {
        let pieces = 2 + rng.below((max_split - 1) as u64) as usize;
        let mut cuts: BTreeSet<Rational> = BTreeSet::new();
        while cuts.len() < pieces - 1 {
            cuts.insert(rational_between(rng, &w[0], &w[1]));
        }
        kstar.extend(cuts);
        kstar.push(w[1].clone());
    }
    let kc = IntervalComplex::new(k).unwrap();
    let kstar = IntervalComplex::new(kstar).unwrap();
    let top = kc.vertex_count() - 1;
    let mut vmap = vec![rng.below(top as u64 + 1) as usize];
    for _ in 1..kstar.vertex_count() {
        let v = *vmap.last().unwrap();
        let up = v < top && (v == 0 || rng.below(2) == 0);
        vmap.push(if up { v + 1 } else { v - 1 });
    }
    SimplicialSystem1D::new(SimplicialMap1D::new(kc, kstar, vmap).unwrap()).unwrap()
}

/// Random two-alphabet model with `|K| ≤ 4`, `|K*| ≤ 8`.
pub fn random_model(rng: &mut SplitMix64, exact: bool) -> TwoAlphabetModel {
    let k = 1 + rng.below(4) as usize;
    let kstar = k + rng.below((9 - k) as u64) as usize;
    let mut j: Vec<usize> = (0..k).collect();
    j.extend((k..kstar).map(|_| rng.below(k as u64) as usize));
    let gamma: Vec<usize> = (0..kstar).map(|_| rng.below(k as u64) as usize).collect();
    let weights: Vec<u64> = (0..kstar).map(|_| 1 + rng.below(9)).collect();
    let mut fiber_sum = vec![0u64; k];
    for (t, &s) in j.iter().enumerate() {
        fiber_sum[s] += weights[t];
    }
    let nu = if exact {
        DistributionData::Exact(
            (0..kstar)
                .map(|t| ratio(weights[t] as i64, fiber_sum[j[t]] as i64))
                .collect(),
        )
    } else {
        let mut nu: Vec<f64> = (0..kstar).map(|t| weights[t] as f64 / fiber_sum[j[t]] as f64).collect();
        // Put the rounding error of each fiber on its last element.
        for s in 0..k {
            let members: Vec<usize> = (0..kstar).filter(|&t| j[t] == s).collect();
            let (last, rest) = members.split_last().unwrap();
            nu[*last] = 1.0 - rest.iter().map(|&t| nu[t]).sum::<f64>();
        }
        DistributionData::Float(nu)
    };
    TwoAlphabetModel::new(labels("t", kstar), labels("s", k), j, gamma, nu).unwrap()
}
