//! Stochastic covers, stationary distributions and Markov measures on the
//! sample-path space of a finite relation.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::relation::{BasicSetDecomposition, FiniteRelation};
use crate::report::{
    DecayEntry, StationaryEntry, TracStatus, TractabilityReport, WeightEntry,
};
use crate::rng::SplitMix64;

/// Tolerance for algebraic identities (column sums, stationarity).
pub const ALGEBRAIC_TOL: f64 = 1e-12;
/// Tolerance for distributions handed in by callers.
pub const INPUT_TOL: f64 = 1e-9;
/// Powers checked when certifying transient decay.
const DECAY_CHECK_POWERS: u32 = 5;

/// Column-stochastic matrix whose support is exactly the edge set.
///
/// `matrix[j][i]` is the probability of moving from element `i` to `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticCover {
    relation: FiniteRelation,
    matrix: Matrix<f64>,
}

impl StochasticCover {
    /// Accepts `matrix` iff its positive entries sit exactly on the edges and
    /// every column sums to one.
    pub fn new(relation: FiniteRelation, matrix: Matrix<f64>) -> Result<Self> {
        let n = relation.len();
        if matrix.len() != n {
            return Err(Error::Dimension {
                expected: n,
                found: matrix.len(),
            });
        }
        if let Some(row) = matrix.iter().find(|r| r.len() != n) {
            return Err(Error::Dimension {
                expected: n,
                found: row.len(),
            });
        }
        for i in 0..n {
            let mut sum = 0.0;
            for (j, row) in matrix.iter().enumerate() {
                let p = row[i];
                let mismatch = |reason| Error::SupportMismatch {
                    from: relation.label(i).to_string(),
                    to: relation.label(j).to_string(),
                    reason,
                };
                if !p.is_finite() || !(0.0..=1.0).contains(&p) {
                    return Err(mismatch("entry outside [0, 1]"));
                }
                match (p > 0.0, relation.contains(i, j)) {
                    (false, true) => return Err(mismatch("zero on an edge")),
                    (true, false) => return Err(mismatch("positive off the edge set")),
                    _ => {}
                }
                sum += p;
            }
            if (sum - 1.0).abs() > ALGEBRAIC_TOL {
                return Err(Error::ColumnSum {
                    column: relation.label(i).to_string(),
                    sum,
                });
            }
        }
        Ok(StochasticCover { relation, matrix })
    }

    /// Equal weight on each out-neighbour.
    #[allow(clippy::needless_range_loop)]
    pub fn uniform(relation: FiniteRelation) -> Result<Self> {
        let n = relation.len();
        let mut matrix = vec![vec![0.0; n]; n];
        for i in 0..n {
            let succ = relation.successors(i);
            if succ.is_empty() {
                return Err(Error::DomainViolation(relation.label(i).to_string()));
            }
            let w = 1.0 / succ.len() as f64;
            for &j in succ {
                matrix[j][i] = w;
            }
        }
        StochasticCover::new(relation, matrix)
    }

    pub fn relation(&self) -> &FiniteRelation {
        &self.relation
    }

    pub fn matrix(&self) -> &Matrix<f64> {
        &self.matrix
    }

    pub fn len(&self) -> usize {
        self.relation.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relation.is_empty()
    }

    pub fn prob(&self, from: usize, to: usize) -> f64 {
        self.matrix[to][from]
    }

    pub fn power(&self, k: usize) -> Matrix<f64> {
        linalg::mat_pow(&self.matrix, k)
    }

    /// Restriction to `class` as a `|class| × |class|` block.
    fn block(&self, class: &[usize]) -> Matrix<f64> {
        class
            .iter()
            .map(|&j| class.iter().map(|&i| self.matrix[j][i]).collect())
            .collect()
    }
}

/// Probability vector over the elements of a relation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Distribution {
    weights: Vec<f64>,
}

impl Distribution {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidDistribution("empty".into()));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::InvalidDistribution(format!("weight {w} is negative")));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > INPUT_TOL {
            return Err(Error::InvalidDistribution(format!("weights sum to {sum}")));
        }
        Ok(Distribution { weights })
    }

    pub fn point_mass(len: usize, at: usize) -> Self {
        let mut weights = vec![0.0; len];
        weights[at] = 1.0;
        Distribution { weights }
    }

    pub fn uniform(len: usize) -> Self {
        Distribution {
            weights: vec![1.0 / len as f64; len],
        }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.weights.len()).filter(|&i| self.weights[i] > 0.0).collect()
    }

    pub fn mass(&self, set: &[usize]) -> f64 {
        set.iter().map(|&i| self.weights[i]).sum()
    }

    pub fn is_positive(&self) -> bool {
        self.weights.iter().all(|&w| w > 0.0)
    }
}

/// Data of a Markov measure: a cover and an initial distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkovMeasureSpec {
    cover: StochasticCover,
    initial: Distribution,
}

impl MarkovMeasureSpec {
    pub fn new(cover: StochasticCover, initial: Distribution) -> Result<Self> {
        if initial.len() != cover.len() {
            return Err(Error::Dimension {
                expected: cover.len(),
                found: initial.len(),
            });
        }
        Ok(MarkovMeasureSpec { cover, initial })
    }

    pub fn cover(&self) -> &StochasticCover {
        &self.cover
    }

    pub fn initial(&self) -> &Distribution {
        &self.initial
    }

    /// Measure of the cylinder of `word`; zero for words that are not paths.
    pub fn cylinder(&self, word: &[usize]) -> f64 {
        let Some(&first) = word.first() else {
            return 1.0;
        };
        if first >= self.cover.len() {
            return 0.0;
        }
        let mut p = self.initial.weights[first];
        for w in word.windows(2) {
            if p == 0.0 {
                break;
            }
            if w[1] >= self.cover.len() {
                return 0.0;
            }
            p *= self.cover.matrix[w[1]][w[0]];
        }
        p
    }

    /// Samples a path of `length` symbols.
    ///
    /// The initial symbol and every transition are drawn by inverse CDF from
    /// one SplitMix64 stream seeded with `seed`.
    pub fn sample_path(&self, length: usize, seed: u64) -> Vec<usize> {
        let mut rng = SplitMix64::new(seed);
        let mut path = Vec::with_capacity(length);
        if length == 0 {
            return path;
        }
        let mut s = rng
            .pick(self.initial.weights.iter().copied())
            .expect("initial distribution has positive mass");
        path.push(s);
        // Per-column CDF over successors only, in ascending index order.
        let columns: Vec<Vec<(usize, f64)>> = (0..self.cover.len())
            .map(|i| {
                self.cover
                    .relation
                    .successors(i)
                    .iter()
                    .map(|&j| (j, self.cover.matrix[j][i]))
                    .collect()
            })
            .collect();
        for _ in 1..length {
            let col = &columns[s];
            let k = rng
                .pick(col.iter().map(|&(_, p)| p))
                .expect("cover column has positive mass");
            s = col[k].0;
            path.push(s);
        }
        path
    }
}

/// Shorthand for [`MarkovMeasureSpec::cylinder`].
pub fn cylinder_measure(spec: &MarkovMeasureSpec, word: &[usize]) -> f64 {
    spec.cylinder(word)
}

/// Shorthand for [`MarkovMeasureSpec::sample_path`].
pub fn sample_path(spec: &MarkovMeasureSpec, length: usize, seed: u64) -> Vec<usize> {
    spec.sample_path(length, seed)
}

/// Geometric decay of the mass left on transient elements:
/// `(Γ^{nk})_{tran,s} ≤ rhoᵏ` for all `s` and `k ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayCertificate {
    pub n: usize,
    pub rho: f64,
}

pub fn transient_decay(
    cover: &StochasticCover,
    decomp: &BasicSetDecomposition,
) -> Result<DecayCertificate> {
    let g = cover.relation();
    let tran = decomp.transient();
    if tran.is_empty() {
        return Ok(DecayCertificate { n: 1, rho: 0.0 });
    }
    // Horizon: longest shortest path into a terminal class, by backward BFS.
    let pred = g.inverse();
    let mut dist = vec![usize::MAX; g.len()];
    let mut frontier: Vec<usize> = (0..g.len()).filter(|&v| !decomp.is_transient(v)).collect();
    for &v in &frontier {
        dist[v] = 0;
    }
    let mut level = 0;
    while !frontier.is_empty() {
        level += 1;
        let mut next = Vec::new();
        for &v in &frontier {
            for &p in pred.successors(v) {
                if dist[p] == usize::MAX {
                    dist[p] = level;
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    if let Some(v) = dist.iter().position(|&d| d == usize::MAX) {
        return Err(Error::Numerical(format!(
            "element `{}` cannot reach a terminal class",
            g.label(v)
        )));
    }
    let n = dist.iter().copied().max().unwrap_or(0).max(1);

    let tran_mass = |m: &Matrix<f64>, s: usize| tran.iter().map(|&t| m[t][s]).sum::<f64>();
    let gamma_n = cover.power(n);
    let rho = (0..g.len())
        .map(|s| tran_mass(&gamma_n, s))
        .fold(0.0, f64::max);
    if rho >= 1.0 {
        return Err(Error::Numerical(format!("decay rate {rho} is not below 1")));
    }
    let mut power = gamma_n.clone();
    for k in 1..=DECAY_CHECK_POWERS {
        if k > 1 {
            power = linalg::mat_mul(&power, &gamma_n);
        }
        let bound = rho.powi(k as i32);
        for s in 0..g.len() {
            let m = tran_mass(&power, s);
            if m > bound + ALGEBRAIC_TOL {
                return Err(Error::Numerical(format!(
                    "transient mass {m} exceeds rho^{k} = {bound}"
                )));
            }
        }
    }
    Ok(DecayCertificate { n, rho })
}

/// Unique stationary distribution supported on a terminal class.
pub fn stationary_distribution(cover: &StochasticCover, class: &[usize]) -> Result<Distribution> {
    let g = cover.relation();
    check_terminal_irreducible(g, class)?;
    let block = cover.block(class);
    let solved = linalg::stationary_block(&block)
        .filter(|v| v.iter().all(|&x| x > 0.0))
        .filter(|v| linalg::residual_inf(&block, v) <= ALGEBRAIC_TOL);
    let local = match solved {
        Some(v) => v,
        None => cesaro_fallback(&block)?,
    };
    let mut weights = vec![0.0; g.len()];
    for (&v, w) in class.iter().zip(local) {
        weights[v] = w;
    }
    Ok(Distribution { weights })
}

/// Power iteration on the lazy chain `(P + I)/2`, which averages consecutive
/// iterates and so converges on periodic blocks as well.
fn cesaro_fallback(block: &Matrix<f64>) -> Result<Vec<f64>> {
    let n = block.len();
    let mut v = vec![1.0 / n as f64; n];
    for _ in 0..1_000_000 {
        let pv = linalg::mat_vec(block, &v);
        let mut next: Vec<f64> = pv.iter().zip(&v).map(|(a, b)| 0.5 * (a + b)).collect();
        let sum: f64 = next.iter().sum();
        next.iter_mut().for_each(|x| *x /= sum);
        v = next;
        if linalg::residual_inf(block, &v) <= ALGEBRAIC_TOL {
            return Ok(v);
        }
    }
    Err(Error::Numerical(
        "stationary iteration did not reach the residual tolerance".into(),
    ))
}

pub(crate) fn check_terminal_irreducible(g: &FiniteRelation, class: &[usize]) -> Result<()> {
    if class.is_empty() {
        return Err(Error::NotTerminal("empty class".into()));
    }
    let mut inside = vec![false; g.len()];
    for &v in class {
        if v >= g.len() {
            return Err(Error::NotTerminal(format!("index {v} out of range")));
        }
        inside[v] = true;
    }
    for &v in class {
        if let Some(&w) = g.successors(v).iter().find(|&&w| !inside[w]) {
            return Err(Error::NotTerminal(format!(
                "edge {} -> {} leaves the class",
                g.label(v),
                g.label(w)
            )));
        }
    }
    // Strongly connected: everything reachable from the first member.
    let mut seen = vec![false; g.len()];
    let mut stack = vec![class[0]];
    seen[class[0]] = true;
    while let Some(v) = stack.pop() {
        for &w in g.successors(v) {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    let reach_back = g.inverse();
    let mut back = vec![false; g.len()];
    let mut stack = vec![class[0]];
    back[class[0]] = true;
    while let Some(v) = stack.pop() {
        for &w in reach_back.successors(v) {
            if inside[w] && !back[w] {
                back[w] = true;
                stack.push(w);
            }
        }
    }
    if class.iter().any(|&v| !seen[v] || !back[v]) || !g.successors(class[0]).iter().any(|&w| inside[w]) {
        return Err(Error::NotTerminal("class is not strongly connected".into()));
    }
    Ok(())
}

/// Writes a stationary `v` as `Σ_B v(B) v_B` over terminal classes.
///
/// Returns `(class index, weight)` pairs in class order.
pub fn decompose_stationary(
    cover: &StochasticCover,
    decomp: &BasicSetDecomposition,
    v: &Distribution,
) -> Result<Vec<(usize, f64)>> {
    if v.len() != cover.len() {
        return Err(Error::Dimension {
            expected: cover.len(),
            found: v.len(),
        });
    }
    let residual = linalg::residual_inf(cover.matrix(), v.weights());
    if residual > INPUT_TOL {
        return Err(Error::NotStationary(residual));
    }
    let tran_mass = v.mass(decomp.transient());
    if tran_mass > INPUT_TOL {
        return Err(Error::NotStationary(tran_mass));
    }
    let mut weights = Vec::new();
    let mut rebuilt = vec![0.0; cover.len()];
    for c in decomp.terminal_classes() {
        let class = decomp.class(c);
        let w = v.mass(class);
        let v_b = stationary_distribution(cover, class)?;
        for (r, x) in rebuilt.iter_mut().zip(v_b.weights()) {
            *r += w * x;
        }
        weights.push((c, w));
    }
    let gap = rebuilt
        .iter()
        .zip(v.weights())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    if gap > INPUT_TOL {
        return Err(Error::NotStationary(gap));
    }
    Ok(weights)
}

/// The ergodic measure `μ_B = Σ_{s∈B} v_B(s) μ_s` of a terminal class.
pub fn ergodic_measure_spec(
    cover: &StochasticCover,
    decomp: &BasicSetDecomposition,
    class: usize,
) -> Result<MarkovMeasureSpec> {
    if !decomp.is_terminal(class) {
        return Err(Error::NotTerminal(format!("class {class}")));
    }
    let v = stationary_distribution(cover, decomp.class(class))?;
    MarkovMeasureSpec::new(cover.clone(), v)
}

/// Outcome of a finite-horizon genericity test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenericityStatus {
    /// Frequencies match the measure of the entered terminal class.
    Generic,
    /// The entered class's measure fails but another terminal measure fits.
    Undetermined,
    NotGeneric,
    /// The path never reached a terminal class.
    NoTerminalEntry,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenericityReport {
    #[serde(rename = "T")]
    pub t: usize,
    #[serde(rename = "L")]
    pub l: usize,
    pub max_dev: Option<f64>,
    pub threshold: f64,
    pub pass: bool,
    pub status: GenericityStatus,
    pub terminal_class: Option<Vec<String>>,
    pub entry_time: Option<usize>,
}

/// Compares cylinder frequencies of `path` (every word of length ≤ `max_len`)
/// with the ergodic measure of the terminal class the path ends in.
///
/// Passes when the largest absolute deviation is at most `5/√T`.
pub fn genericity_check(
    cover: &StochasticCover,
    decomp: &BasicSetDecomposition,
    path: &[usize],
    max_len: usize,
) -> Result<GenericityReport> {
    let g = cover.relation();
    let t = path.len();
    let needed = 10usize.saturating_mul(g.len().saturating_pow(max_len as u32));
    if max_len == 0 || t < needed {
        return Err(Error::Precondition(format!(
            "path length {t} below 10·|K|^L = {needed}"
        )));
    }
    let threshold = 5.0 / (t as f64).sqrt();
    let entered = decomp.endset_certificate(g, path)?;
    let entry_time = decomp.entry_time(path);
    let Some(class) = entered else {
        return Ok(GenericityReport {
            t,
            l: max_len,
            max_dev: None,
            threshold,
            pass: false,
            status: GenericityStatus::NoTerminalEntry,
            terminal_class: None,
            entry_time: None,
        });
    };
    let counts = word_counts(path, max_len);
    let max_dev = max_deviation(cover, decomp, class, &counts, t, max_len)?;
    let pass = max_dev <= threshold;
    let status = if pass {
        GenericityStatus::Generic
    } else {
        let other_fits = decomp
            .terminal_classes()
            .filter(|&c| c != class)
            .map(|c| max_deviation(cover, decomp, c, &counts, t, max_len))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .any(|d| d <= threshold);
        if other_fits {
            GenericityStatus::Undetermined
        } else {
            GenericityStatus::NotGeneric
        }
    };
    Ok(GenericityReport {
        t,
        l: max_len,
        max_dev: Some(max_dev),
        threshold,
        pass,
        status,
        terminal_class: Some(decomp.class_labels(g, class)),
        entry_time,
    })
}

/// Occurrence counts of all windows of length `1..=max_len`.
fn word_counts(path: &[usize], max_len: usize) -> Vec<HashMap<Vec<usize>, usize>> {
    (1..=max_len)
        .map(|len| {
            let mut counts = HashMap::new();
            for w in path.windows(len) {
                *counts.entry(w.to_vec()).or_insert(0) += 1;
            }
            counts
        })
        .collect()
}

/// Empirical word frequencies of a path, one table per length.
pub fn word_frequencies(path: &[usize], max_len: usize) -> Vec<Vec<(Vec<usize>, f64)>> {
    word_counts(path, max_len)
        .into_iter()
        .enumerate()
        .map(|(i, counts)| {
            let windows = (path.len() + 1).saturating_sub(i + 1).max(1) as f64;
            let mut rows: Vec<_> = counts
                .into_iter()
                .map(|(w, c)| (w, c as f64 / windows))
                .collect();
            rows.sort_by(|a, b| a.0.cmp(&b.0));
            rows
        })
        .collect()
}

fn max_deviation(
    cover: &StochasticCover,
    decomp: &BasicSetDecomposition,
    class: usize,
    counts: &[HashMap<Vec<usize>, usize>],
    t: usize,
    max_len: usize,
) -> Result<f64> {
    let spec = ergodic_measure_spec(cover, decomp, class)?;
    let g = cover.relation();
    let mut dev: f64 = 0.0;
    for len in 1..=max_len {
        let windows = (t + 1 - len) as f64;
        let table = &counts[len - 1];
        let mut seen = 0usize;
        // Words of positive measure, enumerated inside the class.
        let mut stack: Vec<Vec<usize>> = decomp.class(class).iter().map(|&s| vec![s]).collect();
        while let Some(w) = stack.pop() {
            if w.len() == len {
                let freq = table.get(&w).map_or(0.0, |&c| c as f64 / windows);
                if table.contains_key(&w) {
                    seen += 1;
                }
                dev = dev.max((freq - spec.cylinder(&w)).abs());
                continue;
            }
            let last = *w.last().unwrap();
            for &nx in g.successors(last) {
                let mut ext = w.clone();
                ext.push(nx);
                stack.push(ext);
            }
        }
        // Words seen in the path but of measure zero.
        if seen < table.len() {
            for (w, &c) in table {
                if spec.cylinder(w) == 0.0 {
                    dev = dev.max(c as f64 / windows);
                }
            }
        }
    }
    Ok(dev)
}

/// Tractability of the subshift `(K_G, S)` with background measure `μ_v`.
pub fn tractability_report_subshift(
    cover: &StochasticCover,
    positive_initial: &Distribution,
) -> Result<TractabilityReport> {
    if positive_initial.len() != cover.len() || !positive_initial.is_positive() {
        return Err(Error::InvalidDistribution(
            "background distribution must be positive on every element".into(),
        ));
    }
    let g = cover.relation();
    let decomp = g.basic_sets()?;
    let decay = transient_decay(cover, &decomp)?;
    let mut stationary = Vec::new();
    for c in decomp.terminal_classes() {
        let v = stationary_distribution(cover, decomp.class(c))?;
        stationary.push(StationaryEntry {
            class: decomp.class_labels(g, c),
            weights: decomp
                .class(c)
                .iter()
                .map(|&s| WeightEntry {
                    element: g.label(s).to_string(),
                    value: v.weights()[s],
                    exact: None,
                })
                .collect(),
        });
    }
    let mut report = TractabilityReport::from_decomposition("subshift", g, &decomp);
    report.stationary = stationary;
    report.decay = DecayEntry::from(decay);
    report.trac = TracStatus::for_decomposition(&decomp, "ergodic Markov measure μ_B per terminal class");
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn full(n: usize) -> FiniteRelation {
        let labels = (0..n).map(|i| i.to_string()).collect();
        FiniteRelation::new(labels, (0..n).flat_map(|i| (0..n).map(move |j| (i, j)))).unwrap()
    }

    fn example_b_cover() -> StochasticCover {
        let g = FiniteRelation::from_labels(
            &["I1", "I2", "I3"],
            &[("I1", "I1"), ("I2", "I2"), ("I2", "I3"), ("I3", "I3")],
        )
        .unwrap();
        let m = vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, 0.5, 0.0],
            vec![0.0, 0.5, 1.0],
        ];
        StochasticCover::new(g, m).unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(StochasticCover::new(full(2), vec![vec![0.5; 2]; 2]).is_ok());
        let bad = vec![vec![1.0, 0.5], vec![0.0, 0.5]];
        assert!(matches!(
            StochasticCover::new(full(2), bad),
            Err(Error::SupportMismatch { .. })
        ));
        let g = FiniteRelation::identity(vec!["a".into(), "b".into()]);
        assert!(matches!(
            StochasticCover::new(g.clone(), vec![vec![0.9, 0.0], vec![0.0, 1.0]]),
            Err(Error::ColumnSum { .. })
        ));
        assert!(matches!(
            StochasticCover::new(g, vec![vec![1.0, 0.0]]),
            Err(Error::Dimension { .. })
        ));
        example_b_cover();
    }

    #[test]
    fn uniform_examples() {
        let c = StochasticCover::uniform(full(2)).unwrap();
        assert!(c.matrix().iter().flatten().all(|&p| p == 0.5));
        let b = StochasticCover::uniform(example_b_cover().relation().clone()).unwrap();
        assert_eq!(b.prob(1, 1), 0.5);
        assert_eq!(b.prob(1, 2), 0.5);
    }

    #[test]
    fn decay_example_b() {
        let c = example_b_cover();
        let d = c.relation().basic_sets().unwrap();
        assert_eq!(transient_decay(&c, &d).unwrap(), DecayCertificate { n: 1, rho: 0.5 });
    }

    #[test]
    fn decay_without_transients() {
        let c = StochasticCover::uniform(full(3)).unwrap();
        let d = c.relation().basic_sets().unwrap();
        assert_eq!(transient_decay(&c, &d).unwrap(), DecayCertificate { n: 1, rho: 0.0 });
    }

    #[test]
    fn stationary_examples() {
        let c = example_b_cover();
        let v = stationary_distribution(&c, &[0]).unwrap();
        assert_eq!(v.weights(), &[1.0, 0.0, 0.0]);
        let cyc = FiniteRelation::from_labels(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap();
        let cyc = StochasticCover::new(cyc, vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let v = stationary_distribution(&cyc, &[0, 1]).unwrap();
        assert!((v.weights()[0] - 0.5).abs() < 1e-15);
        let ds = StochasticCover::new(full(2), vec![vec![0.3, 0.7], vec![0.7, 0.3]]).unwrap();
        let v = stationary_distribution(&ds, &[0, 1]).unwrap();
        assert!((v.weights()[1] - 0.5).abs() < 1e-15);
        assert!(matches!(
            stationary_distribution(&c, &[1]),
            Err(Error::NotTerminal(_))
        ));
    }

    #[test]
    fn cesaro_fallback_converges_on_cycle() {
        let v = cesaro_fallback(&vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert!((v[0] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn decompose_examples() {
        let g = FiniteRelation::identity(vec!["a".into(), "b".into()]);
        let c = StochasticCover::new(g, vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let d = c.relation().basic_sets().unwrap();
        let w = decompose_stationary(&c, &d, &Distribution::point_mass(2, 0)).unwrap();
        assert_eq!(w, vec![(0, 1.0), (1, 0.0)]);
        let w = decompose_stationary(&c, &d, &Distribution::uniform(2)).unwrap();
        assert_eq!(w, vec![(0, 0.5), (1, 0.5)]);
        let cb = example_b_cover();
        let db = cb.relation().basic_sets().unwrap();
        assert!(decompose_stationary(&cb, &db, &Distribution::uniform(3)).is_err());
    }

    #[test]
    fn cylinder_examples() {
        let c = StochasticCover::uniform(full(2)).unwrap();
        let spec = MarkovMeasureSpec::new(c, Distribution::point_mass(2, 0)).unwrap();
        for t in 0..2 {
            for u in 0..2 {
                assert_eq!(spec.cylinder(&[0, t, u]), 0.25);
            }
        }
        assert_eq!(spec.cylinder(&[0]), 1.0);
        assert_eq!(spec.cylinder(&[1, 0]), 0.0);
        let b = MarkovMeasureSpec::new(example_b_cover(), Distribution::uniform(3)).unwrap();
        assert_eq!(b.cylinder(&[0, 1]), 0.0);
    }

    #[test]
    fn ergodic_spec_examples() {
        let c = example_b_cover();
        let d = c.relation().basic_sets().unwrap();
        let spec = ergodic_measure_spec(&c, &d, 0).unwrap();
        assert_eq!(spec.cylinder(&[0, 0, 0]), 1.0);
        let cyc = FiniteRelation::from_labels(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap();
        let cyc = StochasticCover::new(cyc, vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let d = cyc.relation().basic_sets().unwrap();
        let spec = ergodic_measure_spec(&cyc, &d, 0).unwrap();
        assert!((spec.cylinder(&[0, 1]) - 0.5).abs() < 1e-15);
        assert!((spec.cylinder(&[1, 0]) - 0.5).abs() < 1e-15);
        assert_eq!(spec.cylinder(&[0, 0]), 0.0);
        let db = c.relation().basic_sets().unwrap();
        assert!(ergodic_measure_spec(&c, &db, 1).is_err());
    }

    #[test]
    fn sampling_is_deterministic() {
        let c = example_b_cover();
        let spec = MarkovMeasureSpec::new(c, Distribution::point_mass(3, 1)).unwrap();
        assert_eq!(spec.sample_path(100, 9), spec.sample_path(100, 9));
        let det = MarkovMeasureSpec::new(
            StochasticCover::new(
                FiniteRelation::from_labels(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap(),
                vec![vec![0.0, 1.0], vec![1.0, 0.0]],
            )
            .unwrap(),
            Distribution::point_mass(2, 0),
        )
        .unwrap();
        assert_eq!(det.sample_path(5, 3), vec![0, 1, 0, 1, 0]);
    }

    #[test]
    fn sampled_frequency_uniform() {
        let spec =
            MarkovMeasureSpec::new(StochasticCover::uniform(full(2)).unwrap(), Distribution::uniform(2))
                .unwrap();
        let path = spec.sample_path(100_000, 1);
        let ones = path.iter().filter(|&&s| s == 1).count() as f64 / 1e5;
        assert!((ones - 0.5).abs() < 0.02);
    }

    #[test]
    fn genericity_deterministic_chain() {
        let g = FiniteRelation::from_labels(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap();
        let c = StochasticCover::new(g, vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let d = c.relation().basic_sets().unwrap();
        let path: Vec<usize> = (0..1001).map(|i| i % 2).collect();
        let r = genericity_check(&c, &d, &path, 2).unwrap();
        assert!(r.pass);
        assert!(r.max_dev.unwrap() < 1e-3);
        let even: Vec<usize> = (0..1000).map(|i| i % 2).collect();
        let r = genericity_check(&c, &d, &even, 2).unwrap();
        // Letters balance exactly; 2-words are off by one count in 999.
        assert!((r.max_dev.unwrap() - 0.5 / 999.0).abs() < 1e-15);
    }

    #[test]
    fn genericity_precondition_and_no_entry() {
        let c = example_b_cover();
        let d = c.relation().basic_sets().unwrap();
        assert!(genericity_check(&c, &d, &[1, 1], 2).is_err());
        let stuck = vec![1; 200];
        let r = genericity_check(&c, &d, &stuck, 2).unwrap();
        assert_eq!(r.status, GenericityStatus::NoTerminalEntry);
        assert!(!r.pass);
    }

    #[test]
    fn report_examples() {
        let r = tractability_report_subshift(&example_b_cover(), &Distribution::uniform(3)).unwrap();
        assert_eq!(r.basic_sets.len(), 3);
        assert_eq!(r.terminal, vec![vec!["I1".to_string()], vec!["I3".to_string()]]);
        assert_eq!(r.decay.n, 1);
        assert_eq!(r.decay.rho, 0.5);
        let full2 = StochasticCover::uniform(full(2)).unwrap();
        let r = tractability_report_subshift(&full2, &Distribution::uniform(2)).unwrap();
        assert_eq!(r.basic_sets.len(), 1);
        assert_eq!(r.stationary.len(), 1);
        assert!(tractability_report_subshift(&full2, &Distribution::point_mass(2, 0)).is_err());
    }
}
