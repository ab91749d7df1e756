//! The special two-alphabet model: finite sets `K*`, `K` with maps
//! `J, γ : K* → K`, inducing `G = γ ∘ J⁻¹` on `K` and `G* = J⁻¹ ∘ γ` on `K*`.
//!
//! Distribution data `ν` is a positive probability on every fiber `J⁻¹(s)`.
//! It is kept exact when given as rationals.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::markov::{self, Distribution, StochasticCover, INPUT_TOL};
use crate::rational::{self, Rational};
use crate::relation::{BasicSetDecomposition, FiniteRelation};

/// Largest class handed to the dense exact stationary solver.
pub const EXACT_SOLVE_CAP: usize = 512;

#[derive(Debug, Clone, PartialEq)]
pub enum DistributionData {
    Exact(Vec<Rational>),
    Float(Vec<f64>),
}

impl DistributionData {
    pub fn len(&self) -> usize {
        match self {
            DistributionData::Exact(v) => v.len(),
            DistributionData::Float(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get_f64(&self, i: usize) -> f64 {
        match self {
            DistributionData::Exact(v) => rational::to_f64(&v[i]),
            DistributionData::Float(v) => v[i],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoAlphabetModel {
    kstar: Vec<String>,
    k: Vec<String>,
    j: Vec<usize>,
    gamma: Vec<usize>,
    nu: DistributionData,
    fibers: Vec<Vec<usize>>,
}

impl TwoAlphabetModel {
    /// Validates `J` surjective, `ν > 0` and fiber sums equal to one
    /// (exactly for rational `ν`, within 1e-12 otherwise).
    pub fn new(
        kstar: Vec<String>,
        k: Vec<String>,
        j: Vec<usize>,
        gamma: Vec<usize>,
        nu: DistributionData,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidModel(msg));
        if j.len() != kstar.len() || gamma.len() != kstar.len() || nu.len() != kstar.len() {
            return bad("J, gamma and nu must be defined on every element of K*".into());
        }
        for labels in [&kstar, &k] {
            let distinct: BTreeSet<&String> = labels.iter().collect();
            if distinct.len() != labels.len() {
                return bad("duplicate labels".into());
            }
        }
        if let Some(&x) = j.iter().chain(&gamma).find(|&&x| x >= k.len()) {
            return bad(format!("image index {x} outside K"));
        }
        let mut fibers = vec![Vec::new(); k.len()];
        for (s_star, &s) in j.iter().enumerate() {
            fibers[s].push(s_star);
        }
        if let Some(s) = fibers.iter().position(Vec::is_empty) {
            return bad(format!("J is not surjective: `{}` has empty fiber", k[s]));
        }
        match &nu {
            DistributionData::Exact(v) => {
                if let Some(i) = v.iter().position(|x| *x <= Rational::zero()) {
                    return bad(format!("nu({}) is not positive", kstar[i]));
                }
                for (s, fiber) in fibers.iter().enumerate() {
                    let sum: Rational = fiber.iter().map(|&i| v[i].clone()).sum();
                    if !sum.is_one() {
                        return bad(format!(
                            "fiber of `{}` sums to {}",
                            k[s],
                            rational::format(&sum)
                        ));
                    }
                }
            }
            DistributionData::Float(v) => {
                if let Some(i) = v.iter().position(|x| x.is_nan() || *x <= 0.0) {
                    return bad(format!("nu({}) is not positive", kstar[i]));
                }
                for (s, fiber) in fibers.iter().enumerate() {
                    let sum: f64 = fiber.iter().map(|&i| v[i]).sum();
                    if (sum - 1.0).abs() > markov::ALGEBRAIC_TOL {
                        return bad(format!("fiber of `{}` sums to {sum}", k[s]));
                    }
                }
            }
        }
        Ok(TwoAlphabetModel {
            kstar,
            k,
            j,
            gamma,
            nu,
            fibers,
        })
    }

    pub fn kstar(&self) -> &[String] {
        &self.kstar
    }

    pub fn k(&self) -> &[String] {
        &self.k
    }

    pub fn j(&self) -> &[usize] {
        &self.j
    }

    pub fn gamma(&self) -> &[usize] {
        &self.gamma
    }

    pub fn nu(&self) -> &DistributionData {
        &self.nu
    }

    pub fn nu_exact(&self) -> Option<&[Rational]> {
        match &self.nu {
            DistributionData::Exact(v) => Some(v),
            DistributionData::Float(_) => None,
        }
    }

    /// `J⁻¹(s)`, ascending.
    pub fn fiber(&self, s: usize) -> &[usize] {
        &self.fibers[s]
    }

    /// `(G, G*)`; both have full domain.
    pub fn induced_relations(&self) -> (FiniteRelation, FiniteRelation) {
        let g_succ = self
            .fibers
            .iter()
            .map(|fiber| {
                let set: BTreeSet<usize> = fiber.iter().map(|&t| self.gamma[t]).collect();
                set.into_iter().collect()
            })
            .collect();
        let gstar_succ = self
            .gamma
            .iter()
            .map(|&s| self.fibers[s].clone())
            .collect();
        (
            FiniteRelation::from_successors(self.k.clone(), g_succ),
            FiniteRelation::from_successors(self.kstar.clone(), gstar_succ),
        )
    }

    fn gamma_entries<T, F>(&self, weight: F) -> (Matrix<T>, Matrix<T>)
    where
        T: linalg::Scalar,
        F: Fn(usize) -> T,
    {
        let (n, m) = (self.k.len(), self.kstar.len());
        let mut gamma = vec![vec![T::zero(); n]; n];
        for (t, (&from, &to)) in self.j.iter().zip(&self.gamma).enumerate() {
            gamma[to][from] = gamma[to][from].clone() + weight(t);
        }
        let mut gamma_star = vec![vec![T::zero(); m]; m];
        for (s1, &image) in self.gamma.iter().enumerate() {
            for &s2 in &self.fibers[image] {
                gamma_star[s2][s1] = weight(s2);
            }
        }
        (gamma, gamma_star)
    }

    /// Stochastic covers `Γ` of `G` and `Γ*` of `G*` induced by `ν`.
    pub fn induced_covers(&self) -> Result<(StochasticCover, StochasticCover)> {
        let (g, gstar) = self.induced_relations();
        let (m, m_star) = self.gamma_entries(|t| self.nu.get_f64(t));
        Ok((StochasticCover::new(g, m)?, StochasticCover::new(gstar, m_star)?))
    }

    /// Exact `(Γ, Γ*)` when `ν` is rational.
    pub fn induced_covers_exact(&self) -> Option<(Matrix<Rational>, Matrix<Rational>)> {
        let nu = self.nu_exact()?;
        Some(self.gamma_entries(|t| nu[t].clone()))
    }

    /// Basic sets of `G` and `G*` computed independently and matched by `γ`.
    pub fn basic_set_correspondence(&self) -> Result<Correspondence> {
        let (g, gstar) = self.induced_relations();
        let g_decomp = g.basic_sets()?;
        let gstar_decomp = gstar.basic_sets()?;
        let mismatch = |msg: String| Err(Error::Correspondence(msg));
        if g_decomp.len() != gstar_decomp.len() {
            return mismatch(format!(
                "{} basic sets of G but {} of G*",
                g_decomp.len(),
                gstar_decomp.len()
            ));
        }
        let mut pairs: Vec<BasicSetPair> = Vec::with_capacity(g_decomp.len());
        let mut used = vec![false; g_decomp.len()];
        for (cs, bstar) in gstar_decomp.classes().iter().enumerate() {
            let image: BTreeSet<usize> = bstar.iter().map(|&t| self.gamma[t]).collect();
            let first = *image.iter().next().expect("classes are nonempty");
            let Some(cb) = g_decomp.class_of(first) else {
                return mismatch(format!("gamma image of G* class {cs} is not recurrent"));
            };
            let b = g_decomp.class(cb);
            if !image.iter().copied().eq(b.iter().copied()) {
                return mismatch(format!("gamma image of G* class {cs} is not a G class"));
            }
            if std::mem::replace(&mut used[cb], true) {
                return mismatch(format!("G class {cb} is hit twice"));
            }
            let in_b: BTreeSet<usize> = b.iter().copied().collect();
            let expected: Vec<usize> = (0..self.kstar.len())
                .filter(|&t| in_b.contains(&self.gamma[t]) && in_b.contains(&self.j[t]))
                .collect();
            if expected != *bstar {
                return mismatch(format!("G* class {cs} differs from γ⁻¹(B) ∩ J⁻¹(B)"));
            }
            let terminal = gstar_decomp.is_terminal(cs);
            if terminal != g_decomp.is_terminal(cb) {
                return mismatch(format!("terminal flags differ for G class {cb}"));
            }
            if terminal {
                let j_inverse: Vec<usize> =
                    b.iter().flat_map(|&s| self.fibers[s].iter().copied()).collect();
                let mut j_inverse = j_inverse;
                j_inverse.sort_unstable();
                if j_inverse != *bstar {
                    return mismatch(format!("J⁻¹(B) differs from B* for G class {cb}"));
                }
            }
            pairs.push(BasicSetPair {
                b: b.to_vec(),
                bstar: bstar.clone(),
                g_class: cb,
                gstar_class: cs,
                terminal,
            });
        }
        pairs.sort_by_key(|p| p.g_class);
        Ok(Correspondence {
            g,
            gstar,
            g_decomp,
            gstar_decomp,
            pairs,
        })
    }

    /// `v*(s*) = v(J(s*)) ν(s*)`, stationary for `Γ*` when `v` is for `Γ`.
    pub fn lift_stationary(&self, v: &Distribution) -> Result<Distribution> {
        if v.len() != self.k.len() {
            return Err(Error::Dimension {
                expected: self.k.len(),
                found: v.len(),
            });
        }
        let (gamma, _) = self.gamma_entries(|t| self.nu.get_f64(t));
        let residual = linalg::residual_inf(&gamma, v.weights());
        if residual > INPUT_TOL {
            return Err(Error::NotStationary(residual));
        }
        let lifted = (0..self.kstar.len())
            .map(|t| v.weights()[self.j[t]] * self.nu.get_f64(t))
            .collect();
        Distribution::new(lifted)
    }

    /// Exact lift; `v` must have one entry per element of `K`.
    pub fn lift_stationary_exact(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let nu = self.nu_exact()?;
        Some(
            (0..self.kstar.len())
                .map(|t| v[self.j[t]].clone() * nu[t].clone())
                .collect(),
        )
    }

    /// `Γ` restricted to `class`, as a dense block.
    fn class_block<T, F>(&self, class: &[usize], weight: F) -> Result<Matrix<T>>
    where
        T: linalg::Scalar,
        F: Fn(usize) -> T,
    {
        if class.len() > EXACT_SOLVE_CAP {
            return Err(Error::CapExceeded {
                required: class.len() as u128,
                allowed: EXACT_SOLVE_CAP as u128,
            });
        }
        let mut pos = vec![usize::MAX; self.k.len()];
        for (p, &s) in class.iter().enumerate() {
            pos[s] = p;
        }
        let mut block = vec![vec![T::zero(); class.len()]; class.len()];
        for (pi, &s) in class.iter().enumerate() {
            for &t in &self.fibers[s] {
                let pj = pos[self.gamma[t]];
                if pj == usize::MAX {
                    return Err(Error::NotTerminal(format!("`{}` leaves the class", self.k[s])));
                }
                block[pj][pi] = block[pj][pi].clone() + weight(t);
            }
        }
        Ok(block)
    }
}

/// A `G` basic set and its associated `G*` basic set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicSetPair {
    pub b: Vec<usize>,
    pub bstar: Vec<usize>,
    pub g_class: usize,
    pub gstar_class: usize,
    pub terminal: bool,
}

#[derive(Debug, Clone)]
pub struct Correspondence {
    pub g: FiniteRelation,
    pub gstar: FiniteRelation,
    pub g_decomp: BasicSetDecomposition,
    pub gstar_decomp: BasicSetDecomposition,
    /// One pair per basic set, ordered by `G` class index.
    pub pairs: Vec<BasicSetPair>,
}

impl Correspondence {
    pub fn terminal_pairs(&self) -> impl Iterator<Item = &BasicSetPair> {
        self.pairs.iter().filter(|p| p.terminal)
    }

    /// Exact `v_B` on `K` (zero off `B`) for a terminal pair.
    pub fn stationary_exact(&self, model: &TwoAlphabetModel, pair: &BasicSetPair) -> Result<Vec<Rational>> {
        if !pair.terminal {
            return Err(Error::NotTerminal(format!("G class {}", pair.g_class)));
        }
        let nu = model
            .nu_exact()
            .ok_or_else(|| Error::InvalidModel("distribution data is not exact".into()))?;
        let block = model.class_block(&pair.b, |t| nu[t].clone())?;
        let local = linalg::stationary_block(&block)
            .ok_or_else(|| Error::Numerical("singular stationary system".into()))?;
        let mut v = vec![Rational::zero(); model.k.len()];
        for (&s, x) in pair.b.iter().zip(local) {
            v[s] = x;
        }
        Ok(v)
    }

    /// Floating `v_B` on `K` for a terminal pair.
    pub fn stationary_f64(&self, model: &TwoAlphabetModel, pair: &BasicSetPair) -> Result<Distribution> {
        if !pair.terminal {
            return Err(Error::NotTerminal(format!("G class {}", pair.g_class)));
        }
        match model.nu_exact() {
            Some(_) => {
                let exact = self.stationary_exact(model, pair)?;
                Distribution::new(exact.iter().map(rational::to_f64).collect())
            }
            None => {
                let (gamma, _) = model.induced_covers()?;
                markov::stationary_distribution(&gamma, &pair.b)
            }
        }
    }

    fn check_star_word(&self, pair: &BasicSetPair, word: &[usize]) -> Result<bool> {
        if !pair.terminal {
            return Err(Error::NotTerminal(format!("G* class {}", pair.gstar_class)));
        }
        Ok(!word.is_empty()
            && self.gstar.is_word(word)
            && pair.bstar.binary_search(&word[0]).is_ok())
    }
}

/// `Σ_{s*∈B*∩γ⁻¹(s₂)} v_B(J(s*)) ν(s*) = v_B(s₂)` for every `s₂ ∈ K`.
pub fn stationary_identity_holds_exact(
    model: &TwoAlphabetModel,
    pair: &BasicSetPair,
    v_b: &[Rational],
) -> bool {
    let Some(nu) = model.nu_exact() else {
        return false;
    };
    let mut lhs = vec![Rational::zero(); model.k.len()];
    for &t in &pair.bstar {
        let s2 = model.gamma[t];
        lhs[s2] = lhs[s2].clone() + v_b[model.j[t]].clone() * nu[t].clone();
    }
    lhs.iter().zip(v_b).all(|(a, b)| a == b)
}

/// `μ_{B*}⟨s₀* … sₙ*⟩ = v_B(J(s₀*)) ν(s₀*) ⋯ ν(sₙ*)` for `G*` words starting
/// in `B*`, zero otherwise.
pub fn ergodic_cylinder_measure_star(
    model: &TwoAlphabetModel,
    corr: &Correspondence,
    pair: &BasicSetPair,
    word: &[usize],
) -> Result<f64> {
    if !corr.check_star_word(pair, word)? {
        return Ok(0.0);
    }
    let v = corr.stationary_f64(model, pair)?;
    Ok(word
        .iter()
        .fold(v.weights()[model.j[word[0]]], |acc, &t| acc * model.nu.get_f64(t)))
}

pub fn ergodic_cylinder_measure_star_exact(
    model: &TwoAlphabetModel,
    corr: &Correspondence,
    pair: &BasicSetPair,
    word: &[usize],
) -> Result<Rational> {
    if !corr.check_star_word(pair, word)? {
        return Ok(Rational::zero());
    }
    let v = corr.stationary_exact(model, pair)?;
    let nu = model.nu_exact().expect("stationary_exact checked exactness");
    Ok(word
        .iter()
        .fold(v[model.j[word[0]]].clone(), |acc, &t| acc * nu[t].clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::markov::MarkovMeasureSpec;
    use crate::rational::ratio;

    fn labels(prefix: &str, n: usize) -> Vec<String> {
        (0..n).map(|i| format!("{prefix}{i}")).collect()
    }

    fn identity_model(n: usize) -> TwoAlphabetModel {
        TwoAlphabetModel::new(
            labels("a*", n),
            labels("a", n),
            (0..n).collect(),
            (0..n).collect(),
            DistributionData::Exact(vec![ratio(1, 1); n]),
        )
        .unwrap()
    }

    /// N = 2, n = 1, k = 1, γ(ab) = b; K* index = a + 2b.
    fn shift_model() -> TwoAlphabetModel {
        TwoAlphabetModel::new(
            vec!["00".into(), "10".into(), "01".into(), "11".into()],
            vec!["0".into(), "1".into()],
            vec![0, 1, 0, 1],
            vec![0, 0, 1, 1],
            DistributionData::Exact(vec![ratio(1, 2); 4]),
        )
        .unwrap()
    }

    #[test]
    fn build_examples() {
        identity_model(3);
        shift_model();
        let err = TwoAlphabetModel::new(
            vec!["a*".into(), "b*".into()],
            vec!["a".into()],
            vec![0, 0],
            vec![0, 0],
            DistributionData::Exact(vec![ratio(1, 3), ratio(1, 3)]),
        );
        assert!(matches!(err, Err(Error::InvalidModel(_))));
        let not_onto = TwoAlphabetModel::new(
            vec!["a*".into()],
            vec!["a".into(), "b".into()],
            vec![0],
            vec![1],
            DistributionData::Float(vec![1.0]),
        );
        assert!(not_onto.is_err());
        let zero = TwoAlphabetModel::new(
            vec!["a*".into(), "b*".into()],
            vec!["a".into()],
            vec![0, 0],
            vec![0, 0],
            DistributionData::Float(vec![1.0, 0.0]),
        );
        assert!(zero.is_err());
    }

    #[test]
    fn relations_examples() {
        let m = identity_model(3);
        let (g, gs) = m.induced_relations();
        assert_eq!(g, FiniteRelation::identity(m.k().to_vec()));
        assert_eq!(gs, FiniteRelation::identity(m.kstar().to_vec()));

        let (g, gs) = shift_model().induced_relations();
        assert_eq!(g.edge_count(), 4);
        // de Bruijn: (s1, s2) ∈ G* iff first symbol of s2 equals last of s1.
        let words = ["00", "10", "01", "11"];
        for (i, a) in words.iter().enumerate() {
            for (j, b) in words.iter().enumerate() {
                assert_eq!(gs.contains(i, j), a.as_bytes()[1] == b.as_bytes()[0]);
            }
        }
    }

    #[test]
    fn covers_identity() {
        let (c, cs) = identity_model(2).induced_covers().unwrap();
        assert_eq!(c.matrix(), &vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
        assert_eq!(cs.matrix(), &vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
    }

    #[test]
    fn correspondence_examples() {
        let corr = identity_model(2).basic_set_correspondence().unwrap();
        assert_eq!(corr.pairs.len(), 2);
        assert_eq!(corr.pairs[0].b, vec![0]);
        assert_eq!(corr.pairs[0].bstar, vec![0]);

        let corr = shift_model().basic_set_correspondence().unwrap();
        assert_eq!(corr.pairs.len(), 1);
        assert_eq!(corr.pairs[0].bstar, vec![0, 1, 2, 3]);
        assert_eq!(corr.pairs[0].b, vec![0, 1]);
        assert!(corr.pairs[0].terminal);
    }

    #[test]
    fn lift_examples() {
        let m = shift_model();
        let v = Distribution::uniform(2);
        let lifted = m.lift_stationary(&v).unwrap();
        assert_eq!(lifted.weights(), &[0.25; 4]);
        let (_, gs) = m.induced_covers_exact().unwrap();
        let exact = m.lift_stationary_exact(&[ratio(1, 2), ratio(1, 2)]).unwrap();
        assert_eq!(linalg::mat_vec(&gs, &exact), exact);
        assert!(m.lift_stationary(&Distribution::point_mass(2, 0)).is_err());

        let id = identity_model(2);
        let v = Distribution::new(vec![0.3, 0.7]).unwrap();
        assert_eq!(id.lift_stationary(&v).unwrap(), v);
    }

    #[test]
    fn cylinder_star_examples() {
        let m = shift_model();
        let corr = m.basic_set_correspondence().unwrap();
        let pair = &corr.pairs[0];
        let mut legal = 0;
        for a in 0..4 {
            for b in 0..4 {
                let val = ergodic_cylinder_measure_star_exact(&m, &corr, pair, &[a, b]).unwrap();
                if corr.gstar.contains(a, b) {
                    legal += 1;
                    assert_eq!(val, ratio(1, 8));
                } else {
                    assert_eq!(val, ratio(0, 1));
                }
            }
        }
        assert_eq!(legal, 8);

        let id = identity_model(2);
        let corr = id.basic_set_correspondence().unwrap();
        let p0 = &corr.pairs[0];
        assert_eq!(ergodic_cylinder_measure_star_exact(&id, &corr, p0, &[0, 0, 0]).unwrap(), ratio(1, 1));
        assert_eq!(ergodic_cylinder_measure_star(&id, &corr, p0, &[1, 1]).unwrap(), 0.0);
    }

    #[test]
    fn cylinder_star_matches_markov_measure() {
        let m = shift_model();
        let corr = m.basic_set_correspondence().unwrap();
        let pair = &corr.pairs[0];
        let (_, cs) = m.induced_covers().unwrap();
        let v = corr.stationary_f64(&m, pair).unwrap();
        let initial = m.lift_stationary(&v).unwrap();
        let spec = MarkovMeasureSpec::new(cs, initial).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    let w = [a, b, c];
                    let lhs = ergodic_cylinder_measure_star(&m, &corr, pair, &w).unwrap();
                    assert!((lhs - spec.cylinder(&w)).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn stationary_identity_shift() {
        let m = shift_model();
        let corr = m.basic_set_correspondence().unwrap();
        let v = corr.stationary_exact(&m, &corr.pairs[0]).unwrap();
        assert_eq!(v, vec![ratio(1, 2), ratio(1, 2)]);
        assert!(stationary_identity_holds_exact(&m, &corr.pairs[0], &v));
    }
}
