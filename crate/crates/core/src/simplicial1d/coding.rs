//! Symbolic coding of a simplicial system by `K*` edge words: iterated
//! refinements, decoded intervals and the checks built on them.

use num_traits::{One, Zero};
use serde::Serialize;

use super::complex::IntervalComplex;
use super::system::SimplicialSystem1D;
use crate::error::{Error, Result};
use crate::markov::{MarkovMeasureSpec, ALGEBRAIC_TOL};
use crate::rational::{self, Rational};
use crate::two_alphabet::{BasicSetPair, Correspondence, TwoAlphabetModel};

/// Default cap on the number of edges of a refinement.
pub const DEFAULT_CELL_CAP: u64 = 1 << 20;

/// Default depth at which decoding stops refining a point.
pub const DECODE_DEPTH: usize = 40;

#[derive(Debug, Clone)]
pub struct Refinement {
    pub level: usize,
    pub complex: IntervalComplex,
    /// Largest `d_K` length of an edge.
    pub mesh: Rational,
    /// `2(1 − θ)ⁿ`.
    pub bound: Rational,
}

/// `K^{*n}`: `K^{*0} = K`, `K^{*1} = K*`, and `K^{*(n+1)}` restricted to a
/// `K*` edge `s` is the pull-back `ḡ_s(K^{*n} | γ(s))`.
///
/// Fails if the mesh exceeds `2(1 − θ)ⁿ`.
pub fn refine(system: &SimplicialSystem1D, n: usize) -> Result<Refinement> {
    refine_with_cap(system, n, crate::cell_cap_from_env(DEFAULT_CELL_CAP))
}

pub fn refine_with_cap(system: &SimplicialSystem1D, n: usize, cap: u64) -> Result<Refinement> {
    let k = system.k();
    let kstar = system.kstar();
    let edges = kstar.edge_count();
    // Edge counts per K edge, checked against the cap before any arithmetic.
    let mut counts: Vec<u128> = vec![1; k.edge_count()];
    for _ in 0..n {
        let mut next = vec![0u128; k.edge_count()];
        for e in 0..edges {
            next[system.j(e)] = next[system.j(e)].saturating_add(counts[system.gamma_edge(e)]);
        }
        let total = next.iter().fold(0u128, |a, &b| a.saturating_add(b));
        if total > cap as u128 {
            return Err(Error::CapExceeded {
                required: total,
                allowed: cap as u128,
            });
        }
        counts = next;
    }
    // Vertex lists per K edge, endpoints included.
    let mut pieces: Vec<Vec<Rational>> = (0..k.edge_count())
        .map(|e| {
            let (a, b) = k.edge(e);
            vec![a.clone(), b.clone()]
        })
        .collect();
    for _ in 0..n {
        let mut next: Vec<Vec<Rational>> = vec![Vec::new(); k.edge_count()];
        for e in 0..edges {
            let (alpha, beta) = system.local_inverse_coeffs(e);
            let source = &pieces[system.gamma_edge(e)];
            let mut mapped: Vec<Rational> = source.iter().map(|x| &alpha * x + &beta).collect();
            if !system.increasing(e) {
                mapped.reverse();
            }
            let target = &mut next[system.j(e)];
            if !target.is_empty() {
                mapped.remove(0);
            }
            target.extend(mapped);
        }
        pieces = next;
    }
    let mut vertices = Vec::new();
    for (e, piece) in pieces.into_iter().enumerate() {
        let skip = usize::from(e > 0);
        vertices.extend(piece.into_iter().skip(skip));
    }
    let complex = IntervalComplex::new(vertices)?;
    let mesh = mesh_dk(k, &complex);
    let bound = rational::int(2) * (Rational::one() - system.theta()).pow(n as i32);
    if mesh > bound {
        return Err(Error::Numerical(format!(
            "mesh {} exceeds 2(1 − θ)^{n} = {}",
            rational::format(&mesh),
            rational::format(&bound)
        )));
    }
    Ok(Refinement {
        level: n,
        complex,
        mesh,
        bound,
    })
}

/// Largest `d_K` length of an edge of a subdivision `fine` of `k`.
pub fn mesh_dk(k: &IntervalComplex, fine: &IntervalComplex) -> Rational {
    let two = rational::int(2);
    (0..fine.edge_count())
        .map(|e| {
            let (a, _) = fine.edge(e);
            let host = k.edge_containing(a).expect("subdivision of k");
            &two * fine.edge_len(e) / k.edge_len(host)
        })
        .max()
        .expect("at least one edge")
}

fn check_word(system: &SimplicialSystem1D, word: &[usize]) -> Result<()> {
    if word.is_empty() {
        return Err(Error::InvalidWord("empty K* word".into()));
    }
    let edges = system.kstar().edge_count();
    if let Some(&e) = word.iter().find(|&&e| e >= edges) {
        return Err(Error::InvalidWord(format!("K* edge index {e} out of range")));
    }
    for (pos, w) in word.windows(2).enumerate() {
        if system.j(w[1]) != system.gamma_edge(w[0]) {
            return Err(Error::NotAWord(pos));
        }
    }
    Ok(())
}

/// `ḡ_{s₀} ∘ ⋯ ∘ ḡ_{s_{n−1}}(s_n)`: the points `x` with `gⁱ(x) ∈ sᵢ` for `i ≤ n`.
pub fn code_h_1d(system: &SimplicialSystem1D, word: &[usize]) -> Result<(Rational, Rational)> {
    check_word(system, word)?;
    let last = *word.last().expect("nonempty");
    let (a, b) = system.kstar().edge(last);
    let (mut lo, mut hi) = (a.clone(), b.clone());
    for &e in word[..word.len() - 1].iter().rev() {
        let (alpha, beta) = system.local_inverse_coeffs(e);
        let x = &alpha * &lo + &beta;
        let y = &alpha * &hi + &beta;
        (lo, hi) = if x <= y { (x, y) } else { (y, x) };
    }
    Ok((lo, hi))
}

/// Checks `μ_s⟨w⟩ = λ_s(H(w))` for every `K` edge `s` and every `G*` word
/// of at most `max_depth + 1` letters. Returns the number of words checked.
pub fn verify_pushforward(system: &SimplicialSystem1D, max_depth: usize) -> Result<usize> {
    let nu = system.lebesgue_distribution_data();
    let edges = system.kstar().edge_count();
    let mut fibers = vec![Vec::new(); system.k().edge_count()];
    for e in 0..edges {
        fibers[system.j(e)].push(e);
    }
    let mut checked = 0;
    let mut stack: Vec<(Vec<usize>, Rational)> = (0..edges).map(|e| (vec![e], nu[e].clone())).collect();
    while let Some((word, mu)) = stack.pop() {
        let (lo, hi) = code_h_1d(system, &word)?;
        let lambda = (hi - lo) / system.k().edge_len(system.j(word[0]));
        if lambda != mu {
            return Err(Error::Numerical(format!(
                "cylinder {:?}: μ = {}, λ = {}",
                word,
                rational::format(&mu),
                rational::format(&lambda)
            )));
        }
        checked += 1;
        if word.len() <= max_depth {
            let last = *word.last().expect("nonempty");
            for &next in &fibers[system.gamma_edge(last)] {
                let mut longer = word.clone();
                longer.push(next);
                stack.push((longer, &mu * &nu[next]));
            }
        }
    }
    Ok(checked)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BirkhoffReport {
    #[serde(rename = "T")]
    pub t: usize,
    pub bins: Vec<[String; 2]>,
    pub expected: Vec<f64>,
    pub observed: Vec<f64>,
    pub max_dev: f64,
    pub threshold: f64,
    pub pass: bool,
}

/// `λ_B(bin)` for the piecewise-constant measure with weight `v(s)` on edge `s`.
fn interval_mass(k: &IntervalComplex, v: &[Rational], lo: &Rational, hi: &Rational) -> Rational {
    let mut mass = Rational::zero();
    for (s, w) in v.iter().enumerate() {
        if w.is_zero() {
            continue;
        }
        let (a, b) = k.edge(s);
        let left = a.max(lo);
        let right = b.min(hi);
        if left < right {
            mass += w * (right - left) / k.edge_len(s);
        }
    }
    mass
}

/// Samples a `Γ*` path from `μ_{B*}`, decodes the window starting at each of
/// the first `t` positions to a point, and compares the point counts in
/// `bins` equal bins of the hull of `X(B̄)` with `λ_B`. Passes when every
/// bin is within `5/√t`.
pub fn birkhoff_decoding_check(
    system: &SimplicialSystem1D,
    model: &TwoAlphabetModel,
    corr: &Correspondence,
    pair: &BasicSetPair,
    t: usize,
    bins: usize,
    seed: u64,
) -> Result<BirkhoffReport> {
    if t == 0 || bins == 0 {
        return Err(Error::Precondition("need t ≥ 1 and at least one bin".into()));
    }
    let k = system.k();
    let v = corr.stationary_exact(model, pair)?;
    let lo = k.edge(pair.b[0]).0.clone();
    let hi = k.edge(*pair.b.last().expect("nonempty")).1.clone();
    let width = &hi - &lo;
    let cuts: Vec<Rational> = (0..=bins)
        .map(|i| &lo + &width * rational::ratio(i as i64, bins as i64))
        .collect();
    let expected: Vec<Rational> = cuts.windows(2).map(|c| interval_mass(k, &v, &c[0], &c[1])).collect();

    let (_, cover_star) = model.induced_covers()?;
    let v_f64 = crate::markov::Distribution::new(v.iter().map(rational::to_f64).collect())?;
    let initial = model.lift_stationary(&v_f64)?;
    let spec = MarkovMeasureSpec::new(cover_star, initial)?;
    let path = spec.sample_path(t + DECODE_DEPTH, seed);

    let coeffs: Vec<(Rational, Rational)> = (0..system.kstar().edge_count())
        .map(|e| system.local_inverse_coeffs(e))
        .collect();
    let mut counts = vec![0usize; bins];
    for start in 0..t {
        let bin = decode_to_bin(system, &coeffs, &path[start..=start + DECODE_DEPTH], &cuts);
        counts[bin] += 1;
    }
    let observed: Vec<f64> = counts.iter().map(|&c| c as f64 / t as f64).collect();
    let max_dev = observed
        .iter()
        .zip(&expected)
        .map(|(o, e)| (o - rational::to_f64(e)).abs())
        .fold(0.0, f64::max);
    let threshold = 5.0 / (t as f64).sqrt();
    Ok(BirkhoffReport {
        t,
        bins: cuts
            .windows(2)
            .map(|c| [rational::format(&c[0]), rational::format(&c[1])])
            .collect(),
        expected: expected.iter().map(rational::to_f64).collect(),
        observed,
        max_dev,
        threshold,
        pass: max_dev <= threshold + ALGEBRAIC_TOL,
    })
}

/// Bin of the decoded point: composes local inverses outside-in until the
/// interval fits in one bin, else uses the midpoint at full depth.
fn decode_to_bin(
    system: &SimplicialSystem1D,
    coeffs: &[(Rational, Rational)],
    window: &[usize],
    cuts: &[Rational],
) -> usize {
    let mut a = Rational::one();
    let mut b = Rational::zero();
    let locate = |x: &Rational| {
        let i = cuts.partition_point(|c| c <= x);
        i.clamp(1, cuts.len() - 1) - 1
    };
    let mut last = (Rational::zero(), Rational::zero());
    for (depth, &e) in window.iter().enumerate() {
        let (s0, s1) = system.kstar().edge(e);
        let x = &a * s0 + &b;
        let y = &a * s1 + &b;
        let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
        let bin = locate(&lo);
        if hi <= cuts[bin + 1] {
            return bin;
        }
        if depth + 1 == window.len() {
            last = (lo, hi);
            break;
        }
        let (alpha, beta) = &coeffs[e];
        b = &a * beta + &b;
        a = &a * alpha;
    }
    let mid = (&last.0 + &last.1) / rational::int(2);
    locate(&mid)
}

/// `true` if `gⁱ(x) ∈ sᵢ` for the midpoint and endpoints of the decoded interval.
pub fn coding_consistent(system: &SimplicialSystem1D, word: &[usize]) -> Result<bool> {
    let (lo, hi) = code_h_1d(system, word)?;
    let mid = (&lo + &hi) / rational::int(2);
    for x in [lo, mid, hi] {
        let mut y = x;
        for &e in word {
            if !system.in_kstar_edge(e, &y) {
                return Ok(false);
            }
            y = system.pl_eval(&y)?;
        }
    }
    Ok(true)
}

/// Fraction of seeds whose check passes, as `(passed, total)`.
pub fn birkhoff_pass_count(
    system: &SimplicialSystem1D,
    t: usize,
    seeds: std::ops::Range<u64>,
) -> Result<(usize, usize)> {
    let model = system.model()?;
    let corr = model.basic_set_correspondence()?;
    let mut passed = 0;
    let mut total = 0;
    for pair in corr.terminal_pairs() {
        for seed in seeds.clone() {
            total += 1;
            if birkhoff_decoding_check(system, &model, &corr, pair, t, 10, seed)?.pass {
                passed += 1;
            }
        }
    }
    Ok((passed, total))
}

/// `d_K` length of a decoded interval inside `K` edge `host`.
pub fn dk_length(system: &SimplicialSystem1D, interval: &(Rational, Rational)) -> Rational {
    let host = system.k().edge_containing(&interval.0).expect("inside X(K)");
    rational::int(2) * (&interval.1 - &interval.0) / system.k().edge_len(host)
}
