//! Shift-like maps on the Cantor set `X = A^{Z⁺}` with `A = {0, …, N−1}`.
//!
//! Points of `X` are handled through finite prefixes. Every operation states
//! the prefix length it consumes and fails with [`Error::PrefixTooShort`]
//! rather than guessing.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::markov::{self, StochasticCover};
use crate::rational::{self, Rational};
use crate::report::{DecayEntry, DensityEntry, MeasureDescriptor, StationaryEntry, TracStatus, TractabilityReport, WeightEntry};
use crate::rng::SplitMix64;
use crate::two_alphabet::{self, DistributionData, TwoAlphabetModel};

/// Default cap on `N^{n+k}`, the number of entries of a γ-table.
pub const DEFAULT_TABLE_CAP: u64 = 1 << 24;

/// Largest supported alphabet.
pub const MAX_BASE: usize = 256;

/// `N^len`, or `None` on overflow.
pub fn table_size(base: usize, len: usize) -> Option<u128> {
    (base as u128).checked_pow(len as u32)
}

fn capped_size(base: usize, len: usize, cap: u64) -> Result<usize> {
    match table_size(base, len) {
        Some(size) if size <= cap as u128 => Ok(size as usize),
        size => Err(Error::CapExceeded {
            required: size.unwrap_or(u128::MAX),
            allowed: cap as u128,
        }),
    }
}

/// A finite word over `{0, …, N−1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    base: usize,
    symbols: Vec<u8>,
}

impl Word {
    pub fn new(base: usize, symbols: Vec<u8>) -> Result<Self> {
        if !(2..=MAX_BASE).contains(&base) {
            return Err(Error::InvalidWord(format!("alphabet size {base} outside 2..={MAX_BASE}")));
        }
        if let Some(&s) = symbols.iter().find(|&&s| s as usize >= base) {
            return Err(Error::InvalidWord(format!("symbol {s} is not below {base}")));
        }
        Ok(Word { base, symbols })
    }

    /// Word of length `len` whose little-endian base-`N` value is `index`.
    pub fn from_index(base: usize, len: usize, mut index: u64) -> Self {
        let mut symbols = Vec::with_capacity(len);
        for _ in 0..len {
            symbols.push((index % base as u64) as u8);
            index /= base as u64;
        }
        Word { base, symbols }
    }

    pub fn random(base: usize, len: usize, rng: &mut SplitMix64) -> Self {
        let symbols = (0..len).map(|_| rng.below(base as u64) as u8).collect();
        Word { base, symbols }
    }

    /// Parses digits (`0110`) or, for any base, dot-separated numbers (`3.11.0`).
    pub fn parse(base: usize, text: &str) -> Result<Self> {
        let text = text.trim();
        let err = || Error::InvalidWord(format!("cannot parse `{text}`"));
        let symbols = if text.contains('.') || base > 10 {
            text.split('.')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<u8>().map_err(|_| err()))
                .collect::<Result<Vec<u8>>>()?
        } else {
            text.chars()
                .map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(err))
                .collect::<Result<Vec<u8>>>()?
        };
        Word::new(base, symbols)
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    /// Little-endian base-`N` value, if it fits in 64 bits.
    pub fn index(&self) -> Option<u64> {
        self.symbols.iter().rev().try_fold(0u64, |acc, &s| {
            acc.checked_mul(self.base as u64)?.checked_add(s as u64)
        })
    }

    fn index_unchecked(&self) -> usize {
        self.symbols
            .iter()
            .rev()
            .fold(0usize, |acc, &s| acc * self.base + s as usize)
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word {
            base: self.base,
            symbols: self.symbols[..len.min(self.len())].to_vec(),
        }
    }

    /// Drops the first `count` symbols.
    pub fn drop_front(&self, count: usize) -> Word {
        Word {
            base: self.base,
            symbols: self.symbols[count.min(self.len())..].to_vec(),
        }
    }

    pub fn suffix(&self, len: usize) -> Word {
        self.drop_front(self.len().saturating_sub(len))
    }

    pub fn concat(&self, other: &Word) -> Word {
        debug_assert_eq!(self.base, other.base);
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        Word {
            base: self.base,
            symbols,
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.base <= 10 {
            for s in &self.symbols {
                write!(f, "{s}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.symbols.iter().map(u8::to_string).collect();
            f.write_str(&parts.join("."))
        }
    }
}

/// A map on prefixes that shortens them by a fixed amount per application.
pub trait PrefixMap {
    fn base(&self) -> usize;
    /// Symbols lost per application.
    fn shrink(&self) -> usize;
    fn apply(&self, prefix: &Word) -> Result<Word>;
}

/// `f(x)_i = φ(x_i … x_{i+m−1})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlidingBlockCode {
    base: usize,
    m: usize,
    phi: Vec<u8>,
}

impl SlidingBlockCode {
    /// `phi` is indexed by the little-endian value of the window.
    pub fn new(base: usize, m: usize, phi: Vec<u8>) -> Result<Self> {
        if !(2..=MAX_BASE).contains(&base) || m == 0 {
            return Err(Error::InvalidTable(format!("need 2 ≤ N ≤ {MAX_BASE} and m ≥ 1")));
        }
        let size = table_size(base, m).filter(|&s| s == phi.len() as u128);
        if size.is_none() {
            return Err(Error::InvalidTable(format!(
                "rule table has {} entries, expected N^m",
                phi.len()
            )));
        }
        if let Some(&s) = phi.iter().find(|&&s| s as usize >= base) {
            return Err(Error::InvalidTable(format!("rule value {s} is not below {base}")));
        }
        Ok(SlidingBlockCode { base, m, phi })
    }

    pub fn identity(base: usize) -> Self {
        SlidingBlockCode {
            base,
            m: 1,
            phi: (0..base as u8).collect(),
        }
    }

    /// `φ(ab) = b`.
    pub fn shift(base: usize) -> Self {
        let phi = (0..base * base).map(|i| (i / base) as u8).collect();
        SlidingBlockCode { base, m: 2, phi }
    }

    pub fn random(base: usize, m: usize, rng: &mut SplitMix64) -> Self {
        let size = base.pow(m as u32);
        let phi = (0..size).map(|_| rng.below(base as u64) as u8).collect();
        SlidingBlockCode { base, m, phi }
    }

    pub fn window(&self) -> usize {
        self.m
    }

    pub fn phi(&self) -> &[u8] {
        &self.phi
    }

    /// `k = max(m − 1, 1)`.
    pub fn k(&self) -> usize {
        (self.m - 1).max(1)
    }
}

impl PrefixMap for SlidingBlockCode {
    fn base(&self) -> usize {
        self.base
    }

    fn shrink(&self) -> usize {
        self.m - 1
    }

    fn apply(&self, prefix: &Word) -> Result<Word> {
        if prefix.len() < self.m {
            return Err(Error::PrefixTooShort {
                required: self.m,
                found: prefix.len(),
            });
        }
        let symbols = prefix
            .symbols
            .windows(self.m)
            .map(|w| {
                let idx = w.iter().rev().fold(0usize, |acc, &s| acc * self.base + s as usize);
                self.phi[idx]
            })
            .collect();
        Ok(Word {
            base: self.base,
            symbols,
        })
    }
}

/// `g(s*x) = γ(s*)x` for a table `γ : A^{n+k} → A^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftLikeSystem {
    base: usize,
    n: usize,
    k: usize,
    gamma: Vec<u32>,
}

impl ShiftLikeSystem {
    /// Validates the table against the cap from the environment.
    pub fn new(base: usize, n: usize, k: usize, gamma: Vec<u32>) -> Result<Self> {
        Self::with_cap(base, n, k, gamma, crate::cell_cap_from_env(DEFAULT_TABLE_CAP))
    }

    pub fn with_cap(base: usize, n: usize, k: usize, gamma: Vec<u32>, cap: u64) -> Result<Self> {
        if !(2..=MAX_BASE).contains(&base) || n == 0 || k == 0 {
            return Err(Error::InvalidTable(format!("need 2 ≤ N ≤ {MAX_BASE}, n ≥ 1 and k ≥ 1")));
        }
        let size = capped_size(base, n + k, cap)?;
        if gamma.len() != size {
            return Err(Error::InvalidTable(format!(
                "γ-table has {} entries, expected {size}",
                gamma.len()
            )));
        }
        let image = table_size(base, n).expect("n < n + k");
        if let Some(&v) = gamma.iter().find(|&&v| v as u128 >= image) {
            return Err(Error::InvalidTable(format!("γ value {v} is not an n-word")));
        }
        let system = ShiftLikeSystem { base, n, k, gamma };
        system.check_shift_relation()?;
        Ok(system)
    }

    /// `Ŝⁿ ∘ g = Ŝ^{n+k}` on a few sampled prefixes.
    fn check_shift_relation(&self) -> Result<()> {
        let mut rng = SplitMix64::new(0x5eed);
        for _ in 0..4 {
            let x = Word::random(self.base, self.n + self.k + 5, &mut rng);
            let gx = self.apply(&x)?;
            if gx.drop_front(self.n) != x.drop_front(self.n + self.k) {
                return Err(Error::InvalidTable("g does not commute with the shift".into()));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn window(&self) -> usize {
        self.n + self.k
    }

    pub fn gamma(&self) -> &[u32] {
        &self.gamma
    }

    /// `γ(s*)` for a word of length `n + k`.
    pub fn gamma_word(&self, s_star: &Word) -> Word {
        Word::from_index(self.base, self.n, self.gamma[s_star.index_unchecked()] as u64)
    }

    fn check_window(&self, w: &Word) -> Result<()> {
        if w.base != self.base || w.len() != self.window() {
            return Err(Error::InvalidWord(format!(
                "`{w}` is not a word of length {} over {} symbols",
                self.window(),
                self.base
            )));
        }
        Ok(())
    }

    /// `(s₁*, s₂*) ∈ G*` iff `J(s₂*) = γ(s₁*)`.
    pub fn in_gstar(&self, s1: &Word, s2: &Word) -> bool {
        s2.prefix(self.n) == self.gamma_word(s1)
    }

    /// `R^g`: the `n+k` windows of `x, g(x), …, g^p(x)`.
    pub fn code_r(&self, prefix: &Word, depth: usize) -> Result<Vec<Word>> {
        code_r(self, self.window(), prefix, depth)
    }
}

impl PrefixMap for ShiftLikeSystem {
    fn base(&self) -> usize {
        self.base
    }

    fn shrink(&self) -> usize {
        self.k
    }

    fn apply(&self, prefix: &Word) -> Result<Word> {
        apply_g(self, prefix)
    }
}

/// Table of `J_n ∘ f` on `(n+k)`-words, with `k = max(m − 1, 1)`.
pub fn derive_gamma(code: &SlidingBlockCode, n: usize) -> Result<ShiftLikeSystem> {
    derive_gamma_with_cap(code, n, crate::cell_cap_from_env(DEFAULT_TABLE_CAP))
}

pub fn derive_gamma_with_cap(code: &SlidingBlockCode, n: usize, cap: u64) -> Result<ShiftLikeSystem> {
    if n == 0 {
        return Err(Error::InvalidTable("n must be at least 1".into()));
    }
    let k = code.k();
    let size = capped_size(code.base, n + k, cap)?;
    if table_size(code.base, n).is_none_or(|s| s > u32::MAX as u128) {
        return Err(Error::CapExceeded {
            required: table_size(code.base, n).unwrap_or(u128::MAX),
            allowed: u32::MAX as u128,
        });
    }
    let gamma = (0..size as u64)
        .map(|i| {
            let image = code.apply(&Word::from_index(code.base, n + k, i))?;
            Ok(image.prefix(n).index_unchecked() as u32)
        })
        .collect::<Result<Vec<u32>>>()?;
    ShiftLikeSystem::with_cap(code.base, n, k, gamma, cap)
}

/// `g(s*x) = γ(s*)x`; the output is `k` symbols shorter.
pub fn apply_g(system: &ShiftLikeSystem, prefix: &Word) -> Result<Word> {
    let w = system.window();
    if prefix.len() < w {
        return Err(Error::PrefixTooShort {
            required: w,
            found: prefix.len(),
        });
    }
    if prefix.base != system.base {
        return Err(Error::InvalidWord("alphabet mismatch".into()));
    }
    Ok(system.gamma_word(&prefix.prefix(w)).concat(&prefix.drop_front(w)))
}

/// `R(x)_j = J_window(h^j(x))` for `j = 0..=depth`.
///
/// Needs a prefix of length `window + depth · h.shrink()`.
pub fn code_r<M: PrefixMap + ?Sized>(
    h: &M,
    window: usize,
    prefix: &Word,
    depth: usize,
) -> Result<Vec<Word>> {
    let required = window + depth * h.shrink();
    if prefix.len() < required {
        return Err(Error::PrefixTooShort {
            required,
            found: prefix.len(),
        });
    }
    if prefix.base != h.base() {
        return Err(Error::InvalidWord("alphabet mismatch".into()));
    }
    let mut x = prefix.prefix(required);
    let mut out = Vec::with_capacity(depth + 1);
    for j in 0..=depth {
        out.push(x.prefix(window));
        if j < depth {
            x = h.apply(&x)?;
        }
    }
    Ok(out)
}

/// `H_γ`: first word whole, then the last `k` symbols of each later word.
pub fn decode_h(system: &ShiftLikeSystem, sequence: &[Word]) -> Result<Word> {
    let Some(first) = sequence.first() else {
        return Err(Error::InvalidWord("empty sequence".into()));
    };
    let mut symbols = Vec::with_capacity(system.window() + system.k * (sequence.len() - 1));
    for (i, w) in sequence.iter().enumerate() {
        system.check_window(w)?;
        if i > 0 && !system.in_gstar(&sequence[i - 1], w) {
            return Err(Error::NotAWord(i - 1));
        }
    }
    symbols.extend_from_slice(&first.symbols);
    for w in &sequence[1..] {
        symbols.extend_from_slice(&w.symbols[system.n..]);
    }
    Ok(Word {
        base: system.base,
        symbols,
    })
}

/// `Q^f(x) = H_γ(R^f(x))`: a prefix whose `g`-orbit matches the `f`-orbit of
/// `x` on windows of length `n + k` up to step `depth`.
pub fn shadow_q(
    code: &SlidingBlockCode,
    system: &ShiftLikeSystem,
    prefix: &Word,
    depth: usize,
) -> Result<Word> {
    if code.base != system.base || system.k < code.m - 1 {
        return Err(Error::InvalidTable("system was not derived from this code".into()));
    }
    let coding = code_r(code, system.window(), prefix, depth)?;
    decode_h(system, &coding).map_err(|e| match e {
        Error::NotAWord(_) => Error::InvalidTable("system was not derived from this code".into()),
        e => e,
    })
}

/// `λ₀⟨w⟩ = 1/N^{len(w)}` for the uniform Bernoulli measure.
pub fn bernoulli_cylinder(base: usize, word: &Word) -> Rational {
    let denom = num_bigint::BigInt::from(base).pow(word.len() as u32);
    Rational::new(1.into(), denom)
}

/// The two-alphabet model `K = A^n`, `K* = A^{n+k}`, `J = J_n`, `ν ≡ 1/N^k`.
pub fn two_alphabet_model(system: &ShiftLikeSystem) -> Result<TwoAlphabetModel> {
    let size_star = system.gamma.len();
    let size = size_star / system.base.pow(system.k as u32);
    let kstar = (0..size_star as u64)
        .map(|i| Word::from_index(system.base, system.window(), i).to_string())
        .collect();
    let k = (0..size as u64)
        .map(|i| Word::from_index(system.base, system.n, i).to_string())
        .collect();
    let j = (0..size_star).map(|i| i % size).collect();
    let gamma = system.gamma.iter().map(|&v| v as usize).collect();
    let nu = Rational::new(1.into(), num_bigint::BigInt::from(system.base).pow(system.k as u32));
    TwoAlphabetModel::new(kstar, k, j, gamma, DistributionData::Exact(vec![nu; size_star]))
}

/// Tractability of `(X, g)` with the Bernoulli background measure.
pub fn tractability_report_shiftlike(system: &ShiftLikeSystem) -> Result<TractabilityReport> {
    let model = two_alphabet_model(system)?;
    let corr = model.basic_set_correspondence()?;
    let (cover, _) = model.induced_covers()?;
    let decay = markov::transient_decay(&cover, &corr.g_decomp)?;
    let mut report = TractabilityReport::from_decomposition("shiftlike", &corr.g, &corr.g_decomp);
    report.decay = DecayEntry::from(decay);
    let cylinder_scale = Rational::from_integer(num_bigint::BigInt::from(system.base).pow(system.n as u32));
    for pair in corr.terminal_pairs() {
        let v = corr.stationary_exact(&model, pair)?;
        if !two_alphabet::stationary_identity_holds_exact(&model, pair, &v) {
            return Err(Error::Numerical(format!(
                "stationary identity fails for class {}",
                pair.g_class
            )));
        }
        let class = corr.g_decomp.class_labels(&corr.g, pair.g_class);
        report.stationary.push(exact_entry(&corr.g, class.clone(), &pair.b, &v));
        report.measures.push(MeasureDescriptor {
            class,
            support: Vec::new(),
            support_cylinders: pair.bstar.iter().map(|&t| model.kstar()[t].clone()).collect(),
            density: pair
                .b
                .iter()
                .filter(|&&s| !v[s].is_zero())
                .map(|&s| DensityEntry {
                    interval: None,
                    cylinder: Some(model.k()[s].clone()),
                    weight: rational::format(&v[s]),
                    density: Some(rational::format(&(v[s].clone() * cylinder_scale.clone()))),
                })
                .collect(),
        });
    }
    report.trac = TracStatus::for_decomposition(
        &corr.g_decomp,
        "ergodic measures λ_B = Σ v_B(s) λ_s, one per terminal class",
    );
    report.notes.push(format!(
        "H_γ conjugates (K*_G*, S) to (X, g); basic-set counts transfer exactly (N = {}, n = {}, k = {})",
        system.base, system.n, system.k
    ));
    Ok(report)
}

pub(crate) fn exact_entry(
    g: &crate::relation::FiniteRelation,
    class: Vec<String>,
    members: &[usize],
    v: &[Rational],
) -> StationaryEntry {
    StationaryEntry {
        class,
        weights: members
            .iter()
            .map(|&s| WeightEntry {
                element: g.label(s).to_string(),
                value: rational::to_f64(&v[s]),
                exact: Some(rational::format(&v[s])),
            })
            .collect(),
    }
}

/// Exact `(1/N^k) Σ_{s*∈B*∩γ⁻¹(s₂)} v_B(J(s*)) = v_B(s₂)` for every terminal class.
pub fn stationary_identity_holds(system: &ShiftLikeSystem) -> Result<bool> {
    let model = two_alphabet_model(system)?;
    let corr = model.basic_set_correspondence()?;
    for pair in corr.terminal_pairs() {
        let v = corr.stationary_exact(&model, pair)?;
        let sum: Rational = pair.b.iter().map(|&s| v[s].clone()).sum();
        if !sum.is_one() || !two_alphabet::stationary_identity_holds_exact(&model, pair, &v) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Floating cover `Γ` of `G` under `ν ≡ 1/N^k`.
pub fn induced_cover(system: &ShiftLikeSystem) -> Result<StochasticCover> {
    Ok(two_alphabet_model(system)?.induced_covers()?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn w(text: &str) -> Word {
        Word::parse(2, text).unwrap()
    }

    fn shift_system() -> ShiftLikeSystem {
        derive_gamma(&SlidingBlockCode::shift(2), 1).unwrap()
    }

    fn identity_system() -> ShiftLikeSystem {
        derive_gamma(&SlidingBlockCode::identity(2), 1).unwrap()
    }

    #[test]
    fn word_roundtrip() {
        let x = w("0110");
        assert_eq!(x.index(), Some(6));
        assert_eq!(Word::from_index(2, 4, 6), x);
        assert_eq!(x.to_string(), "0110");
        let big = Word::new(12, vec![11, 0, 3]).unwrap();
        assert_eq!(big.to_string(), "11.0.3");
        assert_eq!(Word::parse(12, "11.0.3").unwrap(), big);
        assert!(Word::new(2, vec![2]).is_err());
        let (a, b, c) = (w("01"), w("1"), w("110"));
        assert_eq!(a.concat(&b).concat(&c), a.concat(&b.concat(&c)));
    }

    #[test]
    fn derive_examples() {
        let id = identity_system();
        assert_eq!((id.n(), id.k()), (1, 1));
        for (s, img) in [("00", "0"), ("10", "1"), ("01", "0"), ("11", "1")] {
            assert_eq!(id.gamma_word(&w(s)), w(img));
        }
        let sh = shift_system();
        for (s, img) in [("00", "0"), ("10", "0"), ("01", "1"), ("11", "1")] {
            assert_eq!(sh.gamma_word(&w(s)), w(img));
        }
        let mut rng = SplitMix64::new(3);
        for _ in 0..20 {
            let x = Word::random(2, 8, &mut rng);
            assert_eq!(apply_g(&sh, &x).unwrap(), x.drop_front(1));
        }
    }

    #[test]
    fn derived_agrees_with_code() {
        let mut rng = SplitMix64::new(11);
        for m in 1..=3 {
            let code = SlidingBlockCode::random(2, m, &mut rng);
            for n in 1..=3 {
                let sys = derive_gamma(&code, n).unwrap();
                let len = n + sys.k() + m;
                for _ in 0..100 {
                    let x = Word::random(2, len, &mut rng);
                    let fx = code.apply(&x).unwrap();
                    assert_eq!(fx.prefix(n), apply_g(&sys, &x).unwrap().prefix(n));
                }
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let err = derive_gamma_with_cap(&SlidingBlockCode::shift(2), 10, 1 << 10).unwrap_err();
        assert_eq!(
            err,
            Error::CapExceeded {
                required: 1 << 11,
                allowed: 1 << 10
            }
        );
    }

    #[test]
    fn apply_examples() {
        assert_eq!(apply_g(&shift_system(), &w("0110")).unwrap(), w("110"));
        assert_eq!(apply_g(&identity_system(), &w("0110")).unwrap(), w("010"));
        assert_eq!(
            apply_g(&shift_system(), &w("0")),
            Err(Error::PrefixTooShort { required: 2, found: 1 })
        );
    }

    #[test]
    fn coding_examples() {
        let sh = shift_system();
        let seq = sh.code_r(&w("01010"), 3).unwrap();
        assert_eq!(seq, vec![w("01"), w("10"), w("01"), w("10")]);
        assert_eq!(
            sh.code_r(&w("0101"), 3),
            Err(Error::PrefixTooShort { required: 5, found: 4 })
        );
        let id = identity_system();
        assert_eq!(id.code_r(&w("0000"), 2).unwrap(), vec![w("00"); 3]);
        let seq = id.code_r(&w("1100"), 2).unwrap();
        assert_eq!(seq, vec![w("11"), w("10"), w("10")]);
        for pair in seq.windows(2) {
            assert!(id.in_gstar(&pair[0], &pair[1]));
        }
        let code = SlidingBlockCode::shift(2);
        assert_eq!(code_r(&code, 2, &w("01010"), 3).unwrap(), sh.code_r(&w("01010"), 3).unwrap());
    }

    #[test]
    fn decode_examples() {
        let sh = shift_system();
        assert_eq!(decode_h(&sh, &[w("01"), w("10"), w("01")]).unwrap(), w("0101"));
        assert_eq!(decode_h(&sh, &[w("01"), w("01")]), Err(Error::NotAWord(0)));
        let id = identity_system();
        assert_eq!(decode_h(&id, &vec![w("10"); 4]).unwrap(), w("10000"));
    }

    #[test]
    fn shadow_examples() {
        let code = SlidingBlockCode::shift(2);
        let sys = derive_gamma(&code, 2).unwrap();
        let mut rng = SplitMix64::new(5);
        let x = Word::random(2, 3 + 10, &mut rng);
        let y = shadow_q(&code, &sys, &x, 10).unwrap();
        assert_eq!(sys.code_r(&y, 10).unwrap(), code_r(&code, 3, &x, 10).unwrap());

        let id = SlidingBlockCode::identity(2);
        let sys = derive_gamma(&id, 1).unwrap();
        let x = w("1011");
        let y = shadow_q(&id, &sys, &x, 2).unwrap();
        assert_eq!(y.prefix(2), x.prefix(2));

        let wrong = derive_gamma(&SlidingBlockCode::shift(2), 1).unwrap();
        assert!(shadow_q(&id, &wrong, &w("1011"), 2).is_err());
    }

    #[test]
    fn bernoulli_examples() {
        assert_eq!(bernoulli_cylinder(2, &w("01")), ratio(1, 4));
        assert_eq!(bernoulli_cylinder(2, &w("")), ratio(1, 1));
        let x = w("011");
        let sum: Rational = (0..2u8)
            .map(|a| bernoulli_cylinder(2, &x.concat(&Word::new(2, vec![a]).unwrap())))
            .sum();
        assert_eq!(sum, bernoulli_cylinder(2, &x));
    }

    #[test]
    fn report_full_shift() {
        let r = tractability_report_shiftlike(&shift_system()).unwrap();
        assert_eq!(r.basic_sets.len(), 1);
        assert_eq!(r.terminal, vec![vec!["0".to_string(), "1".to_string()]]);
        let exact: Vec<_> = r.stationary[0].weights.iter().map(|e| e.exact.clone().unwrap()).collect();
        assert_eq!(exact, vec!["1/2", "1/2"]);
        assert!(stationary_identity_holds(&shift_system()).unwrap());
    }

    #[test]
    fn report_identity() {
        let model = two_alphabet_model(&identity_system()).unwrap();
        let corr = model.basic_set_correspondence().unwrap();
        let scc = corr.gstar.strongly_connected_components();
        assert_eq!(corr.pairs.len(), 2);
        for pair in &corr.pairs {
            assert!(scc.contains(&pair.bstar));
        }
        let labels: Vec<Vec<&str>> = corr
            .pairs
            .iter()
            .map(|p| p.bstar.iter().map(|&t| model.kstar()[t].as_str()).collect())
            .collect();
        assert_eq!(labels, vec![vec!["00", "01"], vec!["10", "11"]]);
    }

    #[test]
    fn report_constant() {
        let sys = ShiftLikeSystem::new(2, 1, 1, vec![0; 4]).unwrap();
        let r = tractability_report_shiftlike(&sys).unwrap();
        assert_eq!(r.terminal, vec![vec!["0".to_string()]]);
        assert_eq!(r.transient, vec!["1".to_string()]);
        assert_eq!(r.measures[0].support_cylinders, vec!["00", "01"]);
        assert_eq!(r.measures[0].density[0].weight, "1");
        assert_eq!(r.measures[0].density[0].cylinder.as_deref(), Some("0"));
    }

    #[test]
    fn report_is_deterministic() {
        let sys = derive_gamma(&SlidingBlockCode::random(2, 3, &mut SplitMix64::new(9)), 2).unwrap();
        let a = tractability_report_shiftlike(&sys).unwrap().to_json();
        let b = tractability_report_shiftlike(&sys.clone()).unwrap().to_json();
        assert_eq!(a, b);
    }
}
