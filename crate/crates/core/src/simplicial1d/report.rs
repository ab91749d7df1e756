//! Tractability report for a simplicial interval system with Lebesgue
//! distribution data.

use std::collections::BTreeSet;

use num_traits::Zero;

use super::complex::IntervalComplex;
use super::system::SimplicialSystem1D;
use crate::error::{Error, Result};
use crate::markov::{self, Distribution};
use crate::rational;
use crate::report::{Caveat, DecayEntry, DensityEntry, MeasureDescriptor, TracStatus, TractabilityReport};
use crate::shiftlike::exact_entry;
use crate::two_alphabet;

/// Merges consecutive `K` edges of a sorted class into maximal intervals.
fn support_intervals(k: &IntervalComplex, class: &[usize]) -> Vec<[String; 2]> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &s in class {
        match out.last_mut() {
            Some(last) if last.1 + 1 == s => last.1 = s,
            _ => out.push((s, s)),
        }
    }
    out.into_iter()
        .map(|(a, b)| [rational::format(k.edge(a).0), rational::format(k.edge(b).1)])
        .collect()
}

/// Tractability of `(X(K), g)` with background measure `Σ v0(s) λ_s`.
pub fn tractability_report_pl(system: &SimplicialSystem1D, v0: &Distribution) -> Result<TractabilityReport> {
    let k = system.k();
    if v0.len() != k.edge_count() || !v0.is_positive() {
        return Err(Error::InvalidDistribution(
            "background distribution must be positive on every K edge".into(),
        ));
    }
    let model = system.model()?;
    let corr = model.basic_set_correspondence()?;
    let (cover, _) = model.induced_covers()?;
    let decay = markov::transient_decay(&cover, &corr.g_decomp)?;
    let mut report = TractabilityReport::from_decomposition("pl", &corr.g, &corr.g_decomp);
    report.decay = DecayEntry::from(decay);
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
            support: support_intervals(k, &pair.b),
            support_cylinders: Vec::new(),
            density: pair
                .b
                .iter()
                .filter(|&&s| !v[s].is_zero())
                .map(|&s| {
                    let (a, b) = k.edge(s);
                    DensityEntry {
                        interval: Some([rational::format(a), rational::format(b)]),
                        cylinder: None,
                        weight: rational::format(&v[s]),
                        density: Some(rational::format(&(&v[s] / k.edge_len(s)))),
                    }
                })
                .collect(),
        });
    }
    report.caveats = boundary_caveats(system, &corr.g_decomp);
    report.trac = TracStatus::for_decomposition(
        &corr.g_decomp,
        "ergodic measures λ_B = Σ v_B(s) λ_s, locally Lebesgue on X(B̄)",
    );
    report.notes.push(format!(
        "θ = {}; basic sets are reported at the level of G; several terminal classes may lie in one g basic set",
        rational::format(&system.theta())
    ));
    Ok(report)
}

/// Boundary phenomena at the endpoints of terminal supports.
///
/// For a terminal class `B` and a `K` edge `e ∉ B` meeting `X(B̄)` at `p`,
/// look at the `K*` edge of `e` ending at `p`. If `g` sends it out of `B`,
/// the `g` basic set through `X(B̄)` reaches past `p`: it may merge with
/// another terminal support (`possible_merge`), or it is visible while a
/// non-terminal class sits next to it (`visible_but_not_terminal`).
fn boundary_caveats(system: &SimplicialSystem1D, decomp: &crate::relation::BasicSetDecomposition) -> Vec<Caveat> {
    let k = system.k();
    let kstar = system.kstar();
    let label = |c: usize| decomp.class(c).iter().map(|&s| IntervalComplex::edge_label(s)).collect::<Vec<_>>();
    let mut seen = BTreeSet::new();
    let mut caveats = Vec::new();
    for c in decomp.terminal_classes() {
        let members = decomp.class(c);
        for &s in members {
            // (neighbouring K edge, shared vertex, K* edge of the neighbour at that vertex)
            let mut sides = Vec::new();
            if s > 0 && !members.contains(&(s - 1)) {
                let star = kstar.vertex_index(k.vertex(s)).expect("K vertex") - 1;
                sides.push((s - 1, s, star));
            }
            if s + 1 < k.edge_count() && !members.contains(&(s + 1)) {
                let star = kstar.vertex_index(k.vertex(s + 1)).expect("K vertex");
                sides.push((s + 1, s + 1, star));
            }
            for (e, p, star) in sides {
                if members.contains(&system.gamma_edge(star)) {
                    continue;
                }
                let other = decomp.class_of(e);
                let (kind, classes, detail) = match other {
                    Some(o) if decomp.is_terminal(o) => {
                        let mut pair = [label(c), label(o)];
                        pair.sort();
                        (
                            "possible_merge",
                            pair.to_vec(),
                            "terminal supports meet here and may lie in one g basic set".to_string(),
                        )
                    }
                    _ => {
                        let neighbour = match other {
                            Some(o) => label(o),
                            None => vec![IntervalComplex::edge_label(e)],
                        };
                        (
                            "visible_but_not_terminal",
                            vec![neighbour.clone(), label(c)],
                            format!(
                                "{} is visible but not terminal; the g basic set containing X(B̄) for {} need not be terminal",
                                neighbour.join(","),
                                label(c).join(",")
                            ),
                        )
                    }
                };
                let point = rational::format(k.vertex(p));
                if seen.insert((kind, classes.clone(), point.clone())) {
                    caveats.push(Caveat {
                        kind: kind.to_string(),
                        classes,
                        point,
                        detail,
                    });
                }
            }
        }
    }
    caveats
}
