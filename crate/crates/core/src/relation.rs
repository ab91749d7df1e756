//! Finite relations and their recurrence structure.
//!
//! A [`FiniteRelation`] is a directed graph on labelled elements. On a finite
//! set the orbit relation and the chain relation coincide with the
//! transitive closure, so basic sets are the strongly connected components
//! that carry at least one cycle.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteRelation {
    elements: Vec<String>,
    succ: Vec<Vec<usize>>,
}

impl FiniteRelation {
    /// Builds a relation from element labels and index pairs.
    ///
    /// Labels must be pairwise distinct, indices in range, and no edge may be
    /// listed twice.
    pub fn new<I>(elements: Vec<String>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut seen = BTreeSet::new();
        for label in &elements {
            if !seen.insert(label.as_str()) {
                return Err(Error::InvalidRelation(format!("duplicate label `{label}`")));
            }
        }
        let n = elements.len();
        let mut succ = vec![Vec::new(); n];
        let mut edge_set = BTreeSet::new();
        for (i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::InvalidRelation(format!(
                    "edge ({i}, {j}) out of range for {n} elements"
                )));
            }
            if !edge_set.insert((i, j)) {
                return Err(Error::InvalidRelation(format!(
                    "duplicate edge ({}, {})",
                    elements[i], elements[j]
                )));
            }
            succ[i].push(j);
        }
        for s in &mut succ {
            s.sort_unstable();
        }
        Ok(FiniteRelation { elements, succ })
    }

    /// Builds a relation from label pairs, rejecting unknown labels.
    pub fn from_labels<S: AsRef<str>>(elements: &[S], edges: &[(S, S)]) -> Result<Self> {
        let elements: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let index: HashMap<&str, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let lookup = |s: &S| {
            index
                .get(s.as_ref())
                .copied()
                .ok_or_else(|| Error::InvalidRelation(format!("unknown label `{}`", s.as_ref())))
        };
        let pairs = edges
            .iter()
            .map(|(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        FiniteRelation::new(elements.clone(), pairs)
    }

    /// Internal constructor for successor lists that are already sorted and
    /// duplicate free.
    pub(crate) fn from_successors(elements: Vec<String>, succ: Vec<Vec<usize>>) -> Self {
        debug_assert!(succ.iter().all(|s| s.windows(2).all(|w| w[0] < w[1])));
        FiniteRelation { elements, succ }
    }

    pub fn identity(elements: Vec<String>) -> Self {
        let succ = (0..elements.len()).map(|i| vec![i]).collect();
        FiniteRelation { elements, succ }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn label(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == label)
    }

    pub fn successors(&self, i: usize) -> &[usize] {
        &self.succ[i]
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.succ[i].binary_search(&j).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.iter().map(move |&j| (i, j)))
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    /// `Dom(G) = K`: every element has an outgoing edge.
    pub fn has_full_domain(&self) -> bool {
        self.succ.iter().all(|s| !s.is_empty())
    }

    /// True when consecutive entries of `word` are edges.
    pub fn is_word(&self, word: &[usize]) -> bool {
        self.first_gap(word).is_none()
    }

    fn first_gap(&self, word: &[usize]) -> Option<usize> {
        if word.iter().any(|&s| s >= self.len()) {
            return Some(0);
        }
        word.windows(2).position(|w| !self.contains(w[0], w[1]))
    }

    pub(crate) fn check_word(&self, word: &[usize]) -> Result<()> {
        match self.first_gap(word) {
            Some(p) => Err(Error::NotAWord(p)),
            None => Ok(()),
        }
    }

    /// Composition in application order: `self` first, then `then`.
    ///
    /// The result is `then ∘ self`, i.e. `(i, k)` whenever `(i, j) ∈ self` and
    /// `(j, k) ∈ then` for some `j`.
    pub fn compose(&self, then: &FiniteRelation) -> Result<FiniteRelation> {
        if self.elements != then.elements {
            return Err(Error::ElementMismatch);
        }
        let succ = self
            .succ
            .iter()
            .map(|mid| {
                let set: BTreeSet<usize> =
                    mid.iter().flat_map(|&j| then.succ[j].iter().copied()).collect();
                set.into_iter().collect()
            })
            .collect();
        Ok(FiniteRelation::from_successors(self.elements.clone(), succ))
    }

    pub fn inverse(&self) -> FiniteRelation {
        let mut succ = vec![Vec::new(); self.len()];
        for (i, j) in self.edges() {
            succ[j].push(i);
        }
        for s in &mut succ {
            s.sort_unstable();
        }
        FiniteRelation::from_successors(self.elements.clone(), succ)
    }

    /// Transitive closure `⋃_{n ≥ 1} Gⁿ`.
    pub fn orbit_closure(&self) -> FiniteRelation {
        let n = self.len();
        let succ = (0..n)
            .map(|start| {
                let mut seen = vec![false; n];
                let mut stack: Vec<usize> = self.succ[start].clone();
                while let Some(v) = stack.pop() {
                    if !seen[v] {
                        seen[v] = true;
                        stack.extend(self.succ[v].iter().copied().filter(|&w| !seen[w]));
                    }
                }
                (0..n).filter(|&v| seen[v]).collect()
            })
            .collect();
        FiniteRelation::from_successors(self.elements.clone(), succ)
    }

    /// Induced relation on `keep` (sorted indices), relabelled in that order.
    pub fn restrict(&self, keep: &[usize]) -> FiniteRelation {
        let mut new_index = vec![usize::MAX; self.len()];
        for (k, &i) in keep.iter().enumerate() {
            new_index[i] = k;
        }
        let elements = keep.iter().map(|&i| self.elements[i].clone()).collect();
        let succ = keep
            .iter()
            .map(|&i| {
                self.succ[i]
                    .iter()
                    .filter_map(|&j| (new_index[j] != usize::MAX).then_some(new_index[j]))
                    .collect()
            })
            .collect();
        FiniteRelation::from_successors(elements, succ)
    }

    /// Repeatedly discards elements without an outgoing edge.
    ///
    /// Returns the restricted relation and the kept indices (ascending). The
    /// kept set is the largest subset on which every element has a successor
    /// inside the subset; it is empty exactly when the relation has no cycle.
    pub fn restrict_to_infinite_domain(&self) -> (FiniteRelation, Vec<usize>) {
        let n = self.len();
        let pred = self.inverse();
        let mut alive = vec![true; n];
        let mut out_deg: Vec<usize> = self.succ.iter().map(Vec::len).collect();
        let mut queue: Vec<usize> = (0..n).filter(|&i| out_deg[i] == 0).collect();
        while let Some(v) = queue.pop() {
            if !alive[v] {
                continue;
            }
            alive[v] = false;
            for &p in pred.successors(v) {
                if alive[p] {
                    out_deg[p] -= 1;
                    if out_deg[p] == 0 {
                        queue.push(p);
                    }
                }
            }
        }
        let kept: Vec<usize> = (0..n).filter(|&i| alive[i]).collect();
        (self.restrict(&kept), kept)
    }

    /// Strongly connected components, each sorted, listed by smallest member.
    pub fn strongly_connected_components(&self) -> Vec<Vec<usize>> {
        let mut comps = tarjan(&self.succ);
        for c in &mut comps {
            c.sort_unstable();
        }
        comps.sort_unstable_by_key(|c| c[0]);
        comps
    }

    /// Basic-set decomposition; requires `Dom(G) = K`.
    pub fn basic_sets(&self) -> Result<BasicSetDecomposition> {
        if self.is_empty() {
            return Err(Error::EmptyDomain);
        }
        if let Some(i) = self.succ.iter().position(Vec::is_empty) {
            return Err(Error::DomainViolation(self.elements[i].clone()));
        }
        let comps = self.strongly_connected_components();
        let n = self.len();
        let mut comp_of = vec![0usize; n];
        for (c, members) in comps.iter().enumerate() {
            for &v in members {
                comp_of[v] = c;
            }
        }
        let recurrent: Vec<bool> = comps
            .iter()
            .map(|m| m.len() > 1 || self.contains(m[0], m[0]))
            .collect();

        let classes: Vec<Vec<usize>> = comps
            .iter()
            .zip(&recurrent)
            .filter(|(_, &r)| r)
            .map(|(m, _)| m.clone())
            .collect();
        let mut class_of = vec![None; n];
        for (c, members) in classes.iter().enumerate() {
            for &v in members {
                class_of[v] = Some(c);
            }
        }
        let terminal: Vec<bool> = classes
            .iter()
            .map(|members| {
                members
                    .iter()
                    .all(|&v| self.succ[v].iter().all(|&w| class_of[w] == class_of[v]))
            })
            .collect();

        // Condensation reachability between classes, through any elements.
        let mut order = BTreeSet::new();
        for (a, members) in classes.iter().enumerate() {
            let mut seen = vec![false; comps.len()];
            let mut stack = vec![comp_of[members[0]]];
            seen[comp_of[members[0]]] = true;
            while let Some(c) = stack.pop() {
                for &v in &comps[c] {
                    for &w in &self.succ[v] {
                        let cw = comp_of[w];
                        if !seen[cw] {
                            seen[cw] = true;
                            stack.push(cw);
                        }
                    }
                }
            }
            for (b, other) in classes.iter().enumerate() {
                if b != a && seen[comp_of[other[0]]] {
                    order.insert((a, b));
                }
            }
        }

        let transient = (0..n)
            .filter(|&v| !class_of[v].is_some_and(|c| terminal[c]))
            .collect();
        Ok(BasicSetDecomposition {
            classes,
            terminal,
            transient,
            order,
            class_of,
        })
    }
}

/// Iterative Tarjan, safe for large graphs.
fn tarjan(succ: &[Vec<usize>]) -> Vec<Vec<usize>> {
    const UNSEEN: usize = usize::MAX;
    let n = succ.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut next = 0usize;
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        while let Some(top) = call.last_mut() {
            let v = top.0;
            if top.1 == 0 && index[v] == UNSEEN {
                index[v] = next;
                low[v] = next;
                next += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if let Some(&w) = succ[v].get(top.1) {
                top.1 += 1;
                if index[w] == UNSEEN {
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comps.push(comp);
            }
        }
    }
    comps
}

/// Basic sets of a relation with full domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicSetDecomposition {
    classes: Vec<Vec<usize>>,
    terminal: Vec<bool>,
    transient: Vec<usize>,
    order: BTreeSet<(usize, usize)>,
    class_of: Vec<Option<usize>>,
}

impl BasicSetDecomposition {
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class(&self, c: usize) -> &[usize] {
        &self.classes[c]
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn is_terminal(&self, c: usize) -> bool {
        self.terminal[c]
    }

    pub fn terminal_flags(&self) -> &[bool] {
        &self.terminal
    }

    pub fn terminal_classes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.classes.len()).filter(|&c| self.terminal[c])
    }

    /// Elements outside every terminal class.
    pub fn transient(&self) -> &[usize] {
        &self.transient
    }

    pub fn is_transient(&self, v: usize) -> bool {
        !self.class_of[v].is_some_and(|c| self.terminal[c])
    }

    /// Pairs `(a, b)` with class `b` reachable from class `a`, `a != b`.
    pub fn order(&self) -> &BTreeSet<(usize, usize)> {
        &self.order
    }

    pub fn class_of(&self, v: usize) -> Option<usize> {
        self.class_of[v]
    }

    /// Terminal class that every infinite extension of `word` ends in, if the
    /// last symbol already lies in one.
    pub fn endset_certificate(&self, g: &FiniteRelation, word: &[usize]) -> Result<Option<usize>> {
        g.check_word(word)?;
        Ok(word
            .last()
            .and_then(|&v| self.class_of[v])
            .filter(|&c| self.terminal[c]))
    }

    /// First index of `path` lying in a terminal class.
    pub fn entry_time(&self, path: &[usize]) -> Option<usize> {
        path.iter().position(|&v| !self.is_transient(v))
    }

    pub fn class_labels(&self, g: &FiniteRelation, c: usize) -> Vec<String> {
        self.classes[c].iter().map(|&v| g.label(v).to_string()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(labels: &[&str], edges: &[(&str, &str)]) -> FiniteRelation {
        FiniteRelation::from_labels(labels, edges).unwrap()
    }

    fn example_b() -> FiniteRelation {
        rel(
            &["I1", "I2", "I3"],
            &[("I1", "I1"), ("I2", "I2"), ("I2", "I3"), ("I3", "I3")],
        )
    }

    #[test]
    fn rejects_bad_input() {
        assert!(FiniteRelation::new(vec!["a".into(), "a".into()], []).is_err());
        assert!(FiniteRelation::new(vec!["a".into()], [(0, 1)]).is_err());
        assert!(FiniteRelation::new(vec!["a".into()], [(0, 0), (0, 0)]).is_err());
        assert!(FiniteRelation::from_labels(&["a"], &[("a", "b")]).is_err());
    }

    #[test]
    fn compose_examples() {
        let id = FiniteRelation::identity(vec!["a".into(), "b".into()]);
        let s = rel(&["a", "b"], &[("a", "b"), ("b", "b")]);
        assert_eq!(id.compose(&s).unwrap(), s);
        let r = rel(&["a", "b", "c"], &[("a", "b")]);
        let s = rel(&["a", "b", "c"], &[("b", "c")]);
        assert_eq!(r.compose(&s).unwrap(), rel(&["a", "b", "c"], &[("a", "c")]));
        let other = rel(&["x", "y"], &[]);
        assert_eq!(id.compose(&other), Err(Error::ElementMismatch));
    }

    #[test]
    fn inverse_examples() {
        let r = rel(&["a", "b"], &[("a", "b")]);
        assert_eq!(r.inverse(), rel(&["a", "b"], &[("b", "a")]));
        let sym = rel(&["a", "b"], &[("a", "b"), ("b", "a")]);
        assert_eq!(sym.inverse(), sym);
    }

    #[test]
    fn closure_examples() {
        let chain = rel(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        assert_eq!(
            chain.orbit_closure(),
            rel(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")])
        );
        let cycle = rel(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "a")]);
        let closed = cycle.orbit_closure();
        for i in 0..3 {
            for j in 0..3 {
                assert!(closed.contains(i, j));
            }
            assert!(!closed.contains(i, 3));
        }
        let b = example_b();
        let cb = b.orbit_closure();
        assert_eq!(cb.edge_count(), 4);
        assert!(cb.contains(1, 2));
    }

    #[test]
    fn restrict_examples() {
        let g = rel(&["a", "b"], &[("a", "a"), ("b", "a")]);
        let (r, kept) = g.restrict_to_infinite_domain();
        assert_eq!(kept, vec![0, 1]);
        assert_eq!(r, g);
        let acyclic = rel(&["a", "b"], &[("a", "b")]);
        let (r, kept) = acyclic.restrict_to_infinite_domain();
        assert!(kept.is_empty() && r.is_empty());
        assert_eq!(r.basic_sets(), Err(Error::EmptyDomain));
    }

    #[test]
    fn basic_sets_example_b() {
        let d = example_b().basic_sets().unwrap();
        assert_eq!(d.classes(), &[vec![0], vec![1], vec![2]]);
        assert_eq!(d.terminal_flags(), &[true, false, true]);
        assert_eq!(d.transient(), &[1]);
        assert_eq!(d.order().iter().copied().collect::<Vec<_>>(), vec![(1, 2)]);
    }

    #[test]
    fn basic_sets_example_a() {
        let g = rel(&["I1", "I2"], &[("I1", "I1"), ("I2", "I2")]);
        let d = g.basic_sets().unwrap();
        assert_eq!(d.len(), 2);
        assert!(d.terminal_flags().iter().all(|&t| t));
        assert!(d.transient().is_empty());
    }

    #[test]
    fn singleton_without_loop_is_not_a_class() {
        let g = rel(&["a", "b"], &[("a", "b"), ("b", "b")]);
        let d = g.basic_sets().unwrap();
        assert_eq!(d.classes(), &[vec![1]]);
        assert_eq!(d.class_of(0), None);
        assert_eq!(d.transient(), &[0]);
    }

    #[test]
    fn domain_violation() {
        let g = rel(&["a", "b"], &[("a", "b")]);
        assert_eq!(g.basic_sets(), Err(Error::DomainViolation("b".into())));
    }

    #[test]
    fn endset_examples() {
        let g = example_b();
        let d = g.basic_sets().unwrap();
        assert_eq!(d.endset_certificate(&g, &[1, 2]).unwrap(), Some(2));
        assert_eq!(d.endset_certificate(&g, &[1, 1]).unwrap(), None);
        assert_eq!(d.endset_certificate(&g, &[2, 1]), Err(Error::NotAWord(0)));
    }

    #[test]
    fn tarjan_handles_long_chain() {
        let n = 200_000;
        let edges = (0..n).map(|i| (i, (i + 1) % n));
        let g = FiniteRelation::new((0..n).map(|i| i.to_string()).collect(), edges).unwrap();
        let d = g.basic_sets().unwrap();
        assert_eq!(d.len(), 1);
        assert!(d.is_terminal(0));
    }
}
