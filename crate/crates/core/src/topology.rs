//! Kernel and co-kernel states.
//!
//! A state is a kernel state when infinitely many trees reach it, and a
//! co-kernel state when infinitely many contexts accept from it. Both are
//! decided by strongly connected components of the graph with an edge from
//! every child slot of a stored entry to the entry's target.

use std::collections::VecDeque;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::automaton::Wdta;
use crate::error::AutomatonError;
use crate::semifield::Semifield;
use crate::terms::StateId;

/// The four state sets, as membership vectors over `Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateClassification {
    pub kernel: Vec<bool>,
    pub cokernel: Vec<bool>,
}

impl StateClassification {
    pub fn compute<W: Semifield>(a: &Wdta<W>) -> Result<Self, AutomatonError> {
        let kernel = kernel_states(a)?;
        let cokernel = cokernel_with_kernel(a, &kernel);
        Ok(StateClassification { kernel, cokernel })
    }

    pub fn preamble(&self) -> Vec<bool> {
        self.kernel.iter().map(|&k| !k).collect()
    }

    pub fn copreamble(&self) -> Vec<bool> {
        self.cokernel.iter().map(|&k| !k).collect()
    }
}

pub(crate) fn require_trimmed<W: Semifield>(a: &Wdta<W>) -> Result<(), AutomatonError> {
    let reached = a.reachable();
    match a.state_ids().find(|&q| !reached[q]) {
        Some(q) => Err(AutomatonError::NotTrimmed(a.state_name(q).to_string())),
        None => Ok(()),
    }
}

/// The child-to-target graph of the stored entries, with `heavy[e]` set when
/// the edge's entry has a kernel state in some other child slot.
fn slot_graph<W: Semifield>(
    a: &Wdta<W>,
    kernel: Option<&[bool]>,
) -> (DiGraph<(), ()>, Vec<(StateId, StateId, bool)>) {
    let n = a.num_states();
    let mut g = DiGraph::<(), ()>::with_capacity(n, a.stored_len());
    for _ in 0..n {
        g.add_node(());
    }
    let mut edges = Vec::new();
    for (lhs, rule) in a.rules() {
        for (i, &child) in lhs.children.iter().enumerate() {
            let heavy = kernel.is_some_and(|k| {
                lhs.children
                    .iter()
                    .enumerate()
                    .any(|(j, &other)| j != i && k[other])
            });
            edges.push((child, rule.target, heavy));
        }
    }
    if let Some(sink) = a.sink() {
        if a.alphabet().max_rank() > 0 {
            edges.push((sink, sink, false));
        }
    }
    for &(u, v, _) in &edges {
        g.add_edge(NodeIndex::new(u), NodeIndex::new(v), ());
    }
    (g, edges)
}

/// States lying on a cycle: in a nontrivial component or with a self-loop.
fn on_cycle(g: &DiGraph<(), ()>, edges: &[(StateId, StateId, bool)]) -> Vec<bool> {
    let mut cyclic = vec![false; g.node_count()];
    for component in tarjan_scc(g) {
        if component.len() > 1 {
            for v in component {
                cyclic[v.index()] = true;
            }
        }
    }
    for &(u, v, _) in edges {
        if u == v {
            cyclic[u] = true;
        }
    }
    cyclic
}

fn closure(n: usize, seeds: &[bool], adjacency: &[Vec<StateId>]) -> Vec<bool> {
    let mut seen = seeds.to_vec();
    let mut queue: VecDeque<StateId> = (0..n).filter(|&q| seeds[q]).collect();
    while let Some(u) = queue.pop_front() {
        for &v in &adjacency[u] {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen
}

/// States reached by infinitely many trees: those reachable from a cycle.
pub fn kernel_states<W: Semifield>(a: &Wdta<W>) -> Result<Vec<bool>, AutomatonError> {
    require_trimmed(a)?;
    let n = a.num_states();
    let (g, edges) = slot_graph(a, None);
    let cyclic = on_cycle(&g, &edges);
    let mut forward = vec![Vec::new(); n];
    for &(u, v, _) in &edges {
        forward[u].push(v);
    }
    Ok(closure(n, &cyclic, &forward))
}

/// States with infinite context-language support.
pub fn cokernel_states<W: Semifield>(a: &Wdta<W>) -> Result<Vec<bool>, AutomatonError> {
    let kernel = kernel_states(a)?;
    Ok(cokernel_with_kernel(a, &kernel))
}

/// Accepting contexts from `q` are unbounded either in hole depth (a path to
/// `F` through a cycle) or in side subtrees (a path to `F` through an entry
/// with a kernel state in another slot). Both give a seed; every state that
/// reaches a seed is co-kernel.
fn cokernel_with_kernel<W: Semifield>(a: &Wdta<W>, kernel: &[bool]) -> Vec<bool> {
    let n = a.num_states();
    let (g, edges) = slot_graph(a, Some(kernel));
    let cyclic = on_cycle(&g, &edges);
    let mut backward = vec![Vec::new(); n];
    for &(u, v, _) in &edges {
        backward[v].push(u);
    }
    let finals: Vec<bool> = a.state_ids().map(|q| a.is_final(q)).collect();
    let coreach = closure(n, &finals, &backward);
    let mut seeds: Vec<bool> = (0..n).map(|q| coreach[q] && cyclic[q]).collect();
    for &(u, v, heavy) in &edges {
        if heavy && coreach[v] {
            seeds[u] = true;
        }
    }
    closure(n, &seeds, &backward)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::a_ex;
    use crate::semifield::Rational;
    use crate::terms::RankedAlphabet;

    #[test]
    fn fixture_sets() {
        let c = StateClassification::compute(&a_ex()).unwrap();
        assert_eq!(c.kernel, vec![false, false, true, true]);
        assert_eq!(c.cokernel, vec![true, true, true, false]);
    }

    #[test]
    fn nullary_only_has_empty_kernel() {
        let sigma = RankedAlphabet::from_symbols([("a", 0), ("b", 0)]).unwrap();
        let mut a: Wdta<Rational> = Wdta::new(sigma);
        let p = a.add_state("p");
        let q = a.add_state("q");
        a.set_final(p, true);
        a.set_rule(0, vec![], p, Rational::integer(1));
        a.set_rule(1, vec![], q, Rational::integer(1));
        assert_eq!(kernel_states(&a).unwrap(), vec![false, false]);
        assert_eq!(cokernel_states(&a).unwrap(), vec![false, false]);
    }

    #[test]
    fn looping_final_state_is_cokernel() {
        let sigma = RankedAlphabet::from_symbols([("a", 0), ("g", 1)]).unwrap();
        let mut a: Wdta<Rational> = Wdta::new(sigma);
        let p = a.add_state("p");
        a.set_final(p, true);
        a.set_rule(0, vec![], p, Rational::integer(1));
        a.set_rule(1, vec![p], p, Rational::integer(1));
        assert_eq!(cokernel_states(&a).unwrap(), vec![true]);
        a.set_final(p, false);
        assert_eq!(cokernel_states(&a).unwrap(), vec![false]);
    }

    #[test]
    fn kernel_side_child_makes_cokernel() {
        // x is used once next to the looping k; contexts σ(□, t) with t
        // reaching k are infinitely many, though x lies on no cycle.
        let sigma = RankedAlphabet::from_symbols([("a", 0), ("b", 0), ("g", 1), ("s", 2)]).unwrap();
        let mut a: Wdta<Rational> = Wdta::new(sigma);
        let x = a.add_state("x");
        let k = a.add_state("k");
        let f = a.add_state("f");
        let bot = a.add_state("bot");
        a.set_sink(Some(bot));
        a.set_final(f, true);
        a.set_rule(0, vec![], x, Rational::integer(1));
        a.set_rule(1, vec![], k, Rational::integer(1));
        a.set_rule(2, vec![k], k, Rational::integer(1));
        a.set_rule(3, vec![x, k], f, Rational::integer(1));
        let c = StateClassification::compute(&a).unwrap();
        assert_eq!(c.kernel, vec![false, true, true, true]);
        assert_eq!(c.cokernel, vec![true, true, false, false]);
    }

    #[test]
    fn untrimmed_input_is_rejected() {
        let mut a = a_ex();
        a.add_state("x");
        assert_eq!(
            kernel_states(&a),
            Err(AutomatonError::NotTrimmed("x".into()))
        );
    }
}
