//! Hyper-minimization: standardized signatures, the almost-equivalence with
//! its scaling map, and merging of almost-equivalent preamble states.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::automaton::{TransitionContext, Wdta};
use crate::error::AutomatonError;
use crate::minimize::{distance_to_final, minimize, EntryIndex};
use crate::semifield::Semifield;
use crate::terms::{StateId, SymbolId};
use crate::topology::{require_trimmed, StateClassification};

/// `sg(q)`: triples (transition context, target, normalized weight), sorted.
///
/// A context counts when its target is co-kernel, or when it is heavy (a
/// side state is in the kernel, so infinitely many trees realize it) and its
/// target is live. Heavy contexts are compared by their original target:
/// almost-equivalent states must reach the very same state through them.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature<W> {
    pub triples: Vec<(TransitionContext, StateId, W)>,
}

impl<W: Semifield> Signature<W> {
    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// Byte key: equal signatures give equal keys and vice versa.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        let num = |out: &mut Vec<u8>, x: usize| out.extend_from_slice(&(x as u64).to_le_bytes());
        num(&mut out, self.triples.len());
        for (c, target, w) in &self.triples {
            num(&mut out, c.symbol);
            num(&mut out, c.hole);
            num(&mut out, c.sides.len());
            for &s in &c.sides {
                num(&mut out, s);
            }
            num(&mut out, *target);
            let bytes = w.canonical_encode();
            num(&mut out, bytes.len());
            out.extend_from_slice(&bytes);
        }
        out
    }
}

fn build_signature<W: Semifield>(
    mut raw: Vec<(TransitionContext, StateId, W)>,
) -> Result<Signature<W>, AutomatonError> {
    raw.sort_by(|x, y| x.0.cmp(&y.0));
    let Some(first) = raw.first() else {
        return Ok(Signature { triples: raw });
    };
    let inv = first.2.inverse()?;
    let triples = raw
        .into_iter()
        .map(|(c, t, w)| {
            let normalized = w.times(&inv);
            (c, t, normalized)
        })
        .collect();
    Ok(Signature { triples })
}

/// `sg(q)` computed directly from the table of `a`.
pub fn standardized_signature<W: Semifield>(
    a: &Wdta<W>,
    classes: &StateClassification,
    q: StateId,
) -> Result<Signature<W>, AutomatonError> {
    if q >= a.num_states() {
        return Err(AutomatonError::StateOutOfRange(q));
    }
    let live = live_states(a);
    let mut raw = Vec::new();
    for (lhs, rule) in a.rules() {
        for (i, &child) in lhs.children.iter().enumerate() {
            if child == q && counts(classes, &live, &lhs.children, i, rule.target) {
                raw.push((
                    TransitionContext::from_lhs(lhs, i),
                    rule.target,
                    rule.weight.clone(),
                ));
            }
        }
    }
    build_signature(raw)
}

fn live_states<W: Semifield>(a: &Wdta<W>) -> Vec<bool> {
    distance_to_final(a, &EntryIndex::new(a))
        .iter()
        .map(Option::is_some)
        .collect()
}

fn is_heavy(kernel: &[bool], children: &[StateId], hole: usize) -> bool {
    children
        .iter()
        .enumerate()
        .any(|(i, &c)| i != hole && kernel[c])
}

fn counts(
    classes: &StateClassification,
    live: &[bool],
    children: &[StateId],
    hole: usize,
    target: StateId,
) -> bool {
    classes.cokernel[target] || (live[target] && is_heavy(&classes.kernel, children, hole))
}

/// Output of the almost-equivalence computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlmostEquivalence<W> {
    /// Blocks, each sorted, ordered by least member.
    pub blocks: Vec<Vec<StateId>>,
    pub block_of: Vec<usize>,
    /// Per block, the state that survived all merges.
    pub survivor: Vec<StateId>,
    /// `f(q)`: `sem_q = f(q) ⊗ sem_survivor` on almost all contexts.
    pub factor: Vec<W>,
    /// How often each state's block representative changed.
    pub representative_changes: Vec<u32>,
    /// Merges in the order performed: (merged state, survivor, weight).
    pub merges: Vec<(StateId, StateId, W)>,
}

struct Entry<W> {
    symbol: SymbolId,
    children: Vec<StateId>,
    target: StateId,
    weight: W,
    /// Target and weight before any merge, used for heavy contexts.
    original: (StateId, W),
    alive: bool,
}

/// The private mutable automaton that the almost-equivalence loop merges in.
struct WorkingCopy<'a, W> {
    entries: Vec<Entry<W>>,
    /// Entries (with hole position) where the state is a child.
    out: Vec<Vec<(usize, usize)>>,
    /// Entries targeting the state.
    into: Vec<Vec<usize>>,
    alive: Vec<bool>,
    classes: &'a StateClassification,
    live: Vec<bool>,
}

impl<'a, W: Semifield> WorkingCopy<'a, W> {
    fn new(a: &Wdta<W>, classes: &'a StateClassification) -> Self {
        let n = a.num_states();
        let mut entries: Vec<Entry<W>> = a
            .sorted_rules()
            .into_iter()
            .map(|(lhs, rule)| Entry {
                symbol: lhs.symbol,
                children: lhs.children.clone(),
                target: rule.target,
                weight: rule.weight.clone(),
                original: (rule.target, rule.weight.clone()),
                alive: true,
            })
            .collect();
        entries.shrink_to_fit();
        let mut out = vec![Vec::new(); n];
        let mut into = vec![Vec::new(); n];
        for (e, entry) in entries.iter().enumerate() {
            into[entry.target].push(e);
            for (i, &c) in entry.children.iter().enumerate() {
                out[c].push((e, i));
            }
        }
        WorkingCopy {
            entries,
            out,
            into,
            alive: vec![true; n],
            classes,
            live: live_states(a),
        }
    }

    fn context(&self, e: usize, hole: usize) -> TransitionContext {
        let entry = &self.entries[e];
        let mut sides = entry.children.clone();
        sides.remove(hole);
        TransitionContext {
            symbol: entry.symbol,
            hole,
            sides,
        }
    }

    fn heavy(&self, e: usize, hole: usize) -> bool {
        is_heavy(&self.classes.kernel, &self.entries[e].children, hole)
    }

    fn counts(&self, e: usize, hole: usize) -> bool {
        let entry = &self.entries[e];
        entry.alive
            && counts(
                self.classes,
                &self.live,
                &entry.children,
                hole,
                entry.original.0,
            )
    }

    /// Target and weight as they enter the signature.
    fn labelled(&self, e: usize, hole: usize) -> (StateId, &W) {
        let entry = &self.entries[e];
        if self.heavy(e, hole) {
            (entry.original.0, &entry.original.1)
        } else {
            (entry.target, &entry.weight)
        }
    }

    /// The ≤-least counted transition context of `q`.
    fn least_context(&self, q: StateId) -> Option<(usize, usize)> {
        self.out[q]
            .iter()
            .copied()
            .filter(|&(e, h)| self.counts(e, h))
            .min_by(|&(e1, h1), &(e2, h2)| self.context(e1, h1).cmp(&self.context(e2, h2)))
    }

    fn signature(&self, q: StateId) -> Result<Signature<W>, AutomatonError> {
        let raw = self.out[q]
            .iter()
            .filter(|&&(e, h)| self.counts(e, h))
            .map(|&(e, h)| {
                let (target, weight) = self.labelled(e, h);
                (self.context(e, h), target, weight.clone())
            })
            .collect();
        build_signature(raw)
    }

    /// Weight of `c[r]` for the context `c` given as (entry, hole) of another state.
    fn weight_at(&self, (e, hole): (usize, usize), r: StateId) -> Option<W> {
        let ctx = self.context(e, hole);
        let want = ctx.fill(r).children;
        let symbol = self.entries[e].symbol;
        self.out[r]
            .iter()
            .find(|&&(e2, h2)| {
                h2 == hole
                    && self.entries[e2].alive
                    && self.entries[e2].symbol == symbol
                    && self.entries[e2].children == want
            })
            .map(|&(e2, h2)| self.labelled(e2, h2).1.clone())
    }

    /// `merge(loser →ˢ survivor)`. Returns the states whose signature may
    /// have changed: predecessors of `loser` and siblings of `loser` in
    /// entries that now disappear.
    fn merge(&mut self, loser: StateId, s: &W, survivor: StateId) -> Vec<StateId> {
        let mut touched = Vec::new();
        self.alive[loser] = false;
        for (e, _) in std::mem::take(&mut self.out[loser]) {
            if !self.entries[e].alive {
                continue;
            }
            let children = self.entries[e].children.clone();
            for (h, &c) in children.iter().enumerate() {
                if c != loser && self.counts(e, h) {
                    touched.push(c);
                }
            }
            self.entries[e].alive = false;
        }
        let mut moved = std::mem::take(&mut self.into[loser]);
        for &e in &moved {
            let entry = &mut self.entries[e];
            if !entry.alive {
                continue;
            }
            entry.target = survivor;
            entry.weight = s.times(&entry.weight);
            touched.extend(entry.children.iter().copied());
        }
        let into_survivor = &mut self.into[survivor];
        if moved.len() > into_survivor.len() {
            std::mem::swap(&mut moved, into_survivor);
        }
        into_survivor.extend(moved);
        touched.retain(|&r| r != loser && self.alive[r]);
        touched
    }
}

/// Computes the almost-equivalence of a minimal automaton and a scaling map,
/// bucketing states by standardized signature and merging on collisions.
pub fn compute_almost_equivalence<W: Semifield>(
    a: &Wdta<W>,
    classes: &StateClassification,
) -> Result<AlmostEquivalence<W>, AutomatonError> {
    if !W::EXACT {
        return Err(AutomatonError::InexactSemifield(W::KIND.to_string()));
    }
    let n = a.num_states();
    if classes.cokernel.len() != n || classes.kernel.len() != n {
        return Err(AutomatonError::Inconsistent(format!(
            "state classification does not cover the {n} states"
        )));
    }
    let mut work = WorkingCopy::new(a, classes);
    let mut members: Vec<Vec<StateId>> = (0..n).map(|q| vec![q]).collect();
    let mut factor: Vec<W> = vec![W::one(); n];
    let mut changes = vec![0u32; n];
    let mut merges = Vec::new();

    let mut table: HashMap<Vec<u8>, StateId> = HashMap::new();
    let mut key_of: Vec<Option<Vec<u8>>> = vec![None; n];
    let mut pending = vec![true; n];
    let mut queue: VecDeque<StateId> = (0..n).collect();

    while let Some(current) = queue.pop_front() {
        pending[current] = false;
        if !work.alive[current] {
            continue;
        }
        let key = work.signature(current)?.canonical_bytes();
        let mut keep = current;
        if let Some(&stored) = table.get(&key) {
            let (mut q, mut q2) = (current, stored);
            if members[q2].len() >= members[q].len() {
                std::mem::swap(&mut q, &mut q2);
            }
            // q survives, q2 is merged into q.
            let s = match work.least_context(q) {
                Some(cq) => {
                    let num = work.weight_at(cq, q2).ok_or_else(|| {
                        AutomatonError::Inconsistent(
                            "equal signatures with different contexts".into(),
                        )
                    })?;
                    let den = work.labelled(cq.0, cq.1).1.clone();
                    num.divide(&den)?
                }
                None => W::one(),
            };
            table.remove(&key);
            if let Some(old) = key_of[q2].take() {
                if table.get(&old) == Some(&q2) {
                    table.remove(&old);
                }
            }
            key_of[q].take();
            for r in work.merge(q2, &s, q) {
                if !pending[r] {
                    pending[r] = true;
                    queue.push_back(r);
                    if let Some(old) = key_of[r].take() {
                        if table.get(&old) == Some(&r) {
                            table.remove(&old);
                        }
                    }
                }
            }
            let absorbed = std::mem::take(&mut members[q2]);
            for &r in &absorbed {
                if r != q2 {
                    factor[r] = factor[r].times(&s);
                }
                changes[r] += 1;
            }
            factor[q2] = s.clone();
            members[q].extend(absorbed);
            merges.push((q2, q, s));
            keep = q;
        }
        if !pending[keep] {
            table.insert(key.clone(), keep);
            key_of[keep] = Some(key);
        }
    }

    let mut blocks: Vec<Vec<StateId>> = Vec::new();
    let mut survivor = Vec::new();
    for q in 0..n {
        if work.alive[q] {
            let mut b = members[q].clone();
            b.sort_unstable();
            blocks.push(b);
            survivor.push(q);
        }
    }
    let mut order: Vec<usize> = (0..blocks.len()).collect();
    order.sort_by_key(|&i| blocks[i][0]);
    let blocks: Vec<Vec<StateId>> = order.iter().map(|&i| blocks[i].clone()).collect();
    let survivor: Vec<StateId> = order.iter().map(|&i| survivor[i]).collect();
    let mut block_of = vec![0; n];
    for (i, b) in blocks.iter().enumerate() {
        for &q in b {
            block_of[q] = i;
        }
    }
    Ok(AlmostEquivalence {
        blocks,
        block_of,
        survivor,
        factor,
        representative_changes: changes,
        merges,
    })
}

/// The representative chosen for each block when merging: a kernel member
/// if the block has one, preferring the sink and then the survivor.
pub fn block_representatives<W: Semifield>(
    a: &Wdta<W>,
    kernel: &[bool],
    ae: &AlmostEquivalence<W>,
) -> Vec<StateId> {
    ae.blocks
        .iter()
        .zip(&ae.survivor)
        .map(|(block, &surv)| {
            let has_kernel = block.iter().any(|&q| kernel[q]);
            let eligible = |q: StateId| !has_kernel || kernel[q];
            match a.sink() {
                Some(s) if block.contains(&s) && eligible(s) => s,
                _ if eligible(surv) => surv,
                _ => *block.iter().find(|&&q| eligible(q)).expect("nonempty"),
            }
        })
        .collect()
}

/// Merges every preamble state into its block representative with weight
/// `f(q') / f(rep)`. Kernel states are never merged.
pub fn merge_states<W: Semifield>(
    a: &Wdta<W>,
    kernel: &[bool],
    ae: &AlmostEquivalence<W>,
) -> Result<Wdta<W>, AutomatonError> {
    let n = a.num_states();
    if kernel.len() != n || ae.block_of.len() != n || ae.factor.len() != n {
        return Err(AutomatonError::Inconsistent(format!(
            "partition or kernel set does not cover the {n} states"
        )));
    }
    let reps = block_representatives(a, kernel, ae);
    let mut merges = Vec::new();
    for (block, &rep) in ae.blocks.iter().zip(&reps) {
        let inv = ae.factor[rep].inverse()?;
        for &q in block {
            if q != rep && !kernel[q] {
                merges.push((q, rep, ae.factor[q].times(&inv)));
            }
        }
    }
    a.merge_many(&merges)
}

/// Everything the pipeline computed, indexed by states of the minimal automaton.
#[derive(Debug, Clone)]
pub struct HyperMinimizeReport<W> {
    pub minimal: Wdta<W>,
    pub classification: StateClassification,
    pub almost_equivalence: AlmostEquivalence<W>,
    pub representatives: Vec<StateId>,
    pub states_before: usize,
    pub size_before: u128,
    pub states_after: usize,
    pub size_after: u128,
}

/// trim → minimize → kernel → co-kernel → almost-equivalence → merge.
pub fn hyper_minimize<W: Semifield>(
    a: &Wdta<W>,
) -> Result<(Wdta<W>, HyperMinimizeReport<W>), AutomatonError> {
    let minimal = minimize(a)?;
    require_trimmed(&minimal)?;
    let classification = StateClassification::compute(&minimal)?;
    let ae = compute_almost_equivalence(&minimal, &classification)?;
    let representatives = block_representatives(&minimal, &classification.kernel, &ae);
    let result = merge_states(&minimal, &classification.kernel, &ae)?;
    let report = HyperMinimizeReport {
        states_before: a.num_states(),
        size_before: a.size(),
        states_after: result.num_states(),
        size_after: result.size(),
        minimal,
        classification,
        almost_equivalence: ae,
        representatives,
    };
    Ok((result, report))
}

impl<W: Semifield> HyperMinimizeReport<W> {
    fn names(&self, set: &[bool]) -> String {
        self.minimal.state_set_names(set).join(" ")
    }

    /// Machine-readable `key = value` lines.
    pub fn key_values(&self) -> Vec<(String, String)> {
        let m = &self.minimal;
        let mut out = vec![
            ("states_before".to_string(), self.states_before.to_string()),
            ("size_before".to_string(), self.size_before.to_string()),
            ("states_minimal".to_string(), m.num_states().to_string()),
            ("states_after".to_string(), self.states_after.to_string()),
            ("size_after".to_string(), self.size_after.to_string()),
            (
                "kernel".to_string(),
                self.names(&self.classification.kernel),
            ),
            (
                "cokernel".to_string(),
                self.names(&self.classification.cokernel),
            ),
        ];
        let ae = &self.almost_equivalence;
        for (block, &rep) in ae.blocks.iter().zip(&self.representatives) {
            let names: Vec<&str> = block.iter().map(|&q| m.state_name(q)).collect();
            out.push((
                "block".to_string(),
                format!("{{{}}} rep {}", names.join(","), m.state_name(rep)),
            ));
        }
        for q in m.state_ids() {
            out.push((format!("f({})", m.state_name(q)), ae.factor[q].to_string()));
        }
        out
    }
}

impl<W: Semifield> fmt::Display for HyperMinimizeReport<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.key_values() {
            writeln!(f, "{k} = {v}")?;
        }
        Ok(())
    }
}
