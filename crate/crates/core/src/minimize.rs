//! Lossless minimization: computing the scaled equivalence `≡` and merging
//! each class into one state.
//!
//! Weights are first pushed towards the hole along a canonical accepting
//! context chain, which turns scaled equivalence into plain bisimilarity of
//! a partial deterministic automaton over letters (transition context, pushed
//! weight). That automaton is minimized by splitter refinement processing
//! the smaller half, so the total work is `O(m log n)` up to hashing.

use std::collections::{HashMap, VecDeque};

use crate::automaton::{Lhs, TransitionContext, Wdta};
use crate::error::AutomatonError;
use crate::partition::RefinablePartition;
use crate::semifield::Semifield;
use crate::terms::StateId;

/// The classes of `≡` with a factor per state relative to its representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceResult<W> {
    /// Classes, each sorted, ordered by least member.
    pub classes: Vec<Vec<StateId>>,
    pub class_of: Vec<usize>,
    pub representative: Vec<StateId>,
    /// `λ(q)` with `sem_q = λ(q) ⊗ sem_rep(q)` on every context.
    pub factor: Vec<W>,
    /// States whose context semantics is zero everywhere.
    pub dead: Vec<bool>,
}

/// One child slot of one stored entry.
#[derive(Debug, Clone)]
pub(crate) struct Occurrence {
    pub child: StateId,
    pub entry: usize,
    pub hole: usize,
}

/// Stored entries in a fixed order with per-state child-slot lists.
pub(crate) struct EntryIndex<'a, W> {
    pub entries: Vec<(&'a Lhs, StateId, &'a W)>,
    /// For each state, the slots in which it occurs as a child.
    pub out: Vec<Vec<Occurrence>>,
    /// For each state, the slots of entries targeting it.
    pub into: Vec<Vec<Occurrence>>,
}

impl<'a, W: Semifield> EntryIndex<'a, W> {
    pub fn new(a: &'a Wdta<W>) -> Self {
        let n = a.num_states();
        let mut entries: Vec<(&Lhs, StateId, &W)> = a
            .rules()
            .map(|(lhs, rule)| (lhs, rule.target, &rule.weight))
            .collect();
        entries.sort_by(|x, y| x.0.cmp(y.0));
        let mut out = vec![Vec::new(); n];
        let mut into = vec![Vec::new(); n];
        for (e, (lhs, target, _)) in entries.iter().enumerate() {
            for (hole, &child) in lhs.children.iter().enumerate() {
                let occ = Occurrence {
                    child,
                    entry: e,
                    hole,
                };
                out[child].push(occ.clone());
                into[*target].push(occ);
            }
        }
        EntryIndex { entries, out, into }
    }

    pub fn context(&self, occ: &Occurrence) -> TransitionContext {
        TransitionContext::from_lhs(self.entries[occ.entry].0, occ.hole)
    }

    pub fn target(&self, occ: &Occurrence) -> StateId {
        self.entries[occ.entry].1
    }

    pub fn weight(&self, occ: &Occurrence) -> &'a W {
        self.entries[occ.entry].2
    }
}

/// Distance in transition contexts from each state to a final state, if any.
pub(crate) fn distance_to_final<W: Semifield>(
    a: &Wdta<W>,
    index: &EntryIndex<W>,
) -> Vec<Option<usize>> {
    let mut dist = vec![None; a.num_states()];
    let mut queue = VecDeque::new();
    for q in a.finals() {
        dist[q] = Some(0);
        queue.push_back(q);
    }
    while let Some(t) = queue.pop_front() {
        let d = dist[t].expect("queued states have a distance");
        for occ in &index.into[t] {
            if dist[occ.child].is_none() {
                dist[occ.child] = Some(d + 1);
                queue.push_back(occ.child);
            }
        }
    }
    dist
}

fn require_exact<W: Semifield>() -> Result<(), AutomatonError> {
    if W::EXACT {
        Ok(())
    } else {
        Err(AutomatonError::InexactSemifield(W::KIND.to_string()))
    }
}

/// Computes `≡` on a trimmed automaton.
pub fn compute_equivalence<W: Semifield>(
    a: &Wdta<W>,
) -> Result<EquivalenceResult<W>, AutomatonError> {
    require_exact::<W>()?;
    let n = a.num_states();
    let index = EntryIndex::new(a);
    let dist = distance_to_final(a, &index);

    // λ(q) is the weight of q's canonical accepting context chain.
    let mut order: Vec<StateId> = (0..n).filter(|&q| dist[q].is_some()).collect();
    order.sort_by_key(|&q| dist[q]);
    let mut lambda: Vec<Option<W>> = vec![None; n];
    for &q in &order {
        let d = dist[q].expect("live");
        if d == 0 {
            lambda[q] = Some(W::one());
            continue;
        }
        let best = index.out[q]
            .iter()
            .filter(|occ| dist[index.target(occ)] == Some(d - 1))
            .min_by(|x, y| index.context(x).cmp(&index.context(y)))
            .expect("a state at distance d has a successor at distance d - 1");
        let next = lambda[index.target(best)]
            .as_ref()
            .expect("computed earlier");
        lambda[q] = Some(index.weight(best).times(next));
    }

    // Letters: (transition context, pushed weight); dead targets are omitted.
    let mut letters: HashMap<(TransitionContext, W), usize> = HashMap::new();
    let mut incoming: Vec<Vec<(StateId, usize)>> = vec![Vec::new(); n];
    for q in 0..n {
        let Some(lq) = &lambda[q] else { continue };
        let inv = lq.inverse()?;
        for occ in &index.out[q] {
            let t = index.target(occ);
            let Some(lt) = &lambda[t] else { continue };
            let pushed = index.weight(occ).times(lt).times(&inv);
            let next = letters.len();
            let letter = *letters.entry((index.context(occ), pushed)).or_insert(next);
            incoming[t].push((q, letter));
        }
    }

    let labels: Vec<usize> = (0..n)
        .map(|q| match (&lambda[q], a.is_final(q)) {
            (None, _) => 0,
            (Some(_), true) => 1,
            (Some(_), false) => 2,
        })
        .collect();
    let mut partition = RefinablePartition::from_labels(&labels);
    let mut queued = vec![true; partition.num_blocks()];
    let mut work: VecDeque<usize> = (0..partition.num_blocks()).collect();
    let mut slot_of_letter: Vec<usize> = vec![usize::MAX; letters.len()];
    let mut groups: Vec<Vec<StateId>> = Vec::new();
    while let Some(splitter) = work.pop_front() {
        queued[splitter] = false;
        let mut used = Vec::new();
        for &t in partition.members(splitter) {
            for &(q, letter) in &incoming[t] {
                if slot_of_letter[letter] == usize::MAX {
                    slot_of_letter[letter] = used.len();
                    if groups.len() <= used.len() {
                        groups.push(Vec::new());
                    }
                    used.push(letter);
                }
                groups[slot_of_letter[letter]].push(q);
            }
        }
        for (slot, &letter) in used.iter().enumerate() {
            slot_of_letter[letter] = usize::MAX;
            for &q in &groups[slot] {
                partition.mark(q);
            }
            groups[slot].clear();
            for (old, new) in partition.split_marked() {
                queued.push(false);
                let add = if queued[old] || partition.block_len(new) <= partition.block_len(old) {
                    new
                } else {
                    old
                };
                queued[add] = true;
                work.push_back(add);
            }
        }
    }

    let mut classes: Vec<Vec<StateId>> = (0..partition.num_blocks())
        .map(|b| {
            let mut members = partition.members(b).to_vec();
            members.sort_unstable();
            members
        })
        .filter(|c| !c.is_empty())
        .collect();
    classes.sort_by_key(|c| c[0]);
    let mut class_of = vec![0; n];
    let mut representative = vec![0; n];
    let mut factor = vec![W::one(); n];
    for (i, class) in classes.iter().enumerate() {
        let rep = match a.sink() {
            Some(s) if class.contains(&s) => s,
            _ => class[0],
        };
        for &q in class {
            class_of[q] = i;
            representative[q] = rep;
            if let (Some(lq), Some(lr)) = (&lambda[q], &lambda[rep]) {
                factor[q] = lq.divide(lr)?;
            }
        }
    }
    Ok(EquivalenceResult {
        classes,
        class_of,
        representative,
        factor,
        dead: lambda.iter().map(Option::is_none).collect(),
    })
}

/// The minimal automaton equivalent to `a` (factor one on every tree): trims,
/// then merges every state into its class representative.
pub fn minimize<W: Semifield>(a: &Wdta<W>) -> Result<Wdta<W>, AutomatonError> {
    let trimmed = a.trim();
    let eq = compute_equivalence(&trimmed)?;
    let merges: Vec<(StateId, StateId, W)> = trimmed
        .state_ids()
        .filter(|&q| eq.representative[q] != q)
        .map(|q| (q, eq.representative[q], eq.factor[q].clone()))
        .collect();
    let mut merged = trimmed.merge_many(&merges)?;
    normalize_dead(&mut merged);
    Ok(merged)
}

/// Makes the dead state, if any, the sink and resets every weight into it to
/// the default. Weights into a dead state never reach a final state.
fn normalize_dead<W: Semifield>(a: &mut Wdta<W>) {
    let dist = distance_to_final(a, &EntryIndex::new(a));
    let Some(dead) = a.state_ids().find(|&q| dist[q].is_none()) else {
        return;
    };
    if a.sink().is_some_and(|s| s != dead) {
        return;
    }
    a.set_sink(Some(dead));
    let into_dead: Vec<Lhs> = a
        .rules()
        .filter(|(_, r)| r.target == dead)
        .map(|(l, _)| l.clone())
        .collect();
    for lhs in into_dead {
        a.remove_rule(&lhs);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{a_ex, a_ex_with_clone};
    use crate::semifield::{Boolean, Rational, TropicalFloat};
    use crate::terms::RankedAlphabet;

    #[test]
    fn fixture_classes_are_singletons() {
        let eq = compute_equivalence(&a_ex()).unwrap();
        assert_eq!(eq.classes, vec![vec![0], vec![1], vec![2], vec![3]]);
        assert_eq!(eq.dead, vec![false, false, false, true]);
        assert_eq!(minimize(&a_ex()).unwrap(), a_ex());
    }

    #[test]
    fn clone_collapses() {
        let a = a_ex_with_clone(1);
        let eq = compute_equivalence(&a).unwrap();
        assert_eq!(eq.classes[0], vec![0, 4]);
        assert_eq!(eq.factor[4], Rational::integer(1));
        let m = minimize(&a).unwrap();
        assert_eq!(m.num_states(), 4);
        assert!(m.validate().is_empty());
    }

    #[test]
    fn scaled_clone_gets_its_factor() {
        // x and y are non-final and differ by a factor 3 on every context.
        let sigma = RankedAlphabet::from_symbols([("a", 0), ("b", 0), ("g", 1)]).unwrap();
        let mut a: Wdta<Rational> = Wdta::new(sigma);
        let x = a.add_state("x");
        let y = a.add_state("y");
        let f = a.add_state("f");
        let s = a.add_state("s");
        a.set_sink(Some(s));
        a.set_final(f, true);
        a.set_rule(0, vec![], x, Rational::integer(1));
        a.set_rule(1, vec![], y, Rational::integer(1));
        a.set_rule(2, vec![x], f, Rational::integer(2));
        a.set_rule(2, vec![y], f, Rational::integer(6));
        let eq = compute_equivalence(&a).unwrap();
        assert_eq!(eq.classes[0], vec![x, y]);
        assert_eq!(eq.factor[y], Rational::integer(3));
        let m = minimize(&a).unwrap();
        assert_eq!(m.num_states(), 3);
        let b = m.alphabet().lookup("b").unwrap();
        assert_eq!(m.step(b, &[]).unwrap(), (0, &Rational::integer(3)));
    }

    #[test]
    fn dead_states_collapse_into_the_sink() {
        let sigma = RankedAlphabet::from_symbols([("a", 0), ("b", 0), ("g", 1)]).unwrap();
        let mut a: Wdta<Boolean> = Wdta::new(sigma);
        let p = a.add_state("p");
        let d = a.add_state("d");
        let s = a.add_state("s");
        a.set_sink(Some(s));
        a.set_final(p, true);
        a.set_rule(0, vec![], p, Boolean(true));
        a.set_rule(1, vec![], d, Boolean(true));
        a.set_rule(2, vec![p], d, Boolean(true));
        let m = minimize(&a).unwrap();
        assert_eq!(m.state_names(), &["p", "s"]);
        assert_eq!(m.sink(), Some(1));
    }

    #[test]
    fn float_kind_is_rejected() {
        let sigma = RankedAlphabet::from_symbols([("a", 0)]).unwrap();
        let mut a: Wdta<TropicalFloat> = Wdta::new(sigma);
        let p = a.add_state("p");
        a.set_rule(0, vec![], p, TropicalFloat(1.0));
        assert!(matches!(
            minimize(&a),
            Err(AutomatonError::InexactSemifield(_))
        ));
    }
}
