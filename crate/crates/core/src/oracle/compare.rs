//! Exhaustive comparison of two recognized languages up to a height bound.
//!
//! Trees are grouped into classes by (state in A, state in B, weight ratio)
//! per exact height. Whether a tree is a mismatch depends only on its class,
//! so every tree of height at most `H` is accounted for without listing
//! them one by one; mismatching trees are expanded only up to a cap.

use std::collections::HashMap;
use std::fmt;

use crate::automaton::{pow_saturating, tuples, Lhs, Wdta};
use crate::error::AutomatonError;
use crate::minimize::{distance_to_final, EntryIndex};
use crate::semifield::Semifield;
use crate::terms::{StateId, SymbolId, Tree};

use super::enumerate::NODE_BUDGET;

/// How many mismatching trees are materialized.
pub const MISMATCH_LISTING_CAP: usize = 1000;

/// Upper bound on child tuples combined per symbol and height.
const WORK_BUDGET: u128 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch<W> {
    pub tree: Tree,
    pub weight_a: W,
    pub weight_b: W,
}

/// Outcome of comparing two automata on all trees of height at most `height`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MismatchReport<W> {
    pub height: usize,
    pub tail: usize,
    /// Mismatching trees, smallest height first, at most [`MISMATCH_LISTING_CAP`].
    pub mismatches: Vec<Mismatch<W>>,
    /// Number of mismatching trees per height `0..=height`, saturating.
    pub counts_by_height: Vec<u128>,
    /// True when more mismatches exist than were listed.
    pub truncated: bool,
}

impl<W> MismatchReport<W> {
    pub fn total(&self) -> u128 {
        self.counts_by_height
            .iter()
            .fold(0u128, |a, &b| a.saturating_add(b))
    }

    pub fn max_mismatch_height(&self) -> Option<usize> {
        self.counts_by_height.iter().rposition(|&c| c > 0)
    }

    /// No mismatch with height in `[height - tail, height]`. This is
    /// evidence of almost-equivalence, not a proof.
    pub fn is_clean(&self) -> bool {
        let from = self.height.saturating_sub(self.tail);
        self.counts_by_height[from..].iter().all(|&c| c == 0)
    }
}

#[derive(Debug, Clone)]
struct Class {
    derivations: Vec<(SymbolId, Vec<usize>)>,
    count: u128,
    mismatch: bool,
}

/// Compares `[[A]]` and `[[B]]` on every tree of height at most `height`.
pub fn compare_languages<W: Semifield>(
    a: &Wdta<W>,
    b: &Wdta<W>,
    height: usize,
    tail: usize,
) -> Result<MismatchReport<W>, AutomatonError> {
    if a.alphabet() != b.alphabet() {
        return Err(AutomatonError::AlphabetMismatch(
            "the automata are over different ranked alphabets".into(),
        ));
    }
    let sigma = a.alphabet();
    let (live_a, live_b) = (live_states(a), live_states(b));
    let mut classes: Vec<Class> = Vec::new();
    let mut keys: Vec<(StateId, StateId, W)> = Vec::new();
    let mut counts_by_height = vec![0u128; height + 1];
    let mut layer_start = 0usize;
    for h in 0..=height {
        let below = classes.len();
        let mut index: HashMap<(StateId, StateId, W), usize> = HashMap::new();
        let mut fresh: Vec<Class> = Vec::new();
        let mut fresh_keys: Vec<(StateId, StateId, W)> = Vec::new();
        for (sym, _, rank) in sigma.iter() {
            if (rank == 0) != (h == 0) {
                continue;
            }
            for kids in tuples(below, rank) {
                if h > 0 && kids.iter().all(|&k| k < layer_start) {
                    continue;
                }
                if pow_saturating(below as u128, rank) > WORK_BUDGET {
                    return Err(AutomatonError::Resource(format!(
                        "more than {WORK_BUDGET} child tuples at height {h}"
                    )));
                }
                let xs: Vec<StateId> = kids.iter().map(|&k| keys[k].0).collect();
                let ys: Vec<StateId> = kids.iter().map(|&k| keys[k].1).collect();
                let (x, wa) = step(a, sym, xs)?;
                let (y, wb) = step(b, sym, ys)?;
                let mut ratio = wa.divide(&wb)?;
                let mut count: u128 = 1;
                for &k in &kids {
                    ratio = ratio.times(&keys[k].2);
                    count = count.saturating_mul(classes[k].count);
                }
                // Once either side is dead its weights no longer matter.
                if !live_a[x] || !live_b[y] {
                    ratio = W::one();
                }
                let key = (x, y, ratio);
                let id = match index.get(&key) {
                    Some(&id) => id,
                    None => {
                        let id = fresh.len();
                        if below + id > NODE_BUDGET {
                            return Err(AutomatonError::Resource(format!(
                                "more than {NODE_BUDGET} tree classes"
                            )));
                        }
                        index.insert(key.clone(), id);
                        let mismatch = match (a.is_final(x), b.is_final(y)) {
                            (false, false) => false,
                            (true, true) => !key.2.is_one(),
                            _ => true,
                        };
                        fresh.push(Class {
                            derivations: Vec::new(),
                            count: 0,
                            mismatch,
                        });
                        fresh_keys.push(key);
                        id
                    }
                };
                let class = &mut fresh[id];
                class.count = class.count.saturating_add(count);
                class.derivations.push((sym, kids));
            }
        }
        for c in &fresh {
            if c.mismatch {
                counts_by_height[h] = counts_by_height[h].saturating_add(c.count);
            }
        }
        layer_start = below;
        classes.extend(fresh);
        keys.extend(fresh_keys);
    }

    let mut mismatches = Vec::new();
    let mut truncated = false;
    for (id, class) in classes.iter().enumerate() {
        if !class.mismatch {
            continue;
        }
        let room = MISMATCH_LISTING_CAP - mismatches.len();
        if room == 0 {
            truncated = true;
            break;
        }
        let mut trees = Vec::new();
        expand(&classes, id, room, &mut trees);
        if class.count > trees.len() as u128 {
            truncated = true;
        }
        for tree in trees {
            let weight_a = a.semantics(&tree)?;
            let weight_b = b.semantics(&tree)?;
            mismatches.push(Mismatch {
                tree,
                weight_a,
                weight_b,
            });
        }
    }
    mismatches.sort_by(|x, y| {
        x.tree
            .height()
            .cmp(&y.tree.height())
            .then_with(|| x.tree.cmp(&y.tree))
    });
    Ok(MismatchReport {
        height,
        tail,
        mismatches,
        counts_by_height,
        truncated,
    })
}

fn live_states<W: Semifield>(a: &Wdta<W>) -> Vec<bool> {
    distance_to_final(a, &EntryIndex::new(a))
        .iter()
        .map(Option::is_some)
        .collect()
}

fn step<W: Semifield>(
    a: &Wdta<W>,
    sym: SymbolId,
    children: Vec<StateId>,
) -> Result<(StateId, W), AutomatonError> {
    let lhs = Lhs::new(sym, children);
    a.step_lhs(&lhs)
        .map(|(q, w)| (q, w.clone()))
        .ok_or_else(|| {
            AutomatonError::Invalid(format!("no transition for `{}`", a.lhs_to_string(&lhs)))
        })
}

/// Appends up to `limit` trees of class `id` to `out`.
fn expand(classes: &[Class], id: usize, limit: usize, out: &mut Vec<Tree>) {
    for (sym, kids) in &classes[id].derivations {
        if out.len() >= limit {
            return;
        }
        let mut partial: Vec<Vec<Tree>> = vec![Vec::new()];
        for &k in kids {
            let mut options = Vec::new();
            expand(classes, k, limit, &mut options);
            let mut next = Vec::new();
            'outer: for prefix in &partial {
                for t in &options {
                    let mut v = prefix.clone();
                    v.push(t.clone());
                    next.push(v);
                    if next.len() >= limit {
                        break 'outer;
                    }
                }
            }
            partial = next;
        }
        for children in partial {
            if out.len() >= limit {
                return;
            }
            out.push(Tree::node(*sym, children));
        }
    }
}

/// Displays a report using the symbol and state names of `a`.
pub struct ReportDisplay<'a, W> {
    pub report: &'a MismatchReport<W>,
    pub automaton: &'a Wdta<W>,
}

impl<W: Semifield> fmt::Display for ReportDisplay<'_, W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.report;
        let sigma = self.automaton.alphabet();
        writeln!(f, "height = {}", r.height)?;
        writeln!(f, "tail = {}", r.tail)?;
        writeln!(f, "mismatches = {}", r.total())?;
        for m in &r.mismatches {
            writeln!(
                f,
                "mismatch {} : {} vs {}",
                m.tree.display(sigma, &[]),
                m.weight_a,
                m.weight_b
            )?;
        }
        if r.truncated {
            writeln!(f, "listing truncated")?;
        }
        writeln!(
            f,
            "verdict = {}",
            if r.is_clean() { "clean" } else { "dirty" }
        )
    }
}
