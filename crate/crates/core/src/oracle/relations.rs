//! Brute-force deciders for the relations the algorithms compute. They work
//! on the full table `Σ(Q)` (default entries included) and share no code
//! with minimization, topology or signatures.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::automaton::{tuples, Lhs, TransitionContext, Wdta};
use crate::error::AutomatonError;
use crate::semifield::Semifield;
use crate::terms::StateId;

fn step<W: Semifield>(a: &Wdta<W>, lhs: &Lhs) -> (StateId, W) {
    let (q, w) = a
        .step_lhs(lhs)
        .unwrap_or_else(|| panic!("automaton is not total at `{}`", a.lhs_to_string(lhs)));
    (q, w.clone())
}

/// Every transition context over all of `Q`, including default entries.
fn all_contexts<W: Semifield>(a: &Wdta<W>) -> Vec<TransitionContext> {
    a.transition_contexts()
}

/// States reached by trees of height exactly `h`, for `h = 0..=max_height`.
pub fn reached_by_height<W: Semifield>(a: &Wdta<W>, max_height: usize) -> Vec<HashSet<StateId>> {
    let sigma = a.alphabet();
    let mut layers: Vec<HashSet<StateId>> = Vec::new();
    let mut upto: Vec<StateId> = Vec::new();
    for h in 0..=max_height {
        let mut layer = HashSet::new();
        for (sym, _, rank) in sigma.iter() {
            if h == 0 {
                if rank == 0 {
                    layer.insert(step(a, &Lhs::new(sym, vec![])).0);
                }
                continue;
            }
            if rank == 0 {
                continue;
            }
            let last = &layers[h - 1];
            for idx in tuples(upto.len(), rank) {
                let children: Vec<StateId> = idx.iter().map(|&i| upto[i]).collect();
                if children.iter().any(|q| last.contains(q)) {
                    layer.insert(step(a, &Lhs::new(sym, children)).0);
                }
            }
        }
        for &q in &layer {
            if !upto.contains(&q) {
                upto.push(q);
            }
        }
        layers.push(layer);
    }
    layers
}

/// Reachability by trees, computed from the height layers.
pub fn reachable_oracle<W: Semifield>(a: &Wdta<W>) -> Vec<bool> {
    let n = a.num_states();
    let mut out = vec![false; n];
    // Any reachable state is reached by a tree of height < n.
    for layer in reached_by_height(a, n) {
        for q in layer {
            out[q] = true;
        }
    }
    out
}

/// Kernel membership: `q` is reached by a tree whose height lies in
/// `[|Q|, 2|Q|]`. A tree of height at least `|Q|` repeats a state on its
/// longest path, so it pumps up; a tall one pumps down into the band.
pub fn kernel_oracle<W: Semifield>(a: &Wdta<W>, q: StateId) -> bool {
    let n = a.num_states();
    reached_by_height(a, 2 * n)[n..]
        .iter()
        .any(|layer| layer.contains(&q))
}

/// Co-kernel membership via the product of `A` with a hole marker: states
/// `(p, 0)` for hole-free subtrees and `(p, 1)` for subtrees containing the
/// hole (plugged with `q`). Subtrees with two holes fall into a dead state,
/// so the product has `N = 2|Q| + 1` states and accepted contexts are
/// infinitely many iff one has height in `[N, 2N]`.
pub fn cokernel_oracle<W: Semifield>(a: &Wdta<W>, q: StateId) -> bool {
    let n = a.num_states();
    let big_n = 2 * n + 1;
    let sigma = a.alphabet();
    let mut layers: Vec<HashSet<(StateId, bool)>> = Vec::new();
    let mut upto: Vec<(StateId, bool)> = Vec::new();
    for h in 0..=2 * big_n {
        let mut layer = HashSet::new();
        if h == 0 {
            layer.insert((q, true));
        }
        for (sym, _, rank) in sigma.iter() {
            if h == 0 {
                if rank == 0 {
                    layer.insert((step(a, &Lhs::new(sym, vec![])).0, false));
                }
                continue;
            }
            if rank == 0 {
                continue;
            }
            let last = &layers[h - 1];
            for idx in tuples(upto.len(), rank) {
                let kids: Vec<(StateId, bool)> = idx.iter().map(|&i| upto[i]).collect();
                let marks = kids.iter().filter(|k| k.1).count();
                if marks > 1 || !kids.iter().any(|k| last.contains(k)) {
                    continue;
                }
                let children: Vec<StateId> = kids.iter().map(|k| k.0).collect();
                layer.insert((step(a, &Lhs::new(sym, children)).0, marks == 1));
            }
        }
        for &k in &layer {
            if !upto.contains(&k) {
                upto.push(k);
            }
        }
        layers.push(layer);
    }
    layers[big_n..]
        .iter()
        .any(|layer| layer.iter().any(|&(p, marked)| marked && a.is_final(p)))
}

/// States from which some context accepts, by backward search over `C_δ`.
fn live_states<W: Semifield>(a: &Wdta<W>, contexts: &[TransitionContext]) -> Vec<bool> {
    let n = a.num_states();
    let mut live: Vec<bool> = (0..n).map(|q| a.is_final(q)).collect();
    let mut changed = true;
    while changed {
        changed = false;
        for x in 0..n {
            if live[x] {
                continue;
            }
            if contexts.iter().any(|c| live[step(a, &c.fill(x)).0]) {
                live[x] = true;
                changed = true;
            }
        }
    }
    live
}

/// The factor `s` with `sem_q(c) = s ⊗ sem_q'(c)` for every context, if any.
///
/// Explores pairs `(δ(c[q]), δ(c[q']))` over extended contexts `c` built
/// from transition contexts, tracking the weight ratio. A pair reached with
/// two different ratios, or with differing finality, refutes equivalence
/// unless both sides accept nothing from there.
pub fn states_equivalent_oracle<W: Semifield>(a: &Wdta<W>, q: StateId, q2: StateId) -> Option<W> {
    if q == q2 {
        return Some(W::one());
    }
    let contexts = all_contexts(a);
    let live = live_states(a, &contexts);
    let mut ratio: HashMap<(StateId, StateId), W> = HashMap::new();
    let mut queue = VecDeque::new();
    ratio.insert((q, q2), W::one());
    queue.push_back((q, q2));
    let mut factor: Option<W> = None;
    while let Some((x, y)) = queue.pop_front() {
        if live[x] != live[y] {
            return None;
        }
        if !live[x] {
            continue;
        }
        if a.is_final(x) != a.is_final(y) {
            return None;
        }
        let r = ratio[&(x, y)].clone();
        if a.is_final(x) {
            match &factor {
                None => factor = Some(r.clone()),
                Some(s) if *s != r => return None,
                Some(_) => {}
            }
        }
        for c in &contexts {
            let (x2, wx) = step(a, &c.fill(x));
            let (y2, wy) = step(a, &c.fill(y));
            let r2 = r.times(&wx).divide(&wy).expect("nonzero weights");
            match ratio.get(&(x2, y2)) {
                Some(old) => {
                    if *old != r2 && live[x2] {
                        return None;
                    }
                }
                None => {
                    ratio.insert((x2, y2), r2);
                    queue.push_back((x2, y2));
                }
            }
        }
    }
    Some(factor.unwrap_or_else(W::one))
}

/// Checks trimness and that no two distinct states are equivalent.
pub fn check_minimal_oracle<W: Semifield>(a: &Wdta<W>) -> Result<(), AutomatonError> {
    let reach = reachable_oracle(a);
    if let Some(q) = a.state_ids().find(|&q| !reach[q]) {
        return Err(AutomatonError::NotTrimmed(a.state_name(q).to_string()));
    }
    for q in a.state_ids() {
        for q2 in q + 1..a.num_states() {
            if states_equivalent_oracle(a, q, q2).is_some() {
                return Err(AutomatonError::NotMinimal(
                    a.state_name(q).to_string(),
                    a.state_name(q2).to_string(),
                ));
            }
        }
    }
    Ok(())
}

/// For every pair, whether it reaches a cycle of non-diagonal pairs in the
/// pair graph `(x, y) → (δ(c[x]), δ(c[y]))`.
fn pair_graph_verdicts<W: Semifield>(a: &Wdta<W>) -> Vec<Vec<bool>> {
    let n = a.num_states();
    let contexts = all_contexts(a);
    let id = |x: StateId, y: StateId| x * n + y;
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n * n];
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            for c in &contexts {
                let x2 = step(a, &c.fill(x)).0;
                let y2 = step(a, &c.fill(y)).0;
                if x2 != y2 {
                    succ[id(x, y)].push(id(x2, y2));
                }
            }
        }
    }
    // Repeatedly strip non-diagonal pairs without non-diagonal successors;
    // what remains can reach a cycle.
    let mut out_deg: Vec<usize> = succ.iter().map(Vec::len).collect();
    let mut pred: Vec<Vec<usize>> = vec![Vec::new(); n * n];
    for (u, vs) in succ.iter().enumerate() {
        for &v in vs {
            pred[v].push(u);
        }
    }
    let mut removed = vec![false; n * n];
    let mut queue: VecDeque<usize> = (0..n * n).filter(|&u| out_deg[u] == 0).collect();
    while let Some(u) = queue.pop_front() {
        if removed[u] {
            continue;
        }
        removed[u] = true;
        for &p in &pred[u] {
            out_deg[p] -= 1;
            if out_deg[p] == 0 {
                queue.push_back(p);
            }
        }
    }
    (0..n)
        .map(|x| (0..n).map(|y| !removed[id(x, y)]).collect())
        .collect()
}

/// Almost-equivalence of two states of a minimal automaton.
///
/// Eventual agreement in the pair graph is necessary but not sufficient
/// with weights: the finitely many paths from `(q, q')` to the diagonal may
/// carry different ratios `wt(c[q]) / wt(c[q'])`. A path matters when it
/// is realized by infinitely many contexts with nonzero weight: it ends in
/// a co-kernel state, or it uses a transition context with a kernel side
/// state (infinitely many side subtrees) and ends in a live state or at a
/// non-diagonal pair that disagrees on finality or ratio. The states are
/// almost-equivalent iff all paths that matter agree on one ratio.
pub fn states_almost_equivalent_oracle<W: Semifield>(
    a: &Wdta<W>,
    q: StateId,
    q2: StateId,
) -> Result<bool, AutomatonError> {
    check_minimal_oracle(a)?;
    Ok(almost_equivalence_matrix_unchecked(a)?[q][q2])
}

/// The full almost-equivalence relation of a minimal automaton.
pub fn almost_equivalence_oracle<W: Semifield>(
    a: &Wdta<W>,
) -> Result<Vec<Vec<bool>>, AutomatonError> {
    check_minimal_oracle(a)?;
    almost_equivalence_matrix_unchecked(a)
}

/// Upper bound on pair-graph paths explored per state pair.
const PATH_BUDGET: usize = 1_000_000;

struct PathFacts<'a> {
    contexts: &'a [TransitionContext],
    kernel: Vec<bool>,
    cokernel: Vec<bool>,
    live: Vec<bool>,
}

pub(crate) fn almost_equivalence_matrix_unchecked<W: Semifield>(
    a: &Wdta<W>,
) -> Result<Vec<Vec<bool>>, AutomatonError> {
    let cyclic = pair_graph_verdicts(a);
    let contexts = all_contexts(a);
    let facts = PathFacts {
        contexts: &contexts,
        kernel: a.state_ids().map(|q| kernel_oracle(a, q)).collect(),
        cokernel: a.state_ids().map(|q| cokernel_oracle(a, q)).collect(),
        live: live_states(a, &contexts),
    };
    let n = a.num_states();
    let mut out = vec![vec![true; n]; n];
    for x in 0..n {
        for y in x + 1..n {
            let verdict = !cyclic[x][y] && ratios_agree(a, &facts, x, y)?;
            out[x][y] = verdict;
            out[y][x] = verdict;
        }
    }
    Ok(out)
}

/// Walks every pair-graph path from `(q, q')` up to the diagonal (the
/// non-diagonal part is acyclic here) and checks the ratios that matter.
fn ratios_agree<W: Semifield>(
    a: &Wdta<W>,
    facts: &PathFacts,
    q: StateId,
    q2: StateId,
) -> Result<bool, AutomatonError> {
    let mut factor: Option<W> = None;
    let mut agree = |r: &W| match &factor {
        None => {
            factor = Some(r.clone());
            true
        }
        Some(s) => s == r,
    };
    let mut stack = vec![(q, q2, W::one(), false)];
    let mut explored = 0usize;
    while let Some((x, y, r, heavy)) = stack.pop() {
        explored += 1;
        if explored > PATH_BUDGET {
            return Err(AutomatonError::Resource(format!(
                "more than {PATH_BUDGET} pair-graph paths"
            )));
        }
        if heavy && a.is_final(x) != a.is_final(y) {
            return Ok(false);
        }
        if heavy && a.is_final(x) && !agree(&r) {
            return Ok(false);
        }
        for c in facts.contexts {
            let (x2, wx) = step(a, &c.fill(x));
            let (y2, wy) = step(a, &c.fill(y));
            let r2 = r.times(&wx).divide(&wy).expect("nonzero weights");
            let heavy2 = heavy || c.sides.iter().any(|&s| facts.kernel[s]);
            if x2 != y2 {
                stack.push((x2, y2, r2, heavy2));
            } else if ((heavy2 && facts.live[x2]) || facts.cokernel[x2]) && !agree(&r2) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Why an automaton fails to be hyper-minimal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HyperMinimalityWitness {
    Unreachable(String),
    Equivalent(String, String),
    AlmostEquivalentPreamble(String, String),
    /// The oracle ran out of budget.
    Undecided(String),
}

impl std::fmt::Display for HyperMinimalityWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HyperMinimalityWitness::Unreachable(q) => write!(f, "state `{q}` is unreachable"),
            HyperMinimalityWitness::Equivalent(x, y) => {
                write!(f, "states `{x}` and `{y}` are equivalent")
            }
            HyperMinimalityWitness::AlmostEquivalentPreamble(x, y) => {
                write!(
                    f,
                    "states `{x}` and `{y}` are almost-equivalent and not both kernel states"
                )
            }
            HyperMinimalityWitness::Undecided(e) => write!(f, "undecided: {e}"),
        }
    }
}

/// Hyper-minimal iff minimal and every pair of distinct almost-equivalent
/// states consists of two kernel states.
pub fn hyper_minimality_check<W: Semifield>(a: &Wdta<W>) -> Result<(), HyperMinimalityWitness> {
    let name = |q: StateId| a.state_name(q).to_string();
    match check_minimal_oracle(a) {
        Err(AutomatonError::NotTrimmed(q)) => return Err(HyperMinimalityWitness::Unreachable(q)),
        Err(AutomatonError::NotMinimal(x, y)) => {
            return Err(HyperMinimalityWitness::Equivalent(x, y))
        }
        _ => {}
    }
    let ae = match almost_equivalence_matrix_unchecked(a) {
        Ok(ae) => ae,
        Err(e) => return Err(HyperMinimalityWitness::Undecided(e.to_string())),
    };
    let kernel: Vec<bool> = a.state_ids().map(|q| kernel_oracle(a, q)).collect();
    for q in a.state_ids() {
        for q2 in q + 1..a.num_states() {
            if ae[q][q2] && !(kernel[q] && kernel[q2]) {
                return Err(HyperMinimalityWitness::AlmostEquivalentPreamble(
                    name(q),
                    name(q2),
                ));
            }
        }
    }
    Ok(())
}
