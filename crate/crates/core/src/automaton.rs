//! Deterministic weighted tree automata.
//!
//! The transition table is stored sparsely. Every left-hand side that is not
//! stored goes to the designated sink with weight one, so an automaton with a
//! sink is total by construction. Without a sink every entry of `Σ(Q)` must be
//! stored.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::AutomatonError;
use crate::semifield::Semifield;
use crate::terms::{Context, Label, RankedAlphabet, StateId, SymbolId, Tree};

/// Left-hand side `σ(q₁,…,qₖ)` of a transition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lhs {
    pub symbol: SymbolId,
    pub children: Vec<StateId>,
}

impl Lhs {
    pub fn new(symbol: SymbolId, children: Vec<StateId>) -> Self {
        Lhs { symbol, children }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule<W> {
    pub target: StateId,
    pub weight: W,
}

/// A shallow transition context `σ(q₁,…,□,…,qₖ)`.
///
/// The derived order (symbol index, hole index, side states) is the fixed
/// total order on transition contexts used for signature normalization.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TransitionContext {
    pub symbol: SymbolId,
    /// Zero-based index of the hole among the children.
    pub hole: usize,
    /// The other children, left to right, without the hole.
    pub sides: Vec<StateId>,
}

impl TransitionContext {
    /// `c[q]` as a transition left-hand side.
    pub fn fill(&self, q: StateId) -> Lhs {
        let mut children = Vec::with_capacity(self.sides.len() + 1);
        children.extend_from_slice(&self.sides[..self.hole]);
        children.push(q);
        children.extend_from_slice(&self.sides[self.hole..]);
        Lhs::new(self.symbol, children)
    }

    /// The context obtained by punching a hole into `lhs` at `hole`.
    pub fn from_lhs(lhs: &Lhs, hole: usize) -> Self {
        let mut sides = lhs.children.clone();
        sides.remove(hole);
        TransitionContext {
            symbol: lhs.symbol,
            hole,
            sides,
        }
    }

    pub fn to_context(&self) -> Context {
        let mut children: Vec<Tree> = self.sides.iter().map(|&q| Tree::state(q)).collect();
        children.insert(self.hole, Tree::hole());
        Context::new(Tree::node(self.symbol, children)).expect("one hole by construction")
    }

    pub fn display<'a>(
        &'a self,
        alphabet: &'a RankedAlphabet,
        states: &'a [String],
    ) -> impl fmt::Display + 'a {
        struct D<'a>(&'a TransitionContext, &'a RankedAlphabet, &'a [String]);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.to_context().as_tree().display(self.1, self.2).fmt(f)
            }
        }
        D(self, alphabet, states)
    }
}

/// A well-formedness violation reported by [`Wdta::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    ZeroWeight(String),
    Arity(String),
    StateOutOfRange(String),
    Missing(String),
    FinalSink(String),
    SinkNotAbsorbing(String),
    DuplicateStateName(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroWeight(e) => write!(f, "zero weight at `{e}`"),
            Violation::Arity(e) => write!(f, "arity mismatch at `{e}`"),
            Violation::StateOutOfRange(e) => write!(f, "state out of range at `{e}`"),
            Violation::Missing(e) => write!(f, "totality: no transition for `{e}`"),
            Violation::FinalSink(s) => write!(f, "sink `{s}` is final"),
            Violation::SinkNotAbsorbing(e) => write!(f, "sink is not absorbing at `{e}`"),
            Violation::DuplicateStateName(s) => write!(f, "duplicate state name `{s}`"),
        }
    }
}

/// A total deterministic weighted tree automaton `(Q, Σ, δ, wt, F)`.
#[derive(Debug, Clone)]
pub struct Wdta<W> {
    alphabet: RankedAlphabet,
    states: Vec<String>,
    finals: Vec<bool>,
    sink: Option<StateId>,
    rules: HashMap<Lhs, Rule<W>>,
    unit: W,
}

/// Structural equality. A stored `(sink, 1)` entry equals an absent one.
impl<W: Semifield> PartialEq for Wdta<W> {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet
            && self.states == other.states
            && self.finals == other.finals
            && self.sink == other.sink
            && self
                .rules
                .keys()
                .chain(other.rules.keys())
                .all(|lhs| self.step_lhs(lhs) == other.step_lhs(lhs))
    }
}

impl<W: Semifield> Wdta<W> {
    pub fn new(alphabet: RankedAlphabet) -> Self {
        Wdta {
            alphabet,
            states: Vec::new(),
            finals: Vec::new(),
            sink: None,
            rules: HashMap::new(),
            unit: W::one(),
        }
    }

    pub fn add_state(&mut self, name: impl Into<String>) -> StateId {
        self.states.push(name.into());
        self.finals.push(false);
        self.states.len() - 1
    }

    pub fn set_final(&mut self, q: StateId, is_final: bool) {
        self.finals[q] = is_final;
    }

    pub fn set_sink(&mut self, sink: Option<StateId>) {
        self.sink = sink;
    }

    /// Stores `σ(children) → target @ weight`, returning any replaced rule.
    pub fn set_rule(
        &mut self,
        symbol: SymbolId,
        children: Vec<StateId>,
        target: StateId,
        weight: W,
    ) -> Option<Rule<W>> {
        self.rules
            .insert(Lhs::new(symbol, children), Rule { target, weight })
    }

    pub fn remove_rule(&mut self, lhs: &Lhs) -> Option<Rule<W>> {
        self.rules.remove(lhs)
    }

    pub fn alphabet(&self) -> &RankedAlphabet {
        &self.alphabet
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn state_name(&self, q: StateId) -> &str {
        &self.states[q]
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s == name)
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn state_ids(&self) -> std::ops::Range<StateId> {
        0..self.states.len()
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals[q]
    }

    pub fn finals(&self) -> impl Iterator<Item = StateId> + '_ {
        self.state_ids().filter(|&q| self.finals[q])
    }

    pub fn sink(&self) -> Option<StateId> {
        self.sink
    }

    pub fn rules(&self) -> impl Iterator<Item = (&Lhs, &Rule<W>)> + '_ {
        self.rules.iter()
    }

    /// Stored rules in canonical order (symbol, child tuple).
    /// Whether `lhs` is stored but identical to the `(sink, 1)` default.
    pub fn is_default_entry(&self, lhs: &Lhs) -> bool {
        match (self.rules.get(lhs), self.sink) {
            (Some(rule), Some(sink)) => rule.target == sink && rule.weight.is_one(),
            _ => false,
        }
    }

    pub fn sorted_rules(&self) -> Vec<(&Lhs, &Rule<W>)> {
        let mut rules: Vec<_> = self.rules.iter().collect();
        rules.sort_by(|a, b| a.0.cmp(b.0));
        rules
    }

    pub fn rule(&self, lhs: &Lhs) -> Option<&Rule<W>> {
        self.rules.get(lhs)
    }

    pub fn stored_len(&self) -> usize {
        self.rules.len()
    }

    /// `m = |Σ(Q)| = Σ_σ n^rk(σ)`, saturating.
    pub fn size(&self) -> u128 {
        let n = self.num_states() as u128;
        self.alphabet
            .iter()
            .map(|(_, _, rank)| pow_saturating(n, rank))
            .fold(0u128, u128::saturating_add)
    }

    /// `δ(σ(children))` and its weight, falling back to the sink.
    pub fn step(&self, symbol: SymbolId, children: &[StateId]) -> Option<(StateId, &W)> {
        let lhs = Lhs::new(symbol, children.to_vec());
        self.step_lhs(&lhs)
    }

    pub fn step_lhs(&self, lhs: &Lhs) -> Option<(StateId, &W)> {
        match self.rules.get(lhs) {
            Some(rule) => Some((rule.target, &rule.weight)),
            None => self.sink.map(|s| (s, &self.unit)),
        }
    }

    fn step_or_err(&self, lhs: &Lhs) -> Result<(StateId, &W), AutomatonError> {
        self.step_lhs(lhs).ok_or_else(|| {
            AutomatonError::Invalid(format!("no transition for `{}`", self.lhs_to_string(lhs)))
        })
    }

    pub fn lhs_to_string(&self, lhs: &Lhs) -> String {
        let mut s = self.alphabet.name(lhs.symbol).to_string();
        if !lhs.children.is_empty() {
            let names: Vec<&str> = lhs
                .children
                .iter()
                .map(|&q| self.states.get(q).map_or("?", String::as_str))
                .collect();
            s.push('(');
            s.push_str(&names.join(","));
            s.push(')');
        }
        s
    }

    /// `(δ̂(t), ŵt(t))`. State leaves evaluate to themselves with weight one.
    pub fn run(&self, t: &Tree) -> Result<(StateId, W), AutomatonError> {
        match t.label() {
            Label::State(q) => {
                if q >= self.num_states() {
                    return Err(AutomatonError::StateOutOfRange(q));
                }
                Ok((q, W::one()))
            }
            Label::Hole => Err(AutomatonError::Invalid(
                "cannot run on a tree containing a hole".into(),
            )),
            Label::Symbol(sym) => {
                if sym >= self.alphabet.len() {
                    return Err(AutomatonError::AlphabetMismatch(format!(
                        "symbol index {sym} not in alphabet"
                    )));
                }
                let mut children = Vec::with_capacity(t.children().len());
                let mut weight = W::one();
                for child in t.children() {
                    let (q, w) = self.run(child)?;
                    children.push(q);
                    weight = weight.times(&w);
                }
                let (target, w) = self.step_or_err(&Lhs::new(sym, children))?;
                Ok((target, w.times(&weight)))
            }
        }
    }

    /// The recognized weighted tree language at `t ∈ T_Σ`.
    pub fn semantics(&self, t: &Tree) -> Result<W, AutomatonError> {
        if t.has_state_leaf() {
            return Err(AutomatonError::StateLeaf(first_state_leaf(t, &self.states)));
        }
        let (q, w) = self.run(t)?;
        Ok(if self.finals[q] { w } else { W::zero() })
    }

    /// `sem_q(c)`: the weight of `c[q]` if it is accepted, else zero.
    pub fn context_semantics(&self, q: StateId, c: &Context) -> Result<W, AutomatonError> {
        if q >= self.num_states() {
            return Err(AutomatonError::StateOutOfRange(q));
        }
        let (target, w) = self.run(&c.plug(&Tree::state(q)))?;
        Ok(if self.finals[target] { w } else { W::zero() })
    }

    /// Checks every structural invariant; an empty list means well-formed.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.num_states();
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        for name in &self.states {
            if !seen.insert(name) {
                out.push(Violation::DuplicateStateName(name.clone()));
            }
        }
        for (lhs, rule) in self.sorted_rules() {
            let entry = self.lhs_to_string(lhs);
            if lhs.symbol >= self.alphabet.len()
                || self.alphabet.rank(lhs.symbol) != lhs.children.len()
            {
                out.push(Violation::Arity(entry));
                continue;
            }
            if rule.target >= n || lhs.children.iter().any(|&q| q >= n) {
                out.push(Violation::StateOutOfRange(entry));
                continue;
            }
            if rule.weight.is_zero() {
                out.push(Violation::ZeroWeight(entry.clone()));
            }
            if let Some(sink) = self.sink {
                if lhs.children.contains(&sink) && rule.target != sink {
                    out.push(Violation::SinkNotAbsorbing(entry));
                }
            }
        }
        match self.sink {
            Some(sink) if sink >= n => {
                out.push(Violation::StateOutOfRange(format!("sink #{sink}")))
            }
            Some(sink) if self.finals[sink] => {
                out.push(Violation::FinalSink(self.states[sink].clone()))
            }
            Some(_) => {}
            None => out.extend(self.missing_entries().into_iter().map(Violation::Missing)),
        }
        out
    }

    /// Names entries of `Σ(Q)` that are not stored (only meaningful without a sink).
    fn missing_entries(&self) -> Vec<String> {
        const ENUMERATION_LIMIT: u128 = 1_000_000;
        let n = self.num_states();
        let mut out = Vec::new();
        for (sym, _, rank) in self.alphabet.iter() {
            let expected = pow_saturating(n as u128, rank);
            let stored = self
                .rules
                .keys()
                .filter(|l| l.symbol == sym && l.children.iter().all(|&q| q < n))
                .count() as u128;
            if stored >= expected {
                continue;
            }
            if expected > ENUMERATION_LIMIT {
                out.push(format!(
                    "{} ({} of {} entries missing)",
                    self.alphabet.name(sym),
                    expected - stored,
                    expected
                ));
                continue;
            }
            for children in tuples(n, rank) {
                let lhs = Lhs::new(sym, children);
                if !self.rules.contains_key(&lhs) {
                    out.push(self.lhs_to_string(&lhs));
                }
            }
        }
        out
    }

    /// Returns an error naming the first violation, if any.
    pub fn check_valid(&self) -> Result<(), AutomatonError> {
        match self.validate().first() {
            None => Ok(()),
            Some(v) => Err(AutomatonError::Invalid(v.to_string())),
        }
    }

    /// States reachable by some tree of `T_Σ`, in a linear-time worklist pass.
    pub fn reachable(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut reached = vec![false; n];
        let rules: Vec<(&Lhs, &Rule<W>)> = self.rules.iter().collect();
        let mut pending: Vec<usize> = Vec::with_capacity(rules.len());
        let mut waiting: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut queue = Vec::new();
        for (i, (lhs, rule)) in rules.iter().enumerate() {
            let mut distinct = lhs.children.clone();
            distinct.sort_unstable();
            distinct.dedup();
            pending.push(distinct.len());
            for q in distinct {
                waiting[q].push(i);
            }
            if lhs.children.is_empty() && !reached[rule.target] {
                reached[rule.target] = true;
                queue.push(rule.target);
            }
        }
        while let Some(q) = queue.pop() {
            for &i in &waiting[q] {
                pending[i] -= 1;
                if pending[i] == 0 {
                    let target = rules[i].1.target;
                    if !reached[target] {
                        reached[target] = true;
                        queue.push(target);
                    }
                }
            }
        }
        if let Some(sink) = self.sink {
            if !reached[sink] && self.default_entry_fires(&reached) {
                reached[sink] = true;
            }
        }
        reached
    }

    /// Whether some unstored entry has only reachable children.
    fn default_entry_fires(&self, reached: &[bool]) -> bool {
        let live = reached.iter().filter(|&&r| r).count() as u128;
        self.alphabet.iter().any(|(sym, _, rank)| {
            let stored = self
                .rules
                .keys()
                .filter(|l| l.symbol == sym && l.children.iter().all(|&q| reached[q]))
                .count() as u128;
            stored < pow_saturating(live, rank)
        })
    }

    /// Removes states that no tree reaches. The sink is dropped too when
    /// unreachable, in which case every remaining entry is stored.
    pub fn trim(&self) -> Wdta<W> {
        let reached = self.reachable();
        let keep: Vec<StateId> = self.state_ids().filter(|&q| reached[q]).collect();
        self.restrict(&keep)
    }

    /// Keeps exactly the given states (in the given order), dropping entries
    /// that mention any other state.
    pub(crate) fn restrict(&self, keep: &[StateId]) -> Wdta<W> {
        let mut remap = vec![None; self.num_states()];
        let mut out = Wdta::new(self.alphabet.clone());
        for &q in keep {
            remap[q] = Some(out.add_state(self.states[q].clone()));
            out.finals[remap[q].unwrap()] = self.finals[q];
        }
        out.sink = self.sink.and_then(|s| remap[s]);
        for (lhs, rule) in &self.rules {
            let Some(target) = remap[rule.target] else {
                continue;
            };
            let children: Option<Vec<StateId>> = lhs.children.iter().map(|&q| remap[q]).collect();
            if let Some(children) = children {
                out.rules.insert(
                    Lhs::new(lhs.symbol, children),
                    Rule {
                        target,
                        weight: rule.weight.clone(),
                    },
                );
            }
        }
        out
    }

    /// `merge(q →ˢ q')`: removes `q`, redirecting every entry that targeted it
    /// to `q'` with weight `s ⊗ wt`.
    pub fn weighted_merge(
        &self,
        q: StateId,
        s: &W,
        into: StateId,
    ) -> Result<Wdta<W>, AutomatonError> {
        self.merge_many(&[(q, into, s.clone())])
    }

    /// Applies several weighted merges at once. Each `(from, into, s)` removes
    /// `from`; no `into` may itself be removed. Equivalent to applying the
    /// merges one after another.
    pub fn merge_many(&self, merges: &[(StateId, StateId, W)]) -> Result<Wdta<W>, AutomatonError> {
        let n = self.num_states();
        let mut redirect: Vec<Option<(StateId, W)>> = vec![None; n];
        for (from, into, s) in merges {
            let (from, into) = (*from, *into);
            if from >= n {
                return Err(AutomatonError::StateOutOfRange(from));
            }
            if into >= n {
                return Err(AutomatonError::StateOutOfRange(into));
            }
            if from == into {
                return Err(AutomatonError::SelfMerge(self.states[from].clone()));
            }
            if s.is_zero() {
                return Err(AutomatonError::ZeroMergeWeight);
            }
            if redirect[from].is_some() {
                return Err(AutomatonError::Inconsistent(format!(
                    "state `{}` merged twice",
                    self.states[from]
                )));
            }
            redirect[from] = Some((into, s.clone()));
        }
        if let Some((from, into, _)) = merges.iter().find(|(_, into, _)| redirect[*into].is_some())
        {
            return Err(AutomatonError::Inconsistent(format!(
                "`{}` is merged into `{}`, which is itself merged away",
                self.states[*from], self.states[*into]
            )));
        }
        let mut base = self.clone();
        if let Some(sink) = self.sink {
            if let Some((into, s)) = redirect[sink].clone() {
                // Default entries target the sink; make them explicit before it disappears.
                base.materialize_defaults()?;
                base.sink = if self.finals[into] { None } else { Some(into) };
                if base.sink.is_some() && !s.is_one() {
                    base.sink = None;
                }
            }
        }
        let mut out = Wdta::new(self.alphabet.clone());
        let mut remap = vec![None; n];
        for q in self.state_ids() {
            if redirect[q].is_none() {
                let id = out.add_state(self.states[q].clone());
                out.finals[id] = self.finals[q];
                remap[q] = Some(id);
            }
        }
        out.sink = base.sink.and_then(|s| remap[s]);
        for (lhs, rule) in &base.rules {
            let children: Option<Vec<StateId>> = lhs.children.iter().map(|&q| remap[q]).collect();
            let Some(children) = children else { continue };
            let (target, weight) = match &redirect[rule.target] {
                Some((into, s)) => (
                    remap[*into].expect("merge target survives"),
                    s.times(&rule.weight),
                ),
                None => (remap[rule.target].expect("kept"), rule.weight.clone()),
            };
            out.rules
                .insert(Lhs::new(lhs.symbol, children), Rule { target, weight });
        }
        Ok(out)
    }

    /// Stores every default entry explicitly and forgets the sink designation.
    pub fn materialize_defaults(&mut self) -> Result<(), AutomatonError> {
        const LIMIT: u128 = 1_000_000;
        let Some(sink) = self.sink else { return Ok(()) };
        if self.size() > LIMIT {
            return Err(AutomatonError::Resource(format!(
                "materializing {} table entries",
                self.size()
            )));
        }
        let n = self.num_states();
        let syms: Vec<(SymbolId, usize)> = self.alphabet.iter().map(|(s, _, r)| (s, r)).collect();
        for (sym, rank) in syms {
            for children in tuples(n, rank) {
                self.rules
                    .entry(Lhs::new(sym, children))
                    .or_insert_with(|| Rule {
                        target: sink,
                        weight: W::one(),
                    });
            }
        }
        self.sink = None;
        Ok(())
    }

    /// States `r ≠ q` with some transition context `c` such that `δ(c[r]) = q`.
    pub fn predecessors(&self, q: StateId) -> Vec<StateId> {
        let n = self.num_states();
        let mut is_pred = vec![false; n];
        for (lhs, rule) in &self.rules {
            if rule.target == q {
                for &r in &lhs.children {
                    is_pred[r] = true;
                }
            }
        }
        if self.sink == Some(q) {
            for r in self.state_ids() {
                if !is_pred[r] && self.has_default_with_child(r) {
                    is_pred[r] = true;
                }
            }
        }
        (0..n).filter(|&r| r != q && is_pred[r]).collect()
    }

    /// Whether some unstored entry has `r` among its children.
    pub(crate) fn has_default_with_child(&self, r: StateId) -> bool {
        if self.sink.is_none() {
            return false;
        }
        let n = self.num_states() as u128;
        self.alphabet.iter().any(|(sym, _, rank)| {
            if rank == 0 {
                return false;
            }
            let containing = pow_saturating(n, rank) - pow_saturating(n - 1, rank);
            let stored = self
                .rules
                .keys()
                .filter(|l| l.symbol == sym && l.children.contains(&r))
                .count() as u128;
            stored < containing
        })
    }

    /// Every transition context of `C_δ`, in the fixed order.
    pub fn transition_contexts(&self) -> Vec<TransitionContext> {
        let n = self.num_states();
        let mut out = Vec::new();
        for (sym, _, rank) in self.alphabet.iter() {
            for hole in 0..rank {
                for sides in tuples(n, rank - 1) {
                    out.push(TransitionContext {
                        symbol: sym,
                        hole,
                        sides,
                    });
                }
            }
        }
        out
    }

    pub fn state_set_names(&self, set: &[bool]) -> Vec<&str> {
        self.state_ids()
            .filter(|&q| set[q])
            .map(|q| self.state_name(q))
            .collect()
    }
}

fn first_state_leaf(t: &Tree, states: &[String]) -> String {
    if let Label::State(q) = t.label() {
        return states.get(q).cloned().unwrap_or_else(|| format!("#{q}"));
    }
    t.children()
        .iter()
        .find(|c| c.has_state_leaf())
        .map(|c| first_state_leaf(c, states))
        .unwrap_or_default()
}

pub(crate) fn pow_saturating(base: u128, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}

/// All `len`-tuples over `0..n` in lexicographic order.
pub(crate) fn tuples(n: usize, len: usize) -> impl Iterator<Item = Vec<StateId>> {
    let mut current = if len == 0 || n > 0 {
        Some(vec![0; len])
    } else {
        None
    };
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let mut next = out.clone();
        let mut i = len;
        loop {
            if i == 0 {
                current = None;
                break;
            }
            i -= 1;
            next[i] += 1;
            if next[i] < n {
                current = Some(next);
                break;
            }
            next[i] = 0;
        }
        Some(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::a_ex;
    use crate::semifield::{Boolean, Rational};
    use crate::terms::parse_term;

    fn term(a: &Wdta<Rational>, text: &str) -> Tree {
        parse_term(text, a.alphabet(), a.state_names()).unwrap()
    }

    fn ctx(a: &Wdta<Rational>, text: &str) -> Context {
        Context::new(term(a, text)).unwrap()
    }

    fn id(a: &Wdta<Rational>, name: &str) -> StateId {
        a.state_id(name).unwrap()
    }

    #[test]
    fn tuples_enumerate_lexicographically() {
        let all: Vec<_> = tuples(2, 2).collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(tuples(3, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
        assert_eq!(tuples(0, 1).count(), 0);
    }

    #[test]
    fn fixture_is_valid() {
        assert_eq!(a_ex().validate(), vec![]);
        assert_eq!(a_ex().size(), 10);
    }

    #[test]
    fn zero_weight_is_a_violation() {
        let mut a = a_ex();
        let sym = a.alphabet().lookup("a").unwrap();
        let p = id(&a, "p");
        a.set_rule(sym, vec![], p, Rational::integer(0));
        assert_eq!(a.validate(), vec![Violation::ZeroWeight("a".into())]);
    }

    #[test]
    fn missing_entry_without_sink_is_a_violation() {
        let mut a = a_ex();
        let g = a.alphabet().lookup("g").unwrap();
        a.remove_rule(&Lhs::new(g, vec![id(&a, "p")]));
        a.set_sink(None);
        assert_eq!(a.validate(), vec![Violation::Missing("g(p)".into())]);
    }

    #[test]
    fn run_examples() {
        let a = a_ex();
        assert_eq!(
            a.run(&term(&a, "g(g(a))")).unwrap(),
            (id(&a, "r"), Rational::integer(2))
        );
        assert_eq!(
            a.run(&term(&a, "p")).unwrap(),
            (id(&a, "p"), Rational::integer(1))
        );
        assert_eq!(
            a.run(&term(&a, "h(b)")).unwrap(),
            (id(&a, "bot"), Rational::integer(1))
        );
    }

    #[test]
    fn semantics_examples() {
        let a = a_ex();
        assert_eq!(a.semantics(&term(&a, "a")).unwrap(), Rational::integer(1));
        assert_eq!(a.semantics(&term(&a, "b")).unwrap(), Rational::integer(0));
        assert_eq!(
            a.semantics(&term(&a, "g(b)")).unwrap(),
            Rational::integer(1)
        );
        assert_eq!(
            a.semantics(&term(&a, "g(p)")),
            Err(AutomatonError::StateLeaf("p".into()))
        );
    }

    #[test]
    fn context_semantics_examples() {
        let a = a_ex();
        let (p, q) = (id(&a, "p"), id(&a, "q"));
        assert_eq!(
            a.context_semantics(p, &Context::hole()).unwrap(),
            Rational::integer(1)
        );
        assert_eq!(
            a.context_semantics(p, &ctx(&a, "g([])")).unwrap(),
            Rational::integer(2)
        );
        assert_eq!(
            a.context_semantics(q, &ctx(&a, "h([])")).unwrap(),
            Rational::integer(0)
        );
        assert!(a.context_semantics(99, &Context::hole()).is_err());
    }

    #[test]
    fn trim_removes_isolated_state_and_is_idempotent() {
        let a = a_ex();
        assert_eq!(a.trim(), a);
        let mut b = a.clone();
        b.add_state("x");
        let trimmed = b.trim();
        assert_eq!(trimmed, a);
        assert_eq!(trimmed.trim(), trimmed);
    }

    #[test]
    fn trim_drops_unreachable_sink() {
        let sigma = RankedAlphabet::from_symbols([("a", 0)]).unwrap();
        let mut a: Wdta<Rational> = Wdta::new(sigma);
        let p = a.add_state("p");
        let s = a.add_state("sink");
        a.set_sink(Some(s));
        a.set_rule(0, vec![], p, Rational::integer(3));
        let t = a.trim();
        assert_eq!(t.num_states(), 1);
        assert_eq!(t.sink(), None);
        assert!(t.validate().is_empty());
    }

    #[test]
    fn weighted_merge_example() {
        let a = a_ex();
        let merged = a
            .weighted_merge(id(&a, "q"), &Rational::new(1, 2), id(&a, "p"))
            .unwrap();
        assert_eq!(merged.state_names(), &["p", "r", "bot"]);
        let b = merged.alphabet().lookup("b").unwrap();
        assert_eq!(
            merged.step(b, &[]).map(|(t, w)| (t, w.clone())),
            Some((0, Rational::new(1, 2)))
        );
        assert_eq!(merged.stored_len(), 8);
        assert!(merged.validate().is_empty());
        assert!(matches!(
            a.weighted_merge(0, &Rational::integer(1), 0),
            Err(AutomatonError::SelfMerge(_))
        ));
        assert_eq!(
            a.weighted_merge(0, &Rational::integer(0), 1),
            Err(AutomatonError::ZeroMergeWeight)
        );
    }

    #[test]
    fn merging_sequentially_matches_batch() {
        let a = a_ex();
        let (p, q, r) = (id(&a, "p"), id(&a, "q"), id(&a, "r"));
        let batch = a
            .merge_many(&[(q, r, Rational::new(1, 3)), (p, r, Rational::integer(5))])
            .unwrap();
        let first = a.weighted_merge(q, &Rational::new(1, 3), r).unwrap();
        let second = first
            .weighted_merge(
                first.state_id("p").unwrap(),
                &Rational::integer(5),
                first.state_id("r").unwrap(),
            )
            .unwrap();
        assert_eq!(batch, second);
    }

    #[test]
    fn merging_away_the_sink_materializes_defaults() {
        let sigma = RankedAlphabet::from_symbols([("a", 0), ("b", 0), ("g", 1)]).unwrap();
        let mut a: Wdta<Rational> = Wdta::new(sigma);
        let p = a.add_state("p");
        let s = a.add_state("s");
        let x = a.add_state("x");
        a.set_sink(Some(s));
        a.set_final(p, true);
        a.set_rule(0, vec![], p, Rational::integer(2));
        a.set_rule(1, vec![], x, Rational::integer(1));
        let merged = a.weighted_merge(s, &Rational::integer(3), x).unwrap();
        assert!(merged.validate().is_empty());
        let g = Tree::node(2, vec![Tree::leaf(0)]);
        assert_eq!(merged.run(&g).unwrap(), (1, Rational::integer(6)));
    }

    #[test]
    fn predecessors_examples() {
        let a = a_ex();
        let names = |v: Vec<StateId>| {
            v.into_iter()
                .map(|q| a.state_name(q).to_string())
                .collect::<Vec<_>>()
        };
        assert_eq!(names(a.predecessors(id(&a, "r"))), vec!["p", "q"]);
        assert_eq!(names(a.predecessors(id(&a, "p"))), Vec::<String>::new());
        assert_eq!(names(a.predecessors(id(&a, "bot"))), vec!["p", "q"]);
    }

    #[test]
    fn transition_context_order_and_fill() {
        let a = a_ex();
        let contexts = a.transition_contexts();
        assert_eq!(contexts.len(), 2);
        assert!(contexts.windows(2).all(|w| w[0] < w[1]));
        let c = TransitionContext {
            symbol: 0,
            hole: 1,
            sides: vec![7, 9],
        };
        assert_eq!(c.fill(3).children, vec![7, 3, 9]);
        assert_eq!(TransitionContext::from_lhs(&c.fill(3), 1), c);
    }

    #[test]
    fn boolean_run_is_classical_acceptance() {
        let sigma = RankedAlphabet::from_symbols([("a", 0), ("g", 1)]).unwrap();
        let mut a: Wdta<Boolean> = Wdta::new(sigma);
        let even = a.add_state("even");
        let odd = a.add_state("odd");
        a.set_final(even, true);
        a.set_rule(0, vec![], even, Boolean(true));
        a.set_rule(1, vec![even], odd, Boolean(true));
        a.set_rule(1, vec![odd], even, Boolean(true));
        let mut t = Tree::leaf(0);
        for depth in 0..6 {
            assert_eq!(a.semantics(&t).unwrap(), Boolean(depth % 2 == 0));
            t = Tree::node(1, vec![t]);
        }
    }
}
