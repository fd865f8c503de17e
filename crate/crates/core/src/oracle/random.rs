//! Seeded random automata for fuzzing and scaling experiments.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automaton::{tuples, Lhs, Wdta};
use crate::semifield::{Rational, Semifield};
use crate::terms::{RankedAlphabet, StateId};

/// Size bounds and shape knobs for [`random_wdta`].
#[derive(Debug, Clone, PartialEq)]
pub struct RandomSpec {
    pub max_states: usize,
    pub max_symbols: usize,
    pub max_rank: usize,
    /// Probability of designating a sink.
    pub sink_probability: f64,
    /// With a sink, probability that an entry over non-sink states is stored.
    pub density: f64,
    /// Probability per state of adding a scaled copy with flipped finality,
    /// which tends to create almost-equivalent preamble pairs.
    pub clone_rate: f64,
}

impl Default for RandomSpec {
    fn default() -> Self {
        RandomSpec {
            max_states: 5,
            max_symbols: 3,
            max_rank: 2,
            sink_probability: 0.5,
            density: 0.8,
            clone_rate: 0.3,
        }
    }
}

const NAMES: [&str; 8] = ["a", "b", "g", "h", "s", "t", "u", "v"];

/// A random total automaton, trimmed, fully determined by `seed`.
pub fn random_wdta<W: Semifield>(seed: u64, spec: &RandomSpec) -> Wdta<W> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let num_symbols = rng.gen_range(1..=spec.max_symbols.clamp(1, NAMES.len()));
    let mut sigma = RankedAlphabet::new();
    for (i, name) in NAMES.iter().enumerate().take(num_symbols) {
        let rank = if i == 0 {
            0
        } else {
            rng.gen_range(0..=spec.max_rank)
        };
        sigma.add(*name, rank).expect("distinct names");
    }
    let total = rng.gen_range(1..=spec.max_states.max(1));
    let with_sink = total >= 2 && rng.gen_bool(spec.sink_probability);
    let mut base = total - usize::from(with_sink);
    let mut clones = 0;
    while clones + 1 < base && rng.gen_bool(spec.clone_rate) {
        clones += 1;
    }
    base -= clones;

    // Base table over the first `base` states: target and weight, or None for the sink.
    let mut a: Wdta<W> = Wdta::new(sigma.clone());
    for i in 0..base {
        let q = a.add_state(format!("q{i}"));
        a.set_final(q, rng.gen_bool(0.5));
    }
    let pick_target = |rng: &mut ChaCha8Rng| rng.gen_range(0..base);
    let mut table: Vec<(Lhs, Option<(StateId, W)>)> = Vec::new();
    for (sym, _, rank) in sigma.iter() {
        for children in tuples(base, rank) {
            let stored = !with_sink || rng.gen_bool(spec.density);
            let rule = stored.then(|| (pick_target(&mut rng), W::sample_nonzero(&mut rng)));
            table.push((Lhs::new(sym, children), rule));
        }
    }

    // Clones: copy `origin` with a scaling factor and flipped finality.
    let mut origin: Vec<StateId> = (0..base).collect();
    let mut scale: Vec<W> = vec![W::one(); base];
    for i in 0..clones {
        let from = rng.gen_range(0..base);
        let q = a.add_state(format!("c{i}"));
        a.set_final(q, !a.is_final(from));
        origin.push(from);
        scale.push(W::sample_nonzero(&mut rng));
    }
    let n = base + clones;
    let sink = with_sink.then(|| {
        let s = a.add_state("bot");
        a.set_sink(Some(s));
        s
    });
    let lookup: std::collections::HashMap<Lhs, Option<(StateId, W)>> = table.into_iter().collect();
    for (sym, _, rank) in sigma.iter() {
        for children in tuples(n, rank) {
            let base_children: Vec<StateId> = children.iter().map(|&c| origin[c]).collect();
            let Some(Some((target, w))) = lookup.get(&Lhs::new(sym, base_children)) else {
                continue;
            };
            let mut weight = w.clone();
            for &c in &children {
                weight = weight.times(&scale[c]);
            }
            let mut target = *target;
            if clones > 0 && rng.gen_bool(0.5) {
                // Redirect to a clone of the target, compensating its scale.
                let copies: Vec<StateId> = (base..n).filter(|&c| origin[c] == target).collect();
                if !copies.is_empty() {
                    let c = copies[rng.gen_range(0..copies.len())];
                    weight = weight.divide(&scale[c]).expect("nonzero scale");
                    target = c;
                }
            }
            a.set_rule(sym, children, target, weight);
        }
    }
    if let Some(s) = sink {
        debug_assert!(!a.is_final(s));
    }
    a.trim()
}

/// A unary chain whose states all collapse under hyper-minimization.
///
/// States `x1 … x(n-1)` and a final looping `k`. With `wi ∈ {2, 1/2}` drawn
/// at random and `Pi = wi ⊗ … ⊗ w(n-1)`: `a → x1`, `g(xi) → x(i+1) @ wi`,
/// `g(x(n-1)) → k @ w(n-1)` and `h(xi) → k @ Pi`. Each `xi` is a preamble
/// state with `sem_xi = Pi ⊗ sem_k` on all contexts but `□`.
pub fn chain_family(n: usize, seed: u64) -> Wdta<Rational> {
    assert!(n >= 2, "the chain family needs at least two states");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sigma =
        RankedAlphabet::from_symbols([("a", 0), ("g", 1), ("h", 1)]).expect("valid alphabet");
    let mut a: Wdta<Rational> = Wdta::new(sigma);
    let xs: Vec<StateId> = (1..n).map(|i| a.add_state(format!("x{i}"))).collect();
    let k = a.add_state("k");
    a.set_final(k, true);
    let weights: Vec<Rational> = xs
        .iter()
        .map(|_| {
            if rng.gen_bool(0.5) {
                Rational::integer(2)
            } else {
                Rational::new(1, 2)
            }
        })
        .collect();
    a.set_rule(0, vec![], xs[0], Rational::integer(1));
    let mut product = Rational::integer(1);
    for (i, &x) in xs.iter().enumerate().rev() {
        product = product.times(&weights[i]);
        let next = xs.get(i + 1).copied().unwrap_or(k);
        a.set_rule(1, vec![x], next, weights[i].clone());
        a.set_rule(2, vec![x], k, product.clone());
    }
    a.set_rule(1, vec![k], k, Rational::integer(1));
    a.set_rule(2, vec![k], k, Rational::integer(1));
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semifield::Boolean;

    #[test]
    fn generation_is_deterministic_and_valid() {
        let spec = RandomSpec::default();
        for seed in 0..50 {
            let a: Wdta<Rational> = random_wdta(seed, &spec);
            assert_eq!(a, random_wdta(seed, &spec));
            assert!(a.validate().is_empty(), "seed {seed}: {:?}", a.validate());
            assert_eq!(a.trim(), a);
            assert!(a.num_states() <= spec.max_states);
        }
    }

    #[test]
    fn nullary_only_bounds() {
        let spec = RandomSpec {
            max_rank: 0,
            ..RandomSpec::default()
        };
        let a: Wdta<Boolean> = random_wdta(3, &spec);
        assert!(a.alphabet().iter().all(|(_, _, r)| r == 0));
        assert!(a.rules().all(|(_, r)| r.weight == Boolean(true)));
    }

    #[test]
    fn chain_family_shape() {
        let a = chain_family(8, 1);
        assert_eq!(a.num_states(), 8);
        assert!(a.validate().is_empty());
        assert_eq!(a.size(), 1 + 8 + 8);
        let (h, _) = crate::hyperminimize::hyper_minimize(&a).unwrap();
        assert_eq!(h.num_states(), 1);
    }
}
