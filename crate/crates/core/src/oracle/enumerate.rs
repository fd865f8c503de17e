//! Exhaustive enumeration of trees and contexts by height.

use crate::automaton::{pow_saturating, tuples};
use crate::error::AutomatonError;
use crate::terms::{Context, RankedAlphabet, Tree};

/// Upper bound on the number of trees or contexts materialized at once.
pub const NODE_BUDGET: usize = 1_000_000;

fn over_budget(what: &str) -> AutomatonError {
    AutomatonError::Resource(format!("{what} enumeration exceeds {NODE_BUDGET} items"))
}

/// Every tree of `T_Σ` with height at most `max_height`, ordered by height
/// and then by the structural order on trees. Empty without nullary symbols.
pub fn enumerate_trees(
    sigma: &RankedAlphabet,
    max_height: usize,
) -> Result<Vec<Tree>, AutomatonError> {
    let mut all: Vec<Tree> = Vec::new();
    // layers[h] = start index of height h in `all`.
    let mut layer_start = vec![0usize];
    for (sym, _, rank) in sigma.iter() {
        if rank == 0 {
            all.push(Tree::leaf(sym));
        }
    }
    all.sort();
    for h in 1..=max_height {
        let prev_start = layer_start[h - 1];
        let below = all.len();
        layer_start.push(below);
        let mut layer = Vec::new();
        for (sym, _, rank) in sigma.iter() {
            if rank == 0 {
                continue;
            }
            // Child tuples over trees of height < h with at least one of height h - 1.
            let fresh =
                pow_saturating(below as u128, rank) - pow_saturating(prev_start as u128, rank);
            if fresh.saturating_add((all.len() + layer.len()) as u128) > NODE_BUDGET as u128 {
                return Err(over_budget("tree"));
            }
            for idx in tuples(below, rank) {
                if idx.iter().any(|&i| i >= prev_start) {
                    layer.push(Tree::node(
                        sym,
                        idx.iter().map(|&i| all[i].clone()).collect(),
                    ));
                }
            }
        }
        layer.sort();
        all.extend(layer);
    }
    Ok(all)
}

/// Every context of height at most `max_height` whose side subtrees are
/// drawn from `sides`, ordered by height and then structurally.
pub fn enumerate_contexts(
    sigma: &RankedAlphabet,
    max_height: usize,
    sides: &[Tree],
) -> Result<Vec<Context>, AutomatonError> {
    let mut current: Vec<Context> = vec![Context::hole()];
    for _ in 0..max_height {
        let mut next = vec![Context::hole()];
        for inner in &current {
            for (sym, _, rank) in sigma.iter() {
                if rank == 0 {
                    continue;
                }
                for hole in 0..rank {
                    for choice in tuples(sides.len(), rank - 1) {
                        let mut children: Vec<Tree> =
                            choice.iter().map(|&i| sides[i].clone()).collect();
                        children.insert(hole, inner.as_tree().clone());
                        let tree = Tree::node(sym, children);
                        if tree.height() <= max_height {
                            next.push(Context::new(tree).expect("one hole"));
                            if next.len() > NODE_BUDGET {
                                return Err(over_budget("context"));
                            }
                        }
                    }
                }
            }
        }
        current = next;
    }
    current.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::parse_term;

    fn show(sigma: &RankedAlphabet, trees: &[Tree]) -> Vec<String> {
        trees
            .iter()
            .map(|t| t.display(sigma, &[]).to_string())
            .collect()
    }

    #[test]
    fn tree_examples() {
        let s = RankedAlphabet::from_symbols([("a", 0)]).unwrap();
        assert_eq!(show(&s, &enumerate_trees(&s, 2).unwrap()), vec!["a"]);
        let s = RankedAlphabet::from_symbols([("a", 0), ("g", 1)]).unwrap();
        assert_eq!(
            show(&s, &enumerate_trees(&s, 2).unwrap()),
            vec!["a", "g(a)", "g(g(a))"]
        );
        let s = RankedAlphabet::from_symbols([("a", 0), ("s", 2)]).unwrap();
        assert_eq!(
            show(&s, &enumerate_trees(&s, 1).unwrap()),
            vec!["a", "s(a,a)"]
        );
        let s = RankedAlphabet::from_symbols([("g", 1)]).unwrap();
        assert!(enumerate_trees(&s, 3).unwrap().is_empty());
    }

    #[test]
    fn binary_counts_follow_the_recurrence() {
        // T(h) = number of trees of height ≤ h over {a/0, s/2}: T(h) = 1 + T(h-1)².
        let s = RankedAlphabet::from_symbols([("a", 0), ("s", 2)]).unwrap();
        let trees = enumerate_trees(&s, 3).unwrap();
        assert_eq!(trees.len(), 26);
        assert!(trees.windows(2).all(|w| w[0].height() <= w[1].height()));
    }

    #[test]
    fn context_examples() {
        let s = RankedAlphabet::from_symbols([("a", 0), ("g", 1)]).unwrap();
        let a = parse_term("a", &s, &[]).unwrap();
        let cs = enumerate_contexts(&s, 1, std::slice::from_ref(&a)).unwrap();
        let shown: Vec<String> = cs
            .iter()
            .map(|c| c.as_tree().display(&s, &[]).to_string())
            .collect();
        assert_eq!(shown, vec!["[]", "g([])"]);
        assert_eq!(enumerate_contexts(&s, 0, &[a]).unwrap().len(), 1);
        let s = RankedAlphabet::from_symbols([("a", 0), ("s", 2)]).unwrap();
        let a = parse_term("a", &s, &[]).unwrap();
        let cs = enumerate_contexts(&s, 1, &[a]).unwrap();
        let mut shown: Vec<String> = cs
            .iter()
            .map(|c| c.as_tree().display(&s, &[]).to_string())
            .collect();
        shown.sort();
        assert_eq!(shown, vec!["[]", "s([],a)", "s(a,[])"]);
    }
}
