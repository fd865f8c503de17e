use wdta::format::parse_typed;
use wdta::hyperminimize::{compute_almost_equivalence, hyper_minimize};
use wdta::minimize::minimize;
use wdta::oracle::{
    almost_equivalence_oracle, chain_family, compare_languages, hyper_minimality_check,
    random_wdta, RandomSpec,
};
use wdta::topology::StateClassification;
use wdta::{Rational, Semifield, Tropical, Wdta};

// q0 and c2 are kernel states that agree everywhere except at the empty
// context. c0 reaches c2 through b(□, t) for every t reaching q0, so the
// single exception of c2 turns into infinitely many for c0: c0 must stay.
const HEAVY: &str = "\
semifield tropical
sig a 0
sig b 2
state q0 c0 c2
final q0
trans a -> c0 @ -3
trans b(q0,q0) -> q0 @ 2
trans b(q0,c0) -> q0 @ 3
trans b(q0,c2) -> q0 @ 4
trans b(c0,q0) -> c2 @ 1
trans b(c0,c0) -> q0 @ 4
trans b(c0,c2) -> c2 @ 3
trans b(c2,q0) -> q0 @ 4
trans b(c2,c0) -> q0 @ 5
trans b(c2,c2) -> q0 @ 6
";

#[test]
fn heavy_context_blocks_merge() {
    let a: Wdta<Tropical> = parse_typed(HEAVY).unwrap();
    assert_eq!(minimize(&a).unwrap(), a);
    let classes = StateClassification::compute(&a).unwrap();
    assert_eq!(classes.kernel, vec![true, false, true]);
    let ae = compute_almost_equivalence(&a, &classes).unwrap();
    assert_eq!(ae.blocks, vec![vec![0, 2], vec![1]]);

    let oracle = almost_equivalence_oracle(&a).unwrap();
    assert!(oracle[0][2]);
    assert!(!oracle[0][1] && !oracle[1][2]);

    let (h, _) = hyper_minimize(&a).unwrap();
    assert_eq!(h.num_states(), 3);
    assert!(compare_languages(&a, &h, 6, 3).unwrap().is_clean());
}

#[test]
fn chain_family_collapses() {
    for n in [2, 5, 17, 64] {
        let a = chain_family(n, n as u64);
        let (h, report) = hyper_minimize(&a).unwrap();
        assert_eq!(h.num_states(), 1, "n = {n}");
        let bound = (n as f64).log2().ceil() as u32;
        assert!(report
            .almost_equivalence
            .representative_changes
            .iter()
            .all(|&c| c <= bound));
    }
}

fn blocks_match_oracle<W: Semifield>(spec: &RandomSpec, seeds: std::ops::Range<u64>) {
    for seed in seeds {
        let m = minimize(&random_wdta::<W>(seed, spec)).unwrap();
        let classes = StateClassification::compute(&m).unwrap();
        let ae = compute_almost_equivalence(&m, &classes).unwrap();
        let oracle = almost_equivalence_oracle(&m).unwrap();
        for q in m.state_ids() {
            for r in m.state_ids() {
                assert_eq!(
                    ae.block_of[q] == ae.block_of[r],
                    oracle[q][r],
                    "seed {seed}, states {q} {r}"
                );
            }
        }
        let (h, _) = hyper_minimize(&m).unwrap();
        assert!(hyper_minimality_check(&h).is_ok(), "seed {seed}");
    }
}

#[test]
fn blocks_match_oracle_on_clone_heavy_inputs() {
    let spec = RandomSpec {
        clone_rate: 0.7,
        max_states: 6,
        ..RandomSpec::default()
    };
    blocks_match_oracle::<Rational>(&spec, 0..300);
    blocks_match_oracle::<Tropical>(&spec, 0..300);
}

#[test]
fn blocks_match_oracle_on_unary_inputs() {
    let spec = RandomSpec {
        max_symbols: 4,
        max_rank: 1,
        clone_rate: 0.6,
        max_states: 7,
        ..RandomSpec::default()
    };
    blocks_match_oracle::<Rational>(&spec, 0..300);
}
