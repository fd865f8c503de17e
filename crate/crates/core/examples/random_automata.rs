//! Seeded random automata and the chain family used for scaling runs.

use wdta::hyperminimize::hyper_minimize;
use wdta::oracle::{chain_family, random_wdta, RandomSpec};
use wdta::{Tropical, Wdta};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = RandomSpec {
        clone_rate: 0.7,
        ..RandomSpec::default()
    };
    for seed in 0..8 {
        let a: Wdta<Tropical> = random_wdta(seed, &spec);
        let (h, report) = hyper_minimize(&a)?;
        println!(
            "seed {seed}: {} states, minimal {}, hyper-minimal {}",
            a.num_states(),
            report.minimal.num_states(),
            h.num_states()
        );
    }

    // Every state of the chain is almost-equivalent to the final loop.
    for n in [8, 64, 512] {
        let (h, report) = hyper_minimize(&chain_family(n, 1))?;
        let worst = report
            .almost_equivalence
            .representative_changes
            .iter()
            .max()
            .copied()
            .unwrap_or(0);
        println!(
            "chain n = {n}: {} state(s) left, at most {worst} representative changes",
            h.num_states()
        );
    }
    Ok(())
}
