//! Brute-force oracles: equivalence, almost-equivalence, hyper-minimality.

use wdta::fixtures::a_ex;
use wdta::hyperminimize::hyper_minimize;
use wdta::oracle::{almost_equivalence_oracle, hyper_minimality_check, states_equivalent_oracle};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = a_ex();
    let names = a.state_names();
    let ae = almost_equivalence_oracle(&a)?;
    for q in a.state_ids() {
        for r in q + 1..a.num_states() {
            let eq = states_equivalent_oracle(&a, q, r)
                .map_or("no".to_string(), |s| format!("factor {s}"));
            println!(
                "{} vs {}: equivalent {eq:10} almost-equivalent {}",
                names[q], names[r], ae[q][r]
            );
        }
    }

    match hyper_minimality_check(&a) {
        Ok(()) => println!("input is hyper-minimal"),
        Err(w) => println!("input is not hyper-minimal: {w}"),
    }
    let (h, _) = hyper_minimize(&a)?;
    println!(
        "output hyper-minimal: {}",
        hyper_minimality_check(&h).is_ok()
    );
    Ok(())
}
