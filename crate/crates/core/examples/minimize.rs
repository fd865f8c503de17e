//! Lossless minimization removes an equivalent copy of a state.

use wdta::fixtures::a_ex_with_clone;
use wdta::format::serialize_automaton;
use wdta::minimize::minimize;
use wdta::oracle::compare_languages;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // p2 behaves exactly like p, so the minimal automaton drops it.
    let a = a_ex_with_clone(1);
    let m = minimize(&a)?;
    println!("{} states -> {} states", a.num_states(), m.num_states());
    print!("{}", serialize_automaton(&m));

    let report = compare_languages(&a, &m, 5, 2)?;
    println!("mismatches up to height 5: {}", report.total());

    // Scaling only the g-weight of p2 breaks equivalence: p and p2 agree on
    // the empty context but differ by a factor 3 under g, so both stay.
    let scaled = a_ex_with_clone(3);
    println!(
        "scaled clone: {} states after minimization",
        minimize(&scaled)?.num_states()
    );
    Ok(())
}
