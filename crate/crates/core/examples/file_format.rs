//! Parsing without knowing the weight kind, and canonical serialization.

use wdta::format::{parse_automaton, AnyWdta};
use wdta::with_any_wdta;

const MESSY: &str = "
semifield max-times   # weights are nonnegative rationals
sig f 2
sig c 0
state x y
sink y
final x
trans f(x,x) -> x @ 1/2
trans c -> x @ 3
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let any = parse_automaton(MESSY)?;
    println!("kind = {}", any.kind());
    let states = with_any_wdta!(&any, a => a.num_states());
    println!("states = {states}");
    let canonical = any.serialize();
    print!("{canonical}");

    // Canonical text parses back to the same automaton.
    let again = parse_automaton(&canonical)?;
    assert_eq!(again.serialize(), canonical);
    if let AnyWdta::MaxTimes(a) = again {
        println!("size = {}", a.size());
    }

    let err =
        parse_automaton("semifield rational\nsig a 0\nstate p\ntrans a -> p @ 0\n").unwrap_err();
    println!("rejected: {err}");
    Ok(())
}
