//! Runs the fixture automaton on a few trees and contexts.

use wdta::fixtures::a_ex;
use wdta::{parse_context, parse_term};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = a_ex();
    for text in ["a", "b", "g(a)", "g(b)", "g(g(a))", "h(a)", "h(g(b))"] {
        let t = parse_term(text, a.alphabet(), a.state_names())?;
        let (state, weight) = a.run(&t)?;
        println!(
            "{text:10} run ends in {:4} weight {weight:>3}  [[A]] = {}",
            a.state_name(state),
            a.semantics(&t)?
        );
    }

    // Contexts can be evaluated from any state: here from p and q.
    let c = parse_context("g([])", a.alphabet(), a.state_names())?;
    for q in ["p", "q"] {
        let id = a.state_id(q).expect("fixture state");
        println!("sem_{q}(g(□)) = {}", a.context_semantics(id, &c)?);
    }
    Ok(())
}
