//! Hyper-minimization of the fixture, loaded from the text format.

use wdta::format::{parse_typed, serialize_automaton};
use wdta::hyperminimize::hyper_minimize;
use wdta::Rational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = include_str!("data/a_ex.wta");
    let a = parse_typed::<Rational>(text)?;
    let (h, report) = hyper_minimize(&a)?;
    print!("{report}");
    println!();
    print!("{}", serialize_automaton(&h));
    Ok(())
}
