//! Exhaustive comparison of two automata up to a height bound.

use wdta::fixtures::a_ex;
use wdta::hyperminimize::hyper_minimize;
use wdta::oracle::{compare_languages, ReportDisplay};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = a_ex();
    let (h, _) = hyper_minimize(&a)?;
    let report = compare_languages(&a, &h, 6, 3)?;
    print!(
        "{}",
        ReportDisplay {
            report: &report,
            automaton: &a
        }
    );
    println!("clean = {}", report.is_clean());
    Ok(())
}
