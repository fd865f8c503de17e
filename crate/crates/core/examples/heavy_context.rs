//! Why a state that reaches a near-copy through a context with a kernel
//! side state cannot be merged.
//!
//! q0 and c2 are kernel states that agree everywhere except the empty
//! context. The preamble state c0 reaches c2 through b(□, t) and q0 reaches
//! q0 the same way; infinitely many trees t reach q0, so that one exception
//! becomes infinitely many differences between c0 and q0.

use wdta::format::parse_typed;
use wdta::hyperminimize::{compute_almost_equivalence, hyper_minimize};
use wdta::oracle::{almost_equivalence_oracle, compare_languages};
use wdta::topology::StateClassification;
use wdta::Tropical;

const TEXT: &str = "\
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

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = parse_typed::<Tropical>(TEXT)?;
    let classes = StateClassification::compute(&a)?;
    let ae = compute_almost_equivalence(&a, &classes)?;
    let oracle = almost_equivalence_oracle(&a)?;
    for block in &ae.blocks {
        let names: Vec<&str> = block.iter().map(|&q| a.state_name(q)).collect();
        println!("block {{{}}}", names.join(","));
    }
    println!("oracle: q0 ≈ c2 {}, q0 ≈ c0 {}", oracle[0][2], oracle[0][1]);

    let (h, _) = hyper_minimize(&a)?;
    let report = compare_languages(&a, &h, 6, 3)?;
    println!(
        "{} states kept, clean = {}",
        h.num_states(),
        report.is_clean()
    );
    Ok(())
}
