//! Kernel, preamble, co-kernel and co-preamble states.

use wdta::fixtures::a_ex;
use wdta::topology::StateClassification;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = a_ex();
    let classes = StateClassification::compute(&a)?;
    let show = |set: &[bool]| a.state_set_names(set).join(",");
    println!("kernel     = {{{}}}", show(&classes.kernel));
    println!("preamble   = {{{}}}", show(&classes.preamble()));
    println!("cokernel   = {{{}}}", show(&classes.cokernel));
    println!("copreamble = {{{}}}", show(&classes.copreamble()));
    Ok(())
}
