//! The same operations in each weight structure.

use wdta::{Boolean, MaxTimes, Rational, Semifield, Tropical, TropicalFloat};

fn show<W: Semifield>(x: &str, y: &str) -> Result<(), Box<dyn std::error::Error>> {
    let (a, b) = (W::parse_weight(x)?, W::parse_weight(y)?);
    println!(
        "{:15} {x} ⊕ {y} = {}, {x} ⊗ {y} = {}, {x} ⊘ {y} = {}, exact = {}",
        W::KIND.name(),
        a.plus(&b),
        a.times(&b),
        a.divide(&b)?,
        W::EXACT
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    show::<Boolean>("1", "1")?;
    show::<Rational>("2/3", "-5")?;
    show::<Tropical>("2", "7/2")?;
    show::<MaxTimes>("3/4", "2")?;
    show::<TropicalFloat>("0.5", "1.25")?;
    println!("tropical zero = {}", Tropical::zero());
    Ok(())
}
