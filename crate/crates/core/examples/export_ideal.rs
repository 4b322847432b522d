//! Writes the polynomial system whose common zeros with `A_i` in {0, 1}
//! are exactly the (v, k, lambda) difference sets, then evaluates it on a
//! known solution.
//!
//! Usage: `cargo run --example export_ideal [group k lambda [out-file]]`

use diffset::designs::DesignParams;
use diffset::search::{export_system, search, SearchConfig};
use diffset::GroupSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (group, k, lambda) = match args.as_slice() {
        [g, k, l, ..] => (g.as_str(), k.parse()?, l.parse()?),
        _ => ("7", 3, 1),
    };
    let g = GroupSpec::parse(group)?;
    let p = DesignParams::for_group(&g, k, lambda)?;
    let system = export_system(&g, &p)?;
    let text = system.render();
    match args.get(3) {
        Some(path) => {
            std::fs::write(path, &text)?;
            println!("wrote {} generators to {path}", system.generators.len());
        }
        None => print!("{text}"),
    }

    if let Some(d) = search(&g, &SearchConfig::new(p).limit(1))?.sets.first() {
        let values = system.evaluate(d)?;
        let zeros = values.iter().filter(|v| v.is_zero()).count();
        println!("at {d}: {zeros} of {} generators vanish", values.len());
    }
    Ok(())
}
