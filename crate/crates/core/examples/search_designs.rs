//! Exhaustive search for small difference sets, with and without
//! translation dedup, plus a parameter set ruled out by counting.
//!
//! Usage: `cargo run --release --example search_designs [group k lambda]`

use diffset::designs::DesignParams;
use diffset::search::{search, Dedup, SearchConfig};
use diffset::GroupSpec;

fn run(group: &str, k: u64, lambda: u64, dedup: Dedup) -> diffset::Result<()> {
    let g = GroupSpec::parse(group)?;
    let p = DesignParams::for_group(&g, k, lambda)?;
    let res = search(&g, &SearchConfig::new(p).dedup(dedup))?;
    println!("{p} in {g}, dedup {dedup:?}: {} sets", res.sets.len());
    if let Some(note) = &res.note {
        println!("  {note}");
    }
    for d in res.sets.iter().take(4) {
        println!("  {d}");
    }
    if res.sets.len() > 4 {
        println!("  ...");
    }
    Ok(())
}

fn main() -> diffset::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if let [group, k, lambda] = args.as_slice() {
        let k = k.parse().expect("k must be an integer");
        let lambda = lambda.parse().expect("lambda must be an integer");
        return run(group, k, lambda, Dedup::Translation);
    }
    run("7", 3, 1, Dedup::None)?;
    run("7", 3, 1, Dedup::Translation)?;
    run("13", 4, 1, Dedup::Translation)?;
    run("4,4", 6, 2, Dedup::Translation)?;
    run("2,2,2,2", 6, 2, Dedup::Translation)?;
    run("11", 4, 1, Dedup::None)
}
