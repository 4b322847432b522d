//! Prints `Psi` at every character of Z4 x Z4 for a rejected subset,
//! showing both the exact cyclotomic value and the float approximation.

use diffset::characters::psi_all;
use diffset::{GroupSpec, Subset};

fn main() -> diffset::Result<()> {
    let g = GroupSpec::parse("4,4")?;
    let d = Subset::parse("(0,1);(0,2);(0,3);(1,0);(2,0);(1,1)", &g)?;
    println!("{:<10}{:<14}{:>12}  {:>16}", "character", "roots", "Psi", "float");
    for r in psi_all(&d, 6, 2)? {
        let roots = format!("({})", r.character.root_labels().join(", "));
        println!(
            "{:<10}{:<14}{:>12}  {:>+8.3}{:>+8.3}i",
            r.character.to_string(),
            roots,
            r.value.to_string(),
            r.approx.re,
            r.approx.im
        );
    }
    Ok(())
}
