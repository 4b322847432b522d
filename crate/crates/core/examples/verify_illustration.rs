//! Verifies two 6-element subsets of Z4 x Z4 against the (16, 6, 2)
//! parameters with every method and prints the certificates.

use diffset::designs::{verify, DesignParams, Method};
use diffset::{GroupSpec, Subset};

fn main() -> diffset::Result<()> {
    let g = GroupSpec::parse("4,4")?;
    let p = DesignParams::for_group(&g, 6, 2)?;
    for text in [
        "(0,1);(0,2);(0,3);(1,0);(2,0);(3,0)",
        "(0,1);(0,2);(0,3);(1,0);(2,0);(1,1)",
    ] {
        let d = Subset::parse(text, &g)?;
        let cert = verify(&d, &p, Method::All)?;
        println!("{d}: {}", if cert.verdict { "difference set" } else { "not a difference set" });
        for run in &cert.runs {
            println!("  {:<18}{}", run.method, run.verdict);
        }
        if let Some(w) = &cert.witness {
            println!("  witness: {w}");
        }
        assert!(cert.methods_agree());
        assert!(cert.recheck(&d)?);
    }
    Ok(())
}
