//! Generalized difference sets: differences landing in `M` occur
//! `lambda1` times, the rest `lambda2` times.

use diffset::characters::enumerate_characters;
use diffset::designs::{psi_star, verify_generalized, GeneralizedParams, Method};
use diffset::{GroupSpec, Subset};

fn check(group: &str, set: &str, m: &str, l1: u64, l2: u64) -> diffset::Result<()> {
    let g = GroupSpec::parse(group)?;
    let d = Subset::parse(set, &g)?;
    let gp = GeneralizedParams::new(Subset::parse(m, &g)?, l1, l2)?;
    let cert = verify_generalized(&d, &gp, d.len() as u64, Method::All)?;
    println!("D = {d}, M = {}, lambda1 = {l1}, lambda2 = {l2}: {}", gp.m_set(), cert.verdict);
    if let Some(w) = &cert.witness {
        println!("  witness: {w}");
    }
    Ok(())
}

fn main() -> diffset::Result<()> {
    // relative difference set in Z4 forbidding the subgroup {0, 2}
    check("4", "(0);(1)", "(0);(2)", 0, 1)?;
    // a planar difference set is generalized for any M when lambda1 = lambda2
    check("7", "(1);(2);(4)", "(3);(5)", 1, 1)?;
    // the Z4 x Z4 example is not partial with respect to its own support
    check(
        "4,4",
        "(0,1);(0,2);(0,3);(1,0);(2,0);(3,0)",
        "(0,1);(0,2);(0,3);(1,0);(2,0);(3,0)",
        2,
        1,
    )?;

    let g = GroupSpec::parse("4")?;
    let d = Subset::parse("(0);(1)", &g)?;
    let gp = GeneralizedParams::new(Subset::parse("(0);(2)", &g)?, 0, 1)?;
    for chi in enumerate_characters(&g) {
        let r = psi_star(&d, &gp, 2, &chi)?;
        println!("  Psi*{chi} = {}", r.value);
    }
    Ok(())
}
