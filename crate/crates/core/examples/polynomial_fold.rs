//! Group-ring view: multiplies `D` by its reflection, and folds the
//! unreduced polynomial `kappa_D` back into `Z[G]`.

use diffset::ringpoly::{fold_polynomial, kappa, kappa_unreduced, RawPolynomial};
use diffset::{GroupSpec, RingElement, Subset};

fn main() -> diffset::Result<()> {
    let g = GroupSpec::parse("7")?;
    let d = Subset::parse("(1);(2);(4)", &g)?;
    let a = RingElement::from_subset(&d);
    println!("D D^(-1) = {}", a.multiply(&a.reflect())?);

    let raw = kappa_unreduced(&d, 3, 1)?;
    println!("unreduced kappa has {} terms", raw.len());
    let folded = fold_polynomial(&raw, &g)?;
    println!("folded: {folded}  (in ideal: {})", folded.is_in_ideal());
    assert_eq!(folded, kappa(&d, 3, 1)?);

    let h = GroupSpec::parse("3,3")?;
    let p = RawPolynomial::parse("X1^5*X2^4 - 2*X1^2*X2 + 7", 2)?;
    println!("{} terms in Z[X1, X2] fold to {} over G = {h}", p.len(), fold_polynomial(&p, &h)?);

    let d = Subset::parse("(0,1);(0,2);(0,3);(1,0);(2,0);(1,1)", &GroupSpec::parse("4,4")?)?;
    println!("kappa of a non-design: {}", kappa(&d, 6, 2)?);
    Ok(())
}
