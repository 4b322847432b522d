//! Exact verification, search and certification of `(v, k, lambda)`
//! difference sets in finite abelian groups.
//!
//! A subset `D` of `G = Z/n1 x ... x Z/nt` is a difference set when every
//! non-identity element arises as `d1 - d2` exactly `lambda` times. The
//! crate decides this in three independent ways and checks that they agree:
//!
//! * by counting differences directly ([`designs::difference_table`]);
//! * in the integer group ring, where `D` is a difference set iff
//!   `D D^(-1) = lambda G + (k - lambda) e`, equivalently the polynomial
//!   `kappa_D` lies in the ideal `(X1^n1 - 1, ..., Xt^nt - 1)`
//!   ([`ringpoly::kappa`]);
//! * through character sums evaluated exactly in `Z[zeta_m]`
//!   ([`characters::psi_all`]).
//!
//! On top of that sit generalized (relative, partial) difference sets, a
//! pruned exhaustive [`search`], export of the defining polynomial system
//! for external algebra systems, and a [`bent`] function layer that tests
//! bentness through the support's difference-set property.

pub mod bent;
pub mod characters;
pub mod cli;
pub mod designs;
mod error;
pub mod group;
pub mod ringpoly;
pub mod search;

pub use error::{Error, Result};
pub use group::{GroupElement, GroupSpec};
pub use ringpoly::{RingElement, Subset};
