//! Exact computations deciding when a satellite pattern is obstructed from
//! inducing a homomorphism (or pseudo-homomorphism) on knot concordance.
//!
//! The crate is organised bottom-up:
//!
//! * [`abelian`]: finite abelian groups, Smith normal form, canonical
//!   subgroups and cyclic-valued characters.
//! * [`linking`]: torsion linking forms and their metabolizers.
//! * [`obstruction`]: the Casson-Gordon style obstruction engines.
//! * [`covers`]: circulant surgery matrices of cyclic branched covers.
//! * [`signature`]: Tristram-Levine signatures and the integral `rho_0`.
//! * [`tau`]: the knot Floer `tau` rule engine and the small-pattern census.
//! * [`io`]: JSON schemas shared with the command-line front end.

pub mod abelian;
pub mod covers;
pub mod error;
pub mod io;
pub mod linking;
pub mod obstruction;
pub mod signature;
pub mod tau;

pub use error::{Error, Result};
