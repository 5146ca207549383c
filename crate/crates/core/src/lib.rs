//! Exact point counts and character-polynomial statistics for spaces of
//! 0-cycles on the affine line over finite fields.
//!
//! The pieces, bottom-up:
//!
//! * [`ffield`]: `F_q` for prime powers `q`.
//! * [`poly`]: monic polynomials over `F_q`, factorization, Frobenius cycle types.
//! * [`charpoly`]: character polynomials in the cycle-count variables `X[k,j]`,
//!   symmetric group characters, inner products.
//! * [`lattice`]: the n-equals partition lattice, Möbius function and the
//!   point-count polynomial of the ordered space.
//! * [`qpoly`]: polynomials in the field size `q`.
//! * [`homology`]: order complexes, rational homology, complement Betti numbers.
//! * [`census`]: exhaustive weighted point counts and the Burnside cross-check.
//! * [`stabkit`]: interpolation in `q` and stabilization detection across degrees.
//! * [`verify`]: the built-in oracle grid used by the CLI.

pub mod census;
pub mod charpoly;
pub mod error;
pub mod ffield;
pub mod homology;
pub mod lattice;
pub mod poly;
pub mod qpoly;
pub mod rational;
pub mod stabkit;
pub mod verify;

pub use error::{Error, Result};
