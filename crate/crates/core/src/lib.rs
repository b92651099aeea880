//! Exact symbolic dynamics of `phi(x) = |1 - 1/x|` on the compactified
//! half-line `[0, inf]`.
//!
//! The crate is organised bottom-up:
//!
//! * [`numeric`]: exact points of `[0, inf]` (extended rationals, quadratic
//!   surds), unimodular Möbius maps and dyadic rationals;
//! * [`coding`]: the golden-mean shift of admissible 0-1 codes, Farey
//!   cylinders, itineraries and code-to-point enclosures;
//! * [`conjugacy`]: modified Farey levels and the Minkowski-type
//!   homeomorphism `h` conjugating `phi` to the tent-like map `f`;
//! * [`entropy`]: entropy estimators, mixing certificates, dense periodic
//!   points and a transitivity scan;
//! * [`scrambled`]: the factorial-block codes whose points form invariant
//!   scrambled sets, and finite-horizon verification of their separation and
//!   approach events;
//! * [`text`]: parsers for the textual forms used in I/O.

pub mod coding;
pub mod conjugacy;
pub mod entropy;
mod error;
pub mod numeric;
pub mod scrambled;
pub mod text;

pub use error::{Error, Result};
