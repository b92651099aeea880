//! Symbolic coding of `phi`: admissible words, infinite codes, the shift and
//! its metric, Farey cylinders and the code-to-point correspondence.

mod cylinder;
mod stream;
mod word;

pub use cylinder::{
    composition, cylinder, enclosures, itinerary, periodic_point, phi_interval_image,
    point_of_code, CylinderWalker, FareyInterval, TieRule,
};
pub use stream::{sigma_metric, CodeStream, StreamKind, SymbolSource};
pub use word::Word;

/// `sigma^k(s)`.
pub fn shift(s: &CodeStream, k: u64) -> CodeStream {
    s.shift(k)
}
