//! Truncated p-typical Witt vectors.

mod poly;
mod polyset;
mod ring;
mod structure;

pub use poly::{Monomial, Poly};
pub use polyset::{build_polys, ghost_poly, WittPolySet};
pub use ring::{frobenius_map, restriction, teichmuller, verschiebung, witt_add, witt_mul, WittRing, WittVector};
pub use structure::{witt_structure, WittStructure};
