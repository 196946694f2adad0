//! Finite commutative rings with anti-involution, pro-rings and the norm tensor.

mod chart;
mod involution;
mod norm;
mod parse;
mod pro;
mod ring;

pub use chart::{ring_chart, Chart};
pub use involution::{InvRing, Involution};
pub use norm::{fixed_subring, mu_is_iso, norm_tensor, FixedSubring, MuReport, NormTensor};
pub use parse::{parse_poly, parse_ring, witt_prime, InvName, RingExpr, RingSpec};
pub use pro::ProRing;
pub use ring::{factor, frobenius, is_prime, render_poly, Elem, FinRing, FrobeniusMap, PolyRing, TableRing};
