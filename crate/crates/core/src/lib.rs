//! Exact computations of Witt vectors, norm tensor rings, Bredon homology of
//! C₂-representation spheres and the homotopy groups of geometric fixed points of
//! real topological restriction and cyclic homology.

pub mod abelian;
pub mod barcalc;
pub mod ctx;
pub mod error;
pub mod mackey;
pub mod ringkit;
pub mod tcr;
pub mod witt;

pub use ctx::{CancelToken, Ctx};
pub use error::{Error, Result};
