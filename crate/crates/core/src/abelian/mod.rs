//! Exact linear algebra over the integers and finitely generated abelian groups.

mod complex;
mod graded;
mod group;
mod hom;
mod matrix;
mod snf;

pub use complex::{
    check_cone_exactness, cyclic_resolution, homology, induced_on_homology, mapping_cone, ChainComplex, ChainMap,
    HomologyData,
};
pub use graded::{graded_kernel_of_difference, DifferenceData, GradedGroups, GradedHom, Periodicity};
pub use group::{render_invariants, FinAbGroup, GroupJson};
pub use hom::{cokernel, is_exact_at, kernel, GroupHom, Preimager};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, Snf};
