//! Filtered simplicial complexes and their sublevel homology over `GF(p)`.

pub mod classical;
pub mod complex;
pub mod homology;

pub use classical::classical_diagram;
pub use complex::{FilteredComplex, Simplex};
pub use homology::{homology_module, HomologyLevels};
