//! Persistence diagrams valued in Grothendieck groups.
//!
//! A constructible persistence module over `R` with values in vector spaces
//! over `GF(p)` or in finite abelian groups has a rank function
//! `[p, q) -> [im M(p <= q)]` in the Grothendieck group of the category.
//! Möbius inversion of that function gives a diagram with group-valued
//! multiplicities ([`diagram::mobius_inversion`]), and diagrams are compared
//! with a bottleneck distance computed one generator at a time
//! ([`bottleneck::bottleneck_distance`]).
//!
//! Modules come from hand-built objects and maps ([`pmodule`]) or from the
//! sublevel homology of a filtered simplicial complex ([`pipeline`]).
//! [`interleave`] checks ε-interleavings and builds interpolating modules.
//! [`suites`] holds the randomized checks also run by `grodiag selftest`.

pub mod backends;
pub mod bottleneck;
pub mod diagram;
pub mod error;
pub mod grocat;
pub mod pmodule;
pub mod pipeline;
pub mod interleave;
pub mod formats;
pub mod random;
pub mod samples;
pub mod suites;
pub mod cli;
