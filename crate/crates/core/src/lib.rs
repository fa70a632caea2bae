//! Exact symbolic computations in the polynomial model of the stable twisted
//! cohomology of mapping class groups.
//!
//! The algebra is generated by the classical classes `e_i` and the barred
//! twisted classes `mbar_{i,j}`. On top of it the crate builds the contraction
//! derivation, its kernels and cokernels degree by degree, and the Tor-groups
//! of the resulting graded modules over `Q[e_1, e_2, ...]`.

pub mod algebra;
pub mod cli;
pub mod cohomology;
pub mod derivation;
pub mod error;
pub mod exec;
pub mod linalg;
pub mod tor;

pub use algebra::{
    enumerate_basis, hilbert_count, make_generator, weighted_partitions, BasisTable, Bidegree,
    Generator, GeneratorKind, Monomial, Polynomial, Rational,
};
pub use error::{Error, Result};

/// Version tag embedded in every serialized payload.
pub const SCHEMA_VERSION: u32 = 1;
