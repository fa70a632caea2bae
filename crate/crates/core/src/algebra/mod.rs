//! Bigraded polynomial algebra on the classes `e_i` and `mbar_{i,j}`.

mod basis;
mod generator;
mod hilbert;
mod monomial;
mod partitions;
mod polynomial;
mod rational;
pub mod serial;

pub use basis::{basis, e_monomials, enumerate_basis, BasisTable};
pub use generator::{make_generator, x_alias, Bidegree, Generator, GeneratorKind};
pub use hilbert::{e_monomial_count, hilbert_count, hilbert_table};
pub use monomial::Monomial;
pub use partitions::{weighted_partitions, Partition};
pub use polynomial::{convert_barred_unbarred, Direction, Polynomial};
pub use rational::{format_rational, parse_rational, rat, Rational};
