//! Exact computer algebra for moduli of sheaves on surfaces.
//!
//! Every object here is computed with exact arithmetic and checked against an
//! independent brute-force route:
//!
//! - [`partitions`]: partition combinatorics, stratum dimensions and the
//!   add-a-part coefficient rule.
//! - [`series`]: truncated q-series over pluggable exact coefficient rings
//!   (Laurent polynomials, rational functions), with the Göttsche, MacDonald,
//!   Hodge, theta and Yoshioka generating functions.
//! - [`symfunc`]: symmetric functions in the monomial basis with power-sum
//!   multiplication, checked against finite-variable polynomials.
//! - [`fock`]: the super-Fock representation of the oscillator algebra.
//! - [`schubert`]: Schubert calculus on Grassmannians and the excess
//!   intersection Chern-class chain.
//! - [`quotlab`]: commuting nilpotent matrices, cyclic vectors and the
//!   companion construction that deforms any point of the punctual Quot
//!   scheme into the open cell.
//! - [`verify`]: JSON verification reports consumed by the CLI.

pub mod error;
pub mod fock;
pub mod linalg;
pub mod par;
pub mod partitions;
pub mod poly;
pub mod quotlab;
pub mod rational;
pub mod schubert;
pub mod series;
pub mod symfunc;
pub mod verify;

pub use error::{Error, Result};
pub use partitions::Partition;
pub use rational::Q;
