//! Uniform sorting networks and their random subnetworks.
//!
//! - [`network`]: permutations, sorting networks, subnetworks, the shift map.
//! - [`diagram`]: SVG wiring diagrams.
//! - [`exact`]: rational closed forms and exhaustive checks for small `n`.
//! - [`tableau`]: staircase tableaux, Edelman–Greene insertion, uniform sampling.
//! - [`urn`]: the Polya urn started from 3/2 white and 3/2 black balls.
//! - [`geometry`]: Archimedes points and geometric sorting networks.
//! - [`montecarlo`]: estimators and seeded parallel experiment drivers.

pub mod diagram;
pub mod exact;
pub mod geometry;
pub mod montecarlo;
pub mod network;
pub mod tableau;
pub mod urn;

pub use exact::Rational;
pub use network::{Permutation, SortingNetwork, ValidationError};
pub use tableau::{sample_uniform_network, StaircaseSyt};
