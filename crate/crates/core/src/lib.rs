//! Tagged-graph Hopf algebra and exact topological recursion.
//!
//! The crate has four layers:
//!
//! - [`graph`]: planar binary trees with tagged leaves, loop contractions,
//!   the bracket text format and the graph families used downstream.
//! - [`hopf`]: formal rational combinations of graphs with the leaf-preserving
//!   product, coproduct, counit and antipode, the Loday-Ronco operations used
//!   as a cross-check, and an exhaustive axiom verifier.
//! - [`laurent`]: exact multivariate rational expressions, local Laurent
//!   expansion and residues at the origin.
//! - [`spectral`]: the local curve model `x = z^2`, `y` odd, the recursion
//!   evaluated directly and as a weighted graph sum, and the coefficient
//!   tables relating the coproduct to the recursion.
//!
//! [`cli`] wires these into the `hopf-tr` binary.

pub mod cli;
pub mod error;
pub mod graph;
pub mod hopf;
pub mod laurent;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{Shape, Slot, TaggedGraph};
pub use hopf::{Combo, TensorCombo};
pub use laurent::{LocalSeries, Poly, RatExpr};
pub use spectral::{Correlator, CurveModel};
