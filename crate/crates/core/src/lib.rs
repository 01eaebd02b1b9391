//! Stabiliser-formalism toolkit for codes derived from absolutely maximally
//! entangled (AME) qudit states.
//!
//! The crate covers generalised Pauli arithmetic over prime dimensions,
//! generator-list manipulation (Gauss-Jordan elimination, measurement updates,
//! partial traces), extraction of `[[N-m, m]]` codes from AME states,
//! concatenation through entanglement swapping, holographic pentagon networks,
//! and boundary entanglement entropies with their min-cut bounds.

pub mod ame;
pub mod concat;
pub mod dense;
pub mod entropy;
pub mod error;
pub mod format;
pub mod linalg;
pub mod network;
pub mod pauli;
pub mod tableau;

pub use error::{Error, Result};
pub use pauli::{parse_pauli, render_pauli, Column, Dim, PauliOperator};
pub use tableau::{GroupComparison, Measurement, Role, RowEchelon, StabilizerTable};
