//! Construction, classification and face-number verification for flag
//! simplicial complexes.

pub mod bounds;
pub mod classify;
pub mod complex;
pub mod error;
pub mod flag;
pub mod gen;
pub mod par;
pub mod report;
pub mod sc;
pub mod vectors;

pub use complex::{Complex, Face, Relabeling, VertexId};
pub use error::{Error, Result};
pub use report::{Quantity, Relation, Report, Status, Witness};
pub use vectors::{FVector, GammaVector, HVector};
