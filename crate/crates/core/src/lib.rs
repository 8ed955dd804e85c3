//! Bollobás–Riordan polynomials of ribbon graphs, relative Tutte polynomials
//! of relative plane graphs, the conversions between them, and the Kauffman
//! bracket of virtual link diagrams.

pub mod cli;
pub mod convert;
mod dsu;
pub mod error;
pub mod format;
pub mod links;
pub mod planemap;
pub mod poly;
pub mod ribbon;
pub mod rotation;
pub mod verify;

pub use error::{Error, Result};
pub use links::VirtualLinkDiagram;
pub use planemap::{PlaneMap, RelPlaneGraph};
pub use poly::Polynomial;
pub use ribbon::RibbonGraph;
