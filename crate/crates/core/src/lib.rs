//! Exact combinatorics of normal and almost normal surfaces in triangulated
//! 3-manifolds, together with the complexity calculus of Heegaard-Scharlemann-Thompson
//! splittings and a Morse-event model of thin position.
//!
//! Everything here is pure and exact: coordinates are arbitrary-precision integers and
//! every operation is a function of immutable inputs.
//!
//! Module map:
//!
//! - [`triangulation`]: face-pairing triangulations, skeleta, vertex links.
//! - [`normal`]: surface vectors, matching equations, admissibility, reconstruction.
//! - [`enumeration`]: double description vertex surfaces and bounded brute force.
//! - [`curves`]: normal loops on the boundary of one tetrahedron.
//! - [`hst`]: complexities of surfaces and splittings, compressions, untangling.
//! - [`thin`]: width profiles, induced splittings and the width-reducing exchange.

pub mod curves;
pub mod enumeration;
pub mod error;
pub mod hst;
pub mod limits;
pub mod normal;
pub mod tet;
pub mod thin;
pub mod triangulation;
mod unionfind;

pub use error::{Error, Result};
pub use limits::Limits;
pub use triangulation::{Skeleton, Triangulation};
