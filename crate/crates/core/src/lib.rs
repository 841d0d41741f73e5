//! Region calculus for link diagrams on closed orientable surfaces.
//!
//! The crate works over GF(2) throughout: region incidence matrices, their
//! ranks and nullspaces, homology of the surface, and the graph of diagrams
//! reachable by region crossing changes.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod diagram;
pub mod families;
pub mod gf2;
pub mod gl;
pub mod homology;
pub mod moves;
pub mod region;
pub mod union_find;

pub use diagram::{
    CombinatorialMap, Component, DiagramError, DiagramParts, NodeKind, Region, SurfaceDiagram,
    Violation,
};
pub use gf2::{BitRow, Gf2Error, Gf2Matrix};
pub use union_find::UnionFind;
