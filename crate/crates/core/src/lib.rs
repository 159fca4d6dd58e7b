//! Edit distance functions of hereditary graph properties, computed through
//! colored regularity graphs (CRGs).
//!
//! The crate is `no_std` and only needs `alloc`. It is organised bottom-up:
//!
//! * [`graphs`]: small simple graphs, named families and exact invariants
//!   (chromatic number, clique cover number, induced-subgraph search).
//! * [`crg`]: colored regularity graphs, twin fusion / vertex partition,
//!   components, gray substructures and canonical enumeration.
//! * [`embed`]: the embedding relation `H ↦ K`, membership of a CRG in the
//!   class of a property, and the clique spectrum.
//! * [`gfun`]: the matrix `M_K(p)`, the functions `f_K` and `g_K`, and the
//!   p-core / symmetrization diagnostics.
//! * [`edf`]: upper envelopes of the edit distance function, maximization,
//!   clique bounds, the cycle closed forms and a brute-force distance oracle.
#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod crg;
pub mod edf;
pub mod embed;
mod error;
pub mod gfun;
pub mod graphs;
mod linalg;

pub use crate::crg::{Crg, EdgeColor, VertexColor};
pub use crate::edf::{EdfCurve, MaxPoint, SearchSpace, Witness};

pub use crate::embed::CliqueSpectrum;
pub use crate::gfun::{GSolution, PValue};
pub use crate::error::{Error, Result};

pub use crate::graphs::SimpleGraph;
