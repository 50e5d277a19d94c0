//! cextkit: a verification workbench for higher central extensions, torsors
//! and low-degree cohomology over finite groups.
//!
//! The crate instantiates, over Cayley-table groups, the comparison between
//! three views of the same classification problem:
//!
//! * equivalence classes of n-fold central extensions with their Baer sum,
//! * higher torsors over the Eilenberg–MacLane-style objects `K(Z, A, n)`,
//! * cohomology of a normalized cochain complex, computed by Smith normal
//!   form as an independent oracle.
//!
//! The quantitative agreement is checked exhaustively at `n = 1` and as
//! property suites (torsor ⇔ centrality, diamond product decompositions,
//! direction calculus, Mal'tsev operations) at `n = 2`.
//!
//! Entry points: [`verify`] hosts the full acceptance suites, the runnable
//! `examples/` each drive one capability, and the thin `cextkit` binary
//! exposes the same operations on JSON files.

pub mod caps;
pub mod centrality;
pub mod classify;
pub mod corpus;
pub mod cubic;
pub mod diagram;
pub mod error;
pub mod group;
pub mod io;
pub mod linalg;
pub mod report;
pub mod simplicial;
pub mod verify;

pub use caps::Caps;
pub use error::{Error, Result};
