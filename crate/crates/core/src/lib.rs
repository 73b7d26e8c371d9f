//! sdslab: an exact analysis workbench for sequential dynamical systems
//! (SDS) over finite graphs.
//!
//! A sequential dynamical system composes per-vertex update functions along
//! an update word; this crate quantifies how stable the resulting dynamics
//! are under changes of that word, three ways:
//!
//! * phase-space equivalence counting: acyclic-orientation combinatorics,
//!   Tutte evaluations alpha = T(2,0) and kappa = T(1,0), and their
//!   automorphism-orbit refinements ([`orient`], [`phase`]);
//! * reachable-limit-set analysis: omega-limit sets unioned over families
//!   of update orders ([`stability`]);
//! * periodic-set invariance: word-independence testing and the rho ratio
//!   ([`stability`]).
//!
//! Everything is exact: arbitrary-precision integers for counting, rational
//! arithmetic for thresholds and ratios, no floating point in any
//! computation. All quantities at desk scale are backed by brute-force
//! enumeration cross-checks.

pub mod cli;
pub mod config;
pub mod error;
pub mod graph;
pub mod limits;
pub mod orient;
pub mod phase;
pub mod report;
pub mod sds;
pub mod stability;
pub mod tutte;
mod util;

pub use error::{Error, Result};
pub use graph::{Graph, GraphKind, VertexPermutation};
pub use limits::Limits;
pub use orient::AcyclicOrientation;
pub use phase::{PhaseSpace, Relation};
pub use sds::{Alphabet, FunctionSequence, MapTable, UpdateWord};
