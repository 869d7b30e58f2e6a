//! Index and oriented-complexity calculus for multiple bridge surfaces of
//! (3-manifold, graph) pairs, with the thinning moves as validated rewrites.
//!
//! A [`Complex`] records thick levels, thin levels, boundary levels and the
//! compressionbodies between them as numeric summaries. Every move carries
//! a certificate for its topological content; the engine checks each numeric
//! consequence and refuses certificates that contradict the summary.
//!
//! ```
//! use widthcalc::{complexity, fixtures};
//!
//! let c = fixtures::one_bridge_sphere();
//! assert_eq!(complexity(&c).unwrap().terms, vec![8]);
//! ```

pub mod canon;
pub mod cli;
pub mod complexity;
pub mod digraph;
pub mod dot;
pub mod error;
pub mod fixtures;
pub mod gen;
pub mod model;
pub mod moves;
pub mod search;
pub mod selftest;
pub mod validate;

pub use canon::canonical_hash;
pub use complexity::{compare, complexity, index_down, index_up, reach_down, reach_up, ComplexityVector};
pub use digraph::{thick_digraph, ThickDigraph};
pub use error::{Error, Result};
pub use model::{
    euler_char, mu, mu_empty, ArcKind, BoundaryLevel, Complex, Compressionbody, Profile, Side, Surface,
    TangleSummary, ThickLevel, ThinLevel,
};
pub use moves::{apply, Check, Move};
pub use validate::{validate, ValidationReport, Violation};
