//! Exact computation with finitely presented differential graded algebras
//! (dgas) over the integers and over prime fields.
//!
//! The toolkit realizes textual dga presentations degree by degree, computes
//! homology as graded abelian groups with canonical representatives and ring
//! structure, builds kill-cycles semifree replacements of dgas and of modules
//! over dgas, truncates Postnikov-style and classifies square-zero extensions
//! by k-invariants, and computes derived Hochschild cohomology together with
//! its comparison into the divided-power reference ring.
//!
//! Everything is exact: integer arithmetic is arbitrary precision, prime
//! fields are handled by the same elimination engine, and no floating point
//! appears anywhere. All operations are pure functions of their inputs and
//! safe to call from multiple threads.

pub mod catalog;
pub mod cli;
pub mod complex;
pub mod error;
pub mod hochschild;
pub mod homology;
pub mod limits;
pub mod matrix;
pub mod module;
pub mod parse;
pub mod poly;
pub mod postnikov;
pub mod presentation;
pub mod quotient;
pub mod realize;
pub mod report;
pub mod scalar;
pub mod semifree;
pub mod tensor;

pub use error::DgaError;
pub use scalar::ScalarDomain;
