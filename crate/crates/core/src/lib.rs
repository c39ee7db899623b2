//! Exact analysis of p-ary functions `f: GF(p)^n → GF(p)`.
//!
//! The crate computes Walsh and Fourier spectra in the cyclotomic integers
//! `Z[ζ_p]`, decides bentness and (weak) regularity without floating point,
//! builds edge-weighted Cayley graphs, checks weighted partial difference
//! sets and intersection numbers, and classifies bent functions up to the
//! action of `GL(n, p)`.
//!
//! ```
//! use pary_bent::{PAryFunction, transforms};
//!
//! let f = PAryFunction::parse_literal("p=3,n=2:0,1,1,1,2,2,1,2,2").unwrap();
//! let profile = transforms::classify_regularity(&f);
//! assert!(profile.is_bent && profile.is_weakly_regular && !profile.is_regular);
//! ```

pub mod anf;
pub mod classify;
pub mod combinatorics;
pub mod cyclotomic;
pub mod error;
pub mod exec;
pub mod field;
pub mod function;
pub mod golden;
pub mod graph;
pub mod orbits;
pub mod report;
pub mod search;
pub mod transforms;

pub use anf::Anf;
pub use cyclotomic::CycInt;
pub use error::{Error, Result};
pub use exec::Execution;
pub use field::{vector_from_index, vector_index, PVector, PrimeField, VectorSpace};
pub use function::PAryFunction;
