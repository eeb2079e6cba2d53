//! Exact computations in the N-symmetric algebras `S(V, N)` and their
//! N-Koszul calculus.
//!
//! The crate is organised bottom-up:
//!
//! - [`ratlin`]: exact rationals and sparse row reduction,
//! - [`tensorspace`]: words, tensors, the antisymmetrizer and `Λ^p V`,
//! - [`shuffle`]: shuffles, block shuffles and antisymmetrizer decompositions,
//! - [`nsym_algebra`]: the graded quotient `T(V)/(R)` with normal forms,
//! - [`koszul_calculus`]: cochains, chains, cup and cap products,
//! - [`serial`]: the JSON file formats,
//! - [`suites`] and [`report`]: verification suites and experiment reports.

pub mod error;
pub mod koszul_calculus;
pub mod nsym_algebra;
pub mod ratlin;
pub mod report;
pub mod serial;
pub mod shuffle;
pub mod suites;
pub mod tensorspace;

pub use error::{Error, Result};
pub use koszul_calculus::{Chain, Cochain, ParityCase};
pub use nsym_algebra::{AlgebraElement, NSymAlgebra};
pub use ratlin::{Scalar, SparseMatrix, SparseVector};
pub use report::{Label, Record, Report, Status};
pub use suites::{Question, Suite, SuiteConfig};
pub use tensorspace::{IncreasingTuple, Perm, TensorElement, WedgeElement, Word};
