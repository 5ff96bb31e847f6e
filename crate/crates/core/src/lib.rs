//! KMS states of the gauge dynamics on the Toeplitz algebra of a finite
//! directed graph.
//!
//! Conventions: an edge `e` goes from `s(e)` to `r(e)`, the vertex matrix is
//! `A(v, w) = |vE^1w|`, a path `μν` needs `s(μ) = r(ν)`, and a *source* is a
//! vertex that receives no edges. Inverse temperature is carried as
//! `q = e^{−β}`.
//!
//! * [`graph`]: graphs, paths, connectivity, source saturation.
//! * [`spectral`]: `ρ(A)`, its structural classification, Perron vectors.
//! * [`kms`]: the simplex `Σ_β`, critical and ground states.
//! * [`algebra`]: spanning elements `s_μ s_ν*` and their products.
//! * [`oracle`]: the truncated path-space representation used to check states.
//!
//! Field arithmetic is generic over [`Scalar`], so the same code runs on
//! `f64` and on exact rationals.

pub mod algebra;
pub mod graph;
pub mod kms;
pub mod linalg;
pub mod oracle;
pub mod report;
pub mod scalar;
pub mod spectral;

pub use algebra::{multiply_spanning, SpanningElement};
pub use graph::{parse_graph, DirectedGraph, GraphError, NonnegIntMatrix, Path};
pub use kms::{KmsError, KmsState, StateKind, Temperature};
pub use oracle::{Oracle, OracleError, VerificationReport};
pub use scalar::{RealScalar, Scalar};
pub use spectral::{SpectralClass, SpectralError};

/// Exact rational scalar.
pub type Exact = num_rational::BigRational;

pub type State64 = KmsState<f64>;
pub type ExactState = KmsState<Exact>;
pub type Oracle64 = Oracle<f64>;
pub type ExactOracle = Oracle<Exact>;
