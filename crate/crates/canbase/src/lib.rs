//! Exact computation of canonical bases and crystal graphs for symmetric
//! Cartan data.
//!
//! Given a symmetric generalized Cartan matrix with a total order on its
//! vertices, this crate builds — entirely in exact arithmetic over integer
//! Laurent polynomials and their fractions — the weight spaces of the
//! positive half of the corresponding quantized enveloping algebra, the
//! bilinear form, the canonical basis of every weight space, the left and
//! right Kashiwara operators with their string statistics, the doubly
//! colored crystal graph on the canonical basis, the monomial bases indexed
//! by string data with their unitriangular transition matrices, and the
//! induced bases of integrable highest-weight quotients.
//!
//! The layering follows the algebra:
//!
//! - [`cartan`]: Cartan data, weights, the orders on vertices and sequences.
//! - [`laurent`] / [`ratfun`]: exact coefficient arithmetic in `v`, the bar
//!   involution, quantum binomials, and the v^-1-adic toolkit.
//! - [`free`]: divided-power monomials, the left/right derivations, and the
//!   bilinear form on the free algebra.
//! - [`engine`]: weight spaces of the quotient by the radical of the form,
//!   with all structure operators as cached matrices.
//! - [`canonical`]: the canonical basis per weight via bar-invariant
//!   almost-orthonormalization, the lattice reduction, string statistics and
//!   string transport.
//! - [`crystal`]: the colored graph, the string-sequence labelling, the
//!   structural verification suite, and DOT/JSON export.
//! - [`reports`]: monomial bases, transition matrices, classical limits,
//!   highest-weight slices.
//! - [`cache`] / [`cli`]: deterministic on-disk cache and the command-line
//!   pipelines.
//!
//! Every run is deterministic: pivoting never depends on coefficient sizes,
//! ties are broken by fixed lexicographic rules, and cache hits reproduce
//! cold runs byte for byte.
//!
//! See the crate examples for runnable walkthroughs of each capability
//! (`cargo run --example canonical_basis`, etc.); the `canbase` binary
//! exposes the same pipelines as subcommands.

pub mod cache;
pub mod canonical;
pub mod cartan;
pub mod cli;
pub mod crystal;
pub mod engine;
pub mod error;
pub mod free;
pub mod laurent;
pub mod linalg;
pub mod ratfun;
pub mod reports;

pub use cartan::{CartanDatum, SeqOrdering, SequenceS, Weight};
pub use engine::{AlgebraElement, Engine, WeightSpaceModel};
pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use ratfun::RationalCoeff;
