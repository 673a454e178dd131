//! Exact invariants of projective bundles `P^n(a) = P(η^a ⊕ C^{n-1}) → CP^1`.
//!
//! The crate is split by subject:
//!
//! - [`exactring`]: partitions, binomials and the cohomology ring
//!   `Z[x,y]/(x², yⁿ − a·x·yⁿ⁻¹)`.
//! - [`chern`]: total Chern classes of the standard and twisted stably
//!   complex structures, Chern numbers and the bordism identities they imply.
//! - [`clutch`]: degree bookkeeping for clutching isomorphisms over
//!   `S¹ × CPⁿ⁻¹` and the three-piece gluing relation.
//! - [`polytope`]: purely combinatorial simple polytopes.
//! - [`lattice`]: Smith normal form, characteristic and isotropy functions,
//!   `GL_n(Z)` equivalence of characteristic matrices.
//! - [`hexprism`]: the hexagon-prism isotropy data and its bordism certificate.
//!
//! All integer values are arbitrary precision ([`num_bigint::BigInt`]);
//! dimensions and partition parts are plain `usize`.

pub mod chern;
pub mod clutch;
pub mod error;
pub mod exactring;
pub mod hexprism;
pub mod intser;
pub mod lattice;
pub mod polytope;

pub use error::{Error, Result};
pub use exactring::{binomial, partitions, CohomRing, ExactInt, Partition, RingElement};
