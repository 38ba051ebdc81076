//! Blind equality search over databases under homomorphic encryption.
//!
//! Two backends implement the same search contract: a bitwise
//! somewhat-homomorphic scheme over the integers driving a bit-level
//! protocol, and a ring-based scheme whose plaintext space is made a field
//! (via cyclotomic-polynomial irreducibility) driving a block-level
//! protocol built on Lagrange-style indicators. An operation-metering
//! harness compares the homomorphic work done by the two.

pub mod arith;
pub mod bitfhe;
pub mod codec;
pub mod complexity;
pub mod cyclotomic;
pub mod field;
pub mod gahi;
pub mod hqp;
pub mod metering;
pub mod ringfhe;

pub use cyclotomic::{FieldError, FieldSearchReport, IntPoly};
pub use field::{FieldContext, FieldElement};
pub use metering::{HomOp, Meter, OpCounter, Phase};
