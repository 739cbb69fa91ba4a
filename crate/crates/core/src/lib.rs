//! A workbench for computing with finite-stage Stone duality.
//!
//! The crate covers, at desk scale and in exact arithmetic:
//!
//! - finite posets, their downsets, heights and incidence algebras
//!   ([`order`], [`incidence`]);
//! - finite distributive lattices with Birkhoff duality, Booleanization,
//!   top adjunction and prime filters ([`lattice`]);
//! - finitary coverages on posets with meets, propositional sheaves and
//!   sheafification ([`sites`]);
//! - the universal valuation module of a lattice, with its free basis,
//!   ring structure and functoriality, certified by Smith normal form
//!   ([`motives`], [`snf`]);
//! - chain-indexed inverse systems of finite sets as desk-scale profinite
//!   spaces ([`profinite`]);
//! - evaluation of localizing-invariant groups of sheaf categories through
//!   coefficient profiles, with independent computation routes checked
//!   against each other ([`ktheory`]);
//! - rectilinear grid polytopes and their scissors-congruence modules
//!   ([`scissors`]).
//!
//! Everything is immutable after construction and all operations are pure,
//! so values can be shared and sent across threads freely. All arithmetic
//! is exact: equality in every check means equality.

pub mod abelian;
pub mod bits;
pub mod budget;
pub mod corpus;
pub mod doc;
pub mod incidence;
pub mod ktheory;
pub mod lattice;
pub mod matrix;
pub mod motives;
pub mod order;
pub mod profinite;
pub mod scissors;
pub mod sites;
pub mod snf;
pub mod verify;

/// Exact integer scalar used by all certifying computations.
pub type Int = num_bigint::BigInt;

/// Exact rational scalar used for geometric cut coordinates.
pub type Rat = num_rational::BigRational;

/// Dense matrix over [`Int`].
pub type IntMat = matrix::Mat<Int>;

pub use bits::Bits;
pub use budget::Budget;
pub use lattice::FinDistLattice;
pub use order::{DownSet, Poset};
