//! Binary G-spaces and finite fields.
//!
//! A binary action of a group `G` on a set `X` lets each `g` act as a binary
//! operation `g(x, y)`. Semitransitive distributive binary actions of finite
//! groups correspond one-to-one with finite fields whose multiplicative group
//! is `G`. This crate checks the axioms and identities of such actions on
//! explicit tables, converts in both directions between actions and fields,
//! and classifies small cases by exhaustive search.
//!
//! All indices are 0-based. Group identities sit at index 0, field zero at 0
//! and field one at 1.

pub mod action;
pub mod bgs;
pub mod binop;
pub mod cli;
pub mod duality;
pub mod error;
pub mod field;
pub mod group;
pub mod identities;
pub mod perm;
pub mod search;

pub use action::{BinaryAction, DistributivityReport, PairStabilizer};
pub use binop::BinaryOp;
pub use duality::{BuiltField, FieldParams};
pub use error::{Error, Result};
pub use field::{FieldIso, FiniteField};
pub use group::{FiniteGroup, Subgroup};
pub use search::{SearchOptions, SearchReport};
