//! Exact verification toolkit for torsion and involution generating sets of
//! mapping class groups, working through the symplectic representation on
//! surface homology.
//!
//! The crate builds combinatorial surface models with rotational symmetry,
//! derives homology classes and symmetry matrices from them, constructs the
//! relevant twist words, evaluates everything to exact integer symplectic
//! matrices, and certifies generation claims in finite quotients `Sp(2g, p)`
//! via a base-and-strong-generating-set stabilizer chain.

pub mod error;
pub mod exec;
pub mod export;
pub mod intmat;
pub mod models;
pub mod quotient;
pub mod surface;
pub mod symp;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
