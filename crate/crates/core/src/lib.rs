//! Finite symmetric monoidal categories and the homotopy torsion theory of
//! 2-groups and purely monoidal categories.
//!
//! Everything is exhaustive over explicit tables: categories, functors,
//! coherence data and nullhomotopies are enumerated rather than reasoned
//! about symbolically. Enumeration is bounded by a [`Budget`].

pub mod error;
pub mod fincat;
pub mod invariants;
pub mod models;
pub mod moncat;
pub mod mutation;
pub mod nullhomotopy;
pub mod par;
pub mod report;
pub mod search;
pub mod tor2group;
pub mod torsion;
pub mod twogroup;

pub use error::{Error, Result};
pub use search::Budget;
