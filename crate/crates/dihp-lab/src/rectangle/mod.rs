//! Structured rectangles and the lemma-level identity checks.

pub mod combinatorics;
pub mod density;
pub mod growth;
pub mod identities;
pub mod structure;
pub mod transfer;

pub use structure::*;
