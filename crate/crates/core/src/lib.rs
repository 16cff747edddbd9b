//! Degrees of rational first integrals for a pencil of degree-4 foliations of
//! the plane with Eisenstein parameters, together with the exact arithmetic and independent oracles that
//! check them.

pub mod cli;
pub mod counting;
pub mod eisenstein;
pub mod error;
pub mod lattice;
pub mod pencil;
pub mod verifier;

pub use eisenstein::{format_eisrat, parse_eisrat, EisInt, EisRat, ExtRat};
pub use error::{Error, Result};
