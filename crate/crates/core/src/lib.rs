//! Exact character theory for the Knutson index: character tables of `S_n`,
//! `A_n`, `SL₂(q)` and `PSL₂(q)`, their representation rings, an integer
//! lattice solver, t-core combinatorics and the related integer sequences.

pub mod algnum;
pub mod charring;
pub mod error;
pub mod knutsonlat;
pub mod numtheory;
mod par;
pub mod partitions;
pub mod sequences;
pub mod sl2tables;
pub mod symchar;
pub mod table;

pub use error::{Error, Result};
