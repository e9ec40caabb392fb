//! A deterministic CONGEST simulator together with distributed ruling-set
//! algorithms and the centralized oracles that check their outputs.

pub mod diversity;
pub mod error;
pub mod general;
pub mod graph;
pub mod harness;
pub mod ruling_edge;
pub mod sets;
pub mod sim;
pub mod symmetry;
pub mod verify;

pub use error::{Error, Result};
