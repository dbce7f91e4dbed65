//! Exact computations with the 0-Hecke algebra `H_n(0)`.

pub mod charmap;
pub mod coinvariant;
pub mod combinat;
pub mod error;
pub mod flagvar;
pub mod hecke0;
pub mod linalg;
pub mod polyring;
pub mod qtarith;

pub mod verify;

pub use error::{Error, Limits, Result};
