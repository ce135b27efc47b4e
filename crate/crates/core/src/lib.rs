//! Exact construction of linear recurrent sequences whose terms modulo a
//! prime `p` reveal the Frobenius class of `p` in a Galois number field,
//! together with independent checks of every step.

pub mod error;
pub mod exactmath;
pub mod galois;
pub mod chartab;
pub mod groupdet;
pub mod numfield;
pub mod sequences;
pub mod declaw;
pub mod cli;

pub use error::{Error, ExactError, Result};
