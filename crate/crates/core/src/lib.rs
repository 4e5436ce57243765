//! Exact computations behind link-concordance obstructions: branched-cover
//! homology orders, signature jump functions and their periods, correction
//! terms of lens spaces and large surgeries, and metabolizer tests.

pub mod abgroup;
pub mod dinv;
pub mod error;
pub mod io;
pub mod linalg;
pub mod obstruct;
pub mod parse;
pub mod polyalg;
pub mod rational;
pub mod seifert;

pub use error::{Error, Result};
