//! Segment calculus for smooth representations of p-adic `GL_n`, Godement–Jacquet
//! L-functions, and Ext computations for type II theta correspondences.

pub mod cli;
pub mod error;
pub mod exprio;
pub mod filtr;
pub mod groth;
pub mod lfun;
pub mod segments;
pub mod theta;
pub mod verify;

pub use error::{Error, Result};
pub use exprio::{parse_half, parse_label, parse_rep, render, Format, ParseError, Render};
pub use filtr::ExtTable;
pub use groth::{Factor, GrothElt, ReptnKey, TensorElt, TwoFactor};
pub use lfun::LFactoredFn;
pub use segments::{CuspidalLabel, FactorKind, HalfInt, Segment};
pub use theta::ThetaResult;
pub use verify::{Suite, SuiteParams, SuiteReport};
