#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod geometry;
pub mod ggt;
pub mod matrix;
pub mod numrange;
pub mod opuc;
pub mod poly;
pub mod popuc;
pub mod schur;
pub mod wendroff;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
pub use ggt::{GgtKind, GgtMatrix};
pub use matrix::CMatrix;
pub use num_complex::Complex64;
pub use opuc::{OpucSequence, UnitCircleMeasure, VerblunskyWord};
pub use poly::{MonicPoly, Poly};
pub use popuc::PonceletFrame;
pub use schur::{Caratheodory, RationalSchurFn};
