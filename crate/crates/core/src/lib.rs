//! Exact computations for liftings of quantum planes over finite abelian
//! groups: sector decomposition, case classification, explicit irreducible
//! representations and an independent structure-constant oracle.

// index loops read better than iterator chains in the matrix code
#![allow(clippy::needless_range_loop, clippy::type_complexity)]

pub mod algebra;
pub mod cyclotomic;
pub mod error;
pub mod fixtures;
pub mod groups;
pub mod lifting;
pub mod linalg;
pub mod pipeline;
pub mod reps;

pub use error::{Error, Result};
