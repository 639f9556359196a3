//! Exact polynomial elimination and incidence-geometry checks for dual
//! 3-nets realizing small groups in the complex projective plane.

pub mod cli;
pub mod elim;
pub mod error;
pub mod geom;
pub mod groups;
pub mod lame;
pub mod netcfg;
pub mod poly;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
