pub mod algebra;
pub mod charpts;
pub mod cw;
pub mod error;
pub mod graded;
pub mod local;
pub mod snf;
pub mod series;
pub mod surface;
pub mod symplectic;
pub mod torsion;

pub use error::{Error, Result};
