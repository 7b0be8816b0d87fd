//! Exact arithmetic and automatic structures over grids: dense subrings of
//! the reals whose elements are finite digit vectors in an algebraic base.

pub mod automata;
pub mod cli;
pub mod digits;
pub mod error;
pub mod geometry;
pub mod grids;
pub mod mulconst;
pub mod normalize;
pub mod omega;
pub mod oracle;
pub mod poly;
pub mod selftest;
pub mod sign;

pub use digits::LaurentDigits;
pub use error::{Error, Result};
pub use grids::{make_grid, ConstKind, Grid, GridKind, GridSpec};
pub use sign::Sign;
