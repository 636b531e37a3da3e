//! Numerical laboratory for prime-counting biases.
//!
//! Weighted Chebyshev sums, Dirichlet characters, central L-function
//! constants, screw functions and truncated explicit formulas over zeros,
//! all in double precision with compensated, thread-count independent
//! summation.

pub mod arith;
pub mod characters;
pub mod checks;
pub mod config;
pub mod error;
pub mod explicit;
pub mod grid;
pub mod specials;
pub mod summation;
pub mod sums;
pub mod zeros;

pub use arith::MangoldtTable;
pub use characters::{CharacterGroup, DirichletCharacter};
pub use checks::{CheckReport, Target, TargetKind};
pub use config::{Tolerances, Window, DEFAULT_TOLERANCES};
pub use error::{Error, Result};
pub use grid::{Grid, Spacing};
pub use summation::CompensatedSum;
pub use sums::Finding;
pub use zeros::{ZeroLabel, ZeroSet};
