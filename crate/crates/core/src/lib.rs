//! Loewner-order verification of weighted operator means, Tsallis relative operator
//! entropy and the reverse inequalities built on them.

pub mod checks;
pub mod constants;
pub mod error;
pub mod fuzz;
pub mod linalg;
pub mod maps;
pub mod matrix;
pub mod means;
pub mod repro;
pub mod sampling;
pub mod scalar;

pub use error::{Error, Result};
pub use maps::MapSpec;
pub use scalar::Real;

pub type Matrix = matrix::SquareMatrix<f64>;
pub type Matrix32 = matrix::SquareMatrix<f32>;
pub type Rect = matrix::RectMatrix<f64>;
