//! Exact unitary t-designs on U(n) built inductively from designs on
//! U(m) x U(n-m) and zeros of zonal spherical polynomials on the complex
//! Grassmannian, together with Haar-moment verification.
//!
//! The chain shipped with the crate builds a strong 4-design on U(1) (five
//! phases), lifts it to U(2) (5^5 elements) and then to U(4) (5^37
//! elements, handled lazily as a [`designset::DesignRecipe`]).

pub mod bounds;
pub mod config;
pub mod designset;
pub mod error;
pub mod grassmann;
pub mod linalg;
pub mod pipeline;
pub mod poly;
pub mod repindex;
pub mod symfun;
pub mod verify;
pub mod zerofind;
pub mod zonal;

pub use config::Tolerances;
pub use error::{Error, Result};
pub use linalg::ComplexMatrix;
