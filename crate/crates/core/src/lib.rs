//! Squarefree monomial ideals, tower sets and Hilbert-Burch matrices of
//! height-two Cohen-Macaulay monomial ideals.

pub mod error;
pub mod gentower;
pub mod hilbert_burch;
pub mod linalg;
pub mod monomial;
pub mod resolution;
pub mod selftest;
pub mod series;
pub mod tower;

pub use error::{Error, Result};
pub use monomial::{Monomial, MonomialIdeal, PrimeSupport};
pub use series::{HilbertVector, IntPoly};
pub use tower::{DegreeTable, LeftSegment, PointSet};
