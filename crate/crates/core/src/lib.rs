pub mod classification;
pub mod curve_restriction;
pub mod error;
pub mod fan;
pub mod field;
pub mod forms;
pub mod frobenius_splitting;
pub mod json;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod repro;
pub mod smith;
pub mod toric_cohomology;
pub mod upoly;
pub mod witt;
pub mod witt_frobenius;

pub use error::{Error, Result};
pub use fan::{Fan, FanAutomorphismGroup};
pub use field::{FiniteField, Fq};
pub use forms::LogForm;
pub use poly::{FqPoly, Poly};
pub use toric_cohomology::ToricDivisor;
pub use witt::{W2Poly, WittScalar2, WittVectorPoly};
pub use witt_frobenius::FrobeniusLiftChart;
