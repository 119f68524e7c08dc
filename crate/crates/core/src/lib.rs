//! Exact filtered homological algebra.
//!
//! Coefficients are generic over [`scalar::Scalar`]; energies are always exact
//! rationals. The aliases below fix the coefficient field to `Rational`.

pub mod ainf;
pub mod corners;
pub mod error;
pub mod floer;
pub mod format;
pub mod gradecx;
pub mod matrix;
pub mod novikov;
pub mod poly;
pub mod scalar;
pub mod trees;

pub use error::{Error, Result};
pub use novikov::{DiscreteSubmonoid, MonoidElement, Novikov};
pub use scalar::{Rational, Ring, Scalar};

pub type NovikovElement = Novikov<Rational>;
pub type MatrixQ = matrix::Matrix<Rational>;
pub type GradedMapQ = gradecx::GradedMap<Rational>;
pub type CochainComplexQ = gradecx::CochainComplex<Rational>;
pub type PolyQ = poly::Poly<Rational>;
pub type CriticalDataQ = floer::CriticalData<Rational>;
pub type PartialComplexQ = floer::PartialComplex<Rational>;
pub type PartialMapQ = floer::PartialMap<Rational>;
pub type PartialHomotopyQ = floer::PartialHomotopy<Rational>;
pub type AinfOperationsQ = ainf::AinfOperations<Rational>;
pub type PseudoIsotopyQ = ainf::PseudoIsotopy<Rational>;
