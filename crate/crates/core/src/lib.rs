//! Exact computations on the octonions 𝕆, the exceptional Lie algebra
//! 𝔤₂ = Der(𝕆), its root system, and the adjoint orbit types of G₂.
//!
//! All algebraic work is done over ℚ or ℚ(i); the only floating-point code is
//! [`derivation::exp_derivation_numeric`], which maps derivations to
//! approximate automorphisms.

pub mod cayley;
pub mod checks;
pub mod cli;
pub mod derivation;
mod error;
pub mod linalg;
pub mod orbit;
pub mod roots;

pub use cayley::{oct_mul, ComplexModelElement, Octonion};
pub use derivation::{derivation_basis, exp_derivation_numeric, Derivation, G2Basis, SubalgebraSummary};
pub use error::{Error, Result};
pub use linalg::{GaussianRational, Matrix, Rational};
pub use orbit::{classify, scan, Census, ClassificationReport, NamingConvention, OrbitType};
pub use roots::{cartan_basis, cartan_element, root_system, weyl_reflect, CartanElement, LengthClass, Root, RootSystem};
