//! Exact symmetry classification of constant-coefficient linear partial
//! differential operators on space-time.
//!
//! The library decides translation, rotation, Lorentz, and dilation
//! invariance of operator symbols by exact rational computation, rewrites
//! invariant symbols as polynomials in the wave-operator symbol
//! `q = tau^2 - |xi|^2` (or `|xi|^2` in the Euclidean case), and produces
//! concrete group-element witnesses when invariance fails.

pub mod classify;
pub mod gen;
pub mod group;
pub mod jsonio;
pub mod matrix;
pub mod operator;
pub mod parse;
pub mod poly;
pub mod scalar;

pub use classify::{
    classify_dilation, classify_lorentz, classify_operator, classify_rotation, witness_search,
    CanonicalForm, ClassificationReport, DilationCertificate, DilationVerdict, Space,
    SymmetryVerdict, Witness,
};
pub use group::{GroupElement, MetricTag};
pub use operator::OperatorSpec;
pub use poly::{Monomial, SymbolPolynomial};
pub use scalar::{Rational, Scalar};
