//! Turán determinants of symmetric random walk polynomials.
//!
//! Polynomials are generated by `x P_n = a_n P_{n+1} + c_n P_{n-1}` with
//! `a_n = 1 - c_n`, `P_0 = 1`, `P_1 = x`, and the determinant of interest is
//! `Δ_n = P_n² - P_{n+1} P_{n-1}`. Every algorithm is generic over [`Scalar`],
//! with exact rationals ([`Rational`]) and `f64` as the two backends.

pub mod analysis;
pub mod chain;
pub mod criteria;
pub mod error;
pub mod evaluation;
pub mod poly;
pub mod representations;
pub mod scalar;
pub mod sequences;

pub use chain::{derived_table, full_table, DerivedTable, TableCell};
pub use criteria::{CheckOptions, CriterionId, CriterionReport, Overall};
pub use error::{Error, Result};
pub use evaluation::{eval_p, poly_coeffs, turan, EvaluationTrace, TuranValues};
pub use poly::{Polynomial, PolynomialCoeffs};
pub use scalar::{Backend, Rational, Scalar};
pub use sequences::spec::{Resolved, SequenceSpec};
pub use sequences::{
    gencheb_sequence, jacobi_recurrence, sieve2, sieved3_example, CoefficientSequence, NonSymmetricSequence,
    Tail,
};
