//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum CoreError {
    /// A partition was given with parts that are not weakly decreasing and positive.
    #[error("invalid partition: parts must be weakly decreasing and positive, got {0:?}")]
    InvalidPartition(Vec<u32>),

    /// Row insertion at a position that is already occupied in the Maya diagram.
    #[error("insertion position {0} is already a member of the diagram")]
    InsertionOccupied(i64),

    /// An index set must consist of distinct integers.
    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),

    /// Adding two exponential-polynomial functions with different exponents is
    /// outside the closed class we represent.
    #[error("exponent mismatch: cannot add exponential factors exp({0}) and exp({1})")]
    ExponentMismatch(String, String),

    /// The exponent of an exponential-polynomial function must be a polynomial
    /// of total degree at most 2 in x and z only.
    #[error("invalid exponent for exponential factor: {0}")]
    InvalidExponent(String),

    /// Numeric evaluation hit a zero (or vanishingly small) denominator.
    #[error("evaluation at x = {x}, |z| = {z_abs} is too close to a pole (|denominator| = {den_abs})")]
    PoleAtEvaluation { x: f64, z_abs: f64, den_abs: f64 },

    /// Exact polynomial division was requested but the divisor does not divide.
    #[error("exact polynomial division failed: {0} is not divisible by {1}")]
    NotDivisible(String, String),

    /// The potential has singularities on the real line; time evolution and
    /// uncertainty integrals are only defined for regular diagrams.
    #[error("Maya diagram is not regular: its Wronskian polynomial has real zeros")]
    NotRegular,

    /// An operator identity that was asserted to hold failed; carries the first
    /// differing derivative order and the two coefficient strings.
    #[error("operator mismatch at derivative order {order}: lhs = {lhs}, rhs = {rhs}")]
    OperatorMismatch {
        order: usize,
        lhs: String,
        rhs: String,
    },

    /// A requested ladder operator does not annihilate the state it was applied to.
    #[error("ladder operator with shift {shift} is not an annihilator (kernel index {witness} is a member of the diagram)")]
    NotAnnihilator { shift: i64, witness: i64 },

    /// Composite quadrature failed to converge to the requested tolerance.
    #[error("quadrature did not converge: after {panels} panels relative change is {rel_change:e} (target {target:e})")]
    QuadratureNonConvergence {
        panels: usize,
        rel_change: f64,
        target: f64,
    },

    /// Malformed textual input (CLI-facing parsers).
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
}
