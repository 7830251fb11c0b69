//! Exact symbolic machinery for rational extensions of the quantum harmonic
//! oscillator, their ladder/annihilator algebras, and extended coherent states.
//!
//! Everything structural is computed over arbitrary-precision rationals:
//! partitions and Maya diagrams, Bell and Schur polynomials, vertex operators,
//! Hermite pseudo-Wronskians, intertwining and ladder operators, and the
//! generating functions that package the bound states into coherent states.
//! Floating point enters only at the final evaluation layer (plotting grids,
//! quadrature for uncertainty integrals).

pub mod scalar;
pub mod poly;
pub mod ratfn;
pub mod exppoly;
pub mod diffop;
pub mod partition;
pub mod maya;
pub mod schur;
pub mod hermite;
pub mod rational;
pub mod coherent;
pub mod quadrature;
pub mod error;

pub use error::CoreError;
