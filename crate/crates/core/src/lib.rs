//! List decoding of repeated Reed-Solomon codes.
//!
//! A word of the ℓ-fold repetition of an RS code is decoded by assigning
//! interpolation multiplicities from block agreement, interpolating a
//! bivariate polynomial through those points and extracting its y-roots.

pub mod bounds;
pub mod cli;
pub mod decoder;
pub mod error;
pub mod factorization;
pub mod galois;
pub mod interpolation;
pub mod polynomial;
pub mod rscode;
pub mod simulator;
pub mod tables;

pub use decoder::{
    assign_multiplicities, decode, decode_with, AssignmentStrategy, Candidate, DecodeOutput, Diagnostics, ReceivedWord,
    RepeatedCode,
};
pub use error::{Error, Result};
pub use galois::{Elem, Field, FieldDescriptor, FieldElement};
pub use interpolation::{compute_q, InterpolationResult, MultiplicityMatrix};
pub use polynomial::{BiPoly, UniPoly, WeightedOrder};
pub use rscode::{CodeDescriptor, Codeword, RSCode};
