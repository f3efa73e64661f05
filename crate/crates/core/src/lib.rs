//! Combinatorial shifting, exterior algebraic shifting and graded Betti
//! numbers of Stanley–Reisner ideals.

pub mod complex;
pub mod counterexample;
pub mod error;
pub mod face;
pub mod field;
pub mod gin;
pub mod homology;
pub mod io;
pub mod lexsegment;
pub mod random;
pub mod shifting;
pub mod verify;

pub use complex::{DegreeSlice, FVector, IdealSlices, Mode, SimplicialComplex};
pub use error::{Error, Result};
pub use face::Face;
pub use field::{FieldMatrix, PrimeField, DEFAULT_PRIME};
pub use gin::{gin, GenericMatrix, GinOptions, GinOutcome};
pub use homology::{betti_leq, hochster_betti, reduced_homology_dims, shifted_betti, BettiTable, HomologyProfile};
pub use lexsegment::delta_lex;
pub use random::random_complex;
pub use shifting::{enumerate_shifted, shift_ij, shift_to_shifted, ShiftSequence, Strategy};
pub use verify::{verify_theorems, VerificationReport};
