//! Interleaved quaternary sequences of even period with optimal
//! autocorrelation, and their exact 4-adic complexity.
//!
//! The crate builds binary base sequences (twin-prime pairs, GMW pairs,
//! cyclotomic sequences of order four), interleaves them through the Gray
//! map into quaternary sequences of period 2n, measures auto- and
//! cross-correlation exactly, and computes `gcd(S(4), 4^(2n) - 1)` with
//! arbitrary-precision integers. Closed-form divisor predictions and an
//! algebraic identity suite over class sums ("Gauss periods") let every
//! construction be verified end to end in exact arithmetic.

pub mod correlate;
pub mod error;
pub mod fouradic;
pub mod gaussalg;
pub mod interleave;
pub mod modarith;
pub mod seqgen;

pub use error::{Error, Result};

pub use correlate::{binary_autocorr_profile, binary_crosscorr, quaternary_autocorr, rmax, GaussianInt};
pub use fouradic::{complexity, predicted_d, s4_closedform_check, s_of_4, verify_theorem, ComplexityReport, Prediction, Verdict};
pub use gaussalg::{check_identity_suite, d1, d2, gauss_periods, GaussPeriods, IdentitySuiteReport};
pub use interleave::{
    admissible_tuples, gray, Assignment, ConstructionSpec, EVector, FamilyKind, FamilyParams,
    Parity, QuaternarySequence, TupleClass,
};
pub use modarith::{crt_split, gcd_big, geom_sum4, pow4_mod, Residue};
pub use seqgen::{
    cyclo_sequence, cyclotomic_numbers, cyclotomic_structure, gmw_pair, modify_flip,
    twin_prime_pair, BinarySequence, CyclotomicStructure, GmwConfig,
};
