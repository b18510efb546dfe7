//! Exact combinatorics over finite cyclic semigroups `C(k;n)`.
//!
//! The crate counts subsequences summing to the unique idempotent, certifies
//! (signed) smooth structure of sequences over `Z/nZ`, computes the zero-sum
//! invariants tied to those counts (Erdős–Burgess, Davenport, `Sgn`, `Smo`)
//! both by closed form and by exhaustive search, and runs exhaustive sweeps
//! that check the associated bounds and structure theorems on bounded grids.

pub mod caps;
pub mod counting;
pub mod error;
pub mod invariants;
pub mod semigroup;
pub mod sequence;
pub mod smoothness;
pub mod verify;

pub use caps::Caps;
pub use counting::{
    binomial_tail_sum, brute_force_count, count_idempotent_sum, count_idempotent_sum_by_index,
    count_threshold_congruence, count_with_sum_in, count_zero_sum, main_lower_bound, Count,
};
pub use error::{Error, Result};
pub use invariants::{InvariantName, InvariantResult, Mode};
pub use semigroup::{CyclicSemigroup, Element, Residue};
pub use sequence::{
    enumerate_multisets, lift_psi, sigma, subsums, IntSequence, MultisetStream, ResidueSequence,
    SemigroupSequence,
};
pub use smoothness::{SignAssignment, SmoothCertificate, TheoremBDecomposition};
pub use verify::{Failure, SuiteStatus, VerificationReport};
