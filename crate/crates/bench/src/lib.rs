//! Fixed inputs shared by the benches.

use idemsum::{CyclicSemigroup, ResidueSequence, SemigroupSequence};

/// A spread-out sequence of `len` indices over `C(k;n)`.
pub fn spread_sequence(k: u64, n: u64, len: usize) -> (CyclicSemigroup, SemigroupSequence) {
    let s = CyclicSemigroup::new(k, n).expect("valid semigroup");
    let order = s.order() as u64;
    let idx = (0..len as u64).map(|i| (i * 7 + 3) % order + 1);
    let t = SemigroupSequence::new(s, idx).expect("indices in range");
    (s, t)
}

/// `len` residues mod `n` drawn from a fixed stride.
pub fn spread_residues(n: u32, len: usize) -> ResidueSequence {
    let terms = (0..len as u64).map(|i| (i * 5 + 1) % n as u64);
    ResidueSequence::new(n, terms).expect("residues in range")
}
