//! Sequences as unordered multisets over `C(k;n)`, `Z/nZ` and the positive
//! integers.
//!
//! Every sequence keeps its terms in canonical non-decreasing order, so
//! structural equality is multiset equality. "Distinct subsequences" are
//! always counted positionally, as index subsets of this canonical term list.
//!
//! The text format is a comma-separated list of integers (`1,1,2,5`); the
//! empty sequence is the empty string.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::caps::Caps;
use crate::error::{check_cap, invalid, Error, Result};
use crate::semigroup::{CyclicSemigroup, Element, Residue};

/// Parses a comma-separated list of nonnegative integers.
pub fn parse_list(input: &str) -> Result<Vec<u64>> {
    let trimmed = input.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|item| {
            let item = item.trim();
            item.parse::<u64>().map_err(|_| Error::Parse {
                input: input.to_string(),
                reason: format!("{item:?} is not a nonnegative integer"),
            })
        })
        .collect()
}

fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (i, t) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{t}")?;
    }
    Ok(())
}

macro_rules! serialize_as_text {
    ($ty:ty) => {
        impl Serialize for $ty {
            fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
                serializer.collect_str(self)
            }
        }
    };
}

/// A sequence over `C(k;n)`; terms are element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemigroupSequence {
    semigroup: CyclicSemigroup,
    terms: Vec<Element>,
}

impl SemigroupSequence {
    pub fn new(semigroup: CyclicSemigroup, indices: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut terms = indices
            .into_iter()
            .map(|i| semigroup.element(i))
            .collect::<Result<Vec<_>>>()?;
        terms.sort_unstable();
        Ok(SemigroupSequence { semigroup, terms })
    }

    pub fn from_elements(semigroup: CyclicSemigroup, mut terms: Vec<Element>) -> Self {
        terms.sort_unstable();
        SemigroupSequence { semigroup, terms }
    }

    pub fn parse(semigroup: CyclicSemigroup, text: &str) -> Result<Self> {
        Self::new(semigroup, parse_list(text)?)
    }

    pub fn semigroup(&self) -> &CyclicSemigroup {
        &self.semigroup
    }

    pub fn terms(&self) -> &[Element] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `v_a(T)`.
    pub fn multiplicity(&self, a: Element) -> usize {
        self.terms.iter().filter(|&&t| t == a).count()
    }

    pub fn concat(&self, other: &SemigroupSequence) -> Self {
        debug_assert_eq!(self.semigroup, other.semigroup);
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        Self::from_elements(self.semigroup, terms)
    }

    /// The integer sequence of indices `Ind(a)` of the terms.
    pub fn index_sequence(&self) -> IntSequence {
        IntSequence::from_sorted(self.terms.iter().map(|a| a.ind() as u64).collect())
    }

    /// Sum of `Ind(a)` over all terms.
    pub fn index_sum(&self) -> u64 {
        self.terms.iter().map(|a| a.ind() as u64).sum()
    }
}

impl fmt::Display for SemigroupSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.terms)
    }
}
serialize_as_text!(SemigroupSequence);

/// A sequence over `Z/nZ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueSequence {
    modulus: u32,
    terms: Vec<u32>,
}

impl ResidueSequence {
    pub fn new(modulus: u32, values: impl IntoIterator<Item = u64>) -> Result<Self> {
        if modulus == 0 {
            return Err(invalid("n", 0, "modulus must be at least 1"));
        }
        let mut terms = values
            .into_iter()
            .map(|v| Residue::new(v, modulus).map(Residue::value))
            .collect::<Result<Vec<_>>>()?;
        terms.sort_unstable();
        Ok(ResidueSequence { modulus, terms })
    }

    /// Reduces arbitrary integers modulo `modulus`.
    pub fn from_integers(modulus: u32, values: impl IntoIterator<Item = i64>) -> Self {
        assert!(modulus > 0);
        let m = modulus as i64;
        let mut terms: Vec<u32> = values.into_iter().map(|v| v.rem_euclid(m) as u32).collect();
        terms.sort_unstable();
        ResidueSequence { modulus, terms }
    }

    pub(crate) fn from_sorted_unchecked(modulus: u32, terms: Vec<u32>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(terms.iter().all(|&t| t < modulus));
        ResidueSequence { modulus, terms }
    }

    pub fn parse(modulus: u32, text: &str) -> Result<Self> {
        Self::new(modulus, parse_list(text)?)
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn terms(&self) -> &[u32] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn multiplicity(&self, r: u32) -> usize {
        self.terms.iter().filter(|&&t| t == r).count()
    }

    pub fn concat(&self, other: &ResidueSequence) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        terms.sort_unstable();
        ResidueSequence {
            modulus: self.modulus,
            terms,
        }
    }

    /// Distinct values with their multiplicities, in increasing order.
    pub fn support(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &t in &self.terms {
            match out.last_mut() {
                Some((v, m)) if *v == t => *m += 1,
                _ => out.push((t, 1)),
            }
        }
        out
    }

    /// Sum of the terms modulo `n`.
    pub fn sum(&self) -> u32 {
        (self.terms.iter().map(|&t| t as u64).sum::<u64>() % self.modulus as u64) as u32
    }

    /// `Σ(T)` as a set of residues.
    pub fn subsums(&self) -> BTreeSet<u32> {
        let n = self.modulus as usize;
        let mut reach = vec![false; n];
        for &a in &self.terms {
            let prev = reach.clone();
            for (r, &hit) in prev.iter().enumerate() {
                if hit {
                    reach[(r + a as usize) % n] = true;
                }
            }
            reach[a as usize] = true;
        }
        reach
            .iter()
            .enumerate()
            .filter_map(|(r, &hit)| hit.then_some(r as u32))
            .collect()
    }

    pub fn is_zero_sum_free(&self) -> bool {
        !self.subsums().contains(&0)
    }
}

impl fmt::Display for ResidueSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.terms)
    }
}
serialize_as_text!(ResidueSequence);

/// A sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntSequence {
    terms: Vec<u64>,
}

impl IntSequence {
    pub fn new(values: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut terms: Vec<u64> = values.into_iter().collect();
        if let Some(&bad) = terms.iter().find(|&&t| t == 0) {
            return Err(invalid("term", bad, "integer sequences take positive terms"));
        }
        terms.sort_unstable();
        Ok(IntSequence { terms })
    }

    pub(crate) fn from_sorted(terms: Vec<u64>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(terms.iter().all(|&t| t >= 1));
        IntSequence { terms }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(parse_list(text)?)
    }

    pub fn terms(&self) -> &[u64] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.terms.iter().sum()
    }

    pub fn concat(&self, other: &IntSequence) -> Self {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        terms.sort_unstable();
        IntSequence { terms }
    }

    /// `Σ(T)` over the integers.
    pub fn subsums(&self) -> BTreeSet<u64> {
        let total = self.sum() as usize;
        let mut reach = vec![false; total + 1];
        reach[0] = true;
        for &a in &self.terms {
            let a = a as usize;
            for s in (a..=total).rev() {
                if reach[s - a] {
                    reach[s] = true;
                }
            }
        }
        (1..=total).filter(|&s| reach[s]).map(|s| s as u64).collect()
    }
}

impl fmt::Display for IntSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.terms)
    }
}
serialize_as_text!(IntSequence);

/// `σ(T)`. For the empty sequence this is the identity when `k = 1` and
/// `None` (no sum) when `k > 1`.
pub fn sigma(s: &CyclicSemigroup, t: &SemigroupSequence) -> Option<Element> {
    let mut terms = t.terms().iter().copied();
    match terms.next() {
        Some(first) => Some(terms.fold(first, |acc, a| s.add(acc, a))),
        None if s.is_group() => Some(s.idempotent()),
        None => None,
    }
}

/// `Σ(T)`, the set of sums of nonempty subsequences, by incremental closure.
pub fn subsums(s: &CyclicSemigroup, t: &SemigroupSequence) -> BTreeSet<Element> {
    let order = s.order() as usize;
    let mut reach = vec![false; order + 1];
    let mut hits: Vec<u32> = Vec::new();
    for &a in t.terms() {
        hits.clear();
        hits.extend((1..=order as u32).filter(|&i| reach[i as usize]));
        for &i in &hits {
            reach[s.reduce(i as u64 + a.ind() as u64) as usize] = true;
        }
        reach[a.ind() as usize] = true;
    }
    (1..=order as u64)
        .filter(|&i| reach[i as usize])
        .map(|i| s.element(i).expect("index in range"))
        .collect()
}

/// `Ψ(T)`, the term-wise image under `psi`.
pub fn lift_psi(s: &CyclicSemigroup, t: &SemigroupSequence) -> ResidueSequence {
    let mut terms: Vec<u32> = t.terms().iter().map(|&a| s.psi(a).value()).collect();
    terms.sort_unstable();
    ResidueSequence::from_sorted_unchecked(s.n(), terms)
}

/// Number of multisets of size `length` over an alphabet of `alphabet`
/// letters, `C(alphabet + length - 1, length)`, saturating at `u128::MAX`.
pub fn multiset_count(alphabet: u64, length: u64) -> u128 {
    if alphabet == 0 {
        return u128::from(length == 0);
    }
    let top = alphabet as u128 + length as u128 - 1;
    let k = length.min(alphabet - 1) as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (top - i) / (i + 1) stays integral at every step
        acc = match acc.checked_mul(top - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// A contiguous range of the lexicographic stream of non-decreasing tuples
/// of a fixed length over `0..alphabet`.
#[derive(Debug, Clone)]
pub struct MultisetStream {
    alphabet: u32,
    length: usize,
    current: Option<Vec<u32>>,
    remaining: u128,
    start: u128,
}

/// All multisets of `length` letters from `0..alphabet_size`, as sorted
/// tuples in strictly increasing lexicographic order.
pub fn enumerate_multisets(alphabet_size: u32, length: usize) -> Result<MultisetStream> {
    enumerate_multisets_with_caps(alphabet_size, length, &Caps::global())
}

pub fn enumerate_multisets_with_caps(
    alphabet_size: u32,
    length: usize,
    caps: &Caps,
) -> Result<MultisetStream> {
    if alphabet_size == 0 {
        return Err(invalid("alphabet_size", 0, "alphabet must be nonempty"));
    }
    let total = multiset_count(alphabet_size as u64, length as u64);
    check_cap("multiset count", total, caps.multiset_count)?;
    Ok(MultisetStream::range(alphabet_size, length, 0, total))
}

impl MultisetStream {
    fn range(alphabet: u32, length: usize, start: u128, end: u128) -> Self {
        let current = (start < end).then(|| unrank(alphabet, length, start));
        MultisetStream {
            alphabet,
            length,
            current,
            remaining: end - start,
            start,
        }
    }

    /// Number of tuples left in this stream.
    pub fn remaining(&self) -> u128 {
        self.remaining
    }

    /// Splits the remaining stream into at most `parts` disjoint contiguous
    /// chunks whose concatenation is the original stream.
    pub fn split(self, parts: usize) -> Vec<MultisetStream> {
        let parts = parts.max(1) as u128;
        let total = self.remaining;
        let base = total / parts;
        let extra = total % parts;
        let mut out = Vec::new();
        let mut at = self.start;
        for i in 0..parts {
            let size = base + u128::from(i < extra);
            if size == 0 {
                continue;
            }
            out.push(MultisetStream::range(self.alphabet, self.length, at, at + size));
            at += size;
        }
        out
    }
}

impl Iterator for MultisetStream {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.remaining == 0 {
            return None;
        }
        let out = self.current.take()?;
        self.remaining -= 1;
        self.start += 1;
        if self.remaining > 0 {
            let mut next = out.clone();
            let top = self.alphabet - 1;
            let i = next
                .iter()
                .rposition(|&v| v < top)
                .expect("successor exists while items remain");
            let v = next[i] + 1;
            for slot in &mut next[i..] {
                *slot = v;
            }
            self.current = Some(next);
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (n, usize::try_from(self.remaining).ok())
    }
}

/// The `rank`-th non-decreasing tuple in lexicographic order.
fn unrank(alphabet: u32, length: usize, mut rank: u128) -> Vec<u32> {
    let mut out = Vec::with_capacity(length);
    let mut lo = 0u32;
    for pos in 0..length {
        let rest = (length - pos - 1) as u64;
        let mut v = lo;
        loop {
            let block = multiset_count((alphabet - v) as u64, rest);
            if rank < block {
                break;
            }
            rank -= block;
            v += 1;
        }
        out.push(v);
        lo = v;
    }
    out
}

/// Depth-first walk over all non-decreasing tuples over `0..alphabet` of
/// length `1..=max_len` whose first letter is `first`.
///
/// `visit` sees each tuple once, parents before children, in lexicographic
/// order; returning `false` skips the tuple's extensions.
pub fn walk_multisets_from<F>(alphabet: u32, max_len: usize, first: u32, mut visit: F)
where
    F: FnMut(&[u32]) -> bool,
{
    if max_len == 0 || first >= alphabet {
        return;
    }
    let mut stack = vec![first];
    fn go<F: FnMut(&[u32]) -> bool>(stack: &mut Vec<u32>, alphabet: u32, max_len: usize, visit: &mut F) {
        if !visit(stack) || stack.len() == max_len {
            return;
        }
        let lo = *stack.last().expect("nonempty");
        for v in lo..alphabet {
            stack.push(v);
            go(stack, alphabet, max_len, visit);
            stack.pop();
        }
    }
    go(&mut stack, alphabet, max_len, &mut visit);
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sg(k: u64, n: u64) -> CyclicSemigroup {
        CyclicSemigroup::new(k, n).unwrap()
    }

    fn brute_subsums(s: &CyclicSemigroup, t: &SemigroupSequence) -> BTreeSet<Element> {
        let terms = t.terms();
        (1u32..(1 << terms.len()))
            .map(|mask| {
                let picked: Vec<Element> = (0..terms.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| terms[i])
                    .collect();
                sigma(s, &SemigroupSequence::from_elements(*s, picked)).unwrap()
            })
            .collect()
    }

    #[test]
    fn sigma_examples() {
        let s = sg(3, 4);
        let t = SemigroupSequence::new(s, [2, 3, 5]).unwrap();
        assert_eq!(sigma(&s, &t).unwrap().ind(), 6);
        // 2 + 3 + 5 = 10 by repeated addition of the generator
        assert_eq!(s.reduce(10), 6);

        let g = sg(1, 3);
        assert_eq!(sigma(&g, &SemigroupSequence::new(g, []).unwrap()).unwrap().ind(), 3);
        let s22 = sg(2, 2);
        assert_eq!(sigma(&s22, &SemigroupSequence::new(s22, [1, 1]).unwrap()).unwrap().ind(), 2);
        assert_eq!(sigma(&s22, &SemigroupSequence::new(s22, []).unwrap()), None);
    }

    #[test]
    fn subsums_examples() {
        let ints = IntSequence::new([1, 3]).unwrap();
        assert_eq!(ints.subsums(), BTreeSet::from([1, 3, 4]));

        let s = sg(1, 4);
        let t = SemigroupSequence::new(s, [1, 1]).unwrap();
        let got: Vec<u32> = subsums(&s, &t).into_iter().map(Element::ind).collect();
        assert_eq!(got, vec![1, 2]);

        let s = sg(2, 2);
        let t = SemigroupSequence::new(s, [1, 1, 3]).unwrap();
        let got: Vec<u32> = subsums(&s, &t).into_iter().map(Element::ind).collect();
        assert_eq!(got, vec![1, 2, 3]);
        assert_eq!(subsums(&s, &t), brute_subsums(&s, &t));
    }

    #[test]
    fn lift_psi_examples() {
        let s = sg(3, 4);
        let t = SemigroupSequence::new(s, [1, 4, 6]).unwrap();
        assert_eq!(lift_psi(&s, &t).terms(), &[0, 1, 2]);
        let s = sg(5, 3);
        let t = SemigroupSequence::new(s, [5, 6, 7]).unwrap();
        assert_eq!(lift_psi(&s, &t).terms(), &[0, 1, 2]);
        let g = sg(1, 5);
        let t = SemigroupSequence::new(g, [1, 3, 5, 5]).unwrap();
        assert_eq!(lift_psi(&g, &t).terms(), &[0, 0, 1, 3]);
    }

    #[test]
    fn multiset_counts() {
        assert_eq!(enumerate_multisets(3, 2).unwrap().count(), 6);
        assert_eq!(enumerate_multisets(1, 7).unwrap().count(), 1);
        let empty: Vec<_> = enumerate_multisets(5, 0).unwrap().collect();
        assert_eq!(empty, vec![Vec::<u32>::new()]);
        assert_eq!(multiset_count(8, 5), 792);
        assert_eq!(multiset_count(0, 0), 1);
        assert_eq!(multiset_count(0, 3), 0);
        assert!(enumerate_multisets(0, 1).is_err());
        let caps = Caps {
            multiset_count: 5,
            ..Caps::default()
        };
        assert!(matches!(
            enumerate_multisets_with_caps(3, 2, &caps),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn multiset_stream_is_strictly_increasing_and_complete() {
        for alphabet in 1..=5u32 {
            for len in 0..=5usize {
                let all: Vec<Vec<u32>> = enumerate_multisets(alphabet, len).unwrap().collect();
                assert_eq!(all.len() as u128, multiset_count(alphabet as u64, len as u64));
                assert!(all.windows(2).all(|w| w[0] < w[1]));
                assert!(all.iter().all(|m| m.windows(2).all(|w| w[0] <= w[1])));
                for parts in 1..=7 {
                    let chunks = enumerate_multisets(alphabet, len).unwrap().split(parts);
                    let joined: Vec<Vec<u32>> = chunks.into_iter().flatten().collect();
                    assert_eq!(joined, all);
                }
            }
        }
    }

    #[test]
    fn walk_visits_every_tuple_once() {
        let mut seen = Vec::new();
        for first in 0..4 {
            walk_multisets_from(4, 3, first, |t| {
                seen.push(t.to_vec());
                true
            });
        }
        let expected: usize = (1..=3).map(|l| multiset_count(4, l) as usize).sum();
        assert_eq!(seen.len(), expected);
        let set: BTreeSet<_> = seen.iter().cloned().collect();
        assert_eq!(set.len(), expected);
        assert!(seen.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn walk_prunes_subtrees() {
        let mut seen = 0;
        walk_multisets_from(3, 4, 0, |t| {
            seen += 1;
            t.len() < 2
        });
        // [0], then [0,x] for x in 0..3, none extended further
        assert_eq!(seen, 4);
    }

    #[test]
    fn text_format() {
        let s = sg(2, 2);
        assert!(matches!(
            SemigroupSequence::parse(s, "1,9"),
            Err(Error::ElementOutOfRange { ind: 9, .. })
        ));
        assert!(matches!(SemigroupSequence::parse(s, "1,x"), Err(Error::Parse { .. })));
        assert_eq!(SemigroupSequence::parse(s, "3, 1,1").unwrap().to_string(), "1,1,3");
        assert_eq!(SemigroupSequence::parse(s, "").unwrap().len(), 0);
        assert!(ResidueSequence::parse(6, "6").is_err());
        assert!(IntSequence::parse("0,1").is_err());
    }

    proptest! {
        #[test]
        fn sigma_is_order_independent(k in 1u64..6, n in 1u64..6, raw in prop::collection::vec(1u64..100, 0..10), seed in any::<u64>()) {
            let s = sg(k, n);
            let order = s.order() as u64;
            let idx: Vec<u64> = raw.iter().map(|v| 1 + v % order).collect();
            let t = SemigroupSequence::new(s, idx.clone()).unwrap();
            // fold in a shuffled order
            let mut shuffled = idx.clone();
            let mut state = seed;
            for i in (1..shuffled.len()).rev() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                shuffled.swap(i, (state >> 33) as usize % (i + 1));
            }
            let folded = shuffled.iter().map(|&i| s.element(i).unwrap()).reduce(|a, b| s.add(a, b));
            match folded {
                Some(e) => prop_assert_eq!(sigma(&s, &t), Some(e)),
                None => prop_assert_eq!(sigma(&s, &t), if k == 1 { Some(s.idempotent()) } else { None }),
            }
        }

        #[test]
        fn subsums_match_brute_force(k in 1u64..6, n in 1u64..6, raw in prop::collection::vec(1u64..100, 0..12)) {
            let s = sg(k, n);
            let order = s.order() as u64;
            let t = SemigroupSequence::new(s, raw.iter().map(|v| 1 + v % order)).unwrap();
            prop_assert_eq!(subsums(&s, &t), brute_subsums(&s, &t));
        }

        #[test]
        fn lift_psi_commutes_with_concat(k in 1u64..6, n in 1u64..6, a in prop::collection::vec(1u64..100, 0..8), b in prop::collection::vec(1u64..100, 0..8)) {
            let s = sg(k, n);
            let order = s.order() as u64;
            let t1 = SemigroupSequence::new(s, a.iter().map(|v| 1 + v % order)).unwrap();
            let t2 = SemigroupSequence::new(s, b.iter().map(|v| 1 + v % order)).unwrap();
            prop_assert_eq!(lift_psi(&s, &t1.concat(&t2)), lift_psi(&s, &t1).concat(&lift_psi(&s, &t2)));
            prop_assert_eq!(lift_psi(&s, &t1).len(), t1.len());
        }

        #[test]
        fn canonical_text_round_trips(n in 1u32..20, raw in prop::collection::vec(0u64..1000, 0..12)) {
            let t = ResidueSequence::new(n, raw.iter().map(|v| v % n as u64)).unwrap();
            let text = t.to_string();
            let back = ResidueSequence::parse(n, &text).unwrap();
            prop_assert_eq!(&back, &t);
            prop_assert_eq!(back.to_string(), text);
            let ints = IntSequence::new(raw.iter().map(|v| v + 1)).unwrap();
            prop_assert_eq!(IntSequence::parse(&ints.to_string()).unwrap(), ints);
        }
    }
}
