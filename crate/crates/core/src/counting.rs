//! Exact counting of subsequences by sum.
//!
//! All counts are positional: two equal-valued terms give two distinct
//! subsequences. Counts are arbitrary precision; the dynamic programs use a
//! `u128` table whenever `2^|T|` fits, which bounds every table entry.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Add;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::caps::Caps;
use crate::error::{check_cap, invalid, Result};
use crate::semigroup::{CyclicSemigroup, Element};
use crate::sequence::{IntSequence, ResidueSequence, SemigroupSequence};

/// A nonnegative arbitrary-precision count. Serializes as a decimal string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Count(BigUint);

impl Count {
    pub fn zero() -> Self {
        Count(BigUint::zero())
    }

    pub fn one() -> Self {
        Count(BigUint::one())
    }

    /// `2^exp`.
    pub fn pow2(exp: u64) -> Self {
        Count(BigUint::one() << exp)
    }

    /// `2^exp - 1`.
    pub fn pow2_minus_one(exp: u64) -> Self {
        Count((BigUint::one() << exp) - 1u32)
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Whether `self < 2^exp - 1 + offset` holds over the reals, with
    /// `offset ∈ {0, 1}`. Negative exponents are handled exactly:
    /// `2^exp ∈ (0, 1)` there.
    pub fn below_pow2_threshold(&self, exp: i64, offset: u32) -> bool {
        if exp < 0 {
            // self < offset - 1 + f with 0 < f < 1  <=>  self <= offset - 1
            offset >= 1 && self.0 <= BigUint::from(offset - 1)
        } else {
            self.0.clone() + 1u32 < (BigUint::one() << exp as u64) + offset
        }
    }
}

impl From<u64> for Count {
    fn from(v: u64) -> Self {
        Count(BigUint::from(v))
    }
}

impl From<u128> for Count {
    fn from(v: u128) -> Self {
        Count(BigUint::from(v))
    }
}

impl From<BigUint> for Count {
    fn from(v: BigUint) -> Self {
        Count(v)
    }
}

impl Add for Count {
    type Output = Count;
    fn add(self, rhs: Count) -> Count {
        Count(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a Count> for &'a Count {
    type Output = Count;
    fn add(self, rhs: &Count) -> Count {
        Count(&self.0 + &rhs.0)
    }
}

impl std::iter::Sum for Count {
    fn sum<I: Iterator<Item = Count>>(iter: I) -> Count {
        iter.fold(Count::zero(), |a, b| a + b)
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Count {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Cell type of the counting tables.
trait Cell: Clone + Zero + One + for<'a> std::ops::AddAssign<&'a Self> {
    fn into_count(self) -> Count;
}

impl Cell for u128 {
    fn into_count(self) -> Count {
        Count::from(self)
    }
}

impl Cell for BigUint {
    fn into_count(self) -> Count {
        Count(self)
    }
}

/// Total number of subsets is `2^len`; below 128 terms no cell can overflow.
fn fits_u128(len: usize) -> bool {
    len < 128
}

/// Table of subset counts per semigroup element; slot 0 is the empty subset.
fn element_table<C: Cell>(s: &CyclicSemigroup, t: &SemigroupSequence) -> Vec<C> {
    let order = s.order() as usize;
    let mut table = vec![C::zero(); order + 1];
    table[0] = C::one();
    let mut next = table.clone();
    for &a in t.terms() {
        next.clone_from(&table);
        next[a.ind() as usize] += &table[0];
        for (i, c) in table.iter().enumerate().skip(1) {
            if c.is_zero() {
                continue;
            }
            let j = s.reduce(i as u64 + a.ind() as u64) as usize;
            next[j] += c;
        }
        std::mem::swap(&mut table, &mut next);
    }
    table
}

fn count_from_table<C: Cell>(
    s: &CyclicSemigroup,
    table: Vec<C>,
    targets: &BTreeSet<Element>,
    include_empty: bool,
) -> Count {
    let mut total = C::zero();
    for e in targets {
        total += &table[e.ind() as usize];
    }
    if include_empty && s.is_group() && targets.contains(&s.idempotent()) {
        total += &table[0];
    }
    total.into_count()
}

/// `N(T; X)`: the number of index subsets `W` of `T` with `σ(W) ∈ X`.
///
/// The empty subset is counted only when `include_empty_as_identity` is set
/// and `k = 1`, and then only if the identity lies in `X`.
pub fn count_with_sum_in(
    s: &CyclicSemigroup,
    t: &SemigroupSequence,
    targets: &BTreeSet<Element>,
    include_empty_as_identity: bool,
) -> Result<Count> {
    if targets.is_empty() {
        return Err(invalid("X", "{}", "target set must be nonempty"));
    }
    Ok(if fits_u128(t.len()) {
        count_from_table(s, element_table::<u128>(s, t), targets, include_empty_as_identity)
    } else {
        count_from_table(s, element_table::<BigUint>(s, t), targets, include_empty_as_identity)
    })
}

/// `N(T; e)`: subsequences summing to the idempotent, with the empty
/// subsequence counted exactly when `k = 1`.
pub fn count_idempotent_sum(s: &CyclicSemigroup, t: &SemigroupSequence) -> Count {
    let targets = BTreeSet::from([s.idempotent()]);
    count_with_sum_in(s, t, &targets, true).expect("nonempty target set")
}

/// `N(T; e)` through the index characterization: a nonempty `W` sums to `e`
/// iff its index sum is at least `ceil(k/n) n` and divisible by `n`.
pub fn count_idempotent_sum_by_index(s: &CyclicSemigroup, t: &SemigroupSequence) -> Result<Count> {
    let nonempty = count_threshold_congruence(&t.index_sequence(), s.erdos_burgess(), s.n() as u64)?;
    Ok(nonempty + Count::from(u64::from(s.is_group())))
}

/// `N(T)` over `Z/nZ`: zero-sum subsequences, the empty one included.
pub fn count_zero_sum(t: &ResidueSequence) -> Count {
    if fits_u128(t.len()) {
        residue_table::<u128>(t)[0].into_count()
    } else {
        residue_table::<BigUint>(t)[0].clone().into_count()
    }
}

fn residue_table<C: Cell>(t: &ResidueSequence) -> Vec<C> {
    let n = t.modulus() as usize;
    let mut table = vec![C::zero(); n];
    table[0] = C::one();
    let mut next = table.clone();
    for &a in t.terms() {
        next.clone_from(&table);
        for r in 0..n {
            next[(r + a as usize) % n] += &table[r];
        }
        std::mem::swap(&mut table, &mut next);
    }
    table
}

/// Subset-enumeration oracle for [`count_with_sum_in`].
pub fn brute_force_count(
    s: &CyclicSemigroup,
    t: &SemigroupSequence,
    targets: &BTreeSet<Element>,
    include_empty_as_identity: bool,
) -> Result<Count> {
    brute_force_count_with_caps(s, t, targets, include_empty_as_identity, &Caps::global())
}

pub fn brute_force_count_with_caps(
    s: &CyclicSemigroup,
    t: &SemigroupSequence,
    targets: &BTreeSet<Element>,
    include_empty_as_identity: bool,
    caps: &Caps,
) -> Result<Count> {
    if targets.is_empty() {
        return Err(invalid("X", "{}", "target set must be nonempty"));
    }
    check_cap("brute-force length", t.len() as u128, caps.brute_force_len as u128)?;
    let terms = t.terms();
    let mut hits: u64 = 0;
    // Every subset, grown one position at a time; `acc` is σ of the chosen
    // positions so far (None while nothing is chosen).
    fn walk(
        s: &CyclicSemigroup,
        terms: &[Element],
        targets: &BTreeSet<Element>,
        acc: Option<Element>,
        hits: &mut u64,
    ) {
        match terms.split_first() {
            None => {
                if let Some(e) = acc {
                    if targets.contains(&e) {
                        *hits += 1;
                    }
                }
            }
            Some((&a, rest)) => {
                walk(s, rest, targets, acc, hits);
                let with = match acc {
                    Some(e) => s.add(e, a),
                    None => a,
                };
                walk(s, rest, targets, Some(with), hits);
            }
        }
    }
    walk(s, terms, targets, None, &mut hits);
    if include_empty_as_identity && s.is_group() && targets.contains(&s.idempotent()) {
        hits += 1;
    }
    Ok(Count::from(hits))
}

/// The main lower bound on `N(T; e)` for `|T| = length`:
/// `2^(length - ceil(k/n) n + 1) - 1 + [k = 1]`.
///
/// When the exponent is negative the real-valued expression lies strictly
/// between `[k = 1] - 1` and `[k = 1]`; the returned value is its integer
/// ceiling, `[k = 1]`, which is still a valid bound since every count is at
/// least `[k = 1]`.
pub fn main_lower_bound(s: &CyclicSemigroup, length: u64) -> Count {
    let floor_one_over_k = u64::from(s.is_group());
    let exp = length as i64 - s.erdos_burgess() as i64 + 1;
    if exp < 0 {
        Count::from(floor_one_over_k)
    } else {
        Count::pow2_minus_one(exp as u64) + Count::from(floor_one_over_k)
    }
}

/// `C(m, j)` as an exact integer.
pub fn binomial(m: u64, j: u64) -> BigUint {
    if j > m {
        return BigUint::zero();
    }
    let j = j.min(m - j);
    let mut acc = BigUint::one();
    for i in 0..j {
        acc *= m - i;
        acc /= i + 1;
    }
    acc
}

/// `Σ_{j ≥ h} C(m, jn)`.
pub fn binomial_tail_sum(m: u64, h: u64, n: u64) -> Result<Count> {
    if h == 0 {
        return Err(invalid("h", h, "must be positive"));
    }
    if n == 0 {
        return Err(invalid("n", n, "must be positive"));
    }
    let mut total = BigUint::zero();
    let mut j = h;
    while j.saturating_mul(n) <= m {
        total += binomial(m, j * n);
        j += 1;
    }
    Ok(Count(total))
}

/// Number of nonempty index subsets `W` of `T` with `σ(W) ≥ threshold` and
/// `σ(W) ≡ 0 (mod n)`.
pub fn count_threshold_congruence(t: &IntSequence, threshold: u64, n: u64) -> Result<Count> {
    count_threshold_congruence_with_caps(t, threshold, n, &Caps::global())
}

pub fn count_threshold_congruence_with_caps(
    t: &IntSequence,
    threshold: u64,
    n: u64,
    caps: &Caps,
) -> Result<Count> {
    if n == 0 {
        return Err(invalid("n", n, "must be positive"));
    }
    check_cap("threshold", threshold as u128, caps.threshold as u128)?;
    check_cap("modulus", n as u128, caps.threshold as u128)?;
    Ok(if fits_u128(t.len()) {
        threshold_table::<u128>(t, threshold, n)
    } else {
        threshold_table::<BigUint>(t, threshold, n)
    })
}

/// States: the exact sum while it is below `threshold`, then only the residue.
fn threshold_table<C: Cell>(t: &IntSequence, threshold: u64, n: u64) -> Count {
    let th = threshold as usize;
    let m = n as usize;
    let mut below = vec![C::zero(); th];
    let mut saturated = vec![C::zero(); m];
    if th == 0 {
        saturated[0] = C::one();
    } else {
        below[0] = C::one();
    }
    for &a in t.terms() {
        let mut next_below = below.clone();
        let mut next_sat = saturated.clone();
        for (s, c) in below.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s2 = s as u64 + a;
            if s2 < threshold {
                next_below[s2 as usize] += c;
            } else {
                next_sat[(s2 % n) as usize] += c;
            }
        }
        let a_mod = (a % n) as usize;
        for (r, c) in saturated.iter().enumerate() {
            next_sat[(r + a_mod) % m] += c;
        }
        below = next_below;
        saturated = next_sat;
    }
    let mut total = saturated.swap_remove(0).into_count();
    if th == 0 {
        // drop the empty subset
        total = Count(total.0 - 1u32);
    }
    total
}
