//! Smooth and signed smooth sequences over `Z/nZ`, 1-smooth integer
//! sequences, and the structural decomposition of sequences with few
//! zero-sum subsequences.
//!
//! A sequence `(n_1 g)...(n_l g)` with `1 <= n_1 <= ... <= n_l` is g-smooth
//! iff `n_1 = 1`, `Σ n_i < ord(g)` and `n_t <= 1 + Σ_{i<t} n_i`. A residue-0
//! term would need coefficient `n`, so it never belongs to a smooth
//! sequence. For `n = 1` no nonempty sequence is smooth; for `n = 2` only
//! `(1)` is.

use std::fmt;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::caps::Caps;
use crate::error::{check_cap, invalid, Error, Result};
use crate::sequence::{IntSequence, ResidueSequence};

/// One sign per certified term position.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignAssignment(Vec<i8>);

impl SignAssignment {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if let Some(&bad) = signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(invalid("sign", bad, "signs must be +1 or -1"));
        }
        Ok(SignAssignment(signs))
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for SignAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(if *s > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl Serialize for SignAssignment {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

/// Witness that a sequence over `Z/nZ` is (signed) g-smooth.
///
/// `terms[i]`, `coefficients[i]` and `signs[i]` describe the same position:
/// `signs[i] * terms[i] ≡ coefficients[i] * generator (mod n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SmoothCertificate {
    pub modulus: u32,
    pub generator: u32,
    pub terms: Vec<u32>,
    pub coefficients: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signs: Option<SignAssignment>,
}

impl SmoothCertificate {
    /// Re-checks the certificate against `t` from scratch.
    pub fn verify(&self, t: &ResidueSequence) -> bool {
        let n = self.modulus;
        if n != t.modulus() || self.terms.is_empty() || self.generator >= n.max(1) {
            return false;
        }
        if self.generator.gcd(&n) != 1 {
            return false;
        }
        if self.coefficients.len() != self.terms.len() {
            return false;
        }
        if let Some(signs) = &self.signs {
            if signs.len() != self.terms.len() {
                return false;
            }
        }
        let mut sorted = self.terms.clone();
        sorted.sort_unstable();
        if sorted != t.terms() {
            return false;
        }
        let n64 = n as u64;
        let matched = self.terms.iter().enumerate().all(|(i, &term)| {
            let negated = self.signs.as_ref().is_some_and(|s| s.signs()[i] < 0);
            let signed = if negated { (n64 - term as u64) % n64 } else { term as u64 };
            signed == (self.coefficients[i] as u64 * self.generator as u64) % n64
        });
        matched
            && self.coefficients.windows(2).all(|w| w[0] <= w[1])
            && satisfies_observation_a(&self.coefficients, n)
    }
}

impl fmt::Display for SmoothCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g={} coefficients=", self.generator)?;
        for (i, c) in self.coefficients.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        if let Some(signs) = &self.signs {
            write!(f, " signs={signs}")?;
        }
        Ok(())
    }
}

/// The three conditions on a non-decreasing coefficient list: it starts at
/// 1, sums below `order`, and each entry is at most one more than the sum of
/// the entries before it.
pub fn satisfies_observation_a(coefficients: &[u32], order: u32) -> bool {
    let Some(&first) = coefficients.first() else {
        return false;
    };
    if first != 1 {
        return false;
    }
    let mut prefix: u64 = 0;
    for &c in coefficients {
        if c == 0 || c as u64 > prefix + 1 {
            return false;
        }
        prefix += c as u64;
    }
    prefix < order as u64
}

/// Same test on a histogram `counts[c]` of coefficients in `[0, order)`.
fn histogram_is_smooth(counts: &[u32], order: u32) -> bool {
    let mut prefix: u64 = 0;
    let mut any = false;
    for (c, &m) in counts.iter().enumerate().skip(1) {
        if m == 0 {
            continue;
        }
        if c as u64 > prefix + 1 {
            return false;
        }
        any = true;
        prefix += c as u64 * m as u64;
    }
    any && counts.first().is_none_or(|&z| z == 0) && prefix < order as u64
}

/// Generators of `Z/nZ` in increasing order (`0` generates `Z/1Z`).
pub fn generators(n: u32) -> impl Iterator<Item = u32> {
    (0..n).filter(move |g| g.gcd(&n) == 1)
}

fn inverse_mod(g: u32, n: u32) -> u32 {
    if n == 1 {
        return 0;
    }
    let e = (g as i64).extended_gcd(&(n as i64));
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(n as i64) as u32
}

/// The coefficient `c ∈ [1, n]` with `term ≡ c g`; `n` stands for residue 0.
fn coefficient(term: u32, g_inv: u32, n: u32) -> u32 {
    let c = ((term as u64 * g_inv as u64) % n as u64) as u32;
    if c == 0 {
        n
    } else {
        c
    }
}

fn check_generator(g: u32, n: u32) -> Result<()> {
    let gcd = g.gcd(&n);
    if g >= n.max(1) || gcd != 1 {
        return Err(Error::InvalidGenerator { g, n, gcd });
    }
    Ok(())
}

/// Checks 1-smoothness of an integer sequence: sorted, the least term is 1
/// and every term is at most one more than the sum of the terms before it.
/// Returns the sorted sequence as witness.
pub fn is_one_smooth(t: &IntSequence) -> Result<Option<IntSequence>> {
    if t.is_empty() {
        return Err(Error::EmptySequence);
    }
    Ok(one_smooth_sorted(t.terms()).then(|| t.clone()))
}

/// 1-smoothness of a sorted slice of positive integers; false when empty.
pub fn one_smooth_sorted(terms: &[u64]) -> bool {
    if terms.first() != Some(&1) {
        return false;
    }
    let mut prefix = 0u64;
    for &a in terms {
        if a > prefix + 1 {
            return false;
        }
        prefix += a;
    }
    true
}

/// 1-smoothness through its defining property `Σ(T) = [1, σ(T)]`.
pub fn is_one_smooth_by_subsums(t: &IntSequence) -> bool {
    !t.is_empty() && t.subsums().len() as u64 == t.sum()
}

fn unsigned_certificate(t: &ResidueSequence, g: u32) -> Option<SmoothCertificate> {
    let n = t.modulus();
    let g_inv = inverse_mod(g, n);
    let mut pairs: Vec<(u32, u32)> = t
        .terms()
        .iter()
        .map(|&term| (coefficient(term, g_inv, n), term))
        .collect();
    pairs.sort_unstable();
    let coefficients: Vec<u32> = pairs.iter().map(|p| p.0).collect();
    satisfies_observation_a(&coefficients, n).then(|| SmoothCertificate {
        modulus: n,
        generator: g,
        terms: pairs.iter().map(|p| p.1).collect(),
        coefficients,
        signs: None,
    })
}

/// Certificate that `t` is g-smooth, if it is.
pub fn is_g_smooth(t: &ResidueSequence, g: u32) -> Result<Option<SmoothCertificate>> {
    check_generator(g, t.modulus())?;
    if t.is_empty() {
        return Err(Error::EmptySequence);
    }
    Ok(unsigned_certificate(t, g))
}

/// First generator (in increasing order) for which `t` is smooth.
pub fn find_smooth_generator(t: &ResidueSequence) -> Option<SmoothCertificate> {
    if t.is_empty() {
        return None;
    }
    generators(t.modulus()).find_map(|g| unsigned_certificate(t, g))
}

/// Per distinct term value: the coefficient when taken with sign `+` and the
/// one when taken with sign `-`.
struct SignedChoice {
    term: u32,
    mult: u32,
    plus: u32,
    minus: u32,
}

fn signed_choices(t: &ResidueSequence, g: u32) -> Option<Vec<SignedChoice>> {
    let n = t.modulus();
    let g_inv = inverse_mod(g, n);
    t.support()
        .into_iter()
        .map(|(term, mult)| {
            let plus = coefficient(term, g_inv, n);
            (plus < n).then_some(SignedChoice {
                term,
                mult: mult as u32,
                plus,
                minus: n - plus,
            })
        })
        .collect()
}

/// Builds a signed certificate from per-value `(plus, minus)` counts.
fn signed_certificate(n: u32, g: u32, choices: &[SignedChoice], picks: &[(u32, u32)]) -> SmoothCertificate {
    let mut rows: Vec<(u32, u32, i8)> = Vec::new();
    for (c, &(p, q)) in choices.iter().zip(picks) {
        rows.extend(std::iter::repeat_n((c.plus, c.term, 1i8), p as usize));
        rows.extend(std::iter::repeat_n((c.minus, c.term, -1i8), q as usize));
    }
    rows.sort_unstable_by_key(|a| (a.0, a.1, -a.2));
    SmoothCertificate {
        modulus: n,
        generator: g,
        terms: rows.iter().map(|r| r.1).collect(),
        coefficients: rows.iter().map(|r| r.0).collect(),
        signs: Some(SignAssignment(rows.iter().map(|r| r.2).collect())),
    }
}

/// Exhaustive search over sign counts per distinct value. With `whole`, every
/// term must be used; otherwise any subsequence is allowed and the longest
/// one wins. Returns the per-value `(plus, minus)` picks.
fn search_signed(n: u32, choices: &[SignedChoice], whole: bool) -> Option<Vec<(u32, u32)>> {
    struct Search<'a> {
        n: u32,
        choices: &'a [SignedChoice],
        whole: bool,
        counts: Vec<u32>,
        picks: Vec<(u32, u32)>,
        best: Option<(u32, Vec<(u32, u32)>)>,
    }
    impl Search<'_> {
        fn go(&mut self, idx: usize, sum: u64, len: u32) {
            if sum >= self.n as u64 {
                return;
            }
            if self.whole && self.best.is_some() {
                return;
            }
            if idx == self.choices.len() {
                if len > 0
                    && self.best.as_ref().is_none_or(|b| len > b.0)
                    && histogram_is_smooth(&self.counts, self.n)
                {
                    self.best = Some((len, self.picks.clone()));
                }
                return;
            }
            let remaining: u32 = self.choices[idx..].iter().map(|c| c.mult).sum();
            if !self.whole {
                if let Some((best, _)) = &self.best {
                    if len + remaining <= *best {
                        return;
                    }
                }
            }
            let c = &self.choices[idx];
            let (plus, minus, mult) = (c.plus as usize, c.minus as usize, c.mult);
            let same = plus == minus;
            // Larger selections first so the longest candidates are met early.
            for used in (0..=mult).rev() {
                if self.whole && used != mult {
                    continue;
                }
                let p_range: Vec<u32> = if same { vec![used] } else { (0..=used).rev().collect() };
                for p in p_range {
                    let q = used - p;
                    let add = plus as u64 * p as u64 + minus as u64 * q as u64;
                    self.counts[plus] += p;
                    self.counts[minus] += q;
                    self.picks.push((p, q));
                    self.go(idx + 1, sum + add, len + used);
                    self.picks.pop();
                    self.counts[plus] -= p;
                    self.counts[minus] -= q;
                }
            }
        }
    }
    let mut search = Search {
        n,
        choices,
        whole,
        counts: vec![0; n as usize + 1],
        picks: Vec::with_capacity(choices.len()),
        best: None,
    };
    search.go(0, 0, 0);
    search.best.map(|b| b.1)
}

/// The greedy choice `min(c, n - c)` per term; accepted when it passes.
fn greedy_signed(n: u32, choices: &[SignedChoice]) -> Option<Vec<(u32, u32)>> {
    let mut coefficients: Vec<u32> = Vec::new();
    let picks: Vec<(u32, u32)> = choices
        .iter()
        .map(|c| {
            let use_plus = c.plus <= c.minus;
            let coef = if use_plus { c.plus } else { c.minus };
            coefficients.extend(std::iter::repeat_n(coef, c.mult as usize));
            if use_plus {
                (c.mult, 0)
            } else {
                (0, c.mult)
            }
        })
        .collect();
    coefficients.sort_unstable();
    satisfies_observation_a(&coefficients, n).then_some(picks)
}

/// First generator `g` (increasing) for which some sign assignment makes `t`
/// g-smooth, with the certificate.
pub fn find_signed_smooth_generator(t: &ResidueSequence) -> Result<Option<SmoothCertificate>> {
    find_signed_smooth_generator_with_caps(t, &Caps::global())
}

pub fn find_signed_smooth_generator_with_caps(
    t: &ResidueSequence,
    caps: &Caps,
) -> Result<Option<SmoothCertificate>> {
    check_cap("sign-search length", t.len() as u128, caps.sign_search_len as u128)?;
    if t.is_empty() {
        return Ok(None);
    }
    let n = t.modulus();
    for g in generators(n) {
        let Some(choices) = signed_choices(t, g) else {
            // a residue-0 term rules out every generator
            return Ok(None);
        };
        let picks = greedy_signed(n, &choices).or_else(|| search_signed(n, &choices, true));
        if let Some(picks) = picks {
            return Ok(Some(signed_certificate(n, g, &choices, &picks)));
        }
    }
    Ok(None)
}

/// The longest subsequence of `t` that is signed g-smooth for some
/// generator, with its certificate. Ties go to the smaller generator.
pub fn longest_signed_smooth_subsequence(
    t: &ResidueSequence,
) -> Result<Option<(ResidueSequence, SmoothCertificate)>> {
    longest_signed_smooth_subsequence_with_caps(t, &Caps::global())
}

pub fn longest_signed_smooth_subsequence_with_caps(
    t: &ResidueSequence,
    caps: &Caps,
) -> Result<Option<(ResidueSequence, SmoothCertificate)>> {
    check_cap("sign-search length", t.len() as u128, caps.sign_search_len as u128)?;
    let n = t.modulus();
    let nonzero = ResidueSequence::from_sorted_unchecked(
        n,
        t.terms().iter().copied().filter(|&r| r != 0).collect(),
    );
    let mut best: Option<(ResidueSequence, SmoothCertificate)> = None;
    if nonzero.is_empty() {
        return Ok(None);
    }
    for g in generators(n) {
        let choices = signed_choices(&nonzero, g).expect("zero terms removed");
        if let Some(picks) = search_signed(n, &choices, false) {
            let cert = signed_certificate(n, g, &choices, &picks);
            if best.as_ref().is_none_or(|b| cert.terms.len() > b.1.terms.len()) {
                let mut sub = cert.terms.clone();
                sub.sort_unstable();
                best = Some((ResidueSequence::from_sorted_unchecked(n, sub), cert));
            }
        }
    }
    Ok(best)
}

/// Length of the longest signed smooth subsequence; 0 when none exists.
pub fn max_signed_smooth_sub_length(t: &ResidueSequence) -> Result<usize> {
    Ok(longest_signed_smooth_subsequence(t)?.map_or(0, |(sub, _)| sub.len()))
}

/// A reordering `T = g^[u] (-g)^[v] (x_1 g)...(x_{δ-1} g) (y_1 g)...(y_w g)`
/// with representatives `x_i, y_j ∈ (-n/2, n/2]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremBDecomposition {
    pub modulus: u32,
    pub delta: u32,
    pub generator: u32,
    pub u: usize,
    pub v: usize,
    pub x: Vec<i64>,
    pub y: Vec<i64>,
}

/// Representative of `c` in `(-n/2, n/2]`.
fn centered(c: u32, n: u32) -> i64 {
    let c = c as i64;
    let n = n as i64;
    if 2 * c > n {
        c - n
    } else {
        c
    }
}

fn check_theorem_b_delta(n: u32, delta: u32) -> Result<()> {
    // 1 <= δ <= n/4 + 1
    if delta == 0 || 4 * delta as u64 > n as u64 + 4 {
        return Err(invalid("delta", delta, format!("must satisfy 1 <= delta <= n/4 + 1 for n = {n}")));
    }
    Ok(())
}

/// Finds the decomposition: smallest generator, then smallest `u`, then the
/// `δ - 1` nonzero representatives of least absolute value as `x` (ties
/// toward positive), the rest as `y`.
pub fn theorem_b_decompose(t: &ResidueSequence, delta: u32) -> Result<Option<TheoremBDecomposition>> {
    let n = t.modulus();
    check_theorem_b_delta(n, delta)?;
    let len = t.len() as i64;
    let total = n as i64 - 2 * delta as i64 + 1;
    let w = len - n as i64 + delta as i64;
    if total < 0 || w < 0 {
        return Ok(None);
    }
    let total = total as usize;
    let x_count = delta as usize - 1;
    for g in generators(n) {
        let g_inv = inverse_mod(g, n);
        let reps: Vec<i64> = t
            .terms()
            .iter()
            .map(|&term| centered(((term as u64 * g_inv as u64) % n as u64) as u32, n))
            .collect();
        let minus_one = centered((n - 1) % n.max(1), n);
        let plus_pool = reps.iter().filter(|&&r| r == centered(1 % n, n)).count();
        let minus_pool = reps.iter().filter(|&&r| r == minus_one).count();
        let same = centered(1 % n, n) == minus_one;
        for u in total.div_ceil(2)..=total {
            let v = total - u;
            let available = if same {
                u + v <= plus_pool
            } else {
                u <= plus_pool && v <= minus_pool
            };
            if !available {
                continue;
            }
            let mut rest = reps.clone();
            remove_copies(&mut rest, centered(1 % n, n), u);
            remove_copies(&mut rest, minus_one, v);
            let mut nonzero: Vec<(i64, usize)> =
                rest.iter().enumerate().filter(|(_, &r)| r != 0).map(|(i, &r)| (r, i)).collect();
            if nonzero.len() < x_count {
                continue;
            }
            nonzero.sort_by_key(|&(r, i)| (r.abs(), r < 0, i));
            let chosen: Vec<(i64, usize)> = nonzero[..x_count].to_vec();
            let abs_sum: i64 = chosen.iter().map(|c| c.0.abs()).sum();
            if abs_sum > 2 * delta as i64 - 2 {
                continue;
            }
            let mut taken = vec![false; rest.len()];
            for &(_, i) in &chosen {
                taken[i] = true;
            }
            let mut x: Vec<i64> = chosen.iter().map(|c| c.0).collect();
            x.sort_unstable();
            let mut y: Vec<i64> =
                rest.iter().enumerate().filter(|(i, _)| !taken[*i]).map(|(_, &r)| r).collect();
            y.sort_unstable();
            debug_assert_eq!(y.len() as i64, w);
            return Ok(Some(TheoremBDecomposition {
                modulus: n,
                delta,
                generator: g,
                u,
                v,
                x,
                y,
            }));
        }
    }
    Ok(None)
}

fn remove_copies(values: &mut Vec<i64>, target: i64, mut count: usize) {
    values.retain(|&r| {
        if count > 0 && r == target {
            count -= 1;
            false
        } else {
            true
        }
    });
}

/// Mechanical check of every clause of a decomposition against `t`.
/// Returns the first violated clause.
pub fn check_theorem_b_decomposition(
    t: &ResidueSequence,
    delta: u32,
    d: &TheoremBDecomposition,
) -> std::result::Result<(), String> {
    let n = t.modulus();
    let ni = n as i64;
    if d.modulus != n || d.delta != delta {
        return Err("parameters do not match".into());
    }
    if check_generator(d.generator, n).is_err() {
        return Err(format!("{} is not a generator of Z/{n}Z", d.generator));
    }
    if d.u < d.v {
        return Err(format!("clause (i): u = {} < v = {}", d.u, d.v));
    }
    if d.u as i64 + d.v as i64 != ni - 2 * delta as i64 + 1 {
        return Err(format!("clause (i): u + v = {} != n - 2δ + 1", d.u + d.v));
    }
    if d.x.len() != delta as usize - 1 {
        return Err(format!("expected {} x terms, found {}", delta - 1, d.x.len()));
    }
    if d.y.len() as i64 != t.len() as i64 - ni + delta as i64 {
        return Err(format!("clause (ii): w = {} != |T| - n + δ", d.y.len()));
    }
    let in_range = |r: i64| -ni < 2 * r && 2 * r <= ni;
    if let Some(bad) = d.x.iter().chain(&d.y).find(|&&r| !in_range(r)) {
        return Err(format!("clause (iii): {bad} outside (-n/2, n/2]"));
    }
    if d.x.contains(&0) {
        return Err("clause (iii): some x_i = 0".into());
    }
    let abs_sum: i64 = d.x.iter().map(|r| r.abs()).sum();
    if abs_sum > 2 * delta as i64 - 2 {
        return Err(format!("clause (iv): Σ|x_i| = {abs_sum} > 2δ - 2"));
    }
    let g = d.generator as i64;
    let rebuilt = ResidueSequence::from_integers(
        n,
        std::iter::repeat_n(g, d.u)
            .chain(std::iter::repeat_n(-g, d.v))
            .chain(d.x.iter().chain(&d.y).map(|&r| r * g)),
    );
    if rebuilt != *t {
        return Err(format!("terms rebuild to {rebuilt}, not {t}"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rs(n: u32, terms: &[u64]) -> ResidueSequence {
        ResidueSequence::new(n, terms.iter().copied()).unwrap()
    }

    fn ints(terms: &[u64]) -> IntSequence {
        IntSequence::new(terms.iter().copied()).unwrap()
    }

    /// Signed smoothness by trying all 2^|T| sign vectors and every generator.
    fn brute_signed(t: &ResidueSequence) -> bool {
        let n = t.modulus();
        let terms = t.terms();
        (0u32..(1 << terms.len())).any(|mask| {
            let flipped = ResidueSequence::from_integers(
                n,
                terms
                    .iter()
                    .enumerate()
                    .map(|(i, &r)| if mask >> i & 1 == 1 { -(r as i64) } else { r as i64 }),
            );
            find_smooth_generator(&flipped).is_some()
        })
    }

    /// Smoothness by the definition: coefficients from the generator's
    /// multiples, `Σ(T) = {g, 2g, ..., (Σ n_i) g}`.
    fn brute_g_smooth(t: &ResidueSequence, g: u32) -> bool {
        let n = t.modulus() as u64;
        let mut coefs = Vec::new();
        for &term in t.terms() {
            match (1..=n).find(|c| (c * g as u64) % n == term as u64) {
                Some(c) => coefs.push(c),
                None => return false,
            }
        }
        coefs.sort_unstable();
        let total: u64 = coefs.iter().sum();
        if coefs[0] != 1 || total >= n {
            return false;
        }
        let expected: std::collections::BTreeSet<u32> =
            (1..=total).map(|j| ((j * g as u64) % n) as u32).collect();
        t.subsums() == expected
    }

    #[test]
    fn one_smooth_examples() {
        assert!(is_one_smooth(&ints(&[1, 1, 2, 5])).unwrap().is_some());
        assert_eq!(ints(&[1, 1, 2, 5]).subsums().len(), 9);
        assert!(is_one_smooth(&ints(&[1, 3])).unwrap().is_none());
        assert!(is_one_smooth(&ints(&[2, 2, 2])).unwrap().is_none());
        assert_eq!(ints(&[2, 2, 2]).sum(), 6);
        assert!(matches!(is_one_smooth(&ints(&[])), Err(Error::EmptySequence)));
    }

    #[test]
    fn g_smooth_examples() {
        let t = rs(7, &[1, 1, 2]);
        let cert = is_g_smooth(&t, 1).unwrap().unwrap();
        assert_eq!(cert.coefficients, vec![1, 1, 2]);
        assert!(cert.verify(&t));
        assert!(brute_g_smooth(&t, 1));
        assert!(is_g_smooth(&t, 3).unwrap().is_none());
        assert!(!brute_g_smooth(&t, 3));
        for g in [1, 5] {
            assert!(is_g_smooth(&rs(6, &[0, 1]), g).unwrap().is_none());
        }
        assert!(matches!(is_g_smooth(&t, 0), Err(Error::InvalidGenerator { .. })));
        assert!(matches!(is_g_smooth(&rs(6, &[1]), 2), Err(Error::InvalidGenerator { .. })));
        assert!(matches!(is_g_smooth(&rs(6, &[]), 1), Err(Error::EmptySequence)));
    }

    #[test]
    fn find_generator_examples() {
        assert!(find_smooth_generator(&rs(6, &[2, 2, 3])).is_none());
        assert_eq!(find_smooth_generator(&rs(5, &[1, 1, 1])).unwrap().generator, 1);
        assert!(find_smooth_generator(&rs(9, &[1, 3, 3, 7])).is_none());
    }

    #[test]
    fn signed_examples() {
        let t = rs(5, &[1, 4]);
        let cert = find_signed_smooth_generator(&t).unwrap().unwrap();
        assert_eq!(cert.generator, 1);
        assert_eq!(cert.coefficients, vec![1, 1]);
        assert_eq!(cert.signs.as_ref().unwrap().to_string(), "+,-");
        assert!(cert.verify(&t));
        assert!(find_smooth_generator(&t).is_none());

        assert!(find_signed_smooth_generator(&rs(6, &[2, 2, 3])).unwrap().is_none());
        assert!(find_signed_smooth_generator(&rs(4, &[2])).unwrap().is_none());
        assert!(find_signed_smooth_generator(&rs(9, &[1, 3, 3, 7])).unwrap().is_none());
        let caps = Caps {
            sign_search_len: 2,
            ..Caps::default()
        };
        assert!(find_signed_smooth_generator_with_caps(&rs(5, &[1, 1, 1]), &caps).is_err());
    }

    #[test]
    fn max_signed_smooth_examples() {
        assert_eq!(max_signed_smooth_sub_length(&rs(6, &[2, 2, 3])).unwrap(), 0);
        assert_eq!(max_signed_smooth_sub_length(&rs(5, &[1, 1, 4])).unwrap(), 3);
        // (1,2) over Z/4: coefficients (1,2) with g = 1, sum 3 < 4
        assert_eq!(max_signed_smooth_sub_length(&rs(4, &[1, 2])).unwrap(), 2);
        assert!(brute_signed(&rs(4, &[1, 2])));
        assert_eq!(max_signed_smooth_sub_length(&rs(4, &[0, 0])).unwrap(), 0);
        let (sub, cert) = longest_signed_smooth_subsequence(&rs(5, &[1, 1, 4])).unwrap().unwrap();
        assert!(cert.verify(&sub));
        assert_eq!(cert.coefficients, vec![1, 1, 1]);
    }

    #[test]
    fn degenerate_moduli() {
        // n = 1: nothing is smooth
        assert!(find_smooth_generator(&rs(1, &[0])).is_none());
        assert!(find_signed_smooth_generator(&rs(1, &[0])).unwrap().is_none());
        // n = 2: only (1)
        assert!(find_smooth_generator(&rs(2, &[1])).is_some());
        assert!(find_smooth_generator(&rs(2, &[1, 1])).is_none());
        assert!(find_signed_smooth_generator(&rs(2, &[1, 1])).unwrap().is_none());
        assert_eq!(generators(1).collect::<Vec<_>>(), vec![0]);
        assert_eq!(generators(12).collect::<Vec<_>>(), vec![1, 5, 7, 11]);
    }

    #[test]
    fn theorem_b_examples() {
        let t = rs(5, &[1, 1, 1, 1]);
        let d = theorem_b_decompose(&t, 1).unwrap().unwrap();
        assert_eq!((d.generator, d.u, d.v), (1, 4, 0));
        assert!(d.x.is_empty() && d.y.is_empty());
        check_theorem_b_decomposition(&t, 1, &d).unwrap();

        let t = rs(5, &[2, 2, 2, 2]);
        let d = theorem_b_decompose(&t, 1).unwrap().unwrap();
        assert_eq!((d.generator, d.u, d.v), (2, 4, 0));
        check_theorem_b_decomposition(&t, 1, &d).unwrap();

        // 1^[3]·3·0 over Z/6 with δ = 2: no decomposition, and the hypothesis
        // N(T) < 2^(|T|-n+1+δ) fails too (N(T) = 4 = 2^2)
        let t = rs(6, &[0, 1, 1, 1, 3]);
        assert!(theorem_b_decompose(&t, 2).unwrap().is_none());
        assert_eq!(crate::counting::count_zero_sum(&t), crate::Count::from(4u64));

        assert!(theorem_b_decompose(&rs(8, &[1]), 4).is_err());
        assert!(theorem_b_decompose(&rs(8, &[1]), 0).is_err());
        assert!(theorem_b_decompose(&rs(8, &[1]), 3).is_ok());
    }

    #[test]
    fn decomposition_checker_rejects_tampering() {
        let t = rs(8, &[1, 1, 1, 1, 1, 1, 2]);
        let d = theorem_b_decompose(&t, 2).unwrap().unwrap();
        check_theorem_b_decomposition(&t, 2, &d).unwrap();
        let mut bad = d.clone();
        bad.x = vec![3];
        assert!(check_theorem_b_decomposition(&t, 2, &bad).is_err());
        let mut bad = d.clone();
        bad.u -= 1;
        bad.v += 1;
        assert!(check_theorem_b_decomposition(&t, 2, &bad).is_err());
    }

    #[test]
    fn one_smooth_equals_subsum_definition() {
        // every multiset of length <= 6 with terms <= 8
        fn rec(prefix: &mut Vec<u64>, lo: u64) {
            if !prefix.is_empty() {
                let t = IntSequence::new(prefix.clone()).unwrap();
                assert_eq!(
                    is_one_smooth(&t).unwrap().is_some(),
                    is_one_smooth_by_subsums(&t),
                    "{t}"
                );
            }
            if prefix.len() == 6 {
                return;
            }
            for v in lo..=8 {
                prefix.push(v);
                rec(prefix, v);
                prefix.pop();
            }
        }
        rec(&mut Vec::new(), 1);
    }

    #[test]
    fn dropping_least_term_direction() {
        // if H minus its least term is 1-smooth then H is 1-smooth
        for a in 1..=6u64 {
            for b in a..=6 {
                for c in b..=6 {
                    for d in c..=8 {
                        let h = [a, b, c, d];
                        if one_smooth_sorted(&h[1..]) {
                            assert!(one_smooth_sorted(&h), "{h:?}");
                        }
                    }
                }
            }
        }
    }

    fn smooth_int_seq() -> impl Strategy<Value = Vec<u64>> {
        prop::collection::vec(0u64..1000, 1..8).prop_map(|raw| {
            // build a 1-smooth sequence greedily: each new term in [1, prefix + 1]
            let mut out = vec![1u64];
            let mut prefix = 1u64;
            for r in raw.into_iter().skip(1) {
                let t = 1 + r % (prefix + 1);
                out.push(t);
                prefix += t;
            }
            out.sort_unstable();
            out
        })
    }

    proptest! {
        #[test]
        fn observation_a_matches_definition(n in 2u32..12, raw in prop::collection::vec(0u64..1000, 1..6)) {
            let t = ResidueSequence::new(n, raw.iter().map(|v| v % n as u64)).unwrap();
            for g in generators(n) {
                prop_assert_eq!(is_g_smooth(&t, g).unwrap().is_some(), brute_g_smooth(&t, g));
            }
        }

        #[test]
        fn signed_search_matches_brute_force(n in 2u32..11, raw in prop::collection::vec(0u64..1000, 1..7)) {
            let t = ResidueSequence::new(n, raw.iter().map(|v| v % n as u64)).unwrap();
            let found = find_signed_smooth_generator(&t).unwrap();
            prop_assert_eq!(found.is_some(), brute_signed(&t));
            if let Some(cert) = found {
                prop_assert!(cert.verify(&t));
            }
            if let Some(cert) = find_smooth_generator(&t) {
                prop_assert!(cert.verify(&t));
                // every smooth certificate is a signed one with all signs +
                let mut signed = cert.clone();
                signed.signs = Some(SignAssignment::new(vec![1; cert.terms.len()]).unwrap());
                prop_assert!(signed.verify(&t));
                prop_assert!(find_signed_smooth_generator(&t).unwrap().is_some());
            }
        }

        #[test]
        fn longest_signed_matches_subset_brute_force(n in 2u32..10, raw in prop::collection::vec(0u64..1000, 1..7)) {
            let t = ResidueSequence::new(n, raw.iter().map(|v| v % n as u64)).unwrap();
            let terms = t.terms();
            let mut best = 0;
            for mask in 1u32..(1 << terms.len()) {
                let sub = ResidueSequence::new(n, (0..terms.len()).filter(|i| mask >> i & 1 == 1).map(|i| terms[i] as u64)).unwrap();
                if sub.len() > best && brute_signed(&sub) {
                    best = sub.len();
                }
            }
            prop_assert_eq!(max_signed_smooth_sub_length(&t).unwrap(), best);
        }

        #[test]
        fn smooth_closure(h1 in smooth_int_seq(), h2 in smooth_int_seq(), extra in prop::collection::vec(1u64..20, 1..5)) {
            let a = IntSequence::new(h1).unwrap();
            let b = IntSequence::new(h2).unwrap();
            prop_assert!(one_smooth_sorted(a.terms()) && one_smooth_sorted(b.terms()));
            prop_assert!(one_smooth_sorted(a.concat(&b).terms()));
            let c = IntSequence::new(extra).unwrap();
            if c.sum() <= a.sum() + 1 {
                prop_assert!(one_smooth_sorted(a.concat(&c).terms()));
            }
        }
    }
}
