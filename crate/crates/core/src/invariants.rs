//! Zero-sum invariants: the Erdős–Burgess constant of `C(k;n)`, the
//! Davenport constant of `Z/nZ`, and the smoothness thresholds `Sgn` and
//! `Smo` of `Z/nZ`.
//!
//! Each invariant has a closed form and an independent exhaustive search.
//! In exhaustive mode both are computed and a disagreement is returned as
//! [`Error::FormulaMismatch`] carrying both values and the witness.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::caps::Caps;
use crate::counting::count_idempotent_sum;
use crate::error::{check_cap, invalid, Error, Result};
use crate::semigroup::CyclicSemigroup;
use crate::sequence::{subsums, ResidueSequence, SemigroupSequence};
use crate::smoothness::{find_signed_smooth_generator, find_smooth_generator};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InvariantName {
    ErdosBurgess,
    Davenport,
    Sgn,
    Smo,
}

impl InvariantName {
    pub fn as_str(self) -> &'static str {
        match self {
            InvariantName::ErdosBurgess => "erdos_burgess",
            InvariantName::Davenport => "davenport",
            InvariantName::Sgn => "sgn",
            InvariantName::Smo => "smo",
        }
    }
}

impl fmt::Display for InvariantName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InvariantName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "eb" | "erdos_burgess" | "erdos-burgess" => Ok(InvariantName::ErdosBurgess),
            "davenport" | "d" => Ok(InvariantName::Davenport),
            "sgn" => Ok(InvariantName::Sgn),
            "smo" => Ok(InvariantName::Smo),
            other => Err(invalid("invariant", other, "expected one of eb, davenport, sgn, smo")),
        }
    }
}

impl Serialize for InvariantName {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Formula,
    Exhaustive,
}

fn decimal<S: Serializer>(v: &u64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn opt_decimal<S: Serializer>(v: &Option<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

/// Value of an invariant, with the extremal witness when one exists.
///
/// The witness has length `value - 1` and lacks the defining property: it is
/// idempotent-sum free (Erdős–Burgess), zero-sum free (Davenport), or zero-sum
/// free and not (signed) smooth for any generator (`Sgn`, `Smo`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantResult {
    pub name: InvariantName,
    #[serde(serialize_with = "decimal")]
    pub k: u64,
    #[serde(serialize_with = "decimal")]
    pub n: u64,
    #[serde(serialize_with = "decimal")]
    pub closed_form: u64,
    #[serde(serialize_with = "opt_decimal")]
    pub exhaustive: Option<u64>,
    pub witness: Option<String>,
}

impl InvariantResult {
    pub fn value(&self) -> u64 {
        self.closed_form
    }
}

/// Erdős–Burgess constant `I(C(k;n)) = ceil(k/n) n`.
pub fn erdos_burgess(s: &CyclicSemigroup, mode: Mode) -> Result<InvariantResult> {
    erdos_burgess_with_caps(s, mode, &Caps::global())
}

pub fn erdos_burgess_with_caps(s: &CyclicSemigroup, mode: Mode, caps: &Caps) -> Result<InvariantResult> {
    let closed_form = s.erdos_burgess();
    let witness = generator_power(s, closed_form - 1)?;
    if count_idempotent_sum(s, &witness) != crate::Count::from(u64::from(s.is_group())) {
        return Err(Error::FormulaMismatch {
            name: "erdos_burgess",
            params: format!("k={} n={}", s.k(), s.n()),
            closed_form,
            exhaustive: 0,
            witness: format!("{witness} is not idempotent-sum free"),
        });
    }
    let exhaustive = match mode {
        Mode::Formula => None,
        Mode::Exhaustive => {
            let (value, found) = erdos_burgess_exhaustive(s, caps)?;
            if value != closed_form {
                return Err(Error::FormulaMismatch {
                    name: "erdos_burgess",
                    params: format!("k={} n={}", s.k(), s.n()),
                    closed_form,
                    exhaustive: value,
                    witness: found.to_string(),
                });
            }
            Some(value)
        }
    };
    Ok(InvariantResult {
        name: InvariantName::ErdosBurgess,
        k: s.k() as u64,
        n: s.n() as u64,
        closed_form,
        exhaustive,
        witness: Some(witness.to_string()),
    })
}

/// `s^[len]`: every term is the generator.
fn generator_power(s: &CyclicSemigroup, len: u64) -> Result<SemigroupSequence> {
    SemigroupSequence::new(*s, std::iter::repeat_n(1, len as usize))
}

/// Least `l` such that every length-`l` sequence over `C(k;n)` has a nonempty
/// idempotent-sum subsequence, by depth-first enumeration of idempotent-sum
/// free sequences. Returns the value and the first longest such sequence.
pub fn erdos_burgess_exhaustive(s: &CyclicSemigroup, caps: &Caps) -> Result<(u64, SemigroupSequence)> {
    check_cap("order k+n-1", s.order() as u128, caps.erdos_burgess_order as u128)?;
    check_cap("ceil(k/n) n", s.erdos_burgess() as u128, caps.erdos_burgess_constant as u128)?;
    let order = s.order() as usize;
    let e = s.idempotent().ind() as usize;
    // reach[i]: element i is a sum of a nonempty subsequence
    fn go(
        s: &CyclicSemigroup,
        order: usize,
        e: usize,
        path: &mut Vec<u64>,
        reach: &[bool],
        best: &mut Vec<u64>,
    ) {
        if path.len() > best.len() {
            best.clone_from(path);
        }
        let lo = path.last().copied().unwrap_or(1);
        for a in lo..=order as u64 {
            let mut next = reach.to_vec();
            for i in 1..=order {
                if reach[i] {
                    next[s.reduce(i as u64 + a) as usize] = true;
                }
            }
            next[a as usize] = true;
            if next[e] {
                continue;
            }
            path.push(a);
            go(s, order, e, path, &next, best);
            path.pop();
        }
    }
    let mut best = Vec::new();
    go(s, order, e, &mut Vec::new(), &vec![false; order + 1], &mut best);
    let witness = SemigroupSequence::new(*s, best)?;
    debug_assert!(!subsums(s, &witness).contains(&s.idempotent()));
    Ok((witness.len() as u64 + 1, witness))
}

/// Davenport constant of `Z/nZ`.
pub fn davenport(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(invalid("n", n, "must be positive"));
    }
    Ok(n)
}

/// Davenport constant as one more than the longest zero-sum free sequence,
/// with that sequence.
pub fn davenport_exhaustive(n: u32, caps: &Caps) -> Result<(u64, ResidueSequence)> {
    let (len, witness) = longest_zero_sum_free_where(n, caps, |_| true)?;
    let witness = witness.unwrap_or(ResidueSequence::new(n, [])?);
    Ok((len as u64 + 1, witness))
}

pub fn davenport_result(n: u32, mode: Mode) -> Result<InvariantResult> {
    let closed_form = davenport(n as u64)?;
    let caps = Caps::global();
    let (exhaustive, witness) = match mode {
        Mode::Formula => (None, ResidueSequence::new(n, std::iter::repeat_n(1, n as usize - 1))?),
        Mode::Exhaustive => {
            let (value, witness) = davenport_exhaustive(n, &caps)?;
            if value != closed_form {
                return Err(Error::FormulaMismatch {
                    name: "davenport",
                    params: format!("n={n}"),
                    closed_form,
                    exhaustive: value,
                    witness: witness.to_string(),
                });
            }
            (Some(value), witness)
        }
    };
    Ok(InvariantResult {
        name: InvariantName::Davenport,
        k: 1,
        n: n as u64,
        closed_form,
        exhaustive,
        witness: Some(witness.to_string()),
    })
}

/// Lazy depth-first stream of zero-sum free multisets over the nonzero
/// residues mod `n`, in canonical (lexicographic pre-order) order.
#[derive(Debug, Clone)]
pub struct ZeroSumFree {
    n: u32,
    first_hi: u32,
    path: Vec<u32>,
    /// `masks[d]`: bitmask of `Σ` of the first `d + 1` terms.
    masks: Vec<u64>,
    /// `cands[d]`: next value to try at depth `d`.
    cands: Vec<u32>,
}

impl ZeroSumFree {
    fn extend(&self, mask: u64, v: u32) -> u64 {
        let n = self.n;
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let rotated = ((mask << v) | (mask >> (n - v))) & full;
        mask | rotated | (1u64 << v)
    }
}

impl Iterator for ZeroSumFree {
    type Item = ResidueSequence;

    fn next(&mut self) -> Option<ResidueSequence> {
        loop {
            let d = self.path.len();
            let hi = if d == 0 { self.first_hi } else { self.n };
            let base = if d == 0 { 0 } else { self.masks[d - 1] };
            let mut found = None;
            for v in self.cands[d]..hi {
                let m = self.extend(base, v);
                if m & 1 == 0 {
                    found = Some((v, m));
                    break;
                }
            }
            match found {
                Some((v, m)) => {
                    self.cands[d] = v + 1;
                    self.path.push(v);
                    self.masks.push(m);
                    self.cands.push(v);
                    return Some(ResidueSequence::from_sorted_unchecked(self.n, self.path.clone()));
                }
                None => {
                    if d == 0 {
                        return None;
                    }
                    self.cands.pop();
                    self.path.pop();
                    self.masks.pop();
                }
            }
        }
    }
}

/// Every zero-sum free multiset over `Z/nZ`, each exactly once.
pub fn enumerate_zero_sum_free(n: u32) -> Result<ZeroSumFree> {
    enumerate_zero_sum_free_with_caps(n, &Caps::global())
}

pub fn enumerate_zero_sum_free_with_caps(n: u32, caps: &Caps) -> Result<ZeroSumFree> {
    check_zsf_modulus(n, caps)?;
    Ok(ZeroSumFree {
        n,
        first_hi: n,
        path: Vec::new(),
        masks: Vec::new(),
        cands: vec![1],
    })
}

/// The chunk of [`enumerate_zero_sum_free`] whose sequences start with `first`.
pub fn zero_sum_free_starting_with(n: u32, first: u32, caps: &Caps) -> Result<ZeroSumFree> {
    check_zsf_modulus(n, caps)?;
    if first == 0 || first >= n {
        return Err(invalid("first", first, format!("must be a nonzero residue mod {n}")));
    }
    Ok(ZeroSumFree {
        n,
        first_hi: first + 1,
        path: Vec::new(),
        masks: Vec::new(),
        cands: vec![first],
    })
}

fn check_zsf_modulus(n: u32, caps: &Caps) -> Result<()> {
    if n == 0 {
        return Err(invalid("n", n, "must be positive"));
    }
    check_cap("modulus", n as u128, caps.zero_sum_free_modulus.min(64) as u128)
}

/// Longest zero-sum free sequence satisfying `pred`, searched in parallel
/// over first terms. Ties resolve to the canonically first sequence.
fn longest_zero_sum_free_where<P>(n: u32, caps: &Caps, pred: P) -> Result<(usize, Option<ResidueSequence>)>
where
    P: Fn(&ResidueSequence) -> bool + Sync,
{
    check_zsf_modulus(n, caps)?;
    let chunks: Vec<(usize, Option<ResidueSequence>)> = (1..n)
        .into_par_iter()
        .map(|first| {
            let mut best: (usize, Option<ResidueSequence>) = (0, None);
            for t in zero_sum_free_starting_with(n, first, caps).expect("checked modulus") {
                if t.len() > best.0 && pred(&t) {
                    best = (t.len(), Some(t));
                }
            }
            best
        })
        .collect();
    Ok(chunks
        .into_iter()
        .fold((0, None), |acc, c| if c.0 > acc.0 { c } else { acc }))
}

fn check_group_invariant_n(n: u64) -> Result<()> {
    if n < 2 {
        return Err(invalid("n", n, "Sgn and Smo are defined for n >= 2"));
    }
    Ok(())
}

/// Closed form of `Sgn(Z/nZ)`.
pub fn sgn_formula(n: u64) -> Result<u64> {
    check_group_invariant_n(n)?;
    Ok(match n {
        2 | 3 | 5 | 7 => 1,
        4 => 2,
        _ => (n + 1).div_ceil(2),
    })
}

/// Closed form of `Smo(Z/nZ)`.
pub fn smo_formula(n: u64) -> Result<u64> {
    check_group_invariant_n(n)?;
    Ok(match n {
        2 | 3 | 5 => 1,
        4 => 2,
        7 => 3,
        _ => (n + 1).div_ceil(2),
    })
}

/// A zero-sum free sequence of length `Sgn(n) - 1` that is not signed smooth
/// for any generator, built from the generator `x = 1`.
///
/// For `n = 8` the even-`n` pattern `2^[3] 3` is signed 3-smooth (signs
/// `+,-,-,-` give coefficients `1,2,2,2`), so the first witness found by
/// exhaustive search is used instead.
pub fn sgn_witness(n: u32) -> Option<ResidueSequence> {
    let terms: Vec<u64> = match n {
        4 => vec![2],
        8 => vec![1, 1, 4, 5],
        9 => vec![1, 3, 3, 7],
        n if n >= 6 && n % 2 == 0 => {
            let mut t = vec![2; (n / 2 - 1) as usize];
            t.push(3);
            t
        }
        n if n >= 11 && n % 2 == 1 => {
            let mut t = vec![2; ((n - 5) / 2) as usize];
            t.extend([3, 3]);
            t
        }
        _ => return None,
    };
    Some(ResidueSequence::new(n, terms).expect("residues below n"))
}

/// Witness of length `Smo(n) - 1`: the `Sgn` witness where it applies, and
/// `(1,3)` for `n = 7`.
pub fn smo_witness(n: u32) -> Option<ResidueSequence> {
    match n {
        7 => Some(ResidueSequence::new(7, [1, 3]).expect("residues below 7")),
        _ => sgn_witness(n),
    }
}

fn not_signed_smooth(t: &ResidueSequence) -> bool {
    find_signed_smooth_generator(t)
        .expect("zero-sum free sequences are shorter than the sign cap")
        .is_none()
}

fn not_smooth(t: &ResidueSequence) -> bool {
    find_smooth_generator(t).is_none()
}

/// `Sgn(Z/nZ)`.
pub fn sgn_constant(n: u32, mode: Mode) -> Result<InvariantResult> {
    smoothness_threshold(InvariantName::Sgn, n, mode, &Caps::global())
}

/// `Smo(Z/nZ)`.
pub fn smo_constant(n: u32, mode: Mode) -> Result<InvariantResult> {
    smoothness_threshold(InvariantName::Smo, n, mode, &Caps::global())
}

pub fn smoothness_threshold(name: InvariantName, n: u32, mode: Mode, caps: &Caps) -> Result<InvariantResult> {
    let (closed_form, formula_witness, lacks): (u64, Option<ResidueSequence>, fn(&ResidueSequence) -> bool) =
        match name {
            InvariantName::Sgn => (sgn_formula(n as u64)?, sgn_witness(n), not_signed_smooth),
            InvariantName::Smo => (smo_formula(n as u64)?, smo_witness(n), not_smooth),
            _ => return Err(invalid("invariant", name, "not a smoothness threshold")),
        };
    let mismatch = |exhaustive: u64, witness: String| Error::FormulaMismatch {
        name: name.as_str(),
        params: format!("n={n}"),
        closed_form,
        exhaustive,
        witness,
    };
    let (exhaustive, witness) = match mode {
        Mode::Formula => {
            if let Some(w) = &formula_witness {
                let ok = w.len() as u64 + 1 == closed_form && w.is_zero_sum_free() && lacks(w);
                if !ok {
                    return Err(mismatch(0, format!("{w} does not witness the closed form")));
                }
            }
            (None, formula_witness)
        }
        Mode::Exhaustive => {
            let (len, found) = longest_zero_sum_free_where(n, caps, lacks)?;
            let value = len as u64 + 1;
            if value != closed_form {
                return Err(mismatch(value, found.map(|w| w.to_string()).unwrap_or_default()));
            }
            (Some(value), found)
        }
    };
    Ok(InvariantResult {
        name,
        k: 1,
        n: n as u64,
        closed_form,
        exhaustive,
        witness: witness.map(|w| w.to_string()),
    })
}

/// Dispatch by name; `k` only matters for the Erdős–Burgess constant.
pub fn compute(name: InvariantName, k: u64, n: u64, mode: Mode) -> Result<InvariantResult> {
    match name {
        InvariantName::ErdosBurgess => erdos_burgess(&CyclicSemigroup::new(k, n)?, mode),
        InvariantName::Davenport => davenport_result(u32_param("n", n)?, mode),
        InvariantName::Sgn | InvariantName::Smo => {
            smoothness_threshold(name, u32_param("n", n)?, mode, &Caps::global())
        }
    }
}

fn u32_param(name: &'static str, v: u64) -> Result<u32> {
    u32::try_from(v).map_err(|_| invalid(name, v, "too large"))
}

/// The instance showing the range of `δ` cannot be extended: the nowhere
/// signed smooth witness `L` (as indices equal to its residues) followed by
/// `total_length - floor(n/2)` copies of the element of index `n`.
pub fn example1_instance(s: &CyclicSemigroup, total_length: usize) -> Result<SemigroupSequence> {
    let n = s.n();
    let admissible = (n.is_multiple_of(2) && n >= 6) || (n % 2 == 1 && n >= 9);
    if !admissible {
        return Err(invalid("n", n, "needs n even >= 6 or n odd >= 9"));
    }
    if s.k() > n {
        return Err(invalid("k", s.k(), format!("needs k <= n = {n}")));
    }
    let half = (n / 2) as usize;
    if total_length < half {
        return Err(invalid("total_length", total_length, format!("needs at least floor(n/2) = {half}")));
    }
    let witness = sgn_witness(n).expect("admissible n has a witness");
    debug_assert_eq!(witness.len(), half);
    let indices = witness
        .terms()
        .iter()
        .map(|&r| r as u64)
        .chain(std::iter::repeat_n(n as u64, total_length - half));
    SemigroupSequence::new(*s, indices)
}
