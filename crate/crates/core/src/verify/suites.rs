use std::collections::BTreeSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::counting::{
    binomial_tail_sum, brute_force_count_with_caps, count_idempotent_sum, count_idempotent_sum_by_index,
    count_zero_sum, Count,
};
use crate::error::{check_cap, invalid, Error, Result};
use crate::invariants::{erdos_burgess_exhaustive, example1_instance};
use crate::semigroup::CyclicSemigroup;
use crate::sequence::{lift_psi, ResidueSequence, SemigroupSequence};
use crate::smoothness::{
    check_theorem_b_decomposition, max_signed_smooth_sub_length, one_smooth_sorted, theorem_b_decompose,
};

use super::sweep::{Partial, Sweep};
use super::{enumerate_signed_windows, VerificationReport};

/// Names accepted by [`run_suite`].
pub const SUITES: &[&str] = &[
    "main-bound",
    "structure-i",
    "structure-ii",
    "structure-ii-sharpness",
    "prop-structure",
    "prop-structure-delta-sweep",
    "theorem-a",
    "theorem-b",
    "theorem-c",
    "doubling",
    "instant",
    "sigma-2l",
    "binomial-tail",
    "example",
    "erdos-burgess",
    "oracle",
];

fn finish(p: Partial, report: VerificationReport, start: Instant) -> VerificationReport {
    let mut r = p.into_report(report);
    r.elapsed = Some(start.elapsed());
    r
}

fn semigroup_seq(s: &CyclicSemigroup, m: &[u32]) -> SemigroupSequence {
    SemigroupSequence::new(*s, m.iter().map(|&v| v as u64 + 1)).expect("letters index the semigroup")
}

fn params_kn(k: u64, n: u64) -> String {
    format!("k={k} n={n}")
}

fn one_over_k(s: &CyclicSemigroup) -> u32 {
    u32::from(s.is_group())
}

/// DP and brute-force counts side by side, for failure payloads.
fn count_details(s: &CyclicSemigroup, t: &SemigroupSequence, sweep: &Sweep) -> String {
    let dp = count_idempotent_sum(s, t);
    let targets = BTreeSet::from([s.idempotent()]);
    match brute_force_count_with_caps(s, t, &targets, true, &sweep.caps) {
        Ok(b) => format!("dp={dp} brute={b}"),
        Err(_) => format!("dp={dp}"),
    }
}

/// First sub-multiset (in order of per-value counts) of length at least
/// `min_len` satisfying `pred`.
fn find_sub_multiset<T: Copy>(support: &[(T, usize)], min_len: usize, pred: &mut dyn FnMut(&[T]) -> bool) -> Option<Vec<T>> {
    fn go<T: Copy>(
        support: &[(T, usize)],
        min_len: usize,
        chosen: &mut Vec<T>,
        pred: &mut dyn FnMut(&[T]) -> bool,
    ) -> bool {
        match support.split_first() {
            None => chosen.len() >= min_len && pred(chosen),
            Some((&(v, mult), rest)) => {
                let left: usize = rest.iter().map(|&(_, m)| m).sum();
                for c in 0..=mult {
                    if chosen.len() + c + left < min_len {
                        continue;
                    }
                    let before = chosen.len();
                    chosen.extend(std::iter::repeat_n(v, c));
                    if go(rest, min_len, chosen, pred) {
                        return true;
                    }
                    chosen.truncate(before);
                }
                false
            }
        }
    }
    let mut chosen = Vec::new();
    go(support, min_len, &mut chosen, pred).then_some(chosen)
}

fn support<T: Copy + PartialEq>(sorted: &[T]) -> Vec<(T, usize)> {
    let mut out: Vec<(T, usize)> = Vec::new();
    for &v in sorted {
        match out.last_mut() {
            Some((w, c)) if *w == v => *c += 1,
            _ => out.push((v, 1)),
        }
    }
    out
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

/// `N(T; e) >= 2^(|T| - ceil(k/n) n + 1) - 1 + [k = 1]` for every nonempty
/// `T` with `|T| <= max_len`.
pub fn verify_main_bound(k: u64, n: u64, max_len: usize, sweep: &Sweep) -> Result<VerificationReport> {
    let start = Instant::now();
    let s = CyclicSemigroup::with_caps(k, n, &sweep.caps)?;
    let ell = s.erdos_burgess() as i64;
    let report = VerificationReport::new("main-bound")
        .with_grid("k", k)
        .with_grid("n", n)
        .with_grid("max_len", max_len);
    let p = sweep.multisets(s.order(), 1..=max_len, |m, p| {
        let t = semigroup_seq(&s, m);
        p.checked += 1;
        p.qualifying += 1;
        let count = count_idempotent_sum(&s, &t);
        let exp = t.len() as i64 - ell + 1;
        if count.below_pow2_threshold(exp, one_over_k(&s)) {
            p.fail_with(
                &t,
                params_kn(k, n),
                format!(">= 2^{exp} - 1 + {}", one_over_k(&s)),
                &count,
                count_details(&s, &t, sweep),
            );
        }
    })?;
    Ok(finish(p, report, start))
}

/// For `k > n`: whenever `N(T; e) < 2^(|T| - ceil(k/n) n + 1 + delta) - 1`,
/// every subsequence of length at least `n + delta - 1` has a 1-smooth index
/// multiset.
pub fn verify_main_structure_i(k: u64, n: u64, max_len: usize, delta: u32, sweep: &Sweep) -> Result<VerificationReport> {
    let start = Instant::now();
    if k <= n {
        return Err(invalid("k", k, format!("structure (i) requires k > n = {n}")));
    }
    if delta == 0 {
        return Err(invalid("delta", delta, "must be positive"));
    }
    let s = CyclicSemigroup::with_caps(k, n, &sweep.caps)?;
    let ell = s.erdos_burgess() as i64;
    let min_len = (n + delta as u64 - 1) as usize;
    let report = VerificationReport::new("structure-i")
        .with_grid("k", k)
        .with_grid("n", n)
        .with_grid("max_len", max_len)
        .with_grid("delta", delta);
    let p = sweep.multisets(s.order(), 1..=max_len, |m, p| {
        let t = semigroup_seq(&s, m);
        p.checked += 1;
        let count = count_idempotent_sum(&s, &t);
        if !count.below_pow2_threshold(t.len() as i64 - ell + 1 + delta as i64, 0) {
            return;
        }
        p.qualifying += 1;
        let indices: Vec<u64> = t.terms().iter().map(|a| a.ind() as u64).collect();
        let bad = find_sub_multiset(&support(&indices), min_len, &mut |sub| !one_smooth_sorted(sub));
        if let Some(bad) = bad {
            p.fail_with(
                &t,
                format!("k={k} n={n} delta={delta}"),
                format!("every subsequence of length >= {min_len} 1-smooth"),
                format!("{} not 1-smooth", join(&bad)),
                format!("N={count}"),
            );
        }
    })?;
    Ok(finish(p, report, start))
}

/// Largest `delta` allowed by structure (ii): `ceil(n/2) - 1`.
pub fn structure_ii_delta_max(n: u64) -> u64 {
    n.div_ceil(2).saturating_sub(1)
}

/// For `k <= n` and `delta in [1, ceil(n/2) - 1]`: whenever
/// `N(T; e) < 2^(|T| - n + 1 + delta) - 1 + [k = 1]`, `Ψ(T)` has a signed
/// smooth subsequence of length `n - delta`.
pub fn verify_main_structure_ii(k: u64, n: u64, max_len: usize, delta: u32, sweep: &Sweep) -> Result<VerificationReport> {
    let dmax = structure_ii_delta_max(n);
    if delta == 0 || delta as u64 > dmax {
        return Err(invalid("delta", delta, format!("must lie in [1, ceil(n/2) - 1] = [1, {dmax}]")));
    }
    structure_ii(k, n, max_len, delta, sweep)
}

/// [`verify_main_structure_ii`] without the upper range check on `delta`,
/// for observing that the range is sharp. Requires `1 <= delta < n`.
pub fn verify_main_structure_ii_any_delta(
    k: u64,
    n: u64,
    max_len: usize,
    delta: u32,
    sweep: &Sweep,
) -> Result<VerificationReport> {
    if delta == 0 || delta as u64 >= n {
        return Err(invalid("delta", delta, format!("must lie in [1, n - 1] = [1, {}]", n.saturating_sub(1))));
    }
    structure_ii(k, n, max_len, delta, sweep)
}

fn structure_ii(k: u64, n: u64, max_len: usize, delta: u32, sweep: &Sweep) -> Result<VerificationReport> {
    let start = Instant::now();
    if k > n {
        return Err(invalid("k", k, format!("structure (ii) requires k <= n = {n}")));
    }
    check_cap("max_len", max_len as u128, sweep.caps.sign_search_len as u128)?;
    let s = CyclicSemigroup::with_caps(k, n, &sweep.caps)?;
    let ell = s.erdos_burgess() as i64;
    let target = n as usize - delta as usize;
    let report = VerificationReport::new("structure-ii")
        .with_grid("k", k)
        .with_grid("n", n)
        .with_grid("max_len", max_len)
        .with_grid("delta", delta)
        .with_grid("delta_in_range", delta as u64 <= structure_ii_delta_max(n));
    let p = sweep.multisets(s.order(), 1..=max_len, |m, p| {
        let t = semigroup_seq(&s, m);
        p.checked += 1;
        check_structure_ii_instance(&s, &t, delta, ell, target, p);
    })?;
    Ok(finish(p, report, start))
}

fn check_structure_ii_instance(
    s: &CyclicSemigroup,
    t: &SemigroupSequence,
    delta: u32,
    ell: i64,
    target: usize,
    p: &mut Partial,
) {
    let count = count_idempotent_sum(s, t);
    if !count.below_pow2_threshold(t.len() as i64 - ell + 1 + delta as i64, one_over_k(s)) {
        return;
    }
    p.qualifying += 1;
    let psi = lift_psi(s, t);
    let longest = max_signed_smooth_sub_length(&psi).expect("length within the sign cap");
    if longest < target {
        p.fail_with(
            t,
            format!("k={} n={} delta={delta}", s.k(), s.n()),
            format!("signed smooth subsequence of length >= {target}"),
            format!("longest {longest}"),
            format!("N={count} psi={psi}"),
        );
    }
}

/// Structure (ii) at the excluded `delta = ceil(n/2)` on the explicit
/// instances of lengths `floor(n/2) ..= floor(n/2) + extra`. Every instance
/// qualifies and violates the conclusion, so this report is expected to fail.
pub fn verify_structure_ii_sharpness(k: u64, n: u64, extra: usize, sweep: &Sweep) -> Result<VerificationReport> {
    let start = Instant::now();
    let s = CyclicSemigroup::with_caps(k, n, &sweep.caps)?;
    let delta = n.div_ceil(2) as u32;
    let half = (n / 2) as usize;
    let ell = s.erdos_burgess() as i64;
    let report = VerificationReport::new("structure-ii-sharpness")
        .with_grid("k", k)
        .with_grid("n", n)
        .with_grid("delta", delta)
        .with_grid("lengths", format!("{half}..={}", half + extra));
    let mut p = Partial::default();
    for len in half..=half + extra {
        let t = example1_instance(&s, len)?;
        p.checked += 1;
        check_structure_ii_instance(&s, &t, delta, ell, n as usize - delta as usize, &mut p);
    }
    Ok(finish(p, report, start))
}

/// Largest `delta` for the `k > n` structure check,
/// `floor(ceil(ceil(k/n) n / 2) - 3n/2)`; may be nonpositive.
pub fn prop_structure_delta_max(s: &CyclicSemigroup) -> i64 {
    let ell = s.erdos_burgess() as i64;
    let n = s.n() as i64;
    (2 * ((ell + 1) / 2) - 3 * n).div_euclid(2)
}

/// Index multiset `1^(|T|-u) x_1 ... x_u` with `x_i >= 2` and
/// `u <= Σ (x_i - 1) <= delta - 1`.
fn prop_structure_holds(t: &SemigroupSequence, delta: u32) -> bool {
    let big: Vec<u64> = t.terms().iter().map(|a| a.ind() as u64).filter(|&x| x >= 2).collect();
    let excess: u64 = big.iter().map(|x| x - 1).sum();
    big.len() as u64 <= excess && excess < delta as u64
}

/// For `k > n` and `delta` in that range (all of it when
/// `delta` is `None`): whenever `N(T; e) < 2^(|T| - ceil(k/n) n + 1 + delta) - 1`
/// the index multiset has the `1^(|T|-u) x_1 ... x_u` shape. Vacuous when
/// the range is empty.
pub fn verify_prop_structure(
    k: u64,
    n: u64,
    max_len: usize,
    delta: Option<u32>,
    sweep: &Sweep,
) -> Result<VerificationReport> {
    if k <= n {
        return Err(invalid("k", k, format!("the structure check requires k > n = {n}")));
    }
    let s = CyclicSemigroup::with_caps(k, n, &sweep.caps)?;
    let dmax = prop_structure_delta_max(&s);
    let deltas: Vec<u32> = match delta {
        Some(d) if d == 0 || d as i64 > dmax => {
            return Err(invalid("delta", d, format!("must lie in [1, {dmax}]")));
        }
        Some(d) => vec![d],
        None => (1..=dmax.max(0) as u32).collect(),
    };
    prop_structure(&s, max_len, &deltas, "prop-structure", true, sweep)
}

/// Exploration past the proven `delta` range. For each `delta` in `1..=delta_max`, the number of qualifying
/// sequences and of sequences lacking the shape, recorded as observations.
/// Nothing is asserted.
pub fn explore_prop_structure_deltas(
    k: u64,
    n: u64,
    max_len: usize,
    delta_max: u32,
    sweep: &Sweep,
) -> Result<VerificationReport> {
    if k <= n {
        return Err(invalid("k", k, format!("the structure check requires k > n = {n}")));
    }
    let s = CyclicSemigroup::with_caps(k, n, &sweep.caps)?;
    let deltas: Vec<u32> = (1..=delta_max).collect();
    prop_structure(&s, max_len, &deltas, "prop-structure-delta-sweep", false, sweep)
}

fn prop_structure(
    s: &CyclicSemigroup,
    max_len: usize,
    deltas: &[u32],
    suite: &str,
    assert: bool,
    sweep: &Sweep,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let ell = s.erdos_burgess() as i64;
    let dmax = prop_structure_delta_max(s);
    let mut report = VerificationReport::new(suite)
        .with_grid("k", s.k())
        .with_grid("n", s.n())
        .with_grid("max_len", max_len)
        .with_grid("delta_max", dmax);
    report = match deltas {
        [] => report.with_grid("deltas", "empty"),
        _ => report.with_grid("deltas", join(deltas)),
    };
    if deltas.is_empty() {
        return Ok(finish(Partial::default(), report, start));
    }
    let top = *deltas.iter().max().expect("nonempty");
    let p = sweep.walk(s.order(), max_len, |m, p| {
        let t = semigroup_seq(s, m);
        let count = count_idempotent_sum(s, &t);
        p.checked += 1;
        let mut qualified = false;
        for &d in deltas {
            if !count.below_pow2_threshold(t.len() as i64 - ell + 1 + d as i64, 0) {
                continue;
            }
            qualified = true;
            let holds = prop_structure_holds(&t, d);
            if assert {
                if !holds {
                    p.fail_with(
                        &t,
                        format!("k={} n={} delta={d}", s.k(), s.n()),
                        format!("1^[|T|-u] x_1..x_u with u <= sum(x_i - 1) <= {}", d - 1),
                        "shape violated",
                        format!("N={count}"),
                    );
                }
            } else {
                p.observations.push(format!("delta={d} qualifying={t} shape={holds}"));
            }
        }
        p.qualifying += u64::from(qualified);
        // N(T; e) never decreases as terms are added, so once it reaches the
        // largest threshold no extension can qualify
        count.below_pow2_threshold(max_len as i64 - ell + 1 + top as i64, 0)
    })?;
    let mut r = finish(p, report, start);
    if !assert {
        let raw = std::mem::take(&mut r.observations);
        for &d in deltas {
            let prefix = format!("delta={d} ");
            let rows: Vec<&String> = raw.iter().filter(|o| o.starts_with(&prefix)).collect();
            let bad = rows.iter().filter(|o| o.ends_with("shape=false")).count();
            r.observations.push(format!("delta={d} qualifying={} without_shape={bad}", rows.len()));
        }
    }
    Ok(r)
}

/// Every length-`n` multiset of nonzero residues, not all equal, has
/// `N(T) >= n` (empty subsequence included).
pub fn verify_theorem_a(n: u64, sweep: &Sweep) -> Result<VerificationReport> {
    let start = Instant::now();
    if n < 2 {
        return Err(invalid("n", n, "must be at least 2"));
    }
    check_cap("modulus", n as u128, sweep.caps.max_order as u128)?;
    let modulus = n as u32;
    let report = VerificationReport::new("theorem-a").with_grid("n", n);
    let p = sweep.multisets(modulus - 1, n as usize..=n as usize, |m, p| {
        p.checked += 1;
        if m.first() == m.last() {
            return;
        }
        p.qualifying += 1;
        let t = ResidueSequence::from_sorted_unchecked(modulus, m.iter().map(|v| v + 1).collect());
        let count = count_zero_sum(&t);
        if count < Count::from(n) {
            p.fail(&t, format!("n={n}"), format!(">= {n}"), count);
        }
    })?;
    Ok(finish(p, report, start))
}

/// Whenever `N(T) < 2^(|T| - n + 1 + delta)` over `Z/nZ`, a decomposition
/// exists and passes all four clauses.
pub fn verify_theorem_b(n: u64, max_len: usize, delta: u32, sweep: &Sweep) -> Result<VerificationReport> {
    let start = Instant::now();
    if delta == 0 || 4 * delta as u64 > n + 4 {
        return Err(invalid("delta", delta, format!("must satisfy 1 <= delta <= n/4 + 1 with n = {n}")));
    }
    check_cap("modulus", n as u128, sweep.caps.max_order as u128)?;
    let modulus = n as u32;
    let report = VerificationReport::new("theorem-b")
        .with_grid("n", n)
        .with_grid("max_len", max_len)
        .with_grid("delta", delta);
    let p = sweep.multisets(modulus, 1..=max_len, |m, p| {
        p.checked += 1;
        let t = ResidueSequence::from_sorted_unchecked(modulus, m.to_vec());
        let count = count_zero_sum(&t);
        if !count.below_pow2_threshold(t.len() as i64 - n as i64 + 1 + delta as i64, 1) {
            return;
        }
        p.qualifying += 1;
        let params = format!("n={n} delta={delta}");
        match theorem_b_decompose(&t, delta) {
            Ok(Some(d)) => {
                if let Err(why) = check_theorem_b_decomposition(&t, delta, &d) {
                    p.fail_with(&t, params, "valid decomposition", "invalid decomposition", why);
                }
            }
            Ok(None) => p.fail_with(&t, params, "decomposition", "none", format!("N={count}")),
            Err(e) => p.fail_with(&t, params, "decomposition", "error", e),
        }
    })?;
    Ok(finish(p, report, start))
}

/// Lengths covered by the `k > n` characterization of idempotent-sum free
/// sequences: `floor((ceil(k/n) + 1) n / 2) ..= ceil(k/n) n - 1`.
pub fn theorem_c_lengths(s: &CyclicSemigroup) -> std::ops::RangeInclusive<usize> {
    let q = s.k().div_ceil(s.n()) as usize;
    let n = s.n() as usize;
    ((q + 1) * n / 2)..=(q * n - 1)
}

/// For `k > n` and lengths in [`theorem_c_lengths`]: `T` is idempotent-sum
/// free iff its index multiset is 1-smooth with sum at most
/// `ceil(k/n) n - 1`.
pub fn verify_theorem_c(k: u64, n: u64, sweep: &Sweep) -> Result<VerificationReport> {
    let start = Instant::now();
    if k <= n {
        return Err(invalid("k", k, format!("only the k > n case is swept; need k > n = {n}")));
    }
    let s = CyclicSemigroup::with_caps(k, n, &sweep.caps)?;
    let ell = s.erdos_burgess();
    let lengths = theorem_c_lengths(&s);
    let mut report = VerificationReport::new("theorem-c")
        .with_grid("k", k)
        .with_grid("n", n)
        .with_grid("lengths", format!("{}..={}", lengths.start(), lengths.end()));
    report.observations.push("the k <= n case is the smoothness characterization covered by smo".into());
    let p = sweep.multisets(s.order(), lengths, |m, p| {
        let t = semigroup_seq(&s, m);
        p.checked += 1;
        p.qualifying += 1;
        let free = count_idempotent_sum(&s, &t).is_zero();
        let indices: Vec<u64> = t.terms().iter().map(|a| a.ind() as u64).collect();
        let shaped = one_smooth_sorted(&indices) && t.index_sum() < ell;
        if free != shaped {
            p.fail_with(
                &t,
                params_kn(k, n),
                format!("idempotent-sum free = {shaped}"),
                format!("idempotent-sum free = {free}"),
                format!("index sum {}", t.index_sum()),
            );
        }
    })?;
    Ok(finish(p, report, start))
}

/// `min N` over signed windows of length `r`, for `r = 1..=|T|`.
fn window_minima(t: &ResidueSequence) -> Vec<Count> {
    (1..=t.len())
        .map(|r| {
            enumerate_signed_windows(t, r)
                .expect("r within [1, |T|]")
                .map(|w| count_zero_sum(&w))
                .min()
                .expect("at least one window")
        })
        .collect()
}

/// For every `T` over `Z/nZ` and `r in [1, |T| - 1]`: if the least `N` over
/// signed windows of length `r` exceeds 1, the least over length `r + 1`
/// is at least twice as large.
pub fn verify_doubling(n: u64, max_len: usize, sweep: &Sweep) -> Result<VerificationReport> {
    let start = Instant::now();
    if n == 0 {
        return Err(invalid("n", n, "must be positive"));
    }
    check_cap("doubling modulus", n as u128, sweep.caps.doubling_modulus as u128)?;
    check_cap("doubling length", max_len as u128, sweep.caps.doubling_len as u128)?;
    let modulus = n as u32;
    let report = VerificationReport::new("doubling").with_grid("n", n).with_grid("max_len", max_len);
    let p = sweep.multisets(modulus, 2..=max_len, |m, p| {
        let t = ResidueSequence::from_sorted_unchecked(modulus, m.to_vec());
        let mins = window_minima(&t);
        for r in 1..t.len() {
            p.checked += 1;
            let (lo, hi) = (&mins[r - 1], &mins[r]);
            if *lo <= Count::one() {
                continue;
            }
            p.qualifying += 1;
            if *hi < lo.clone() + lo.clone() {
                p.fail(&t, format!("n={n} r={r}"), format!(">= 2 * {lo}"), hi);
            }
        }
    })?;
    Ok(finish(p, report, start))
}

/// Every integer sequence of length `n..=max_len` with terms in
/// `1..=max_term` that is not 1-smooth has a nonempty `K` with
/// `σ(K) ≡ 0 (mod n)`, `σ(K) >= 2|K|` and `σ(K) >= 2(|T| - n + 1)`.
pub fn verify_instant_lemma(n: u64, max_len: usize, max_term: u64, sweep: &Sweep) -> Result<VerificationReport> {
    let start = Instant::now();
    if n == 0 {
        return Err(invalid("n", n, "must be positive"));
    }
    if max_term == 0 || max_term > u32::MAX as u64 {
        return Err(invalid("max_term", max_term, "must lie in [1, 2^32)"));
    }
    let report = VerificationReport::new("instant")
        .with_grid("n", n)
        .with_grid("max_len", max_len)
        .with_grid("max_term", max_term);
    let lo = (n as usize).max(1);
    let p = sweep.multisets(max_term as u32, lo..=max_len, |m, p| {
        p.checked += 1;
        let terms: Vec<u64> = m.iter().map(|&v| v as u64 + 1).collect();
        if one_smooth_sorted(&terms) {
            return;
        }
        p.qualifying += 1;
        let floor = 2 * (terms.len() as u64 + 1 - n);
        let found = find_sub_multiset(&support(&terms), 1, &mut |k| {
            let sigma: u64 = k.iter().sum();
            sigma.is_multiple_of(n) && sigma >= 2 * k.len() as u64 && sigma >= floor
        });
        if found.is_none() {
            p.fail(join(&terms), format!("n={n}"), "qualifying K", "none");
        }
    })?;
    Ok(finish(p, report, start))
}

/// Every positive integer sequence of length `l <= max_len` with terms at
/// most `2l` that is not 1-smooth has `σ >= 2l`, with equality exactly for
/// `1^[l-1] (l+1)` and `2^[l]`.
pub fn verify_sigma_two_ell(max_len: usize, sweep: &Sweep) -> Result<VerificationReport> {
    let start = Instant::now();
    let report = VerificationReport::new("sigma-2l").with_grid("max_len", max_len);
    let mut total = Partial::default();
    for ell in 1..=max_len {
        let mut families: Vec<Vec<u64>> = vec![vec![2; ell]];
        let mut first = vec![1; ell - 1];
        first.push(ell as u64 + 1);
        if !families.contains(&first) {
            families.insert(0, first);
        }
        let p = sweep.multisets(2 * ell as u32, ell..=ell, |m, p| {
            p.checked += 1;
            let terms: Vec<u64> = m.iter().map(|&v| v as u64 + 1).collect();
            let smooth = one_smooth_sorted(&terms);
            let sigma: u64 = terms.iter().sum();
            let in_family = families.contains(&terms);
            if in_family && smooth {
                p.fail(join(&terms), format!("l={ell}"), "not 1-smooth", "1-smooth");
            }
            if smooth {
                return;
            }
            p.qualifying += 1;
            if sigma < 2 * ell as u64 {
                p.fail(join(&terms), format!("l={ell}"), format!("sigma >= {}", 2 * ell), sigma);
            } else if (sigma == 2 * ell as u64) != in_family {
                p.fail(
                    join(&terms),
                    format!("l={ell}"),
                    format!("sigma = {} exactly on the two families", 2 * ell),
                    format!("sigma = {sigma}, family member = {in_family}"),
                );
            } else if in_family {
                p.observations.push(format!("l={ell} equality at {}", join(&terms)));
            }
        })?;
        total = Partial::concat(vec![total, p]);
    }
    Ok(finish(total, report, start))
}

/// `Σ_{j >= h} C(m, jn) >= 2^(m - hn + 1) - 1` over `m <= max_m`,
/// `h, n in [1, max_hn]`. Equality cases are recorded as observations.
pub fn verify_binomial_tail(max_m: u64, max_hn: u64, sweep: &Sweep) -> Result<VerificationReport> {
    let start = Instant::now();
    let report = VerificationReport::new("binomial-tail")
        .with_grid("max_m", max_m)
        .with_grid("max_h", max_hn)
        .with_grid("max_n", max_hn);
    let parts = sweep.run((0..=max_m).collect(), |m| {
        let mut p = Partial::default();
        for h in 1..=max_hn {
            for n in 1..=max_hn {
                p.checked += 1;
                p.qualifying += 1;
                let sum = binomial_tail_sum(m, h, n).expect("h, n positive");
                let exp = m as i64 - (h * n) as i64 + 1;
                if sum.below_pow2_threshold(exp, 0) {
                    p.fail(format!("m={m} h={h} n={n}"), "", format!(">= 2^{exp} - 1"), &sum);
                } else if exp >= 0 && sum == Count::pow2_minus_one(exp as u64) {
                    p.observations.push(format!("equality at m={m} h={h} n={n}"));
                }
            }
        }
        p
    })?;
    Ok(finish(Partial::concat(parts), report, start))
}

/// The explicit instances of lengths `floor(n/2) ..= floor(n/2) + extra`:
/// `N(T; e) = 2^(|T| - floor(n/2)) - 1 + [k = 1]` and the longest signed
/// smooth subsequence of `Ψ(T)` is shorter than `floor(n/2)`.
pub fn verify_example(k: u64, n: u64, extra: usize, sweep: &Sweep) -> Result<VerificationReport> {
    let start = Instant::now();
    let s = CyclicSemigroup::with_caps(k, n, &sweep.caps)?;
    let half = (n / 2) as usize;
    let report = VerificationReport::new("example")
        .with_grid("k", k)
        .with_grid("n", n)
        .with_grid("lengths", format!("{half}..={}", half + extra));
    let instances: Vec<SemigroupSequence> =
        (half..=half + extra).map(|len| example1_instance(&s, len)).collect::<Result<_>>()?;
    let parts = sweep.run(instances, |t| {
        let mut p = Partial::default();
        p.checked += 1;
        p.qualifying += 1;
        let count = count_idempotent_sum(&s, &t);
        let want = Count::pow2_minus_one((t.len() - half) as u64) + Count::from(u64::from(s.is_group()));
        if count != want {
            p.fail_with(&t, params_kn(k, n), &want, &count, count_details(&s, &t, sweep));
        }
        let psi = lift_psi(&s, &t);
        match max_signed_smooth_sub_length(&psi) {
            Ok(longest) if longest < half => {}
            Ok(longest) => p.fail(&t, params_kn(k, n), format!("longest signed smooth < {half}"), longest),
            Err(e) => p.fail(&t, params_kn(k, n), format!("longest signed smooth < {half}"), e),
        }
        p
    })?;
    Ok(finish(Partial::concat(parts), report, start))
}

/// Exhaustive Erdős–Burgess constant equals `ceil(k/n) n` for every `(k, n)`
/// with `k + n <= max_k_plus_n` and `ceil(k/n) n <= max_constant`, and
/// `1^[ceil(k/n) n - 1]` is idempotent-sum free.
pub fn verify_erdos_burgess(max_k_plus_n: u64, max_constant: u64, sweep: &Sweep) -> Result<VerificationReport> {
    let start = Instant::now();
    let report = VerificationReport::new("erdos-burgess")
        .with_grid("max_k_plus_n", max_k_plus_n)
        .with_grid("max_constant", max_constant);
    let mut grid = Vec::new();
    for k in 1..max_k_plus_n {
        for n in 1..=max_k_plus_n - k {
            let s = CyclicSemigroup::with_caps(k, n, &sweep.caps)?;
            if s.erdos_burgess() <= max_constant {
                // run the cap checks up front so errors are not swallowed
                check_cap("order k+n-1", s.order() as u128, sweep.caps.erdos_burgess_order as u128)?;
                grid.push(s);
            }
        }
    }
    let caps = sweep.caps;
    let parts = sweep.run(grid, |s| {
        let mut p = Partial::default();
        p.checked += 1;
        p.qualifying += 1;
        let ell = s.erdos_burgess();
        let params = params_kn(s.k() as u64, s.n() as u64);
        let witness = SemigroupSequence::new(s, std::iter::repeat_n(1, ell as usize - 1)).expect("generator");
        if count_idempotent_sum(&s, &witness) != Count::from(u64::from(s.is_group())) {
            p.fail(&witness, &params, "idempotent-sum free", "has an idempotent sum");
        }
        match erdos_burgess_exhaustive(&s, &caps) {
            Ok((value, _)) if value == ell => {}
            Ok((value, found)) => p.fail_with(&found, &params, ell, value, "exhaustive search"),
            Err(e) => p.fail(&witness, &params, ell, e),
        }
        p
    })?;
    Ok(finish(Partial::concat(parts), report, start))
}

/// Random instances with `k + n - 1 <= max_order` and `|T| <= max_len`:
/// the DP count, the subset brute force and the index-threshold route agree.
pub fn verify_oracle(instances: usize, seed: u64, max_len: usize, max_order: u32, sweep: &Sweep) -> Result<VerificationReport> {
    let start = Instant::now();
    if max_order == 0 {
        return Err(invalid("max_order", max_order, "must be positive"));
    }
    check_cap("brute-force length", max_len as u128, sweep.caps.brute_force_len as u128)?;
    let report = VerificationReport::new("oracle")
        .with_grid("instances", instances)
        .with_grid("seed", seed)
        .with_grid("max_len", max_len)
        .with_grid("max_order", max_order);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::with_capacity(instances);
    for _ in 0..instances {
        let order = rng.random_range(1..=max_order as u64);
        let k = rng.random_range(1..=order);
        let n = order - k + 1;
        let len = rng.random_range(0..=max_len);
        let indices: Vec<u64> = (0..len).map(|_| rng.random_range(1..=order)).collect();
        let s = CyclicSemigroup::with_caps(k, n, &sweep.caps)?;
        cases.push(SemigroupSequence::new(s, indices)?);
    }
    let caps = sweep.caps;
    let chunks: Vec<Vec<SemigroupSequence>> = cases.chunks(16).map(<[_]>::to_vec).collect();
    let parts = sweep.run(chunks, |chunk| {
        let mut p = Partial::default();
        for t in chunk {
            let s = *t.semigroup();
            p.checked += 1;
            p.qualifying += 1;
            let dp = count_idempotent_sum(&s, &t);
            let targets = BTreeSet::from([s.idempotent()]);
            let brute = brute_force_count_with_caps(&s, &t, &targets, true, &caps);
            let by_index = count_idempotent_sum_by_index(&s, &t);
            let agree = matches!((&brute, &by_index), (Ok(b), Ok(i)) if *b == dp && *i == dp);
            if !agree {
                let show = |r: &Result<Count>| r.as_ref().map_or_else(Error::to_string, Count::to_string);
                p.fail_with(
                    &t,
                    params_kn(s.k() as u64, s.n() as u64),
                    format!("brute={}", show(&brute)),
                    format!("dp={dp}"),
                    format!("index route={}", show(&by_index)),
                );
            }
        }
        p
    })?;
    Ok(finish(Partial::concat(parts), report, start))
}

/// Parameters for [`run_suite`]; each suite reads the ones it needs.
#[derive(Debug, Clone, Default)]
pub struct SuiteParams {
    pub k: Option<u64>,
    pub n: Option<u64>,
    pub max_len: Option<usize>,
    pub delta: Option<u32>,
    pub max_term: Option<u64>,
    pub seed: Option<u64>,
    pub instances: Option<usize>,
    pub max_order: Option<u32>,
    pub max_constant: Option<u64>,
    /// Accept `delta` outside the stated range (structure-ii only).
    pub any_delta: bool,
}

fn need<T: Copy>(v: Option<T>, name: &'static str, suite: &str) -> Result<T> {
    v.ok_or_else(|| invalid(name, "missing", format!("suite {suite} requires --{}", name.replace('_', "-"))))
}

/// Run a suite by name.
pub fn run_suite(name: &str, p: &SuiteParams, sweep: &Sweep) -> Result<VerificationReport> {
    let k = || need(p.k, "k", name);
    let n = || need(p.n, "n", name);
    let max_len = || need(p.max_len, "max_len", name);
    let delta = || need(p.delta, "delta", name);
    match name {
        "main-bound" => verify_main_bound(k()?, n()?, max_len()?, sweep),
        "structure-i" => verify_main_structure_i(k()?, n()?, max_len()?, delta()?, sweep),
        "structure-ii" if p.any_delta => verify_main_structure_ii_any_delta(k()?, n()?, max_len()?, delta()?, sweep),
        "structure-ii" => verify_main_structure_ii(k()?, n()?, max_len()?, delta()?, sweep),
        "structure-ii-sharpness" => verify_structure_ii_sharpness(k()?, n()?, p.max_len.unwrap_or(4), sweep),
        "prop-structure" => verify_prop_structure(k()?, n()?, max_len()?, p.delta, sweep),
        "prop-structure-delta-sweep" => explore_prop_structure_deltas(k()?, n()?, max_len()?, delta()?, sweep),
        "theorem-a" => verify_theorem_a(n()?, sweep),
        "theorem-b" => verify_theorem_b(n()?, max_len()?, delta()?, sweep),
        "theorem-c" => verify_theorem_c(k()?, n()?, sweep),
        "doubling" => verify_doubling(n()?, max_len()?, sweep),
        "instant" => verify_instant_lemma(n()?, max_len()?, need(p.max_term, "max_term", name)?, sweep),
        "sigma-2l" => verify_sigma_two_ell(p.max_len.unwrap_or(7), sweep),
        // m ranges over 0..=max_len and both h and n over 1..=n
        "binomial-tail" => verify_binomial_tail(p.max_len.unwrap_or(40) as u64, p.n.unwrap_or(6), sweep),
        // lengths floor(n/2) ..= floor(n/2) + max_len
        "example" => verify_example(k()?, n()?, p.max_len.unwrap_or(4), sweep),
        "erdos-burgess" => verify_erdos_burgess(
            p.max_order.unwrap_or(8) as u64 + 1,
            p.max_constant.unwrap_or(8),
            sweep,
        ),
        "oracle" => verify_oracle(
            p.instances.unwrap_or(500),
            p.seed.unwrap_or(0),
            p.max_len.unwrap_or(16),
            p.max_order.unwrap_or(12),
            sweep,
        ),
        other => Err(invalid("suite", other, format!("expected one of {}", SUITES.join(", ")))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::SuiteStatus;

    fn sweep() -> Sweep {
        Sweep::with_jobs(2)
    }

    #[test]
    fn main_bound_examples() {
        for (k, n, len) in [(2, 2, 8), (1, 4, 8), (3, 4, 7)] {
            let r = verify_main_bound(k, n, len, &sweep()).unwrap();
            assert_eq!(r.status(), SuiteStatus::Pass, "{k} {n}");
            assert!(r.instances_checked > 0);
        }
    }

    #[test]
    fn structure_i_examples() {
        assert!(verify_main_structure_i(5, 3, 6, 1, &sweep()).unwrap().passed());
        assert!(verify_main_structure_i(5, 2, 6, 2, &sweep()).unwrap().passed());
        assert!(verify_main_structure_i(2, 3, 6, 1, &sweep()).is_err());
        assert!(verify_main_structure_i(5, 3, 6, 0, &sweep()).is_err());
    }

    #[test]
    fn structure_ii_examples() {
        assert!(verify_main_structure_ii(1, 6, 7, 1, &sweep()).unwrap().passed());
        assert!(verify_main_structure_ii(2, 5, 6, 2, &sweep()).unwrap().passed());
        assert!(verify_main_structure_ii(1, 6, 7, 3, &sweep()).is_err());
        assert!(verify_main_structure_ii(7, 6, 7, 1, &sweep()).is_err());
        let forced = verify_main_structure_ii_any_delta(1, 6, 7, 3, &sweep()).unwrap();
        assert_eq!(forced.status(), SuiteStatus::Fail);
        assert!(forced.failures.iter().any(|f| f.input == "2,2,3,6"));
    }

    #[test]
    fn sharpness_fails_as_expected() {
        for n in [6, 8, 9, 10] {
            for k in [1, 2] {
                let r = verify_structure_ii_sharpness(k, n, 3, &sweep()).unwrap();
                assert_eq!(r.status(), SuiteStatus::Fail);
                assert_eq!(r.failures.len() as u64, r.instances_checked);
            }
        }
    }

    #[test]
    fn prop_structure_examples() {
        let s = CyclicSemigroup::new(9, 2).unwrap();
        assert_eq!(prop_structure_delta_max(&s), 2);
        assert_eq!(prop_structure_delta_max(&CyclicSemigroup::new(5, 3).unwrap()), -2);
        let r = verify_prop_structure(9, 2, 10, Some(1), &sweep()).unwrap();
        assert!(r.passed());
        assert!(r.instances_checked > 0);
        let r = verify_prop_structure(5, 3, 6, None, &sweep()).unwrap();
        assert_eq!(r.status(), SuiteStatus::Vacuous);
        assert!(verify_prop_structure(9, 2, 10, Some(3), &sweep()).is_err());
        let r = explore_prop_structure_deltas(9, 2, 9, 4, &sweep()).unwrap();
        assert!(r.passed());
        assert_eq!(r.observations.len(), 4);
    }

    #[test]
    fn theorem_a_examples() {
        let r = verify_theorem_a(5, &sweep()).unwrap();
        assert!(r.passed());
        assert_eq!(r.instances_qualifying, 56 - 4);
        assert_eq!(verify_theorem_a(2, &sweep()).unwrap().status(), SuiteStatus::Vacuous);
        assert!(verify_theorem_a(6, &sweep()).unwrap().passed());
    }

    #[test]
    fn theorem_b_examples() {
        assert!(verify_theorem_b(8, 8, 1, &sweep()).unwrap().passed());
        assert!(verify_theorem_b(8, 8, 4, &sweep()).is_err());
    }

    #[test]
    fn theorem_c_examples() {
        let s = CyclicSemigroup::new(5, 3).unwrap();
        assert_eq!(theorem_c_lengths(&s), 4..=5);
        assert_eq!(theorem_c_lengths(&CyclicSemigroup::new(7, 2).unwrap()), 5..=7);
        assert!(verify_theorem_c(5, 3, &sweep()).unwrap().passed());
        assert!(verify_theorem_c(7, 2, &sweep()).unwrap().passed());
        assert!(verify_theorem_c(3, 4, &sweep()).is_err());
    }

    #[test]
    fn doubling_examples() {
        assert!(verify_doubling(3, 6, &sweep()).unwrap().passed());
        assert!(verify_doubling(6, 4, &sweep()).is_err());
        assert!(verify_doubling(3, 8, &sweep()).is_err());
    }

    #[test]
    fn instant_examples() {
        assert!(verify_instant_lemma(3, 6, 8, &sweep()).unwrap().passed());
        assert!(verify_instant_lemma(2, 6, 6, &sweep()).unwrap().passed());
    }

    #[test]
    fn sigma_and_binomial() {
        let r = verify_sigma_two_ell(5, &sweep()).unwrap();
        assert!(r.passed());
        assert_eq!(r.observations.len(), 1 + 2 * 4);
        let r = verify_binomial_tail(12, 4, &sweep()).unwrap();
        assert!(r.passed());
        assert!(r.observations.iter().any(|o| o == "equality at m=5 h=1 n=2"));
    }

    #[test]
    fn example_and_erdos_burgess() {
        assert!(verify_example(2, 6, 3, &sweep()).unwrap().passed());
        assert!(verify_example(1, 9, 2, &sweep()).unwrap().passed());
        assert!(verify_erdos_burgess(6, 8, &sweep()).unwrap().passed());
    }

    #[test]
    fn oracle_is_deterministic() {
        let a = verify_oracle(60, 7, 12, 8, &Sweep::with_jobs(1)).unwrap();
        let b = verify_oracle(60, 7, 12, 8, &Sweep::with_jobs(4)).unwrap();
        assert!(a.passed());
        assert_eq!(a.to_json(false), b.to_json(false));
    }

    #[test]
    fn run_suite_dispatch() {
        let p = SuiteParams {
            k: Some(2),
            n: Some(2),
            max_len: Some(5),
            ..SuiteParams::default()
        };
        assert!(run_suite("main-bound", &p, &sweep()).unwrap().passed());
        assert!(run_suite("nope", &p, &sweep()).is_err());
        let err = run_suite("structure-i", &p, &sweep()).unwrap_err().to_string();
        assert!(err.contains("delta"));
    }
}
