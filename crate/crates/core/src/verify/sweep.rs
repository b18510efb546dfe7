use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::caps::Caps;
use crate::error::{check_cap, invalid, Result};
use crate::sequence::{enumerate_multisets_with_caps, multiset_count, walk_multisets_from};

use super::{Failure, VerificationReport};

/// Chunks per length for stream sweeps. Fixed so that the chunking, and with
/// it every report, does not depend on the number of threads.
const STREAM_PARTS: usize = 32;

/// Execution settings shared by every suite.
#[derive(Debug, Clone, Copy)]
pub struct Sweep {
    pub jobs: usize,
    pub caps: Caps,
}

impl Default for Sweep {
    fn default() -> Self {
        Sweep {
            jobs: std::thread::available_parallelism().map_or(1, |n| n.get()),
            caps: Caps::global(),
        }
    }
}

impl Sweep {
    pub fn with_jobs(jobs: usize) -> Self {
        Sweep {
            jobs: jobs.max(1),
            ..Sweep::default()
        }
    }

    /// Map `f` over `items` on a pool of `jobs` threads, keeping input order.
    pub(crate) fn run<T, F>(&self, items: Vec<T>, f: F) -> Result<Vec<Partial>>
    where
        T: Send,
        F: Fn(T) -> Partial + Sync + Send,
    {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs.max(1))
            .build()
            .map_err(|e| invalid("jobs", self.jobs, e.to_string()))?;
        Ok(pool.install(|| items.into_par_iter().map(f).collect()))
    }

    /// Every multiset over `0..alphabet` with length in `lengths`.
    pub(crate) fn multisets<F>(&self, alphabet: u32, lengths: RangeInclusive<usize>, check: F) -> Result<Partial>
    where
        F: Fn(&[u32], &mut Partial) + Sync + Send,
    {
        let mut chunks = Vec::new();
        for len in lengths {
            chunks.extend(enumerate_multisets_with_caps(alphabet, len, &self.caps)?.split(STREAM_PARTS));
        }
        let parts = self.run(chunks, |stream| {
            let mut p = Partial::default();
            for m in stream {
                check(&m, &mut p);
            }
            p
        })?;
        Ok(Partial::concat(parts))
    }

    /// Depth-first walk over nonempty multisets of length at most `max_len`,
    /// one chunk per first letter. `visit` returns whether to extend.
    pub(crate) fn walk<F>(&self, alphabet: u32, max_len: usize, visit: F) -> Result<Partial>
    where
        F: Fn(&[u32], &mut Partial) -> bool + Sync + Send,
    {
        let total = multiset_count(alphabet as u64 + 1, max_len as u64);
        check_cap("multiset count", total, self.caps.multiset_count)?;
        let parts = self.run((0..alphabet).collect(), |first| {
            let mut p = Partial::default();
            walk_multisets_from(alphabet, max_len, first, |m| visit(m, &mut p));
            p
        })?;
        Ok(Partial::concat(parts))
    }
}

/// Results of one chunk.
#[derive(Debug, Default)]
pub(crate) struct Partial {
    pub checked: u64,
    pub qualifying: u64,
    pub failures: Vec<Failure>,
    pub observations: Vec<String>,
}

impl Partial {
    pub fn concat(parts: Vec<Partial>) -> Partial {
        parts.into_iter().fold(Partial::default(), |mut acc, p| {
            acc.checked += p.checked;
            acc.qualifying += p.qualifying;
            acc.failures.extend(p.failures);
            acc.observations.extend(p.observations);
            acc
        })
    }

    pub fn fail(&mut self, input: impl ToString, params: impl ToString, expected: impl ToString, actual: impl ToString) {
        self.failures.push(Failure {
            input: input.to_string(),
            params: params.to_string(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            details: None,
        });
    }

    pub fn fail_with(
        &mut self,
        input: impl ToString,
        params: impl ToString,
        expected: impl ToString,
        actual: impl ToString,
        details: impl ToString,
    ) {
        self.fail(input, params, expected, actual);
        self.failures.last_mut().expect("just pushed").details = Some(details.to_string());
    }

    pub fn into_report(self, mut report: VerificationReport) -> VerificationReport {
        report.instances_checked += self.checked;
        report.instances_qualifying += self.qualifying;
        report.failures.extend(self.failures);
        report.observations.extend(self.observations);
        report
    }
}
