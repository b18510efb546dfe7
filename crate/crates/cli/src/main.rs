//! `idemsum`: counting, smoothness certificates, invariant tables and
//! verification sweeps from the command line.
//!
//! Exit codes: 0 success, 1 usage or precondition error, 2 verification
//! failure, 3 internal oracle mismatch.

use std::collections::BTreeSet;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use idemsum::counting::brute_force_count;
use idemsum::invariants::{self, InvariantName};
use idemsum::smoothness::{
    find_signed_smooth_generator, find_smooth_generator, is_g_smooth, is_one_smooth,
    longest_signed_smooth_subsequence,
};
use idemsum::verify::{run_suite, SuiteParams, Sweep};
use idemsum::{
    count_idempotent_sum, main_lower_bound, Count, CyclicSemigroup, Error, IntSequence, Mode,
    ResidueSequence, SemigroupSequence, SuiteStatus, VerificationReport,
};

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_ORACLE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "idemsum", version, about = "Idempotent-sum counting over cyclic semigroups C(k;n)")]
#[command(after_help = "Caps can be overridden with IDEMSUM_CAPS, e.g. IDEMSUM_CAPS=max_order=4096,sign_search_len=20")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Worker threads for sweeps. Never changes reported values.
    #[arg(long, default_value_t = 1, global = true)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count subsequences summing to the idempotent.
    Count(CountArgs),
    /// Decide (signed) smoothness and print a certificate.
    Smooth(SmoothArgs),
    /// Closed-form and exhaustive zero-sum invariants.
    Invariant(InvariantArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Least count per length over all sequences, next to the lower bound.
    Table(TableArgs),
}

#[derive(Args, Debug)]
struct CountArgs {
    #[arg(long)]
    k: u64,
    #[arg(long)]
    n: u64,
    /// Element indices in [1, k+n-1], comma separated.
    #[arg(long, allow_hyphen_values = true)]
    seq: String,
    /// Cross-check the DP count against subset enumeration.
    #[arg(long)]
    check: bool,
}

#[derive(Args, Debug)]
struct SmoothArgs {
    /// Modulus; required unless --int.
    #[arg(long)]
    n: Option<u32>,
    /// Residues in [0, n-1] (or positive integers with --int), comma separated.
    #[arg(long, allow_hyphen_values = true)]
    seq: String,
    /// Allow a sign flip per term.
    #[arg(long)]
    signed: bool,
    /// Test this generator only.
    #[arg(long)]
    generator: Option<u32>,
    /// Integer 1-smoothness.
    #[arg(long)]
    int: bool,
    /// Longest signed smooth subsequence instead of a verdict on the whole sequence.
    #[arg(long)]
    longest: bool,
}

#[derive(Args, Debug)]
struct InvariantArgs {
    /// One of eb, davenport, sgn, smo.
    name: String,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    n: Option<u64>,
    /// Inclusive range of n, e.g. 2..12.
    #[arg(long)]
    n_range: Option<String>,
    /// Also run the exhaustive search and require agreement.
    #[arg(long)]
    exhaustive: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Suite name: main-bound, structure-i, structure-ii, structure-ii-sharpness,
    /// prop-structure, prop-structure-delta-sweep, theorem-a, theorem-b,
    /// theorem-c, doubling, instant, sigma-2l, binomial-tail, example,
    /// erdos-burgess, oracle.
    suite: String,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    max_len: Option<usize>,
    #[arg(long)]
    delta: Option<u32>,
    #[arg(long)]
    max_term: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    instances: Option<usize>,
    /// Largest semigroup order k+n-1 (oracle, erdos-burgess).
    #[arg(long)]
    max_order: Option<u32>,
    /// Largest ceil(k/n) n (erdos-burgess).
    #[arg(long)]
    max_constant: Option<u64>,
    /// Succeed only if the suite fails (sharpness checks). Lifts the upper
    /// range check on --delta for structure-ii.
    #[arg(long)]
    expect_fail: bool,
    /// Include elapsed time in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long)]
    k: u64,
    #[arg(long)]
    n: u64,
    #[arg(long)]
    max_len: usize,
}

/// A command's result: rows for csv/table, one document for json.
struct Output {
    columns: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    json: Value,
    text: Option<String>,
    exit: u8,
}

impl Output {
    fn single(columns: Vec<&'static str>, row: Vec<String>, json: Value) -> Self {
        Output {
            columns,
            rows: vec![row],
            json,
            text: None,
            exit: 0,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(&cli) {
        Ok(out) => match emit(&out, cli.format) {
            Ok(()) => ExitCode::from(out.exit),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_USAGE)
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            let code = if matches!(e, Error::FormulaMismatch { .. }) { EXIT_ORACLE } else { EXIT_USAGE };
            ExitCode::from(code)
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Output, Error> {
    if cli.jobs == 0 {
        return Err(usage("jobs", 0, "must be at least 1"));
    }
    match &cli.command {
        Command::Count(a) => cmd_count(a),
        Command::Smooth(a) => cmd_smooth(a),
        Command::Invariant(a) => cmd_invariant(a, cli.jobs),
        Command::Verify(a) => cmd_verify(a, cli.jobs, cli.format),
        Command::Table(a) => cmd_table(a),
    }
}

fn usage(name: &'static str, value: impl ToString, reason: &str) -> Error {
    Error::InvalidParameter {
        name,
        value: value.to_string(),
        reason: reason.to_string(),
    }
}

fn cmd_count(a: &CountArgs) -> Result<Output, Error> {
    let s = CyclicSemigroup::new(a.k, a.n)?;
    let t = SemigroupSequence::parse(s, &a.seq)?;
    let count = count_idempotent_sum(&s, &t);
    let bound = main_lower_bound(&s, t.len() as u64);
    let mut doc = json!({
        "k": a.k.to_string(),
        "n": a.n.to_string(),
        "sequence": t.to_string(),
        "count": count,
        "lower_bound": bound,
        "method": "dp",
    });
    let mut brute_text = String::new();
    let mut exit = 0;
    if a.check {
        let brute = brute_force_count(&s, &t, &BTreeSet::from([s.idempotent()]), true)?;
        doc["brute_force"] = json!(brute);
        doc["oracle_agrees"] = json!(brute == count);
        if brute != count {
            exit = EXIT_ORACLE;
            eprintln!("oracle mismatch: dp {count} != brute force {brute} for {t} over {s}");
        }
        brute_text = brute.to_string();
    }
    let mut out = Output::single(
        vec!["k", "n", "sequence", "count", "lower_bound", "method", "brute_force"],
        vec![
            a.k.to_string(),
            a.n.to_string(),
            t.to_string(),
            count.to_string(),
            bound.to_string(),
            "dp".into(),
            brute_text,
        ],
        doc,
    );
    out.exit = exit;
    Ok(out)
}

fn cmd_smooth(a: &SmoothArgs) -> Result<Output, Error> {
    let columns = vec!["mode", "sequence", "smooth", "certificate"];
    if a.int {
        if a.signed || a.generator.is_some() || a.longest {
            return Err(usage("int", "set", "--int cannot be combined with --signed, --generator or --longest"));
        }
        let t = IntSequence::parse(&a.seq)?;
        let verdict = is_one_smooth(&t)?;
        let smooth = verdict.is_some();
        let doc = json!({
            "mode": "int",
            "sequence": t.to_string(),
            "smooth": smooth,
            "certificate": verdict.as_ref().map(|s| s.to_string()),
        });
        let cert = verdict.map(|s| s.to_string()).unwrap_or_default();
        return Ok(Output::single(columns, vec!["int".into(), t.to_string(), smooth.to_string(), cert], doc));
    }
    let n = a.n.ok_or_else(|| usage("n", "missing", "--n is required unless --int"))?;
    let t = ResidueSequence::parse(n, &a.seq)?;
    if a.longest {
        let found = longest_signed_smooth_subsequence(&t)?;
        let (sub, cert) = match &found {
            Some((sub, cert)) => (sub.to_string(), Some(cert)),
            None => (String::new(), None),
        };
        let doc = json!({
            "mode": "longest-signed",
            "n": n.to_string(),
            "sequence": t.to_string(),
            "subsequence": sub,
            "length": found.as_ref().map_or(0, |(s, _)| s.len()).to_string(),
            "certificate": cert,
        });
        let row = vec![
            "longest-signed".into(),
            t.to_string(),
            sub,
            cert.map(|c| c.to_string()).unwrap_or_default(),
        ];
        return Ok(Output::single(vec!["mode", "sequence", "subsequence", "certificate"], row, doc));
    }
    let (mode, cert) = match (a.signed, a.generator) {
        (true, Some(_)) => return Err(usage("generator", "set", "--generator applies to unsigned smoothness only")),
        (true, None) => ("signed", find_signed_smooth_generator(&t)?),
        (false, Some(g)) => ("generator", is_g_smooth(&t, g)?),
        (false, None) => ("unsigned", find_smooth_generator(&t)),
    };
    let smooth = cert.is_some();
    let doc = json!({
        "mode": mode,
        "n": n.to_string(),
        "sequence": t.to_string(),
        "smooth": smooth,
        "certificate": cert,
    });
    let row = vec![
        mode.to_string(),
        t.to_string(),
        smooth.to_string(),
        cert.map(|c| c.to_string()).unwrap_or_default(),
    ];
    Ok(Output::single(columns, row, doc))
}

fn parse_range(text: &str) -> Result<(u64, u64), Error> {
    let bad = || usage("n_range", text, "expected a..b with a <= b");
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: u64 = a.trim().parse().map_err(|_| bad())?;
    let b: u64 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn cmd_invariant(a: &InvariantArgs, jobs: usize) -> Result<Output, Error> {
    let name: InvariantName = a.name.parse()?;
    let ns: Vec<u64> = match (&a.n_range, a.n) {
        (Some(_), Some(_)) => return Err(usage("n", "set", "give either --n or --n-range, not both")),
        (Some(r), None) => {
            let (lo, hi) = parse_range(r)?;
            (lo..=hi).collect()
        }
        (None, Some(n)) => vec![n],
        (None, None) => return Err(usage("n", "missing", "--n or --n-range is required")),
    };
    let k = match name {
        InvariantName::ErdosBurgess => a.k.ok_or_else(|| usage("k", "missing", "eb requires --k"))?,
        _ => 1,
    };
    let mode = if a.exhaustive { Mode::Exhaustive } else { Mode::Formula };
    let pool = rayon_pool(jobs)?;
    let results = pool.install(|| {
        ns.iter()
            .map(|&n| invariants::compute(name, k, n, mode))
            .collect::<Result<Vec<_>, _>>()
    })?;
    let rows = results
        .iter()
        .map(|r| {
            vec![
                r.name.to_string(),
                r.k.to_string(),
                r.n.to_string(),
                r.closed_form.to_string(),
                r.exhaustive.map(|v| v.to_string()).unwrap_or_default(),
                r.witness.clone().unwrap_or_default(),
            ]
        })
        .collect();
    Ok(Output {
        columns: vec!["name", "k", "n", "closed_form", "exhaustive", "witness"],
        rows,
        json: json!({ "invariant": name, "rows": results }),
        text: None,
        exit: 0,
    })
}

fn rayon_pool(jobs: usize) -> Result<rayon::ThreadPool, Error> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| usage("jobs", jobs, &e.to_string()))
}

fn cmd_verify(a: &VerifyArgs, jobs: usize, format: Format) -> Result<Output, Error> {
    let params = SuiteParams {
        k: a.k,
        n: a.n,
        max_len: a.max_len,
        delta: a.delta,
        max_term: a.max_term,
        seed: a.seed,
        instances: a.instances,
        max_order: a.max_order,
        max_constant: a.max_constant,
        any_delta: a.expect_fail,
    };
    let report = run_suite(&a.suite, &params, &Sweep::with_jobs(jobs))?;
    let failed = report.status() == SuiteStatus::Fail;
    let exit = match (a.expect_fail, failed) {
        (true, true) => {
            eprintln!("expected failure observed: {} failure(s)", report.failures.len());
            0
        }
        (true, false) => {
            eprintln!("expected a failure but the suite reported {}", report.status());
            EXIT_VERIFY
        }
        (false, true) if a.suite == "oracle" => EXIT_ORACLE,
        (false, true) => EXIT_VERIFY,
        (false, false) => 0,
    };
    let mut json = report.to_json(a.timing);
    if a.expect_fail {
        json["expect_fail"] = json!(true);
    }
    Ok(Output {
        columns: vec![
            "suite",
            "status",
            "instances_checked",
            "instances_qualifying",
            "input",
            "params",
            "expected",
            "actual",
            "details",
        ],
        rows: report_rows(&report),
        json,
        text: (format == Format::Table).then(|| report.to_table_with(a.timing)),
        exit,
    })
}

trait TableWith {
    fn to_table_with(&self, timing: bool) -> String;
}

impl TableWith for VerificationReport {
    fn to_table_with(&self, timing: bool) -> String {
        if timing {
            self.to_table()
        } else {
            let mut r = self.clone();
            r.elapsed = None;
            r.to_table()
        }
    }
}

fn report_rows(r: &VerificationReport) -> Vec<Vec<String>> {
    let head = vec![
        r.suite.clone(),
        r.status().to_string(),
        r.instances_checked.to_string(),
        r.instances_qualifying.to_string(),
    ];
    if r.failures.is_empty() {
        let mut row = head;
        row.extend(std::iter::repeat_n(String::new(), 5));
        return vec![row];
    }
    r.failures
        .iter()
        .map(|f| {
            let mut row = head.clone();
            row.extend([
                f.input.clone(),
                f.params.clone(),
                f.expected.clone(),
                f.actual.clone(),
                f.details.clone().unwrap_or_default(),
            ]);
            row
        })
        .collect()
}

fn cmd_table(a: &TableArgs) -> Result<Output, Error> {
    let s = CyclicSemigroup::new(a.k, a.n)?;
    let caps = idemsum::Caps::global();
    let mut rows = Vec::new();
    let mut docs = Vec::new();
    for len in 1..=a.max_len {
        let mut least: Option<(Count, String)> = None;
        let mut attaining = 0u64;
        for m in idemsum::sequence::enumerate_multisets_with_caps(s.order(), len, &caps)? {
            let t = SemigroupSequence::new(s, m.iter().map(|&v| v as u64 + 1))?;
            let c = count_idempotent_sum(&s, &t);
            match &least {
                Some((best, _)) if c > *best => {}
                Some((best, _)) if c == *best => attaining += 1,
                _ => {
                    least = Some((c, t.to_string()));
                    attaining = 1;
                }
            }
        }
        let (min, example) = least.expect("at least one sequence per length");
        let bound = main_lower_bound(&s, len as u64);
        rows.push(vec![
            len.to_string(),
            min.to_string(),
            bound.to_string(),
            attaining.to_string(),
            example.clone(),
        ]);
        docs.push(json!({
            "length": len.to_string(),
            "min_count": min,
            "lower_bound": bound,
            "attaining": attaining.to_string(),
            "example": example,
        }));
    }
    Ok(Output {
        columns: vec!["length", "min_count", "lower_bound", "attaining", "example"],
        rows,
        json: json!({ "k": a.k.to_string(), "n": a.n.to_string(), "rows": docs }),
        text: None,
        exit: 0,
    })
}

fn emit(out: &Output, format: Format) -> io::Result<()> {
    let stdout = io::stdout();
    let mut w = stdout.lock();
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, &out.json)?;
            writeln!(w)?;
        }
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(w);
            csv.write_record(&out.columns)?;
            for row in &out.rows {
                csv.write_record(row)?;
            }
            csv.flush()?;
        }
        Format::Table => {
            if let Some(text) = &out.text {
                write!(w, "{text}")?;
                return Ok(());
            }
            let widths: Vec<usize> = out
                .columns
                .iter()
                .enumerate()
                .map(|(i, c)| out.rows.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap_or(0))
                .collect();
            let line = |cells: Vec<&str>| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            writeln!(w, "{}", line(out.columns.clone()))?;
            for row in &out.rows {
                writeln!(w, "{}", line(row.iter().map(String::as_str).collect()))?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use idemsum::verify::SUITES;

    #[test]
    fn ranges_parse() {
        assert_eq!(parse_range("2..12").unwrap(), (2, 12));
        assert_eq!(parse_range("3..=5").unwrap(), (3, 5));
        assert!(parse_range("5..2").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn unknown_suite_lists_the_known_ones() {
        let err = run_suite("bogus", &SuiteParams::default(), &Sweep::with_jobs(1)).unwrap_err();
        for s in SUITES {
            assert!(err.to_string().contains(s), "{s}");
        }
    }
}
