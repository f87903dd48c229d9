mod bench;
mod output;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Map, Value};

use apcover::bfile::{diff_bfile, format_bfile, parse_bfile};
use apcover::counting::generate;
use apcover::determinant::signed_free_count;
use apcover::oracle::{DEFAULT_CHUNK_SIZE, DEFAULT_PRODUCT_LIMIT};
use apcover::parse::{parse_modulus_list, parse_residue_list};
use apcover::{
    available_det, build_available_matrix, build_free_matrix, coverage_counts, det_bareiss,
    det_laplace, exact_coverage_histogram, free_det, residue_independence_check, sieve_histogram,
    Error, ModulusSystem, ResidueAssignment, SequenceId, SieveConfig,
};

use output::*;

const EXIT_MISMATCH: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_REFUSED: u8 = 3;

#[derive(Parser)]
#[command(name = "apcover", version, about = "Count integers covered by residue classes of prime-modulus progressions")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Report wall time in `timing_ms` (otherwise null, keeping output reproducible).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Available, free and occupied counts plus the full multiplicity histogram.
    Count(CountArgs),
    /// Evaluate one of the two determinant families.
    Det(DetArgs),
    /// Sieve residue assignments and check them against the predicted counts.
    Verify(VerifyArgs),
    /// Emit terms of A067549 or A005867.
    Oeis(OeisArgs),
    /// Time the recurrence against fraction-free elimination.
    Bench(BenchArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ModuliArgs {
    /// Comma-separated moduli, e.g. 2,3,5.
    #[arg(long, value_name = "LIST")]
    primes: Option<String>,
    /// Use the first N primes.
    #[arg(long, value_name = "N")]
    first_k: Option<usize>,
}

#[derive(Args)]
struct SystemArgs {
    #[command(flatten)]
    moduli: ModuliArgs,
    /// Accept pairwise-coprime composite moduli.
    #[arg(long)]
    coprime: bool,
}

impl SystemArgs {
    fn system(&self) -> Result<ModulusSystem, Error> {
        let moduli = match (&self.moduli.primes, self.moduli.first_k) {
            (Some(list), _) => parse_modulus_list(list)?,
            (None, Some(k)) => apcover::primes::first_primes(k),
            (None, None) => unreachable!("clap enforces one modulus source"),
        };
        ModulusSystem::new(&moduli, self.coprime)
    }
}

#[derive(Args)]
struct SieveArgs {
    /// Largest product the sieve will accept.
    #[arg(long, value_name = "DECIMAL", default_value_t = BigUint::from(DEFAULT_PRODUCT_LIMIT))]
    limit: BigUint,
    /// Sieve worker threads (0 = all cores). Does not affect output.
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

impl SieveArgs {
    fn config(&self) -> Result<SieveConfig, Error> {
        SieveConfig::new(DEFAULT_CHUNK_SIZE, self.limit.clone(), self.threads)
    }
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// Also sieve this residue assignment and compare.
    #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
    residues: Option<String>,
    #[command(flatten)]
    sieve: SieveArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Recurrence,
    Bareiss,
    Laplace,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Available,
    Free,
}

#[derive(Args)]
struct DetArgs {
    #[command(flatten)]
    system: SystemArgs,
    #[arg(long, value_enum, default_value_t = Which::Available)]
    which: Which,
    #[arg(long, value_enum, default_value_t = Method::Recurrence)]
    method: Method,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// Number of seeded random assignments.
    #[arg(long, default_value_t = 20)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Test every assignment instead of random ones.
    #[arg(long)]
    exhaustive: bool,
    #[command(flatten)]
    sieve: SieveArgs,
}

#[derive(Args)]
struct OeisArgs {
    #[arg(long, value_parser = clap::value_parser!(SequenceId))]
    sequence: SequenceId,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    terms: u64,
    /// Print "index value" lines instead of a record.
    #[arg(long)]
    bfile: bool,
    /// Compare the generated terms against a local b-file.
    #[arg(long, value_name = "PATH")]
    diff: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(2..))]
    kmax: u64,
    #[arg(long, default_value_t = 10)]
    repeat: usize,
    /// Stop running elimination once a single run takes longer than this.
    #[arg(long, default_value_t = 1000)]
    timeout_ms: u64,
}

/// Failure carrying the process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ProductTooLarge { .. }
            | Error::TooManyAssignments { .. }
            | Error::DimensionTooLarge { .. }
            | Error::KTooLarge { .. } => EXIT_REFUSED,
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// What a command produced: text for stdout and an exit code.
struct Outcome {
    stdout: String,
    code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let start = Instant::now();
    let (mut record, code) = match &cli.command {
        Command::Count(args) => cmd_count(args)?,
        Command::Det(args) => (cmd_det(args)?, 0),
        Command::Verify(args) => cmd_verify(args)?,
        Command::Oeis(args) => return cmd_oeis(args, cli.format, cli.timing.then_some(start)),
        Command::Bench(args) => (cmd_bench(args), 0),
    };
    if cli.timing {
        record.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    Ok(Outcome {
        stdout: record.render(cli.format),
        code,
    })
}

fn system_inputs(system: &ModulusSystem) -> Map<String, Value> {
    let mut inputs = Map::new();
    inputs.insert("moduli".into(), dec_list(system.moduli()));
    inputs.insert("coprime".into(), json!(system.coprime_mode()));
    inputs
}

fn cmd_count(args: &CountArgs) -> Result<(OutputRecord, u8), Failure> {
    let system = args.system.system()?;
    let k = system.len();
    let counts = coverage_counts(&system);
    let histogram = match exact_coverage_histogram(&system) {
        Ok(h) => Some(h),
        Err(Error::KTooLarge { .. }) => None,
        Err(e) => return Err(e.into()),
    };

    let mut inputs = system_inputs(&system);
    let mut results = counts_json(&counts);
    results.insert(
        "histogram".into(),
        histogram.as_ref().map_or(Value::Null, histogram_json),
    );

    let mut header: Vec<String> = ["moduli", "available", "free", "occupied", "product"]
        .map(String::from)
        .to_vec();
    header.extend(histogram_header(k));
    let mut row = vec![join_list(system.moduli())];
    row.extend(counts_fields(&counts));
    row.extend(histogram_fields(histogram.as_ref(), k));

    let mut code = 0;
    if let Some(list) = &args.residues {
        let assignment = ResidueAssignment::new(&system, &parse_residue_list(list)?)?;
        let sieved = sieve_histogram(&system, &assignment, &args.sieve.config()?)?;
        let observed = sieved.to_counts();
        let matches = observed == counts && histogram.as_ref().is_none_or(|h| *h == sieved);
        if !matches {
            code = EXIT_MISMATCH;
        }
        inputs.insert("residues".into(), dec_list(assignment.residues()));
        inputs.insert("limit".into(), dec(args.sieve.config()?.product_limit()));
        let mut oracle = counts_json(&observed);
        oracle.insert("histogram".into(), histogram_json(&sieved));
        oracle.insert("matches".into(), json!(matches));
        results.insert("oracle".into(), Value::Object(oracle));
        header.extend(["residues", "oracle_available", "oracle_free", "matches"].map(String::from));
        row.extend([
            join_list(assignment.residues()),
            observed.available().to_string(),
            observed.free().to_string(),
            matches.to_string(),
        ]);
    }

    Ok((
        OutputRecord {
            command: "count",
            inputs,
            results,
            timing_ms: None,
            table: Table::single(header, row),
        },
        code,
    ))
}

fn cmd_det(args: &DetArgs) -> Result<OutputRecord, Failure> {
    let system = args.system.system()?;
    let (which, matrix) = match args.which {
        Which::Available => ("available", build_available_matrix(&system)),
        Which::Free => ("free", build_free_matrix(&system)),
    };
    let (method, raw) = match args.method {
        Method::Recurrence => ("recurrence", None),
        Method::Bareiss => ("bareiss", Some(det_bareiss(&matrix))),
        Method::Laplace => ("laplace", Some(det_laplace(&matrix)?)),
    };
    let value = match (args.which, &raw) {
        (Which::Available, None) => available_det(&system).into(),
        (Which::Free, None) => free_det(&system).into(),
        (Which::Available, Some(d)) => d.clone(),
        (Which::Free, Some(d)) => signed_free_count(&system, d),
    };

    let mut inputs = system_inputs(&system);
    inputs.insert("which".into(), json!(which));
    inputs.insert("method".into(), json!(method));
    let mut results = Map::new();
    results.insert("value".into(), json!(value.to_string()));
    results.insert("dimension".into(), json!(matrix.dimension().to_string()));
    results.insert(
        "raw_determinant".into(),
        raw.as_ref().map_or(Value::Null, |d| json!(d.to_string())),
    );
    let header = ["moduli", "which", "method", "value"].map(String::from).to_vec();
    let row = vec![
        join_list(system.moduli()),
        which.into(),
        method.into(),
        value.to_string(),
    ];
    Ok(OutputRecord {
        command: "det",
        inputs,
        results,
        timing_ms: None,
        table: Table::single(header, row),
    })
}

fn cmd_verify(args: &VerifyArgs) -> Result<(OutputRecord, u8), Failure> {
    let system = args.system.system()?;
    let config = args.sieve.config()?;
    let report = residue_independence_check(&system, args.trials, args.seed, &config, args.exhaustive)?;

    let mut inputs = system_inputs(&system);
    inputs.insert("trials".into(), json!(args.trials.to_string()));
    inputs.insert("seed".into(), json!(args.seed.to_string()));
    inputs.insert("exhaustive".into(), json!(args.exhaustive));
    inputs.insert("limit".into(), dec(config.product_limit()));

    let mismatches: Vec<Value> = report
        .mismatches
        .iter()
        .map(|m| {
            let mut o = Map::new();
            o.insert("residues".into(), dec_list(m.assignment.residues()));
            o.extend(counts_json(&m.observed));
            Value::Object(o)
        })
        .collect();
    let mut results = Map::new();
    results.insert("expected".into(), Value::Object(counts_json(&report.expected)));
    results.insert("histogram".into(), histogram_json(&report.expected_histogram));
    results.insert("assignments_tested".into(), json!(report.assignments_tested.to_string()));
    results.insert("agreeing".into(), json!(report.agreeing.to_string()));
    results.insert("histogram_agreeing".into(), json!(report.histogram_agreeing.to_string()));
    results.insert("all_agree".into(), json!(report.all_agree()));
    results.insert("mismatches".into(), Value::Array(mismatches));

    let k = system.len();
    let mut header: Vec<String> = [
        "moduli",
        "assignments_tested",
        "agreeing",
        "histogram_agreeing",
        "all_agree",
        "available",
        "free",
        "occupied",
        "product",
    ]
    .map(String::from)
    .to_vec();
    header.extend(histogram_header(k));
    let mut row = vec![
        join_list(system.moduli()),
        report.assignments_tested.to_string(),
        report.agreeing.to_string(),
        report.histogram_agreeing.to_string(),
        report.all_agree().to_string(),
    ];
    row.extend(counts_fields(&report.expected));
    row.extend(histogram_fields(Some(&report.expected_histogram), k));

    let code = if report.all_agree() { 0 } else { EXIT_MISMATCH };
    Ok((
        OutputRecord {
            command: "verify",
            inputs,
            results,
            timing_ms: None,
            table: Table::single(header, row),
        },
        code,
    ))
}

fn cmd_oeis(args: &OeisArgs, format: Format, started: Option<Instant>) -> Result<Outcome, Failure> {
    let n_terms = usize::try_from(args.terms).map_err(|_| Failure {
        code: EXIT_INVALID,
        message: format!("{} terms is too many", args.terms),
    })?;
    let table = generate(args.sequence, n_terms);

    let diff = match &args.diff {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure {
                code: EXIT_INVALID,
                message: format!("cannot read {}: {e}", path.display()),
            })?;
            Some(diff_bfile(&table, &parse_bfile(&text)?))
        }
        None => None,
    };
    let code = match &diff {
        Some(d) if !d.matches() => EXIT_MISMATCH,
        _ => 0,
    };

    if args.bfile {
        if let Some(d) = &diff {
            eprintln!(
                "compared {} terms, {} mismatches, {} skipped",
                d.compared, d.mismatches, d.skipped
            );
        }
        return Ok(Outcome {
            stdout: format_bfile(&table),
            code,
        });
    }

    let mut inputs = Map::new();
    inputs.insert("sequence".into(), json!(args.sequence.to_string()));
    inputs.insert("terms".into(), json!(args.terms.to_string()));
    let mut results = Map::new();
    results.insert("sequence".into(), json!(args.sequence.to_string()));
    results.insert(
        "terms".into(),
        Value::Array(
            table
                .terms
                .iter()
                .map(|(i, v)| json!({ "index": i.to_string(), "value": v.to_string() }))
                .collect(),
        ),
    );
    if let Some(d) = &diff {
        let first = d.first_mismatch.as_ref().map_or(Value::Null, |m| {
            json!({
                "index": m.index.to_string(),
                "expected": m.expected.to_string(),
                "found": m.found.to_string(),
            })
        });
        results.insert(
            "diff".into(),
            json!({
                "compared": d.compared.to_string(),
                "skipped": d.skipped.to_string(),
                "mismatches": d.mismatches.to_string(),
                "first_mismatch": first,
            }),
        );
    }
    let record = OutputRecord {
        command: "oeis",
        inputs,
        results,
        timing_ms: started.map(|s| millis(s.elapsed())),
        table: Table {
            header: vec!["index".into(), "value".into()],
            rows: table
                .terms
                .iter()
                .map(|(i, v)| vec![i.to_string(), v.to_string()])
                .collect(),
        },
    };
    Ok(Outcome {
        stdout: record.render(format),
        code,
    })
}

fn millis(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

fn cmd_bench(args: &BenchArgs) -> OutputRecord {
    let rows = bench::run(args.kmax as usize, args.repeat, Duration::from_millis(args.timeout_ms));

    let mut inputs = Map::new();
    inputs.insert("kmax".into(), json!(args.kmax.to_string()));
    inputs.insert("repeat".into(), json!(args.repeat.to_string()));
    inputs.insert("timeout_ms".into(), json!(args.timeout_ms.to_string()));

    let mut json_rows = Vec::new();
    let mut table = Table {
        header: ["k", "value", "recurrence_ms", "bareiss_ms", "bareiss_status", "agree"]
            .map(String::from)
            .to_vec(),
        rows: Vec::new(),
    };
    for row in &rows {
        let (bareiss_ms, status) = match &row.bareiss {
            bench::BareissOutcome::Ran { mean, .. } => (Some(millis(*mean)), "ok"),
            bench::BareissOutcome::Skipped => (None, "skipped (timeout)"),
        };
        json_rows.push(json!({
            "k": row.k.to_string(),
            "value": row.value.to_string(),
            "recurrence_ms": millis(row.recurrence_mean),
            "bareiss_ms": bareiss_ms,
            "bareiss_status": status,
            "agree": row.agree(),
        }));
        table.rows.push(vec![
            row.k.to_string(),
            row.value.to_string(),
            millis(row.recurrence_mean).to_string(),
            bareiss_ms.map(|m| m.to_string()).unwrap_or_default(),
            status.to_string(),
            row.agree().map(|a| a.to_string()).unwrap_or_default(),
        ]);
    }
    let mut results = Map::new();
    results.insert(
        "all_agree".into(),
        json!(rows.iter().all(|r| r.agree() != Some(false))),
    );
    results.insert("rows".into(), Value::Array(json_rows));
    OutputRecord {
        command: "bench",
        inputs,
        results,
        timing_ms: None,
        table,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use apcover::determinant::LAPLACE_MAX_DIMENSION;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn laplace_bound_is_reported_as_refusal() {
        let err = Failure::from(Error::DimensionTooLarge {
            dimension: LAPLACE_MAX_DIMENSION + 1,
            max: LAPLACE_MAX_DIMENSION,
        });
        assert_eq!(err.code, EXIT_REFUSED);
        assert_eq!(Failure::from(Error::NotPrime { modulus: 4 }).code, EXIT_INVALID);
    }
}
