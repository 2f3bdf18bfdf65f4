use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use revnf::io::{builtin_document, emit, failure_document, parse_document, Emit, OutputFormat, SpecDocument};
use revnf::normalform::golden::{golden_case, golden_report, Family};
use revnf::normalform::{complement_range, hilbert_report, normal_form};
use revnf::verify::{run_suite, Suite, VerifyConfig, VerifyRun};

/// Exact normal forms of reversible-equivariant polynomial vector fields.
#[derive(Parser)]
#[command(name = "revnf", version)]
struct Cli {
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the complement Q⃗^k(S⋊Γ) for a range of degrees.
    Complement(RangeArgs),
    /// Normalize the field of a problem through its degree bound.
    NormalForm(SpecArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Compare computed complements with the reference generator lists.
    Golden(GoldenArgs),
    /// Build a Hilbert basis of the invariant ring and check it degree-wise.
    Hilbert(HilbertArgs),
}

#[derive(Args)]
struct SpecArgs {
    /// Problem file, or a built-in name such as `resonant-1-2` or `nilpotent`.
    #[arg(long)]
    spec: String,

    /// Output format (defaults to the document's `options.format`).
    #[arg(long)]
    out: Option<Format>,
}

#[derive(Args)]
struct RangeArgs {
    #[command(flatten)]
    spec: SpecArgs,

    #[arg(long, default_value_t = 2)]
    k_from: usize,

    /// Last degree (defaults to the document's `degree_max`).
    #[arg(long)]
    k_to: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    range: RangeArgs,

    /// Suite to run.
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    case: SuiteArg,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Random samples per randomized check.
    #[arg(long, default_value_t = 100)]
    samples: usize,
}

#[derive(Args)]
struct GoldenArgs {
    #[arg(long, value_enum)]
    case: FamilyArg,

    #[arg(long)]
    n1: u32,

    #[arg(long)]
    n2: u32,

    /// Signs `a0,a1,a2` of the second involution (z2xz2 only).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    signs: Option<Vec<i64>>,

    #[arg(long, default_value_t = 2)]
    k_from: usize,

    /// Last degree (defaults to `2(n1+n2)+1`).
    #[arg(long)]
    k_to: Option<usize>,

    #[arg(long, default_value = "json")]
    out: Format,
}

#[derive(Args)]
struct HilbertArgs {
    #[command(flatten)]
    spec: SpecArgs,

    /// Pruning bound (defaults to the document's `options.dmax`).
    #[arg(long)]
    dmax: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Latex,
    Text,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => OutputFormat::Json,
            Format::Latex => OutputFormat::Latex,
            Format::Text => OutputFormat::Text,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Elphick,
    ComplementSplit,
    Lemmas,
    Pi,
    DecomposePlus,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::All => Suite::ALL.to_vec(),
            SuiteArg::Elphick => vec![Suite::Elphick],
            SuiteArg::ComplementSplit => vec![Suite::ComplementSplit],
            SuiteArg::Lemmas => vec![Suite::Lemmas],
            SuiteArg::Pi => vec![Suite::Pi],
            SuiteArg::DecomposePlus => vec![Suite::DecomposePlus],
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Z2,
    Z2xz2,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Z2 => Family::Z2,
            FamilyArg::Z2xz2 => Family::Z2xZ2,
        }
    }
}

/// An error that ends the run before any report is produced.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn load(spec: &str) -> Result<SpecDocument, Failure> {
    let path = Path::new(spec);
    if path.exists() {
        let text = std::fs::read_to_string(path)?;
        parse_document(&text).map_err(|e| Failure(format!("{spec}: {e}")))
    } else {
        Ok(builtin_document(spec)?)
    }
}

fn format_for(out: Option<Format>, doc: &SpecDocument) -> OutputFormat {
    out.map_or(doc.options.format, Into::into)
}

/// Prints the report; on failed checks also prints the failure list to
/// stderr and returns exit code 1.
fn finish<R: Emit>(report: &R, format: OutputFormat) -> ExitCode {
    print!("{}", emit(report, format));
    let failures = report.failures();
    if failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprint!("{}", failure_document(report.kind(), failures));
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Complement(a) => {
            let doc = load(&a.spec.spec)?;
            let k_to = a.k_to.unwrap_or(doc.spec.kmax());
            let report = complement_range(doc.spec.linear(), doc.spec.group(), a.k_from, k_to)?;
            Ok(finish(&report, format_for(a.spec.out, &doc)))
        }
        Command::NormalForm(a) => {
            let doc = load(&a.spec)?;
            let result = normal_form(&doc.spec)?;
            Ok(finish(&result, format_for(a.out, &doc)))
        }
        Command::Verify(a) => {
            let doc = load(&a.range.spec.spec)?;
            let cfg = VerifyConfig {
                k_from: a.range.k_from,
                k_to: a.range.k_to.unwrap_or(doc.spec.kmax()),
                seed: a.seed,
                samples: a.samples,
            };
            let reports = a
                .case
                .suites()
                .into_iter()
                .map(|s| run_suite(s, doc.spec.linear(), doc.spec.group(), &cfg))
                .collect::<Result<Vec<_>, _>>()?;
            let run = VerifyRun { seed: a.seed, reports };
            Ok(finish(&run, format_for(a.range.spec.out, &doc)))
        }
        Command::Golden(a) => {
            let signs = match a.signs.as_deref() {
                Some(&[a0, a1, a2]) => Some([a0, a1, a2]),
                Some(_) => return Err(Failure("--signs takes exactly three values a0,a1,a2".into())),
                None => None,
            };
            let family: Family = a.case.into();
            if family == Family::Z2xZ2 && signs.is_none() {
                return Err(Failure("--signs a0,a1,a2 is required for z2xz2".into()));
            }
            let case = golden_case(family, a.n1, a.n2, signs)?;
            let k_to = a.k_to.unwrap_or(case.degree_bound());
            let report = golden_report(case, a.k_from, k_to)?;
            Ok(finish(&report, a.out.into()))
        }
        Command::Hilbert(a) => {
            let doc = load(&a.spec.spec)?;
            if doc.hilbert_u.is_empty() {
                return Err(Failure("the document has no `hilbert_u` list".into()));
            }
            let dmax = a.dmax.or(doc.options.dmax).unwrap_or(doc.spec.kmax());
            let report = hilbert_report(doc.spec.linear(), doc.spec.group(), &doc.hilbert_u, dmax)?;
            Ok(finish(&report, format_for(a.spec.out, &doc)))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprint!("{}", failure_document("error", vec![json!({ "error": e.to_string() })]));
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            eprint!("{}", failure_document("error", vec![json!({ "error": msg })]));
            ExitCode::from(2)
        }
    }
}
