mod reference;
mod render;
mod verify;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use moment_core::catalan::{catalan, catalan_triangle};
use moment_core::closed::{total_poincare, DEFAULT_ORDER};
use moment_core::koszul::verdict;
use moment_core::oracle::{exterior_mult_rank, hilbert_oracle, tor_over_s, SupportBound};
use moment_core::series::S;
use moment_core::{Error, FieldSpec, RepFamily};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("output: {0}")]
    Output(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::Internal(_)) | CliError::Output(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Parser)]
#[command(name = "moment", version, about = "Betti numbers, Hilbert and Poincare series of moment map quotients")]
struct Cli {
    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Worker threads for the linear algebra.
    #[arg(long, global = true, env = "MOMENT_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FamilyArgs {
    /// gl, sl, so or sp
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: usize,
}

impl FamilyArgs {
    fn rep(&self) -> Result<RepFamily, CliError> {
        Ok(RepFamily::parse(&self.family, self.n)?)
    }
}

#[derive(Args)]
struct FieldArg {
    /// qq for the rationals, fp:P for the prime field of order P.
    #[arg(long, env = "MOMENT_FIELD", default_value = "qq")]
    field: FieldSpec,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TableSource {
    Closed,
    Oracle,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Print the generators of the ideal.
    Gens {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print a graded Betti table over the polynomial ring.
    Betti {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value = "closed")]
        source: TableSource,
        /// Highest homological degree (default: the whole table).
        #[arg(long)]
        max_i: Option<usize>,
        #[command(flatten)]
        field: FieldArg,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// List graded entries instead of strand totals (text format).
        #[arg(long)]
        graded: bool,
        /// Run the oracle beyond its default size limit.
        #[arg(long)]
        allow_large: bool,
    },
    /// Print the Hilbert series of the quotient.
    Hilbert {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: u32,
        /// Set s = t.
        #[arg(long)]
        collapse: bool,
        /// Count dimensions of the quotient instead of using the formula.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        field: FieldArg,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print the trigraded Poincare series over the polynomial ring.
    Poincare {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: u32,
        /// Print only the total Betti numbers (s = t = 1).
        #[arg(long)]
        total: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Decide Koszulness and show the evidence.
    Koszul {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        field: FieldArg,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long, short)]
        verbose: bool,
    },
    /// Rank of multiplication by sum e_j f_j on the exterior algebra.
    Exterior {
        #[arg(long)]
        n: usize,
        /// Characteristic; 0 for the rationals.
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        #[arg(long, short)]
        verbose: bool,
    },
    /// Catalan numbers and the Catalan triangle.
    Catalan {
        #[arg(long)]
        n: u32,
    },
    /// Run cross-checks between the formulas and the oracle.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: verify::Suite,
        #[command(flatten)]
        field: FieldArg,
    },
}

/// Text written to stdout (or `--out`) and the process exit code.
struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

fn json<T: serde::Serialize>(value: &T) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn gens(family: &FamilyArgs, format: Format) -> Result<Output, CliError> {
    let f = family.rep()?;
    let names = f.variable_names();
    let gens = f.generators();
    let text = match format {
        Format::Text => gens.iter().map(|g| g.render(&names) + "\n").collect(),
        Format::Json => json(&render::generators_json(&gens, &names))?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["index", "polynomial"])?;
            for (k, g) in gens.iter().enumerate() {
                w.serialize((k + 1, g.render(&names)))?;
            }
            render::finish_csv(w)?
        }
    };
    Ok(Output::ok(text))
}

fn render_table(t: &moment_core::BettiTable, format: Format, graded: bool) -> Result<String, CliError> {
    Ok(match format {
        Format::Text if graded => render::table_graded_text(t),
        Format::Text => render::table_text(t),
        Format::Csv => render::table_csv(t)?,
        Format::Json => json(&render::table_json(t))?,
    })
}

#[allow(clippy::too_many_arguments)]
fn betti(
    family: &FamilyArgs,
    source: TableSource,
    max_i: Option<usize>,
    field: FieldSpec,
    format: Format,
    graded: bool,
    allow_large: bool,
) -> Result<Output, CliError> {
    let f = family.rep()?;
    f.field_guard(field)?;
    let closed = || {
        let t = f.betti_closed();
        max_i.map_or(t.clone(), |m| t.restricted(m))
    };
    let oracle = || -> Result<_, CliError> {
        if f.n() > f.family().oracle_limit() && !allow_large {
            return Err(CliError::Usage(format!(
                "the oracle is limited to n <= {} for {}; pass --allow-large to run it anyway",
                f.family().oracle_limit(),
                f.name()
            )));
        }
        let top = max_i.unwrap_or(f.ambient().num_vars());
        Ok(tor_over_s(&f, top, SupportBound::default(), field)?)
    };
    match source {
        TableSource::Closed => Ok(Output::ok(render_table(&closed(), format, graded)?)),
        TableSource::Oracle => Ok(Output::ok(render_table(&oracle()?, format, graded)?)),
        TableSource::Both => {
            let (c, o) = (closed(), oracle()?);
            let diff = c.diff(&o);
            let agree = diff.is_empty();
            let text = match format {
                Format::Csv => render::comparison_csv(&c, &o)?,
                Format::Json => json(&serde_json::json!({
                    "closed": render::table_json(&c),
                    "oracle": render::table_json(&o),
                    "agree": agree,
                    "diff": diff.iter().map(|(i, v, a, b)| serde_json::json!({
                        "i": i, "v1": v.a, "v2": v.b, "closed": a, "oracle": b
                    })).collect::<Vec<_>>(),
                }))?,
                Format::Text => {
                    let mut s = render_table(&c, format, graded)?;
                    if agree {
                        writeln!(s, "oracle agrees at all {} entries", c.entries().count()).unwrap();
                    } else {
                        for (i, v, a, b) in &diff {
                            writeln!(s, "mismatch i={i} v={v}: closed {a}, oracle {b}").unwrap();
                        }
                    }
                    s
                }
            };
            Ok(Output { text, code: if agree { 0 } else { 1 } })
        }
    }
}

fn series_output(series: &moment_core::TruncatedSeries, format: Format) -> Result<Output, CliError> {
    Ok(Output::ok(match format {
        Format::Text => format!("{series}\n"),
        Format::Csv => render::series_csv(series)?,
        Format::Json => json(&render::series_json(series))?,
    }))
}

fn hilbert(
    family: &FamilyArgs,
    order: u32,
    collapse: bool,
    oracle: bool,
    field: FieldSpec,
    format: Format,
) -> Result<Output, CliError> {
    let f = family.rep()?;
    let series = if oracle { hilbert_oracle(&f, order, field)? } else { f.hilbert_closed(order) };
    series_output(&if collapse { series.collapse_st(S) } else { series }, format)
}

fn poincare(family: &FamilyArgs, order: u32, total: bool, format: Format) -> Result<Output, CliError> {
    let f = family.rep()?;
    if !total {
        return series_output(&f.poincare_over_s(order)?, format);
    }
    let totals = total_poincare(&f)?;
    Ok(Output::ok(match format {
        Format::Json => json(&totals.iter().map(|b| b.to_string()).collect::<Vec<_>>())?,
        _ => totals.iter().map(i128::to_string).collect::<Vec<_>>().join(" ") + "\n",
    }))
}

fn koszul(family: &FamilyArgs, field: FieldSpec, format: Format, verbose: bool) -> Result<Output, CliError> {
    let v = verdict(&family.rep()?, field)?;
    let text = match format {
        Format::Json => json(&v)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["test", "kind", "fired", "detail"])?;
            for e in &v.evidence {
                w.serialize((&e.test, e.kind, e.fired, &e.detail))?;
            }
            render::finish_csv(w)?
        }
        Format::Text => {
            let mut s = v.summary() + "\n";
            if verbose {
                for e in &v.evidence {
                    let mark = if e.fired { "fired" } else { "-" };
                    writeln!(
                        s,
                        "  {:<18} {:<12} {:<6} {}",
                        e.test,
                        format!("{:?}", e.kind).to_lowercase(),
                        mark,
                        e.detail
                    )
                    .unwrap();
                }
            }
            s
        }
    };
    Ok(Output::ok(text))
}

fn exterior(n: usize, characteristic: u64, verbose: bool) -> Result<Output, CliError> {
    if n == 0 {
        return Err(CliError::Usage("n must be positive".into()));
    }
    let field = if characteristic == 0 { FieldSpec::Rationals } else { FieldSpec::Prime(characteristic) };
    let mut s = String::new();
    let mut failing = Vec::new();
    for i in 0..=2 * n - 2 {
        let (rank, maximal) = exterior_mult_rank(n, i, field)?;
        if verbose {
            writeln!(s, "i={i} rank={rank}{}", if maximal { "" } else { " (not maximal)" }).unwrap();
        }
        if !maximal {
            failing.push(i);
        }
    }
    if failing.is_empty() {
        s.push_str("maximal rank at every i\n");
    } else {
        writeln!(s, "rank not maximal at i = {failing:?}").unwrap();
    }
    Ok(Output::ok(s))
}

fn catalan_cmd(n: u32) -> Result<Output, CliError> {
    let mut s = String::new();
    let nums: Vec<String> = (0..=n).map(|m| catalan(m).to_string()).collect();
    writeln!(s, "C: {}", nums.join(" ")).unwrap();
    for big in 1..=n.max(1) {
        let row: Vec<String> = (1..=i64::from(big)).map(|r| catalan_triangle(big, r).to_string()).collect();
        writeln!(s, "B({big}, 1..{big}): {}", row.join(" ")).unwrap();
    }
    Ok(Output::ok(s))
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Gens { family, format } => gens(family, *format),
        Command::Betti { family, source, max_i, field, format, graded, allow_large } => {
            betti(family, *source, *max_i, field.field, *format, *graded, *allow_large)
        }
        Command::Hilbert { family, order, collapse, oracle, field, format } => {
            hilbert(family, *order, *collapse, *oracle, field.field, *format)
        }
        Command::Poincare { family, order, total, format } => poincare(family, *order, *total, *format),
        Command::Koszul { family, field, format, verbose } => koszul(family, field.field, *format, *verbose),
        Command::Exterior { n, characteristic, verbose } => exterior(*n, *characteristic, *verbose),
        Command::Catalan { n } => catalan_cmd(*n),
        Command::Verify { suite, field } => {
            let checks = verify::run(*suite, field.field);
            let failed = checks.iter().filter(|c| !c.passed).count();
            let mut text: String = checks.iter().map(|c| c.line() + "\n").collect();
            writeln!(text, "{} checks, {} failed", checks.len(), failed).unwrap();
            Ok(Output { text, code: u8::from(failed > 0) })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.threads {
        // only fails if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
    }
    let out = match run(&cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &out.text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{}", out.text),
    }
    ExitCode::from(out.code)
}
