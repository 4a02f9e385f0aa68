//! Command-line front end for `flagcomb`.
//!
//! Exit codes: 0 when every check passes, 1 when at least one check fails
//! (reports are still written), 2 on input or parameter errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use flagcomb::bounds::{
    a_k_formula_check, codim2_identity_check, eq1_check, gamma_inequality_check, join_detect,
    link_inequality_check, m_sigma_check, near_extremal_check, three_manifold_bound_check,
    ubt_check, vertex_link_sum_check,
};
use flagcomb::classify::{check_property, is_prime, Property};
use flagcomb::flag::{clique_complex, is_isomorphic, one_skeleton, read_g_file};
use flagcomb::vectors::{dehn_sommerville_check, f_vector};
use flagcomb::{gen, par, sc, Complex, Error, Quantity, Relation, Report, Status, Witness};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "flagcomb", version, about = "Construct, classify and verify flag simplicial complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a complex and write it as a facet list.
    Gen(GenArgs),
    /// Print the f-vector (f_{-1} .. f_{d-1}).
    Fvec { path: PathBuf },
    /// Test class membership.
    Check {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[arg(long, value_delimiter = ',', default_value = "flag,pseudo,normal,eulerian,hmanifold,hsphere")]
        props: Vec<String>,
        #[arg(long, default_value_t = 2)]
        field: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run facet and vertex identity checks.
    Verify {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[arg(long, value_delimiter = ',', default_value = "codim2,akformula,eq1,vertexsum")]
        checks: Vec<String>,
        #[arg(long, default_value_t = 2)]
        field: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare face numbers against the balanced join of m cycles.
    Bounds {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[arg(long)]
        m: usize,
        /// Constant for the near-extremal threshold, e.g. `1` or `7/8`.
        #[arg(long)]
        b: Option<Quantity>,
        #[arg(long, default_value_t = 2)]
        field: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Decide whether a complex is the balanced join of cycles.
    Extremal {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Build the test corpus and write it with its manifest.
    Corpus {
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    Cycle,
    Jmn,
    Jstar,
    Gal3,
    Nonjoin5,
    Crosspoly,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Destination file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Omit the timestamped header so output is byte-reproducible.
    #[arg(long)]
    no_header: bool,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct Header {
    tool: &'static str,
    version: &'static str,
    generated_unix: u64,
}

#[derive(Serialize)]
struct Entry {
    complex: String,
    reports: Vec<Report>,
}

#[derive(Serialize)]
struct Document {
    #[serde(skip_serializing_if = "Option::is_none")]
    header: Option<Header>,
    command: String,
    status: Status,
    results: Vec<Entry>,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    complex: &'a str,
    check: &'a str,
    status: Status,
    lhs: String,
    rhs: String,
    equality: String,
    witnesses: usize,
    failures: usize,
}

/// Errors that map to exit code 2.
#[derive(Debug)]
struct InputError(String);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

impl From<std::io::Error> for InputError {
    fn from(e: std::io::Error) -> Self {
        InputError(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, InputError>;

/// Parses `argv` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    par::configure_from_env();
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            EXIT_INPUT
        }
    }
}

fn execute(command: Command) -> CliResult<i32> {
    match command {
        Command::Gen(args) => generate(args),
        Command::Fvec { path } => {
            let c = load(&path)?;
            println!("{}", f_vector(&c));
            Ok(EXIT_PASS)
        }
        Command::Check { paths, props, field, output } => {
            require_prime(field)?;
            let props = props
                .iter()
                .map(|p| Property::parse(p).ok_or_else(|| InputError(format!("unknown property {p:?}"))))
                .collect::<CliResult<Vec<_>>>()?;
            let results = each(&paths, |c| {
                props.iter().map(|&p| check_property(c, p, field).map_err(InputError::from)).collect()
            })?;
            emit("check", results, &output)
        }
        Command::Verify { paths, checks, field, output } => {
            require_prime(field)?;
            for name in &checks {
                if !VERIFY_CHECKS.contains(&name.as_str()) {
                    return Err(InputError(format!(
                        "unknown check {name:?} (expected one of {})",
                        VERIFY_CHECKS.join(",")
                    )));
                }
            }
            let results = each(&paths, |c| checks.iter().map(|name| verify_one(c, name, field)).collect())?;
            emit("verify", results, &output)
        }
        Command::Bounds { paths, m, b, field, output } => {
            require_prime(field)?;
            let results = each(&paths, |c| bounds_reports(c, m, b.as_ref(), field))?;
            emit("bounds", results, &output)
        }
        Command::Extremal { paths, output } => {
            let results = each(&paths, extremal_reports)?;
            emit("extremal", results, &output)
        }
        Command::Corpus { max_n, out } => {
            let entries = gen::build_corpus(max_n)?;
            let manifest = gen::write_corpus(&entries, &out)?;
            println!("{} entries written; manifest {}", entries.len(), manifest.display());
            Ok(EXIT_PASS)
        }
    }
}

const VERIFY_CHECKS: [&str; 8] = ["codim2", "akformula", "eq1", "vertexsum", "linkineq", "gamma", "ds", "ns"];

fn require_prime(p: u32) -> CliResult<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(InputError(format!("field characteristic {p} is not prime")))
    }
}

fn need(value: Option<usize>, flag: &str, family: Family) -> CliResult<usize> {
    value.ok_or_else(|| InputError(format!("--{flag} is required for family {family:?}")))
}

fn generate(args: GenArgs) -> CliResult<i32> {
    let f = args.family;
    let c = match f {
        Family::Cycle => gen::cycle(need(args.n, "n", f)?)?,
        Family::Jmn => gen::j_m_n(need(args.m, "m", f)?, need(args.n, "n", f)?)?,
        Family::Jstar => gen::j_star(need(args.m, "m", f)?, need(args.n, "n", f)?)?,
        Family::Gal3 => gen::gal_gamma(need(args.n, "n", f)?)?,
        Family::Nonjoin5 => gen::nonjoin_5manifold(need(args.n, "n", f)?, need(args.k, "k", f)?)?,
        Family::Crosspoly => gen::crosspoly(need(args.m, "m", f)?)?,
    };
    let text = sc::write_sc(&c);
    match args.out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(EXIT_PASS)
}

/// Reads a `.sc` facet list, or a `.g` edge list whose clique complex is
/// taken.
fn load(path: &Path) -> CliResult<Complex> {
    let is_graph = path.extension().is_some_and(|e| e == "g");
    let with_path = |e: Error| InputError(format!("{}: {e}", path.display()));
    if is_graph {
        let g = read_g_file(path).map_err(with_path)?;
        return Ok(clique_complex(&g));
    }
    let parsed = sc::read_sc_file(path).map_err(with_path)?;
    for w in &parsed.warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(parsed.complex)
}

fn each<F>(paths: &[PathBuf], f: F) -> CliResult<Vec<Entry>>
where
    F: Fn(&Complex) -> CliResult<Vec<Report>>,
{
    paths
        .iter()
        .map(|p| {
            let c = load(p)?;
            Ok(Entry {
                complex: p.display().to_string(),
                reports: f(&c)?,
            })
        })
        .collect()
}

fn verify_one(c: &Complex, name: &str, field: u32) -> CliResult<Report> {
    Ok(match name {
        "codim2" => codim2_identity_check(c)?,
        "akformula" => a_k_formula_check(c)?,
        "eq1" => eq1_check(c)?,
        "vertexsum" => vertex_link_sum_check(c)?,
        "linkineq" => link_inequality_check(c)?,
        "gamma" => gamma_inequality_check(c)?,
        "ds" => dehn_sommerville_check(&f_vector(c)),
        "ns" => three_manifold_bound_check(c, field)?,
        other => return Err(InputError(format!("unknown check {other:?}"))),
    })
}

fn bounds_reports(c: &Complex, m: usize, b: Option<&Quantity>, field: u32) -> CliResult<Vec<Report>> {
    let mut out = vec![ubt_check(c, m)?];
    if (2..=3).contains(&m) {
        out.push(link_inequality_check(c)?);
        out.push(m_sigma_check(c)?);
        if m == 2 {
            out.push(three_manifold_bound_check(c, field)?);
        }
    }
    if let Some(b) = b {
        out.push(near_extremal_check(c, &b.0)?);
    }
    Ok(out)
}

fn extremal_reports(c: &Complex) -> CliResult<Vec<Report>> {
    let decomposition = join_detect(c)?;
    let d = c.dim() + 1;
    let n = c.num_vertices();
    if d < 2 || d % 2 != 0 {
        return Err(InputError(format!("dimension {} is not of the form 2m-1", c.dim())));
    }
    let m = (d / 2) as usize;
    let mut witnesses = vec![Witness::flag(
        format!("join of {m} cycles"),
        None,
        decomposition.is_join_of_cycles(m),
    )];
    let mut notes = Vec::new();
    match gen::j_m_n(m, n) {
        Ok(reference) => {
            let iso = is_isomorphic(&one_skeleton(c), &one_skeleton(&reference));
            witnesses.push(Witness::flag(format!("isomorphic to J_{m}({n})"), None, iso));
            witnesses.push(Witness::compare(
                "top face count",
                None,
                c.facets().len() as i64,
                Relation::Le,
                reference.facets().len() as i64,
            ));
        }
        Err(e) => {
            witnesses.push(Witness::flag(format!("isomorphic to J_{m}({n})"), None, false));
            notes.push(format!("no reference complex: {e}"));
        }
    }
    let mut r = Report::from_witnesses("extremal", witnesses);
    r.notes.extend(notes);
    Ok(vec![decomposition.report, r])
}

fn emit(command: &str, results: Vec<Entry>, output: &OutputArgs) -> CliResult<i32> {
    let ok = results.iter().all(|e| e.reports.iter().all(Report::passed));
    let text = match output.format {
        Format::Json => {
            let header = (!output.no_header).then(|| Header {
                tool: "flagcomb",
                version: env!("CARGO_PKG_VERSION"),
                generated_unix: SystemTime::now()
                    .duration_since(UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0),
            });
            let doc = Document {
                header,
                command: command.to_string(),
                status: Status::from_bool(ok),
                results,
            };
            let mut s = serde_json::to_string_pretty(&doc).map_err(|e| InputError(e.to_string()))?;
            s.push('\n');
            s
        }
        Format::Csv => csv_summary(&results)?,
    };
    match &output.out {
        Some(path) => fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
        }
    }
    Ok(if ok { EXIT_PASS } else { EXIT_FAIL })
}

fn csv_summary(results: &[Entry]) -> CliResult<String> {
    let show = |q: &Option<Quantity>| q.as_ref().map(Quantity::to_string).unwrap_or_default();
    let mut w = csv::Writer::from_writer(Vec::new());
    for e in results {
        for r in &e.reports {
            w.serialize(CsvRow {
                complex: &e.complex,
                check: &r.check,
                status: r.status,
                lhs: show(&r.lhs),
                rhs: show(&r.rhs),
                equality: r.equality.map(|b| b.to_string()).unwrap_or_default(),
                witnesses: r.witnesses.len(),
                failures: r.failures().count(),
            })
            .map_err(|e| InputError(e.to_string()))?;
        }
    }
    let bytes = w.into_inner().map_err(|e| InputError(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| InputError(e.to_string()))
}
