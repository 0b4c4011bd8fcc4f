//! `cartan-spectra`: eigenvalue tables and verification suites for radial
//! Toeplitz operators on bounded symmetric domains.
//!
//! Exit codes: 0 success, 2 invalid input (bad domain, weight, symbol or
//! flags), 3 numerical failure or a failed verification case, 1 I/O errors.

pub mod numfmt;
pub mod suites;
pub mod table;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use cartan_core::spectrum::rectangular_denominator_check;
use cartan_core::{builtin_symbol, eigenvalue_table, parse_symbol, Builtin, CartanDomain, RadialSymbol};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::numfmt::g17;
use crate::suites::Suite;
use crate::table::Row;

pub const DEFAULT_NODES: usize = 48;
/// Default for symbols without a polynomial degree (indicators, `sqrt`, ...).
pub const DEFAULT_NODES_NONPOLY: usize = 96;

#[derive(Debug, Parser)]
#[command(
    name = "cartan-spectra",
    version,
    about = "Eigenvalues of radial Toeplitz operators on bounded symmetric domains"
)]
pub struct Cli {
    /// Worker threads for batch evaluation (default: all cores).
    #[arg(long, global = true, env = "CARTAN_SPECTRA_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print rank, multiplicities, dimensions, genus and errata of a domain.
    Info {
        /// typeI:m,n | typeII:m | typeIII:n | typeIV:n | typeV | typeVI | custom:r,a,b
        spec: String,
    },
    /// Tabulate c_α(T_ψ) for all signatures with α₁ ≤ --alpha-max.
    Eigs(EigsArgs),
    /// Run a fixed verification suite.
    Verify(VerifyArgs),
    /// Compare rectangular density integrals with the Selberg closed form.
    Selberg(SelbergArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("psi").required(true).args(["symbol", "builtin"])))]
pub struct EigsArgs {
    #[arg(long)]
    pub domain: String,
    #[arg(long)]
    pub lambda: f64,
    /// Expression in x1..x_r, where x_j is the squared radial coordinate t_j².
    #[arg(long, allow_hyphen_values = true)]
    pub symbol: Option<String>,
    /// const:c | power_sum:m | elementary:k | det_power:s | ball_indicator:c
    #[arg(long)]
    pub builtin: Option<String>,
    #[arg(long, default_value_t = 5)]
    pub alpha_max: u32,
    /// Nodes per axis (default 48, or 96 for non-polynomial symbols).
    #[arg(long)]
    pub nodes: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// Seed for the Monte Carlo suite.
    #[arg(long)]
    pub seed: Option<u64>,
    /// `csv` prints one PASS/FAIL line per case, `json` the full reports.
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SelbergArgs {
    #[arg(long)]
    pub domain: String,
    #[arg(long)]
    pub lambda: f64,
    /// Rectangular signatures (m, …, m) for m = 0..=alpha-max.
    #[arg(long, default_value_t = 5)]
    pub alpha_max: u32,
    #[arg(long, default_value_t = DEFAULT_NODES)]
    pub nodes: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug)]
pub enum Failure {
    Core(cartan_core::Error),
    Usage(String),
    Io(io::Error),
    ChecksFailed(usize),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Core(e) if e.is_numeric() => 3,
            Failure::Core(_) | Failure::Usage(_) => 2,
            Failure::ChecksFailed(_) => 3,
            Failure::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Usage(m) => f.write_str(m),
            Failure::Io(e) => write!(f, "I/O error: {e}"),
            Failure::ChecksFailed(n) => write!(f, "{n} verification case(s) failed"),
        }
    }
}

impl From<cartan_core::Error> for Failure {
    fn from(e: cartan_core::Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: Cli) -> Result<(), Failure> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(Failure::Usage("--threads must be at least 1".into()));
        }
        pool = pool.num_threads(t);
    }
    let pool = pool.build().map_err(|e| Failure::Usage(format!("cannot start thread pool: {e}")))?;
    pool.install(|| match cli.command {
        Command::Info { spec } => cmd_info(&spec, &mut io::stdout().lock()),
        Command::Eigs(args) => cmd_eigs(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Selberg(args) => cmd_selberg(&args),
    })
}

fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

pub fn cmd_info<W: Write>(spec: &str, out: &mut W) -> Result<(), Failure> {
    let d = CartanDomain::parse(spec)?;
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    writeln!(out, "domain     {}", d.spec)?;
    writeln!(out, "family     {}", d.spec.family_label())?;
    writeln!(out, "r          {}", d.rank)?;
    writeln!(out, "a          {}", d.a)?;
    writeln!(out, "b          {}", d.b)?;
    writeln!(out, "n          {}", d.dim)?;
    writeln!(out, "n_tube     {}", d.tube_dim)?;
    writeln!(out, "p          {}", d.genus)?;
    writeln!(out, "tube_type  {}", yes_no(d.is_tube_type()))?;
    writeln!(out, "weights    λ > {}", d.weight_bound())?;
    if d.is_formal() {
        writeln!(out, "note       formal domain: no bounded symmetric domain has these (r, a, b)")?;
    }
    for e in d.errata() {
        writeln!(
            out,
            "erratum    {}: often printed as {}, catalog uses {} ({})",
            e.quantity, e.printed, e.catalog, e.reason
        )?;
    }
    Ok(())
}

pub fn resolve_symbol(args: &EigsArgs, rank: usize) -> Result<RadialSymbol, Failure> {
    Ok(match (&args.symbol, &args.builtin) {
        (Some(text), None) => parse_symbol(text, rank)?,
        (None, Some(b)) => builtin_symbol(b.parse::<Builtin>()?, rank)?,
        _ => return Err(Failure::Usage("give exactly one of --symbol and --builtin".into())),
    })
}

fn cmd_eigs(args: &EigsArgs) -> Result<(), Failure> {
    let d = CartanDomain::parse(&args.domain)?;
    d.check_weight(args.lambda)?;
    let psi = resolve_symbol(args, d.rank())?;
    let nodes = args.nodes.unwrap_or(if psi.degree().is_some() { DEFAULT_NODES } else { DEFAULT_NODES_NONPOLY });
    if nodes == 0 {
        return Err(Failure::Usage("--nodes must be at least 1".into()));
    }
    log::info!("{} λ={} ψ={} α₁≤{} N={}", d.spec, args.lambda, psi.name(), args.alpha_max, nodes);
    let records = eigenvalue_table(&d, args.lambda, &psi, args.alpha_max, nodes)?;
    let rows: Vec<Row> = records.iter().map(Row::from).collect();
    let mut out = sink(&args.output.out)?;
    match args.output.format {
        Format::Csv => table::write_csv(&mut out, &rows)?,
        Format::Json => table::write_json(&mut out, &rows)?,
    }
    out.flush()?;
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), Failure> {
    let results = suites::run(args.suite, args.seed)?;
    let mut out = sink(&args.output.out)?;
    match args.output.format {
        Format::Csv => {
            for r in &results {
                writeln!(out, "{}", r.line())?;
            }
        }
        Format::Json => table::write_json(&mut out, &results)?,
    }
    out.flush()?;
    let failed = results.iter().filter(|r| !r.pass).count();
    if failed > 0 {
        return Err(Failure::ChecksFailed(failed));
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct SelbergRow {
    family: String,
    lambda: f64,
    m: u32,
    nodes: usize,
    quadrature: f64,
    closed_form: f64,
    rel_error: f64,
}

fn cmd_selberg(args: &SelbergArgs) -> Result<(), Failure> {
    let d = CartanDomain::parse(&args.domain)?;
    if args.nodes == 0 {
        return Err(Failure::Usage("--nodes must be at least 1".into()));
    }
    let rows = (0..=args.alpha_max)
        .map(|m| {
            let c = rectangular_denominator_check(&d, args.lambda, m, args.nodes)?;
            Ok(SelbergRow {
                family: d.spec.to_string(),
                lambda: args.lambda,
                m,
                nodes: args.nodes,
                quadrature: c.quadrature,
                closed_form: c.closed_form,
                rel_error: c.rel_error,
            })
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    let mut out = sink(&args.output.out)?;
    match args.output.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(["family", "lambda", "m", "nodes", "quadrature", "closed_form", "rel_error"])?;
            for r in &rows {
                w.write_record([
                    r.family.clone(),
                    g17(r.lambda),
                    r.m.to_string(),
                    r.nodes.to_string(),
                    g17(r.quadrature),
                    g17(r.closed_form),
                    g17(r.rel_error),
                ])?;
            }
            w.flush()?;
        }
        Format::Json => table::write_json(&mut out, &rows)?,
    }
    out.flush()?;
    Ok(())
}
