use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use fbh_cli::config::{ObservableSet, load_config};
use fbh_cli::record::SweepRecord;
use fbh_cli::sweep::{PointSpec, compute_record, run_sweep};
use fbh_cli::{CliError, init_thread_pool, oracle, plotdata, record};
use fbh_core::eigensolver::SolverOptions;
use fbh_core::entanglement::GgmScope;
use fbh_core::fock::{FockBasis, default_soft_cap};
use fbh_core::hamiltonian::Boundary;

#[derive(Parser)]
#[command(
    name = "fbh",
    version,
    about = "Exact-diagonalization driver for a boson chain with competing hoppings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a (t1/t2, U') parameter grid from a config file
    Sweep(SweepArgs),
    /// Solve a single parameter point and print its record as JSON
    Point(Box<PointArgs>),
    /// Print the exactly solvable dimer-point self check as JSON
    Oracle(OracleArgs),
    /// Reshape sweep records into a ratio x U' matrix for one quantity
    Plotdata(PlotdataArgs),
}

#[derive(Args)]
struct SweepArgs {
    /// TOML config file (grammar documented in the README)
    #[arg(long)]
    config: PathBuf,
}

#[derive(Args)]
struct PointArgs {
    /// Number of sites
    #[arg(long = "M")]
    m: usize,
    /// Number of particles; default M/2 (requires even M)
    #[arg(long = "N")]
    n: Option<usize>,
    /// Per-site occupation cap; default 1 with --hardcore, else min(N, 5)
    #[arg(long)]
    nmax: Option<u8>,
    /// Nearest-neighbor hopping t1
    #[arg(long, allow_hyphen_values = true)]
    t1: f64,
    /// Second-neighbor hopping t2
    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    t2: f64,
    /// Onsite interaction U (the bare coupling, not U')
    #[arg(long = "U", default_value_t = 0.0)]
    u: f64,
    /// "open" or "periodic"
    #[arg(long, default_value = "open")]
    boundary: String,
    /// Restrict occupation to 0 or 1 per site
    #[arg(long)]
    hardcore: bool,
    /// Start-vector seed; fixed seed gives bitwise-identical output
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Residual-norm convergence threshold
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Budget of operator applications
    #[arg(long, default_value_t = 5000)]
    max_iter: usize,
    /// Momentum grid size (at least M)
    #[arg(long = "Nq", default_value_t = 1000)]
    n_q: usize,
    /// "all" or "contiguous_parity"
    #[arg(long, default_value = "all")]
    ggm_scope: String,
    /// Site limit for ggm_scope = "all"
    #[arg(long, default_value_t = 16)]
    ggm_ceiling: usize,
}

#[derive(Args)]
struct OracleArgs {
    /// Even chain length of at least 8
    #[arg(long = "M", default_value_t = 12)]
    m: usize,
    /// Site limit for the full-enumeration multipartite check
    #[arg(long, default_value_t = 16)]
    ggm_ceiling: usize,
}

#[derive(Args)]
struct PlotdataArgs {
    /// Sweep output to read (.json parses as JSON, anything else as CSV)
    #[arg(long)]
    input: PathBuf,
    /// Output column to extract (for example ggm, eta, E_half)
    #[arg(long)]
    quantity: String,
    /// Destination file; stdout when omitted
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    if let Err(e) = init_thread_pool() {
        eprintln!("error: {e}");
        return 1;
    }
    let result = match &cli.command {
        Command::Sweep(args) => cmd_sweep(args),
        Command::Point(args) => cmd_point(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::Plotdata(args) => cmd_plotdata(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn describe(rec: &SweepRecord) -> String {
    let head = format!("t1={:+.6}, U={:.6}", rec.t1, rec.u);
    let mut tail = match (rec.e0, &rec.error) {
        (Some(e0), None) => format!("E0={e0:.12}"),
        (Some(e0), Some(err)) => format!("E0={e0:.12}; ERROR: {err}"),
        (None, Some(err)) => format!("ERROR: {err}"),
        (None, None) => "empty".to_string(),
    };
    if let Some(note) = &rec.ggm_note {
        tail.push_str("; ");
        tail.push_str(note);
    }
    format!("{head}: {tail}")
}

fn cmd_sweep(args: &SweepArgs) -> Result<i32, CliError> {
    let config = load_config(&args.config)?;
    let outcome = run_sweep(&config)?;
    for w in &outcome.warnings {
        eprintln!("warning: skipped row in existing output ({w})");
    }
    for rec in &outcome.records {
        eprintln!("{}", describe(rec));
    }
    eprintln!(
        "wrote {} records to {} ({} reused, {} errored)",
        outcome.records.len(),
        config.output_path.display(),
        outcome.reused,
        outcome.errored
    );
    Ok(outcome.exit_code())
}

fn parse_boundary(text: &str) -> Result<Boundary, CliError> {
    match text {
        "open" => Ok(Boundary::Open),
        "periodic" => Ok(Boundary::Periodic),
        other => Err(CliError::Config(format!(
            "--boundary must be \"open\" or \"periodic\", got {other:?}"
        ))),
    }
}

fn parse_scope(text: &str) -> Result<GgmScope, CliError> {
    match text {
        "all" => Ok(GgmScope::All),
        "contiguous_parity" => Ok(GgmScope::ContiguousParity),
        other => Err(CliError::Config(format!(
            "--ggm-scope must be \"all\" or \"contiguous_parity\", got {other:?}"
        ))),
    }
}

fn cmd_point(args: &PointArgs) -> Result<i32, CliError> {
    let m = args.m;
    if m < 2 {
        return Err(CliError::Config(format!("--M must be at least 2, got {m}")));
    }
    let n = match args.n {
        Some(n) => n,
        None if m % 2 == 0 => m / 2,
        None => {
            return Err(CliError::Config(format!(
                "half filling requires even M (got M = {m}); pass --N explicitly"
            )));
        }
    };
    let n_max = match (args.hardcore, args.nmax) {
        (true, Some(c)) if c != 1 => {
            return Err(CliError::Config(format!(
                "--hardcore requires --nmax 1, got {c}"
            )));
        }
        (true, _) => 1,
        (false, Some(0)) => {
            return Err(CliError::Config("--nmax must be at least 1".into()));
        }
        (false, Some(c)) => c,
        (false, None) => default_soft_cap(n),
    };
    let boundary = parse_boundary(&args.boundary)?;
    if boundary == Boundary::Periodic && m < 5 {
        return Err(CliError::Config(format!(
            "periodic boundaries need at least 5 sites, got M = {m}"
        )));
    }
    for (name, value) in [("--t1", args.t1), ("--t2", args.t2)] {
        if !value.is_finite() {
            return Err(CliError::Config(format!("{name} must be finite, got {value}")));
        }
    }
    if !args.u.is_finite() || args.u < 0.0 {
        return Err(CliError::Config(format!(
            "--U must be finite and nonnegative, got {}",
            args.u
        )));
    }
    if !(args.tol.is_finite() && args.tol > 0.0) {
        return Err(CliError::Config(format!(
            "--tol must be a positive finite number, got {}",
            args.tol
        )));
    }
    if args.max_iter == 0 {
        return Err(CliError::Config("--max-iter must be at least 1".into()));
    }
    if args.n_q < m {
        return Err(CliError::Config(format!(
            "--Nq = {} is too coarse for M = {m} sites; need Nq >= M",
            args.n_q
        )));
    }
    let ggm_scope = parse_scope(&args.ggm_scope)?;
    if args.ggm_ceiling == 0 {
        return Err(CliError::Config("--ggm-ceiling must be at least 1".into()));
    }

    let spec = PointSpec {
        m,
        n,
        n_max,
        boundary,
        hardcore: args.hardcore,
        t1: args.t1,
        t2: args.t2,
        u: args.u,
        // The record keeps the normalized interaction alongside the bare
        // one; with t2 = 0 the normalization is vacuous and U is stored
        // unscaled.
        uprime: if args.t2 != 0.0 { args.u / args.t2.abs() } else { args.u },
        solver: SolverOptions { tol: args.tol, max_iter: args.max_iter, seed: args.seed },
        n_q: args.n_q,
        observables: ObservableSet::all(),
        ggm_scope,
        ggm_ceiling: args.ggm_ceiling,
    };
    let basis = Arc::new(
        FockBasis::new(spec.m, spec.n, spec.n_max)
            .map_err(|e| CliError::Config(format!("model rejected: {e}")))?,
    );
    let rec = compute_record(&basis, &spec);
    let json = serde_json::to_string_pretty(&rec.to_json()).expect("serializable record");
    println!("{json}");
    Ok(if !rec.is_complete() {
        2
    } else if rec.error.is_some() {
        3
    } else {
        0
    })
}

fn cmd_oracle(args: &OracleArgs) -> Result<i32, CliError> {
    let report = oracle::oracle_report(args.m, args.ggm_ceiling)?;
    let json = serde_json::to_string_pretty(&report).expect("serializable report");
    println!("{json}");
    Ok(0)
}

fn cmd_plotdata(args: &PlotdataArgs) -> Result<i32, CliError> {
    let text = std::fs::read_to_string(&args.input).map_err(|e| {
        CliError::Io(format!("cannot read {}: {e}", args.input.display()))
    })?;
    let records = if args.input.extension().is_some_and(|ext| ext == "json") {
        record::parse_json(&text)?
    } else {
        record::parse_csv(&text)?
    };
    let matrix = plotdata::emit_plot_data(&records, &args.quantity)?;
    match &args.output {
        Some(path) => std::fs::write(path, matrix).map_err(|e| {
            CliError::Io(format!("cannot write {}: {e}", path.display()))
        })?,
        None => print!("{matrix}"),
    }
    Ok(0)
}
