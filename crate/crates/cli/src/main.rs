use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use subdiv_mg::analysis::{
    certify_tgm, certify_vcycle, cohen_check, generation_degree, order_of_zero,
};
use subdiv_mg::bench::{
    self, BenchRow, BenchSpec, CycleParams, ProblemId, SymbolSpec, IGA_DEGREES,
};
use subdiv_mg::problems::iga_stencil_symbol;
use subdiv_mg::{RationalMask, SmootherConfig, Trig};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failure(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            Self::Failure(_) => 1,
            Self::Usage(_) | Self::Io { .. } => 2,
        }
    }
}

impl From<subdiv_mg::Error> for CliError {
    fn from(e: subdiv_mg::Error) -> Self {
        use subdiv_mg::Error as E;
        match e {
            E::InvalidOrder { .. }
            | E::InvalidSymbol(_)
            | E::IncompatibleDimension { .. }
            | E::BadDimension(_)
            | E::InvalidDegree(_)
            | E::InvalidParameter(_)
            | E::Parse(_) => Self::Usage(e.to_string()),
            other => Self::Failure(other.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(
    name = "subdiv-mg",
    version,
    about = "Multigrid with subdivision grid transfers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certify a grid transfer symbol, optionally against a problem symbol
    Analyze(AnalyzeArgs),
    /// Solve a test problem with the V-cycle (or W-cycle) and print CSV rows
    Solve(SolveArgs),
    /// Run the row set of one of the four experiment tables
    Bench(BenchArgs),
    /// Sample symbols on [0, π] as CSV
    Plot(PlotArgs),
    /// Print a pseudo-spline mask in the text format read by --mask
    Mask(MaskArgs),
}

#[derive(Args, Debug, Clone)]
struct SymbolArgs {
    /// Binary pseudo-spline p_{J,L}
    #[arg(long, num_args = 2, value_names = ["J", "L"])]
    binary: Option<Vec<u32>>,
    /// Ternary pseudo-spline with odd L
    #[arg(long, num_args = 2, value_names = ["J", "L"])]
    ternary: Option<Vec<u32>>,
    /// Mask file: `arity g`, coefficients `num/den`, centre index
    #[arg(long, value_name = "FILE")]
    mask: Option<PathBuf>,
}

impl SymbolArgs {
    fn spec(&self) -> CliResult<SymbolSpec> {
        match (&self.binary, &self.ternary, &self.mask) {
            (Some(b), None, None) => Ok(SymbolSpec::Binary(b[0], b[1])),
            (None, Some(t), None) => Ok(SymbolSpec::Ternary(t[0], t[1])),
            (None, None, Some(path)) => {
                let text = read(path)?;
                let mask = RationalMask::from_text(&text)?;
                let name = path
                    .file_stem()
                    .map_or_else(|| "mask".into(), |s| s.to_string_lossy().replace(',', "_"));
                Ok(SymbolSpec::Mask { name, mask })
            }
            (None, None, None) => Err(CliError::Usage(
                "one of --binary, --ternary or --mask is required".into(),
            )),
            _ => Err(CliError::Usage(
                "--binary, --ternary and --mask are mutually exclusive".into(),
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ProblemArg {
    Biharmonic,
    #[value(name = "iga-laplacian", alias = "iga")]
    IgaLaplacian,
}

fn problem_id(p: ProblemArg, mu: Option<usize>) -> CliResult<ProblemId> {
    let name = match p {
        ProblemArg::Biharmonic => "biharmonic",
        ProblemArg::IgaLaplacian => "iga-laplacian",
    };
    Ok(ProblemId::parse(name, mu)?)
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Kv,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[command(flatten)]
    symbol: SymbolArgs,
    /// Problem whose symbol is certified against
    #[arg(long, value_enum)]
    problem: Option<ProblemArg>,
    /// Spline degree for iga-laplacian
    #[arg(long)]
    mu: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct CycleArgs {
    /// Relative residual tolerance
    #[arg(long, default_value_t = 1e-7)]
    tol: f64,
    /// Recursion count s (1 = V-cycle, 2 = W-cycle)
    #[arg(long, default_value_t = 1)]
    cycles: usize,
    /// Gauss-Seidel pre-smoothing sweeps
    #[arg(long, default_value_t = 1)]
    pre: usize,
    /// Gauss-Seidel post-smoothing sweeps
    #[arg(long, default_value_t = 1)]
    post: usize,
    #[arg(long, default_value_t = 2000)]
    max_iter: usize,
    /// Coarsest dimension (default g² - 1)
    #[arg(long)]
    n_min: Option<usize>,
}

impl CycleArgs {
    fn params(&self) -> CycleParams {
        CycleParams {
            cycles: self.cycles,
            pre: SmootherConfig::gauss_seidel(self.pre),
            post: SmootherConfig::gauss_seidel(self.post),
            tol: self.tol,
            max_iter: self.max_iter,
            n_min: self.n_min,
        }
    }
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[command(flatten)]
    symbol: SymbolArgs,
    #[arg(long, value_enum)]
    problem: ProblemArg,
    /// Dimension(s); repeat the flag for several sizes
    #[arg(long = "n", required = true, action = ArgAction::Append)]
    sizes: Vec<usize>,
    /// Spline degree for iga-laplacian
    #[arg(long)]
    mu: Option<usize>,
    #[command(flatten)]
    cycle: CycleArgs,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Table number, 1 to 4
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    table: u8,
    /// Use sizes one power of g smaller
    #[arg(long)]
    small: bool,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PlotArgs {
    /// Binary pseudo-spline; may be repeated
    #[arg(long, num_args = 2, value_names = ["J", "L"], action = ArgAction::Append)]
    binary: Vec<u32>,
    /// Ternary pseudo-spline; may be repeated
    #[arg(long, num_args = 2, value_names = ["J", "L"], action = ArgAction::Append)]
    ternary: Vec<u32>,
    /// Collocation symbol degree(s), normalised by the maximum
    #[arg(long, action = ArgAction::Append)]
    iga: Vec<usize>,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct MaskArgs {
    #[command(flatten)]
    symbol: SymbolArgs,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn problem_symbol(id: ProblemId) -> CliResult<Trig> {
    Ok(match id {
        ProblemId::Biharmonic => Trig::biharmonic(),
        ProblemId::IgaLaplacian { degree } => iga_stencil_symbol(degree)?,
    })
}

fn analyze(args: &AnalyzeArgs) -> CliResult<()> {
    let spec = args.symbol.spec()?;
    let p = spec.build()?;
    let mut text = String::new();
    let mut ok = true;
    let Some(problem) = args.problem else {
        let cohen = cohen_check(&p);
        ok &= cohen.ok;
        text.push_str(&match args.format {
            Format::Text => format!(
                "symbol: {spec}\n  arity g: {}\n  generation degree: {}\n  cohen: min |p| = {:.6e} at x = {:.6} ({})\n",
                p.arity(),
                generation_degree(&p),
                cohen.min_modulus,
                cohen.argmin,
                if cohen.ok { "ok" } else { "fail" }
            ),
            Format::Kv => format!(
                "symbol={spec}\narity={}\ngeneration_degree={}\ncohen_min_modulus={}\ncohen_ok={}\n",
                p.arity(),
                generation_degree(&p),
                cohen.min_modulus,
                cohen.ok
            ),
        });
        emit(args.out.as_deref(), &text)?;
        return if ok {
            Ok(())
        } else {
            Err(CliError::Failure("Cohen's condition fails".into()))
        };
    };
    let id = problem_id(problem, args.mu)?;
    let f = problem_symbol(id)?;
    let zero = order_of_zero(&f, 0.0)?;
    let tgm = certify_tgm(&f, &p, 0.0)?;
    let vcycle = certify_vcycle(&f, &p)?;
    let failed: Vec<&str> = [("tgm", tgm.passed()), ("vcycle", vcycle.passed())]
        .iter()
        .filter(|(_, passed)| !passed)
        .map(|(name, _)| *name)
        .collect();
    ok &= failed.is_empty();
    match args.format {
        Format::Text => {
            text.push_str(&format!(
                "symbol: {spec}\nproblem: {id} (zero of order {} at 0)\n",
                zero.order
            ));
            text.push_str(&tgm.to_text());
            text.push_str(&vcycle.to_text());
        }
        Format::Kv => {
            text.push_str(&format!("symbol={spec}\nproblem={id}\n"));
            for (prefix, r) in [("tgm", &tgm), ("vcycle", &vcycle)] {
                for line in r.to_key_values().lines() {
                    text.push_str(&format!("{prefix}.{line}\n"));
                }
            }
        }
    }
    emit(args.out.as_deref(), &text)?;
    if ok {
        Ok(())
    } else {
        Err(CliError::Failure(format!(
            "certification failed: {}",
            failed.join(", ")
        )))
    }
}

fn finish_rows(results: Vec<subdiv_mg::Result<BenchRow>>, out: Option<&Path>) -> CliResult<()> {
    let mut rows = Vec::new();
    let mut errors = Vec::new();
    for r in results {
        match r {
            Ok(row) => rows.push(row),
            Err(e) => errors.push(e),
        }
    }
    emit(out, &bench::to_csv(&rows))?;
    if let Some(e) = errors.into_iter().next() {
        return Err(e.into());
    }
    let failed: Vec<String> = rows
        .iter()
        .filter(|r| !r.report.converged)
        .map(|r| format!("{} {} n={}", r.problem, r.symbol, r.n))
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failure(format!(
            "no convergence for {}",
            failed.join("; ")
        )))
    }
}

fn solve(args: &SolveArgs) -> CliResult<()> {
    let spec = BenchSpec {
        problem: problem_id(args.problem, args.mu)?,
        symbol: args.symbol.spec()?,
        sizes: args.sizes.clone(),
        params: args.cycle.params(),
    };
    spec.validate()?;
    finish_rows(bench::run_cases(&spec.cases()), args.out.as_deref())
}

fn run_bench(args: &BenchArgs) -> CliResult<()> {
    let cases = bench::table_cases(args.table, args.small)?;
    finish_rows(bench::run_cases(&cases), args.out.as_deref())
}

fn plot(args: &PlotArgs) -> CliResult<()> {
    let specs: Vec<SymbolSpec> = args
        .binary
        .chunks(2)
        .map(|c| SymbolSpec::Binary(c[0], c[1]))
        .chain(
            args.ternary
                .chunks(2)
                .map(|c| SymbolSpec::Ternary(c[0], c[1])),
        )
        .collect();
    let text = if !args.iga.is_empty() {
        if !specs.is_empty() {
            return Err(CliError::Usage(
                "--iga cannot be combined with --binary/--ternary".into(),
            ));
        }
        bench::plot_iga_symbols(&args.iga)?
    } else if specs.is_empty() {
        bench::plot_iga_symbols(&IGA_DEGREES)?
    } else {
        bench::plot_symbols(&specs)?
    };
    emit(args.out.as_deref(), &text)
}

fn mask(args: &MaskArgs) -> CliResult<()> {
    emit(
        args.out.as_deref(),
        &args.symbol.spec()?.rational()?.to_text(),
    )
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze(a) => analyze(a),
        Command::Solve(a) => solve(a),
        Command::Bench(a) => run_bench(a),
        Command::Plot(a) => plot(a),
        Command::Mask(a) => mask(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("subdiv-mg: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
