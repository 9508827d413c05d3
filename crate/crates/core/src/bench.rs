//! Experiment descriptions, table row sets and CSV output shared with the
//! command-line tool.

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::CutVariant;
use crate::multigrid::{build_hierarchy, mgm_solve, SmootherConfig, SolveReport};
use crate::problems::{
    biharmonic_problem, iga_laplacian_problem, iga_symbol, intervals_for_dim, ProblemInstance,
};
use crate::symbol::{RationalMask, SubdivisionSymbol};

pub const CSV_HEADER: &str = "problem,symbol,n,g,iterations,conv_rate,converged,wall_time_s";
pub const PLOT_HEADER: &str = "curve,x,value";
/// Samples per curve on `[0, π]`.
pub const PLOT_SAMPLES: usize = 512;
/// Environment variable capping the worker pool.
pub const THREADS_ENV: &str = "SUBDIVMG_THREADS";

#[derive(Clone, Debug, PartialEq)]
pub enum SymbolSpec {
    Binary(u32, u32),
    Ternary(u32, u32),
    Mask { name: String, mask: RationalMask },
}

impl SymbolSpec {
    pub fn build(&self) -> Result<SubdivisionSymbol<f64>> {
        match self {
            Self::Binary(j, l) => SubdivisionSymbol::binary_pseudo_spline(*j, *l),
            Self::Ternary(j, l) => SubdivisionSymbol::ternary_pseudo_spline(*j, *l),
            Self::Mask { mask, .. } => Ok(mask.to_symbol()),
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Self::Binary(..) => 2,
            Self::Ternary(..) => 3,
            Self::Mask { mask, .. } => mask.arity(),
        }
    }

    pub fn rational(&self) -> Result<RationalMask> {
        match self {
            Self::Binary(j, l) => RationalMask::binary_pseudo_spline(*j, *l),
            Self::Ternary(j, l) => RationalMask::ternary_pseudo_spline(*j, *l),
            Self::Mask { mask, .. } => Ok(mask.clone()),
        }
    }
}

impl fmt::Display for SymbolSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Binary(j, l) => write!(f, "binary-{j}-{l}"),
            Self::Ternary(j, l) => write!(f, "ternary-{j}-{l}"),
            Self::Mask { name, .. } => f.write_str(name),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProblemId {
    Biharmonic,
    /// Spline collocation of the Laplacian with the given spline degree.
    IgaLaplacian {
        degree: usize,
    },
}

impl ProblemId {
    /// Accepts `biharmonic` and `iga-laplacian` (which needs a degree).
    pub fn parse(id: &str, degree: Option<usize>) -> Result<Self> {
        match id {
            "biharmonic" => Ok(Self::Biharmonic),
            "iga-laplacian" | "iga" => Ok(Self::IgaLaplacian {
                degree: degree
                    .ok_or_else(|| Error::Parse("iga-laplacian needs a spline degree".into()))?,
            }),
            other => Err(Error::Parse(format!("unknown problem `{other}`"))),
        }
    }

    pub fn instance(&self, n: usize) -> Result<ProblemInstance<f64>> {
        match *self {
            Self::Biharmonic => biharmonic_problem(n),
            Self::IgaLaplacian { degree } => {
                iga_laplacian_problem(intervals_for_dim(n, degree)?, degree)
            }
        }
    }
}

impl fmt::Display for ProblemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Biharmonic => f.write_str("biharmonic"),
            Self::IgaLaplacian { degree } => write!(f, "iga-laplacian-mu{degree}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CycleParams {
    /// Recursion count `s`; 1 is the V-cycle.
    pub cycles: usize,
    pub pre: SmootherConfig,
    pub post: SmootherConfig,
    pub tol: f64,
    pub max_iter: usize,
    /// Coarsest dimension; `g² - 1` when unset.
    pub n_min: Option<usize>,
}

impl Default for CycleParams {
    fn default() -> Self {
        Self {
            cycles: 1,
            pre: SmootherConfig::gauss_seidel(1),
            post: SmootherConfig::gauss_seidel(1),
            tol: 1e-7,
            max_iter: 2000,
            n_min: None,
        }
    }
}

/// One solve: a problem, a grid transfer symbol and a dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchCase {
    pub problem: ProblemId,
    pub symbol: SymbolSpec,
    pub n: usize,
    pub params: CycleParams,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchSpec {
    pub problem: ProblemId,
    pub symbol: SymbolSpec,
    pub sizes: Vec<usize>,
    pub params: CycleParams,
}

impl BenchSpec {
    pub fn validate(&self) -> Result<()> {
        let p = &self.params;
        if !(p.tol > 0.0 && p.tol < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "tolerance must lie in (0, 1), got {}",
                p.tol
            )));
        }
        if p.cycles == 0 {
            return Err(Error::InvalidParameter(
                "cycle count must be at least 1".into(),
            ));
        }
        let g = self.symbol.arity();
        for &n in &self.sizes {
            CutVariant::Dirichlet.coarse_dim(n, g)?;
        }
        Ok(())
    }

    pub fn cases(&self) -> Vec<BenchCase> {
        self.sizes
            .iter()
            .map(|&n| BenchCase {
                problem: self.problem,
                symbol: self.symbol.clone(),
                n,
                params: self.params,
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct BenchRow {
    pub problem: String,
    pub symbol: String,
    pub n: usize,
    pub g: usize,
    pub report: SolveReport<f64>,
    /// Assembly, hierarchy construction and solve.
    pub wall_time: Duration,
}

impl BenchRow {
    pub fn csv_row(&self) -> String {
        let mut r = self.report.clone();
        r.wall_time = self.wall_time;
        r.csv_row(&self.problem, &self.symbol, self.n, self.g)
    }
}

pub fn run_case(case: &BenchCase) -> Result<BenchRow> {
    let start = Instant::now();
    let p = case.symbol.build()?;
    let g = p.arity();
    let problem = case.problem.instance(case.n)?;
    let n_min = case.params.n_min.unwrap_or(g * g - 1);
    let h = build_hierarchy(
        problem.a,
        &p,
        CutVariant::Dirichlet,
        n_min,
        case.params.cycles,
    )?;
    let mut report = mgm_solve(
        &h,
        &problem.b,
        &case.params.pre,
        &case.params.post,
        case.params.tol,
        case.params.max_iter,
    )?;
    report.solution = Vec::new();
    log::info!(
        "{} {} n={} iterations={} converged={}",
        case.problem,
        case.symbol,
        case.n,
        report.iterations,
        report.converged
    );
    Ok(BenchRow {
        problem: case.problem.to_string(),
        symbol: case.symbol.to_string(),
        n: case.n,
        g,
        report,
        wall_time: start.elapsed(),
    })
}

/// Worker count from [`THREADS_ENV`], else the available parallelism.
pub fn worker_threads() -> usize {
    let default = std::thread::available_parallelism().map_or(1, |n| n.get());
    match std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
    {
        Some(t) if t > 0 => t.min(default.max(t)),
        _ => default,
    }
}

/// Runs the cases on a worker pool; results come back in input order.
pub fn run_cases(cases: &[BenchCase]) -> Vec<Result<BenchRow>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(worker_threads())
        .build();
    match pool {
        Ok(pool) => pool.install(|| cases.par_iter().map(run_case).collect()),
        Err(e) => {
            log::warn!("worker pool unavailable ({e}); running sequentially");
            cases.iter().map(run_case).collect()
        }
    }
}

pub fn binary_table_symbols() -> Vec<SymbolSpec> {
    [(1, 0), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2)]
        .map(|(j, l)| SymbolSpec::Binary(j, l))
        .to_vec()
}

pub fn ternary_table_symbols() -> Vec<SymbolSpec> {
    [(1, 1), (2, 1), (3, 1), (3, 3), (5, 3), (5, 5)]
        .map(|(j, l)| SymbolSpec::Ternary(j, l))
        .to_vec()
}

/// Spline degrees of the collocation tables.
pub const IGA_DEGREES: [usize; 3] = [3, 10, 16];

/// Row set of table 1–4. `small` shifts every size one power of `g` down.
pub fn table_cases(table: u8, small: bool) -> Result<Vec<BenchCase>> {
    let shift = u32::from(small);
    let params = CycleParams::default();
    let sizes = |g: usize, exps: &[u32]| -> Vec<usize> {
        exps.iter().map(|&k| g.pow(k - shift) - 1).collect()
    };
    let mut cases = Vec::new();
    match table {
        1 | 2 => {
            let (symbols, ns) = if table == 1 {
                (binary_table_symbols(), sizes(2, &[10, 11, 12]))
            } else {
                (ternary_table_symbols(), sizes(3, &[6, 7, 8]))
            };
            for symbol in symbols {
                for &n in &ns {
                    cases.push(BenchCase {
                        problem: ProblemId::Biharmonic,
                        symbol: symbol.clone(),
                        n,
                        params,
                    });
                }
            }
        }
        3 | 4 => {
            let (symbols, n) = if table == 3 {
                (binary_table_symbols(), sizes(2, &[9])[0])
            } else {
                (ternary_table_symbols(), sizes(3, &[6])[0])
            };
            for symbol in symbols {
                for degree in IGA_DEGREES {
                    cases.push(BenchCase {
                        problem: ProblemId::IgaLaplacian { degree },
                        symbol: symbol.clone(),
                        n,
                        params,
                    });
                }
            }
        }
        other => {
            return Err(Error::InvalidParameter(format!(
                "no table {other}; expected 1 to 4"
            )))
        }
    }
    Ok(cases)
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

fn sample_grid() -> impl Iterator<Item = f64> {
    (0..PLOT_SAMPLES).map(|k| std::f64::consts::PI * k as f64 / (PLOT_SAMPLES - 1) as f64)
}

/// `curve,x,value` samples of `p(e^{-ix})` on `[0, π]`.
pub fn plot_symbols(specs: &[SymbolSpec]) -> Result<String> {
    let mut out = String::from(PLOT_HEADER);
    out.push('\n');
    for spec in specs {
        let p = spec.build()?;
        for x in sample_grid() {
            out.push_str(&format!("{spec},{x:.9},{:.12e}\n", p.eval(x)));
        }
    }
    Ok(out)
}

/// `curve,x,value` samples of the collocation symbols on `[0, π]`,
/// normalised by their maximum.
pub fn plot_iga_symbols(degrees: &[usize]) -> Result<String> {
    let mut out = String::from(PLOT_HEADER);
    out.push('\n');
    for &mu in degrees {
        let values = sample_grid()
            .map(|x| iga_symbol(mu, x).map(|v| (x, v)))
            .collect::<Result<Vec<_>>>()?;
        let max = values.iter().fold(0.0f64, |m, &(_, v)| m.max(v.abs()));
        for (x, v) in values {
            out.push_str(&format!("iga-mu{mu},{x:.9},{:.12e}\n", v / max));
        }
    }
    Ok(out)
}
