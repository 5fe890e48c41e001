//! Sweep configuration: TOML grammar, defaults, and validation.
//!
//! A config file has five sections; only `[model]`, `[grid]`, and `[output]`
//! are required:
//!
//! ```toml
//! [model]
//! M = 12             # sites (required)
//! # N = 6            # particles; default M/2 (half filling, even M only)
//! # half_filling = true
//! # n_max = 1        # default 1 when hardcore, else min(N, 5)
//! # hardcore = false
//! # boundary = "open"    # or "periodic"
//! # t2 = -1.0        # fixed second-neighbor hopping
//!
//! [grid]
//! t1_over_t2 = [0.5, 1.0, 2.0]   # t1 = ratio * t2 at each point
//! Uprime = [0.0, 50.0]           # U = Uprime * |t2| at each point
//!
//! [solver]
//! # tol = 1e-10
//! # max_iter = 5000
//! # seed = 1
//!
//! [observables]
//! # quantities = ["momentum", "chiral", "dimer_xy", "dimer_zz",
//! #               "half_chain_entropy", "ggm"]    # default: all
//! # ggm_scope = "all"          # or "contiguous_parity"
//! # ggm_ceiling = 16           # site limit for scope = "all"
//!
//! [output]
//! path = "sweep.csv"
//! # format = "csv"   # or "json"
//! # N_q = 1000       # momentum grid size
//! ```
//!
//! Unknown keys are rejected with the line they appear on.

use std::path::PathBuf;

use fbh_core::eigensolver::SolverOptions;
use fbh_core::entanglement::{DEFAULT_GGM_CEILING, GgmScope};
use fbh_core::fock::default_soft_cap;
use fbh_core::hamiltonian::Boundary;
use fbh_core::momentum::DEFAULT_GRID_SIZE;
use serde::Deserialize;

use crate::CliError;

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn label(&self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

/// Which derived quantities a sweep computes. Disabled ones leave their
/// output columns empty.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct ObservableSet {
    pub momentum: bool,
    pub chiral: bool,
    pub dimer_xy: bool,
    pub dimer_zz: bool,
    pub half_chain_entropy: bool,
    pub ggm: bool,
}

impl ObservableSet {
    pub fn all() -> Self {
        ObservableSet {
            momentum: true,
            chiral: true,
            dimer_xy: true,
            dimer_zz: true,
            half_chain_entropy: true,
            ggm: true,
        }
    }

    pub fn none() -> Self {
        ObservableSet {
            momentum: false,
            chiral: false,
            dimer_xy: false,
            dimer_zz: false,
            half_chain_entropy: false,
            ggm: false,
        }
    }

    fn enable(&mut self, name: &str) -> Result<(), CliError> {
        match name {
            "momentum" => self.momentum = true,
            "chiral" => self.chiral = true,
            "dimer_xy" => self.dimer_xy = true,
            "dimer_zz" => self.dimer_zz = true,
            "half_chain_entropy" => self.half_chain_entropy = true,
            "ggm" => self.ggm = true,
            other => {
                return Err(CliError::Config(format!(
                    "unknown observable {other:?}; valid names: momentum, chiral, \
                     dimer_xy, dimer_zz, half_chain_entropy, ggm"
                )));
            }
        }
        Ok(())
    }
}

/// Fully validated sweep plan with every default resolved.
#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub m: usize,
    pub n: usize,
    pub n_max: u8,
    pub boundary: Boundary,
    pub hardcore: bool,
    pub t2: f64,
    /// Outer grid axis; `t1 = ratio * t2` pointwise.
    pub t1_over_t2: Vec<f64>,
    /// Inner grid axis; `U = Uprime * |t2|` pointwise.
    pub uprime: Vec<f64>,
    pub solver: SolverOptions,
    pub observables: ObservableSet,
    pub ggm_scope: GgmScope,
    pub ggm_ceiling: usize,
    pub output_path: PathBuf,
    pub format: OutputFormat,
    pub n_q: usize,
}

impl SweepConfig {
    /// Planned grid points in output order (ratio-major, then Uprime).
    pub fn point_count(&self) -> usize {
        self.t1_over_t2.len() * self.uprime.len()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    model: RawModel,
    grid: RawGrid,
    solver: Option<RawSolver>,
    observables: Option<RawObservables>,
    output: RawOutput,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    #[serde(rename = "M")]
    m: usize,
    #[serde(rename = "N")]
    n: Option<usize>,
    half_filling: Option<bool>,
    n_max: Option<u8>,
    hardcore: Option<bool>,
    boundary: Option<String>,
    t2: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    t1_over_t2: Vec<f64>,
    #[serde(rename = "Uprime")]
    uprime: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSolver {
    tol: Option<f64>,
    max_iter: Option<usize>,
    seed: Option<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawObservables {
    quantities: Option<Vec<String>>,
    ggm_scope: Option<String>,
    ggm_ceiling: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    path: String,
    format: Option<String>,
    #[serde(rename = "N_q")]
    n_q: Option<usize>,
}

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

/// Parses and validates configuration text. Syntax errors and unknown keys
/// are reported with line numbers; constraint violations name the offending
/// key and value.
pub fn parse_config(text: &str) -> Result<SweepConfig, CliError> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| config_err(e.to_string()))?;

    let m = raw.model.m;
    if m < 2 {
        return Err(config_err(format!("model.M must be at least 2, got {m}")));
    }

    let half_filling = raw.model.half_filling;
    let n = match (raw.model.n, half_filling) {
        (Some(n), Some(true)) if n * 2 != m => {
            return Err(config_err(format!(
                "model.N = {n} contradicts half_filling = true for M = {m}"
            )));
        }
        (Some(n), _) => n,
        (None, Some(false)) => {
            return Err(config_err(
                "model.N is required when half_filling = false".to_string(),
            ));
        }
        (None, _) => {
            if m % 2 != 0 {
                return Err(config_err(format!(
                    "half filling requires even M (got M = {m}); set model.N explicitly"
                )));
            }
            m / 2
        }
    };

    let hardcore = raw.model.hardcore.unwrap_or(false);
    let n_max = match (hardcore, raw.model.n_max) {
        (true, Some(c)) if c != 1 => {
            return Err(config_err(format!(
                "hardcore = true requires n_max = 1, got n_max = {c}"
            )));
        }
        (true, _) => 1,
        (false, Some(0)) => {
            return Err(config_err("model.n_max must be at least 1".to_string()));
        }
        (false, Some(c)) => c,
        (false, None) => default_soft_cap(n),
    };

    let boundary = match raw.model.boundary.as_deref() {
        None | Some("open") => Boundary::Open,
        Some("periodic") => Boundary::Periodic,
        Some(other) => {
            return Err(config_err(format!(
                "model.boundary must be \"open\" or \"periodic\", got {other:?}"
            )));
        }
    };
    if boundary == Boundary::Periodic && m < 5 {
        return Err(config_err(format!(
            "periodic boundaries need at least 5 sites to keep first- and \
             second-neighbor bonds distinct, got M = {m}"
        )));
    }

    let t2 = raw.model.t2.unwrap_or(-1.0);
    if !t2.is_finite() {
        return Err(config_err(format!("model.t2 must be finite, got {t2}")));
    }

    if raw.grid.t1_over_t2.is_empty() {
        return Err(config_err("grid.t1_over_t2 must not be empty".to_string()));
    }
    if raw.grid.uprime.is_empty() {
        return Err(config_err("grid.Uprime must not be empty".to_string()));
    }
    for (i, r) in raw.grid.t1_over_t2.iter().enumerate() {
        if !r.is_finite() {
            return Err(config_err(format!(
                "grid.t1_over_t2[{i}] must be finite, got {r}"
            )));
        }
    }
    for (i, u) in raw.grid.uprime.iter().enumerate() {
        if !u.is_finite() || *u < 0.0 {
            return Err(config_err(format!(
                "grid.Uprime[{i}] must be finite and nonnegative, got {u}"
            )));
        }
    }

    let mut solver = SolverOptions::default();
    if let Some(s) = &raw.solver {
        if let Some(tol) = s.tol {
            if !(tol.is_finite() && tol > 0.0) {
                return Err(config_err(format!(
                    "solver.tol must be a positive finite number, got {tol}"
                )));
            }
            solver.tol = tol;
        }
        if let Some(mi) = s.max_iter {
            if mi == 0 {
                return Err(config_err("solver.max_iter must be at least 1".to_string()));
            }
            solver.max_iter = mi;
        }
        if let Some(seed) = s.seed {
            solver.seed = seed;
        }
    }

    let mut observables = ObservableSet::all();
    let mut ggm_scope = GgmScope::All;
    let mut ggm_ceiling = DEFAULT_GGM_CEILING;
    if let Some(o) = &raw.observables {
        if let Some(names) = &o.quantities {
            observables = ObservableSet::none();
            for name in names {
                observables.enable(name)?;
            }
        }
        match o.ggm_scope.as_deref() {
            None | Some("all") => {}
            Some("contiguous_parity") => ggm_scope = GgmScope::ContiguousParity,
            Some(other) => {
                return Err(config_err(format!(
                    "observables.ggm_scope must be \"all\" or \"contiguous_parity\", \
                     got {other:?}"
                )));
            }
        }
        if let Some(c) = o.ggm_ceiling {
            if c == 0 {
                return Err(config_err(
                    "observables.ggm_ceiling must be at least 1".to_string(),
                ));
            }
            ggm_ceiling = c;
        }
    }

    if raw.output.path.is_empty() {
        return Err(config_err("output.path must not be empty".to_string()));
    }
    let format = match raw.output.format.as_deref() {
        None | Some("csv") => OutputFormat::Csv,
        Some("json") => OutputFormat::Json,
        Some(other) => {
            return Err(config_err(format!(
                "output.format must be \"csv\" or \"json\", got {other:?}"
            )));
        }
    };
    let n_q = raw.output.n_q.unwrap_or(DEFAULT_GRID_SIZE);
    if observables.momentum && n_q < m {
        return Err(config_err(format!(
            "output.N_q = {n_q} is too coarse for M = {m} sites; need N_q >= M"
        )));
    }

    Ok(SweepConfig {
        m,
        n,
        n_max,
        boundary,
        hardcore,
        t2,
        t1_over_t2: raw.grid.t1_over_t2,
        uprime: raw.grid.uprime,
        solver,
        observables,
        ggm_scope,
        ggm_ceiling,
        output_path: PathBuf::from(raw.output.path),
        format,
        n_q,
    })
}

/// Reads and parses a config file.
pub fn load_config(path: &std::path::Path) -> Result<SweepConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        CliError::Config(format!("cannot read config {}: {e}", path.display()))
    })?;
    parse_config(&text)
}
