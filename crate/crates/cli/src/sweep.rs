//! Grid execution: solve every (t1/t2, U′) point, fold per-point failures
//! into the records, and write one output file.
//!
//! Points run in parallel but the file is assembled by a single writer in
//! grid order (ratio-major, then U′), so thread count never changes bytes.
//! Restarting with the same output path reuses rows whose inputs match and
//! whose energy cell parsed.

use std::collections::BTreeMap;
use std::fs;
use std::sync::Arc;

use fbh_core::correlators::{DimerOperator, DimerVariant, chiral_average, dimer_average};
use fbh_core::eigensolver::{GroundState, SolverOptions, ground_state};
use fbh_core::entanglement::{GgmScope, ggm_with_ceiling, half_chain_entropy};
use fbh_core::fock::FockBasis;
use fbh_core::hamiltonian::{Boundary, CouplingParams, build_hamiltonian};
use fbh_core::momentum::{classify_commensurate, momentum_profile};
use rayon::prelude::*;

use crate::CliError;
use crate::config::{ObservableSet, OutputFormat, SweepConfig};
use crate::record::{SweepRecord, completed_map, fmt_float, mask_string, parse_csv_lenient,
                    parse_json, to_csv, to_json};

/// Everything needed to evaluate one parameter point.
#[derive(Clone, Debug)]
pub struct PointSpec {
    pub m: usize,
    pub n: usize,
    pub n_max: u8,
    pub boundary: Boundary,
    pub hardcore: bool,
    pub t1: f64,
    pub t2: f64,
    pub u: f64,
    pub uprime: f64,
    pub solver: SolverOptions,
    pub n_q: usize,
    pub observables: ObservableSet,
    pub ggm_scope: GgmScope,
    pub ggm_ceiling: usize,
}

impl PointSpec {
    fn from_grid(config: &SweepConfig, ratio: f64, uprime: f64) -> Self {
        PointSpec {
            m: config.m,
            n: config.n,
            n_max: config.n_max,
            boundary: config.boundary,
            hardcore: config.hardcore,
            t1: ratio * config.t2,
            t2: config.t2,
            u: uprime * config.t2.abs(),
            uprime,
            solver: config.solver,
            n_q: config.n_q,
            observables: config.observables,
            ggm_scope: config.ggm_scope,
            ggm_ceiling: config.ggm_ceiling,
        }
    }
}

fn solve_point(basis: &Arc<FockBasis>, spec: &PointSpec) -> Result<GroundState, fbh_core::Error> {
    let params = CouplingParams {
        t1: spec.t1,
        t2: spec.t2,
        u: spec.u,
        boundary: spec.boundary,
        hardcore: spec.hardcore,
        n_max: spec.n_max,
    };
    let h = build_hamiltonian(basis, &params)?;
    ground_state(&h, basis, &spec.solver)
}

/// Evaluates one point. Failures never propagate: a solver failure leaves
/// all output cells empty, a failed observable leaves its own cells empty,
/// and the messages are joined into `record.error`.
pub fn compute_record(basis: &Arc<FockBasis>, spec: &PointSpec) -> SweepRecord {
    let mut rec = SweepRecord::from_inputs(
        spec.m,
        spec.n,
        spec.n_max,
        spec.boundary,
        spec.hardcore,
        spec.t1,
        spec.t2,
        spec.u,
        spec.uprime,
    );
    let gs = match solve_point(basis, spec) {
        Ok(gs) => gs,
        Err(e) => {
            rec.error = Some(format!("solve: {e}"));
            return rec;
        }
    };
    rec.e0 = Some(gs.energy);
    rec.gap = Some(gs.gap_estimate);
    rec.degenerate = Some(gs.degenerate);
    rec.solver_iters = Some(gs.iterations);
    rec.residual = Some(gs.residual_norm);

    let mut errors: Vec<String> = Vec::new();
    let obs = &spec.observables;

    if obs.momentum {
        match momentum_profile(&gs, spec.n_q) {
            Ok(p) => {
                rec.eta = Some(p.eta);
                rec.q_max = Some(p.q_max);
                rec.commensurate = Some(classify_commensurate(p.q_max).label().to_string());
                rec.sq_norm = Some(p.s_q_normalized);
            }
            Err(e) => errors.push(format!("momentum: {e}")),
        }
    }
    if obs.chiral {
        match chiral_average(&gs) {
            Ok(v) => rec.kappa_bar = Some(v),
            Err(e) => errors.push(format!("chiral: {e}")),
        }
    }
    if obs.dimer_xy {
        match dimer_average(&gs, DimerOperator::xy(DimerVariant::KineticBond)) {
            Ok(v) => rec.dxy_bar_kinetic = Some(v),
            Err(e) => errors.push(format!("dimer_xy kinetic: {e}")),
        }
        match dimer_average(&gs, DimerOperator::xy(DimerVariant::CurrentBond)) {
            Ok(v) => rec.dxy_bar_current = Some(v),
            Err(e) => errors.push(format!("dimer_xy current: {e}")),
        }
    }
    if obs.dimer_zz {
        match dimer_average(&gs, DimerOperator::Zz) {
            Ok(v) => rec.dzz_bar = Some(v),
            Err(e) => errors.push(format!("dimer_zz: {e}")),
        }
    }
    if obs.half_chain_entropy {
        match half_chain_entropy(&gs) {
            Ok(v) => rec.e_half = Some(v),
            Err(e) => errors.push(format!("half_chain_entropy: {e}")),
        }
    }
    if obs.ggm {
        if spec.ggm_scope == GgmScope::All && spec.m > spec.ggm_ceiling {
            rec.ggm_note = Some(format!(
                "ggm skipped: scope \"all\" enumerates every bipartition of M = {} sites, \
                 above the ceiling {}; raise observables.ggm_ceiling or switch \
                 ggm_scope to \"contiguous_parity\"",
                spec.m, spec.ggm_ceiling
            ));
        } else {
            match ggm_with_ceiling(&gs, spec.ggm_scope, spec.ggm_ceiling) {
                Ok(g) => {
                    rec.ggm = Some(g.value);
                    rec.ggm_argmax_bitmask = Some(mask_string(g.argmax.mask(), spec.m));
                }
                Err(e) => errors.push(format!("ggm: {e}")),
            }
        }
    }

    if !errors.is_empty() {
        rec.error = Some(errors.join("; "));
    }
    rec
}

#[derive(Debug)]
pub struct SweepOutcome {
    /// One record per grid point, in grid order.
    pub records: Vec<SweepRecord>,
    /// Points taken from a previous file instead of recomputed.
    pub reused: usize,
    /// Points whose record carries an error string.
    pub errored: usize,
    /// Points that never produced a ground state.
    pub unsolved: usize,
    /// Resume-salvage notes about discarded rows of the previous file.
    pub warnings: Vec<String>,
}

impl SweepOutcome {
    /// Process exit code: 0 clean, 2 when no point solved, 3 when some
    /// points errored.
    pub fn exit_code(&self) -> i32 {
        if self.unsolved == self.records.len() && !self.records.is_empty() {
            2
        } else if self.errored > 0 {
            3
        } else {
            0
        }
    }
}

fn bits_equal(a: f64, b: f64) -> bool {
    a.to_bits() == b.to_bits()
}

fn model_matches(r: &SweepRecord, c: &SweepConfig) -> bool {
    r.m == c.m
        && r.n == c.n
        && r.n_max == c.n_max
        && r.boundary == c.boundary
        && r.hardcore == c.hardcore
        && bits_equal(r.t2, c.t2)
}

type ResumeMap = BTreeMap<(String, String), SweepRecord>;

/// Rows of a previous run at the same path, keyed by (t1, Uprime) in the
/// 17-digit cell form.
fn read_resume(config: &SweepConfig) -> Result<(ResumeMap, Vec<String>), CliError> {
    if !config.output_path.exists() {
        return Ok((BTreeMap::new(), Vec::new()));
    }
    let text = fs::read_to_string(&config.output_path).map_err(|e| {
        CliError::Io(format!(
            "cannot read existing output {}: {e}",
            config.output_path.display()
        ))
    })?;
    let (records, warnings) = match config.format {
        OutputFormat::Csv => parse_csv_lenient(&text)?,
        OutputFormat::Json => (parse_json(&text)?, Vec::new()),
    };
    let kept: Vec<SweepRecord> = records.into_iter().filter(|r| model_matches(r, config)).collect();
    Ok((completed_map(kept), warnings))
}

/// Fails when the output path cannot be opened for writing; called before
/// any solve so a misconfigured path costs nothing.
fn probe_writable(config: &SweepConfig) -> Result<(), CliError> {
    fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(&config.output_path)
        .map(|_| ())
        .map_err(|e| {
            CliError::Io(format!(
                "output path {} is not writable: {e}",
                config.output_path.display()
            ))
        })
}

/// Runs the whole grid and writes the output file. Returns the records in
/// grid order together with reuse/failure counts; the caller maps those to
/// an exit code.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepOutcome, CliError> {
    let (resume, warnings) = read_resume(config)?;
    probe_writable(config)?;

    let basis = Arc::new(
        FockBasis::new(config.m, config.n, config.n_max)
            .map_err(|e| CliError::Config(format!("model rejected: {e}")))?,
    );

    let plan: Vec<PointSpec> = config
        .t1_over_t2
        .iter()
        .flat_map(|&ratio| {
            config.uprime.iter().map(move |&uprime| (ratio, uprime))
        })
        .map(|(ratio, uprime)| PointSpec::from_grid(config, ratio, uprime))
        .collect();

    let records: Vec<SweepRecord> = plan
        .par_iter()
        .map(|spec| {
            let key = (fmt_float(spec.t1), fmt_float(spec.uprime));
            match resume.get(&key) {
                Some(prev) => prev.clone(),
                None => compute_record(&basis, spec),
            }
        })
        .collect();

    let reused = plan
        .iter()
        .filter(|spec| resume.contains_key(&(fmt_float(spec.t1), fmt_float(spec.uprime))))
        .count();
    let errored = records.iter().filter(|r| r.error.is_some()).count();
    let unsolved = records.iter().filter(|r| !r.is_complete()).count();

    let text = match config.format {
        OutputFormat::Csv => to_csv(&records),
        OutputFormat::Json => to_json(&records),
    };
    fs::write(&config.output_path, text).map_err(|e| {
        CliError::Io(format!(
            "cannot write output {}: {e}",
            config.output_path.display()
        ))
    })?;

    Ok(SweepOutcome { records, reused, errored, unsolved, warnings })
}
