//! Self-check report built from the analytically solvable dimer point:
//! the paired singlet product state, its closed-form bond correlators, and
//! the engine's numerical values side by side.

use std::sync::Arc;

use fbh_core::correlators::{DimerOperator, DimerVariant, dimer_average, dimer_report};
use fbh_core::dimer::{
    dimer_average_closed, dimer_xy_delta_closed, dimer_zz_delta_closed, perfect_dimer_state,
};
use fbh_core::entanglement::{GgmScope, ggm_with_ceiling, half_chain_entropy};
use fbh_core::hamiltonian::{Boundary, CouplingParams, build_hamiltonian};
use fbh_core::momentum::momentum_profile;
use num_complex::Complex64;
use serde_json::{Map, Number, Value};

use crate::CliError;

fn num(x: f64) -> Value {
    Value::Number(
        format!("{x:.16e}")
            .parse::<Number>()
            .expect("finite float"),
    )
}

/// ⟨ψ|H|ψ⟩ and ‖Hψ − Eψ‖ for the exactly solvable couplings
/// t1 = 2, t2 = −1 (hard-core, open chain).
fn energy_check(m: usize) -> Result<(f64, f64), CliError> {
    let gs = perfect_dimer_state(m).map_err(|e| CliError::Config(e.to_string()))?;
    let params = CouplingParams::hardcore(2.0, -1.0, Boundary::Open);
    let h = build_hamiltonian(&gs.basis, &params).map_err(|e| CliError::Config(e.to_string()))?;
    let hpsi = h.apply(&gs.amplitudes).map_err(|e| CliError::Config(e.to_string()))?;
    let energy: Complex64 = gs
        .amplitudes
        .iter()
        .zip(&hpsi)
        .map(|(a, b)| a.conj() * b)
        .sum();
    let energy = energy.re;
    let residual: f64 = gs
        .amplitudes
        .iter()
        .zip(&hpsi)
        .map(|(a, b)| (b - energy * a).norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok((energy, residual))
}

fn delta_table(
    m: usize,
    op: DimerOperator,
    closed: impl Fn(i64) -> f64,
) -> Result<(Value, Value, f64), CliError> {
    let gs = perfect_dimer_state(m).map_err(|e| CliError::Config(e.to_string()))?;
    let report = dimer_report(&gs, op).map_err(|e| CliError::Config(e.to_string()))?;
    let mut closed_map = Map::new();
    let mut numeric_map = Map::new();
    let mut max_dev: f64 = 0.0;
    for (&delta, &value) in &report.per_delta {
        let reference = closed(delta);
        closed_map.insert(delta.to_string(), num(reference));
        numeric_map.insert(delta.to_string(), num(value));
        max_dev = max_dev.max((value - reference).abs());
    }
    Ok((Value::Object(closed_map), Value::Object(numeric_map), max_dev))
}

/// Builds the full report for an even chain of `m >= 8` sites (the closed
/// forms below that size hit their boundary exclusions).
pub fn oracle_report(m: usize, ggm_ceiling: usize) -> Result<Value, CliError> {
    if m < 8 || m % 2 != 0 {
        return Err(CliError::Config(format!(
            "the closed-form tables need an even site count of at least 8, got {m}"
        )));
    }
    let gs = Arc::new(perfect_dimer_state(m).map_err(|e| CliError::Config(e.to_string()))?);

    let mut root = Map::new();
    root.insert("M".into(), Value::from(m));
    root.insert("pair_count".into(), Value::from(m / 2));

    let (energy, residual) = energy_check(m)?;
    let mut en = Map::new();
    en.insert("t1".into(), num(2.0));
    en.insert("t2".into(), num(-1.0));
    en.insert("expected_E0".into(), num(-(m as f64)));
    en.insert("energy".into(), num(energy));
    en.insert("residual".into(), num(residual));
    root.insert("energy_check".into(), Value::Object(en));

    let xy = DimerOperator::xy(DimerVariant::CurrentBond);
    let (closed, numeric, dev) =
        delta_table(m, xy, |d| dimer_xy_delta_closed(m, d).expect("in range"))?;
    let mut sec = Map::new();
    sec.insert("closed".into(), closed);
    sec.insert("numeric".into(), numeric);
    sec.insert("max_abs_deviation".into(), num(dev));
    root.insert("dimer_xy_current".into(), Value::Object(sec));

    let (closed, numeric, dev) =
        delta_table(m, DimerOperator::Zz, |d| dimer_zz_delta_closed(m, d).expect("in range"))?;
    let mut sec = Map::new();
    sec.insert("closed".into(), closed);
    sec.insert("numeric".into(), numeric);
    sec.insert("max_abs_deviation".into(), num(dev));
    root.insert("dimer_zz".into(), Value::Object(sec));

    let mut avg = Map::new();
    for (key, op) in [
        ("Dxy_bar_kinetic", DimerOperator::xy(DimerVariant::KineticBond)),
        ("Dxy_bar_current", DimerOperator::xy(DimerVariant::CurrentBond)),
        ("Dzz_bar", DimerOperator::Zz),
    ] {
        let closed = dimer_average_closed(m, op).map_err(|e| CliError::Config(e.to_string()))?;
        let numeric = dimer_average(&gs, op).map_err(|e| CliError::Config(e.to_string()))?;
        avg.insert(format!("{key}_closed"), num(closed));
        avg.insert(format!("{key}_numeric"), num(numeric));
    }
    root.insert("averages".into(), Value::Object(avg));

    let mut ent = Map::new();
    let e_half = half_chain_entropy(&gs).map_err(|e| CliError::Config(e.to_string()))?;
    ent.insert("E_half".into(), num(e_half));
    if m <= ggm_ceiling {
        let g = ggm_with_ceiling(&gs, GgmScope::All, ggm_ceiling)
            .map_err(|e| CliError::Config(e.to_string()))?;
        ent.insert("ggm".into(), num(g.value));
    } else {
        let g = ggm_with_ceiling(&gs, GgmScope::ContiguousParity, ggm_ceiling)
            .map_err(|e| CliError::Config(e.to_string()))?;
        ent.insert("ggm_contiguous_parity".into(), num(g.value));
    }
    root.insert("entanglement".into(), Value::Object(ent));

    let profile =
        momentum_profile(&gs, m.max(1000)).map_err(|e| CliError::Config(e.to_string()))?;
    let mut mom = Map::new();
    mom.insert("eta".into(), num(profile.eta));
    mom.insert("expected_eta".into(), num(2.0 / m as f64));
    mom.insert("q_max".into(), num(profile.q_max));
    root.insert("momentum".into(), Value::Object(mom));

    Ok(Value::Object(root))
}
