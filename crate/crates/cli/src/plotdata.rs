//! Reshapes sweep records into a ratio × U′ matrix for one quantity.
//!
//! Output layout: the corner cell names the quantity, the rest of the first
//! row is the U′ axis, the first column is the t1/t2 axis, and each body
//! cell holds the quantity exactly as it appears in the sweep CSV (empty
//! where the point is missing or the value was not computed).

use std::collections::BTreeMap;

use crate::CliError;
use crate::record::{CSV_COLUMNS, SweepRecord, fmt_float};

/// Output columns that may be plotted; model inputs are axes, not values.
pub fn plottable_quantities() -> &'static [&'static str] {
    &CSV_COLUMNS[10..]
}

fn ratio_of(r: &SweepRecord) -> Result<f64, CliError> {
    if r.t2 == 0.0 {
        return Err(CliError::Config(
            "cannot reconstruct the t1/t2 axis from records with t2 = 0".into(),
        ));
    }
    Ok(r.t1 / r.t2)
}

/// Renders the matrix as CSV text.
pub fn emit_plot_data(records: &[SweepRecord], quantity: &str) -> Result<String, CliError> {
    if !plottable_quantities().contains(&quantity) {
        return Err(CliError::Config(format!(
            "unknown quantity {quantity:?}; choose one of: {}",
            plottable_quantities().join(", ")
        )));
    }
    if records.is_empty() {
        return Err(CliError::Config("no records to plot".into()));
    }
    let first = &records[0];
    for r in records.iter().skip(1) {
        let shared = r.m == first.m
            && r.n == first.n
            && r.n_max == first.n_max
            && r.boundary == first.boundary
            && r.hardcore == first.hardcore
            && r.t2.to_bits() == first.t2.to_bits();
        if !shared {
            return Err(CliError::Config(
                "inconsistent grids: records mix different model parameters".into(),
            ));
        }
    }

    // Axes in order of first appearance, keyed by the printed form so that
    // equal coordinates collapse exactly.
    let mut ratios: Vec<String> = Vec::new();
    let mut uprimes: Vec<String> = Vec::new();
    let mut cells: BTreeMap<(String, String), String> = BTreeMap::new();
    for r in records {
        let ratio = fmt_float(ratio_of(r)?);
        let uprime = fmt_float(r.uprime);
        if !ratios.contains(&ratio) {
            ratios.push(ratio.clone());
        }
        if !uprimes.contains(&uprime) {
            uprimes.push(uprime.clone());
        }
        let value = r.cell(quantity).expect("validated quantity name");
        if cells.insert((ratio.clone(), uprime.clone()), value).is_some() {
            return Err(CliError::Config(format!(
                "inconsistent grids: duplicate point at t1_over_t2 = {ratio}, Uprime = {uprime}"
            )));
        }
    }
    if cells.values().all(String::is_empty) {
        return Err(CliError::Config(format!(
            "quantity {quantity:?} was not computed in these records"
        )));
    }

    let mut out = String::new();
    out.push_str(quantity);
    for u in &uprimes {
        out.push(',');
        out.push_str(u);
    }
    out.push('\n');
    for ratio in &ratios {
        out.push_str(ratio);
        for u in &uprimes {
            out.push(',');
            if let Some(v) = cells.get(&(ratio.clone(), u.clone())) {
                out.push_str(v);
            }
        }
        out.push('\n');
    }
    Ok(out)
}
