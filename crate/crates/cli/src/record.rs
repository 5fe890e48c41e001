//! One result row per grid point: the pinned CSV schema, deterministic
//! formatting, and parsing of previously written files for resume.
//!
//! Floats are printed as `{:.16e}` (17 significant digits), which
//! round-trips every f64 exactly; rewriting a parsed row therefore
//! reproduces its bytes. Cells of failed or disabled quantities are empty.

use std::collections::BTreeMap;

use fbh_core::hamiltonian::Boundary;
use serde_json::{Map, Number, Value};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// Column list, pinned; `schema_version` bumps on any change.
pub const CSV_COLUMNS: [&str; 26] = [
    "schema_version",
    "M",
    "N",
    "n_max",
    "boundary",
    "hardcore",
    "t1",
    "t2",
    "U",
    "Uprime",
    "E0",
    "gap",
    "degenerate",
    "eta",
    "q_max",
    "commensurate",
    "Sq_norm",
    "kappa_bar",
    "Dxy_bar_kinetic",
    "Dxy_bar_current",
    "Dzz_bar",
    "E_half",
    "ggm",
    "ggm_argmax_bitmask",
    "solver_iters",
    "residual",
];

pub fn csv_header() -> String {
    CSV_COLUMNS.join(",")
}

/// Formats with 17 significant digits; parsing this back yields the same bits.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRecord {
    pub m: usize,
    pub n: usize,
    pub n_max: u8,
    pub boundary: Boundary,
    pub hardcore: bool,
    pub t1: f64,
    pub t2: f64,
    pub u: f64,
    pub uprime: f64,
    pub e0: Option<f64>,
    pub gap: Option<f64>,
    pub degenerate: Option<bool>,
    pub eta: Option<f64>,
    pub q_max: Option<f64>,
    /// "C" or "IC".
    pub commensurate: Option<String>,
    pub sq_norm: Option<f64>,
    pub kappa_bar: Option<f64>,
    pub dxy_bar_kinetic: Option<f64>,
    pub dxy_bar_current: Option<f64>,
    pub dzz_bar: Option<f64>,
    pub e_half: Option<f64>,
    pub ggm: Option<f64>,
    /// M-character binary string, site 1 rightmost.
    pub ggm_argmax_bitmask: Option<String>,
    pub solver_iters: Option<usize>,
    pub residual: Option<f64>,
    /// Why the ggm cell is empty despite a successful solve (JSON only).
    pub ggm_note: Option<String>,
    /// Accumulated per-point failure messages (JSON and stderr only).
    pub error: Option<String>,
}

impl SweepRecord {
    /// Record with the model/grid inputs filled and every output empty.
    #[allow(clippy::too_many_arguments)]
    pub fn from_inputs(
        m: usize,
        n: usize,
        n_max: u8,
        boundary: Boundary,
        hardcore: bool,
        t1: f64,
        t2: f64,
        u: f64,
        uprime: f64,
    ) -> Self {
        SweepRecord {
            m,
            n,
            n_max,
            boundary,
            hardcore,
            t1,
            t2,
            u,
            uprime,
            e0: None,
            gap: None,
            degenerate: None,
            eta: None,
            q_max: None,
            commensurate: None,
            sq_norm: None,
            kappa_bar: None,
            dxy_bar_kinetic: None,
            dxy_bar_current: None,
            dzz_bar: None,
            e_half: None,
            ggm: None,
            ggm_argmax_bitmask: None,
            solver_iters: None,
            residual: None,
            ggm_note: None,
            error: None,
        }
    }

    /// A point counts as completed once it has a ground-state energy.
    pub fn is_complete(&self) -> bool {
        self.e0.is_some()
    }

    /// Cell strings in schema order.
    pub fn cells(&self) -> Vec<String> {
        fn opt_f(x: Option<f64>) -> String {
            x.map(fmt_float).unwrap_or_default()
        }
        vec![
            SCHEMA_VERSION.to_string(),
            self.m.to_string(),
            self.n.to_string(),
            self.n_max.to_string(),
            self.boundary.to_string(),
            self.hardcore.to_string(),
            fmt_float(self.t1),
            fmt_float(self.t2),
            fmt_float(self.u),
            fmt_float(self.uprime),
            opt_f(self.e0),
            opt_f(self.gap),
            self.degenerate.map(|b| b.to_string()).unwrap_or_default(),
            opt_f(self.eta),
            opt_f(self.q_max),
            self.commensurate.clone().unwrap_or_default(),
            opt_f(self.sq_norm),
            opt_f(self.kappa_bar),
            opt_f(self.dxy_bar_kinetic),
            opt_f(self.dxy_bar_current),
            opt_f(self.dzz_bar),
            opt_f(self.e_half),
            opt_f(self.ggm),
            self.ggm_argmax_bitmask.clone().unwrap_or_default(),
            self.solver_iters.map(|i| i.to_string()).unwrap_or_default(),
            opt_f(self.residual),
        ]
    }

    /// Formatted cell for one named column, as it appears in the CSV.
    pub fn cell(&self, column: &str) -> Option<String> {
        let idx = CSV_COLUMNS.iter().position(|c| *c == column)?;
        Some(self.cells().swap_remove(idx))
    }

    pub fn csv_row(&self) -> String {
        self.cells()
            .iter()
            .map(|c| csv_quote(c))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// JSON object with schema-ordered keys; floats keep the 17-digit form.
    pub fn to_json(&self) -> Value {
        fn num(x: f64) -> Value {
            // from_str on the fixed-width literal keeps those exact digits in
            // the output (serde_json arbitrary_precision).
            Value::Number(fmt_float(x).parse::<Number>().expect("finite float"))
        }
        fn opt_num(x: Option<f64>) -> Value {
            x.map(num).unwrap_or(Value::Null)
        }
        let mut obj = Map::new();
        obj.insert("schema_version".into(), Value::from(SCHEMA_VERSION));
        obj.insert("M".into(), Value::from(self.m));
        obj.insert("N".into(), Value::from(self.n));
        obj.insert("n_max".into(), Value::from(self.n_max));
        obj.insert("boundary".into(), Value::from(self.boundary.to_string()));
        obj.insert("hardcore".into(), Value::from(self.hardcore));
        obj.insert("t1".into(), num(self.t1));
        obj.insert("t2".into(), num(self.t2));
        obj.insert("U".into(), num(self.u));
        obj.insert("Uprime".into(), num(self.uprime));
        obj.insert("E0".into(), opt_num(self.e0));
        obj.insert("gap".into(), opt_num(self.gap));
        obj.insert(
            "degenerate".into(),
            self.degenerate.map(Value::from).unwrap_or(Value::Null),
        );
        obj.insert("eta".into(), opt_num(self.eta));
        obj.insert("q_max".into(), opt_num(self.q_max));
        obj.insert(
            "commensurate".into(),
            self.commensurate.clone().map(Value::from).unwrap_or(Value::Null),
        );
        obj.insert("Sq_norm".into(), opt_num(self.sq_norm));
        obj.insert("kappa_bar".into(), opt_num(self.kappa_bar));
        obj.insert("Dxy_bar_kinetic".into(), opt_num(self.dxy_bar_kinetic));
        obj.insert("Dxy_bar_current".into(), opt_num(self.dxy_bar_current));
        obj.insert("Dzz_bar".into(), opt_num(self.dzz_bar));
        obj.insert("E_half".into(), opt_num(self.e_half));
        obj.insert("ggm".into(), opt_num(self.ggm));
        obj.insert(
            "ggm_argmax_bitmask".into(),
            self.ggm_argmax_bitmask.clone().map(Value::from).unwrap_or(Value::Null),
        );
        obj.insert(
            "solver_iters".into(),
            self.solver_iters.map(Value::from).unwrap_or(Value::Null),
        );
        obj.insert("residual".into(), opt_num(self.residual));
        if let Some(note) = &self.ggm_note {
            obj.insert("ggm_note".into(), Value::from(note.clone()));
        }
        if let Some(err) = &self.error {
            obj.insert("error".into(), Value::from(err.clone()));
        }
        Value::Object(obj)
    }

    fn from_cells(cells: &[String], line: usize) -> Result<Self, CliError> {
        if cells.len() != CSV_COLUMNS.len() {
            return Err(CliError::Config(format!(
                "line {line}: expected {} cells, found {}",
                CSV_COLUMNS.len(),
                cells.len()
            )));
        }
        let bad = |col: &str, val: &str| {
            CliError::Config(format!("line {line}: cannot parse {col} value {val:?}"))
        };
        let f = |i: usize| -> Result<f64, CliError> {
            cells[i].parse::<f64>().map_err(|_| bad(CSV_COLUMNS[i], &cells[i]))
        };
        let opt_f = |i: usize| -> Result<Option<f64>, CliError> {
            if cells[i].is_empty() { Ok(None) } else { f(i).map(Some) }
        };
        let version: u32 = cells[0].parse().map_err(|_| bad("schema_version", &cells[0]))?;
        if version != SCHEMA_VERSION {
            return Err(CliError::Config(format!(
                "line {line}: schema_version {version} differs from supported {SCHEMA_VERSION}"
            )));
        }
        let boundary = match cells[4].as_str() {
            "open" => Boundary::Open,
            "periodic" => Boundary::Periodic,
            other => return Err(bad("boundary", other)),
        };
        let parse_bool = |i: usize| -> Result<bool, CliError> {
            cells[i].parse::<bool>().map_err(|_| bad(CSV_COLUMNS[i], &cells[i]))
        };
        Ok(SweepRecord {
            m: cells[1].parse().map_err(|_| bad("M", &cells[1]))?,
            n: cells[2].parse().map_err(|_| bad("N", &cells[2]))?,
            n_max: cells[3].parse().map_err(|_| bad("n_max", &cells[3]))?,
            boundary,
            hardcore: parse_bool(5)?,
            t1: f(6)?,
            t2: f(7)?,
            u: f(8)?,
            uprime: f(9)?,
            e0: opt_f(10)?,
            gap: opt_f(11)?,
            degenerate: if cells[12].is_empty() { None } else { Some(parse_bool(12)?) },
            eta: opt_f(13)?,
            q_max: opt_f(14)?,
            commensurate: if cells[15].is_empty() { None } else { Some(cells[15].clone()) },
            sq_norm: opt_f(16)?,
            kappa_bar: opt_f(17)?,
            dxy_bar_kinetic: opt_f(18)?,
            dxy_bar_current: opt_f(19)?,
            dzz_bar: opt_f(20)?,
            e_half: opt_f(21)?,
            ggm: opt_f(22)?,
            ggm_argmax_bitmask: if cells[23].is_empty() { None } else { Some(cells[23].clone()) },
            solver_iters: if cells[24].is_empty() {
                None
            } else {
                Some(cells[24].parse().map_err(|_| bad("solver_iters", &cells[24]))?)
            },
            residual: opt_f(25)?,
            ggm_note: None,
            error: None,
        })
    }
}

/// Quotes a cell RFC-4180 style when it contains a comma, quote, or newline.
fn csv_quote(cell: &str) -> String {
    if cell.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

/// Splits one CSV line honoring quoted cells.
fn split_csv_line(line: &str, lineno: usize) -> Result<Vec<String>, CliError> {
    let mut cells = Vec::new();
    let mut cell = String::new();
    let mut chars = line.chars().peekable();
    let mut quoted = false;
    while let Some(c) = chars.next() {
        if quoted {
            match c {
                '"' if chars.peek() == Some(&'"') => {
                    chars.next();
                    cell.push('"');
                }
                '"' => quoted = false,
                other => cell.push(other),
            }
        } else {
            match c {
                '"' if cell.is_empty() => quoted = true,
                ',' => cells.push(std::mem::take(&mut cell)),
                other => cell.push(other),
            }
        }
    }
    if quoted {
        return Err(CliError::Config(format!("line {lineno}: unterminated quote")));
    }
    cells.push(cell);
    Ok(cells)
}

/// Serializes records as a CSV document (header + one row per record).
pub fn to_csv(records: &[SweepRecord]) -> String {
    let mut out = csv_header();
    out.push('\n');
    for r in records {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

/// Serializes records as a JSON array; trailing newline included.
pub fn to_json(records: &[SweepRecord]) -> String {
    let array = Value::Array(records.iter().map(SweepRecord::to_json).collect());
    let mut text = serde_json::to_string_pretty(&array).expect("serializable");
    text.push('\n');
    text
}

/// Parses a CSV document previously produced by [`to_csv`].
pub fn parse_csv(text: &str) -> Result<Vec<SweepRecord>, CliError> {
    let (records, warnings) = parse_csv_lenient(text)?;
    match warnings.into_iter().next() {
        None => Ok(records),
        Some(w) => Err(CliError::Config(w)),
    }
}

/// Like [`parse_csv`] but skips malformed data rows (for example the
/// truncated last line of an interrupted run), reporting them as warnings.
/// A wrong header is still an error: that file is not ours to reuse.
pub fn parse_csv_lenient(text: &str) -> Result<(Vec<SweepRecord>, Vec<String>), CliError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == csv_header() => {}
        Some((_, header)) => {
            return Err(CliError::Config(format!(
                "unsupported CSV header; expected {:?}, found {:?}",
                csv_header(),
                header
            )));
        }
        None => return Ok((Vec::new(), Vec::new())),
    }
    let mut records = Vec::new();
    let mut warnings = Vec::new();
    for (idx, line) in lines {
        if line.is_empty() {
            continue;
        }
        let parsed = split_csv_line(line, idx + 1)
            .and_then(|cells| SweepRecord::from_cells(&cells, idx + 1));
        match parsed {
            Ok(r) => records.push(r),
            Err(e) => warnings.push(e.to_string()),
        }
    }
    Ok((records, warnings))
}

/// Parses a JSON array previously produced by [`to_json`].
pub fn parse_json(text: &str) -> Result<Vec<SweepRecord>, CliError> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| CliError::Config(format!("invalid JSON output file: {e}")))?;
    let Value::Array(items) = value else {
        return Err(CliError::Config("JSON output file must be an array".into()));
    };
    let mut records = Vec::new();
    for (i, item) in items.iter().enumerate() {
        records.push(record_from_json(item).map_err(|msg| {
            CliError::Config(format!("JSON record {i}: {msg}"))
        })?);
    }
    Ok(records)
}

fn record_from_json(value: &Value) -> Result<SweepRecord, String> {
    let obj = value.as_object().ok_or("not an object")?;
    let get_f = |key: &str| -> Result<f64, String> {
        obj.get(key)
            .and_then(Value::as_f64)
            .ok_or_else(|| format!("missing number {key:?}"))
    };
    let opt_f = |key: &str| -> Option<f64> { obj.get(key).and_then(Value::as_f64) };
    let opt_s = |key: &str| -> Option<String> {
        obj.get(key).and_then(Value::as_str).map(str::to_string)
    };
    let boundary = match obj.get("boundary").and_then(Value::as_str) {
        Some("open") => Boundary::Open,
        Some("periodic") => Boundary::Periodic,
        other => return Err(format!("bad boundary {other:?}")),
    };
    let get_u = |key: &str| -> Result<u64, String> {
        obj.get(key)
            .and_then(Value::as_u64)
            .ok_or_else(|| format!("missing integer {key:?}"))
    };
    Ok(SweepRecord {
        m: get_u("M")? as usize,
        n: get_u("N")? as usize,
        n_max: get_u("n_max")? as u8,
        boundary,
        hardcore: obj.get("hardcore").and_then(Value::as_bool).ok_or("missing hardcore")?,
        t1: get_f("t1")?,
        t2: get_f("t2")?,
        u: get_f("U")?,
        uprime: get_f("Uprime")?,
        e0: opt_f("E0"),
        gap: opt_f("gap"),
        degenerate: obj.get("degenerate").and_then(Value::as_bool),
        eta: opt_f("eta"),
        q_max: opt_f("q_max"),
        commensurate: opt_s("commensurate"),
        sq_norm: opt_f("Sq_norm"),
        kappa_bar: opt_f("kappa_bar"),
        dxy_bar_kinetic: opt_f("Dxy_bar_kinetic"),
        dxy_bar_current: opt_f("Dxy_bar_current"),
        dzz_bar: opt_f("Dzz_bar"),
        e_half: opt_f("E_half"),
        ggm: opt_f("ggm"),
        ggm_argmax_bitmask: opt_s("ggm_argmax_bitmask"),
        solver_iters: obj.get("solver_iters").and_then(Value::as_u64).map(|v| v as usize),
        residual: opt_f("residual"),
        ggm_note: opt_s("ggm_note"),
        error: opt_s("error"),
    })
}

/// Renders a bipartition mask as an M-character binary string
/// (site 1 rightmost).
pub fn mask_string(mask: u64, m: usize) -> String {
    format!("{mask:0m$b}")
}

/// Reused rows from a previous run, keyed by their grid coordinates. Rows
/// only count when their model inputs match the current sweep and the energy
/// cell parsed, so a crashed writer never poisons a resume.
pub fn completed_map(records: Vec<SweepRecord>) -> BTreeMap<(String, String), SweepRecord> {
    let mut map = BTreeMap::new();
    for r in records {
        if r.is_complete() {
            map.insert((fmt_float(r.t1), fmt_float(r.uprime)), r);
        }
    }
    map
}
