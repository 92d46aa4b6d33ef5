//! Report tables and their CSV/JSON encodings.

use std::fs::File;
use std::io::{self, BufWriter, Write};

use serde::Serialize;
use serde_json::{Map, Value};

use netcap_core::gains::{GainReport, HopGainReport};
use netcap_core::sim::TraceRow;
use netcap_core::sweep::SweepRow;
use netcap_core::{CapacityBounds, SimReport};

use crate::config::Format;
use crate::error::CliError;

/// 17 significant digits: enough to round-trip any f64.
pub fn real(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Real(f64),
    Int(u64),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Real(x) => real(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Real(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::Int(i) => Value::from(*i),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Empty => Value::Null,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Table {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| *h == name)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), CliError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> = self
                        .header
                        .iter()
                        .zip(row)
                        .map(|(h, c)| (h.to_string(), c.json()))
                        .collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }

    pub fn write<W: Write>(&self, format: Format, mut out: W) -> Result<(), CliError> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => write_json(&self.to_json(), &mut out),
        }
    }
}

pub fn write_json<T: Serialize + ?Sized, W: Write>(value: &T, mut out: W) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut out, value)?;
    out.write_all(b"\n")?;
    out.flush()?;
    Ok(())
}

/// Opens `path` for writing; `-` is standard output.
pub fn open_sink(path: &str) -> Result<Box<dyn Write>, CliError> {
    if path == "-" {
        return Ok(Box::new(io::stdout().lock()));
    }
    let file = File::create(path).map_err(|e| CliError::Io(format!("creating {path}: {e}")))?;
    Ok(Box::new(BufWriter::new(file)))
}

const BOUND_COLUMNS: [&str; 6] = [
    "lambda_L_raw",
    "lambda_L",
    "lambda_U",
    "lambda_inf",
    "theta_star_L",
    "theta_star_U",
];

fn bound_cells(b: &CapacityBounds) -> Vec<Cell> {
    [
        b.lower_raw,
        b.lower,
        b.upper,
        b.asymptotic,
        b.theta_star_lower,
        b.theta_star_upper,
    ]
    .into_iter()
    .map(Cell::Real)
    .collect()
}

pub fn bounds_table(b: &CapacityBounds) -> Table {
    let mut t = Table::new(BOUND_COLUMNS.to_vec());
    t.push(bound_cells(b));
    t
}

/// A single bounds record; JSON emits an object rather than a one-row array.
pub fn write_bounds<W: Write>(b: &CapacityBounds, format: Format, out: W) -> Result<(), CliError> {
    match format {
        Format::Csv => bounds_table(b).write_csv(out),
        Format::Json => write_json(&BoundsJson::from(b), out),
    }
}

pub fn sweep_table(variable: &str, rows: &[SweepRow]) -> Table {
    let mut header = vec!["variable", "value", "t", "gamma"];
    header.extend(BOUND_COLUMNS);
    header.extend(["gap", "error"]);
    let mut t = Table::new(header);
    for row in rows {
        let mut cells = vec![
            Cell::Text(variable.to_string()),
            Cell::Real(row.value),
            Cell::Int(row.t),
            Cell::Int(row.gamma.into()),
        ];
        match &row.bounds {
            Ok(b) => {
                cells.extend(bound_cells(b));
                cells.push(Cell::Real(b.upper - b.lower));
                cells.push(Cell::Empty);
            }
            Err(e) => {
                cells.extend(std::iter::repeat_n(Cell::Empty, BOUND_COLUMNS.len() + 1));
                cells.push(Cell::Text(e.to_string()));
            }
        }
        t.push(cells);
    }
    t
}

pub fn gains_table(rows: &[GainReport]) -> Table {
    let mut t = Table::new(vec![
        "family",
        "n",
        "mean_N",
        "mean_inv_N",
        "gain_N",
        "doubling_ratio",
    ]);
    for r in rows {
        t.push(vec![
            Cell::Text(r.family.name().into()),
            Cell::Int(r.n.into()),
            Cell::Real(r.mean_n),
            Cell::Real(r.mean_inv_n),
            Cell::Real(r.gain_n),
            Cell::Real(r.doubling_ratio),
        ]);
    }
    t
}

pub fn hop_gains_table(rows: &[HopGainReport]) -> Table {
    let mut t = Table::new(vec![
        "family",
        "k",
        "mean_K",
        "mean_log_K",
        "gain_K",
        "doubling_ratio",
    ]);
    for r in rows {
        t.push(vec![
            Cell::Text(r.family.name().into()),
            Cell::Int(r.k.into()),
            Cell::Real(r.mean_k),
            Cell::Real(r.mean_log_k),
            Cell::Real(r.gain_k),
            Cell::Real(r.doubling_ratio),
        ]);
    }
    t
}

pub fn trajectory_table(rows: &[TraceRow]) -> Table {
    let mut t = Table::new(vec!["slot", "hop", "success_bit", "backlog"]);
    for r in rows {
        t.push(vec![
            Cell::Int(r.slot),
            Cell::Int(r.hop.into()),
            Cell::Int(r.success.into()),
            // the source is saturated
            r.backlog.map_or(Cell::Text("inf".into()), Cell::Int),
        ]);
    }
    t
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundsJson {
    #[serde(rename = "lambda_L_raw")]
    pub lower_raw: f64,
    #[serde(rename = "lambda_L")]
    pub lower: f64,
    #[serde(rename = "lambda_U")]
    pub upper: f64,
    #[serde(rename = "lambda_inf")]
    pub asymptotic: f64,
    #[serde(rename = "theta_star_L")]
    pub theta_star_lower: f64,
    #[serde(rename = "theta_star_U")]
    pub theta_star_upper: f64,
}

impl From<&CapacityBounds> for BoundsJson {
    fn from(b: &CapacityBounds) -> Self {
        BoundsJson {
            lower_raw: b.lower_raw,
            lower: b.lower,
            upper: b.upper,
            asymptotic: b.asymptotic,
            theta_star_lower: b.theta_star_lower,
            theta_star_upper: b.theta_star_upper,
        }
    }
}

/// Serialized form of a [`SimReport`].
#[derive(Debug, Clone, Serialize)]
pub struct SimReportJson {
    pub t: u64,
    pub epsilon: f64,
    pub seed: u64,
    pub replications: u64,
    pub bounds: BoundsJson,
    pub mean_throughput: f64,
    pub ci_half_width: f64,
    pub lower_violations: u64,
    pub upper_violations: u64,
    pub lower_violation_fraction: f64,
    pub upper_violation_fraction: f64,
    pub departures: Vec<u64>,
}

impl SimReportJson {
    pub fn new(report: &SimReport, seed: u64) -> Self {
        SimReportJson {
            t: report.t,
            epsilon: report.epsilon,
            seed,
            replications: report.replications(),
            bounds: (&report.bounds).into(),
            mean_throughput: report.mean_throughput,
            ci_half_width: report.ci_half_width,
            lower_violations: report.lower_violations,
            upper_violations: report.upper_violations,
            lower_violation_fraction: report.lower_violation_fraction(),
            upper_violation_fraction: report.upper_violation_fraction(),
            departures: report.departures.clone(),
        }
    }

    /// One summary row; the per-replication departures are dropped.
    pub fn summary_table(&self) -> Table {
        let mut t = Table::new(vec![
            "t",
            "epsilon",
            "seed",
            "replications",
            "lambda_L",
            "lambda_U",
            "mean_throughput",
            "ci_half_width",
            "lower_violations",
            "upper_violations",
            "lower_violation_fraction",
            "upper_violation_fraction",
        ]);
        t.push(vec![
            Cell::Int(self.t),
            Cell::Real(self.epsilon),
            Cell::Int(self.seed),
            Cell::Int(self.replications),
            Cell::Real(self.bounds.lower),
            Cell::Real(self.bounds.upper),
            Cell::Real(self.mean_throughput),
            Cell::Real(self.ci_half_width),
            Cell::Int(self.lower_violations),
            Cell::Int(self.upper_violations),
            Cell::Real(self.lower_violation_fraction),
            Cell::Real(self.upper_violation_fraction),
        ]);
        t
    }
}
