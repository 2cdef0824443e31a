//! Run records and tabular output (CSV with `#` headers, or JSON).

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};

pub const UNITS: &str = "omega0 = 1, c = 1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Everything needed to re-run a command: name, ordered flags, version, targets.
#[derive(Debug, Clone)]
pub struct RunRecord {
    pub command: &'static str,
    pub params: Vec<(&'static str, String)>,
    pub outputs: Vec<String>,
}

impl RunRecord {
    pub fn new(command: &'static str) -> Self {
        RunRecord { command, params: Vec::new(), outputs: Vec::new() }
    }

    pub fn param(mut self, name: &'static str, value: impl ToString) -> Self {
        self.params.push((name, value.to_string()));
        self
    }

    pub fn flag(self, name: &'static str, on: bool) -> Self {
        if on {
            self.param(name, "")
        } else {
            self
        }
    }

    pub fn output(mut self, target: Option<&Path>) -> Self {
        self.outputs.push(target.map_or_else(|| "stdout".to_string(), |p| p.display().to_string()));
        self
    }

    pub fn invocation(&self) -> String {
        let mut line = format!("twophoton {}", self.command);
        for (name, value) in &self.params {
            line.push_str(" --");
            line.push_str(name);
            if !value.is_empty() {
                line.push(' ');
                line.push_str(value);
            }
        }
        line
    }

    pub fn to_json(&self) -> Value {
        let params: Map<String, Value> = self
            .params
            .iter()
            .map(|(k, v)| (k.to_string(), if v.is_empty() { Value::Bool(true) } else { Value::String(v.clone()) }))
            .collect();
        json!({
            "tool": "twophoton",
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "invocation": self.invocation(),
            "params": params,
            "outputs": self.outputs,
            "units": UNITS,
        })
    }
}

/// 17 significant digits; non-finite values become `inf`, `-inf`, `nan`.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:.16e}")
    }
}

pub fn json_number(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::String(format_number(x))
    }
}

/// `log10(rate)`, with `-inf` for a vanishing rate.
pub fn log10_rate(rate: f64) -> f64 {
    if rate == 0.0 {
        f64::NEG_INFINITY
    } else {
        rate.log10()
    }
}

#[derive(Debug, Clone)]
pub struct OutputGrid {
    pub record: RunRecord,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
    /// Free-form remarks such as flagged nodes.
    pub notes: Vec<String>,
}

impl OutputGrid {
    pub fn new(record: RunRecord, columns: Vec<&'static str>) -> Self {
        OutputGrid { record, columns, rows: Vec::new(), notes: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write_csv(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(out, "# twophoton {}", env!("CARGO_PKG_VERSION"))?;
        writeln!(out, "# command: {}", self.record.invocation())?;
        writeln!(out, "# output: {}", self.record.outputs.join(", "))?;
        writeln!(out, "# units: {UNITS}")?;
        for note in &self.notes {
            writeln!(out, "# note: {note}")?;
        }
        writeln!(out, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&x| format_number(x)).collect();
            writeln!(out, "{}", cells.join(","))?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let mut meta = self.record.to_json();
        meta["notes"] = json!(self.notes);
        let rows: Vec<Value> =
            self.rows.iter().map(|r| Value::Array(r.iter().map(|&x| json_number(x)).collect())).collect();
        json!({ "meta": meta, "data": { "columns": self.columns, "rows": rows } })
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => write_json(&self.to_json(), out),
        }
    }
}

pub fn write_json(value: &Value, out: &mut dyn Write) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

/// Open `path` for writing, or stdout when absent.
pub fn open_sink(path: Option<&PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}
