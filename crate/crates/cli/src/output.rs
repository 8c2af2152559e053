//! Tables and their CSV/JSON emission.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use num_complex::Complex64;
use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::Failure;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(i128),
    Real(f64),
    Complex(Complex64),
    Bool(bool),
    Text(String),
    Null,
}

impl From<u64> for Value {
    fn from(v: u64) -> Self {
        Value::Int(v as i128)
    }
}

impl From<u32> for Value {
    fn from(v: u32) -> Self {
        Value::Int(v as i128)
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Int(v as i128)
    }
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::Int(v as i128)
    }
}

impl From<i128> for Value {
    fn from(v: i128) -> Self {
        Value::Int(v)
    }
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Real(v)
    }
}

impl From<Complex64> for Value {
    fn from(v: Complex64) -> Self {
        Value::Complex(v)
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Text(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_string())
    }
}

impl<T: Into<Value>> From<Option<T>> for Value {
    fn from(v: Option<T>) -> Self {
        v.map_or(Value::Null, Into::into)
    }
}

/// 17 significant digits, enough to round-trip any double.
pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

/// `re+imi`, with the sign of the imaginary part taking the place of `+`.
pub fn format_complex(z: Complex64) -> String {
    let im = format_real(z.im);
    if im.starts_with('-') {
        format!("{}{im}i", format_real(z.re))
    } else {
        format!("{}+{im}i", format_real(z.re))
    }
}

impl Value {
    fn to_field(&self) -> String {
        match self {
            Value::Int(v) => v.to_string(),
            Value::Real(x) => format_real(*x),
            Value::Complex(z) => format_complex(*z),
            Value::Bool(b) => b.to_string(),
            Value::Text(s) => s.clone(),
            Value::Null => String::new(),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Value::Int(v) => s.serialize_i128(*v),
            Value::Real(x) if x.is_finite() => s.serialize_f64(*x),
            Value::Real(x) => s.serialize_str(&format_real(*x)),
            Value::Complex(z) => s.serialize_str(&format_complex(*z)),
            Value::Bool(b) => s.serialize_bool(*b),
            Value::Text(t) => s.serialize_str(t),
            Value::Null => s.serialize_unit(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

struct Row<'a> {
    columns: &'a [&'static str],
    values: &'a [Value],
}

impl Serialize for Row<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.columns.len()))?;
        for (k, v) in self.columns.iter().zip(self.values) {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub fn write_table<W: Write>(table: &Table, format: Format, out: W) -> io::Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .quote_style(csv::QuoteStyle::NonNumeric)
                .from_writer(out);
            w.write_record(&table.columns)?;
            for row in &table.rows {
                w.write_record(row.iter().map(Value::to_field))?;
            }
            w.flush()
        }
        Format::Json => {
            let mut out = io::BufWriter::new(out);
            for row in &table.rows {
                serde_json::to_writer(
                    &mut out,
                    &Row {
                        columns: &table.columns,
                        values: row,
                    },
                )?;
                out.write_all(b"\n")?;
            }
            out.flush()
        }
    }
}

/// Write to `path`, or to standard output when no path is given.
pub fn emit(table: &Table, format: Format, path: Option<&Path>) -> Result<(), Failure> {
    let result = match path {
        Some(p) => File::create(p).and_then(|f| write_table(table, format, f)),
        None => write_table(table, format, io::stdout().lock()),
    };
    result.map_err(|e| {
        let place = path.map_or("standard output".to_string(), |p| p.display().to_string());
        Failure::Io(format!("{place}: {e}"))
    })
}
