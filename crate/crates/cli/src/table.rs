//! Column-oriented result tables with deterministic CSV and JSON encodings.

use serde::ser::{Serialize, SerializeSeq, Serializer};

/// One cell of a result table.
#[derive(Debug, Clone)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Text(String),
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Cell {
        Cell::Text(s.into())
    }

    /// CSV rendering: integers plain, small magnitudes in scientific
    /// notation, text quoted only when it contains a delimiter.
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Num(v) => format_num(*v),
            Cell::Text(s) => {
                if s.contains([',', '"', '\n']) {
                    format!("\"{}\"", s.replace('"', "\"\""))
                } else {
                    s.clone()
                }
            }
        }
    }
}

fn format_num(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else if !v.is_finite() {
        if v.is_nan() {
            "nan".to_string()
        } else if v > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        }
    } else if v.abs() < 1e-3 {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Int(v) => serializer.serialize_i64(*v),
            Cell::Num(v) if v.is_finite() => serializer.serialize_f64(*v),
            Cell::Num(v) => serializer.serialize_str(&format_num(*v)),
            Cell::Text(s) => serializer.serialize_str(s),
        }
    }
}

/// A fixed-schema table of experiment results.
#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Table {
        Table { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width mismatch");
        self.rows.push(row);
    }

    /// CSV with a `#` preamble (tool version and the resolved config as one
    /// JSON line), a header row, then data rows. No timestamps: identical
    /// runs produce identical bytes.
    pub fn to_csv(&self, preamble: &[String]) -> String {
        let mut out = String::new();
        for line in preamble {
            out.push_str("# ");
            out.push_str(line);
            out.push('\n');
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

impl Serialize for Table {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(serde::Serialize)]
        struct Repr<'a> {
            columns: &'a [&'static str],
            rows: Rows<'a>,
        }
        struct Rows<'a>(&'a [Vec<Cell>]);
        impl Serialize for Rows<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
                for row in self.0 {
                    seq.serialize_element(row)?;
                }
                seq.end()
            }
        }
        Repr { columns: &self.columns, rows: Rows(&self.rows) }.serialize(serializer)
    }
}
