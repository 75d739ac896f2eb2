use std::io::Write;

use serde::Serialize;
use thinex_core::function::fmt_f64;

use crate::error::CliError;

/// One failed comparison or certificate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub check: String,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub enum Body {
    Csv { comments: Vec<String>, header: Vec<&'static str>, rows: Vec<Vec<String>> },
    Json(String),
}

#[derive(Debug, Clone)]
pub struct Report {
    pub body: Body,
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn csv(comment: String, header: Vec<&'static str>) -> Self {
        Report { body: Body::Csv { comments: vec![comment], header, rows: Vec::new() }, failures: Vec::new() }
    }

    pub fn json<T: Serialize>(value: &T) -> Result<Self, CliError> {
        let mut text = serde_json::to_string_pretty(value)
            .map_err(|e| CliError::Io(std::io::Error::other(e)))?;
        text.push('\n');
        Ok(Report { body: Body::Json(text), failures: Vec::new() })
    }

    pub fn comment(&mut self, line: String) {
        if let Body::Csv { comments, .. } = &mut self.body {
            comments.push(line);
        }
    }

    pub fn row(&mut self, row: Vec<String>) {
        if let Body::Csv { rows, header, .. } = &mut self.body {
            debug_assert_eq!(row.len(), header.len());
            rows.push(row);
        }
    }

    pub fn fail(&mut self, check: impl Into<String>, detail: impl Into<String>) {
        self.failures.push(Failure { check: check.into(), detail: detail.into() });
    }

    pub fn render(&self) -> Result<Vec<u8>, CliError> {
        match &self.body {
            Body::Json(text) => Ok(text.clone().into_bytes()),
            Body::Csv { comments, header, rows } => {
                let mut out = Vec::new();
                for c in comments {
                    writeln!(out, "{c}")?;
                }
                let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(&mut out);
                let io = |e: csv::Error| CliError::Io(std::io::Error::other(e));
                w.write_record(header).map_err(io)?;
                for r in rows {
                    w.write_record(r).map_err(io)?;
                }
                w.flush()?;
                drop(w);
                Ok(out)
            }
        }
    }
}

pub fn float(v: f64) -> String {
    fmt_f64(v)
}

pub fn opt_float(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

pub fn rel_diff(a: f64, b: f64) -> f64 {
    thinex_core::tolerance::rel_diff(a, b)
}

pub fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(";")
}
