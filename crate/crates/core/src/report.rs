//! Plain-text CSV documents with `# key = value` metadata headers.
//!
//! Floats are rendered with Rust's shortest round-trip formatting and
//! no timestamps or machine identifiers are ever included, so a rerun
//! with the same inputs produces byte-identical output.

/// A CSV table: metadata comment lines, a header, and string rows.
#[derive(Debug, Clone, Default)]
pub struct CsvDoc {
    meta: Vec<(String, String)>,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl CsvDoc {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            meta: Vec::new(),
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push_meta(&mut self, key: &str, value: impl std::fmt::Display) {
        self.meta.push((key.to_string(), value.to_string()));
    }

    /// Prepend metadata (used by callers that add run context around a
    /// table built elsewhere).
    pub fn prepend_meta(&mut self, entries: Vec<(String, String)>) {
        let mut merged = entries;
        merged.append(&mut self.meta);
        self.meta = merged;
    }

    pub fn push_row<S: Into<String>>(&mut self, cells: impl IntoIterator<Item = S>) {
        let row: Vec<String> = cells.into_iter().map(Into::into).collect();
        debug_assert_eq!(row.len(), self.header.len(), "row width must match the header");
        debug_assert!(
            row.iter().all(|c| !c.contains(',') && !c.contains('\n')),
            "cells must not need quoting"
        );
        self.rows.push(row);
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            out.push_str("# ");
            out.push_str(k);
            out.push_str(" = ");
            out.push_str(v);
            out.push('\n');
        }
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Shortest round-trip decimal form of a float (what `{}` prints).
pub fn fmt(v: f64) -> String {
    format!("{v}")
}
