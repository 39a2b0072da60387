//! Pinned CSV dialect: comma separated, no quoting, `'\n'` line endings,
//! floats in Rust's shortest-exponent form with 17 significant digits.

/// `x` with 17 significant digits, e.g. `7.6519768655796661e-1`. Parsing the
/// string back gives `x` exactly, and re-rendering gives the same bytes.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone)]
pub struct CsvReport {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl CsvReport {
    pub fn new(header: &[&'static str]) -> Self {
        Self { header: header.to_vec(), rows: Vec::new() }
    }

    /// Panics if the arity differs from the header; a schema bug, not input.
    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.header.len(), "CSV row arity does not match the header");
        self.rows.push(row);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}
