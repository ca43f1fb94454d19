//! Shared output formatting: round-trippable floats and CSV assembly.

/// 17 significant digits; parses back to the identical double.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub struct CsvBuilder {
    text: String,
    columns: usize,
}

impl CsvBuilder {
    pub fn new(header: &[&str]) -> Self {
        CsvBuilder {
            text: format!("{}\n", header.join(",")),
            columns: header.len(),
        }
    }

    /// Row of numeric cells plus an empty error column. Rows containing a
    /// non-finite value are flagged instead of silently emitted.
    pub fn row(&mut self, values: &[f64]) {
        debug_assert_eq!(values.len() + 1, self.columns);
        if values.iter().any(|v| !v.is_finite()) {
            self.flagged_row(values, "non-finite value");
            return;
        }
        let mut cells: Vec<String> = values.iter().map(|&v| num(v)).collect();
        cells.push(String::new());
        self.text.push_str(&cells.join(","));
        self.text.push('\n');
    }

    /// Row that carries an error flag: `head` numeric cells, blanks for the
    /// rest, message in the final column.
    pub fn error_row(&mut self, head: &[f64], message: &str) {
        let mut cells: Vec<String> = head.iter().map(|&v| num(v)).collect();
        while cells.len() + 1 < self.columns {
            cells.push(String::new());
        }
        cells.push(sanitize(message));
        self.text.push_str(&cells.join(","));
        self.text.push('\n');
    }

    /// Full numeric row that still carries an error flag.
    pub fn flagged_row(&mut self, values: &[f64], message: &str) {
        debug_assert_eq!(values.len() + 1, self.columns);
        let mut cells: Vec<String> = values.iter().map(|&v| num(v)).collect();
        cells.push(sanitize(message));
        self.text.push_str(&cells.join(","));
        self.text.push('\n');
    }

    /// Row with explicit string cells (for non-numeric columns such as the
    /// semicolon-joined root list).
    pub fn raw_row(&mut self, cells: &[String]) {
        debug_assert_eq!(cells.len(), self.columns);
        self.text.push_str(&cells.join(","));
        self.text.push('\n');
    }

    pub fn finish(self) -> String {
        self.text
    }
}

/// Keep error messages on one CSV cell.
pub fn sanitize(message: &str) -> String {
    message.replace([',', '\n'], ";")
}
