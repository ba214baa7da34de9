use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

/// One pass/fail line of a report.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckLine {
    pub name: String,
    pub pass: bool,
    /// Failing is the documented outcome (e.g. a non-algebraic map).
    pub expected_fail: bool,
}

impl CheckLine {
    pub fn new(name: impl Into<String>, pass: bool) -> Self {
        Self {
            name: name.into(),
            pass,
            expected_fail: false,
        }
    }

    pub fn expecting_failure(mut self, yes: bool) -> Self {
        self.expected_fail = yes && !self.pass;
        self
    }

    pub fn is_failure(&self) -> bool {
        !self.pass && !self.expected_fail
    }

    pub fn status(&self) -> &'static str {
        match (self.pass, self.expected_fail) {
            (true, _) => "PASS",
            (false, true) => "FAIL (expected)",
            (false, false) => "FAIL",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub table: String,
    pub data: serde_json::Map<String, Value>,
    pub checks: Vec<CheckLine>,
}

impl Report {
    pub fn line(&mut self, s: impl AsRef<str>) {
        self.table.push_str(s.as_ref());
        self.table.push('\n');
    }

    pub fn set<T: Serialize>(&mut self, key: &str, value: T) {
        self.data.insert(
            key.to_string(),
            serde_json::to_value(value).expect("report values serialize"),
        );
    }

    pub fn check(&mut self, c: CheckLine) {
        self.line(format!("{}: {}", c.name, c.status()));
        self.checks.push(c);
    }

    pub fn table_rows(&mut self, headers: &[&str], rows: &[Vec<String>]) {
        self.table.push_str(&format_table(headers, rows));
    }

    pub fn failures(&self) -> Vec<&CheckLine> {
        self.checks.iter().filter(|c| c.is_failure()).collect()
    }

    pub fn to_json(&self) -> Value {
        let mut data = self.data.clone();
        if !self.checks.is_empty() {
            data.insert(
                "checks".into(),
                serde_json::to_value(&self.checks).expect("checks serialize"),
            );
        }
        Value::Object(data)
    }
}

/// Right-aligned fixed-width columns.
pub fn format_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let fmt_row = |out: &mut String, cells: &[String]| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{:>width$}", c, width = *w))
            .collect();
        let _ = writeln!(out, "{}", parts.join("  "));
    };
    fmt_row(
        &mut out,
        &headers.iter().map(|h| h.to_string()).collect::<Vec<_>>(),
    );
    for row in rows {
        fmt_row(&mut out, row);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn columns_line_up() {
        let t = format_table(&["degree", "rank"], &[vec!["0".into(), "12".into()]]);
        assert_eq!(t, "degree  rank\n     0    12\n");
    }

    #[test]
    fn expected_failures_do_not_count() {
        let c = CheckLine::new("x", false).expecting_failure(true);
        assert!(!c.is_failure());
        assert_eq!(c.status(), "FAIL (expected)");
        let c = CheckLine::new("x", true).expecting_failure(true);
        assert!(!c.expected_fail);
    }
}
