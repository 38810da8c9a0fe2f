//! Deterministic text/CSV report assembly.

use qlh_core::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Csv,
}

/// Collects report lines and remembers whether any check failed. In CSV mode
/// tables are emitted as CSV and every other line as a `#` comment.
pub struct Report {
    format: Format,
    out: String,
    failed: bool,
}

impl Report {
    pub fn new(format: Format) -> Self {
        Report {
            format,
            out: String::new(),
            failed: false,
        }
    }

    pub fn line(&mut self, text: impl AsRef<str>) {
        match self.format {
            Format::Text => self.out.push_str(text.as_ref()),
            Format::Csv => {
                self.out.push_str("# ");
                self.out.push_str(text.as_ref());
            }
        }
        self.out.push('\n');
    }

    pub fn section(&mut self, title: &str) {
        self.line(format!("== {title}"));
    }

    pub fn check(&mut self, ok: bool, what: impl AsRef<str>) {
        self.failed |= !ok;
        self.line(format!(
            "{} {}",
            if ok { "ok  " } else { "FAIL" },
            what.as_ref()
        ));
    }

    pub fn fail(&mut self, what: impl AsRef<str>) {
        self.check(false, what);
    }

    /// A table of exact values keyed by integer indices. Text rows read
    /// `key = i, ...: value`; CSV rows split the value into numerator and
    /// denominator columns.
    pub fn table(&mut self, title: &str, keys: &[&str], rows: &[(Vec<i64>, Scalar)]) {
        self.line(title);
        match self.format {
            Format::Text => {
                for (idx, v) in rows {
                    let key: Vec<String> = keys
                        .iter()
                        .zip(idx)
                        .map(|(k, i)| format!("{k} = {i}"))
                        .collect();
                    self.out.push_str(&format!("  {}: {v}\n", key.join(", ")));
                }
            }
            Format::Csv => {
                self.out
                    .push_str(&format!("{},numerator,denominator\n", keys.join(",")));
                for (idx, v) in rows {
                    let key: Vec<String> = idx.iter().map(ToString::to_string).collect();
                    self.out
                        .push_str(&format!("{},{},{}\n", key.join(","), v.numer(), v.denom()));
                }
            }
        }
    }

    pub fn format(&self) -> Format {
        self.format
    }

    pub fn failed(&self) -> bool {
        self.failed
    }

    pub fn into_string(self) -> String {
        self.out
    }
}
