//! Plain-text and CSV report assembly.
//!
//! Every report opens with `#` comment lines naming the tool version and the
//! resolved configuration, so a report can be regenerated from its header.
//! All data formats read by the tool skip `#` lines, which lets reports that
//! carry a DFA or an example set be fed straight back in.

use std::fmt::Write;

pub struct Report {
    csv: bool,
    out: String,
}

impl Report {
    pub fn new(csv: bool, config: &str) -> Self {
        let mut out = String::new();
        let _ = writeln!(out, "# teachdim {}", env!("CARGO_PKG_VERSION"));
        for line in config.lines() {
            let _ = writeln!(out, "# {line}");
        }
        Report { csv, out }
    }

    pub fn comment(&mut self, text: impl AsRef<str>) {
        for line in text.as_ref().lines() {
            let _ = writeln!(self.out, "# {line}");
        }
    }

    /// A `key value` line, or `key,value` in CSV mode.
    pub fn field(&mut self, key: &str, value: impl std::fmt::Display) {
        let sep = if self.csv { "," } else { " " };
        let _ = writeln!(self.out, "{key}{sep}{value}");
    }

    /// Raw text copied through unchanged.
    pub fn raw(&mut self, text: impl AsRef<str>) {
        self.out.push_str(text.as_ref());
        if !self.out.ends_with('\n') {
            self.out.push('\n');
        }
    }

    /// A table whose columns are right-aligned in text mode.
    pub fn table(&mut self, headers: &[&str], rows: &[Vec<String>]) {
        if self.csv {
            let _ = writeln!(self.out, "{}", headers.join(","));
            for row in rows {
                let _ = writeln!(self.out, "{}", row.join(","));
            }
            return;
        }
        let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
        for row in rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let line = |cells: &mut dyn Iterator<Item = &str>| {
            cells
                .zip(&widths)
                .map(|(c, &w)| format!("{c:>w$}"))
                .collect::<Vec<_>>()
                .join(" ")
        };
        let head = line(&mut headers.iter().copied());
        let _ = writeln!(self.out, "# {}", head.trim_start());
        for row in rows {
            let _ = writeln!(self.out, "{}", line(&mut row.iter().map(String::as_str)));
        }
    }

    pub fn finish(self) -> String {
        self.out
    }
}
