use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Tsv,
}

/// Ordered key/value lines plus optional tables, rendered at the end so
/// output order never depends on thread scheduling.
#[derive(Debug, Default, Clone)]
pub struct Report {
    lines: Vec<(String, String)>,
    table: Option<(Vec<String>, Vec<Vec<String>>)>,
    failures: usize,
    raw: String,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn field(&mut self, key: impl Into<String>, value: impl ToString) {
        self.lines.push((key.into(), value.to_string()));
    }

    /// Records a pass/fail line; returns `ok`.
    pub fn check(&mut self, key: impl Into<String>, ok: bool) -> bool {
        if !ok {
            self.failures += 1;
        }
        self.field(key, if ok { "PASS" } else { "FAIL" });
        ok
    }

    pub fn failures(&self) -> usize {
        self.failures
    }

    pub fn set_table(&mut self, header: Vec<String>, rows: Vec<Vec<String>>) {
        self.table = Some((header, rows));
    }

    /// Verbatim text emitted after the fields.
    pub fn raw(&mut self, text: &str) {
        self.raw.push_str(text);
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.lines.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Text => {
                if let Some((header, rows)) = &self.table {
                    let widths: Vec<usize> = (0..header.len())
                        .map(|c| {
                            rows.iter()
                                .map(|r| r[c].len())
                                .chain([header[c].len()])
                                .max()
                                .unwrap_or(0)
                        })
                        .collect();
                    for row in std::iter::once(header).chain(rows) {
                        let cells: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                        out.push_str(cells.join("  ").trim_end());
                        out.push('\n');
                    }
                }
                for (k, v) in &self.lines {
                    out.push_str(&format!("{k}: {v}\n"));
                }
            }
            Format::Tsv => {
                if let Some((header, rows)) = &self.table {
                    for row in std::iter::once(header).chain(rows) {
                        out.push_str(&row.join("\t"));
                        out.push('\n');
                    }
                }
                for (k, v) in &self.lines {
                    out.push_str(&format!("{k}\t{v}\n"));
                }
            }
        }
        out.push_str(&self.raw);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_both_layouts() {
        let mut r = Report::new();
        r.field("purity", "1/8");
        assert!(!r.check("strength", false));
        r.set_table(vec!["a".into(), "bb".into()], vec![vec!["xyz".into(), "1".into()]]);
        assert_eq!(r.failures(), 1);
        assert_eq!(r.render(Format::Text), "a    bb\nxyz  1\npurity: 1/8\nstrength: FAIL\n");
        assert_eq!(r.render(Format::Tsv), "a\tbb\nxyz\t1\npurity\t1/8\nstrength\tFAIL\n");
        assert_eq!(r.get("purity"), Some("1/8"));
    }
}
