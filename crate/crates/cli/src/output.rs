use std::io::Write;

use clap::ValueEnum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// Rows shared by the csv and table renderings.
#[derive(Debug, Default)]
pub struct Table {
    pub notes: Vec<String>,
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&'static str]) -> Self {
        Table { notes: Vec::new(), headers: headers.to_vec(), rows: Vec::new() }
    }

    pub fn note(mut self, line: impl Into<String>) -> Self {
        self.notes.push(line.into());
        self
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    fn write_table(&self, out: &mut impl Write) -> std::io::Result<()> {
        for line in &self.notes {
            writeln!(out, "{line}")?;
        }
        if self.headers.is_empty() {
            return Ok(());
        }
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.len()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: Vec<&str>| {
            let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            padded.join("  ").trim_end().to_string()
        };
        writeln!(out, "{}", line(self.headers.clone()))?;
        let rules: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        writeln!(out, "{}", line(rules.iter().map(String::as_str).collect()))?;
        for row in &self.rows {
            writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
        }
        Ok(())
    }

    fn write_csv(&self, out: impl Write) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.headers)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// What a command produced, before rendering.
pub struct Output {
    pub json: String,
    pub table: Table,
    /// A stated identity failed to hold.
    pub mismatch: bool,
}

impl Output {
    pub fn new(json: String, table: Table) -> Self {
        Output { json, table, mismatch: false }
    }

    pub fn mismatch(mut self, mismatch: bool) -> Self {
        self.mismatch = mismatch;
        self
    }

    pub fn render(&self, format: Format, mut out: impl Write) -> anyhow::Result<()> {
        match format {
            Format::Json => writeln!(out, "{}", self.json)?,
            Format::Table => self.table.write_table(&mut out)?,
            Format::Csv => self.table.write_csv(out)?,
        }
        Ok(())
    }
}
