//! Output envelope shared by every subcommand: named tables of strings,
//! wrapped with the run configuration and engine version. Rendering is
//! fully deterministic, so reruns with the same configuration produce the
//! same bytes in every format.

use clap::ValueEnum;
use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum OutputFormat {
    /// Aligned columns for reading.
    Text,
    /// Comma-separated values with "#" comment headers.
    Csv,
    /// One pretty-printed JSON document.
    Json,
}

impl OutputFormat {
    pub fn name(self) -> &'static str {
        match self {
            OutputFormat::Text => "text",
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

/// The configuration a run was invoked with, echoed in every output.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub model: String,
    pub dim: usize,
    pub order: usize,
    pub workers: Option<usize>,
    pub cache_dir: String,
    pub format: String,
    pub ceiling: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suites: Option<Vec<String>>,
}

impl RunConfig {
    fn summary(&self) -> String {
        let mut parts = vec![
            format!("command={}", self.command),
            format!("model={}", self.model),
            format!("dim={}", self.dim),
            format!("order={}", self.order),
        ];
        if let Some(w) = self.workers {
            parts.push(format!("workers={w}"));
        }
        parts.push(format!("cache_dir={}", self.cache_dir));
        parts.push(format!("format={}", self.format));
        parts.push(format!("ceiling={}", self.ceiling));
        if let Some(dims) = &self.dims {
            let joined: Vec<String> = dims.iter().map(usize::to_string).collect();
            parts.push(format!("dims={}", joined.join(",")));
        }
        if let Some(suites) = &self.suites {
            parts.push(format!("suites={}", suites.join(",")));
        }
        parts.join(" ")
    }
}

/// One named table of string cells.
#[derive(Clone, Debug, Serialize)]
pub struct Table {
    pub name: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, headers: &[&str]) -> Table {
        Table {
            name: name.to_string(),
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }
}

/// A complete command result.
#[derive(Debug, Serialize)]
pub struct Report {
    pub engine_version: &'static str,
    pub config: RunConfig,
    pub tables: Vec<Table>,
}

impl Report {
    pub fn new(config: RunConfig, tables: Vec<Table>) -> Report {
        Report {
            engine_version: latan_core::ENGINE_VERSION,
            config,
            tables,
        }
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => self.render_text(),
            OutputFormat::Csv => self.render_csv(),
            OutputFormat::Json => {
                let mut s =
                    serde_json::to_string_pretty(self).expect("report serialization is infallible");
                s.push('\n');
                s
            }
        }
    }

    fn comment_lines(&self) -> String {
        format!(
            "# latan {}\n# {}\n",
            self.engine_version,
            self.config.summary()
        )
    }

    fn render_text(&self) -> String {
        let mut out = self.comment_lines();
        for table in &self.tables {
            out.push('\n');
            out.push_str(&format!("## {}\n", table.name));
            let mut widths: Vec<usize> = table.headers.iter().map(String::len).collect();
            for row in &table.rows {
                for (i, cell) in row.iter().enumerate() {
                    widths[i] = widths[i].max(cell.len());
                }
            }
            let write_row = |out: &mut String, cells: &[String]| {
                let mut line = String::new();
                for (i, cell) in cells.iter().enumerate() {
                    if i + 1 == cells.len() {
                        line.push_str(cell);
                    } else {
                        line.push_str(&format!("{cell:<width$}  ", width = widths[i]));
                    }
                }
                out.push_str(line.trim_end());
                out.push('\n');
            };
            write_row(&mut out, &table.headers);
            for row in &table.rows {
                write_row(&mut out, row);
            }
        }
        out
    }

    fn render_csv(&self) -> String {
        let mut out = self.comment_lines();
        for table in &self.tables {
            out.push('\n');
            out.push_str(&format!("# table={}\n", table.name));
            let write_row = |out: &mut String, cells: &[String]| {
                let escaped: Vec<String> = cells.iter().map(|c| csv_escape(c)).collect();
                out.push_str(&escaped.join(","));
                out.push('\n');
            };
            write_row(&mut out, &table.headers);
            for row in &table.rows {
                write_row(&mut out, row);
            }
        }
        out
    }
}

fn csv_escape(cell: &str) -> String {
    if cell.contains(',') || cell.contains('"') || cell.contains('\n') {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}
