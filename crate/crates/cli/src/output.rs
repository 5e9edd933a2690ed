//! Output formats and destinations.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::ValueEnum;
use serde::Serialize;

use sl2branch::report::MultiplicityReport;

use crate::{CliError, OutputArgs};

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

pub struct Emitter {
    format: Format,
    out: Option<PathBuf>,
}

impl Emitter {
    pub fn new(args: OutputArgs) -> Self {
        Emitter {
            format: args.format,
            out: args.out,
        }
    }

    pub fn format(&self) -> Format {
        self.format
    }

    pub fn json<T: Serialize>(&self, value: &T) -> Result<(), CliError> {
        let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
        text.push('\n');
        self.text(&text)
    }

    pub fn text(&self, text: &str) -> Result<(), CliError> {
        match &self.out {
            Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
            None => {
                use std::io::Write;
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(text.as_bytes())?;
                stdout.flush()?;
                Ok(())
            }
        }
    }
}

/// One line per lattice point: coordinates, value, chamber.
pub fn records_csv(report: &MultiplicityReport) -> String {
    let mut text = String::new();
    let names: Vec<&str> = report.window.iter().map(|a| a.name.as_str()).collect();
    let _ = writeln!(text, "{},value,chamber", names.join(","));
    for r in &report.records {
        let coords: Vec<String> = r.point.iter().map(i64::to_string).collect();
        let _ = writeln!(text, "{},{},{}", coords.join(","), r.value, r.chamber);
    }
    text
}

/// Grid with lambda' across (ascending) and lambda'' down (descending); cells are `chamber:value`.
pub fn chamber_grid_csv(report: &MultiplicityReport, max: i64) -> String {
    let width = max as usize;
    let mut cells = vec![vec![String::new(); width]; width];
    for r in &report.records {
        let (a, b) = ((r.point[0] - 1) as usize, (r.point[1] - 1) as usize);
        cells[b][a] = format!("{}:{}", r.chamber, r.value);
    }
    let mut text = String::from("lambda''\\lambda'");
    for a in 1..=max {
        let _ = write!(text, ",{a}");
    }
    text.push('\n');
    for b in (1..=max).rev() {
        let _ = write!(text, "{b}");
        for cell in &cells[(b - 1) as usize] {
            let _ = write!(text, ",{cell}");
        }
        text.push('\n');
    }
    text
}
