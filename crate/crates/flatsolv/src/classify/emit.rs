//! Table emission (markdown, TSV, JSON) and diffing against golden columns.

use std::fmt;
use std::str::FromStr;

use crate::classify::{ClassificationTable, SolvmanifoldRecord};
use crate::error::{Error, Result};
use crate::intlinalg::FinAbGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Markdown,
    Tsv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "markdown" | "md" => Ok(OutputFormat::Markdown),
            "tsv" => Ok(OutputFormat::Tsv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::UnknownFormat(other.into())),
        }
    }
}

fn phi_cell(r: &SolvmanifoldRecord) -> String {
    r.phi.as_ref().map(|p| p.label()).unwrap_or_default()
}

/// Renders a table in the requested format, rows in their stored
/// (paper-table) order. Output is fully deterministic.
pub fn emit_table(table: &ClassificationTable, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Tsv => {
            let mut out = String::from("label\tphi\tholonomy\tabelianization\tb1\tprovenance\n");
            for r in &table.rows {
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\n",
                    r.label,
                    phi_cell(r),
                    r.holonomy,
                    r.abelianization,
                    r.betti1,
                    r.provenance
                ));
            }
            Ok(out)
        }
        OutputFormat::Markdown => {
            let mut out = String::from(
                "| label | phi | holonomy | abelianization | b1 | provenance |\n|---|---|---|---|---|---|\n",
            );
            for r in &table.rows {
                out.push_str(&format!(
                    "| {} | {} | {} | {} | {} | {} |\n",
                    r.label,
                    phi_cell(r),
                    r.holonomy,
                    r.abelianization,
                    r.betti1,
                    r.provenance
                ));
            }
            Ok(out)
        }
        OutputFormat::Json => Ok(serde_json::to_string_pretty(table)? + "\n"),
    }
}

/// Reference values for one row: the transcribed holonomy/abelianization
/// columns.
#[derive(Clone, Debug)]
pub struct GoldenRow {
    pub label: String,
    pub holonomy: FinAbGroup,
    pub abelianization: FinAbGroup,
}

#[derive(Clone, Debug)]
pub enum RowDiff {
    Missing { label: String },
    Extra { label: String },
    Holonomy { label: String, computed: FinAbGroup, golden: FinAbGroup },
    Abelianization { label: String, computed: FinAbGroup, golden: FinAbGroup },
}

#[derive(Clone, Debug, Default)]
pub struct TableDiff {
    pub rows: Vec<RowDiff>,
}

impl TableDiff {
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

impl fmt::Display for TableDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return write!(f, "no differences");
        }
        for d in &self.rows {
            match d {
                RowDiff::Missing { label } => writeln!(f, "missing row: {label}")?,
                RowDiff::Extra { label } => writeln!(f, "extra row: {label}")?,
                RowDiff::Holonomy { label, computed, golden } => {
                    writeln!(f, "{label}: holonomy {computed} != {golden}")?
                }
                RowDiff::Abelianization { label, computed, golden } => {
                    writeln!(f, "{label}: abelianization {computed} != {golden}")?
                }
            }
        }
        Ok(())
    }
}

/// Per-row comparison of computed and golden (holonomy, abelianization)
/// columns, keyed by label.
pub fn diff_table(computed: &ClassificationTable, golden: &[GoldenRow]) -> TableDiff {
    let mut diff = TableDiff::default();
    for g in golden {
        match computed.rows.iter().find(|r| r.label == g.label) {
            None => diff.rows.push(RowDiff::Missing { label: g.label.clone() }),
            Some(r) => {
                if r.holonomy != g.holonomy {
                    diff.rows.push(RowDiff::Holonomy {
                        label: g.label.clone(),
                        computed: r.holonomy.clone(),
                        golden: g.holonomy.clone(),
                    });
                }
                if r.abelianization != g.abelianization {
                    diff.rows.push(RowDiff::Abelianization {
                        label: g.label.clone(),
                        computed: r.abelianization.clone(),
                        golden: g.abelianization.clone(),
                    });
                }
            }
        }
    }
    for r in &computed.rows {
        if !golden.iter().any(|g| g.label == r.label) {
            diff.rows.push(RowDiff::Extra { label: r.label.clone() });
        }
    }
    diff
}
