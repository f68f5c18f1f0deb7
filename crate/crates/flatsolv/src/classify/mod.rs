//! The dimension-6 classification pipelines: angle case enumeration, the
//! almost abelian table (48 classes), the splittable non almost abelian
//! table (20 classes plus 13 parity-rejected candidates), and table
//! emission/diffing against the shipped fixtures.

pub mod almost_abelian;
pub mod cases;
pub mod emit;
pub mod fixtures;
pub mod splittable;

use serde::Serialize;

use crate::cyclotomic::RotationSpec;
use crate::intlinalg::FinAbGroup;
use crate::solvgroups::SigmaGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    AlmostAbelian,
    Splittable,
}

/// One classified solvmanifold: the lattice group with its invariants.
#[derive(Clone, Debug, Serialize)]
pub struct SolvmanifoldRecord {
    pub label: String,
    pub family: Family,
    /// Angle case ("1".."4") for almost abelian rows.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi: Option<RotationSpec>,
    pub sigma: SigmaGroup,
    pub holonomy: FinAbGroup,
    pub abelianization: FinAbGroup,
    pub betti1: usize,
    pub provenance: String,
    pub reconstructed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationTable {
    pub family: Family,
    pub rows: Vec<SolvmanifoldRecord>,
}

impl ClassificationTable {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

pub use almost_abelian::{classify_almost_abelian_dim6, AlmostAbelianClassification, Diagnostics41};
pub use cases::{angle_cases_dim6, AngleCase};
pub use emit::{diff_table, emit_table, GoldenRow, OutputFormat, TableDiff};
pub use fixtures::FixtureSet;
pub use splittable::{classify_splittable_dim6, RejectedRecord, SplittableClassification};
