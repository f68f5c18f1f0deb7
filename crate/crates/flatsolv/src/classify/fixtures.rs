//! Fixture files: the classification tables, the rejected generator pairs,
//! the explicit equivalence witnesses and the order-37 matrix.
//!
//! The fixture directory is resolved from `FLATSOLV_FIXTURES`, then from
//! `./fixtures` upwards, then relative to the crate manifest.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::cyclotomic::RotationSpec;
use crate::error::{Error, Result};
use crate::intlinalg::{FinAbGroup, IntMatrix};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AaFixtureRow {
    pub label: String,
    pub case: String,
    pub phi: RotationSpec,
    pub generator: IntMatrix,
    pub holonomy: FinAbGroup,
    pub abelianization: FinAbGroup,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SplittableFixtureRow {
    pub label: String,
    pub angles: String,
    pub gen_a: IntMatrix,
    pub gen_b: IntMatrix,
    pub holonomy: FinAbGroup,
    pub abelianization: FinAbGroup,
    #[serde(default)]
    pub reconstructed: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RejectedPair {
    pub label: String,
    pub gen_a: IntMatrix,
    pub gen_b: IntMatrix,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WitnessPair {
    #[serde(rename = "P")]
    pub p: IntMatrix,
    #[serde(rename = "Q")]
    pub q: IntMatrix,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WitnessEntry {
    #[serde(rename = "A")]
    pub a: IntMatrix,
    #[serde(rename = "B")]
    pub b: IntMatrix,
    pub pairs: Vec<WitnessPair>,
}

#[derive(Deserialize)]
struct TableFile<R> {
    #[allow(dead_code)]
    table: String,
    rows: Vec<R>,
}

#[derive(Deserialize)]
struct RejectedFile {
    pairs: Vec<RejectedPair>,
}

#[derive(Clone, Debug)]
pub struct FixtureSet {
    dir: PathBuf,
}

impl FixtureSet {
    pub fn at(dir: impl Into<PathBuf>) -> Self {
        FixtureSet { dir: dir.into() }
    }

    /// Resolve the fixture directory.
    pub fn locate() -> Result<Self> {
        if let Ok(dir) = std::env::var("FLATSOLV_FIXTURES") {
            return Ok(FixtureSet::at(dir));
        }
        let candidates = [
            "fixtures",
            "../fixtures",
            "../../fixtures",
            concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures"),
        ];
        for cand in candidates {
            if Path::new(cand).join("table1.json").exists() {
                return Ok(FixtureSet::at(cand));
            }
        }
        Err(Error::Fixture {
            file: "fixtures/".into(),
            message: "no fixture directory found; set FLATSOLV_FIXTURES".into(),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn read<T: serde::de::DeserializeOwned>(&self, name: &str) -> Result<T> {
        let path = self.dir.join(name);
        let text = std::fs::read_to_string(&path).map_err(|e| Error::Fixture {
            file: path.display().to_string(),
            message: e.to_string(),
        })?;
        serde_json::from_str(&text).map_err(|e| Error::Fixture {
            file: path.display().to_string(),
            message: e.to_string(),
        })
    }

    pub fn table1(&self) -> Result<Vec<AaFixtureRow>> {
        Ok(self.read::<TableFile<AaFixtureRow>>("table1.json")?.rows)
    }

    pub fn table2(&self) -> Result<Vec<AaFixtureRow>> {
        Ok(self.read::<TableFile<AaFixtureRow>>("table2.json")?.rows)
    }

    pub fn table3(&self) -> Result<Vec<SplittableFixtureRow>> {
        Ok(self.read::<TableFile<SplittableFixtureRow>>("table3.json")?.rows)
    }

    pub fn rejected13(&self) -> Result<Vec<RejectedPair>> {
        Ok(self.read::<RejectedFile>("rejected13.json")?.pairs)
    }

    pub fn witnesses(&self) -> Result<Vec<WitnessEntry>> {
        self.read("witnesses_41.json")
    }

    pub fn a36(&self) -> Result<IntMatrix> {
        self.read("a36.json")
    }

    /// Witness pairs attached to a specific `(A, B)` pair, if any.
    pub fn witness_pairs_for(
        &self,
        a: &IntMatrix,
        b: &IntMatrix,
    ) -> Result<Vec<(IntMatrix, IntMatrix)>> {
        Ok(self
            .witnesses()?
            .into_iter()
            .filter(|w| &w.a == a && &w.b == b)
            .flat_map(|w| w.pairs.into_iter().map(|p| (p.p, p.q)))
            .collect())
    }
}
