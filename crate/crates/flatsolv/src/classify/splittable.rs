//! The splittable non almost abelian classes (`Z^2 ⋉ Z^4`).
//!
//! The 33 two-generated finite abelian subgroups of `SL(4,Z)` are shipped as
//! fixtures (20 accepted, 13 rejected); regenerating the full subgroup
//! classification is out of scope. Each pair is validated (commuting,
//! unimodular, finite order), its lattice group invariants are recomputed,
//! and the parity filter is applied: an even-dimensional flat solvmanifold
//! is Kähler, so records with odd first Betti number cannot occur.

use crate::classify::emit::GoldenRow;
use crate::classify::fixtures::FixtureSet;
use crate::classify::{ClassificationTable, Family, SolvmanifoldRecord};
use crate::error::{Error, Result};
use crate::intlinalg::IntMatrix;
use crate::solvgroups::{abelianization, betti1, holonomy, make_sigma, SigmaGroup};

#[derive(Clone, Debug)]
pub struct RejectedRecord {
    pub label: String,
    pub sigma: SigmaGroup,
    pub betti1: usize,
}

pub struct SplittableClassification {
    pub computed: ClassificationTable,
    pub golden: Vec<GoldenRow>,
    pub rejected: Vec<RejectedRecord>,
}

fn validated_sigma(label: &str, file: &str, a: &IntMatrix, b: &IntMatrix) -> Result<SigmaGroup> {
    // SL(4,Z) membership on top of the usual Σ validation
    for (name, g) in [("first", a), ("second", b)] {
        if g.det()? != num_bigint::BigInt::from(1) {
            return Err(Error::Fixture {
                file: file.into(),
                message: format!("{label}: {name} generator has determinant != 1"),
            });
        }
    }
    make_sigma(2, 4, vec![a.clone(), b.clone()])
        .map_err(|e| Error::Fixture {
            file: file.into(),
            message: format!("{label}: {e}"),
        })
        .map(|s| s.with_label(label))
}

pub fn classify_splittable_dim6(fx: &FixtureSet) -> Result<SplittableClassification> {
    let table3 = fx.table3()?;
    if table3.len() != 20 {
        return Err(Error::Fixture {
            file: "table3.json".into(),
            message: format!("expected 20 rows, found {}", table3.len()),
        });
    }
    let mut rows = Vec::new();
    let mut golden = Vec::new();
    for row in &table3 {
        let sigma = validated_sigma(&row.label, "table3.json", &row.gen_a, &row.gen_b)?;
        let hol = holonomy(&sigma)?.group;
        let ab = abelianization(&sigma);
        let b1 = betti1(&sigma);
        if b1 % 2 != 0 {
            return Err(Error::Fixture {
                file: "table3.json".into(),
                message: format!("{}: accepted row has odd b1 = {b1}", row.label),
            });
        }
        golden.push(GoldenRow {
            label: row.label.clone(),
            holonomy: row.holonomy.clone(),
            abelianization: row.abelianization.clone(),
        });
        rows.push(SolvmanifoldRecord {
            label: row.label.clone(),
            family: Family::Splittable,
            case: None,
            phi: None,
            sigma,
            holonomy: hol,
            abelianization: ab,
            betti1: b1,
            provenance: "table3".into(),
            reconstructed: row.reconstructed,
        });
    }

    let rejected_pairs = fx.rejected13()?;
    if rejected_pairs.len() != 13 {
        return Err(Error::Fixture {
            file: "rejected13.json".into(),
            message: format!("expected 13 pairs, found {}", rejected_pairs.len()),
        });
    }
    let mut rejected = Vec::new();
    for pair in &rejected_pairs {
        let sigma = validated_sigma(&pair.label, "rejected13.json", &pair.gen_a, &pair.gen_b)?;
        let b1 = betti1(&sigma);
        if b1 % 2 == 0 {
            return Err(Error::Fixture {
                file: "rejected13.json".into(),
                message: format!("{}: rejected pair has even b1 = {b1}", pair.label),
            });
        }
        rejected.push(RejectedRecord { label: pair.label.clone(), sigma, betti1: b1 });
    }

    Ok(SplittableClassification {
        computed: ClassificationTable {
            family: Family::Splittable,
            rows,
        },
        golden,
        rejected,
    })
}
