//! The four angle cases in dimension 6.
//!
//! A nontrivial finite-order rotation of `R^5` decomposes as
//! `I_s ⊕ θ(2πq_1) ⊕ ... ⊕ θ(2πq_n)` with `(s, 2n) ∈ {(3,2), (1,4)}`
//! (a trivial `θ` block folds into `s`). Enumerating angle multisets whose
//! characteristic polynomial is integral and normalizing angles modulo the
//! conjugation identifications yields exactly 18 representatives, split
//! into four cases:
//!
//! 1. `s = 3`: a rotation by π, 2π/3, π/2 or π/3;
//! 2. `s = 1` with a π-rotation: `-I_4` or `-I_2 ⊕ θ`;
//! 3. `s = 1`, two rotations of index 3, 4 or 6;
//! 4. `s = 1`, one Galois orbit of degree 4 (indices 5, 8, 10, 12).

use crate::cyclotomic::{angle_multisets, RotationSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AngleCase {
    /// Case number 1..4.
    pub case: u8,
    pub spec: RotationSpec,
}

/// The 18 representative rotation specs for dimension 6, grouped by case
/// (cases ascending, lexicographic multiset order inside a case).
pub fn angle_cases_dim6() -> Vec<AngleCase> {
    let mut out = Vec::new();
    for m in angle_multisets(1, true) {
        out.push(AngleCase {
            case: 1,
            spec: RotationSpec::new(3, m.angles()),
        });
    }
    for m in angle_multisets(2, true) {
        let case = match (m.x_plus_one, m.indices.len()) {
            (4, 0) | (2, 1) => 2,
            (0, 2) => 3,
            (0, 1) => 4,
            other => unreachable!("impossible degree-4 multiset shape {other:?}"),
        };
        out.push(AngleCase {
            case,
            spec: RotationSpec::new(1, m.angles()),
        });
    }
    out.sort_by_key(|c| c.case);
    out
}
