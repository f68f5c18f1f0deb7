//! Normal forms of integral involutions.
//!
//! Every `A ∈ M_n(Z)` with `A² = I` is integrally similar to
//! `W(x,y,z) = L ⊕ ... ⊕ L ⊕ (-I_y) ⊕ I_z` with `L = [[1,0],[1,-1]]` and
//! `2x + y + z = n`. The triple is read off conjugation invariants:
//! `x = rank_{F_2}(A - I)` and `x + y` is the multiplicity of eigenvalue -1.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intlinalg::IntMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InvolutionType {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

impl InvolutionType {
    pub fn dim(&self) -> usize {
        2 * self.x + self.y + self.z
    }
}

/// `L = [[1,0],[1,-1]]`.
pub fn l_block() -> IntMatrix {
    IntMatrix::from_rows(&[&[1, 0], &[1, -1]])
}

/// Invariant triple `(x, y, z)` of an involution.
pub fn involution_type(a: &IntMatrix) -> Result<InvolutionType> {
    if !a.is_square() {
        return Err(Error::NonSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    if !a.pow(2).is_identity() {
        return Err(Error::Domain("matrix is not an involution".into()));
    }
    let a_minus_i = a - &IntMatrix::identity(n);
    let x = rank_mod2(&a_minus_i);
    // trace = (n - y - x) - (y + x) = n - 2(x + y)
    let tr = a.trace();
    let minus_one_mult = (BigInt::from(n as u64) - tr) / BigInt::from(2);
    let minus_one_mult = minus_one_mult.to_usize().expect("multiplicity in range");
    debug_assert!(minus_one_mult >= x);
    let y = minus_one_mult - x;
    let z = n - 2 * x - y;
    Ok(InvolutionType { x, y, z })
}

/// The normal form `W(x,y,z)`.
pub fn involution_normal_form(t: InvolutionType) -> IntMatrix {
    let mut blocks = Vec::new();
    for _ in 0..t.x {
        blocks.push(l_block());
    }
    if t.y > 0 {
        blocks.push(IntMatrix::scalar(t.y, -1));
    }
    if t.z > 0 {
        blocks.push(IntMatrix::identity(t.z));
    }
    if blocks.is_empty() {
        return IntMatrix::zeros(0, 0);
    }
    IntMatrix::block_diag(&blocks)
}

/// Rank of `a` over `F_2`.
pub fn rank_mod2(a: &IntMatrix) -> usize {
    let rows = a.rows();
    let cols = a.cols();
    let mut m: Vec<Vec<u8>> = (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| a.at(i, j).mod_floor(&BigInt::from(2)).is_zero().then_some(0u8).unwrap_or(1))
                .collect()
        })
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| m[r][c] == 1) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in 0..rows {
            if r != rank && m[r][c] == 1 {
                for k in c..cols {
                    m[r][k] ^= m[rank][k];
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_type() {
        let t = involution_type(&IntMatrix::identity(5)).unwrap();
        assert_eq!(t, InvolutionType { x: 0, y: 0, z: 5 });
    }

    #[test]
    fn minus_i2_plus_i3_type() {
        let a = IntMatrix::scalar(2, -1).direct_sum(&IntMatrix::identity(3));
        assert_eq!(involution_type(&a).unwrap(), InvolutionType { x: 0, y: 2, z: 3 });
    }

    #[test]
    fn l_plus_l_plus_i1_type() {
        let a = l_block().direct_sum(&l_block()).direct_sum(&IntMatrix::identity(1));
        assert_eq!(involution_type(&a).unwrap(), InvolutionType { x: 2, y: 0, z: 1 });
    }

    #[test]
    fn normal_form_has_its_own_type() {
        for x in 0..=2usize {
            for y in 0..=2usize {
                for z in 0..=2usize {
                    if 2 * x + y + z == 0 {
                        continue;
                    }
                    let t = InvolutionType { x, y, z };
                    let w = involution_normal_form(t);
                    assert!(w.pow(2).is_identity());
                    assert_eq!(involution_type(&w).unwrap(), t);
                }
            }
        }
    }

    #[test]
    fn non_involution_rejected() {
        let a = IntMatrix::from_rows(&[&[1, 1], &[0, 1]]);
        assert!(involution_type(&a).is_err());
    }
}
