//! Sublattices of Z^n: images, kernels, saturation, cokernels.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::intlinalg::finab::FinAbGroup;
use crate::intlinalg::hnf::col_hermite;
use crate::intlinalg::snf::snf;
use crate::intlinalg::IntMatrix;

/// A sublattice of `Z^ambient_dim`, held as a column-HNF basis matrix with
/// linearly independent columns. The zero lattice has a 0-column basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    ambient_dim: usize,
    basis: IntMatrix,
}

impl LatticeBasis {
    /// Lattice spanned by the columns of `gens` (columns need not be
    /// independent; the basis is extracted by column HNF).
    pub fn from_columns(gens: &IntMatrix) -> Self {
        let (h, _) = col_hermite(gens);
        let nonzero: Vec<usize> = (0..h.cols())
            .filter(|&j| (0..h.rows()).any(|i| !h.at(i, j).is_zero()))
            .collect();
        let basis = IntMatrix::from_fn(h.rows(), nonzero.len(), |i, j| h.at(i, nonzero[j]).clone());
        LatticeBasis {
            ambient_dim: gens.rows(),
            basis,
        }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        LatticeBasis {
            ambient_dim,
            basis: IntMatrix::zeros(ambient_dim, 0),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    /// Membership test by exact back-substitution against the HNF basis.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "vector has wrong ambient dimension");
        let mut rem: Vec<BigInt> = v.to_vec();
        for j in 0..self.basis.cols() {
            let pivot_row = (0..self.ambient_dim)
                .find(|&i| !self.basis.at(i, j).is_zero())
                .expect("basis column is zero");
            // rows above this pivot must already be cleared
            let q = &rem[pivot_row] / self.basis.at(pivot_row, j);
            if !(&rem[pivot_row] - &q * self.basis.at(pivot_row, j)).is_zero() {
                return false;
            }
            if !q.is_zero() {
                for i in 0..self.ambient_dim {
                    let delta = &q * self.basis.at(i, j);
                    rem[i] -= delta;
                }
            }
        }
        rem.iter().all(|x| x.is_zero())
    }

    /// Saturation `(L ⊗ Q) ∩ Z^n`: the smallest primitive sublattice
    /// containing `L`.
    pub fn saturate(&self) -> LatticeBasis {
        if self.is_zero() {
            return self.clone();
        }
        // u·B·v = s with s = diag(d_i); the saturation is spanned by the
        // first rank columns of u^{-1}.
        let f = snf(&self.basis);
        let u_inv = f
            .u
            .inverse_unimodular()
            .expect("SNF transform is unimodular");
        let r = f.rank();
        let cols = u_inv.submatrix(0, u_inv.rows(), 0, r);
        LatticeBasis::from_columns(&cols)
    }

    pub fn is_saturated(&self) -> bool {
        snf(&self.basis)
            .diagonal()
            .iter()
            .all(|d| d.is_one() || d.is_zero())
    }

    /// Index of `self` in its saturation (1 for primitive lattices).
    pub fn saturation_index(&self) -> BigInt {
        snf(&self.basis)
            .diagonal()
            .iter()
            .filter(|d| !d.is_zero())
            .product::<BigInt>()
            .max(BigInt::one())
    }

    /// Extend a saturated lattice basis to a basis of Z^n; the returned
    /// matrix is unimodular and its first `rank` columns span `self`.
    pub fn complete_to_unimodular(&self) -> Result<IntMatrix> {
        if !self.is_saturated() {
            return Err(Error::Domain(
                "only a saturated lattice extends to a unimodular basis".into(),
            ));
        }
        if self.rank() == self.ambient_dim {
            return Ok(self.basis.clone());
        }
        let f = snf(&self.basis);
        let u_inv = f
            .u
            .inverse_unimodular()
            .expect("SNF transform is unimodular");
        // B·v = u^{-1}·s, so the first rank columns of u^{-1} span self and
        // u^{-1} itself is the required completion.
        let r = self.rank();
        let mut out = u_inv.clone();
        // replace the first r columns by the actual basis (same lattice, and
        // keeps the returned block in HNF)
        let bv = self.basis.mul_ref(&f.v);
        let d = f.s.submatrix(0, r, 0, r);
        debug_assert_eq!(bv.submatrix(0, bv.rows(), 0, r), u_inv.submatrix(0, u_inv.rows(), 0, r).mul_ref(&d));
        for j in 0..r {
            for i in 0..self.ambient_dim {
                *out.at_mut(i, j) = self.basis.at(i, j).clone();
            }
        }
        let det = out.det()?;
        if det.abs().is_one() {
            Ok(out)
        } else {
            Err(Error::Domain(format!(
                "basis completion failed (determinant {det})"
            )))
        }
    }
}

/// Lattice spanned by the columns of `a` (the raw image, not saturated).
pub fn image_lattice(a: &IntMatrix) -> LatticeBasis {
    LatticeBasis::from_columns(a)
}

/// Saturated image lattice, for callers that need a primitive basis.
pub fn image_lattice_saturated(a: &IntMatrix) -> LatticeBasis {
    image_lattice(a).saturate()
}

/// Integer kernel `{x : a·x = 0}`; always a saturated sublattice.
pub fn kernel_lattice(a: &IntMatrix) -> LatticeBasis {
    let (h, v) = col_hermite(a);
    let zero_cols: Vec<usize> = (0..h.cols())
        .filter(|&j| (0..h.rows()).all(|i| h.at(i, j).is_zero()))
        .collect();
    let gens = IntMatrix::from_fn(a.cols(), zero_cols.len(), |i, j| v.at(i, zero_cols[j]).clone());
    LatticeBasis::from_columns(&gens)
}

/// `Z^rows / im(a)` as an abstract abelian group.
pub fn cokernel(a: &IntMatrix) -> FinAbGroup {
    let f = snf(a);
    FinAbGroup::from_snf_diagonal(a.rows(), &f.diagonal())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cokernel_examples() {
        // coker(I_2 - C_3) = Z_3
        let a = IntMatrix::from_rows(&[&[1, 1], &[-1, 2]]);
        let g = cokernel(&a);
        assert_eq!(g, FinAbGroup::cyclic(3));

        // coker(0_{1x1}) = Z
        assert_eq!(cokernel(&IntMatrix::zeros(1, 1)), FinAbGroup::free(1));
    }

    #[test]
    fn stacked_cokernel_matches_table_row() {
        // I_5 - (C_3 ⊕ I_3) has cokernel Z^3 ⊕ Z_3
        let c3 = IntMatrix::from_rows(&[&[0, -1], &[1, -1]]);
        let e = c3.direct_sum(&IntMatrix::identity(3));
        let a = &IntMatrix::identity(5) - &e;
        let g = cokernel(&a);
        assert_eq!(g.free_rank, 3);
        assert_eq!(g.torsion, vec![BigInt::from(3)]);
    }

    #[test]
    fn kernel_is_saturated() {
        let a = IntMatrix::from_rows(&[&[2, 4, 0], &[1, 2, 0]]);
        let k = kernel_lattice(&a);
        assert_eq!(k.rank(), 2);
        assert!(k.is_saturated());
        for j in 0..k.rank() {
            let col = k.basis().col(j);
            assert!(a.mul_vec(&col).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn saturation_of_scaled_lattice() {
        let raw = image_lattice(&IntMatrix::scalar(2, 2));
        assert_eq!(raw.saturation_index(), BigInt::from(4));
        let sat = raw.saturate();
        assert!(sat.is_saturated());
        assert_eq!(sat.basis(), &IntMatrix::identity(2));
    }

    #[test]
    fn membership() {
        let l = image_lattice(&IntMatrix::from_rows(&[&[2, 0], &[0, 3]]));
        assert!(l.contains(&[BigInt::from(4), BigInt::from(-3)]));
        assert!(!l.contains(&[BigInt::from(1), BigInt::from(0)]));
    }

    #[test]
    fn completion_of_primitive_basis() {
        let l = image_lattice(&IntMatrix::from_rows(&[&[1], &[2], &[3]]));
        let u = l.complete_to_unimodular().unwrap();
        assert!(u.det().unwrap().abs().is_one());
        assert_eq!(u.submatrix(0, 3, 0, 1), *l.basis());
    }
}
