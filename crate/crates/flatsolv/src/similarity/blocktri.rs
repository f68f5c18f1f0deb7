//! Block triangularization along the primary decomposition.
//!
//! For charpoly `p_1^{e_1} ... p_r^{e_r}` the matrix is conjugated over Z to
//! an upper block triangular form whose i-th diagonal block has charpoly
//! `p_i^{e_i}`, with the blocks in any prescribed order: the kernel of
//! `p_1(A)^{e_1}` is a saturated invariant sublattice, its basis extends to
//! a unimodular matrix, and the quotient action recurses.

use crate::error::{Error, Result};
use crate::intlinalg::{charpoly, kernel_lattice, IntMatrix, IntPoly};

#[derive(Debug)]
pub struct BlockTriangularization {
    /// Unimodular `u` with `u^{-1} A u` block upper triangular.
    pub u: IntMatrix,
    pub blocks: Vec<IntMatrix>,
}

/// Distinct irreducible factors of the characteristic polynomial with
/// multiplicities, in increasing cyclotomic-index order. Errors when the
/// charpoly is not a product of cyclotomics.
pub fn charpoly_factors(a: &IntMatrix) -> Result<Vec<(IntPoly, usize)>> {
    let cp = charpoly(a)?;
    let factors = crate::cyclotomic::factor_cyclotomic(&cp)?;
    Ok(factors
        .into_iter()
        .map(|(idx, mult)| (crate::cyclotomic::cyclotomic_poly(idx), mult))
        .collect())
}

/// Block triangularization with diagonal blocks in the order given by
/// `factors` (a permutation of the primary factors of the charpoly).
pub fn block_triangularize(
    a: &IntMatrix,
    factors: &[(IntPoly, usize)],
) -> Result<BlockTriangularization> {
    if !a.is_square() {
        return Err(Error::NonSquare { rows: a.rows(), cols: a.cols() });
    }
    let cp = charpoly(a)?;
    let mut prod = IntPoly::one();
    for (f, e) in factors {
        prod = prod.mul(&f.pow(*e));
    }
    if prod != cp {
        return Err(Error::Domain(format!(
            "factor list with product {prod} does not match charpoly {cp}"
        )));
    }
    let mut blocks = Vec::new();
    let u = split(a, factors, &mut blocks)?;
    Ok(BlockTriangularization { u, blocks })
}

fn split(
    a: &IntMatrix,
    factors: &[(IntPoly, usize)],
    blocks: &mut Vec<IntMatrix>,
) -> Result<IntMatrix> {
    let n = a.rows();
    if factors.len() <= 1 {
        blocks.push(a.clone());
        return Ok(IntMatrix::identity(n));
    }
    let (f, e) = &factors[0];
    let w = kernel_lattice(&f.eval_matrix(a).pow(*e as u64));
    let d = w.rank();
    debug_assert_eq!(d, f.degree().unwrap() * e);
    let u1 = w.complete_to_unimodular()?;
    let u1_inv = u1.inverse_unimodular().expect("completion is unimodular");
    let conj = u1_inv.mul_ref(a).mul_ref(&u1);
    let top = conj.submatrix(0, d, 0, d);
    debug_assert!(conj.submatrix(d, n, 0, d).is_zero());
    blocks.push(top);
    let rest = conj.submatrix(d, n, d, n);
    let u2 = split(&rest, &factors[1..], blocks)?;
    Ok(u1.mul_ref(&IntMatrix::identity(d).direct_sum(&u2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{companion_cyclotomic, cyclotomic_poly};
    use num_traits::Signed;

    fn assert_valid(a: &IntMatrix, factors: &[(IntPoly, usize)]) -> BlockTriangularization {
        let bt = block_triangularize(a, factors).unwrap();
        assert!(bt.u.det().unwrap().abs() == num_bigint::BigInt::from(1));
        let conj = bt
            .u
            .inverse_unimodular()
            .unwrap()
            .mul_ref(a)
            .mul_ref(&bt.u);
        // block upper triangular with the prescribed charpolys
        let mut offset = 0;
        for (block, (f, e)) in bt.blocks.iter().zip(factors) {
            let d = block.rows();
            assert_eq!(conj.submatrix(offset, offset + d, offset, offset + d), *block);
            assert_eq!(charpoly(block).unwrap(), f.pow(*e));
            assert!(conj
                .submatrix(offset, conj.rows(), 0, offset)
                .is_zero());
            offset += d;
        }
        bt
    }

    #[test]
    fn already_block_diagonal() {
        let a = companion_cyclotomic(3).direct_sum(&IntMatrix::identity(3));
        let factors = vec![(cyclotomic_poly(3), 1), (cyclotomic_poly(1), 3)];
        let bt = assert_valid(&a, &factors);
        assert_eq!(bt.blocks.len(), 2);
    }

    #[test]
    fn three_factors_with_prescribed_order() {
        // charpoly (x-1)·Φ_3·Φ_4 realized as C_6-free block matrix
        let a = companion_cyclotomic(4)
            .direct_sum(&companion_cyclotomic(3))
            .direct_sum(&IntMatrix::identity(1));
        // conjugate by some unimodular matrix to hide the block structure
        let p = IntMatrix::from_rows(&[
            &[1, 0, 1, 0, 0],
            &[0, 1, 0, 1, 0],
            &[0, 0, 1, 0, 1],
            &[1, 0, 0, 1, 0],
            &[0, 0, 0, 0, 1],
        ]);
        let p_inv = p.inverse_unimodular().unwrap();
        let hidden = p_inv.mul_ref(&a).mul_ref(&p);
        // prescribed order: (x-1), Φ_4, Φ_3
        let factors = vec![
            (cyclotomic_poly(1), 1),
            (cyclotomic_poly(4), 1),
            (cyclotomic_poly(3), 1),
        ];
        let bt = assert_valid(&hidden, &factors);
        assert_eq!(bt.blocks.len(), 3);
    }

    #[test]
    fn wrong_factor_list_rejected() {
        let a = companion_cyclotomic(3);
        let factors = vec![(cyclotomic_poly(4), 1)];
        assert!(block_triangularize(&a, &factors).is_err());
    }
}
