//! Extension type of `[[A, X], [0, εI_m]]` with `A` an s-fold sum of the
//! companion matrix `C_n`.
//!
//! When `ε = +1` and `n = p^k`, or `ε = -1` and `n = 2p^k` (n ≥ 3), the
//! matrix is integrally similar to `t`-fold `C_n^ε ⊕ (s-t)`-fold
//! `C_n ⊕ εI_{m-t}` for a unique `t`; otherwise it splits as `A ⊕ εI_m`.
//! Since `Coker(C_n - εI) ≅ Z_p`, the class of `X` in
//! `Coker ψ(A, εI_m) ≅ (Z/p)^{s×m}` is an `s×m` matrix over `F_p`, and `t`
//! is its rank, a conjugation invariant of the block shape.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::cyclotomic::{bordered, companion_cyclotomic, factor_cyclotomic};
use crate::error::{Error, Result};
use crate::intlinalg::{charpoly, snf, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnipotentExtension {
    /// Cyclotomic index of the repeated companion block.
    pub n: u64,
    /// Number of companion blocks.
    pub s: usize,
    /// Size of the `εI` block.
    pub m: usize,
    pub epsilon: i64,
    /// Number of bordered blocks in the normal form.
    pub t: usize,
}

/// Decompose `mat = [[A, X], [0, εI_m]]` and compute the extension type `t`.
pub fn unipotent_extension_type(mat: &IntMatrix, epsilon: i64) -> Result<UnipotentExtension> {
    assert!(epsilon == 1 || epsilon == -1);
    if !mat.is_square() {
        return Err(Error::NonSquare { rows: mat.rows(), cols: mat.cols() });
    }
    let total = mat.rows();
    // the trailing block: largest m with bottom-right εI_m and zero bottom-left
    let mut m = 0;
    'grow: while m < total {
        let cand = m + 1;
        let r = total - cand;
        for j in 0..total {
            let expected = if j == r {
                BigInt::from(epsilon)
            } else {
                BigInt::zero()
            };
            if mat.at(r, j) != &expected {
                break 'grow;
            }
        }
        m = cand;
    }
    if m == 0 || m == total {
        return Err(Error::Domain("no trailing εI block found".into()));
    }
    let a = mat.submatrix(0, total - m, 0, total - m);
    let x = mat.submatrix(0, total - m, total - m, total);
    // A must be an s-fold direct sum of C_n
    let cp = charpoly(&a)?;
    let factors = factor_cyclotomic(&cp).map_err(|_| {
        Error::Domain("leading block is not a repeated cyclotomic companion".into())
    })?;
    if factors.len() != 1 {
        return Err(Error::Domain(
            "leading block must carry a single cyclotomic index".into(),
        ));
    }
    let (n, s) = factors[0];
    let c = companion_cyclotomic(n);
    let d = c.rows();
    let repeated = IntMatrix::block_diag(&vec![c.clone(); s]);
    if a != repeated {
        return Err(Error::Domain(
            "leading block must literally be C_n ⊕ ... ⊕ C_n".into(),
        ));
    }
    let applicable = match epsilon {
        1 => prime_power_base(n).is_some(),
        _ => n >= 3 && n % 2 == 0 && prime_power_base(n / 2).is_some(),
    };
    if !applicable {
        return Ok(UnipotentExtension { n, s, m, epsilon, t: 0 });
    }
    let p = match epsilon {
        1 => prime_power_base(n).unwrap(),
        _ => prime_power_base(n / 2).unwrap(),
    };
    // cokernel functional of C_n - εI: the row of u carrying the invariant
    // factor p maps a column vector to its class in Z_p
    let ce = &c - &IntMatrix::scalar(d, epsilon);
    let f = snf(&ce);
    let diag = f.diagonal();
    debug_assert_eq!(diag.last().map(|v| v.to_u64().unwrap()), Some(p));
    debug_assert!(diag[..d - 1].iter().all(|v| v.to_u64() == Some(1)));
    let p_big = BigInt::from(p);
    // class matrix over F_p: blocks of X map through the functional
    let class = IntMatrix::from_fn(s, m, |block, col| {
        let mut acc = BigInt::zero();
        for r in 0..d {
            acc += f.u.at(d - 1, r) * x.at(block * d + r, col);
        }
        acc.mod_floor(&p_big)
    });
    let t = rank_mod_p(&class, p);
    Ok(UnipotentExtension { n, s, m, epsilon, t })
}

/// `t`-fold `C_n^ε ⊕ (s-t)`-fold `C_n ⊕ εI_{m-t}`.
pub fn unipotent_normal_form(ext: &UnipotentExtension) -> IntMatrix {
    let c = companion_cyclotomic(ext.n);
    let mut blocks = Vec::new();
    for _ in 0..ext.t {
        blocks.push(bordered(&c, ext.epsilon));
    }
    for _ in 0..ext.s - ext.t {
        blocks.push(c.clone());
    }
    if ext.m > ext.t {
        blocks.push(IntMatrix::scalar(ext.m - ext.t, ext.epsilon));
    }
    IntMatrix::block_diag(&blocks)
}

/// `p` when `n = p^k` for a prime `p` and `k ≥ 1`.
pub fn prime_power_base(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            return (m == 1).then_some(p);
        }
        p += 1;
    }
    Some(m)
}

fn rank_mod_p(a: &IntMatrix, p: u64) -> usize {
    let p_big = BigInt::from(p);
    let rows = a.rows();
    let cols = a.cols();
    let mut m: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| (0..cols).map(|j| a.at(i, j).mod_floor(&p_big)).collect())
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][c].extended_gcd(&p_big).x.mod_floor(&p_big);
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let factor = (&m[r][c] * &inv).mod_floor(&p_big);
                for k in c..cols {
                    let delta = (&factor * &m[rank][k]).mod_floor(&p_big);
                    m[r][k] = (&m[r][k] - delta).mod_floor(&p_big);
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
    fn zero_extension_splits() {
        let mat = IntMatrix::block_diag(&[companion_cyclotomic(3), IntMatrix::identity(3)]);
        let ext = unipotent_extension_type(&mat, 1).unwrap();
        assert_eq!((ext.n, ext.s, ext.m, ext.t), (3, 1, 3, 0));
    }

    #[test]
    fn bordered_c3_has_t_one() {
        // C_3^+ ⊕ I_2 seen as [[C_3, e_1ᵀ|0], [0, I_3]]
        let c3p = bordered(&companion_cyclotomic(3), 1);
        let mat = c3p.direct_sum(&IntMatrix::identity(2));
        // rows/cols must be permuted so the trailing block is I_3; build directly
        let x = IntMatrix::from_rows(&[&[1, 0, 0], &[0, 0, 0]]);
        let built = IntMatrix::block_upper(&companion_cyclotomic(3), &x, &IntMatrix::identity(3));
        let ext = unipotent_extension_type(&built, 1).unwrap();
        assert_eq!(ext.t, 1);
        assert_eq!(
            unipotent_normal_form(&ext),
            bordered(&companion_cyclotomic(3), 1).direct_sum(&IntMatrix::identity(2))
        );
        // sanity: the permuted direct sum has the same charpoly
        assert_eq!(charpoly(&mat).unwrap(), charpoly(&built).unwrap());
    }

    #[test]
    fn c4_with_minus_one_border() {
        let x = IntMatrix::from_rows(&[&[1], &[0]]);
        let built = IntMatrix::block_upper(&companion_cyclotomic(4), &x, &IntMatrix::scalar(1, -1));
        let ext = unipotent_extension_type(&built, -1).unwrap();
        assert_eq!(ext.t, 1);
        assert_eq!(unipotent_normal_form(&ext), bordered(&companion_cyclotomic(4), -1));
    }

    #[test]
    fn non_prime_power_always_splits() {
        // n = 6 is not a prime power, so with ε = +1 the extension is trivial
        let x = IntMatrix::from_rows(&[&[1, 1, 1], &[1, 0, 1]]);
        let built = IntMatrix::block_upper(&companion_cyclotomic(6), &x, &IntMatrix::identity(3));
        let ext = unipotent_extension_type(&built, 1).unwrap();
        assert_eq!(ext.t, 0);
        // n = 12 is not 2p^k, so with ε = -1 the extension is trivial too
        let x = IntMatrix::from_rows(&[&[1], &[0], &[1], &[0]]);
        let built = IntMatrix::block_upper(&companion_cyclotomic(12), &x, &IntMatrix::scalar(1, -1));
        let ext = unipotent_extension_type(&built, -1).unwrap();
        assert_eq!(ext.t, 0);
    }

    #[test]
    fn two_companion_blocks() {
        // s = 2 copies of C_3 with both block rows hitting the functional:
        // X = [e_1ᵀ; e_1ᵀ] has class matrix rank 1 (single column)
        let a = IntMatrix::block_diag(&[companion_cyclotomic(3), companion_cyclotomic(3)]);
        let x = IntMatrix::from_rows(&[&[1], &[0], &[1], &[0]]);
        let built = IntMatrix::block_upper(&a, &x, &IntMatrix::identity(1));
        let ext = unipotent_extension_type(&built, 1).unwrap();
        assert_eq!((ext.s, ext.m, ext.t), (2, 1, 1));
    }

    #[test]
    fn malformed_shapes_rejected() {
        assert!(unipotent_extension_type(&companion_cyclotomic(3), 1).is_err());
        let mat = IntMatrix::from_rows(&[&[1, 1], &[1, 0]]).direct_sum(&IntMatrix::identity(1));
        assert!(unipotent_extension_type(&mat, 1).is_err());
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power_base(8), Some(2));
        assert_eq!(prime_power_base(9), Some(3));
        assert_eq!(prime_power_base(37), Some(37));
        assert_eq!(prime_power_base(6), None);
        assert_eq!(prime_power_base(1), None);
    }
}
