//! Rational similarity (exact) and entry-bounded integral similarity search.

use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::Result;
use crate::intlinalg::{charpoly, kernel_lattice, rank, IntMatrix};
use crate::similarity::blocktri::charpoly_factors;
use crate::similarity::centralizer::for_each_bounded_point;
use crate::similarity::psi::psi_matrix;

/// Rational similarity via equal rational canonical forms: equal charpolys
/// and, for every irreducible factor `f` of multiplicity `e`, equal ranks of
/// `f(A)^j` for `j ≤ e`. Errors when the charpoly does not factor into
/// cyclotomics (the only factorization this crate carries).
pub fn is_rationally_similar(a: &IntMatrix, b: &IntMatrix) -> Result<bool> {
    let cpa = charpoly(a)?;
    let cpb = charpoly(b)?;
    if cpa != cpb {
        return Ok(false);
    }
    for (f, e) in charpoly_factors(a)? {
        let fa = f.eval_matrix(a);
        let fb = f.eval_matrix(b);
        let mut pa = fa.clone();
        let mut pb = fb.clone();
        for _ in 0..e {
            if rank(&pa) != rank(&pb) {
                return Ok(false);
            }
            pa = pa.mul_ref(&fa);
            pb = pb.mul_ref(&fb);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundedSimilarity {
    /// A unimodular `P` with `AP = PB`.
    Witness(IntMatrix),
    /// No witness within the bound (or the node budget); never a negative
    /// certificate.
    Unknown,
}

impl BoundedSimilarity {
    pub fn witness(self) -> Option<IntMatrix> {
        match self {
            BoundedSimilarity::Witness(p) => Some(p),
            BoundedSimilarity::Unknown => None,
        }
    }
}

/// Search for a unimodular `P` with entries bounded by `bound` conjugating
/// `A` to `B`. The solution lattice of `AT = TB` is enumerated with entry
/// pruning; `node_cap` bounds the traversal.
pub fn is_integrally_similar_bounded(
    a: &IntMatrix,
    b: &IntMatrix,
    bound: u32,
    node_cap: u64,
) -> BoundedSimilarity {
    assert!(a.is_square() && b.is_square());
    if a.rows() != b.rows() {
        return BoundedSimilarity::Unknown;
    }
    if a == b {
        return BoundedSimilarity::Witness(IntMatrix::identity(a.rows()));
    }
    let n = a.rows();
    let lattice = kernel_lattice(&psi_matrix(a, b));
    let mut witness = None;
    for_each_bounded_point(&lattice, &BigInt::from(bound), node_cap, &mut |v| {
        let p = IntMatrix::from_fn(n, n, |i, j| v[i * n + j].clone());
        if p.det().map(|d| d.abs().is_one()).unwrap_or(false) {
            witness = Some(p);
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    match witness {
        Some(p) => {
            debug_assert_eq!(a.mul_ref(&p), p.mul_ref(b));
            BoundedSimilarity::Witness(p)
        }
        None => BoundedSimilarity::Unknown,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::similarity::involution::l_block;

    #[test]
    fn self_similarity() {
        let a = l_block();
        assert!(is_rationally_similar(&a, &a).unwrap());
        let w = is_integrally_similar_bounded(&a, &a, 1, 1 << 20);
        assert_eq!(w, BoundedSimilarity::Witness(IntMatrix::identity(2)));
    }

    #[test]
    fn same_jordan_form_involutions() {
        // -I_2 ⊕ I_3 and L ⊕ -I_1 ⊕ I_2 are rationally similar but carry
        // different mod-2 invariants, so no integral witness exists
        let a = IntMatrix::scalar(2, -1).direct_sum(&IntMatrix::identity(3));
        let b = l_block()
            .direct_sum(&IntMatrix::scalar(1, -1))
            .direct_sum(&IntMatrix::identity(2));
        assert!(is_rationally_similar(&a, &b).unwrap());
        assert_eq!(
            is_integrally_similar_bounded(&a, &b, 2, 1 << 22),
            BoundedSimilarity::Unknown
        );
    }

    #[test]
    fn different_charpoly_not_similar() {
        let a = IntMatrix::identity(2);
        let b = IntMatrix::scalar(2, -1);
        assert!(!is_rationally_similar(&a, &b).unwrap());
    }

    #[test]
    fn integral_witness_found_for_conjugates() {
        let c3 = crate::cyclotomic::companion_cyclotomic(3);
        let p = IntMatrix::from_rows(&[&[1, 1], &[0, 1]]);
        let p_inv = p.inverse_unimodular().unwrap();
        let b = p_inv.mul_ref(&c3).mul_ref(&p);
        match is_integrally_similar_bounded(&c3, &b, 2, 1 << 20) {
            BoundedSimilarity::Witness(w) => {
                assert_eq!(c3.mul_ref(&w), w.mul_ref(&b));
                assert!(w.det().unwrap().abs().is_one());
            }
            BoundedSimilarity::Unknown => panic!("witness must exist at bound 2"),
        }
    }

    #[test]
    fn node_cap_returns_unknown() {
        let a = IntMatrix::identity(4);
        let b = IntMatrix::from_fn(4, 4, |i, j| {
            // a permutation matrix, integrally similar to nothing relevant
            // here; the point is only that the cap cuts the search
            if (i + 1) % 4 == j { BigInt::one() } else { BigInt::from(0) }
        });
        assert_eq!(
            is_integrally_similar_bounded(&a, &b, 3, 1),
            BoundedSimilarity::Unknown
        );
    }
}
