//! The Sylvester-type map `ψ(T) = AT - TB` and its cokernel.
//!
//! In the row-major basis `E_11, E_12, ..., E_mn` of `M_{m×n}(Z)` the matrix
//! of `ψ` is `A ⊗ I_n - I_m ⊗ Bᵀ`, and `det ψ = ±R(P_A, P_B)`. When the
//! characteristic polynomials are coprime the cokernel is a finite abelian
//! group; its elements are enumerated as explicit lifted matrices with small
//! non-negative entries (the lift of each class is the first one reached by
//! adding matrix units, processing candidates by entry sum then row-major
//! lexicographic order, which reproduces the representative sets used in the
//! worked cases).

use std::collections::{BTreeMap, BTreeSet, BinaryHeap};
use std::cmp::Reverse;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::intlinalg::{snf, FinAbGroup, IntMatrix, Snf};

/// Kronecker product.
pub fn kronecker(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    IntMatrix::from_fn(a.rows() * b.rows(), a.cols() * b.cols(), |i, j| {
        let (ai, bi) = (i / b.rows(), i % b.rows());
        let (aj, bj) = (j / b.cols(), j % b.cols());
        a.at(ai, aj) * b.at(bi, bj)
    })
}

/// Matrix of `T ↦ AT - TB` in the basis `E_11, E_12, ..., E_mn`.
pub fn psi_matrix(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    assert!(a.is_square() && b.is_square());
    let left = kronecker(a, &IntMatrix::identity(b.rows()));
    let right = kronecker(&IntMatrix::identity(a.rows()), &b.transpose());
    &left - &right
}

fn vec_of(x: &IntMatrix) -> Vec<BigInt> {
    x.entries().to_vec()
}

/// Cokernel `M_{m×n}(Z) / im ψ` with an explicit representative lifting.
pub struct CokerPsi {
    pub a: IntMatrix,
    pub b: IntMatrix,
    pub psi: IntMatrix,
    pub group: FinAbGroup,
    /// |Coker ψ| = |resultant|.
    pub order: BigInt,
    /// Lifted coset representatives, one per element, in enumeration order
    /// (the zero matrix is always first).
    pub reps: Vec<IntMatrix>,
    snf: Snf,
    moduli: Vec<BigInt>,
    coord_rows: Vec<usize>,
    class_to_index: BTreeMap<Vec<BigInt>, usize>,
}

impl CokerPsi {
    /// Coordinates of `[x]` in `⊕ Z_{d_i}` (nonunit invariant factors only).
    pub fn class_of(&self, x: &IntMatrix) -> Vec<BigInt> {
        assert_eq!(x.rows(), self.a.rows());
        assert_eq!(x.cols(), self.b.rows());
        let y = self.snf.u.mul_vec(&vec_of(x));
        self.coord_rows
            .iter()
            .zip(&self.moduli)
            .map(|(&r, d)| y[r].mod_floor(d))
            .collect()
    }

    /// Index of the enumerated representative of `[x]`.
    pub fn index_of(&self, x: &IntMatrix) -> usize {
        self.class_to_index[&self.class_of(x)]
    }

    /// Membership test `x ∈ im ψ = ⟨A, B⟩`.
    pub fn contains(&self, x: &IntMatrix) -> bool {
        self.class_of(x).iter().all(|c| c.is_zero())
    }
}

/// Cokernel of `ψ(T) = AT - TB`, with all elements enumerated as lifted
/// matrices. Errors with `NonCoprime` when `det ψ = 0` and with
/// `CapExceeded` when the order exceeds `cap`.
pub fn coker_psi(a: &IntMatrix, b: &IntMatrix, cap: u64) -> Result<CokerPsi> {
    let psi = psi_matrix(a, b);
    let f = snf(&psi);
    let diag = f.diagonal();
    if diag.iter().any(|d| d.is_zero()) {
        return Err(Error::NonCoprime);
    }
    let order: BigInt = diag.iter().product();
    if order > BigInt::from(cap) {
        return Err(Error::CapExceeded {
            what: format!("cokernel order {order}"),
            cap,
        });
    }
    let group = FinAbGroup::from_snf_diagonal(psi.rows(), &diag);
    let mut moduli = Vec::new();
    let mut coord_rows = Vec::new();
    for (i, d) in diag.iter().enumerate() {
        if !d.is_one() {
            moduli.push(d.clone());
            coord_rows.push(i);
        }
    }
    let mut ck = CokerPsi {
        a: a.clone(),
        b: b.clone(),
        psi,
        group,
        order: order.clone(),
        reps: vec![],
        snf: f,
        moduli,
        coord_rows,
        class_to_index: BTreeMap::new(),
    };
    let order_u64 = num_traits::ToPrimitive::to_u64(&order).expect("order bounded by cap");
    enumerate_reps(&mut ck, order_u64);
    Ok(ck)
}

// Candidate order: entry sum ascending, then mass at the earliest row-major
// position first (lexicographically greatest entry vector). This is the
// order in which the worked examples list their representatives.
#[derive(PartialEq, Eq)]
struct Cand {
    sum: u64,
    entries: Vec<u64>,
}

impl Ord for Cand {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sum
            .cmp(&other.sum)
            .then_with(|| other.entries.cmp(&self.entries))
    }
}

impl PartialOrd for Cand {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

fn enumerate_reps(ck: &mut CokerPsi, order: u64) {
    let (m, n) = (ck.a.rows(), ck.b.rows());
    let mut heap: BinaryHeap<Reverse<Cand>> = BinaryHeap::new();
    let mut pushed: BTreeSet<Vec<u64>> = BTreeSet::new();
    let zero = vec![0u64; m * n];
    pushed.insert(zero.clone());
    heap.push(Reverse(Cand { sum: 0, entries: zero }));
    while let Some(Reverse(Cand { sum, entries })) = heap.pop() {
        let x = IntMatrix::from_fn(m, n, |i, j| BigInt::from(entries[i * n + j]));
        let class = ck.class_of(&x);
        if !ck.class_to_index.contains_key(&class) {
            let idx = ck.reps.len();
            ck.class_to_index.insert(class, idx);
            ck.reps.push(x);
            if ck.reps.len() as u64 == order {
                return;
            }
            for pos in 0..m * n {
                let mut next = entries.clone();
                next[pos] += 1;
                if pushed.insert(next.clone()) {
                    heap.push(Reverse(Cand { sum: sum + 1, entries: next }));
                }
            }
        }
    }
    // every class is a non-negative combination of the unit classes
    debug_assert_eq!(ck.reps.len() as u64, order, "cokernel enumeration incomplete");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{bordered, companion_cyclotomic};
    use crate::similarity::resultant::resultant;
    use crate::intlinalg::charpoly;
    use num_traits::Signed;

    fn unit(m: usize, n: usize, i: usize, j: usize) -> IntMatrix {
        IntMatrix::unit(m, n, i, j)
    }

    #[test]
    fn psi_of_equal_identities_is_zero() {
        let i2 = IntMatrix::identity(2);
        assert!(psi_matrix(&i2, &i2).is_zero());
    }

    #[test]
    fn det_psi_is_resultant_up_to_sign() {
        let a = companion_cyclotomic(3);
        let b = IntMatrix::scalar(2, -1).direct_sum(&IntMatrix::identity(1));
        let psi = psi_matrix(&a, &b);
        let d = psi.det().unwrap().abs();
        let r = resultant(&charpoly(&a).unwrap(), &charpoly(&b).unwrap())
            .unwrap()
            .abs();
        assert_eq!(d, r);
        assert_eq!(d, BigInt::from(3));
    }

    #[test]
    fn coker_c3_vs_minus_i2_plus_i1() {
        // Coker ψ = {0, E_13, 2E_13}
        let a = companion_cyclotomic(3);
        let b = IntMatrix::scalar(2, -1).direct_sum(&IntMatrix::identity(1));
        let ck = coker_psi(&a, &b, 1000).unwrap();
        assert_eq!(ck.order, BigInt::from(3));
        let e13 = unit(2, 3, 0, 2);
        let two_e13 = IntMatrix::from_fn(2, 3, |i, j| e13.at(i, j) * 2);
        assert_eq!(ck.reps, vec![IntMatrix::zeros(2, 3), e13.clone(), two_e13]);
        // membership: x_3 + x_6 ≡ 0 (3)
        assert!(ck.contains(&IntMatrix::from_rows(&[&[0, 0, 1], &[0, 0, 2]])));
        assert!(!ck.contains(&e13));
    }

    #[test]
    fn coker_c3_vs_c2plus() {
        // D = C_2^+ ⊕ -I_1; Coker ψ = {0, E_11, 2E_11}
        let a = companion_cyclotomic(3);
        let d = bordered(&IntMatrix::scalar(1, -1), 1).direct_sum(&IntMatrix::scalar(1, -1));
        let ck = coker_psi(&a, &d, 1000).unwrap();
        assert_eq!(ck.order, BigInt::from(3));
        assert_eq!(ck.reps[1], unit(2, 3, 0, 0));
        // membership: 2x_1 + x_2 + 2x_4 + x_5 ≡ 0 (3)
        assert!(ck.contains(&IntMatrix::from_rows(&[&[3, 0, 0], &[0, 0, 0]])));
        assert!(ck.contains(&IntMatrix::from_rows(&[&[1, 1, 0], &[0, 0, 0]])));
    }

    #[test]
    fn coker_i1_vs_c4_minus_i2() {
        // membership: x_1 + x_2 ≡ x_3 ≡ x_4 ≡ 0 (2), eight classes
        let a = IntMatrix::identity(1);
        let b = companion_cyclotomic(4).direct_sum(&IntMatrix::scalar(2, -1));
        let ck = coker_psi(&a, &b, 1000).unwrap();
        assert_eq!(ck.order, BigInt::from(8));
        let expected: Vec<IntMatrix> = vec![
            IntMatrix::from_rows(&[&[0, 0, 0, 0]]),
            IntMatrix::from_rows(&[&[1, 0, 0, 0]]),
            IntMatrix::from_rows(&[&[0, 0, 1, 0]]),
            IntMatrix::from_rows(&[&[0, 0, 0, 1]]),
            IntMatrix::from_rows(&[&[1, 0, 1, 0]]),
            IntMatrix::from_rows(&[&[1, 0, 0, 1]]),
            IntMatrix::from_rows(&[&[0, 0, 1, 1]]),
            IntMatrix::from_rows(&[&[1, 0, 1, 1]]),
        ];
        assert_eq!(ck.reps, expected);
    }

    #[test]
    fn coker_c6_vs_c3_plus_i1_has_order_four() {
        let a = companion_cyclotomic(6);
        let b = companion_cyclotomic(3).direct_sum(&IntMatrix::identity(1));
        let ck = coker_psi(&a, &b, 1000).unwrap();
        assert_eq!(ck.order, BigInt::from(4));
        assert_eq!(ck.reps.len(), 4);
    }

    #[test]
    fn non_coprime_rejected() {
        let c3 = companion_cyclotomic(3);
        assert!(matches!(coker_psi(&c3, &c3, 1000), Err(Error::NonCoprime)));
    }

    #[test]
    fn cap_respected() {
        let a = IntMatrix::identity(1);
        let b = companion_cyclotomic(4).direct_sum(&IntMatrix::scalar(2, -1));
        assert!(matches!(
            coker_psi(&a, &b, 4),
            Err(Error::CapExceeded { .. })
        ));
    }
}
