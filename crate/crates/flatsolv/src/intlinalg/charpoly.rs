//! Characteristic and minimal polynomials, finite-order detection.
//!
//! The characteristic polynomial is computed by the Faddeev-LeVerrier
//! recurrence, which stays in exact integer arithmetic (every trace division
//! is exact). The minimal polynomial is obtained by cyclotomic trial division
//! of the characteristic polynomial with annihilation checks; when the
//! characteristic polynomial does not split into cyclotomic factors a
//! Krylov-style fallback finds the first linear dependence among the powers
//! of the matrix.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cyclotomic;
use crate::error::{Error, Result};
use crate::intlinalg::hnf::rank;
use crate::intlinalg::lattice::kernel_lattice;
use crate::intlinalg::poly::IntPoly;
use crate::intlinalg::IntMatrix;

/// Monic characteristic polynomial `det(x·I - A)`.
pub fn charpoly(a: &IntMatrix) -> Result<IntPoly> {
    if !a.is_square() {
        return Err(Error::NonSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    // coeffs[n] = 1, coeffs[n-k] = c_k from M_1 = I, N_k = A·M_k,
    // c_k = -tr(N_k)/k, M_{k+1} = N_k + c_k·I.
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = IntMatrix::identity(n);
    for k in 1..=n {
        let nk = a.mul_ref(&m);
        let t = nk.trace();
        let (c, r) = (-t).div_rem(&BigInt::from(k as u64));
        debug_assert!(r.is_zero(), "Faddeev-LeVerrier trace division must be exact");
        coeffs[n - k] = c.clone();
        if k < n {
            m = nk;
            for i in 0..n {
                *m.at_mut(i, i) += &c;
            }
        }
    }
    Ok(IntPoly::new(coeffs))
}

/// Monic minimal polynomial.
pub fn minpoly(a: &IntMatrix) -> Result<IntPoly> {
    let cp = charpoly(a)?;
    if let Ok(factors) = cyclotomic::factor_cyclotomic(&cp) {
        let mut m = IntPoly::one();
        for &(index, mult) in &factors {
            let f = cyclotomic::cyclotomic_poly(index);
            m = m.mul(&f.pow(minimal_exponent(a, &f, mult)));
        }
        if m.eval_matrix(a).is_zero() {
            return Ok(m);
        }
        // fall through to the general method; this indicates a bug upstream
        debug_assert!(false, "factored minimal polynomial must annihilate");
    }
    Ok(krylov_minpoly(a))
}

/// Smallest `e` with `ker f(A)^e = ker f(A)^mult`, i.e. the exponent of `f`
/// in the minimal polynomial.
fn minimal_exponent(a: &IntMatrix, f: &IntPoly, mult: usize) -> usize {
    if mult == 1 {
        return 1;
    }
    let fa = f.eval_matrix(a);
    let target = rank(&fa.pow(mult as u64));
    let mut p = fa.clone();
    for e in 1..mult {
        if rank(&p) == target {
            return e;
        }
        p = p.mul_ref(&fa);
    }
    mult
}

/// Minimal polynomial as the first integer linear dependence among
/// `vec(I), vec(A), vec(A^2), ...`.
pub fn krylov_minpoly(a: &IntMatrix) -> IntPoly {
    assert!(a.is_square());
    let n = a.rows();
    if n == 0 {
        return IntPoly::one();
    }
    let mut powers: Vec<IntMatrix> = vec![IntMatrix::identity(n)];
    for d in 1..=n {
        powers.push(powers[d - 1].mul_ref(a));
        // columns of k are vec(A^0), ..., vec(A^d)
        let k = IntMatrix::from_fn(n * n, d + 1, |i, j| powers[j].entries()[i].clone());
        let ker = kernel_lattice(&k);
        if ker.rank() > 0 {
            debug_assert_eq!(ker.rank(), 1, "first dependence must be one-dimensional");
            let mut coeffs = ker.basis().col(0);
            if coeffs.last().is_some_and(|c| c.is_negative()) {
                for c in &mut coeffs {
                    *c = -&*c;
                }
            }
            let p = IntPoly::new(coeffs);
            debug_assert!(p.is_monic(), "minimal polynomial of an integer matrix is monic");
            debug_assert!(p.eval_matrix(a).is_zero());
            return p;
        }
    }
    unreachable!("characteristic polynomial bounds the dependence degree");
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixOrder {
    Finite(u64),
    Infinite,
}

impl MatrixOrder {
    pub fn finite(self) -> Option<u64> {
        match self {
            MatrixOrder::Finite(d) => Some(d),
            MatrixOrder::Infinite => None,
        }
    }
}

/// Least `d ≥ 1` with `A^d = I`, or `Infinite`.
///
/// A matrix has finite order iff its minimal polynomial is squarefree with
/// every irreducible factor cyclotomic; the order is then the lcm of the
/// cyclotomic indices.
pub fn matrix_order(a: &IntMatrix) -> Result<MatrixOrder> {
    if !a.is_square() {
        return Err(Error::NonSquare { rows: a.rows(), cols: a.cols() });
    }
    if a.rows() == 0 {
        return Ok(MatrixOrder::Finite(1));
    }
    let det = a.det()?;
    if det.is_zero() {
        return Err(Error::Singular);
    }
    if !det.abs().is_one() {
        return Ok(MatrixOrder::Infinite);
    }
    let m = minpoly(a)?;
    if !m.is_squarefree() {
        return Ok(MatrixOrder::Infinite);
    }
    let Ok(factors) = cyclotomic::factor_cyclotomic(&m) else {
        return Ok(MatrixOrder::Infinite);
    };
    let mut order: u64 = 1;
    for (index, mult) in factors {
        debug_assert_eq!(mult, 1);
        order = order.lcm(&index);
    }
    Ok(MatrixOrder::Finite(order))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    #[test]
    fn charpoly_of_c3_is_phi3() {
        let c3 = c(&[&[0, -1], &[1, -1]]);
        assert_eq!(charpoly(&c3).unwrap(), IntPoly::from_coeffs(&[1, 1, 1]));
    }

    #[test]
    fn charpoly_minpoly_of_case1_block() {
        // I_3 ⊕ C_3 has charpoly (x-1)^3·Φ_3 and minpoly (x-1)·Φ_3
        let m = IntMatrix::identity(3).direct_sum(&c(&[&[0, -1], &[1, -1]]));
        let phi3 = IntPoly::from_coeffs(&[1, 1, 1]);
        let xm1 = IntPoly::x_minus(1);
        assert_eq!(charpoly(&m).unwrap(), xm1.pow(3).mul(&phi3));
        assert_eq!(minpoly(&m).unwrap(), xm1.mul(&phi3));
        assert_eq!(krylov_minpoly(&m), xm1.mul(&phi3));
    }

    #[test]
    fn minpoly_of_identity() {
        assert_eq!(minpoly(&IntMatrix::identity(5)).unwrap(), IntPoly::x_minus(1));
    }

    #[test]
    fn order_of_minus_identity() {
        assert_eq!(matrix_order(&IntMatrix::scalar(4, -1)).unwrap(), MatrixOrder::Finite(2));
    }

    #[test]
    fn order_of_companion_phi12_by_multiplication() {
        let c12 = c(&[&[0, 0, 0, -1], &[1, 0, 0, 0], &[0, 1, 0, 1], &[0, 0, 1, 0]]);
        assert_eq!(matrix_order(&c12).unwrap(), MatrixOrder::Finite(12));
        // oracle: repeated multiplication
        assert!(c12.pow(12).is_identity());
        for e in 1..12 {
            assert!(!c12.pow(e).is_identity());
        }
    }

    #[test]
    fn infinite_order_detected() {
        let shear = c(&[&[1, 1], &[0, 1]]);
        assert_eq!(matrix_order(&shear).unwrap(), MatrixOrder::Infinite);
        let big = c(&[&[2, 0], &[0, 1]]);
        assert_eq!(matrix_order(&big).unwrap(), MatrixOrder::Infinite);
        assert!(matrix_order(&IntMatrix::zeros(2, 2)).is_err());
    }

    #[test]
    fn krylov_handles_non_cyclotomic() {
        // x^2 - x - 1 is irreducible but not cyclotomic
        let fib = c(&[&[1, 1], &[1, 0]]);
        assert_eq!(krylov_minpoly(&fib), IntPoly::from_coeffs(&[-1, -1, 1]));
        assert_eq!(minpoly(&fib).unwrap(), IntPoly::from_coeffs(&[-1, -1, 1]));
        assert_eq!(matrix_order(&fib).unwrap(), MatrixOrder::Infinite);
    }
}
