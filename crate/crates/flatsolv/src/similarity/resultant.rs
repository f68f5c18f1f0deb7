//! Sylvester matrices and resultants.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::intlinalg::{IntMatrix, IntPoly};

/// Sylvester matrix of `p` (degree m) and `q` (degree n): the first `n` rows
/// carry the coefficients of `p` in descending order, each shifted one
/// column right of the previous, followed by `m` rows carrying `q`.
pub fn sylvester(p: &IntPoly, q: &IntPoly) -> Result<IntMatrix> {
    let m = p.degree().ok_or(Error::ZeroPolynomial)?;
    let n = q.degree().ok_or(Error::ZeroPolynomial)?;
    if m == 0 || n == 0 {
        return Err(Error::Domain("sylvester needs degrees >= 1".into()));
    }
    let size = m + n;
    let mut s = IntMatrix::zeros(size, size);
    for row in 0..n {
        for k in 0..=m {
            *s.at_mut(row, row + k) = p.coeff(m - k);
        }
    }
    for row in 0..m {
        for k in 0..=n {
            *s.at_mut(n + row, row + k) = q.coeff(n - k);
        }
    }
    Ok(s)
}

/// Resultant of `p` and `q` as the determinant of the Sylvester matrix.
/// Nonzero iff `p` and `q` are coprime over Q.
pub fn resultant(p: &IntPoly, q: &IntPoly) -> Result<BigInt> {
    sylvester(p, q)?.det()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::cyclotomic_poly;
    use num_traits::Signed;

    fn xm1() -> IntPoly {
        IntPoly::x_minus(1)
    }

    fn xp1() -> IntPoly {
        IntPoly::from_coeffs(&[1, 1])
    }

    #[test]
    fn worked_resultants() {
        // the six resultants appearing in the case analysis
        let cases: Vec<(IntPoly, IntPoly, i64)> = vec![
            (cyclotomic_poly(3), xm1().mul(&xp1().pow(2)), 3),
            (xm1(), cyclotomic_poly(4).mul(&xp1().pow(2)), 8),
            (xm1(), xp1().pow(2).mul(&cyclotomic_poly(6)), 4),
            (cyclotomic_poly(4), xm1().mul(&cyclotomic_poly(3)), 2),
            (cyclotomic_poly(6), xm1().mul(&cyclotomic_poly(3)), 4),
            (cyclotomic_poly(6), cyclotomic_poly(4).mul(&xm1()), 1),
        ];
        for (p, q, expected) in cases {
            let r = resultant(&p, &q).unwrap();
            assert_eq!(r.abs(), BigInt::from(expected), "R({p}, {q})");
        }
    }

    #[test]
    fn zero_iff_common_factor() {
        let p = cyclotomic_poly(3).mul(&xm1());
        let q = cyclotomic_poly(3).mul(&xp1());
        assert_eq!(resultant(&p, &q).unwrap(), BigInt::from(0));
        assert!(resultant(&IntPoly::zero(), &p).is_err());
    }

    #[test]
    fn sylvester_shape_and_sign_stability() {
        let s = sylvester(&cyclotomic_poly(3), &xm1().mul(&xp1().pow(2))).unwrap();
        assert_eq!((s.rows(), s.cols()), (5, 5));
        // first deg(q) = 3 rows carry Φ_3 = (1,1,1)
        assert_eq!(s.row(0)[0], BigInt::from(1));
        assert_eq!(s.row(0)[1], BigInt::from(1));
        assert_eq!(s.row(0)[2], BigInt::from(1));
        // determinant with this layout is fixed once and for all
        assert_eq!(s.det().unwrap(), BigInt::from(3));
    }
}
