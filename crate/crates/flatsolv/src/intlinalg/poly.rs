//! Univariate polynomials with arbitrary-precision integer coefficients.
//!
//! Coefficients are stored in ascending degree order with no trailing zeros,
//! so the zero polynomial is the empty coefficient list.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::intlinalg::IntMatrix;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPoly::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        IntPoly::new(vec![BigInt::from(c)])
    }

    /// The monomial `c·x^d`.
    pub fn monomial(c: impl Into<BigInt>, d: usize) -> Self {
        let c = c.into();
        if c.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[d] = c;
        IntPoly { coeffs }
    }

    pub fn x() -> Self {
        IntPoly::monomial(1, 1)
    }

    /// `x - c`.
    pub fn x_minus(c: i64) -> Self {
        IntPoly::new(vec![BigInt::from(-c), BigInt::one()])
    }

    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = -BigInt::one();
        coeffs[n] = BigInt::one();
        IntPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, d: usize) -> BigInt {
        self.coeffs.get(d).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::new(coeffs)
    }

    pub fn pow(&self, e: usize) -> IntPoly {
        let mut r = IntPoly::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Euclidean division by a monic divisor: `self = q·div + r` with
    /// `deg r < deg div`. Integer coefficients are preserved exactly.
    pub fn divrem_monic(&self, div: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(div.is_monic(), "divisor must be monic");
        let d = div.degree().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (IntPoly::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let c = rem[i].clone();
            if c.is_zero() {
                continue;
            }
            quot[i - d] = c.clone();
            for (k, dc) in div.coeffs.iter().enumerate() {
                let delta = &c * dc;
                rem[i - d + k] -= delta;
            }
        }
        (IntPoly::new(quot), IntPoly::new(rem))
    }

    /// Exact division by a monic divisor, `None` when the remainder is nonzero.
    pub fn div_exact_monic(&self, div: &IntPoly) -> Option<IntPoly> {
        let (q, r) = self.divrem_monic(div);
        r.is_zero().then_some(q)
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(i as u64 + 1))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Evaluate at a square matrix by Horner's rule.
    pub fn eval_matrix(&self, a: &IntMatrix) -> IntMatrix {
        assert!(a.is_square(), "polynomial evaluation needs a square matrix");
        let n = a.rows();
        let mut acc = IntMatrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(a);
            for i in 0..n {
                *acc.at_mut(i, i) += c;
            }
        }
        acc
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = self.content();
        if self.leading_coeff().is_negative() {
            c = -c;
        }
        IntPoly::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Primitive gcd via the subresultant-style pseudo-remainder sequence.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.is_zero() {
            return b;
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }

    /// Pseudo-remainder: remainder of `lc(b)^(deg a - deg b + 1) · a` by `b`.
    fn pseudo_rem(&self, b: &IntPoly) -> IntPoly {
        let db = b.degree().expect("division by zero polynomial");
        let lb = b.leading_coeff();
        let mut rem = self.clone();
        while let Some(dr) = rem.degree() {
            if dr < db {
                break;
            }
            let lr = rem.leading_coeff();
            let shift = dr - db;
            // rem <- lb·rem - lr·x^shift·b
            let mut coeffs: Vec<BigInt> = rem.coeffs.iter().map(|c| c * &lb).collect();
            for (k, bc) in b.coeffs.iter().enumerate() {
                coeffs[shift + k] -= &lr * bc;
            }
            rem = IntPoly::new(coeffs);
            if rem.degree() == Some(dr) {
                // leading term must cancel
                unreachable!("pseudo-division failed to reduce degree");
            }
        }
        rem
    }

    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        let g = self.gcd(&self.derivative());
        g.degree() == Some(0)
    }

    /// Divisibility test for a monic divisor.
    pub fn divisible_by(&self, div: &IntPoly) -> bool {
        self.div_exact_monic(div).is_some()
    }

    pub fn monic_check(&self) -> Result<()> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match d {
                0 => write!(f, "{abs}")?,
                1 => {
                    if abs.is_one() {
                        write!(f, "x")?;
                    } else {
                        write!(f, "{abs}*x")?;
                    }
                }
                _ => {
                    if abs.is_one() {
                        write!(f, "x^{d}")?;
                    } else {
                        write!(f, "{abs}*x^{d}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_exact() {
        // (x-1)(x+1)^2 = x^3 + x^2 - x - 1
        let p = IntPoly::x_minus(1).mul(&IntPoly::from_coeffs(&[1, 1]).pow(2));
        assert_eq!(p, IntPoly::from_coeffs(&[-1, -1, 1, 1]));
        let q = p.div_exact_monic(&IntPoly::from_coeffs(&[1, 1])).unwrap();
        assert_eq!(q, IntPoly::from_coeffs(&[-1, 0, 1]));
        assert!(p.div_exact_monic(&IntPoly::from_coeffs(&[2, 1])).is_none());
    }

    #[test]
    fn gcd_of_cyclotomic_products() {
        let phi3 = IntPoly::from_coeffs(&[1, 1, 1]);
        let phi4 = IntPoly::from_coeffs(&[1, 0, 1]);
        let a = phi3.mul(&phi4);
        let b = phi3.mul(&IntPoly::x_minus(1));
        assert_eq!(a.gcd(&b), phi3);
        assert_eq!(phi3.gcd(&phi4), IntPoly::one());
    }

    #[test]
    fn squarefree_detection() {
        let phi3 = IntPoly::from_coeffs(&[1, 1, 1]);
        assert!(phi3.is_squarefree());
        assert!(!phi3.pow(2).is_squarefree());
        assert!(phi3.mul(&IntPoly::x_minus(1)).is_squarefree());
    }

    #[test]
    fn eval_matrix_annihilates() {
        let c3 = IntMatrix::from_rows(&[&[0, -1], &[1, -1]]);
        let phi3 = IntPoly::from_coeffs(&[1, 1, 1]);
        assert!(phi3.eval_matrix(&c3).is_zero());
    }

    #[test]
    fn display_descending() {
        let p = IntPoly::from_coeffs(&[1, 0, -1, 0, 1]);
        assert_eq!(p.to_string(), "x^4 - x^2 + 1");
    }
}
