//! Dense matrices over the ring of integers.
//!
//! All arithmetic is exact, on arbitrary-precision integers. This is the
//! universal carrier for everything else in the crate: generator matrices,
//! Sylvester matrices, lattice bases, transformation matrices.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as DeError;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(
            entries.len(),
            rows * cols,
            "entry count {} does not match shape {}x{}",
            entries.len(),
            rows,
            cols
        );
        IntMatrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigInt::one();
        }
        m
    }

    /// Scalar multiple of the identity.
    pub fn scalar(n: usize, c: i64) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigInt::from(c);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix { rows: r, cols: c, entries }
    }

    /// Matrix unit E_{ij} (1-based in the literature; 0-based here).
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        *m.at_mut(i, j) = BigInt::one();
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: impl Into<BigInt>) {
        self.entries[i * self.cols + j] = v.into();
    }

    /// Row-major view of all entries.
    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.at(i, j).is_one()
                    } else {
                        self.at(i, j).is_zero()
                    }
                })
            })
    }

    pub fn trace(&self) -> BigInt {
        assert!(self.is_square(), "trace of non-square matrix");
        (0..self.rows).map(|i| self.at(i, i)).sum()
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.entries
            .iter()
            .map(|e| e.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Block diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &IntMatrix) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *m.at_mut(i, j) = self.at(i, j).clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                *m.at_mut(self.rows + i, self.cols + j) = other.at(i, j).clone();
            }
        }
        m
    }

    /// Direct sum of a list of square blocks.
    pub fn block_diag(blocks: &[IntMatrix]) -> IntMatrix {
        let mut m = IntMatrix::zeros(0, 0);
        for b in blocks {
            m = m.direct_sum(b);
        }
        m
    }

    /// Upper block triangular matrix `[[a, x], [0, d]]`.
    pub fn block_upper(a: &IntMatrix, x: &IntMatrix, d: &IntMatrix) -> IntMatrix {
        assert_eq!(a.rows, x.rows, "X must have as many rows as A");
        assert_eq!(d.cols, x.cols, "X must have as many cols as D");
        let mut m = a.direct_sum(d);
        for i in 0..x.rows {
            for j in 0..x.cols {
                *m.at_mut(i, a.cols + j) = x.at(i, j).clone();
            }
        }
        m
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        IntMatrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                other.at(i, j - self.cols).clone()
            }
        })
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> IntMatrix {
        assert!(r0 <= r1 && r1 <= self.rows && c0 <= c1 && c1 <= self.cols);
        IntMatrix::from_fn(r1 - r0, c1 - c0, |i, j| self.at(r0 + i, c0 + j).clone())
    }

    pub fn mul_ref(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(
            self.cols, other.rows,
            "product shape mismatch {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut m = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if !b.is_zero() {
                        *m.at_mut(i, j) += a * b;
                    }
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j) * &v[j]).sum())
            .collect()
    }

    /// `self^e` by repeated squaring.
    pub fn pow(&self, e: u64) -> IntMatrix {
        assert!(self.is_square(), "power of non-square matrix");
        let mut result = IntMatrix::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        result
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = num / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if sign < 0 { -d } else { d })
    }

    /// Inverse of a matrix with determinant ±1, or `None`.
    pub fn inverse_unimodular(&self) -> Option<IntMatrix> {
        if !self.is_square() {
            return None;
        }
        let (h, u) = crate::intlinalg::hnf::row_hermite(self);
        if h.is_identity() {
            Some(u)
        } else {
            None
        }
    }

    /// Entrywise reduction into `[0, m)`.
    pub fn reduce_mod(&self, m: &BigInt) -> IntMatrix {
        IntMatrix::from_fn(self.rows, self.cols, |i, j| {
            self.at(i, j).mod_floor_ref(m)
        })
    }
}

trait ModFloorRef {
    fn mod_floor_ref(&self, m: &BigInt) -> BigInt;
}

impl ModFloorRef for BigInt {
    fn mod_floor_ref(&self, m: &BigInt) -> BigInt {
        let r = self % m;
        if r.is_negative() {
            r + m
        } else {
            r
        }
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;
    fn add(self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "sum shape mismatch");
        IntMatrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j) + other.at(i, j))
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;
    fn sub(self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "difference shape mismatch");
        IntMatrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j) - other.at(i, j))
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;
    fn neg(self) -> IntMatrix {
        IntMatrix::from_fn(self.rows, self.cols, |i, j| -self.at(i, j))
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, other: &IntMatrix) -> IntMatrix {
        self.mul_ref(other)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix({}x{}){:?}", self.rows, self.cols, self.entries)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

// JSON schema: {"rows": r, "cols": c, "entries": [[..], ..]} where each entry
// is a plain number when it fits in 64 bits and a decimal string otherwise.
impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("IntMatrix", 3)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("cols", &self.cols)?;
        let rows: Vec<Vec<serde_json::Value>> = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|e| match e.to_i64() {
                        Some(v) => serde_json::Value::from(v),
                        None => serde_json::Value::from(e.to_string()),
                    })
                    .collect()
            })
            .collect();
        st.serialize_field("entries", &rows)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            rows: usize,
            cols: usize,
            entries: Vec<Vec<serde_json::Value>>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.entries.len() != raw.rows {
            return Err(D::Error::custom(format!(
                "expected {} rows, found {}",
                raw.rows,
                raw.entries.len()
            )));
        }
        let mut entries = Vec::with_capacity(raw.rows * raw.cols);
        for row in &raw.entries {
            if row.len() != raw.cols {
                return Err(D::Error::custom(format!(
                    "expected {} cols, found {}",
                    raw.cols,
                    row.len()
                )));
            }
            for v in row {
                let e = match v {
                    serde_json::Value::Number(n) => {
                        let i = n
                            .as_i64()
                            .ok_or_else(|| D::Error::custom("non-integer matrix entry"))?;
                        BigInt::from(i)
                    }
                    serde_json::Value::String(s) => s
                        .parse::<BigInt>()
                        .map_err(|e| D::Error::custom(format!("bad big integer {s:?}: {e}")))?,
                    other => {
                        return Err(D::Error::custom(format!(
                            "matrix entry must be number or decimal string, got {other}"
                        )))
                    }
                };
                entries.push(e);
            }
        }
        Ok(IntMatrix::new(raw.rows, raw.cols, entries))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_identity() {
        assert_eq!(IntMatrix::identity(5).det().unwrap(), BigInt::one());
    }

    #[test]
    fn det_i2_minus_c3() {
        // I_2 - C_3 with C_3 = [[0,-1],[1,-1]]; cofactor expansion gives 3
        let m = IntMatrix::from_rows(&[&[1, 1], &[-1, 2]]);
        assert_eq!(m.det().unwrap(), BigInt::from(3));
    }

    #[test]
    fn det_non_square() {
        assert!(IntMatrix::zeros(2, 3).det().is_err());
    }

    #[test]
    fn det_singular_and_permuted() {
        let m = IntMatrix::from_rows(&[&[0, 2], &[1, 3]]);
        assert_eq!(m.det().unwrap(), BigInt::from(-2));
        let z = IntMatrix::from_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(z.det().unwrap(), BigInt::zero());
    }

    #[test]
    fn pow_and_mul() {
        let c4 = IntMatrix::from_rows(&[&[0, -1], &[1, 0]]);
        assert!(c4.pow(4).is_identity());
        assert_eq!(c4.pow(2), IntMatrix::scalar(2, -1));
    }

    #[test]
    fn inverse_unimodular_round_trip() {
        let m = IntMatrix::from_rows(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse_unimodular().unwrap();
        assert!(m.mul_ref(&inv).is_identity());
        let not_unimodular = IntMatrix::scalar(2, 2);
        assert!(not_unimodular.inverse_unimodular().is_none());
    }

    #[test]
    fn json_round_trip_with_big_entries() {
        let mut m = IntMatrix::zeros(1, 2);
        m.set(0, 0, BigInt::parse_bytes(b"123456789012345678901234567890", 10).unwrap());
        m.set(0, 1, -7);
        let s = serde_json::to_string(&m).unwrap();
        assert!(s.contains("\"123456789012345678901234567890\""));
        let back: IntMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }
}
