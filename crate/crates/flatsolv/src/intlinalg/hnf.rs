//! Hermite normal form over the integers, with transformation matrices.
//!
//! Convention (fixed for reproducible output): row-style HNF is upper
//! echelon, pivots are positive, entries above a pivot are reduced into
//! `[0, pivot)`, zero rows sink to the bottom. The column-style variant is
//! obtained by transposition.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};


use crate::intlinalg::IntMatrix;

/// Returns `(h, u)` with `u * a = h`, `u` unimodular, `h` in row HNF.
pub fn row_hermite(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let rows = a.rows();
    let cols = a.cols();
    let mut h = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut pivot_row = 0usize;

    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        // Bring a nonzero entry into the pivot position.
        let Some(src) = (pivot_row..rows).find(|&i| !h.at(i, col).is_zero()) else {
            continue;
        };
        if src != pivot_row {
            swap_rows(&mut h, &mut u, pivot_row, src);
        }
        // Clear everything below with unimodular 2x2 row combinations.
        for i in pivot_row + 1..rows {
            if h.at(i, col).is_zero() {
                continue;
            }
            gcd_rows(&mut h, &mut u, pivot_row, i, col);
        }
        if h.at(pivot_row, col).is_negative() {
            negate_row(&mut h, &mut u, pivot_row);
        }
        // Reduce the entries above the pivot into [0, pivot).
        let pivot = h.at(pivot_row, col).clone();
        for i in 0..pivot_row {
            let q = h.at(i, col).div_floor(&pivot);
            if !q.is_zero() {
                row_sub_mul(&mut h, &mut u, i, pivot_row, &q);
            }
        }
        pivot_row += 1;
    }
    (h, u)
}

/// Returns `(h, v)` with `a * v = h`, `v` unimodular, `h` in column HNF.
pub fn col_hermite(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (ht, ut) = row_hermite(&a.transpose());
    (ht.transpose(), ut.transpose())
}

/// Rank of an integer matrix (equal over Z and over Q).
pub fn rank(a: &IntMatrix) -> usize {
    let (h, _) = row_hermite(a);
    (0..h.rows())
        .filter(|&i| (0..h.cols()).any(|j| !h.at(i, j).is_zero()))
        .count()
}

fn swap_rows(h: &mut IntMatrix, u: &mut IntMatrix, i: usize, j: usize) {
    for c in 0..h.cols() {
        let t = h.at(i, c).clone();
        *h.at_mut(i, c) = h.at(j, c).clone();
        *h.at_mut(j, c) = t;
    }
    for c in 0..u.cols() {
        let t = u.at(i, c).clone();
        *u.at_mut(i, c) = u.at(j, c).clone();
        *u.at_mut(j, c) = t;
    }
}

fn negate_row(h: &mut IntMatrix, u: &mut IntMatrix, i: usize) {
    for c in 0..h.cols() {
        let v = -h.at(i, c).clone();
        *h.at_mut(i, c) = v;
    }
    for c in 0..u.cols() {
        let v = -u.at(i, c).clone();
        *u.at_mut(i, c) = v;
    }
}

/// `row_i -= q * row_j` applied to both `h` and `u`.
fn row_sub_mul(h: &mut IntMatrix, u: &mut IntMatrix, i: usize, j: usize, q: &BigInt) {
    for c in 0..h.cols() {
        let delta = q * h.at(j, c);
        *h.at_mut(i, c) -= delta;
    }
    for c in 0..u.cols() {
        let delta = q * u.at(j, c);
        *u.at_mut(i, c) -= delta;
    }
}

/// Replace rows (r, i) by the unimodular combination that puts
/// gcd(h[r][col], h[i][col]) at (r, col) and 0 at (i, col). Plain
/// subtraction when the pivot already divides the entry.
fn gcd_rows(h: &mut IntMatrix, u: &mut IntMatrix, r: usize, i: usize, col: usize) {
    let a = h.at(r, col).clone();
    let b = h.at(i, col).clone();
    let (q, rem) = b.div_rem(&a);
    if rem.is_zero() {
        row_sub_mul(h, u, i, r, &q);
        return;
    }
    let ext = a.extended_gcd(&b);
    let (g, s, t) = (ext.gcd, ext.x, ext.y);
    let ag = &a / &g;
    let bg = &b / &g;
    // [[s, t], [-bg, ag]] has determinant (s·a + t·b)/g = 1.
    apply_2x2_rows(h, r, i, &s, &t, &(-&bg), &ag);
    apply_2x2_rows(u, r, i, &s, &t, &(-&bg), &ag);
}

fn apply_2x2_rows(
    m: &mut IntMatrix,
    r: usize,
    i: usize,
    a: &BigInt,
    b: &BigInt,
    c: &BigInt,
    d: &BigInt,
) {
    for col in 0..m.cols() {
        let x = m.at(r, col).clone();
        let y = m.at(i, col).clone();
        *m.at_mut(r, col) = a * &x + b * &y;
        *m.at_mut(i, col) = c * &x + d * &y;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) {
        let (h, u) = row_hermite(a);
        assert_eq!(u.det().unwrap().abs(), num_bigint::BigInt::from(1));
        assert_eq!(u.mul_ref(a), h);
    }

    #[test]
    fn identity_fixed_point() {
        let i3 = IntMatrix::identity(3);
        let (h, u) = row_hermite(&i3);
        assert_eq!(h, i3);
        assert_eq!(u, i3);
    }

    #[test]
    fn two_by_two_example() {
        // [[1,3],[0,2]] with the entry above the pivot reduced into [0, 2)
        let a = IntMatrix::from_rows(&[&[2, 4], &[1, 3]]);
        let (h, _) = row_hermite(&a);
        assert_eq!(h, IntMatrix::from_rows(&[&[1, 1], &[0, 2]]));
        check(&a);
    }

    #[test]
    fn scalar_image_basis() {
        // im(I - (-I_2)) = im(2 I_2)
        let a = IntMatrix::scalar(2, 2);
        let (h, _) = col_hermite(&a);
        assert_eq!(h, IntMatrix::scalar(2, 2));
    }

    #[test]
    fn rank_of_rectangular() {
        let a = IntMatrix::from_rows(&[&[1, 2, 3], &[2, 4, 6], &[0, 0, 5]]);
        assert_eq!(rank(&a), 2);
        assert_eq!(rank(&IntMatrix::zeros(3, 4)), 0);
    }

    #[test]
    fn reduction_above_pivots() {
        let a = IntMatrix::from_rows(&[&[4, 7], &[2, 5]]);
        let (h, _) = row_hermite(&a);
        // pivots positive, entry above second pivot reduced into [0, pivot)
        for i in 0..2 {
            assert!(h.at(i, i).is_positive());
        }
        assert!(h.at(0, 1) >= &num_bigint::BigInt::from(0) && h.at(0, 1) < h.at(1, 1));
        check(&a);
    }
}
