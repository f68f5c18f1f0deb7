//! Smith normal form over the integers, with transformation matrices.
//!
//! `snf(a)` produces `u·a·v = s` where `u`, `v` are unimodular and `s` is
//! diagonal with non-negative entries `d_1 | d_2 | ...`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::intlinalg::IntMatrix;

#[derive(Clone, Debug)]
pub struct Snf {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    /// Diagonal of `s` (length `min(rows, cols)`, zeros included).
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.s.rows().min(self.s.cols());
        (0..n).map(|i| self.s.at(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

pub fn snf(a: &IntMatrix) -> Snf {
    let rows = a.rows();
    let cols = a.cols();
    let mut s = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let mut t = 0usize;
    'outer: while t < rows && t < cols {
        // Pick the nonzero entry of smallest absolute value in the trailing
        // block as the pivot; small pivots keep intermediate entries small.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if s.at(i, j).is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) => {
                        if s.at(i, j).abs() < s.at(bi, bj).abs() {
                            best = Some((i, j));
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = best else {
            break 'outer;
        };
        swap_rows(&mut s, &mut u, t, pi);
        swap_cols(&mut s, &mut v, t, pj);

        loop {
            // Clear column t below the pivot.
            for i in t + 1..rows {
                if s.at(i, t).is_zero() {
                    continue;
                }
                gcd_rows(&mut s, &mut u, t, i);
            }
            // Clear row t right of the pivot (may reintroduce column entries).
            let mut touched = false;
            for j in t + 1..cols {
                if s.at(t, j).is_zero() {
                    continue;
                }
                gcd_cols(&mut s, &mut v, t, j);
                touched = true;
            }
            if touched && (t + 1..rows).any(|i| !s.at(i, t).is_zero()) {
                continue;
            }
            // Enforce divisibility of the trailing block by the pivot.
            let pivot = s.at(t, t).clone();
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !s.at(i, j).mod_floor(&pivot).is_zero());
            match offender {
                Some((i, _)) => {
                    add_row(&mut s, &mut u, t, i);
                    continue;
                }
                None => break,
            }
        }
        if s.at(t, t).is_negative() {
            negate_row(&mut s, &mut u, t);
        }
        t += 1;
    }
    Snf { s, u, v }
}

/// Diagonal of the Smith normal form.
pub fn invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    snf(a).diagonal()
}

fn swap_rows(s: &mut IntMatrix, u: &mut IntMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    for c in 0..s.cols() {
        let t = s.at(i, c).clone();
        *s.at_mut(i, c) = s.at(j, c).clone();
        *s.at_mut(j, c) = t;
    }
    for c in 0..u.cols() {
        let t = u.at(i, c).clone();
        *u.at_mut(i, c) = u.at(j, c).clone();
        *u.at_mut(j, c) = t;
    }
}

fn swap_cols(s: &mut IntMatrix, v: &mut IntMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    for r in 0..s.rows() {
        let t = s.at(r, i).clone();
        *s.at_mut(r, i) = s.at(r, j).clone();
        *s.at_mut(r, j) = t;
    }
    for r in 0..v.rows() {
        let t = v.at(r, i).clone();
        *v.at_mut(r, i) = v.at(r, j).clone();
        *v.at_mut(r, j) = t;
    }
}

fn negate_row(s: &mut IntMatrix, u: &mut IntMatrix, i: usize) {
    for c in 0..s.cols() {
        let x = -s.at(i, c).clone();
        *s.at_mut(i, c) = x;
    }
    for c in 0..u.cols() {
        let x = -u.at(i, c).clone();
        *u.at_mut(i, c) = x;
    }
}

fn add_row(s: &mut IntMatrix, u: &mut IntMatrix, dst: usize, src: usize) {
    for c in 0..s.cols() {
        let x = s.at(src, c).clone();
        *s.at_mut(dst, c) += x;
    }
    for c in 0..u.cols() {
        let x = u.at(src, c).clone();
        *u.at_mut(dst, c) += x;
    }
}

/// Zero `s[i][r]` against the pivot `s[r][r]`: plain row subtraction when the
/// pivot divides the entry, otherwise a unimodular transform that strictly
/// shrinks the pivot to the gcd.
fn gcd_rows(s: &mut IntMatrix, u: &mut IntMatrix, r: usize, i: usize) {
    let a = s.at(r, r).clone();
    let b = s.at(i, r).clone();
    let (q, rem) = b.div_rem(&a);
    if rem.is_zero() {
        for c in 0..s.cols() {
            let delta = &q * s.at(r, c);
            *s.at_mut(i, c) -= delta;
        }
        for c in 0..u.cols() {
            let delta = &q * u.at(r, c);
            *u.at_mut(i, c) -= delta;
        }
        return;
    }
    let ext = a.extended_gcd(&b);
    let (g, x, y) = (ext.gcd, ext.x, ext.y);
    let ag = &a / &g;
    let bg = &b / &g;
    for c in 0..s.cols() {
        let p = s.at(r, c).clone();
        let q = s.at(i, c).clone();
        *s.at_mut(r, c) = &x * &p + &y * &q;
        *s.at_mut(i, c) = -&bg * &p + &ag * &q;
    }
    for c in 0..u.cols() {
        let p = u.at(r, c).clone();
        let q = u.at(i, c).clone();
        *u.at_mut(r, c) = &x * &p + &y * &q;
        *u.at_mut(i, c) = -&bg * &p + &ag * &q;
    }
}

fn gcd_cols(s: &mut IntMatrix, v: &mut IntMatrix, r: usize, j: usize) {
    let a = s.at(r, r).clone();
    let b = s.at(r, j).clone();
    let (q, rem) = b.div_rem(&a);
    if rem.is_zero() {
        for row in 0..s.rows() {
            let delta = &q * s.at(row, r);
            *s.at_mut(row, j) -= delta;
        }
        for row in 0..v.rows() {
            let delta = &q * v.at(row, r);
            *v.at_mut(row, j) -= delta;
        }
        return;
    }
    let ext = a.extended_gcd(&b);
    let (g, x, y) = (ext.gcd, ext.x, ext.y);
    let ag = &a / &g;
    let bg = &b / &g;
    for row in 0..s.rows() {
        let p = s.at(row, r).clone();
        let q = s.at(row, j).clone();
        *s.at_mut(row, r) = &x * &p + &y * &q;
        *s.at_mut(row, j) = -&bg * &p + &ag * &q;
    }
    for row in 0..v.rows() {
        let p = v.at(row, r).clone();
        let q = v.at(row, j).clone();
        *v.at_mut(row, r) = &x * &p + &y * &q;
        *v.at_mut(row, j) = -&bg * &p + &ag * &q;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn check(a: &IntMatrix) -> Snf {
        let f = snf(a);
        assert_eq!(f.u.mul_ref(a).mul_ref(&f.v), f.s);
        assert_eq!(f.u.det().unwrap().abs(), BigInt::one());
        assert_eq!(f.v.det().unwrap().abs(), BigInt::one());
        let d = f.diagonal();
        for w in d.windows(2) {
            assert!(!w[0].is_negative());
            if !w[0].is_zero() {
                assert!(w[1].mod_floor(&w[0]).is_zero(), "divisibility chain broken: {d:?}");
            } else {
                assert!(w[1].is_zero());
            }
        }
        f
    }

    #[test]
    fn zero_matrix() {
        let f = check(&IntMatrix::zeros(2, 2));
        assert!(f.s.is_zero());
        assert!(f.u.is_identity());
        assert!(f.v.is_identity());
    }

    #[test]
    fn i2_minus_c3() {
        let a = IntMatrix::from_rows(&[&[1, 1], &[-1, 2]]);
        let f = check(&a);
        assert_eq!(f.diagonal(), vec![BigInt::one(), BigInt::from(3)]);
    }

    #[test]
    fn diag_chain_normalization() {
        let a = IntMatrix::from_rows(&[&[2, 0], &[0, 3]]);
        let f = check(&a);
        assert_eq!(f.diagonal(), vec![BigInt::one(), BigInt::from(6)]);
    }

    #[test]
    fn rectangular_with_zero_rows() {
        let a = IntMatrix::from_rows(&[&[2, 4, 6], &[0, 0, 0]]);
        let f = check(&a);
        assert_eq!(f.diagonal(), vec![BigInt::from(2), BigInt::zero()]);
    }
}
