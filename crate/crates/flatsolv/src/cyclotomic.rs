//! Euler totient machinery, cyclotomic polynomials, companion matrices and
//! the angle-multiset enumeration behind the lattice-existence analysis.
//!
//! Angles are exact rationals `q` with the rotation angle equal to `2πq`.
//! No trigonometric floating point appears anywhere: integrality of a
//! rotation's characteristic polynomial is decided purely by whether the
//! angle multiset is a union of complete Galois orbits.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intlinalg::{IntMatrix, IntPoly};

/// Euler's totient function, by trial-division factorization.
pub fn totient(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::Domain("totient of 0".into()));
    }
    let mut phi = 1u64;
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            let mut pk = 1;
            while m % p == 0 {
                m /= p;
                pk *= p;
            }
            phi *= pk - pk / p;
        }
        p += 1;
    }
    if m > 1 {
        phi *= m - 1;
    }
    Ok(phi)
}

/// All `n` with `φ(n) = d`, in increasing order. Complete because
/// `φ(n) ≥ √(n/2)` bounds the search by `n ≤ 2d²`.
pub fn inverse_totient(d: u64) -> Vec<u64> {
    if d == 0 {
        return vec![];
    }
    let bound = 2 * d * d;
    (1..=bound).filter(|&n| totient(n).unwrap() == d).collect()
}

/// The n-th cyclotomic polynomial, by exact division of `x^n - 1` by all
/// `Φ_d` with `d | n`, `d < n`.
pub fn cyclotomic_poly(n: u64) -> IntPoly {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut p = IntPoly::x_pow_minus_one(n as usize);
    for d in 1..n {
        if n % d == 0 {
            p = p
                .div_exact_monic(&cyclotomic_poly(d))
                .expect("x^n - 1 is divisible by every Φ_d with d | n");
        }
    }
    p
}

/// Factor `p` as a product of cyclotomic polynomials, returned as sorted
/// `(index, multiplicity)` pairs. Errors with the unfactored remainder when
/// `p` is not such a product (up to sign).
pub fn factor_cyclotomic(p: &IntPoly) -> Result<Vec<(u64, usize)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let deg = p.degree().unwrap() as u64;
    let mut rem = p.clone();
    if rem.leading_coeff() == BigInt::from(-1) {
        rem = rem.neg();
    }
    if !rem.is_monic() {
        return Err(Error::CannotFactor(rem.to_string()));
    }
    let mut factors = Vec::new();
    let bound = 2 * deg * deg + 2;
    for j in 1..=bound {
        if rem.is_one() {
            break;
        }
        if totient(j).unwrap() > rem.degree().unwrap() as u64 {
            continue;
        }
        let phi = cyclotomic_poly(j);
        let mut mult = 0usize;
        while let Some(q) = rem.div_exact_monic(&phi) {
            rem = q;
            mult += 1;
        }
        if mult > 0 {
            factors.push((j, mult));
        }
    }
    if rem.is_one() {
        Ok(factors)
    } else {
        Err(Error::CannotFactor(rem.to_string()))
    }
}

/// Companion matrix of a monic polynomial: subdiagonal ones, last column the
/// negated coefficients.
pub fn companion(p: &IntPoly) -> Result<IntMatrix> {
    p.monic_check()?;
    let d = p.degree().unwrap();
    if d == 0 {
        return Err(Error::Domain("companion matrix needs degree >= 1".into()));
    }
    let mut m = IntMatrix::zeros(d, d);
    for i in 1..d {
        m.set(i, i - 1, 1);
    }
    for i in 0..d {
        m.set(i, d - 1, -p.coeff(i));
    }
    Ok(m)
}

/// Companion matrix `C_n` of `Φ_n`.
pub fn companion_cyclotomic(n: u64) -> IntMatrix {
    companion(&cyclotomic_poly(n)).expect("Φ_n is monic of positive degree")
}

/// Bordered extension `A^± = [[A, e_1ᵀ], [0, ±1]]`.
pub fn bordered(a: &IntMatrix, sign: i64) -> IntMatrix {
    assert!(sign == 1 || sign == -1, "border sign must be ±1");
    assert!(a.is_square());
    let n = a.rows();
    let mut m = IntMatrix::zeros(n + 1, n + 1);
    for i in 0..n {
        for j in 0..n {
            *m.at_mut(i, j) = a.at(i, j).clone();
        }
    }
    m.set(0, n, 1);
    m.set(n, n, sign);
    m
}

/// A multiset of cyclotomic indices `j ≥ 3` together with counts of
/// appended `(x-1)` and `(x+1)` factors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct AngleMultiset {
    /// Sorted indices `j ≥ 3`, with multiplicity.
    pub indices: Vec<u64>,
    /// Number of `(x-1)` factors.
    pub x_minus_one: usize,
    /// Number of `(x+1)` factors (each rotation by π contributes two).
    pub x_plus_one: usize,
}

impl AngleMultiset {
    /// Total degree `Σ φ(j) + x_minus_one + x_plus_one`.
    pub fn degree(&self) -> u64 {
        self.indices.iter().map(|&j| totient(j).unwrap()).sum::<u64>()
            + self.x_minus_one as u64
            + self.x_plus_one as u64
    }

    /// The polynomial `(x-1)^{k1} (x+1)^{k2} Π Φ_j`.
    pub fn polynomial(&self) -> IntPoly {
        let mut p = IntPoly::x_minus(1)
            .pow(self.x_minus_one)
            .mul(&IntPoly::from_coeffs(&[1, 1]).pow(self.x_plus_one));
        for &j in &self.indices {
            p = p.mul(&cyclotomic_poly(j));
        }
        p
    }

    /// The rotation angles realized by this multiset: `1/2` for each pair of
    /// `(x+1)` factors, plus the representative orbit of each index.
    pub fn angles(&self) -> Vec<Ratio<i64>> {
        debug_assert!(self.x_plus_one % 2 == 0);
        let mut angles = vec![Ratio::new(1, 2); self.x_plus_one / 2];
        for &j in &self.indices {
            angles.extend(angles_for(j));
        }
        angles
    }
}

/// All angle multisets of total degree `2n`: multisets of indices `j ≥ 3`
/// with `Σ φ(j) = 2n`, optionally padded with an even number of `(x+1)`
/// factors (rotations by π). Ordered lexicographically on the sorted index
/// lists, `(x+1)` pairs sorting as index 2.
pub fn angle_multisets(n: usize, allow_pm_one: bool) -> Vec<AngleMultiset> {
    let target = 2 * n as u64;
    // candidate indices: 2 stands for an (x+1) factor
    let mut candidates: Vec<u64> = vec![];
    if allow_pm_one {
        candidates.push(2);
    }
    for j in 3..=(2 * target * target).max(3) {
        if totient(j).unwrap() <= target {
            candidates.push(j);
        }
    }
    let mut out = Vec::new();
    let mut current: Vec<u64> = vec![];
    enumerate(&candidates, 0, target, &mut current, &mut out);
    out.retain(|m| m.x_plus_one % 2 == 0);
    out.sort();
    out
}

fn enumerate(
    candidates: &[u64],
    from: usize,
    remaining: u64,
    current: &mut Vec<u64>,
    out: &mut Vec<AngleMultiset>,
) {
    if remaining == 0 {
        let x_plus_one = current.iter().filter(|&&j| j == 2).count();
        let indices: Vec<u64> = current.iter().copied().filter(|&j| j >= 3).collect();
        out.push(AngleMultiset { indices, x_minus_one: 0, x_plus_one });
        return;
    }
    for (k, &j) in candidates.iter().enumerate().skip(from) {
        let d = totient(j).unwrap();
        if d > remaining {
            continue;
        }
        current.push(j);
        enumerate(candidates, k, remaining - d, current, out);
        current.pop();
    }
}

/// Representative angle set for the cyclotomic index `j ≥ 3`:
/// `{ℓ/j : gcd(ℓ, j) = 1}` with `ℓ ≤ (j-1)/2` for odd `j` and
/// `ℓ ≤ (j-2)/2` for even `j` (one angle per conjugate pair of roots).
pub fn angles_for(j: u64) -> Vec<Ratio<i64>> {
    assert!(j >= 3, "angles_for needs a cyclotomic index >= 3");
    let top = if j % 2 == 1 { (j - 1) / 2 } else { (j - 2) / 2 };
    (1..=top)
        .filter(|&l| l.gcd(&j) == 1)
        .map(|l| Ratio::new(l as i64, j as i64))
        .collect()
}

/// Symbolic finite-order rotation `I_s ⊕ θ(2πq_1) ⊕ ... ⊕ θ(2πq_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RotationSpec {
    /// Number of fixed directions.
    pub s: usize,
    /// Rotation angles as exact rationals in `(0, 1)`, each angle `2πq`.
    #[serde(with = "angle_serde")]
    pub angles: Vec<Ratio<i64>>,
}

impl<'de> Deserialize<'de> for RotationSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            s: usize,
            #[serde(with = "angle_serde")]
            angles: Vec<Ratio<i64>>,
        }
        let raw = Raw::deserialize(d)?;
        Ok(RotationSpec::new(raw.s, raw.angles))
    }
}

impl RotationSpec {
    pub fn new(s: usize, angles: Vec<Ratio<i64>>) -> Self {
        let mut spec = RotationSpec { s, angles };
        spec.normalize();
        spec
    }

    /// Total dimension `s + 2n`.
    pub fn dim(&self) -> usize {
        self.s + 2 * self.angles.len()
    }

    /// Normalizes every angle with `q ↦ q mod 1` and `q ↦ min(q, 1-q)`,
    /// then sorts. These are exactly the identifications that leave the
    /// conjugacy class of the rotation unchanged.
    pub fn normalize(&mut self) {
        for q in &mut self.angles {
            let mut r = *q - q.floor();
            if r > Ratio::new(1, 2) {
                r = Ratio::one() - r;
            }
            assert!(!r.is_zero(), "angle must not be a multiple of 2π (fold it into s)");
            *q = r;
        }
        self.angles.sort();
    }

    /// Integer characteristic polynomial
    /// `(x-1)^s · Π (x² - 2cos(2πq)x + 1)` when the angle multiset is a
    /// union of complete Galois orbits, `None` otherwise.
    pub fn integral_charpoly(&self) -> Option<IntPoly> {
        let mut by_index: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        let mut half_turns = 0usize;
        for q in &self.angles {
            let (num, den) = (*q.numer() as u64, *q.denom() as u64);
            if den == 2 {
                half_turns += 1;
            } else {
                by_index.entry(den).or_default().push(num);
            }
        }
        let mut p = IntPoly::x_minus(1)
            .pow(self.s)
            .mul(&IntPoly::from_coeffs(&[1, 1]).pow(2 * half_turns));
        for (j, mut numerators) in by_index {
            numerators.sort_unstable();
            let orbit: Vec<u64> = angles_for(j).iter().map(|q| *q.numer() as u64).collect();
            // the numerators must be m copies of the full orbit
            if orbit.is_empty() || numerators.len() % orbit.len() != 0 {
                return None;
            }
            let m = numerators.len() / orbit.len();
            let mut expected: Vec<u64> = orbit.iter().flat_map(|&l| std::iter::repeat(l).take(m)).collect();
            expected.sort_unstable();
            if numerators != expected {
                return None;
            }
            p = p.mul(&cyclotomic_poly(j).pow(m));
        }
        Some(p)
    }

    /// Order of the rotation: lcm of the angle denominators.
    pub fn order(&self) -> u64 {
        self.angles
            .iter()
            .fold(1u64, |acc, q| acc.lcm(&(*q.denom() as u64)))
    }

    pub fn label(&self) -> String {
        let mut s = format!("I{}", self.s);
        for q in &self.angles {
            s.push_str(&format!("+R({}/{})", q.numer(), q.denom()));
        }
        s
    }
}

mod angle_serde {
    use num_rational::Ratio;
    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(angles: &[Ratio<i64>], s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<String> = angles
            .iter()
            .map(|q| format!("{}/{}", q.numer(), q.denom()))
            .collect();
        serde::Serialize::serialize(&strs, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Ratio<i64>>, D::Error> {
        let strs: Vec<String> = Deserialize::deserialize(d)?;
        strs.iter()
            .map(|t| {
                let (n, m) = t
                    .split_once('/')
                    .ok_or_else(|| D::Error::custom(format!("bad angle {t:?}")))?;
                let n: i64 = n.parse().map_err(|e| D::Error::custom(format!("{e}")))?;
                let m: i64 = m.parse().map_err(|e| D::Error::custom(format!("{e}")))?;
                if m <= 0 {
                    return Err(D::Error::custom("angle denominator must be positive"));
                }
                Ok(Ratio::new(n, m))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totient_values() {
        assert_eq!(totient(1).unwrap(), 1);
        assert_eq!(totient(12).unwrap(), 4);
        assert_eq!(totient(37).unwrap(), 36);
        assert!(totient(0).is_err());
    }

    #[test]
    fn inverse_totient_values() {
        assert_eq!(inverse_totient(1), vec![1, 2]);
        assert_eq!(inverse_totient(2), vec![3, 4, 6]);
        assert_eq!(inverse_totient(4), vec![5, 8, 10, 12]);
        assert_eq!(inverse_totient(14), Vec::<u64>::new());
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic_poly(1), IntPoly::from_coeffs(&[-1, 1]));
        assert_eq!(cyclotomic_poly(6), IntPoly::from_coeffs(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(12), IntPoly::from_coeffs(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn cyclotomic_product_identity() {
        for n in 1..=20u64 {
            let mut prod = IntPoly::one();
            for d in 1..=n {
                if n % d == 0 {
                    prod = prod.mul(&cyclotomic_poly(d));
                }
            }
            assert_eq!(prod, IntPoly::x_pow_minus_one(n as usize));
        }
    }

    #[test]
    fn factor_cyclotomic_round_trip() {
        let p = cyclotomic_poly(3)
            .pow(2)
            .mul(&cyclotomic_poly(1))
            .mul(&cyclotomic_poly(8));
        assert_eq!(factor_cyclotomic(&p).unwrap(), vec![(1, 1), (3, 2), (8, 1)]);
        assert!(factor_cyclotomic(&IntPoly::from_coeffs(&[-1, -1, 1])).is_err());
    }

    #[test]
    fn companion_examples() {
        assert_eq!(companion(&IntPoly::x_minus(1)).unwrap(), IntMatrix::identity(1));
        assert_eq!(
            companion_cyclotomic(4),
            IntMatrix::from_rows(&[&[0, -1], &[1, 0]])
        );
        assert!(companion(&IntPoly::from_coeffs(&[1, 2])).is_err());
    }

    #[test]
    fn bordered_c3_plus() {
        let c3p = bordered(&companion_cyclotomic(3), 1);
        assert_eq!(
            c3p,
            IntMatrix::from_rows(&[&[0, -1, 1], &[1, -1, 0], &[0, 0, 1]])
        );
    }

    #[test]
    fn angle_multisets_n1() {
        let with = angle_multisets(1, true);
        let lists: Vec<(Vec<u64>, usize)> =
            with.iter().map(|m| (m.indices.clone(), m.x_plus_one)).collect();
        assert_eq!(
            lists,
            vec![
                (vec![], 2),
                (vec![3], 0),
                (vec![4], 0),
                (vec![6], 0),
            ]
        );
        let without = angle_multisets(1, false);
        assert_eq!(without.len(), 3);
    }

    #[test]
    fn angle_multisets_n2_cases() {
        let all = angle_multisets(2, true);
        // one degree-4 factor
        let deg4: Vec<Vec<u64>> = all
            .iter()
            .filter(|m| m.indices.len() == 1 && m.x_plus_one == 0)
            .map(|m| m.indices.clone())
            .collect();
        assert_eq!(deg4, vec![vec![5], vec![8], vec![10], vec![12]]);
        // two degree-2 factors
        let two_deg2: Vec<Vec<u64>> = all
            .iter()
            .filter(|m| m.indices.len() == 2 && m.x_plus_one == 0)
            .map(|m| m.indices.clone())
            .collect();
        assert_eq!(
            two_deg2,
            vec![vec![3, 3], vec![3, 4], vec![3, 6], vec![4, 4], vec![4, 6], vec![6, 6]]
        );
    }

    #[test]
    fn angles_for_representatives() {
        assert_eq!(angles_for(3), vec![Ratio::new(1, 3)]);
        assert_eq!(angles_for(4), vec![Ratio::new(1, 4)]);
        assert_eq!(angles_for(5), vec![Ratio::new(1, 5), Ratio::new(2, 5)]);
        assert_eq!(angles_for(8), vec![Ratio::new(1, 8), Ratio::new(3, 8)]);
    }

    #[test]
    fn rotation_charpoly_cases() {
        let spec = RotationSpec::new(3, vec![Ratio::new(1, 3)]);
        assert_eq!(
            spec.integral_charpoly().unwrap(),
            IntPoly::x_minus(1).pow(3).mul(&cyclotomic_poly(3))
        );

        let spec = RotationSpec::new(1, vec![Ratio::new(1, 8), Ratio::new(3, 8)]);
        assert_eq!(
            spec.integral_charpoly().unwrap(),
            IntPoly::x_minus(1).mul(&cyclotomic_poly(8))
        );

        let spec = RotationSpec::new(1, vec![Ratio::new(1, 5)]);
        assert_eq!(spec.integral_charpoly(), None);
    }

    #[test]
    fn rotation_normalization() {
        // 5/6 ≡ 1/6, 4/3 ≡ 1/3 after q ↦ min(q mod 1, 1 - q mod 1)
        let spec = RotationSpec::new(0, vec![Ratio::new(5, 6), Ratio::new(4, 3)]);
        assert_eq!(spec.angles, vec![Ratio::new(1, 6), Ratio::new(1, 3)]);
        assert_eq!(spec.order(), 6);
    }
}
