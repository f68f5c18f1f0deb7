//! (A,B)-equivalence classes of the cokernel of `ψ(T) = AT - TB`.
//!
//! `X ≡ Y (A,B)` iff `XQ - PY ∈ im ψ` for some `P ∈ C(A)`, `Q ∈ C(B)` in
//! `GL(Z)`; equivalently `[Y] = [P^{-1} X Q]`, so classes are orbits of
//! `C(A) × C(B)` acting on `Coker ψ`. The full integral centralizers are not
//! enumerable, so orbits are computed under (i) supplied witness pairs,
//! (ii) an exhaustive entry-bounded centralizer search, (iii) the sign pairs
//! `(±I, ±I)`. Because the cokernel is annihilated by its exponent `e`, the
//! integral action factors through reduction mod `e`; the orbit partition
//! under all units of the mod-`e` centralizers therefore bounds the true
//! class count from below while the witness-generated partition bounds it
//! from above. When the two agree the partition is certified; when the
//! modular one is strictly coarser the `modular_overapprox` flag is raised.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::intlinalg::IntMatrix;
use crate::similarity::centralizer::{centralizer_search, centralizer_unit_images};
use crate::similarity::psi::{coker_psi, CokerPsi};

#[derive(Clone, Debug)]
pub struct EquivConfig {
    /// Entry bound for the exhaustive centralizer search.
    pub search_bound: u32,
    /// Maximal cokernel order that will be enumerated.
    pub coker_cap: u64,
    /// Whether to compute the mod-exponent over-approximation.
    pub modular_check: bool,
    /// Size cap for the modular centralizer enumeration.
    pub modular_cap: u64,
}

impl Default for EquivConfig {
    fn default() -> Self {
        EquivConfig {
            search_bound: 3,
            coker_cap: 1_000_000,
            modular_check: true,
            modular_cap: 1 << 22,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Orbit {
    /// Lexicographically least lift among the member representatives.
    pub representative: IntMatrix,
    /// Indices into `coker.reps`.
    pub members: Vec<usize>,
}

pub struct EquivClassSet {
    pub coker: CokerPsi,
    pub orbits: Vec<Orbit>,
    /// Class count of the mod-exponent over-approximation, when computed.
    pub modular_class_count: Option<usize>,
    /// `true` when the modular partition is strictly coarser than the one
    /// found integrally (the integral count is then only an upper bound).
    pub modular_overapprox: Option<bool>,
}

impl EquivClassSet {
    pub fn class_count(&self) -> usize {
        self.orbits.len()
    }

    /// The partition is certified exact when the modular lower bound meets
    /// the integral upper bound.
    pub fn certified(&self) -> bool {
        self.modular_class_count == Some(self.orbits.len())
    }
}

/// Orbits of `Coker ψ(A,B)` under witness pairs, bounded centralizer
/// elements and sign pairs.
pub fn ab_equivalence_classes(
    a: &IntMatrix,
    b: &IntMatrix,
    witnesses: &[(IntMatrix, IntMatrix)],
    config: &EquivConfig,
) -> Result<EquivClassSet> {
    let coker = coker_psi(a, b, config.coker_cap)?;
    let count = coker.reps.len();

    // generator pairs (P, Q); inverses handled through P^{-1}
    let mut pairs: Vec<(IntMatrix, IntMatrix)> = Vec::new();
    for (p, q) in witnesses {
        validate_witness(a, p, "P")?;
        validate_witness(b, q, "Q")?;
        pairs.push((p.clone(), q.clone()));
    }
    let m = a.rows();
    let n = b.rows();
    pairs.push((IntMatrix::scalar(m, -1), IntMatrix::identity(n)));
    pairs.push((IntMatrix::identity(m), IntMatrix::scalar(n, -1)));
    for p in centralizer_search(a, config.search_bound) {
        pairs.push((p, IntMatrix::identity(n)));
    }
    for q in centralizer_search(b, config.search_bound) {
        pairs.push((IntMatrix::identity(m), q));
    }

    let mut dsu = Dsu::new(count);
    for (p, q) in &pairs {
        let p_inv = p
            .inverse_unimodular()
            .expect("witness validated as unimodular");
        for idx in 0..count {
            let image = p_inv.mul_ref(&coker.reps[idx]).mul_ref(q);
            dsu.union(idx, coker.index_of(&image));
        }
    }
    let orbits = dsu.orbits(&coker);

    let (modular_class_count, modular_overapprox) = if config.modular_check {
        if coker.group.exponent().is_one() {
            (Some(orbits.len()), Some(false))
        } else {
            match modular_orbit_count(a, b, &coker, config.modular_cap) {
                Some(count_mod) => (Some(count_mod), Some(count_mod < orbits.len())),
                None => (None, None),
            }
        }
    } else {
        (None, None)
    };

    Ok(EquivClassSet {
        coker,
        orbits,
        modular_class_count,
        modular_overapprox,
    })
}

fn validate_witness(a: &IntMatrix, p: &IntMatrix, role: &str) -> Result<()> {
    if !p.is_square() || p.rows() != a.rows() {
        return Err(Error::InvalidWitness(format!(
            "{role} has shape {}x{}, expected {}x{}",
            p.rows(),
            p.cols(),
            a.rows(),
            a.rows()
        )));
    }
    if p.mul_ref(a) != a.mul_ref(p) {
        return Err(Error::InvalidWitness(format!("{role} does not centralize its side")));
    }
    if p.inverse_unimodular().is_none() {
        return Err(Error::InvalidWitness(format!("{role} is not unimodular")));
    }
    Ok(())
}

/// Orbit count under the mod-`r` unit over-approximation (`r = |Coker ψ|`),
/// falling back to the coarser mod-exponent one when the sweep is too large;
/// `None` when neither fits the cap. The action of an integral centralizer
/// pair factors through reduction mod the exponent, and the image in mod-`e`
/// matrices of the mod-`r` units contains every integral reduction, so the
/// resulting class count is a lower bound for the true one. Acting with all
/// elements of these image groups needs no explicit inverses.
fn modular_orbit_count(
    a: &IntMatrix,
    b: &IntMatrix,
    coker: &CokerPsi,
    cap: u64,
) -> Option<usize> {
    let e = coker.group.exponent().to_u64()?;
    let r = num_traits::ToPrimitive::to_u64(&coker.order)?;
    let images = |m: &IntMatrix| -> Option<Vec<Vec<i64>>> {
        centralizer_unit_images(m, r, e, cap)
            .or_else(|| centralizer_unit_images(m, e, e, cap))
    };
    let units_a = images(a)?;
    let units_b = images(b)?;
    let count = coker.reps.len();
    let mut dsu = Dsu::new(count);
    let n_a = a.rows();
    let n_b = b.rows();
    let to_matrix = |v: &[i64], n: usize| IntMatrix::from_fn(n, n, |i, j| BigInt::from(v[i * n + j]));
    for p in &units_a {
        let p = to_matrix(p, n_a);
        for idx in 0..count {
            let image = p.mul_ref(&coker.reps[idx]);
            dsu.union(idx, coker.index_of(&image));
        }
    }
    for q in &units_b {
        let q = to_matrix(q, n_b);
        for idx in 0..count {
            let image = coker.reps[idx].mul_ref(&q);
            dsu.union(idx, coker.index_of(&image));
        }
    }
    Some(dsu.orbits(coker).len())
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            self.parent[rx.max(ry)] = rx.min(ry);
        }
    }

    fn orbits(&mut self, coker: &CokerPsi) -> Vec<Orbit> {
        let n = self.parent.len();
        let mut buckets: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for i in 0..n {
            let r = self.find(i);
            buckets.entry(r).or_default().push(i);
        }
        let mut orbits: Vec<Orbit> = buckets
            .into_values()
            .map(|members| {
                let representative = members
                    .iter()
                    .map(|&i| &coker.reps[i])
                    .min_by(|x, y| x.entries().cmp(y.entries()))
                    .expect("orbit nonempty")
                    .clone();
                Orbit { representative, members }
            })
            .collect();
        orbits.sort_by(|a, b| a.representative.entries().cmp(b.representative.entries()));
        orbits
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{bordered, companion_cyclotomic};

    fn cfg() -> EquivConfig {
        EquivConfig::default()
    }

    fn c(n: u64) -> IntMatrix {
        companion_cyclotomic(n)
    }

    #[test]
    fn s_c3_vs_minus_i2_plus_i1_has_two_classes() {
        // paper witness (P, Q) = (-I_2, D); the sign pairs already identify
        // E_13 with 2E_13
        let a = c(3);
        let b = IntMatrix::scalar(2, -1).direct_sum(&IntMatrix::identity(1));
        let s = ab_equivalence_classes(&a, &b, &[(IntMatrix::scalar(2, -1), b.clone())], &cfg()).unwrap();
        assert_eq!(s.class_count(), 2);
        assert!(s.certified(), "mod-3 bound should confirm two classes");
        assert_eq!(s.orbits[0].representative, IntMatrix::zeros(2, 3));
    }

    #[test]
    fn s_i1_vs_c4_minus_i2_has_four_classes() {
        let a = IntMatrix::identity(1);
        let b = c(4).direct_sum(&IntMatrix::scalar(2, -1));
        let s = ab_equivalence_classes(&a, &b, &[], &cfg()).unwrap();
        assert_eq!(s.class_count(), 4);
        assert_eq!(s.modular_overapprox, Some(false));
    }

    #[test]
    fn s_i1_vs_c4minus_has_four_classes() {
        let a = IntMatrix::identity(1);
        let b = bordered(&c(4), -1).direct_sum(&IntMatrix::scalar(1, -1));
        let s = ab_equivalence_classes(&a, &b, &[], &cfg()).unwrap();
        assert_eq!(s.class_count(), 4);
    }

    #[test]
    fn s_i1_vs_c6_minus_i2_has_two_classes() {
        let a = IntMatrix::identity(1);
        let b = c(6).direct_sum(&IntMatrix::scalar(2, -1));
        let s = ab_equivalence_classes(&a, &b, &[], &cfg()).unwrap();
        assert_eq!(s.class_count(), 2);
    }

    #[test]
    fn invalid_witness_rejected() {
        let a = c(3);
        let b = IntMatrix::scalar(2, -1).direct_sum(&IntMatrix::identity(1));
        // P does not commute with C_3
        let bad = IntMatrix::from_rows(&[&[1, 1], &[0, 1]]);
        assert!(matches!(
            ab_equivalence_classes(&a, &b, &[(bad, b.clone())], &cfg()),
            Err(Error::InvalidWitness(_))
        ));
    }
}
