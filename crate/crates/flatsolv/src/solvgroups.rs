//! The lattice groups `Σ_{E_1,...,E_k} = Z^k ⋉ Z^m`, where the generators
//! act by commuting finite-order matrices in `GL(m,Z)`:
//! `(r,t)·(r',t') = (r + r', t + E_1^{r_1}···E_k^{r_k} t')`.
//!
//! The holonomy group is `⟨E_1,...,E_k⟩`; the commutator subgroup is
//! `0 ⊕ Σ_i im(I - E_i)` (for k = 1 this is the closed form
//! `[Σ_E, Σ_E] = 0 ⊕ im(I - E)`, and for k > 1 it follows from
//! `[(r,t),(r',t')] = (0, (I - E^{r'})t + (E^r - I)t')` together with the
//! stability of the summed image under every `E_i`). The abelianization is
//! therefore `Z^k ⊕ Z^m / im[I-E_1 | ... | I-E_k]`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intlinalg::{
    image_lattice, invariant_factors, matrix_order, rank, FinAbGroup, IntMatrix, LatticeBasis,
    MatrixOrder,
};

/// Enumeration cap for holonomy groups; far above anything a valid input
/// can produce here (the dimension-6 maximum is 144).
pub const HOLONOMY_CAP: u64 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaGroup {
    k: usize,
    m: usize,
    generators: Vec<IntMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

impl SigmaGroup {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Total dimension `k + m`.
    pub fn dim(&self) -> usize {
        self.k + self.m
    }

    pub fn generators(&self) -> &[IntMatrix] {
        &self.generators
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }
}

/// Validated construction: shapes consistent, every generator unimodular of
/// finite order, all generators commuting.
pub fn make_sigma(k: usize, m: usize, generators: Vec<IntMatrix>) -> Result<SigmaGroup> {
    if generators.len() != k {
        return Err(Error::ShapeMismatch(format!(
            "expected {k} generators, got {}",
            generators.len()
        )));
    }
    for (i, g) in generators.iter().enumerate() {
        if !g.is_square() || g.rows() != m {
            return Err(Error::ShapeMismatch(format!(
                "generator {i} has shape {}x{}, expected {m}x{m}",
                g.rows(),
                g.cols()
            )));
        }
        if g.inverse_unimodular().is_none() {
            return Err(Error::NonUnimodular { i });
        }
        match matrix_order(g)? {
            MatrixOrder::Finite(_) => {}
            MatrixOrder::Infinite => return Err(Error::InfiniteOrder { i }),
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            if generators[i].mul_ref(&generators[j]) != generators[j].mul_ref(&generators[i]) {
                return Err(Error::NonCommuting { i, j });
            }
        }
    }
    Ok(SigmaGroup { k, m, generators, label: None })
}

/// The finite abelian matrix group `⟨E_1,...,E_k⟩` with its elements.
pub struct Holonomy {
    pub group: FinAbGroup,
    pub elements: Vec<IntMatrix>,
    /// Generators of the relation lattice `{r ∈ Z^k : Π E_i^{r_i} = I}`,
    /// as columns.
    pub relation_lattice: IntMatrix,
}

/// Holonomy group of `Σ`: structure via the Smith form of the relation
/// lattice inside `Z^k`, elements by direct enumeration.
pub fn holonomy(sigma: &SigmaGroup) -> Result<Holonomy> {
    let k = sigma.k;
    let orders: Vec<u64> = sigma
        .generators
        .iter()
        .map(|g| matrix_order(g).map(|o| o.finite().expect("validated finite")))
        .collect::<Result<_>>()?;
    let total: u64 = orders.iter().try_fold(1u64, |acc, &o| {
        let next = acc.checked_mul(o)?;
        (next <= HOLONOMY_CAP).then_some(next)
    }).ok_or(Error::CapExceeded {
        what: "holonomy enumeration".into(),
        cap: HOLONOMY_CAP,
    })?;

    // sweep all exponent tuples in Π [0, ord_i); collect distinct elements
    // and the tuples mapping to the identity (relation representatives)
    let identity = IntMatrix::identity(sigma.m);
    let mut elements: BTreeMap<Vec<BigInt>, Vec<u64>> = BTreeMap::new();
    let mut rel_cols: Vec<Vec<BigInt>> = Vec::new();
    for (i, &o) in orders.iter().enumerate() {
        let mut col = vec![BigInt::from(0); k];
        col[i] = BigInt::from(o);
        rel_cols.push(col);
    }
    let mut exps = vec![0u64; k];
    for step in 0..total {
        let mut mat = identity.clone();
        for (g, &e) in sigma.generators.iter().zip(&exps) {
            mat = mat.mul_ref(&g.pow(e));
        }
        if mat == identity && exps.iter().any(|&e| e != 0) {
            rel_cols.push(exps.iter().map(|&e| BigInt::from(e)).collect());
        }
        elements.entry(mat.entries().to_vec()).or_insert_with(|| exps.clone());
        if step + 1 < total {
            for i in 0..k {
                exps[i] += 1;
                if exps[i] < orders[i] {
                    break;
                }
                exps[i] = 0;
            }
        }
    }
    let relation_lattice = IntMatrix::from_fn(k, rel_cols.len(), |i, j| rel_cols[j][i].clone());
    let diag = invariant_factors(&relation_lattice);
    let group = FinAbGroup::from_snf_diagonal(k, &diag);
    debug_assert!(group.is_finite(), "relation lattice has full rank");
    debug_assert_eq!(
        group.torsion_order(),
        BigInt::from(elements.len() as u64),
        "group order must match element count"
    );
    let elements: Vec<IntMatrix> = elements
        .keys()
        .map(|e| IntMatrix::new(sigma.m, sigma.m, e.clone()))
        .collect();
    Ok(Holonomy { group, elements, relation_lattice })
}

/// `[Σ, Σ] = 0 ⊕ L` where `L` is the sublattice of `Z^m` spanned by the
/// columns of all `I - E_i` (raw image, not saturated).
pub fn commutator_sublattice(sigma: &SigmaGroup) -> LatticeBasis {
    image_lattice(&stacked_differences(sigma))
}

fn stacked_differences(sigma: &SigmaGroup) -> IntMatrix {
    let id = IntMatrix::identity(sigma.m);
    let mut stacked = IntMatrix::zeros(sigma.m, 0);
    for g in &sigma.generators {
        stacked = stacked.hstack(&(&id - g));
    }
    stacked
}

/// `Σ^{ab} = Z^k ⊕ Z^m / im[I-E_1 | ... | I-E_k]`.
pub fn abelianization(sigma: &SigmaGroup) -> FinAbGroup {
    let stacked = stacked_differences(sigma);
    let diag = invariant_factors(&stacked);
    let coker = FinAbGroup::from_snf_diagonal(sigma.m, &diag);
    FinAbGroup {
        free_rank: sigma.k + coker.free_rank,
        torsion: coker.torsion,
    }
}

/// First Betti number: free rank of the abelianization,
/// `k + m - rank[I-E_1 | ... | I-E_k]`.
pub fn betti1(sigma: &SigmaGroup) -> usize {
    sigma.k + sigma.m - rank(&stacked_differences(sigma))
}

/// The isomorphism moves on presentations: permuting generator slots,
/// inverting one slot, and left-multiplying one slot by another.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorMove {
    Swap(usize, usize),
    Invert(usize),
    /// `E_dst ← E_by · E_dst` (`by ≠ dst`).
    LeftMultiply { dst: usize, by: usize },
}

/// Applies a move, producing an isomorphic presentation.
pub fn generator_move(sigma: &SigmaGroup, mv: GeneratorMove) -> Result<SigmaGroup> {
    let k = sigma.k;
    let check = |i: usize| -> Result<()> {
        if i >= k {
            Err(Error::IndexOutOfRange { index: i, k })
        } else {
            Ok(())
        }
    };
    let mut gens = sigma.generators.clone();
    match mv {
        GeneratorMove::Swap(i, j) => {
            check(i)?;
            check(j)?;
            gens.swap(i, j);
        }
        GeneratorMove::Invert(i) => {
            check(i)?;
            gens[i] = gens[i].inverse_unimodular().expect("validated unimodular");
        }
        GeneratorMove::LeftMultiply { dst, by } => {
            check(dst)?;
            check(by)?;
            if dst == by {
                return Err(Error::Domain("left-multiply needs two distinct slots".into()));
            }
            gens[dst] = gens[by].mul_ref(&gens[dst]);
        }
    }
    Ok(SigmaGroup {
        k,
        m: sigma.m,
        generators: gens,
        label: sigma.label.clone(),
    })
}

/// Rewrites `Σ` over a minimal generating set of its holonomy group:
/// `Z^k ⋉ Z^m ≅ Z^ℓ ⋉ Z^{m+k-ℓ}` with `ℓ` the minimal number of
/// generators, each new generator acting as `I_{k-ℓ} ⊕ H_i`. Returns the
/// reduced presentation and the number `k - ℓ` of freed slots.
///
/// The rewriting is deterministic integer linear algebra: a Smith basis of
/// the relation lattice `Rel ⊂ Z^k` turns the exponent coordinates into
/// ones where the first `k - ℓ` generators are trivial.
pub fn reduce_generators(sigma: &SigmaGroup) -> Result<(SigmaGroup, usize)> {
    let hol = holonomy(sigma)?;
    let f = crate::intlinalg::snf(&hol.relation_lattice);
    let diag = f.diagonal();
    // new generator i is Π_j E_j^{(U^{-1})_{ji}}; its order is diag[i]
    let u_inv = f.u.inverse_unimodular().expect("SNF transform unimodular");
    let k = sigma.k;
    let mut trivial = 0usize;
    let mut new_gens: Vec<IntMatrix> = Vec::new();
    for i in 0..k {
        let mut g = IntMatrix::identity(sigma.m);
        for j in 0..k {
            let e = u_inv.at(j, i);
            g = g.mul_ref(&pow_signed(&sigma.generators[j], e));
        }
        if diag[i].is_one() {
            debug_assert!(g.is_identity());
            trivial += 1;
        } else {
            new_gens.push(g);
        }
    }
    let l = k - trivial;
    debug_assert_eq!(new_gens.len(), l);
    if trivial == 0 {
        return Ok((sigma.clone(), 0));
    }
    let pad = IntMatrix::identity(trivial);
    let gens: Vec<IntMatrix> = new_gens.iter().map(|h| pad.direct_sum(h)).collect();
    let reduced = make_sigma(l, sigma.m + trivial, gens)?;
    Ok((reduced, trivial))
}

fn pow_signed(g: &IntMatrix, e: &BigInt) -> IntMatrix {
    use num_traits::{Signed, ToPrimitive};
    let abs = e.abs().to_u64().expect("exponent fits");
    let p = g.pow(abs);
    if e.is_negative() {
        p.inverse_unimodular().expect("unimodular")
    } else {
        p
    }
}
