//! Finitely generated abelian groups in invariant-factor form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// `Z^free_rank ⊕ Z_{d_1} ⊕ ... ⊕ Z_{d_t}` with `d_1 | d_2 | ...`, all `d_i ≥ 2`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinAbGroup {
    pub free_rank: usize,
    #[serde(with = "torsion_serde")]
    pub torsion: Vec<BigInt>,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        FinAbGroup { free_rank: 0, torsion: vec![] }
    }

    pub fn free(rank: usize) -> Self {
        FinAbGroup { free_rank: rank, torsion: vec![] }
    }

    /// Cyclic group of order `n ≥ 1`.
    pub fn cyclic(n: u64) -> Self {
        assert!(n >= 1);
        if n == 1 {
            Self::trivial()
        } else {
            FinAbGroup { free_rank: 0, torsion: vec![BigInt::from(n)] }
        }
    }

    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Self {
        for w in torsion.windows(2) {
            assert!(w[1].mod_floor(&w[0]).is_zero(), "invariant factors must form a divisibility chain");
        }
        assert!(torsion.iter().all(|d| d > &BigInt::one()), "invariant factors must be >= 2");
        FinAbGroup { free_rank, torsion }
    }

    /// Cokernel `Z^ambient_rank / im` described by the SNF diagonal of the
    /// presentation matrix: free part from missing pivots, torsion from
    /// nonunit invariant factors.
    pub fn from_snf_diagonal(ambient_rank: usize, diagonal: &[BigInt]) -> Self {
        let nonzero = diagonal.iter().filter(|d| !d.is_zero()).count();
        let torsion: Vec<BigInt> = diagonal
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .cloned()
            .collect();
        FinAbGroup {
            free_rank: ambient_rank - nonzero,
            torsion,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the torsion part.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product::<BigInt>().max(BigInt::one())
    }

    /// Order of the group, or `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion_order())
    }

    /// Exponent of the torsion part (largest invariant factor), 1 if free.
    pub fn exponent(&self) -> BigInt {
        self.torsion.last().cloned().unwrap_or_else(BigInt::one)
    }
}

impl fmt::Debug for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinAbGroup({self})")
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = vec![];
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        // group equal invariant factors as powers, e.g. Z_2^3
        let mut i = 0;
        while i < self.torsion.len() {
            let d = &self.torsion[i];
            let mut j = i;
            while j < self.torsion.len() && &self.torsion[j] == d {
                j += 1;
            }
            if j - i == 1 {
                parts.push(format!("Z_{d}"));
            } else {
                parts.push(format!("Z_{d}^{}", j - i));
            }
            i = j;
        }
        write!(f, "{}", parts.join("+"))
    }
}

mod torsion_serde {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(t: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let vals: Vec<serde_json::Value> = t
            .iter()
            .map(|d| match d.to_i64() {
                Some(v) => serde_json::Value::from(v),
                None => serde_json::Value::from(d.to_string()),
            })
            .collect();
        serde::Serialize::serialize(&vals, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let vals: Vec<serde_json::Value> = Deserialize::deserialize(d)?;
        vals.iter()
            .map(|v| match v {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| D::Error::custom("non-integer invariant factor")),
                serde_json::Value::String(s) => s
                    .parse::<BigInt>()
                    .map_err(|e| D::Error::custom(format!("bad invariant factor: {e}"))),
                other => Err(D::Error::custom(format!("bad invariant factor: {other}"))),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_snf_diagonal_drops_units_and_zeros() {
        let diag = vec![
            BigInt::from(1),
            BigInt::from(1),
            BigInt::from(3),
            BigInt::zero(),
        ];
        let g = FinAbGroup::from_snf_diagonal(5, &diag);
        assert_eq!(g.free_rank, 2);
        assert_eq!(g.torsion, vec![BigInt::from(3)]);
        assert_eq!(g.to_string(), "Z^2+Z_3");
    }

    #[test]
    fn display_groups_powers() {
        let g = FinAbGroup::new(
            2,
            vec![BigInt::from(2), BigInt::from(2), BigInt::from(6)],
        );
        assert_eq!(g.to_string(), "Z^2+Z_2^2+Z_6");
        assert_eq!(g.exponent(), BigInt::from(6));
        assert_eq!(g.order(), None);
        assert_eq!(g.torsion_order(), BigInt::from(24));
    }

    #[test]
    fn json_round_trip() {
        let g = FinAbGroup::new(1, vec![BigInt::from(2), BigInt::from(4)]);
        let s = serde_json::to_string(&g).unwrap();
        let back: FinAbGroup = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
    }
}
