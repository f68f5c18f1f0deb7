//! Centralizer computations: exhaustive bounded search in `GL(n,Z)` and the
//! unit group of the centralizer modulo an integer.

use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::intlinalg::{kernel_lattice, snf, IntMatrix, LatticeBasis};
use crate::similarity::psi::psi_matrix;

/// Visits every lattice point with sup-norm at most `bound`, in a
/// deterministic order that reaches small points first. The column-HNF
/// echelon shape of the basis makes the coefficient ranges finite: once the
/// coefficients of the first `i` basis vectors are fixed, every coordinate
/// above the next pivot is final and can be pruned against the bound.
///
/// Returns `false` when `node_cap` was hit before the enumeration finished.
pub fn for_each_bounded_point(
    lattice: &LatticeBasis,
    bound: &BigInt,
    node_cap: u64,
    visit: &mut impl FnMut(&[BigInt]) -> ControlFlow<()>,
) -> bool {
    let basis = lattice.basis();
    let dim = lattice.ambient_dim();
    let k = basis.cols();
    let pivots: Vec<usize> = (0..k)
        .map(|j| (0..dim).find(|&i| !basis.at(i, j).is_zero()).expect("zero basis column"))
        .collect();
    let mut current = vec![BigInt::zero(); dim];
    let mut nodes = 0u64;
    let flow = dfs(
        basis, &pivots, dim, bound, 0, &mut current, &mut nodes, node_cap, visit,
    );
    !matches!(flow, ControlFlow::Break(Interrupt::CapHit))
}

enum Interrupt {
    Stopped,
    CapHit,
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    basis: &IntMatrix,
    pivots: &[usize],
    dim: usize,
    bound: &BigInt,
    depth: usize,
    current: &mut [BigInt],
    nodes: &mut u64,
    node_cap: u64,
    visit: &mut impl FnMut(&[BigInt]) -> ControlFlow<()>,
) -> ControlFlow<Interrupt> {
    *nodes += 1;
    if *nodes > node_cap {
        return ControlFlow::Break(Interrupt::CapHit);
    }
    let k = pivots.len();
    if depth == k {
        // all coordinates final; rows from the last pivot on still need a check
        let from = if k == 0 { 0 } else { pivots[k - 1] };
        if current[from..].iter().all(|x| &x.abs() <= bound) {
            if let ControlFlow::Break(()) = visit(current) {
                return ControlFlow::Break(Interrupt::Stopped);
            }
        }
        return ControlFlow::Continue(());
    }
    let p = pivots[depth];
    let pivot_val = basis.at(p, depth).clone();
    debug_assert!(pivot_val.is_positive());
    // c must keep |current[p] + c * pivot_val| <= bound
    let lo = (-bound - &current[p]).div_ceil(&pivot_val);
    let hi = (bound - &current[p]).div_floor(&pivot_val);
    let lo = lo.to_i64().unwrap_or(i64::MIN / 2);
    let hi = hi.to_i64().unwrap_or(i64::MAX / 2);
    // visit coefficients small-to-large in absolute value: 0, 1, -1, 2, ...
    let mut coeffs: Vec<i64> = (lo..=hi).collect();
    coeffs.sort_by_key(|c| (c.abs(), *c < 0));
    let next_pivot = pivots.get(depth + 1).copied().unwrap_or(dim);
    for c in coeffs {
        let cb = BigInt::from(c);
        for i in p..dim {
            let delta = &cb * basis.at(i, depth);
            current[i] += delta;
        }
        // rows [p, next_pivot) are final once this coefficient is fixed
        let final_rows_ok = current[p..next_pivot].iter().all(|x| &x.abs() <= bound);
        if final_rows_ok {
            dfs(basis, pivots, dim, bound, depth + 1, current, nodes, node_cap, visit)?;
        }
        for i in p..dim {
            let delta = &cb * basis.at(i, depth);
            current[i] -= delta;
        }
    }
    ControlFlow::Continue(())
}

/// All `P ∈ C(A) ∩ GL(n,Z)` with entries bounded by `bound` in absolute
/// value, sorted by row-major entry order.
pub fn centralizer_search(a: &IntMatrix, bound: u32) -> Vec<IntMatrix> {
    assert!(a.is_square());
    assert!(bound >= 1);
    let n = a.rows();
    let lattice = kernel_lattice(&psi_matrix(a, a));
    let mut found = Vec::new();
    for_each_bounded_point(&lattice, &BigInt::from(bound), u64::MAX, &mut |v| {
        let p = IntMatrix::from_fn(n, n, |i, j| v[i * n + j].clone());
        if p.det().map(|d| d.abs().is_one()).unwrap_or(false) {
            found.push(p);
        }
        ControlFlow::Continue(())
    });
    found.sort_by(|p, q| p.entries().cmp(q.entries()));
    found
}

/// All invertible elements of the centralizer of `A` in `M_n(Z/r)`, entries
/// reduced into `[0, r)`. The solution module of `AT ≡ TA (mod r)` is read
/// off the Smith form of `ψ(A, A)`; its size is capped by `cap`.
pub fn centralizer_units_mod(a: &IntMatrix, r: &BigInt, cap: u64) -> Result<Vec<IntMatrix>> {
    assert!(a.is_square());
    if r < &BigInt::from(2) {
        return Err(Error::Domain("modulus must be >= 2".into()));
    }
    let n = a.rows();
    let psi = psi_matrix(a, a);
    let f = snf(&psi);
    let diag = f.diagonal();
    // T = V·y solves ψT ≡ 0 (mod r) iff d_i·y_i ≡ 0 (mod r), i.e. y_i is a
    // multiple of r/gcd(d_i, r); modulo r that leaves gcd(d_i, r) choices.
    let mut gens: Vec<(Vec<BigInt>, u64)> = Vec::new(); // (column of V scaled, #choices)
    let mut total: u64 = 1;
    for (i, d) in diag.iter().enumerate() {
        let g = d.gcd(r);
        let g_u64 = g.to_u64().ok_or_else(|| Error::CapExceeded {
            what: "modular centralizer".into(),
            cap,
        })?;
        if g_u64 == 1 {
            continue;
        }
        let scale = r / &g;
        let col: Vec<BigInt> = (0..n * n).map(|row| f.v.at(row, i) * &scale).collect();
        total = total.checked_mul(g_u64).ok_or_else(|| Error::CapExceeded {
            what: "modular centralizer".into(),
            cap,
        })?;
        if total > cap {
            return Err(Error::CapExceeded {
                what: format!("modular centralizer of size {total}"),
                cap,
            });
        }
        gens.push((col, g_u64));
    }
    let mut out = Vec::new();
    let mut counters = vec![0u64; gens.len()];
    loop {
        let mut entries = vec![BigInt::zero(); n * n];
        for (gi, (col, _)) in gens.iter().enumerate() {
            if counters[gi] == 0 {
                continue;
            }
            let c = BigInt::from(counters[gi]);
            for (e, v) in entries.iter_mut().zip(col) {
                *e += &c * v;
            }
        }
        let t = IntMatrix::from_fn(n, n, |i, j| entries[i * n + j].mod_floor(r));
        let det = t.det().expect("square").mod_floor(r);
        if det.gcd(r).is_one() {
            out.push(t);
        }
        // odometer increment
        let mut gi = 0;
        loop {
            if gi == gens.len() {
                out.sort_by(|p, q| p.entries().cmp(q.entries()));
                out.dedup();
                return Ok(out);
            }
            counters[gi] += 1;
            if counters[gi] < gens[gi].1 {
                break;
            }
            counters[gi] = 0;
            gi += 1;
        }
    }
}

/// Distinct reductions mod `e` of the invertible elements of the centralizer
/// of `m` in `M_n(Z/r)` (with `e | r`). Everything that acts on an
/// `e`-torsion module only depends on these images, so sweeping the whole
/// solution module of `MT ≡ TM (mod r)` and deduplicating by the mod-`e`
/// image keeps the output small. Uses machine integers; requires `r ≤ 64`
/// and `n ≤ 6` so the determinants stay in range. Returns `None` when the
/// sweep would exceed `cap` elements.
pub(crate) fn centralizer_unit_images(
    m: &IntMatrix,
    r: u64,
    e: u64,
    cap: u64,
) -> Option<Vec<Vec<i64>>> {
    assert!(e >= 2 && r % e == 0);
    if r > 64 || m.rows() > 6 {
        return None;
    }
    let n = m.rows();
    let f = snf(&psi_matrix(m, m));
    let diag = f.diagonal();
    let r_big = BigInt::from(r);
    let mut gens: Vec<(Vec<i64>, u64)> = Vec::new();
    let mut total: u64 = 1;
    for (i, d) in diag.iter().enumerate() {
        let g = d.gcd(&r_big).to_u64().expect("gcd bounded by r");
        if g == 1 {
            continue;
        }
        let h = r / g;
        let col: Vec<i64> = (0..n * n)
            .map(|row| {
                let v = (f.v.at(row, i) * h).mod_floor(&r_big);
                v.to_i64().expect("reduced mod r")
            })
            .collect();
        total = total.checked_mul(g)?;
        if total > cap {
            return None;
        }
        gens.push((col, g));
    }
    let ri = r as i64;
    // per-generator wrap correction: subtracting g_i copies mod r
    let wrap: Vec<Vec<i64>> = gens
        .iter()
        .map(|(col, g)| col.iter().map(|&c| (c * (*g as i64)) % ri).collect())
        .collect();
    let mut entries = vec![0i64; n * n];
    let mut counters = vec![0u64; gens.len()];
    let mut seen = std::collections::HashSet::new();
    let mut out: Vec<Vec<i64>> = Vec::new();
    loop {
        if det_i64(&entries, n).rem_euclid(ri).gcd(&ri) == 1 {
            let image: Vec<i64> = entries.iter().map(|&x| x % e as i64).collect();
            if seen.insert(image.clone()) {
                out.push(image);
            }
        }
        let mut gi = 0;
        loop {
            if gi == gens.len() {
                out.sort();
                return Some(out);
            }
            counters[gi] += 1;
            if counters[gi] < gens[gi].1 {
                for (x, &c) in entries.iter_mut().zip(&gens[gi].0) {
                    *x = (*x + c) % ri;
                }
                break;
            }
            counters[gi] = 0;
            for (x, (&c, &w)) in entries.iter_mut().zip(gens[gi].0.iter().zip(&wrap[gi])) {
                *x = (*x + c + ri - w).rem_euclid(ri);
            }
            gi += 1;
        }
    }
}

fn det_i64(entries: &[i64], n: usize) -> i64 {
    // expansion along the first column; n ≤ 6 with small entries
    fn go(m: &[i64], idx: &[usize], n: usize) -> i64 {
        if n == 1 {
            return m[idx[0]];
        }
        let mut det = 0;
        for (row, &base) in idx.iter().enumerate() {
            let v = m[base];
            if v == 0 {
                continue;
            }
            let sub: Vec<usize> = idx
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != row)
                .map(|(_, &b)| b + 1)
                .collect();
            let minor = go(m, &sub, n - 1);
            det += if row % 2 == 0 { v * minor } else { -v * minor };
        }
        det
    }
    let idx: Vec<usize> = (0..n).map(|i| i * n).collect();
    go(entries, &idx, n)
}

/// Inverse of `m` over `Z/r`, entries in `[0, r)`; `None` when `det` is not
/// a unit mod `r`.
pub fn inverse_mod(m: &IntMatrix, r: &BigInt) -> Option<IntMatrix> {
    assert!(m.is_square());
    let n = m.rows();
    let det = m.det().expect("square").mod_floor(r);
    let e = det.extended_gcd(r);
    if !e.gcd.is_one() {
        return None;
    }
    let det_inv = e.x.mod_floor(r);
    // adjugate via cofactors
    let adj = IntMatrix::from_fn(n, n, |i, j| {
        // cofactor C_ji
        let minor = IntMatrix::from_fn(n - 1, n - 1, |mi, mj| {
            let si = if mi < j { mi } else { mi + 1 };
            let sj = if mj < i { mj } else { mj + 1 };
            m.at(si, sj).clone()
        });
        let c = minor.det().expect("square");
        if (i + j) % 2 == 0 {
            c
        } else {
            -c
        }
    });
    Some(IntMatrix::from_fn(n, n, |i, j| {
        (adj.at(i, j) * &det_inv).mod_floor(r)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{bordered, companion_cyclotomic};

    #[test]
    fn centralizer_of_identity_is_all_unimodular() {
        // 1x1: the units ±1
        let found = centralizer_search(&IntMatrix::identity(1), 3);
        assert_eq!(found.len(), 2);
        // 2x2 with bound 1: unimodular matrices with entries in {-1,0,1}
        let found = centralizer_search(&IntMatrix::identity(2), 1);
        assert!(found.len() > 8);
        assert!(found.iter().all(|p| p.det().unwrap().abs().is_one()));
    }

    #[test]
    fn centralizer_of_c4_block_contains_rotation_family() {
        // C(C_4 ⊕ -I_2) contains (p q; -q p) ⊕ GL_2 block matrices
        let d = companion_cyclotomic(4).direct_sum(&IntMatrix::scalar(2, -1));
        let found = centralizer_search(&d, 1);
        let sample = IntMatrix::from_rows(&[
            &[0, 1, 0, 0],
            &[-1, 0, 0, 0],
            &[0, 0, 1, 1],
            &[0, 0, 1, 0],
        ]);
        assert!(found.contains(&sample));
        for p in &found {
            assert_eq!(p.mul_ref(&d), d.mul_ref(p));
        }
    }

    #[test]
    fn centralizer_of_bordered_matches_displayed_family() {
        // C(C_4^- ⊕ -I_1) is the displayed 6-parameter family; check that
        // every bounded solution has the displayed zero pattern
        let d = bordered(&companion_cyclotomic(4), -1).direct_sum(&IntMatrix::scalar(1, -1));
        let found = centralizer_search(&d, 2);
        assert!(!found.is_empty());
        for p in &found {
            assert_eq!(p.mul_ref(&d), d.mul_ref(p));
            assert!(p.at(2, 0).is_zero() && p.at(2, 1).is_zero());
            assert!(p.at(3, 0).is_zero() && p.at(3, 1).is_zero());
        }
    }

    #[test]
    fn modular_units_invertible_and_commuting() {
        let d = companion_cyclotomic(4).direct_sum(&IntMatrix::scalar(2, -1));
        let r = BigInt::from(2);
        let units = centralizer_units_mod(&d, &r, 1 << 20).unwrap();
        assert!(!units.is_empty());
        for u in &units {
            let comm = (&u.mul_ref(&d) - &d.mul_ref(u)).reduce_mod(&r);
            assert!(comm.is_zero());
            assert!(inverse_mod(u, &r).is_some());
        }
    }

    #[test]
    fn inverse_mod_round_trip() {
        let m = IntMatrix::from_rows(&[&[1, 2], &[0, 1]]);
        let r = BigInt::from(4);
        let inv = inverse_mod(&m, &r).unwrap();
        assert!(m.mul_ref(&inv).reduce_mod(&r).is_identity());
        let singular = IntMatrix::from_rows(&[&[2, 0], &[0, 1]]);
        assert!(inverse_mod(&singular, &r).is_none());
    }
}
