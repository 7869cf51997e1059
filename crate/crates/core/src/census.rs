//! Exact table of `N_bi(r, s, k)`, the number of connected spanning subgraphs
//! of `K_{r,s}` with Betti number `k`, built from the edge-insertion
//! recurrence.
//!
//! Writing `q` for the edge count, the recurrence is
//!
//! ```text
//! (q+1)·N(r,s; q+1 edges) = (rs − q)·N(r,s; q edges) + Q(r,s,q)
//! 2·Q(r,s,q) = Σ_{r1,s1,t} C(r,r1) C(s,s1) ((r−r1)s1 + r1(s−s1))
//!              · N(r1,s1; t edges) · N(r−r1,s−s1; q−t edges)
//! ```
//!
//! seeded only with the two one-vertex graphs. Spanning-tree counts are an
//! output of the construction, not an input.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::arith::{binomial_table, upow};
use crate::error::{Error, Result};
use crate::series::BiSeries;

/// `r^{s−1} s^{r−1}` with `0^a = δ_{0,a}`.
pub fn spanning_tree_count(r: u64, s: u64) -> BigUint {
    match (r, s) {
        (0, 0) => BigUint::zero(),
        (1, 0) | (0, 1) => BigUint::from(1u32),
        (0, _) | (_, 0) => BigUint::zero(),
        _ => upow(r, s - 1) * upow(s, r - 1),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    max_n: usize,
    max_k: usize,
    /// Indexed by `(r, s, k)` for `r, s ≤ max_n`; entries with `r + s > max_n`
    /// are left zero.
    values: Vec<BigUint>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CountRow {
    pub r: usize,
    pub s: usize,
    pub k: usize,
    pub count: String,
}

impl CountTable {
    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn max_k(&self) -> usize {
        self.max_k
    }

    #[inline]
    fn idx(&self, r: usize, s: usize, k: usize) -> usize {
        (r * (self.max_n + 1) + s) * (self.max_k + 1) + k
    }

    /// `N_bi(r, s, k)`; `None` outside the table.
    pub fn get(&self, r: usize, s: usize, k: usize) -> Option<&BigUint> {
        (r + s <= self.max_n && k <= self.max_k).then(|| &self.values[self.idx(r, s, k)])
    }

    /// Count of connected spanning subgraphs of `K_{r,s}` with `q` edges.
    pub fn by_edges(&self, r: usize, s: usize, q: usize) -> Option<BigUint> {
        if r + s == 0 {
            return Some(BigUint::zero());
        }
        if q + 1 < r + s {
            return Some(BigUint::zero());
        }
        self.get(r, s, q + 1 - (r + s)).cloned()
    }

    /// `N_bi(n, k) = Σ_{r+s=n} C(n, r) N_bi(r, s, k)`.
    pub fn diagonal_count(&self, n: usize, k: usize) -> Result<BigUint> {
        if n > self.max_n || k > self.max_k {
            return Err(Error::OutOfRange(format!(
                "(n={n}, k={k}) outside table (max_n={}, max_k={})",
                self.max_n, self.max_k
            )));
        }
        let binom = binomial_table(n);
        Ok((0..=n)
            .map(|r| &binom[n][r] * &self.values[self.idx(r, n - r, k)])
            .sum())
    }

    /// The EGF `F_k` truncated at `trunc` in both variables.
    pub fn to_biseries(&self, k: usize, trunc: usize) -> Result<BiSeries> {
        if k > self.max_k {
            return Err(Error::OutOfRange(format!(
                "k={k} exceeds max_k={}",
                self.max_k
            )));
        }
        if trunc > self.max_n {
            return Err(Error::OutOfRange(format!(
                "truncation {trunc} exceeds max_n={}",
                self.max_n
            )));
        }
        // Grid cells with r + s > max_n are unknown to the table.
        if 2 * trunc > self.max_n {
            return Err(Error::OutOfRange(format!(
                "square truncation {trunc} needs max_n ≥ {}",
                2 * trunc
            )));
        }
        Ok(BiSeries::from_counts(trunc, trunc, |r, s| {
            BigInt::from(self.values[self.idx(r, s, k)].clone())
        }))
    }

    /// Rows `(r, s, k, count)` in `r`-major order for every `r + s ≤ max_n`.
    pub fn rows(&self, k: Option<usize>) -> Vec<CountRow> {
        let mut out = Vec::new();
        for r in 0..=self.max_n {
            for s in 0..=(self.max_n - r) {
                for kk in 0..=self.max_k {
                    if k.is_some_and(|k| k != kk) {
                        continue;
                    }
                    out.push(CountRow {
                        r,
                        s,
                        k: kk,
                        count: self.values[self.idx(r, s, kk)].to_string(),
                    });
                }
            }
        }
        out
    }

    /// Checks the table invariants: bipartition symmetry and vanishing outside
    /// `r + s − 1 ≤ q ≤ rs`.
    pub fn check_invariants(&self) -> Result<()> {
        for r in 0..=self.max_n {
            for s in 0..=(self.max_n - r) {
                for k in 0..=self.max_k {
                    let v = &self.values[self.idx(r, s, k)];
                    if v != &self.values[self.idx(s, r, k)] {
                        return Err(Error::Integrity(format!("asymmetric at ({r},{s},{k})")));
                    }
                    let q = r + s + k;
                    let feasible = r + s > 0 && q <= r * s + 1;
                    if !feasible && !v.is_zero() {
                        return Err(Error::Integrity(format!(
                            "nonzero outside support at ({r},{s},{k})"
                        )));
                    }
                    if feasible && v.is_zero() {
                        return Err(Error::Integrity(format!(
                            "zero inside support at ({r},{s},{k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Build `N_bi(r, s, k)` for `r + s ≤ max_n`, `k ≤ max_k`.
///
/// Levels are processed in ascending edge count; every entry at `q + 1` edges
/// depends only on entries with at most `q` edges, so the `(r, s)` updates
/// within a level are independent.
pub fn build_table(max_n: usize, max_k: usize) -> Result<CountTable> {
    if max_n == 0 {
        return Err(Error::Precondition("max_n must be at least 1".into()));
    }
    let mut table = CountTable {
        max_n,
        max_k,
        values: vec![BigUint::zero(); (max_n + 1) * (max_n + 1) * (max_k + 1)],
    };
    let one_vertex = [(1, 0), (0, 1)];
    for (r, s) in one_vertex {
        let i = table.idx(r, s, 0);
        table.values[i] = BigUint::from(1u32);
    }
    let binom = binomial_table(max_n);
    // Largest edge count stored: r + s − 1 + max_k with r + s = max_n.
    let max_edges = max_n - 1 + max_k;
    for q in 0..max_edges {
        // Targets: entries with q + 1 edges, i.e. Betti k1 = q + 2 − r − s.
        let targets: Vec<(usize, usize, usize)> = (0..=max_n)
            .flat_map(|r| (0..=(max_n - r)).map(move |s| (r, s)))
            .filter(|&(r, s)| r + s >= 1 && !one_vertex.contains(&(r, s)) && q + 2 >= r + s)
            .map(|(r, s)| (r, s, q + 2 - r - s))
            .filter(|&(_, _, k)| k <= max_k)
            .collect();
        let step = |&(r, s, k): &(usize, usize, usize)| next_entry(&table, &binom, r, s, k, q);
        #[cfg(feature = "parallel")]
        let computed: Vec<Result<BigUint>> = {
            use rayon::prelude::*;
            targets.par_iter().map(step).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let computed: Vec<Result<BigUint>> = targets.iter().map(step).collect();
        for (&(r, s, k), v) in targets.iter().zip(computed) {
            let i = table.idx(r, s, k);
            table.values[i] = v?;
        }
    }
    Ok(table)
}

/// Entry `(r, s, k)` with `q + 1 = r + s − 1 + k` edges from the level below.
fn next_entry(
    table: &CountTable,
    binom: &[Vec<BigUint>],
    r: usize,
    s: usize,
    k: usize,
    q: usize,
) -> Result<BigUint> {
    let prev = if k == 0 {
        BigUint::zero()
    } else {
        table.values[table.idx(r, s, k - 1)].clone()
    };
    // Two components with Betti numbers summing to k and q edges in total.
    let mut split_sum = BigUint::zero();
    for r1 in 0..=r {
        for s1 in 0..=s {
            let (r2, s2) = (r - r1, s - s1);
            if r1 + s1 == 0 || r2 + s2 == 0 {
                continue;
            }
            let weight = r2 * s1 + r1 * s2;
            if weight == 0 {
                continue;
            }
            let mut inner = BigUint::zero();
            for k1 in 0..=k {
                let a = &table.values[table.idx(r1, s1, k1)];
                if a.is_zero() {
                    continue;
                }
                let b = &table.values[table.idx(r2, s2, k - k1)];
                if !b.is_zero() {
                    inner += a * b;
                }
            }
            if !inner.is_zero() {
                split_sum += inner * &binom[r][r1] * &binom[s][s1] * weight;
            }
        }
    }
    let rs_minus_q = BigInt::from(r * s) - BigInt::from(q);
    let numer = BigInt::from(2u32) * rs_minus_q * BigInt::from(prev) + BigInt::from(split_sum);
    let denom = BigInt::from(2 * (q + 1));
    let (quot, rem) = numer.div_rem(&denom);
    if !rem.is_zero() || quot.is_negative() {
        return Err(Error::Integrity(format!(
            "recurrence at (r={r}, s={s}, q={q}) gives {numer}/{denom}"
        )));
    }
    Ok(quot.to_biguint().expect("nonnegative"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spanning_tree_conventions() {
        assert_eq!(spanning_tree_count(1, 0), BigUint::from(1u32));
        assert_eq!(spanning_tree_count(0, 1), BigUint::from(1u32));
        assert_eq!(spanning_tree_count(0, 0), BigUint::zero());
        assert_eq!(spanning_tree_count(2, 0), BigUint::zero());
        assert_eq!(spanning_tree_count(2, 2), BigUint::from(4u32));
        assert_eq!(spanning_tree_count(1, 5), BigUint::from(1u32));
    }

    #[test]
    fn small_table_entries() {
        let t = build_table(6, 2).unwrap();
        assert_eq!(t.get(2, 2, 1), Some(&BigUint::from(1u32)));
        assert_eq!(t.get(1, 1, 0), Some(&BigUint::from(1u32)));
        assert_eq!(t.get(0, 0, 0), Some(&BigUint::zero()));
        assert_eq!(t.diagonal_count(4, 1).unwrap(), BigUint::from(6u32));
        assert_eq!(t.diagonal_count(5, 2).unwrap(), BigUint::from(20u32));
        assert_eq!(t.diagonal_count(3, 1).unwrap(), BigUint::zero());
        assert!(t.diagonal_count(7, 1).is_err());
        assert!(t.diagonal_count(3, 3).is_err());
        assert!(t.get(4, 3, 0).is_none());
    }

    #[test]
    fn trees_are_recovered() {
        let t = build_table(10, 0).unwrap();
        for r in 0..=10u64 {
            for s in 0..=(10 - r) {
                assert_eq!(
                    t.get(r as usize, s as usize, 0).unwrap(),
                    &spanning_tree_count(r, s)
                );
            }
        }
        t.check_invariants().unwrap();
    }

    #[test]
    fn rejects_empty_table() {
        assert!(build_table(0, 1).is_err());
    }

    #[test]
    fn biseries_export() {
        let t = build_table(8, 2).unwrap();
        let f0 = t.to_biseries(0, 4).unwrap();
        assert_eq!(f0.integer_count(1, 0).unwrap(), BigInt::from(1));
        let f1 = t.to_biseries(1, 4).unwrap();
        assert_eq!(f1.integer_count(2, 2).unwrap(), BigInt::from(1));
        let f2 = t.to_biseries(2, 4).unwrap();
        assert_eq!(f2.integer_count(2, 3).unwrap(), BigInt::from(1));
        assert!(t.to_biseries(3, 4).is_err());
        assert!(t.to_biseries(1, 5).is_err());
    }

    #[test]
    fn by_edges_view() {
        let t = build_table(6, 3).unwrap();
        assert_eq!(t.by_edges(2, 2, 3), Some(BigUint::from(4u32)));
        assert_eq!(t.by_edges(2, 2, 4), Some(BigUint::from(1u32)));
        assert_eq!(t.by_edges(2, 2, 5), Some(BigUint::zero()));
        assert_eq!(t.by_edges(2, 2, 1), Some(BigUint::zero()));
    }
}
