//! Exhaustive ground truth: counts connected spanning subgraphs of `K_{r,s}`
//! and `K_n` with a prescribed number of edges.
//!
//! Host edge orderings are fixed:
//! - `K_{r,s}`: row-major, edge `i·s + j` joins left vertex `i` to right
//!   vertex `r + j`;
//! - `K_n`: lexicographic pairs `(0,1), (0,2), …, (n−2,n−1)`.

use crate::error::{Error, Result};

/// Largest `r·s` accepted by [`count_bipartite`].
pub const MAX_BIPARTITE_EDGES: usize = 30;
/// Largest `n` accepted by [`count_complete`].
pub const MAX_COMPLETE_VERTICES: usize = 8;

/// A subset of a host graph's edge list, as a bitmask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EdgeSet(pub u64);

impl EdgeSet {
    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }
}

pub fn bipartite_edges(r: usize, s: usize) -> Vec<(u8, u8)> {
    let mut out = Vec::with_capacity(r * s);
    for i in 0..r {
        for j in 0..s {
            out.push((i as u8, (r + j) as u8));
        }
    }
    out
}

pub fn complete_edges(n: usize) -> Vec<(u8, u8)> {
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            out.push((i as u8, j as u8));
        }
    }
    out
}

struct UnionFind {
    parent: [u8; 64],
    components: usize,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        let mut parent = [0u8; 64];
        for (i, p) in parent.iter_mut().enumerate().take(n) {
            *p = i as u8;
        }
        Self {
            parent,
            components: n,
        }
    }

    fn find(&mut self, mut x: u8) -> u8 {
        while self.parent[x as usize] != x {
            // path halving
            let gp = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = gp;
            x = gp;
        }
        x
    }

    fn union(&mut self, a: u8, b: u8) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra as usize] = rb;
            self.components -= 1;
        }
    }
}

/// True iff the chosen edges connect all `vertex_count` vertices into one
/// component.
pub fn connectivity(edges: EdgeSet, host: &[(u8, u8)], vertex_count: usize) -> bool {
    if vertex_count == 0 {
        return false;
    }
    let mut uf = UnionFind::new(vertex_count);
    let mut bits = edges.0;
    while bits != 0 {
        let i = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let (a, b) = host[i];
        uf.union(a, b);
        if uf.components == 1 {
            return true;
        }
    }
    uf.components == 1
}

/// Calls `f` on every `q`-subset of `0..m` whose smallest element is `first`.
fn for_each_with_min(m: usize, q: usize, first: usize, mut f: impl FnMut(EdgeSet)) {
    let head = 1u64 << first;
    let rest_n = m - first - 1;
    let rest_q = q - 1;
    if rest_q == 0 {
        f(EdgeSet(head));
        return;
    }
    if rest_q > rest_n {
        return;
    }
    // Gosper's hack over the positions above `first`.
    let limit = 1u64 << rest_n;
    let mut c: u64 = (1u64 << rest_q) - 1;
    while c < limit {
        f(EdgeSet(head | (c << (first + 1))));
        let low = c & c.wrapping_neg();
        let ripple = c + low;
        c = (((ripple ^ c) >> 2) / low) | ripple;
    }
}

/// Visits every `q`-subset of the `m` host edges (`m ≤ 63`).
pub fn for_each_subset(m: usize, q: usize, mut f: impl FnMut(EdgeSet)) {
    assert!(m < 64, "host too large for a 64-bit edge mask");
    if q == 0 {
        f(EdgeSet(0));
        return;
    }
    for first in 0..m {
        for_each_with_min(m, q, first, &mut f);
    }
}

/// Number of `q`-subsets of `host` that connect all `vertices`. Work is split
/// by the smallest chosen edge.
fn count_connected(host: &[(u8, u8)], vertices: usize, q: usize) -> u64 {
    let m = host.len();
    if q > m || q + 1 < vertices {
        return 0;
    }
    if q == 0 {
        return u64::from(vertices == 1);
    }
    let per_first = |first: usize| {
        let mut n = 0u64;
        for_each_with_min(m, q, first, |e| {
            if connectivity(e, host, vertices) {
                n += 1;
            }
        });
        n
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..m).into_par_iter().map(per_first).sum()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..m).map(per_first).sum()
    }
}

/// Connected spanning subgraphs of `K_{r,s}` with `q` edges.
pub fn count_bipartite(r: usize, s: usize, q: usize) -> Result<u64> {
    if r * s > MAX_BIPARTITE_EDGES {
        return Err(Error::OutOfRange(format!(
            "K_{{{r},{s}}} has {} edges; exhaustive search is capped at {MAX_BIPARTITE_EDGES}",
            r * s
        )));
    }
    if r + s == 0 {
        return Ok(0);
    }
    Ok(count_connected(&bipartite_edges(r, s), r + s, q))
}

/// Connected spanning subgraphs of `K_n` with `q` edges.
pub fn count_complete(n: usize, q: usize) -> Result<u64> {
    if n > MAX_COMPLETE_VERTICES {
        return Err(Error::OutOfRange(format!(
            "n={n} exceeds the exhaustive-search cap {MAX_COMPLETE_VERTICES}"
        )));
    }
    if n == 0 {
        return Ok(0);
    }
    Ok(count_connected(&complete_edges(n), n, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::binomial;

    #[test]
    fn connectivity_basics() {
        assert!(connectivity(EdgeSet(0), &[], 1));
        assert!(!connectivity(EdgeSet(0), &[], 2));
        let host = bipartite_edges(2, 2);
        assert!(connectivity(EdgeSet(0b1111), &host, 4));
        // edges (0,2) and (1,3) only: two components
        assert!(!connectivity(EdgeSet(0b1001), &host, 4));
    }

    #[test]
    fn subset_enumeration_is_complete() {
        for m in 0..12usize {
            for q in 0..=m {
                let mut n = 0u64;
                let mut seen_wrong = false;
                for_each_subset(m, q, |e| {
                    n += 1;
                    seen_wrong |= e.len() as usize != q || e.0 >> m != 0;
                });
                assert!(!seen_wrong);
                assert_eq!(n, u64::try_from(binomial(m as u64, q as u64)).unwrap());
            }
        }
    }

    #[test]
    fn small_bipartite_counts() {
        assert_eq!(count_bipartite(2, 2, 4).unwrap(), 1);
        assert_eq!(count_bipartite(2, 2, 3).unwrap(), 4);
        assert_eq!(count_bipartite(1, 0, 0).unwrap(), 1);
        assert_eq!(count_bipartite(2, 0, 0).unwrap(), 0);
        assert_eq!(count_bipartite(0, 0, 0).unwrap(), 0);
        assert!(count_bipartite(5, 7, 11).is_err());
    }

    #[test]
    fn small_complete_counts() {
        assert_eq!(count_complete(3, 3).unwrap(), 1);
        assert_eq!(count_complete(4, 3).unwrap(), 16);
        assert_eq!(count_complete(5, 6).unwrap(), 205);
        assert_eq!(count_complete(1, 0).unwrap(), 1);
        assert!(count_complete(9, 8).is_err());
    }

    #[test]
    fn bipartite_swap_symmetry() {
        for (r, s) in [(1, 3), (2, 3), (2, 4), (3, 4)] {
            for q in 0..=(r * s) {
                assert_eq!(
                    count_bipartite(r, s, q).unwrap(),
                    count_bipartite(s, r, q).unwrap()
                );
            }
        }
    }
}
