//! The count conditions: `d`-sparsity and `d`-tightness.
//!
//! A graph is `d`-sparse when every vertex set `X` with `|X| >= d + 2`
//! induces at most `d|X| - C(d+1, 2)` edges, and `d`-tight when in addition
//! the whole graph meets that bound with equality. The check is exhaustive
//! over vertex subsets, so it is exponential in `n`.

use std::cmp::Reverse;

use serde::{Deserialize, Serialize};

use crate::choose2;
use crate::graph::{bits, full_mask, Graph};

/// `d n - C(d+1, 2)` for `n >= d`, else `C(n, 2)`: the generic rank of `K_n`.
pub fn complete_rank(n: usize, d: usize) -> usize {
    if n >= d {
        d * n - choose2(d + 1)
    } else {
        choose2(n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparsityReport {
    pub d: usize,
    pub sparse: bool,
    pub tight: bool,
    /// A vertex set of maximum excess over the bound (largest such set on ties).
    pub violator: Option<Vec<usize>>,
    pub excess: usize,
}

/// Largest `n` for which the subset table is materialised.
const TABLE_LIMIT: usize = 20;

pub fn is_d_sparse(g: &Graph, d: usize) -> SparsityReport {
    let n = g.n();
    // ordered by excess, then size, then smaller mask
    let mut best: Option<(usize, u32, Reverse<u64>)> = None;
    let mut consider = |mask: u64, e: usize| {
        let size = mask.count_ones() as usize;
        if size < d + 2 {
            return;
        }
        let bound = d * size - choose2(d + 1);
        if e > bound {
            let key = (e - bound, mask.count_ones(), Reverse(mask));
            if best.is_none_or(|b| key > b) {
                best = Some(key);
            }
        }
    };
    if n <= TABLE_LIMIT {
        let adj = g.adjacency();
        let mut table = vec![0u16; 1usize << n];
        for mask in 1u64..(1u64 << n) {
            let v = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            let e = table[rest as usize] as usize + (adj[v] & rest).count_ones() as usize;
            table[mask as usize] = e as u16;
            consider(mask, e);
        }
    } else {
        // Too large to tabulate; enumerate masks directly.
        let all = full_mask(n);
        let mut mask = all;
        loop {
            consider(mask, g.induced_edge_count(mask));
            if mask == 0 {
                break;
            }
            mask = (mask - 1) & all;
        }
    }
    let sparse = best.is_none();
    let tight = sparse && n >= d + 2 && g.edge_count() == d * n - choose2(d + 1);
    SparsityReport {
        d,
        sparse,
        tight,
        violator: best.map(|(_, _, Reverse(m))| bits(m).collect()),
        excess: best.map_or(0, |(x, _, _)| x),
    }
}

/// Assuming `g - v` is `d`-sparse, decides whether `g` is, by checking only
/// vertex sets that contain `v`.
pub(crate) fn sparse_with_vertex(g: &Graph, v: usize, d: usize) -> bool {
    let n = g.n();
    let adj = g.adjacency();
    let others = full_mask(n) & !(1u64 << v);
    let vbit = 1u64 << v;
    let mut sub = others;
    loop {
        let mask = sub | vbit;
        let size = mask.count_ones() as usize;
        if size >= d + 2 {
            let e = bits(mask).map(|u| (adj[u] & mask).count_ones() as usize).sum::<usize>() / 2;
            if e > d * size - choose2(d + 1) {
                return false;
            }
        }
        if sub == 0 {
            return true;
        }
        sub = (sub - 1) & others;
    }
}
