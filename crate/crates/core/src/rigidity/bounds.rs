//! Deterministic upper bounds on generic rank.
//!
//! All bounds here follow from three facts about the generic rigidity
//! matroid: `r(K_n)` is [`complete_rank`]; rank is submodular; and for a
//! separating set `S` with `|S| <= d - 1`, joining two vertices on different
//! sides of `S` raises the rank by one, so `r(G) <= r(K_n) - 1`.

use serde::{Deserialize, Serialize};

use super::sparsity::{complete_rank, is_d_sparse};
use crate::choose2;
use crate::graph::{bits, Graph};

/// Sparsity is only tested up to this many vertices when bounding rank.
pub(crate) const SPARSITY_SEARCH_LIMIT: usize = 20;

/// Separating set with the rank bound it implies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutCertificate {
    pub cut: Vec<usize>,
    pub rank_ub: usize,
}

/// Rank bound from the count of every induced subgraph:
/// `r(G) <= r(G[X]) + |E - E(X)| <= complete_rank(|X|) + |E| - e(X)`.
pub fn count_rank_bound(g: &Graph, d: usize) -> usize {
    let m = g.edge_count();
    let global = m.min(complete_rank(g.n(), d));
    if g.n() > SPARSITY_SEARCH_LIMIT || global < m {
        return global;
    }
    let report = is_d_sparse(g, d);
    global.min(m - report.excess)
}

/// Rank bound from small separating sets, applied recursively.
///
/// With `S` a minimum separator of size at most `d - 1` and `C_1..C_k` the
/// components of `G - S`, let `H_i = G[C_i + S]` with `S` completed to a
/// clique. Submodularity over the shared `K_S` (independent, rank `C(|S|,2)`)
/// gives `r(G) <= sum r(H_i) - (k - 1) C(|S|, 2)`.
pub fn cut_rank_bound(g: &Graph, d: usize) -> usize {
    cut_bound_with_separator(g, d).0
}

fn cut_bound_with_separator(g: &Graph, d: usize) -> (usize, Option<Vec<usize>>) {
    let n = g.n();
    let m = g.edge_count();
    let base = m.min(complete_rank(n, d));
    if n <= d + 1 {
        return (base, None);
    }
    let Some(cut) = g.min_separator(d) else {
        return (base, None);
    };
    let s_mask = cut.iter().fold(0u64, |acc, &v| acc | 1u64 << v);
    let pieces = g.components_avoiding(s_mask);
    let mut total = 0usize;
    for comp in &pieces {
        let piece = g.induced_subgraph(comp | s_mask);
        // positions of S inside the piece
        let mut completed = piece.clone();
        let local: Vec<usize> = bits(comp | s_mask)
            .enumerate()
            .filter(|(_, v)| s_mask >> v & 1 == 1)
            .map(|(i, _)| i)
            .collect();
        for (a, &x) in local.iter().enumerate() {
            for &y in &local[a + 1..] {
                if !completed.has_edge(x, y) {
                    completed = completed.with_edge(x, y).expect("labels in range");
                }
            }
        }
        total += cut_rank_bound(&completed, d);
    }
    let glued = total.saturating_sub((pieces.len() - 1) * choose2(cut.len()));
    let bound = base.min(glued).min(complete_rank(n, d) - 1);
    (bound, Some(cut))
}

/// A separating set of size at most `d - 1` whose rank bound proves `g`
/// dependent (and therefore, lying below `r(K_n)`, also not rigid).
pub fn dependent_by_cut(g: &Graph, d: usize) -> Option<CutCertificate> {
    if g.n() < d + 2 {
        return None;
    }
    let (rank_ub, cut) = cut_bound_with_separator(g, d);
    match cut {
        Some(cut) if rank_ub < g.edge_count() => Some(CutCertificate { cut, rank_ub }),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two copies of K_{d+2} sharing `t` vertices, minus one shared edge.
    fn glued_cliques(d: usize, t: usize) -> Graph {
        let a = d + 2;
        let n = 2 * a - t;
        let mut edges = Vec::new();
        for u in 0..a {
            for v in u + 1..a {
                edges.push((u, v));
            }
        }
        let second: Vec<usize> = (a - t..n).collect();
        for (i, &u) in second.iter().enumerate() {
            for &v in &second[i + 1..] {
                if u >= a || v >= a {
                    edges.push((u, v));
                }
            }
        }
        edges.retain(|&e| e != (a - t, a - t + 1));
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn glued_cliques_are_certified_dependent() {
        for d in 3..=6 {
            for t in 2..d {
                let g = glued_cliques(d, t);
                let m = g.edge_count();
                assert_eq!(m, 2 * choose2(d + 2) - choose2(t) - 1);
                let cert = dependent_by_cut(&g, d).expect("cut certificate");
                assert_eq!(cert.cut.len(), t);
                assert_eq!(cert.rank_ub, m - 1, "d={d} t={t}");
            }
        }
    }

    #[test]
    fn complete_graphs_have_no_cut() {
        for d in 2..=6 {
            assert_eq!(dependent_by_cut(&Graph::complete(d + 3).unwrap(), d), None);
        }
    }

    #[test]
    fn count_bound_sees_dense_subgraphs() {
        // K_5 plus a pendant path: globally sparse enough, locally not
        let mut edges: Vec<_> = Graph::complete(5).unwrap().edges();
        edges.extend([(4, 5), (5, 6), (6, 7), (7, 8)]);
        let g = Graph::from_edges(9, &edges).unwrap();
        assert_eq!(count_rank_bound(&g, 3), g.edge_count() - 1);
    }
}
