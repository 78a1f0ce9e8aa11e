//! Canonical labeling by individualization and refinement.
//!
//! Each node of the search tree is an ordered partition of the vertices,
//! refined to an equitable partition by neighbour counts. Leaves are
//! discrete partitions, i.e. orderings of the vertices; the canonical form is
//! the least relabeled adjacency matrix over all leaves. Refinement only
//! shrinks the tree. Automorphisms found when two leaves give the same matrix
//! prune sibling subtrees lying in one orbit of the pointwise stabilizer of
//! the current prefix.

use serde::{Deserialize, Serialize};

use crate::graph::{bits, full_mask, Graph};
use crate::graph6;

/// Isomorphism-invariant relabeling of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CanonicalLabeling {
    /// Vertex `v` of the input becomes vertex `permutation[v]` of the canonical form.
    pub permutation: Vec<usize>,
    /// graph6 bytes of the canonical form.
    pub code: Vec<u8>,
}

impl CanonicalLabeling {
    pub fn code_str(&self) -> &str {
        std::str::from_utf8(&self.code).expect("graph6 is ASCII")
    }
}

pub fn canonical_labeling(g: &Graph) -> CanonicalLabeling {
    let permutation = canonical_permutation(g);
    let form = g.relabel_unchecked(&permutation);
    CanonicalLabeling {
        permutation,
        code: graph6::encode(&form).into_bytes(),
    }
}

pub fn canonical_form(g: &Graph) -> Graph {
    g.relabel_unchecked(&canonical_permutation(g))
}

pub fn canonical_code(g: &Graph) -> Vec<u8> {
    canonical_labeling(g).code
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && canonical_form(a) == canonical_form(b)
}

fn canonical_permutation(g: &Graph) -> Vec<usize> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let mut cells = initial_partition(g);
    refine(g.adjacency(), &mut cells);
    let mut search = Search {
        adj: g.adjacency(),
        best: None,
        first: None,
        generators: Vec::new(),
    };
    let mut prefix = Vec::new();
    search.descend(&cells, &mut prefix);
    search.best.expect("search visits at least one leaf").1
}

fn initial_partition(g: &Graph) -> Vec<u64> {
    let n = g.n();
    let mut by_degree = vec![0u64; n];
    for v in 0..n {
        by_degree[g.degree(v)] |= 1u64 << v;
    }
    by_degree.into_iter().filter(|&c| c != 0).collect()
}

/// Splits cells by neighbour counts into every other cell until the
/// partition is equitable. Pieces are ordered by count, so the result
/// depends only on the structure of the input partition.
fn refine(adj: &[u64], cells: &mut Vec<u64>) {
    let mut scratch: Vec<(u32, u64)> = Vec::new();
    loop {
        let mut changed = false;
        let mut s = 0;
        while s < cells.len() {
            let splitter = cells[s];
            let mut next = Vec::with_capacity(cells.len() + 4);
            for &cell in cells.iter() {
                if cell & (cell - 1) == 0 {
                    next.push(cell);
                    continue;
                }
                scratch.clear();
                for v in bits(cell) {
                    let c = (adj[v] & splitter).count_ones();
                    match scratch.iter_mut().find(|(k, _)| *k == c) {
                        Some(slot) => slot.1 |= 1u64 << v,
                        None => scratch.push((c, 1u64 << v)),
                    }
                }
                if scratch.len() > 1 {
                    scratch.sort_unstable_by_key(|&(k, _)| k);
                    next.extend(scratch.iter().map(|&(_, m)| m));
                    changed = true;
                } else {
                    next.push(cell);
                }
            }
            *cells = next;
            s += 1;
        }
        if !changed {
            return;
        }
    }
}

struct Search<'a> {
    adj: &'a [u64],
    /// Least leaf key seen so far, with the labeling that produced it.
    best: Option<(Vec<u64>, Vec<usize>)>,
    first: Option<(Vec<u64>, Vec<usize>)>,
    generators: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn descend(&mut self, cells: &[u64], prefix: &mut Vec<usize>) {
        let n = self.adj.len();
        if cells.len() == n {
            self.leaf(cells);
            return;
        }
        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.count_ones() > 1)
            .min_by_key(|(i, c)| (c.count_ones(), *i))
            .map(|(i, _)| i)
            .expect("non-discrete partition has a non-singleton cell");
        let candidates = cells[target];
        let mut tried = 0u64;
        let mut covered = 0u64;
        for v in bits(candidates) {
            if covered >> v & 1 == 1 {
                continue;
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(1u64 << v);
            child.push(candidates & !(1u64 << v));
            child.extend_from_slice(&cells[target + 1..]);
            refine(self.adj, &mut child);
            prefix.push(v);
            self.descend(&child, prefix);
            prefix.pop();
            tried |= 1u64 << v;
            covered = self.orbit_closure(tried, prefix);
        }
    }

    fn leaf(&mut self, cells: &[u64]) {
        let n = self.adj.len();
        let mut perm = vec![0usize; n];
        for (i, &c) in cells.iter().enumerate() {
            perm[c.trailing_zeros() as usize] = i;
        }
        let mut key = vec![0u64; n];
        for v in 0..n {
            key[perm[v]] = bits(self.adj[v]).fold(0u64, |acc, u| acc | 1u64 << perm[u]);
        }
        if self.first.is_none() {
            self.first = Some((key.clone(), perm.clone()));
        }
        let first_match = self.first.as_ref().filter(|(k, _)| *k == key).map(|(_, p)| p.clone());
        match &self.best {
            None => self.best = Some((key, perm)),
            Some((best_key, best_perm)) => {
                if key == *best_key {
                    let gen = automorphism(best_perm, &perm);
                    self.push_generator(gen);
                } else if let Some(first_perm) = first_match {
                    let gen = automorphism(&first_perm, &perm);
                    self.push_generator(gen);
                } else if key < *best_key {
                    self.best = Some((key, perm));
                }
            }
        }
    }

    fn push_generator(&mut self, gen: Vec<usize>) {
        if gen.iter().enumerate().any(|(i, &p)| i != p) && !self.generators.contains(&gen) {
            self.generators.push(gen);
        }
    }

    /// Orbit closure of `mask` under the generators that fix `prefix` pointwise.
    fn orbit_closure(&self, mask: u64, prefix: &[usize]) -> u64 {
        let stabilizer: Vec<&Vec<usize>> = self
            .generators
            .iter()
            .filter(|g| prefix.iter().all(|&v| g[v] == v))
            .collect();
        if stabilizer.is_empty() {
            return mask;
        }
        let mut closed = mask;
        loop {
            let mut grown = closed;
            for g in &stabilizer {
                for v in bits(closed) {
                    grown |= 1u64 << g[v];
                }
            }
            if grown == closed {
                return closed & full_mask(self.adj.len());
            }
            closed = grown;
        }
    }
}

/// Given two labelings with identical relabeled graphs, returns the
/// automorphism `v -> a^{-1}(b(v))`.
fn automorphism(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut a_inv = vec![0usize; a.len()];
    for (v, &p) in a.iter().enumerate() {
        a_inv[p] = v;
    }
    b.iter().map(|&p| a_inv[p]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    fn shuffled(rng: &mut ChaCha8Rng, g: &Graph) -> Graph {
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(rng);
        g.relabel(&perm).unwrap()
    }

    /// Brute-force isomorphism test by trying every bijection.
    fn brute_isomorphic(a: &Graph, b: &Graph) -> bool {
        fn extend(a: &Graph, b: &Graph, map: &mut Vec<usize>, used: u64) -> bool {
            let v = map.len();
            if v == a.n() {
                return true;
            }
            for w in 0..b.n() {
                if used >> w & 1 == 1 || a.degree(v) != b.degree(w) {
                    continue;
                }
                if (0..v).all(|u| a.has_edge(u, v) == b.has_edge(map[u], w)) {
                    map.push(w);
                    if extend(a, b, map, used | 1 << w) {
                        return true;
                    }
                    map.pop();
                }
            }
            false
        }
        a.n() == b.n() && a.edge_count() == b.edge_count() && extend(a, b, &mut Vec::new(), 0)
    }

    #[test]
    fn permutation_reproduces_code() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let g = random_graph(&mut rng, 9, 0.4);
            let lab = canonical_labeling(&g);
            let form = g.relabel(&lab.permutation).unwrap();
            assert_eq!(graph6::encode(&form).into_bytes(), lab.code);
        }
    }

    #[test]
    fn invariant_under_relabeling() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let n = rng.gen_range(1..=10);
            let p = rng.gen_range(0.1..0.9);
            let g = random_graph(&mut rng, n, p);
            let code = canonical_code(&g);
            for _ in 0..200 {
                assert_eq!(canonical_code(&shuffled(&mut rng, &g)), code);
            }
        }
    }

    #[test]
    fn codes_agree_with_brute_force_isomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..400 {
            let n = rng.gen_range(1..=8);
            let p = rng.gen_range(0.2..0.8);
            let a = random_graph(&mut rng, n, p);
            // Mix of relabelled copies, small edits and fresh samples.
            let b = match rng.gen_range(0..3) {
                0 => shuffled(&mut rng, &a),
                1 => {
                    let c = a.complement();
                    let flip = if c.edge_count() > 0 && a.edge_count() > 0 {
                        let (u, v) = a.edges()[rng.gen_range(0..a.edge_count())];
                        let (x, y) = c.edges()[rng.gen_range(0..c.edge_count())];
                        a.without_edge(u, v).unwrap().with_edge(x, y).unwrap()
                    } else {
                        a.clone()
                    };
                    shuffled(&mut rng, &flip)
                }
                _ => random_graph(&mut rng, n, p),
            };
            assert_eq!(
                canonical_code(&a) == canonical_code(&b),
                brute_isomorphic(&a, &b),
                "{a:?} vs {b:?}"
            );
        }
    }

    #[test]
    fn distinguishes_hexagon_from_two_triangles() {
        let c6 = Graph::cycle(6).unwrap();
        let tt = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_ne!(canonical_code(&c6), canonical_code(&tt));
    }

    #[test]
    fn symmetric_graphs_finish() {
        for g in [
            Graph::complete(20).unwrap(),
            Graph::complete_bipartite(8, 8).unwrap(),
            Graph::cycle(15).unwrap().complement(),
            Graph::empty(16).unwrap(),
        ] {
            let lab = canonical_labeling(&g);
            assert_eq!(lab.permutation.len(), g.n());
        }
        // Petersen graph, vertex-transitive with equitable degree partition
        let outer: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let spokes: Vec<_> = (0..5).map(|i| (i, i + 5)).collect();
        let inner: Vec<_> = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5)).collect();
        let edges: Vec<_> = outer.into_iter().chain(spokes).chain(inner).collect();
        let petersen = Graph::from_edges(10, &edges).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(
            canonical_code(&petersen),
            canonical_code(&shuffled(&mut rng, &petersen))
        );
    }
}
