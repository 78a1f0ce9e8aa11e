//! Simple undirected graphs on dense vertex labels `0..n`.
//!
//! Adjacency is kept as one `u64` bitmask per vertex, so graphs are limited to
//! [`MAX_VERTICES`] vertices. Every operation returns a new graph.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// Largest vertex count a [`Graph`] can hold.
pub const MAX_VERTICES: usize = 64;

/// An unordered vertex pair, always stored with the smaller label first.
pub type Edge = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has {0} vertices, at most {MAX_VERTICES} are supported")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("edge {0}-{1} listed twice")]
    DuplicateEdge(usize, usize),
    #[error("edge {0}-{1} is not present")]
    EdgeAbsent(usize, usize),
    #[error("permutation is not a bijection on 0..{0}")]
    BadPermutation(usize),
}

/// Normalises a vertex pair so that the smaller label comes first.
#[inline]
pub fn edge(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[inline]
pub(crate) fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

/// Minimum degree, maximum degree and the full degree sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub min: usize,
    pub max: usize,
    pub degrees: Vec<usize>,
}

/// Outcome of a vertex-connectivity query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Connectivity {
    /// More than `k` vertices and no separating set smaller than `k`.
    Connected,
    /// The graph has at most `k` vertices.
    TooFewVertices,
    /// A minimum separating vertex set (empty if the graph is already disconnected).
    Separator(Vec<usize>),
}

impl Connectivity {
    pub fn holds(&self) -> bool {
        matches!(self, Connectivity::Connected)
    }
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// Builds a graph from an edge list, rejecting loops, repeats and bad labels.
    pub fn from_edges(n: usize, edges: &[Edge]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            if g.has_edge(u, v) {
                let (a, b) = edge(u, v);
                return Err(GraphError::DuplicateEdge(a, b));
            }
            g.set(u, v);
        }
        Ok(g)
    }

    pub(crate) fn from_adjacency(adj: Vec<u64>) -> Self {
        debug_assert!(adj.len() <= MAX_VERTICES);
        Graph { n: adj.len(), adj }
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        let all = full_mask(n);
        for v in 0..n {
            g.adj[v] = all & !(1u64 << v);
        }
        Ok(g)
    }

    /// `K_{s,t}` with parts `0..s` and `s..s+t`.
    pub fn complete_bipartite(s: usize, t: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(s + t)?;
        for u in 0..s {
            for v in s..s + t {
                g.set(u, v);
            }
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        if n >= 3 {
            for v in 0..n {
                g.set(v, (v + 1) % n);
            }
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for v in 1..n {
            g.set(v - 1, v);
        }
        Ok(g)
    }

    #[inline]
    fn set(&mut self, u: usize, v: usize) {
        self.adj[u] |= 1u64 << v;
        self.adj[v] |= 1u64 << u;
    }

    #[inline]
    fn clear(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1u64 << v);
        self.adj[v] &= !(1u64 << u);
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in bits(self.adj[u] >> (u + 1)) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    #[inline]
    pub fn neighbor_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub(crate) fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.adj[v])
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let degrees: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        DegreeProfile {
            min: degrees.iter().copied().min().unwrap_or(0),
            max: degrees.iter().copied().max().unwrap_or(0),
            degrees,
        }
    }

    /// Number of edges with both ends in `mask`.
    pub fn induced_edge_count(&self, mask: u64) -> usize {
        bits(mask)
            .map(|v| (self.adj[v] & mask).count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn is_complete(&self) -> bool {
        let all = full_mask(self.n);
        (0..self.n).all(|v| self.adj[v] | (1u64 << v) == all)
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::Loop(u));
        }
        if self.has_edge(u, v) {
            let (a, b) = edge(u, v);
            return Err(GraphError::DuplicateEdge(a, b));
        }
        let mut g = self.clone();
        g.set(u, v);
        Ok(g)
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Result<Self, GraphError> {
        if !self.has_edge(u, v) {
            let (a, b) = edge(u, v);
            return Err(GraphError::EdgeAbsent(a, b));
        }
        let mut g = self.clone();
        g.clear(u, v);
        Ok(g)
    }

    /// Adds a vertex labelled `n` adjacent to the vertices in `mask`.
    pub(crate) fn with_vertex(&self, mask: u64) -> Result<Self, GraphError> {
        if self.n + 1 > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(self.n + 1));
        }
        let mut g = self.clone();
        let v = self.n;
        g.n += 1;
        g.adj.push(0);
        for u in bits(mask & full_mask(self.n)) {
            g.set(u, v);
        }
        Ok(g)
    }

    /// Removes vertex `v`; labels above `v` shift down by one.
    pub fn without_vertex(&self, v: usize) -> Result<Self, GraphError> {
        self.check_vertex(v)?;
        let keep = full_mask(self.n) & !(1u64 << v);
        Ok(self.induced_subgraph(keep))
    }

    /// The subgraph induced on `mask`, relabelled in increasing order.
    pub fn induced_subgraph(&self, mask: u64) -> Self {
        let verts: Vec<usize> = bits(mask & full_mask(self.n)).collect();
        let mut pos = [usize::MAX; MAX_VERTICES];
        for (i, &v) in verts.iter().enumerate() {
            pos[v] = i;
        }
        let adj = verts
            .iter()
            .map(|&v| {
                bits(self.adj[v] & mask).fold(0u64, |acc, u| acc | 1u64 << pos[u])
            })
            .collect();
        Graph::from_adjacency(adj)
    }

    /// Relabels so that old vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, GraphError> {
        if perm.len() != self.n {
            return Err(GraphError::BadPermutation(self.n));
        }
        let mut seen = 0u64;
        for &p in perm {
            if p >= self.n || seen >> p & 1 == 1 {
                return Err(GraphError::BadPermutation(self.n));
            }
            seen |= 1u64 << p;
        }
        Ok(self.relabel_unchecked(perm))
    }

    pub(crate) fn relabel_unchecked(&self, perm: &[usize]) -> Self {
        let mut adj = vec![0u64; self.n];
        for v in 0..self.n {
            adj[perm[v]] = bits(self.adj[v]).fold(0u64, |acc, u| acc | 1u64 << perm[u]);
        }
        Graph::from_adjacency(adj)
    }

    pub fn complement(&self) -> Self {
        let all = full_mask(self.n);
        let adj = (0..self.n)
            .map(|v| !self.adj[v] & all & !(1u64 << v))
            .collect();
        Graph::from_adjacency(adj)
    }

    /// Merges `v` into `u` along the edge `uv`, dropping the loop and any
    /// parallel edges. Labels above `v` shift down by one.
    pub fn contract_edge(&self, u: usize, v: usize) -> Result<Self, GraphError> {
        if !self.has_edge(u, v) {
            let (a, b) = edge(u, v);
            return Err(GraphError::EdgeAbsent(a, b));
        }
        let mut g = self.clone();
        for w in bits(self.adj[v]) {
            if w != u {
                g.set(u, w);
            }
        }
        g.without_vertex(v)
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Self, GraphError> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|m| m << self.n));
        Ok(Graph::from_adjacency(adj))
    }

    /// Breadth-first distance; `None` when `y` is unreachable from `x`.
    pub fn distance(&self, x: usize, y: usize) -> Option<usize> {
        if x >= self.n || y >= self.n {
            return None;
        }
        let mut seen = 1u64 << x;
        let mut frontier = 1u64 << x;
        let mut dist = 0;
        while frontier != 0 {
            if frontier >> y & 1 == 1 {
                return Some(dist);
            }
            let next = bits(frontier).fold(0u64, |acc, v| acc | self.adj[v]) & !seen;
            seen |= next;
            frontier = next;
            dist += 1;
        }
        None
    }

    /// Vertices reachable from `start` without entering `blocked`.
    pub(crate) fn reach(&self, start: usize, blocked: u64) -> u64 {
        let mut seen = 1u64 << start;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let fresh = self.adj[v] & !seen & !blocked;
            seen |= fresh;
            queue.extend(bits(fresh));
        }
        seen
    }

    /// Connected components as vertex masks, ordered by smallest vertex.
    pub fn components(&self) -> Vec<u64> {
        self.components_avoiding(0)
    }

    pub(crate) fn components_avoiding(&self, blocked: u64) -> Vec<u64> {
        let mut left = full_mask(self.n) & !blocked;
        let mut out = Vec::new();
        while left != 0 {
            let v = left.trailing_zeros() as usize;
            let c = self.reach(v, blocked);
            out.push(c);
            left &= !c;
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.reach(0, 0) == full_mask(self.n)
    }

    /// A smallest vertex set whose removal disconnects the graph, searching
    /// sizes `0..limit`. Complete graphs have no separator.
    pub fn min_separator(&self, limit: usize) -> Option<Vec<usize>> {
        let n = self.n;
        let all = full_mask(n);
        for size in 0..limit.min(n.saturating_sub(1)) {
            if n - size < 2 {
                break;
            }
            let mut found = None;
            for_each_subset_of_size(n, size, |cut| {
                // A separator must leave two non-adjacent vertices on different sides.
                let rest = all & !cut;
                let start = rest.trailing_zeros() as usize;
                if self.reach(start, cut) & rest != rest {
                    found = Some(cut);
                    return false;
                }
                true
            });
            if let Some(cut) = found {
                return Some(bits(cut).collect());
            }
        }
        None
    }

    /// `k`-vertex-connectivity: more than `k` vertices and no separator of size below `k`.
    pub fn is_k_connected(&self, k: usize) -> Connectivity {
        if self.n <= k {
            return Connectivity::TooFewVertices;
        }
        match self.min_separator(k) {
            Some(cut) => Connectivity::Separator(cut),
            None => Connectivity::Connected,
        }
    }

    /// Vertices `x`, `y` with degrees 2 and 3 at distance at least 3 (or in different components).
    pub fn find_deg23_witness(&self) -> Option<(usize, usize)> {
        for x in (0..self.n).filter(|&v| self.degree(v) == 2) {
            for y in (0..self.n).filter(|&v| self.degree(v) == 3) {
                match self.distance(x, y) {
                    Some(d) if d < 3 => {}
                    _ => return Some((x, y)),
                }
            }
        }
        None
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Calls `f` on every `size`-subset of `0..n` as a bitmask, in increasing
/// numeric order, until `f` returns `false`.
pub(crate) fn for_each_subset_of_size(n: usize, size: usize, mut f: impl FnMut(u64) -> bool) {
    if size > n {
        return;
    }
    if size == 0 {
        f(0);
        return;
    }
    let limit = if n == 64 { u64::MAX } else { 1u64 << n };
    let mut s = full_mask(size);
    loop {
        if !f(s) {
            return;
        }
        // Gosper's hack
        let c = s & s.wrapping_neg();
        let r = s.wrapping_add(c);
        if r == 0 || (n < 64 && r >= limit) {
            return;
        }
        s = (((r ^ s) >> 2) / c) | r;
        if n < 64 && s >= limit {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_counts() {
        assert_eq!(Graph::complete(5).unwrap().edge_count(), 10);
        assert_eq!(Graph::complete(6).unwrap().edge_count(), 15);
        let k0 = Graph::complete(0).unwrap();
        assert_eq!((k0.n(), k0.edge_count()), (0, 0));
    }

    #[test]
    fn complete_bipartite_counts() {
        let k66 = Graph::complete_bipartite(6, 6).unwrap();
        assert_eq!((k66.n(), k66.edge_count()), (12, 36));
        assert_eq!(Graph::complete_bipartite(1, 1).unwrap().edges(), vec![(0, 1)]);
        let k05 = Graph::complete_bipartite(0, 5).unwrap();
        assert_eq!((k05.n(), k05.edge_count()), (5, 0));
    }

    #[test]
    fn rejects_malformed_edges() {
        assert_eq!(Graph::from_edges(3, &[(1, 1)]), Err(GraphError::Loop(1)));
        assert_eq!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert_eq!(
            Graph::from_edges(3, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert!(Graph::empty(65).is_err());
    }

    #[test]
    fn edge_order_is_canonical() {
        let a = Graph::from_edges(4, &[(3, 2), (0, 1), (2, 0)]).unwrap();
        let b = Graph::from_edges(4, &[(0, 2), (2, 3), (1, 0)]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.edges(), vec![(0, 1), (0, 2), (2, 3)]);
    }

    #[test]
    fn complement_examples() {
        let k5 = Graph::complete(5).unwrap();
        assert_eq!(k5.complement(), Graph::empty(5).unwrap());
        let c5 = Graph::cycle(5).unwrap();
        let cc = c5.complement();
        assert_eq!(cc.edge_count(), 5);
        assert!((0..5).all(|v| cc.degree(v) == 2));
        assert!(cc.is_connected());
    }

    #[test]
    fn complement_of_regular_graph() {
        // 12-regular on 15 vertices: complement of the 15-cycle
        let g = Graph::cycle(15).unwrap().complement();
        assert!((0..15).all(|v| g.degree(v) == 12));
        let back = g.complement();
        assert!((0..15).all(|v| back.degree(v) == 2));
    }

    #[test]
    fn contraction_examples() {
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(k4.contract_edge(0, 1).unwrap(), Graph::complete(3).unwrap());
        let c4 = Graph::cycle(4).unwrap().contract_edge(1, 2).unwrap();
        assert_eq!(c4.edge_count(), 3);
        assert!((0..3).all(|v| c4.degree(v) == 2));
        let c5 = Graph::cycle(5).unwrap().contract_edge(4, 0).unwrap();
        assert_eq!(c5.n(), 4);
        assert!((0..4).all(|v| c5.degree(v) == 2) && c5.is_connected());
        assert_eq!(
            Graph::cycle(5).unwrap().contract_edge(0, 2),
            Err(GraphError::EdgeAbsent(0, 2))
        );
    }

    #[test]
    fn distance_examples() {
        let c6 = Graph::cycle(6).unwrap();
        assert_eq!(c6.distance(0, 1), Some(1));
        assert_eq!(c6.distance(0, 3), Some(3));
        assert_eq!(c6.distance(2, 2), Some(0));
        let two = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(two.distance(0, 3), None);
    }

    #[test]
    fn degree_profile_examples() {
        let k5 = Graph::complete(5).unwrap().degree_profile();
        assert_eq!((k5.min, k5.max), (4, 4));
        let star = Graph::complete_bipartite(1, 4).unwrap().degree_profile();
        assert_eq!((star.min, star.max), (1, 4));
    }

    #[test]
    fn connectivity_examples() {
        assert!(Graph::complete(5).unwrap().is_k_connected(4).holds());
        assert_eq!(
            Graph::complete(5).unwrap().is_k_connected(5),
            Connectivity::TooFewVertices
        );
        match Graph::cycle(4).unwrap().is_k_connected(3) {
            Connectivity::Separator(cut) => assert_eq!(cut.len(), 2),
            other => panic!("unexpected {other:?}"),
        }
        let two = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(two.is_k_connected(1), Connectivity::Separator(vec![]));
    }

    #[test]
    fn deg23_witness_examples() {
        // 3-regular: no degree-2 vertex
        let prism = Graph::from_edges(
            6,
            &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
        )
        .unwrap();
        assert_eq!(prism.find_deg23_witness(), None);
        assert_eq!(Graph::cycle(12).unwrap().find_deg23_witness(), None);
        // path 0-1-2-3-4 with a pendant triangle-free branch at 4
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (4, 6), (5, 6), (0, 6)])
            .unwrap();
        let (x, y) = g.find_deg23_witness().unwrap();
        assert_eq!((g.degree(x), g.degree(y)), (2, 3));
        assert!(g.distance(x, y).is_none_or(|d| d >= 3));
    }

    #[test]
    fn subset_iteration_counts() {
        for n in 0..=8 {
            for k in 0..=n {
                let mut count = 0u64;
                for_each_subset_of_size(n, k, |m| {
                    assert_eq!(m.count_ones() as usize, k);
                    assert!(m < 1 << n);
                    count += 1;
                    true
                });
                let binom = (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64);
                assert_eq!(count, binom, "n={n} k={k}");
            }
        }
    }
}
