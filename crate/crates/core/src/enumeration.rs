//! Isomorph-free generation of graphs under degree, edge-count and sparsity
//! constraints.
//!
//! Graphs are grown one vertex at a time. A child is kept only if the new
//! vertex has minimum degree and the child minus its canonical deletion
//! vertex (the first minimum-degree vertex in canonical order) is isomorphic
//! to the parent, so each isomorphism class has a single parent class. Each
//! level is then deduplicated by canonical code, which on its own already
//! guarantees correctness; the acceptance test keeps the levels small.
//!
//! All constraints are checked in a hereditary form on intermediate levels:
//! if the final graph on `n` vertices has minimum degree `delta`, deleting
//! `n - m` vertices leaves minimum degree at least `delta - (n - m)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::{canonical_code, canonical_labeling};
use crate::choose2;
use crate::graph::{bits, for_each_subset_of_size, Graph};
use crate::par::Exec;
use crate::rigidity::is_d_sparse;
use crate::rigidity::sparsity::sparse_with_vertex;

/// Largest vertex count the generator accepts.
pub const MAX_ENUMERATION_VERTICES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("at most {MAX_ENUMERATION_VERTICES} vertices are supported, got {0}")]
    TooManyVertices(usize),
    #[error("degree bounds {min}..={max} are empty or exceed n - 1 = {limit}")]
    DegreeRange { min: usize, max: usize, limit: usize },
    #[error("edge bounds {min}..={max} are empty")]
    EdgeRange { min: usize, max: usize },
    #[error("no graph on {n} vertices meets degree bounds {degree_min}..={degree_max} with {edge_min}..={edge_max} edges")]
    Infeasible { n: usize, degree_min: usize, degree_max: usize, edge_min: usize, edge_max: usize },
    #[error("no {k}-regular graph on {n} vertices: n k is odd")]
    Parity { n: usize, k: usize },
    #[error("partition must be i/m with 0 <= i < m, got {0}")]
    Partition(String),
}

/// Constraints on the graphs to generate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSpec {
    pub n: usize,
    pub degree_min: usize,
    pub degree_max: usize,
    pub edge_min: usize,
    pub edge_max: usize,
    /// Keep only `d`-sparse graphs.
    pub d_sparse_filter: Option<usize>,
    /// Keep only `k`-connected graphs.
    pub connectivity_min: Option<usize>,
}

impl SearchSpec {
    /// All graphs on `n` vertices.
    pub fn new(n: usize) -> Self {
        SearchSpec {
            n,
            degree_min: 0,
            degree_max: n.saturating_sub(1),
            edge_min: 0,
            edge_max: choose2(n),
            d_sparse_filter: None,
            connectivity_min: None,
        }
    }

    pub fn degrees(self, min: usize, max: usize) -> Self {
        SearchSpec { degree_min: min, degree_max: max, ..self }
    }

    pub fn edges(self, min: usize, max: usize) -> Self {
        SearchSpec { edge_min: min, edge_max: max, ..self }
    }

    pub fn sparse(self, d: usize) -> Self {
        SearchSpec { d_sparse_filter: Some(d), ..self }
    }

    pub fn connectivity(self, k: usize) -> Self {
        SearchSpec { connectivity_min: Some(k), ..self }
    }

    pub fn validate(&self) -> Result<(), EnumerationError> {
        let n = self.n;
        if n > MAX_ENUMERATION_VERTICES {
            return Err(EnumerationError::TooManyVertices(n));
        }
        let limit = n.saturating_sub(1);
        if self.degree_min > self.degree_max || self.degree_min > limit {
            return Err(EnumerationError::DegreeRange { min: self.degree_min, max: self.degree_max, limit });
        }
        if self.edge_min > self.edge_max {
            return Err(EnumerationError::EdgeRange { min: self.edge_min, max: self.edge_max });
        }
        if self.degree_min == self.degree_max && n * self.degree_min % 2 == 1 {
            return Err(EnumerationError::Parity { n, k: self.degree_min });
        }
        let max_degree = self.degree_max.min(limit);
        let lo = (n * self.degree_min).div_ceil(2).max(self.edge_min);
        let hi = (n * max_degree / 2).min(self.edge_max).min(choose2(n));
        if lo > hi {
            return Err(EnumerationError::Infeasible {
                n,
                degree_min: self.degree_min,
                degree_max: self.degree_max,
                edge_min: self.edge_min,
                edge_max: self.edge_max,
            });
        }
        Ok(())
    }

    fn accepts(&self, g: &Graph) -> bool {
        let m = g.edge_count();
        if m < self.edge_min || m > self.edge_max {
            return false;
        }
        if let Some(k) = self.connectivity_min {
            if !g.is_k_connected(k).holds() {
                return false;
            }
        }
        true
    }
}

/// Shard `index` of `count`: the last level's parents, sorted by canonical
/// code, are dealt round-robin across shards. Shards are disjoint and their
/// union is the full output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub index: usize,
    pub count: usize,
}

impl Partition {
    pub const WHOLE: Partition = Partition { index: 0, count: 1 };

    pub fn new(index: usize, count: usize) -> Result<Self, EnumerationError> {
        if count == 0 || index >= count {
            return Err(EnumerationError::Partition(format!("{index}/{count}")));
        }
        Ok(Partition { index, count })
    }

    fn owns(&self, position: usize) -> bool {
        position % self.count == self.index
    }
}

impl FromStr for Partition {
    type Err = EnumerationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || EnumerationError::Partition(s.to_string());
        let (i, m) = s.split_once('/').ok_or_else(bad)?;
        let i = i.trim().parse().map_err(|_| bad())?;
        let m = m.trim().parse().map_err(|_| bad())?;
        Partition::new(i, m)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.index, self.count)
    }
}

/// A generated graph in canonical form with its code.
struct Node {
    code: Vec<u8>,
    graph: Graph,
}

/// Every isomorphism class meeting `spec`, as canonical forms sorted by code.
pub fn enumerate_constrained(spec: &SearchSpec) -> Result<Vec<Graph>, EnumerationError> {
    enumerate_partitioned(spec, Partition::WHOLE, Exec::default())
}

pub fn enumerate_partitioned(
    spec: &SearchSpec,
    partition: Partition,
    exec: Exec,
) -> Result<Vec<Graph>, EnumerationError> {
    spec.validate()?;
    let n = spec.n;
    let empty = Graph::empty(0).expect("empty graph");
    let mut level = vec![Node { code: canonical_code(&empty), graph: empty }];
    for m in 1..=n {
        let parents: Vec<&Node> = if m == n {
            level.iter().enumerate().filter(|(i, _)| partition.owns(*i)).map(|(_, p)| p).collect()
        } else {
            level.iter().collect()
        };
        let mut children = exec.flat_map(&parents, |p| expand(p, m, spec));
        children.sort_unstable_by(|a, b| a.code.cmp(&b.code));
        children.dedup_by(|a, b| a.code == b.code);
        level = children;
    }
    if n == 0 && !partition.owns(0) {
        level.clear();
    }
    Ok(level.into_iter().filter(|c| spec.accepts(&c.graph)).map(|c| c.graph).collect())
}

/// Children on `m` vertices of one parent on `m - 1` vertices.
fn expand(parent: &Node, m: usize, spec: &SearchSpec) -> Vec<Node> {
    let p = &parent.graph;
    let n = spec.n;
    let new = m - 1;
    let remaining = n - m;
    let lb = spec.degree_min.saturating_sub(remaining);
    let max_deg = spec.degree_max.min(n.saturating_sub(1));

    // edges still to come from the vertices added after this level
    let later_min: usize = (m + 1..=n).map(|j| spec.degree_min.saturating_sub(n - j)).sum();
    let later_max: usize = (m + 1..=n).map(|j| max_deg.min(j - 1)).sum();
    let mut edge_cap = spec.edge_max.saturating_sub(later_min);
    if let Some(d) = spec.d_sparse_filter {
        if m >= d + 2 {
            edge_cap = edge_cap.min(d * m - choose2(d + 1));
        }
    }
    let edge_floor = spec.edge_min.saturating_sub(later_max);

    let degrees: Vec<usize> = (0..new).map(|v| p.degree(v)).collect();
    let mut forced = 0u64;
    let mut optional = Vec::new();
    for (v, &deg) in degrees.iter().enumerate() {
        if deg + 1 < lb {
            return Vec::new();
        }
        if deg < lb {
            forced |= 1u64 << v;
        } else if deg < max_deg {
            optional.push(v);
        }
    }
    let forced_count = forced.count_ones() as usize;
    let base_edges = p.edge_count();
    let size_lo = lb.max(forced_count).max(edge_floor.saturating_sub(base_edges));
    let size_hi = max_deg.min(new).min(edge_cap.saturating_sub(base_edges));
    if size_lo > size_hi || edge_cap < base_edges {
        return Vec::new();
    }

    let mut out = Vec::new();
    for size in size_lo..=size_hi {
        for_each_subset_of_size(optional.len(), size - forced_count, |pick| {
            let mask = forced | bits(pick).fold(0u64, |acc, i| acc | 1u64 << optional[i]);
            if let Some(child) = accept(parent, mask, size, &degrees, spec) {
                out.push(child);
            }
            true
        });
    }
    out
}

fn accept(parent: &Node, mask: u64, size: usize, degrees: &[usize], spec: &SearchSpec) -> Option<Node> {
    // the new vertex must have minimum degree in the child
    let min_other = degrees
        .iter()
        .enumerate()
        .map(|(v, &d)| d + (mask >> v & 1) as usize)
        .min()
        .unwrap_or(usize::MAX);
    if size > min_other {
        return None;
    }
    let child = parent.graph.with_vertex(mask).expect("within vertex limit");
    let new = degrees.len();
    if let Some(d) = spec.d_sparse_filter {
        if !sparse_with_vertex(&child, new, d) {
            return None;
        }
    }
    let labeling = canonical_labeling(&child);
    let deletion = (0..=new)
        .filter(|&v| child.degree(v) == size)
        .min_by_key(|&v| labeling.permutation[v])
        .expect("new vertex has minimum degree");
    if deletion != new {
        let reduced = child.without_vertex(deletion).expect("vertex in range");
        if canonical_code(&reduced) != parent.code {
            return None;
        }
    }
    let graph = child.relabel_unchecked(&labeling.permutation);
    Some(Node { code: labeling.code, graph })
}

/// All `k`-regular graphs on `n` vertices up to isomorphism, as canonical
/// forms sorted by code. Dense cases are generated as complements of sparse ones.
pub fn enumerate_regular(n: usize, k: usize) -> Result<Vec<Graph>, EnumerationError> {
    enumerate_regular_with(n, k, Exec::default())
}

pub fn enumerate_regular_with(n: usize, k: usize, exec: Exec) -> Result<Vec<Graph>, EnumerationError> {
    if n * k % 2 == 1 {
        return Err(EnumerationError::Parity { n, k });
    }
    if n > 0 && k >= n {
        return Err(EnumerationError::DegreeRange { min: k, max: k, limit: n - 1 });
    }
    let co = n.saturating_sub(1).saturating_sub(k);
    if n > 0 && co < k {
        let sparse = enumerate_partitioned(&SearchSpec::new(n).degrees(co, co), Partition::WHOLE, exec)?;
        let mut dense: Vec<(Vec<u8>, Graph)> = sparse
            .iter()
            .map(|g| {
                let c = canonical_labeling(&g.complement());
                let form = g.complement().relabel_unchecked(&c.permutation);
                (c.code, form)
            })
            .collect();
        dense.sort_by(|a, b| a.0.cmp(&b.0));
        return Ok(dense.into_iter().map(|(_, g)| g).collect());
    }
    enumerate_partitioned(&SearchSpec::new(n).degrees(k, k), Partition::WHOLE, exec)
}

/// Number of partitions of `n` into parts of size at least `min_part`.
pub fn partitions_with_min_part(n: usize, min_part: usize) -> usize {
    // ways[j]: partitions of j using the part sizes seen so far
    let mut ways = vec![0usize; n + 1];
    ways[0] = 1;
    for part in min_part.max(1)..=n {
        for j in part..=n {
            ways[j] += ways[j - part];
        }
    }
    ways[n]
}

/// Graphs emitted under a sparsity filter, rechecked by the full subset test.
pub fn all_sparse(graphs: &[Graph], d: usize) -> bool {
    graphs.iter().all(|g| is_d_sparse(g, d).sparse)
}
