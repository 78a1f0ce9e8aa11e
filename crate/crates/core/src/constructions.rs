//! Named graph families and the operations used to build circuits.
//!
//! Every construction returns plain [`Graph`]s; the family builders and the
//! gluing operations additionally record which labels play which part in a
//! [`LabeledConstruction`].

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::canonical_code;
use crate::graph::{edge, Edge, Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("{0}")]
    Graph(#[from] GraphError),
    #[error("parameters out of range: {0}")]
    Range(String),
    #[error("expected {expected} vertices, got {found}")]
    Count { expected: usize, found: usize },
    #[error("vertex {0} listed twice")]
    DuplicateNeighbor(usize),
    #[error("edge {0}-{1} is not present")]
    EdgeAbsent(usize, usize),
    #[error("{0} and {1} must both be among the new vertex's neighbours")]
    NotAmongNeighbors(usize, usize),
    #[error("hinge vertex {0} is not a neighbour of the split vertex")]
    HingeNotNeighbors(usize),
    #[error("vertex {0} is not a non-hinge neighbour of the split vertex")]
    PartNotNeighbors(usize),
    #[error("edge {0}-{1} is not an edge of both summands")]
    MissingSharedEdge(usize, usize),
    #[error("shared vertices do not induce a clique in both summands")]
    SharedNotClique,
    #[error("deleted edge {0}-{1} does not lie in the shared clique")]
    EdgeNotShared(usize, usize),
}

/// Part played by a label or label pair in a construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Vertex(usize),
    Vertices(Vec<usize>),
    /// A pair that is an edge of the graph.
    Edge(Edge),
    /// A pair removed by the construction, so not an edge of the graph.
    Deleted(Edge),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledConstruction {
    pub graph: Graph,
    pub roles: BTreeMap<String, Role>,
}

impl LabeledConstruction {
    fn new(graph: Graph, roles: impl IntoIterator<Item = (&'static str, Role)>) -> Self {
        let roles = roles.into_iter().map(|(k, r)| (k.to_string(), r)).collect();
        let c = LabeledConstruction { graph, roles };
        debug_assert!(c.roles_valid());
        c
    }

    /// Every role names existing labels, and deleted pairs are non-edges.
    pub fn roles_valid(&self) -> bool {
        let n = self.graph.n();
        self.roles.values().all(|role| match role {
            Role::Vertex(v) => *v < n,
            Role::Vertices(vs) => vs.iter().all(|&v| v < n),
            Role::Edge((u, v)) => self.graph.has_edge(*u, *v),
            Role::Deleted((u, v)) => *u < n && *v < n && u != v && !self.graph.has_edge(*u, *v),
        })
    }

    pub fn vertices(&self, name: &str) -> Option<&[usize]> {
        match self.roles.get(name)? {
            Role::Vertices(vs) => Some(vs),
            _ => None,
        }
    }

    pub fn pair(&self, name: &str) -> Option<Edge> {
        match self.roles.get(name)? {
            Role::Edge(e) | Role::Deleted(e) => Some(*e),
            _ => None,
        }
    }
}

fn clique_edges(vs: &[usize]) -> impl Iterator<Item = Edge> + '_ {
    vs.iter()
        .enumerate()
        .flat_map(move |(i, &u)| vs[i + 1..].iter().map(move |&v| edge(u, v)))
}

fn union_of_cliques(n: usize, cliques: &[&[usize]]) -> Graph {
    let mut edges: Vec<Edge> = cliques.iter().flat_map(|c| clique_edges(c)).collect();
    edges.sort_unstable();
    edges.dedup();
    Graph::from_edges(n, &edges).expect("clique labels in range")
}

/// `B_{d,t}`: two copies of `K_{d+2}` overlapping in `K_t`, minus one shared edge.
///
/// `G_1` is `0..d+2`, the shared clique is its top `t` labels, and `G_2` adds
/// fresh labels after `G_1`. The deleted edge is the least shared pair.
pub fn build_b(d: usize, t: usize) -> Result<LabeledConstruction, ConstructionError> {
    if d < 3 || t < 2 || t + 1 > d {
        return Err(ConstructionError::Range(format!("B_{{d,t}} needs d >= 3 and 2 <= t <= d-1, got d={d} t={t}")));
    }
    let a = d + 2;
    let n = 2 * a - t;
    let g1: Vec<usize> = (0..a).collect();
    let shared: Vec<usize> = (a - t..a).collect();
    let g2: Vec<usize> = (a - t..n).collect();
    let e = (shared[0], shared[1]);
    let graph = union_of_cliques(n, &[&g1, &g2]).without_edge(e.0, e.1)?;
    Ok(LabeledConstruction::new(
        graph,
        [
            ("g1", Role::Vertices(g1)),
            ("g2", Role::Vertices(g2)),
            ("shared", Role::Vertices(shared)),
            ("e", Role::Deleted(e)),
        ],
    ))
}

/// All members of `B+_{d,d-1}` up to isomorphism, sorted by canonical code.
///
/// `G_1 = K_{d+3}` on `0..d+3`, the shared `K_{d-1}` is its top `d - 1`
/// labels and `G_2 = K_{d+2}` adds three fresh labels. Every placement of
/// `e` in the shared clique and distinct `f, g` in `E(G_1) - e` is tried,
/// subject to: `e, f, g` have no common end-vertex, and when neither `f` nor
/// `g` lies in `G_2` they are not adjacent.
pub fn enumerate_bplus(d: usize) -> Result<Vec<LabeledConstruction>, ConstructionError> {
    if d < 3 {
        return Err(ConstructionError::Range(format!("B+ needs d >= 3, got d={d}")));
    }
    let a = d + 3;
    let n = d + 6;
    let g1: Vec<usize> = (0..a).collect();
    let shared: Vec<usize> = (4..a).collect();
    let g2: Vec<usize> = (4..n).collect();
    let base = union_of_cliques(n, &[&g1, &g2]);
    let in_g2 = |(u, v): Edge| u >= 4 && v >= 4;
    let adjacent = |(a, b): Edge, (c, e): Edge| a == c || a == e || b == c || b == e;
    let common_end = |x: Edge, y: Edge, z: Edge| {
        [x.0, x.1].iter().any(|&w| [y.0, y.1].contains(&w) && [z.0, z.1].contains(&w))
    };

    let g1_edges: Vec<Edge> = clique_edges(&g1).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for e in clique_edges(&shared) {
        let rest: Vec<Edge> = g1_edges.iter().copied().filter(|&x| x != e).collect();
        for (i, &f) in rest.iter().enumerate() {
            for &g in &rest[i + 1..] {
                if common_end(e, f, g) {
                    continue;
                }
                if !in_g2(f) && !in_g2(g) && adjacent(f, g) {
                    continue;
                }
                let mut graph = base.clone();
                for (u, v) in [e, f, g] {
                    graph = graph.without_edge(u, v)?;
                }
                let code = canonical_code(&graph);
                if seen.insert(code.clone()) {
                    let c = LabeledConstruction::new(
                        graph,
                        [
                            ("g1", Role::Vertices(g1.clone())),
                            ("g2", Role::Vertices(g2.clone())),
                            ("shared", Role::Vertices(shared.clone())),
                            ("e", Role::Deleted(e)),
                            ("f", Role::Deleted(f)),
                            ("g", Role::Deleted(g)),
                        ],
                    );
                    out.push((code, c));
                }
            }
        }
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(out.into_iter().map(|(_, c)| c).collect())
}

fn neighbor_mask(g: &Graph, vs: &[usize]) -> Result<u64, ConstructionError> {
    let mut mask = 0u64;
    for &v in vs {
        g.check_vertex(v)?;
        if mask >> v & 1 == 1 {
            return Err(ConstructionError::DuplicateNeighbor(v));
        }
        mask |= 1u64 << v;
    }
    Ok(mask)
}

fn expect_count(vs: &[usize], expected: usize) -> Result<(), ConstructionError> {
    if vs.len() != expected {
        return Err(ConstructionError::Count { expected, found: vs.len() });
    }
    Ok(())
}

/// Adds vertex `n` joined to the `d` given vertices.
pub fn zero_extension(g: &Graph, d: usize, neighbors: &[usize]) -> Result<Graph, ConstructionError> {
    expect_count(neighbors, d)?;
    let mask = neighbor_mask(g, neighbors)?;
    Ok(g.with_vertex(mask)?)
}

/// Deletes `removed = xy` and adds vertex `n` joined to the `d + 1` given
/// vertices, which must include `x` and `y`.
pub fn one_extension(
    g: &Graph,
    d: usize,
    neighbors: &[usize],
    removed: Edge,
) -> Result<Graph, ConstructionError> {
    expect_count(neighbors, d + 1)?;
    let mask = neighbor_mask(g, neighbors)?;
    let (x, y) = removed;
    if !g.has_edge(x, y) {
        let (a, b) = edge(x, y);
        return Err(ConstructionError::EdgeAbsent(a, b));
    }
    if mask >> x & 1 == 0 || mask >> y & 1 == 0 {
        return Err(ConstructionError::NotAmongNeighbors(x, y));
    }
    Ok(g.without_edge(x, y)?.with_vertex(mask)?)
}

/// Splits `v` into `v_1` (keeping label `v`) and `v_2` (label `n`).
///
/// Both are joined to each other and to the `d - 1` hinge vertices; the
/// remaining neighbours of `v` go to `v_1` if listed in `part1` and to `v_2`
/// otherwise.
pub fn vertex_split(
    g: &Graph,
    d: usize,
    v: usize,
    hinge: &[usize],
    part1: &[usize],
) -> Result<Graph, ConstructionError> {
    g.check_vertex(v)?;
    expect_count(hinge, d.saturating_sub(1))?;
    let nv = g.neighbor_mask(v);
    let hinge_mask = neighbor_mask(g, hinge)?;
    if let Some(&x) = hinge.iter().find(|&&x| nv >> x & 1 == 0) {
        return Err(ConstructionError::HingeNotNeighbors(x));
    }
    let free = nv & !hinge_mask;
    let part1_mask = neighbor_mask(g, part1)?;
    if let Some(&x) = part1.iter().find(|&&x| free >> x & 1 == 0) {
        return Err(ConstructionError::PartNotNeighbors(x));
    }
    let part2_mask = free & !part1_mask;

    let mut h = g.clone();
    for u in crate::graph::bits(part2_mask) {
        h = h.without_edge(v, u)?;
    }
    let v2 = h.n();
    h = h.with_vertex(hinge_mask | part2_mask | 1u64 << v)?;
    debug_assert_eq!(h.degree(v2), d - 1 + part2_mask.count_ones() as usize + 1);
    Ok(h)
}

/// Adds an apex (label `n`) adjacent to every vertex.
pub fn cone(g: &Graph) -> Result<Graph, ConstructionError> {
    Ok(g.with_vertex(crate::graph::full_mask(g.n()))?)
}

/// 2-sum along the edge `uv`, present in both graphs with the same labels.
/// See [`t_sum`] for the labelling of the result.
pub fn two_sum(g1: &Graph, g2: &Graph, uv: Edge) -> Result<LabeledConstruction, ConstructionError> {
    let (u, v) = uv;
    if !(u < g1.n() && v < g1.n() && u < g2.n() && v < g2.n() && g1.has_edge(u, v) && g2.has_edge(u, v)) {
        let (a, b) = edge(u, v);
        return Err(ConstructionError::MissingSharedEdge(a, b));
    }
    t_sum(g1, g2, &[u, v], uv)
}

/// Glues `g1` and `g2` along the clique on `shared` (the same labels in both)
/// and deletes the shared edge `e`.
///
/// `g1` keeps its labels; the other vertices of `g2` follow in increasing
/// order. The role `g2_map` sends each label of `g2` to its label in the sum.
pub fn t_sum(
    g1: &Graph,
    g2: &Graph,
    shared: &[usize],
    e: Edge,
) -> Result<LabeledConstruction, ConstructionError> {
    if shared.len() < 2 {
        return Err(ConstructionError::Range(format!("t-sum needs t >= 2, got t={}", shared.len())));
    }
    let mask1 = neighbor_mask(g1, shared)?;
    let mask2 = neighbor_mask(g2, shared)?;
    debug_assert_eq!(mask1, mask2);
    let is_clique = |g: &Graph| clique_edges(shared).all(|(a, b)| g.has_edge(a, b));
    if !is_clique(g1) || !is_clique(g2) {
        return Err(ConstructionError::SharedNotClique);
    }
    let (a, b) = edge(e.0, e.1);
    if a == b || mask1 >> a & 1 == 0 || mask1 >> b & 1 == 0 {
        return Err(ConstructionError::EdgeNotShared(a, b));
    }

    let n1 = g1.n();
    let mut map = vec![0usize; g2.n()];
    let mut next = n1;
    for (w, slot) in map.iter_mut().enumerate() {
        if mask2 >> w & 1 == 1 {
            *slot = w;
        } else {
            *slot = next;
            next += 1;
        }
    }
    let mut edges = g1.edges();
    edges.extend(g2.edges().into_iter().map(|(x, y)| edge(map[x], map[y])));
    edges.sort_unstable();
    edges.dedup();
    edges.retain(|&x| x != (a, b));
    let graph = Graph::from_edges(next, &edges)?;
    Ok(LabeledConstruction::new(
        graph,
        [
            ("shared", Role::Vertices(shared.to_vec())),
            ("e", Role::Deleted((a, b))),
            ("g2_map", Role::Vertices(map)),
        ],
    ))
}
