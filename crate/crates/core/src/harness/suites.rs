//! Property suites. Every suite draws from its own RNG stream derived from
//! the harness seed, so suites can run in any order or in parallel.

use std::collections::HashSet;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::claims::{circuit_pool, random_two_sum};
use super::{Claim, HarnessConfig, Instance, Status, VerificationReport};
use crate::canon::{canonical_code, canonical_labeling};
use crate::constructions::{build_b, cone, one_extension, t_sum, vertex_split, zero_extension};
use crate::enumeration::{
    all_sparse, enumerate_partitioned, enumerate_regular_with, partitions_with_min_part, Partition,
    SearchSpec,
};
use crate::graph::{edge, Graph};
use crate::graph6;
use crate::rigidity::{
    complete_rank, generic_rank, is_d_sparse, random_realization, FieldChoice, MatroidVerdict,
    Realization, RigidityMatrix, TriState,
};

/// Pass/fail bookkeeping for one suite.
struct Tally {
    name: &'static str,
    checked: usize,
    unresolved: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, checked: 0, unresolved: 0, failures: Vec::new(), notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    /// Records a tri-state outcome that should equal `expected`.
    fn expect(&mut self, value: TriState, expected: bool, what: impl FnOnce() -> String) {
        if value == TriState::Unresolved {
            self.checked += 1;
            self.unresolved += 1;
        } else {
            self.check(value == TriState::from(expected), what);
        }
    }

    fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    fn finish(self) -> Instance {
        let status = if !self.failures.is_empty() || self.checked == 0 {
            Status::Fail
        } else if self.unresolved > 0 {
            Status::Unresolved
        } else {
            Status::Pass
        };
        let mut detail = format!("{} checks, {} failed, {} unresolved", self.checked, self.failures.len(), self.unresolved);
        for n in &self.notes {
            detail.push_str("; ");
            detail.push_str(n);
        }
        if let Some(first) = self.failures.first() {
            detail.push_str("; first failure: ");
            detail.push_str(first);
        }
        Instance::new(self.name, status, detail)
    }
}

type Suite = fn(&mut ChaCha8Rng, &HarnessConfig) -> Instance;

const SUITES: &[Suite] = &[
    complement_involution,
    contraction_counts,
    canonical_invariance,
    canonical_vs_brute_force,
    degree_distance_witness,
    specialization_monotonicity,
    field_agreement,
    edge_deletion,
    cycle_matroid,
    circuit_rank_law,
    count_bound,
    extensions_preserve_independence,
    split_preserves_independence,
    cone_transfers_independence,
    gluing,
    two_sum_both_directions,
    triangle_gluing,
    t_sum_circuits,
    b_family_sparsity,
    b_family_flexible,
    regular_brute_force,
    sparse_filter_exact,
];

/// Runs every property suite with RNG streams derived from `config.seed`.
pub fn verify_structure_lemmas(config: &HarnessConfig) -> VerificationReport {
    let started = Instant::now();
    let seeds: Vec<(usize, Suite)> = SUITES.iter().copied().enumerate().collect();
    let instances = config.exec.map(&seeds, |&(i, suite)| {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ (0x51u64 << 32 | i as u64));
        suite(&mut rng, config)
    });
    VerificationReport::build(Claim::Structure, config, instances, started)
}

/// Erdos-Renyi graph with edge probability drawn from `density`.
fn random_graph(rng: &mut ChaCha8Rng, n: usize, density: std::ops::Range<f64>) -> Graph {
    let p = rng.gen_range(density);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("valid edges")
}

fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

fn rank(g: &Graph, d: usize, config: &HarnessConfig) -> MatroidVerdict {
    generic_rank(g, d, &config.rank)
}

fn independent(g: &Graph, d: usize, config: &HarnessConfig) -> TriState {
    rank(g, d, config).flags.independent.value
}

fn circuit(g: &Graph, d: usize, config: &HarnessConfig) -> TriState {
    rank(g, d, config).flags.circuit.value
}

/// A random graph certified independent in dimension `d`.
fn random_independent(rng: &mut ChaCha8Rng, d: usize, n: usize, config: &HarnessConfig) -> Graph {
    loop {
        let g = random_graph(rng, n, 0.2..0.7);
        if g.edge_count() > 0 && independent(&g, d, config).is_true() {
            return g;
        }
    }
}

/// A minimally rigid graph on `n >= d + 1` vertices, grown from `K_{d+1}` on
/// `0..=d` by random 0- and 1-extensions that keep that clique intact.
fn minimally_rigid(rng: &mut ChaCha8Rng, d: usize, n: usize) -> Graph {
    let mut g = Graph::complete(d + 1).expect("small");
    while g.n() < n {
        let verts: Vec<usize> = (0..g.n()).collect();
        let outside: Vec<_> = g.edges().into_iter().filter(|&(_, y)| y > d).collect();
        if outside.is_empty() || rng.gen_bool(0.5) {
            let nb: Vec<usize> = verts.choose_multiple(rng, d).copied().collect();
            g = zero_extension(&g, d, &nb).expect("valid 0-extension");
        } else {
            let (x, y) = *outside.choose(rng).expect("edge");
            let rest: Vec<usize> = verts.iter().copied().filter(|&v| v != x && v != y).collect();
            let mut nb: Vec<usize> = rest.choose_multiple(rng, d - 1).copied().collect();
            nb.extend([x, y]);
            g = one_extension(&g, d, &nb, (x, y)).expect("valid 1-extension");
        }
    }
    g
}

fn g6(g: &Graph) -> String {
    graph6::encode(g)
}

fn complement_involution(rng: &mut ChaCha8Rng, _: &HarnessConfig) -> Instance {
    let mut t = Tally::new("complement involution");
    for _ in 0..100 {
        let n = rng.gen_range(0..=16);
        let g = random_graph(rng, n, 0.0..1.0);
        let c = g.complement();
        t.check(c.complement() == g && c.edge_count() + g.edge_count() == crate::choose2(n), || g6(&g));
    }
    t.finish()
}

fn contraction_counts(rng: &mut ChaCha8Rng, _: &HarnessConfig) -> Instance {
    let mut t = Tally::new("edge contraction counts");
    while t.checked < 100 {
        let n = rng.gen_range(2..=12);
        let g = random_graph(rng, n, 0.2..0.9);
        let Some(&(u, v)) = g.edges().choose(rng) else { continue };
        let h = g.contract_edge(u, v).expect("edge present");
        let common = (g.neighbor_mask(u) & g.neighbor_mask(v)).count_ones() as usize;
        let m = g.edge_count();
        t.check(h.n() == n - 1 && h.edge_count() == m - 1 - common && h.edge_count() <= m, || {
            format!("{} contract {u}-{v}", g6(&g))
        });
    }
    t.finish()
}

fn canonical_invariance(rng: &mut ChaCha8Rng, _: &HarnessConfig) -> Instance {
    let mut t = Tally::new("canonical code invariance");
    for _ in 0..20 {
        let n = rng.gen_range(1..=10);
        let g = random_graph(rng, n, 0.1..0.9);
        let labeling = canonical_labeling(&g);
        let reproduced = graph6::encode(&g.relabel(&labeling.permutation).expect("bijection"));
        t.check(reproduced.as_bytes() == labeling.code, || format!("{} permutation does not reproduce code", g6(&g)));
        for _ in 0..200 {
            let perm = random_permutation(rng, n);
            let h = g.relabel(&perm).expect("bijection");
            t.check(canonical_code(&h) == labeling.code, || format!("{} under {perm:?}", g6(&g)));
        }
    }
    t.finish()
}

/// Backtracking isomorphism test that maps vertices of `a` in label order.
pub(crate) fn brute_force_isomorphic(a: &Graph, b: &Graph) -> bool {
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
                if extend(a, b, map, used | 1u64 << w) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    a.n() == b.n() && a.edge_count() == b.edge_count() && extend(a, b, &mut Vec::new(), 0)
}

fn canonical_vs_brute_force(rng: &mut ChaCha8Rng, _: &HarnessConfig) -> Instance {
    let mut t = Tally::new("canonical code vs explicit isomorphism");
    let mut isomorphic = 0;
    for _ in 0..300 {
        let n = rng.gen_range(1..=8);
        let g = random_graph(rng, n, 0.2..0.8);
        let mut h = g.relabel(&random_permutation(rng, n)).expect("bijection");
        if rng.gen_bool(0.3) {
            // same vertex and edge counts, usually a different class
            let mut edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            edges.shuffle(rng);
            edges.truncate(g.edge_count());
            h = Graph::from_edges(n, &edges).expect("valid");
        } else if rng.gen_bool(0.5) {
            // a degree-preserving switch usually changes the class
            let edges = h.edges();
            if let (Some(&(a, b)), Some(&(c, d))) = (edges.choose(rng), edges.choose(rng)) {
                let distinct = [a, b, c, d].iter().collect::<HashSet<_>>().len() == 4;
                if distinct && !h.has_edge(a, c) && !h.has_edge(b, d) {
                    h = h.without_edge(a, b).and_then(|x| x.without_edge(c, d)).and_then(|x| x.with_edge(a, c)).and_then(|x| x.with_edge(b, d)).expect("switch");
                }
            }
        }
        let brute = brute_force_isomorphic(&g, &h);
        isomorphic += brute as usize;
        t.check((canonical_code(&g) == canonical_code(&h)) == brute, || format!("{} vs {}", g6(&g), g6(&h)));
    }
    t.note(format!("{isomorphic} isomorphic pairs"));
    t.finish()
}

fn degree_distance_witness(_: &mut ChaCha8Rng, config: &HarnessConfig) -> Instance {
    let mut t = Tally::new("degree 2/3 distance witness, exhaustive n=11,12");
    for n in [11, 12] {
        let graphs = match enumerate_partitioned(&SearchSpec::new(n).degrees(2, 3), Partition::WHOLE, config.exec) {
            Ok(g) => g,
            Err(e) => {
                t.check(false, || e.to_string());
                continue;
            }
        };
        let codes: HashSet<_> = graphs.iter().map(canonical_code).collect();
        t.check(codes.len() == graphs.len(), || format!("duplicate codes at n={n}"));
        let subjects: Vec<&Graph> = graphs
            .iter()
            .filter(|g| {
                let p = g.degree_profile();
                p.min == 2 && p.max == 3
            })
            .collect();
        for g in &subjects {
            let ok = match g.find_deg23_witness() {
                Some((x, y)) => g.degree(x) == 2 && g.degree(y) == 3 && g.distance(x, y).is_none_or(|d| d >= 3),
                None => false,
            };
            t.check(ok, || g6(g));
        }
        t.note(format!("n={n}: {} graphs with min degree 2 and max degree 3", subjects.len()));
    }
    t.finish()
}

fn specialization_monotonicity(rng: &mut ChaCha8Rng, config: &HarnessConfig) -> Instance {
    let mut t = Tally::new("specialization monotonicity");
    for _ in 0..100 {
        let n = rng.gen_range(2..=9);
        let d = rng.gen_range(1..=4);
        let g = random_graph(rng, n, 0.2..0.9);
        let seed: u64 = rng.gen();
        let one = generic_rank(&g, d, &config.rank.with_seed(seed).with_trials(1));
        let three = generic_rank(&g, d, &config.rank.with_seed(seed).with_trials(3));
        // a deliberately degenerate point: coordinates in {0, 1}
        let coarse: Vec<i64> = (0..n * d).map(|_| rng.gen_range(0..=1)).collect();
        let p = Realization::integer(d, coarse).expect("length");
        let special = RigidityMatrix::new(&g, &p).expect("sizes").rank();
        t.check(
            one.rank_lb <= three.rank_lb && three.rank_lb <= three.count_ub && special <= three.rank_ub && three.rank_lb <= three.rank_ub,
            || format!("{} d={d}: ranks {} {} special {special} ub {}", g6(&g), one.rank_lb, three.rank_lb, three.rank_ub),
        );
    }
    t.finish()
}

fn field_agreement(rng: &mut ChaCha8Rng, config: &HarnessConfig) -> Instance {
    let mut t = Tally::new("modular vs exact rank");
    for _ in 0..30 {
        let n = rng.gen_range(2..=8);
        let d = rng.gen_range(1..=4);
        let g = random_graph(rng, n, 0.3..0.9);
        let p = random_realization(&g, d, rng.gen(), FieldChoice::Rational);
        let exact = RigidityMatrix::new(&g, &p).expect("sizes").rank();
        let modular = RigidityMatrix::new(&g, &p.reduce_mod(config.rank.prime)).expect("sizes").rank();
        t.check(exact == modular, || format!("{} d={d}: exact {exact} modular {modular}", g6(&g)));
    }
    t.finish()
}

fn edge_deletion(rng: &mut ChaCha8Rng, config: &HarnessConfig) -> Instance {
    let mut t = Tally::new("edge deletion changes rank by at most one");
    while t.checked < 50 {
        let n = rng.gen_range(3..=9);
        let d = rng.gen_range(1..=4);
        let g = random_graph(rng, n, 0.3..0.9);
        if g.edge_count() == 0 {
            continue;
        }
        let r = rank(&g, d, config).rank_lb;
        let ok = g.edges().iter().all(|&(u, v)| {
            let s = rank(&g.without_edge(u, v).expect("edge"), d, config).rank_lb;
            s == r || s + 1 == r
        });
        t.check(ok, || format!("{} d={d}", g6(&g)));
    }
    t.finish()
}

fn cycle_matroid(rng: &mut ChaCha8Rng, config: &HarnessConfig) -> Instance {
    let mut t = Tally::new("dimension 1 is the cycle matroid");
    for _ in 0..50 {
        let n = rng.gen_range(1..=12);
        let g = random_graph(rng, n, 0.05..0.6);
        let r = rank(&g, 1, config).rank_lb;
        let forest = n - g.components().len();
        t.check(r == forest, || format!("{}: rank {r}, n - c = {forest}", g6(&g)));
    }
    t.finish()
}

fn circuit_rank_law(rng: &mut ChaCha8Rng, config: &HarnessConfig) -> Instance {
    let mut t = Tally::new("circuit rank law");
    let mut pool: Vec<(Graph, usize)> = Vec::new();
    for n in 3..=8 {
        pool.push((Graph::cycle(n).expect("small"), 1));
    }
    for d in 1..=4 {
        pool.push((Graph::complete(d + 2).expect("small"), d));
    }
    pool.push((build_b(3, 2).expect("valid").graph, 3));
    for _ in 0..150 {
        let n = rng.gen_range(3..=8);
        let d = rng.gen_range(1..=3);
        pool.push((random_graph(rng, n, 0.3..0.8), d));
    }
    let mut circuits = 0;
    for (g, d) in &pool {
        let v = rank(g, *d, config);
        if !v.flags.circuit.value.is_true() {
            continue;
        }
        circuits += 1;
        let m = g.edge_count();
        let deletions = g.edges().iter().all(|&(a, b)| independent(&g.without_edge(a, b).expect("edge"), *d, config).is_true());
        t.check(v.rank_lb + 1 == m && deletions, || format!("{} d={d}", g6(g)));
    }
    t.note(format!("{circuits} circuits among {} graphs", pool.len()));
    t.finish()
}

fn count_bound(rng: &mut ChaCha8Rng, config: &HarnessConfig) -> Instance {
    let mut t = Tally::new("rank at most d|V| - C(d+1,2)");
    for _ in 0..100 {
        let d = rng.gen_range(1..=4);
        let n = rng.gen_range(d + 2..=d + 7);
        let g = random_graph(rng, n, 0.4..1.0);
        let v = rank(&g, d, config);
        t.check(v.rank_lb <= complete_rank(n, d) && v.rank_lb <= v.count_ub, || format!("{} d={d}", g6(&g)));
    }
    t.finish()
}

fn extensions_preserve_independence(rng: &mut ChaCha8Rng, config: &HarnessConfig) -> Instance {
    let mut t = Tally::new("0- and 1-extensions preserve independence");
    for i in 0..60 {
        let d = rng.gen_range(2..=4);
        let n = rng.gen_range(d + 1..=d + 5);
        let g = random_independent(rng, d, n, config);
        let verts: Vec<usize> = (0..n).collect();
        let (h, kind) = if i % 2 == 0 {
            let nb: Vec<usize> = verts.choose_multiple(rng, d).copied().collect();
            (zero_extension(&g, d, &nb).expect("valid"), "0-extension")
        } else {
            let (x, y) = *g.edges().choose(rng).expect("edge");
            let rest: Vec<usize> = verts.iter().copied().filter(|&v| v != x && v != y).collect();
            let mut nb: Vec<usize> = rest.choose_multiple(rng, d - 1).copied().collect();
            nb.extend([x, y]);
            (one_extension(&g, d, &nb, (x, y)).expect("valid"), "1-extension")
        };
        t.check(h.n() == n + 1 && h.edge_count() == g.edge_count() + d, || format!("{kind} counts on {}", g6(&g)));
        t.expect(independent(&h, d, config), true, || format!("{kind} of {} d={d}", g6(&g)));
    }
    t.finish()
}

fn split_preserves_independence(rng: &mut ChaCha8Rng, config: &HarnessConfig) -> Instance {
    let mut t = Tally::new("vertex splits preserve independence");
    while t.checked < 60 {
        let d = rng.gen_range(2..=4);
        let n = rng.gen_range(d + 1..=d + 5);
        let g = random_independent(rng, d, n, config);
        let v = rng.gen_range(0..n);
        let nbrs: Vec<usize> = g.neighbors(v).collect();
        if nbrs.len() < d - 1 {
            continue;
        }
        let hinge: Vec<usize> = nbrs.choose_multiple(rng, d - 1).copied().collect();
        let part1: Vec<usize> = nbrs.iter().copied().filter(|x| !hinge.contains(x) && rng.gen_bool(0.5)).collect();
        let h = vertex_split(&g, d, v, &hinge, &part1).expect("valid split");
        t.check(h.n() == n + 1 && h.edge_count() == g.edge_count() + d, || format!("split counts on {}", g6(&g)));
        t.expect(independent(&h, d, config), true, || format!("split of {} at {v} d={d}", g6(&g)));
    }
    t.finish()
}

fn cone_transfers_independence(rng: &mut ChaCha8Rng, config: &HarnessConfig) -> Instance {
    let mut t = Tally::new("coning transfers independence up one dimension");
    let mut positives = 0;
    for i in 0..60 {
        let d = rng.gen_range(1..=3);
        let n = rng.gen_range(d + 1..=d + 6);
        let g = if i % 2 == 0 { random_independent(rng, d, n, config) } else { random_graph(rng, n, 0.3..0.9) };
        let c = cone(&g).expect("small");
        t.check(c.n() == n + 1 && c.edge_count() == g.edge_count() + n, || format!("cone counts on {}", g6(&g)));
        let below = independent(&g, d, config);
        let above = independent(&c, d + 1, config);
        positives += below.is_true() as usize;
        if below == TriState::Unresolved {
            t.expect(below, true, String::new);
        } else {
            t.expect(above, below.is_true(), || format!("{} d={d}", g6(&g)));
        }
    }
    t.note(format!("{positives} independent inputs"));
    t.finish()
}

/// Union of `g1` with `g2`, identifying vertex `glue[i]` of `g2` with vertex `i`
/// of `g1`; other vertices of `g2` follow those of `g1`.
fn glue(g1: &Graph, g2: &Graph, shared: &[(usize, usize)]) -> Graph {
    let n1 = g1.n();
    let mut map = vec![usize::MAX; g2.n()];
    for &(a, b) in shared {
        map[b] = a;
    }
    let mut next = n1;
    for slot in map.iter_mut() {
        if *slot == usize::MAX {
            *slot = next;
            next += 1;
        }
    }
    let mut edges = g1.edges();
    edges.extend(g2.edges().into_iter().map(|(x, y)| edge(map[x], map[y])));
    edges.sort_unstable();
    edges.dedup();
    Graph::from_edges(next, &edges).expect("valid union")
}

fn gluing(rng: &mut ChaCha8Rng, config: &HarnessConfig) -> Instance {
    let mut t = Tally::new("gluing rigid and independent graphs");
    for _ in 0..10 {
        let d = rng.gen_range(2..=4);
        let (na, nb) = (rng.gen_range(d + 1..=d + 4), rng.gen_range(d + 1..=d + 4));
        let a = minimally_rigid(rng, d, na);
        let b = minimally_rigid(rng, d, nb);

        // both grown from K_{d+1} on labels 0..=d: glue along that clique
        let shared: Vec<(usize, usize)> = (0..=d).map(|v| (v, v)).collect();
        let union = glue(&a, &b, &shared);
        let v = rank(&union, d, config);
        t.expect(v.flags.independent.value, true, || format!("independent union {} d={d}", g6(&union)));
        t.expect(v.flags.rigid.value, true, || format!("rigid union {} d={d}", g6(&union)));

        // rigid pieces sharing at least d vertices in arbitrary position
        let k = rng.gen_range(d..=a.n().min(b.n()));
        let from_a: Vec<usize> = (0..a.n()).collect::<Vec<_>>().choose_multiple(rng, k).copied().collect();
        let from_b: Vec<usize> = (0..b.n()).collect::<Vec<_>>().choose_multiple(rng, k).copied().collect();
        let pairs: Vec<(usize, usize)> = from_a.into_iter().zip(from_b).collect();
        let union = glue(&a, &b, &pairs);
        t.expect(rank(&union, d, config).flags.rigid.value, true, || format!("rigid overlap {} d={d}", g6(&union)));

        // at most d - 1 shared vertices: an edge across raises the rank by one
        let k = rng.gen_range(0..d);
        let pairs: Vec<(usize, usize)> = (0..k).map(|v| (v, v)).collect();
        let union = glue(&a, &b, &pairs);
        let u = rng.gen_range(k..a.n());
        let w = rng.gen_range(a.n()..union.n());
        let before = rank(&union, d, config).rank_lb;
        let after = rank(&union.with_edge(u, w).expect("new edge"), d, config).rank_lb;
        t.check(after == before + 1, || format!("{} + {u}-{w} d={d}: {before} -> {after}", g6(&union)));
    }
    t.finish()
}

fn two_sum_both_directions(rng: &mut ChaCha8Rng, config: &HarnessConfig) -> Instance {
    let mut t = Tally::new("2-sum is a circuit iff both summands are");
    for d in [3, 4] {
        let mut pool: Vec<(Graph, bool)> = circuit_pool(d).expect("families").into_iter().map(|(_, g)| (g, true)).collect();
        pool.push((Graph::complete(d + 3).expect("small"), false));
        pool.push((Graph::complete(d + 1).expect("small"), false));
        let k = Graph::complete(d + 2).expect("small");
        pool.push((k.without_edge(0, 1).expect("edge"), false));
        let b = build_b(d, d - 1).expect("valid").graph;
        pool.push((b.with_edge(0, b.n() - 1).expect("new edge"), false));
        for _ in 0..20 {
            let (g1, c1) = pool.choose(rng).expect("pool").clone();
            let (g2, c2) = pool.choose(rng).expect("pool").clone();
            let (_, _, sum) = random_two_sum(rng, &g1, &g2);
            t.expect(circuit(&sum, d, config), c1 && c2, || format!("{} + {} d={d}", g6(&g1), g6(&g2)));
        }
    }
    t.finish()
}

fn triangle_gluing(rng: &mut ChaCha8Rng, config: &HarnessConfig) -> Instance {
    let mut t = Tally::new("gluing a triangle onto a minimally rigid graph");
    for i in 0..20 {
        let d = 3 + i % 2;
        let size = rng.gen_range(d + 1..=d + 4);
        let base = minimally_rigid(rng, d, size);
        let n = base.n();
        let verts: Vec<usize> = (0..n).collect();
        let nbrs: Vec<Vec<usize>> = loop {
            let sets: Vec<Vec<usize>> = (0..3).map(|_| verts.choose_multiple(rng, d - 1).copied().collect()).collect();
            let union: HashSet<usize> = sets.iter().flatten().copied().collect();
            if union.len() >= d {
                break sets;
            }
        };
        let mut edges = base.edges();
        edges.extend([(n, n + 1), (n, n + 2), (n + 1, n + 2)]);
        for (j, set) in nbrs.iter().enumerate() {
            edges.extend(set.iter().map(|&u| (u, n + j)));
        }
        let g = Graph::from_edges(n + 3, &edges).expect("valid");
        let base_v = rank(&base, d, config);
        let v = rank(&g, d, config);
        t.expect(base_v.flags.independent.value, true, || format!("base {} d={d}", g6(&base)));
        t.expect(v.flags.independent.value, true, || format!("{} d={d} not independent", g6(&g)));
        t.expect(v.flags.rigid.value, true, || format!("{} d={d} not rigid", g6(&g)));
    }
    t.finish()
}

fn t_sum_circuits(rng: &mut ChaCha8Rng, config: &HarnessConfig) -> Instance {
    let mut t = Tally::new("t-sums of circuits");
    let d = 3;
    let mut both_circuits = 0;
    let mut sums = 0;
    for a in 4..=7 {
        for b in a..=7 {
            for size in 2..=4usize.min(a - 1) {
                let (g1, g2) = (Graph::complete(a).expect("small"), Graph::complete(b).expect("small"));
                let shared: Vec<usize> = (0..size).collect();
                let s = t_sum(&g1, &g2, &shared, (0, 1)).expect("cliques").graph;
                sums += 1;
                let c = circuit(&s, d, config);
                let summands = (circuit(&g1, d, config), circuit(&g2, d, config));
                if c.is_true() {
                    t.expect(summands.0, true, || format!("K{a} +{size} K{b}"));
                    t.expect(summands.1, true, || format!("K{a} +{size} K{b}"));
                } else if c == TriState::Unresolved {
                    t.expect(c, false, String::new);
                }
                if summands.0.is_true() && summands.1.is_true() {
                    both_circuits += 1;
                    unique_circuit(&mut t, &g1, &g2, &s, &shared, d, config);
                }
            }
        }
    }
    // circuit summands glued along a random shared clique
    let pool = circuit_pool(d).expect("families");
    for _ in 0..6 {
        let (_, g1) = pool.choose(rng).expect("pool");
        let size = rng.gen_range(2..=3);
        let g2 = Graph::complete(5).expect("small");
        let Some(clique) = random_clique(rng, g1, size) else { continue };
        // move the clique to labels 0..size in g1
        let mut perm: Vec<usize> = vec![usize::MAX; g1.n()];
        for (i, &v) in clique.iter().enumerate() {
            perm[v] = i;
        }
        for (slot, next) in perm.iter_mut().filter(|s| **s == usize::MAX).zip(size..) {
            *slot = next;
        }
        let h1 = g1.relabel(&perm).expect("bijection");
        let shared: Vec<usize> = (0..size).collect();
        let s = t_sum(&h1, &g2, &shared, (0, 1)).expect("clique").graph;
        both_circuits += 1;
        sums += 1;
        unique_circuit(&mut t, &h1, &g2, &s, &shared, d, config);
    }
    t.note(format!("{sums} t-sums, {both_circuits} with two circuit summands"));
    t.finish()
}

fn random_clique(rng: &mut ChaCha8Rng, g: &Graph, size: usize) -> Option<Vec<usize>> {
    for _ in 0..200 {
        let start = rng.gen_range(0..g.n());
        let mut clique = vec![start];
        let mut pool: Vec<usize> = g.neighbors(start).collect();
        while clique.len() < size {
            pool.retain(|&w| clique.iter().all(|&c| g.has_edge(c, w)));
            let Some(&w) = pool.choose(rng) else { break };
            clique.push(w);
        }
        if clique.len() == size {
            return Some(clique);
        }
    }
    None
}

/// The t-sum of two circuits has corank one (so a unique circuit) and every
/// edge outside the shared clique lies in that circuit.
fn unique_circuit(t: &mut Tally, g1: &Graph, g2: &Graph, s: &Graph, shared: &[usize], d: usize, config: &HarnessConfig) {
    let v = rank(s, d, config);
    let m = s.edge_count();
    t.expect(v.flags.independent.value, false, || format!("{} should be dependent", g6(s)));
    t.check(v.rank_lb + 1 == m, || format!("{} corank {}", g6(s), m - v.rank_lb));
    let n1 = g1.n();
    let in_shared = |x: usize| x < n1 && shared.contains(&x);
    let outside: Vec<_> = s.edges().into_iter().filter(|&(a, b)| !(in_shared(a) && in_shared(b))).collect();
    debug_assert_eq!(outside.len(), g1.edge_count() + g2.edge_count() - 2 * crate::choose2(shared.len()));
    for (a, b) in outside {
        let h = s.without_edge(a, b).expect("edge");
        t.expect(independent(&h, d, config), true, || format!("{} - {a}{b}", g6(s)));
    }
}

fn b_family_sparsity(_: &mut ChaCha8Rng, _: &HarnessConfig) -> Instance {
    let mut t = Tally::new("B(d,t) sparsity and tightness");
    for d in 3..=6 {
        for s in 2..d {
            let g = build_b(d, s).expect("valid").graph;
            let r = is_d_sparse(&g, d);
            t.check(r.sparse && r.tight == (s == d - 1), || format!("B({d},{s}): {r:?}"));
        }
    }
    t.finish()
}

fn b_family_flexible(_: &mut ChaCha8Rng, config: &HarnessConfig) -> Instance {
    let mut t = Tally::new("B(d,d-1) and B(d,d-2) are flexible circuits");
    for d in 3..=6 {
        for s in [d - 1, d - 2] {
            if s >= 2 {
                let g = build_b(d, s).expect("valid").graph;
                t.expect(rank(&g, d, config).flags.flexible_circuit.value, true, || format!("B({d},{s})"));
            }
        }
    }
    t.finish()
}

/// Labeled `k`-regular graphs on `n` vertices by backtracking over edges.
fn labeled_regular(n: usize, k: usize) -> Vec<Graph> {
    fn go(n: usize, k: usize, v: usize, deg: &mut [usize], edges: &mut Vec<(usize, usize)>, out: &mut Vec<Graph>) {
        if v == n {
            out.push(Graph::from_edges(n, edges).expect("valid"));
            return;
        }
        if deg[v] == k {
            go(n, k, v + 1, deg, edges, out);
            return;
        }
        let start = edges.iter().filter(|e| e.0 == v).map(|e| e.1 + 1).max().unwrap_or(v + 1);
        for w in start..n {
            if deg[w] < k {
                deg[v] += 1;
                deg[w] += 1;
                edges.push((v, w));
                go(n, k, v, deg, edges, out);
                edges.pop();
                deg[v] -= 1;
                deg[w] -= 1;
            }
        }
    }
    let mut out = Vec::new();
    go(n, k, 0, &mut vec![0; n], &mut Vec::new(), &mut out);
    out
}

fn regular_brute_force(_: &mut ChaCha8Rng, config: &HarnessConfig) -> Instance {
    let mut t = Tally::new("regular graph counts vs labeled brute force");
    for n in 1..=8 {
        for k in 0..n {
            if n * k % 2 == 1 {
                continue;
            }
            let got = enumerate_regular_with(n, k, config.exec).expect("feasible");
            let got_codes: HashSet<_> = got.iter().map(canonical_code).collect();
            let oracle: HashSet<_> = labeled_regular(n, k).iter().map(canonical_code).collect();
            t.check(got_codes.len() == got.len() && got_codes == oracle, || format!("n={n} k={k}: {} vs {}", got.len(), oracle.len()));
        }
    }
    let dense = enumerate_regular_with(15, 12, config.exec).expect("feasible");
    t.check(dense.len() == partitions_with_min_part(15, 3), || format!("{} 12-regular graphs on 15 vertices", dense.len()));
    t.finish()
}

fn sparse_filter_exact(_: &mut ChaCha8Rng, config: &HarnessConfig) -> Instance {
    let mut t = Tally::new("sparsity filter agrees with the subset check");
    for (n, d, min_degree) in [(5, 2, 0), (6, 2, 0), (7, 2, 0), (7, 3, 0), (8, 3, 3)] {
        let spec = SearchSpec::new(n).degrees(min_degree, n - 1);
        let all = enumerate_partitioned(&spec, Partition::WHOLE, config.exec).expect("feasible");
        let filtered = enumerate_partitioned(&spec.clone().sparse(d), Partition::WHOLE, config.exec).expect("feasible");
        let expected: HashSet<_> = all.iter().filter(|g| is_d_sparse(g, d).sparse).map(canonical_code).collect();
        let got: HashSet<_> = filtered.iter().map(canonical_code).collect();
        t.check(got == expected && got.len() == filtered.len() && all_sparse(&filtered, d), || format!("n={n} d={d}"));
    }
    t.finish()
}
