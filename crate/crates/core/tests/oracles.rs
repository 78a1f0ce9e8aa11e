//! The rank oracle against references that do not share its code path:
//! the cycle matroid on the line, Laman counts in the plane, and exact
//! integer elimination at integer points.

use proptest::prelude::*;
use rigikit::canon::{canonical_code, is_isomorphic};
use rigikit::graph::Graph;
use rigikit::graph6;
use rigikit::rigidity::{
    generic_rank, random_realization, FieldChoice, RankConfig, RigidityMatrix, TriState,
};

fn graph_from_bits(n: usize, bits: u64) -> Graph {
    let mut edges = Vec::new();
    let mut i = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits >> (i % 64) & 1 == 1 {
                edges.push((u, v));
            }
            i += 1;
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Rank of the graphic matroid: |V| minus the number of components.
fn forest_rank(g: &Graph) -> usize {
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut rank = 0;
    for (u, v) in g.edges() {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            rank += 1;
        }
    }
    rank
}

/// Laman: an edge set is independent in the plane iff every subset of
/// `k >= 2` vertices spans at most `2k - 3` of its edges.
fn laman_independent(g: &Graph) -> bool {
    let n = g.n();
    (1u64..1 << n).all(|mask| {
        let k = mask.count_ones() as usize;
        k < 2 || g.induced_edge_count(mask) <= 2 * k - 3
    })
}

/// Rank in the plane by greedy Laman augmentation.
fn laman_rank(g: &Graph) -> usize {
    let mut kept: Vec<(usize, usize)> = Vec::new();
    for e in g.edges() {
        kept.push(e);
        if !laman_independent(&Graph::from_edges(g.n(), &kept).unwrap()) {
            kept.pop();
        }
    }
    kept.len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn line_rank_is_forest_rank(n in 1usize..=9, bits in any::<u64>()) {
        let g = graph_from_bits(n, bits);
        let v = generic_rank(&g, 1, &RankConfig::default());
        prop_assert_eq!(v.rank_lb, forest_rank(&g));
        prop_assert_eq!(v.rank_lb, v.rank_ub);
    }

    #[test]
    fn plane_rank_is_laman_rank(n in 2usize..=7, bits in any::<u64>()) {
        let g = graph_from_bits(n, bits);
        let v = generic_rank(&g, 2, &RankConfig::default());
        let expected = laman_rank(&g);
        prop_assert_eq!(v.rank_lb, expected);
        let independent = laman_independent(&g);
        prop_assert_eq!(v.flags.independent.value, TriState::from(independent));
    }

    #[test]
    fn integer_and_modular_ranks_agree(n in 2usize..=8, d in 1usize..=4, bits in any::<u64>(), seed in any::<u64>()) {
        let g = graph_from_bits(n, bits);
        let exact = RigidityMatrix::new(&g, &random_realization(&g, d, seed, FieldChoice::Rational)).unwrap().rank();
        let v = generic_rank(&g, d, &RankConfig::default().with_seed(seed));
        // An integer point never beats the generic rank, and a random one attains it.
        prop_assert!(exact <= v.rank_ub);
        prop_assert_eq!(exact, v.rank_lb);
    }

    #[test]
    fn relabelling_keeps_code_and_rank(n in 1usize..=9, bits in any::<u64>(), shift in 0usize..9) {
        let g = graph_from_bits(n, bits);
        let perm: Vec<usize> = (0..n).map(|i| (i * 5 + shift) % n).collect();
        prop_assume!({ let mut p = perm.clone(); p.sort_unstable(); p.dedup(); p.len() == n });
        let h = g.relabel(&perm).unwrap();
        prop_assert_eq!(canonical_code(&g), canonical_code(&h));
        prop_assert!(is_isomorphic(&g, &h));
        let config = RankConfig::default();
        prop_assert_eq!(generic_rank(&g, 3, &config).rank_lb, generic_rank(&h, 3, &config).rank_lb);
    }
}

#[test]
fn complete_graphs_reach_the_count_bound() {
    let config = RankConfig::default();
    for d in 1..=5 {
        for n in 1..=d + 4 {
            let g = Graph::complete(n).unwrap();
            let v = generic_rank(&g, d, &config);
            let expected = if n <= d + 1 { n * (n - 1) / 2 } else { d * n - d * (d + 1) / 2 };
            assert_eq!(v.rank_lb, expected, "K{n} in dimension {d}");
            assert_eq!(v.flags.rigid.value, TriState::True);
        }
    }
}

#[test]
fn verdict_json_has_the_documented_fields() {
    let g = graph6::decode("D~{").unwrap();
    let v = generic_rank(&g, 3, &RankConfig::default());
    let json: serde_json::Value = serde_json::to_value(&v).unwrap();
    for field in ["graph6", "d", "rank_lb", "count_ub", "trials", "primes", "certificate", "flags"] {
        assert!(json.get(field).is_some(), "missing {field}");
    }
    assert_eq!(json["graph6"], "D~{");
    assert_eq!(json["flags"]["circuit"]["value"], "true");
}
