use std::collections::BTreeSet;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    describe_basis, failure_log2, Claim, HarnessConfig, HarnessError, Instance, Status,
    VerificationReport,
};
use crate::canon::canonical_code;
use crate::constructions::{build_b, cone, enumerate_bplus, two_sum};
use crate::enumeration::{
    enumerate_partitioned, enumerate_regular_with, partitions_with_min_part, EnumerationError,
    Partition, SearchSpec,
};
use crate::graph::Graph;
use crate::graph6;
use crate::rigidity::{
    complete_rank, dependent_by_cut, generic_rank, is_d_sparse, Basis, Certificate, MatroidVerdict,
};
use crate::choose2;

/// The two regular families whose independence is checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegularCase {
    /// 6-regular on 10 vertices, dimension 4, 21 classes.
    TenSix,
    /// 12-regular on 15 vertices, dimension 9, 17 classes.
    FifteenTwelve,
}

impl RegularCase {
    /// `(n, k, d, expected class count)`.
    pub fn parameters(self) -> (usize, usize, usize, usize) {
        match self {
            RegularCase::TenSix => (10, 6, 4, 21),
            RegularCase::FifteenTwelve => (15, 12, 9, 17),
        }
    }

    fn claim(self) -> Claim {
        match self {
            RegularCase::TenSix => Claim::Regular10,
            RegularCase::FifteenTwelve => Claim::Regular15,
        }
    }
}

/// Enumerates the regular family and checks every member is independent
/// with a full-rank witness.
pub fn verify_regular_independence(
    case: RegularCase,
    config: &HarnessConfig,
) -> Result<VerificationReport, HarnessError> {
    let started = Instant::now();
    let (n, k, _, _) = case.parameters();
    let graphs = enumerate_regular_with(n, k, config.exec)?;
    let mut report = verify_independence(case, &graphs, config);
    if case == RegularCase::FifteenTwelve {
        // complements are 2-regular, i.e. disjoint cycles: partitions of 15 into parts >= 3
        let partitions = partitions_with_min_part(n, 3);
        let cycles = enumerate_partitioned(&SearchSpec::new(n).degrees(2, 2), Partition::WHOLE, config.exec)?;
        let dense: BTreeSet<_> = graphs.iter().map(canonical_code).collect();
        let duals: BTreeSet<_> = cycles.iter().map(|g| canonical_code(&g.complement())).collect();
        let ok = partitions == graphs.len() && duals == dense;
        report.instances.insert(
            1,
            Instance::new(
                "complement duality",
                Status::of(ok),
                format!("{partitions} partitions of {n} into parts >= 3; {} 2-regular complements match: {}", cycles.len(), duals == dense),
            ),
        );
        report.instance_count = report.instances.len();
        report.status = report.instances.iter().fold(Status::Pass, |s, i| s.combine(i.status));
    }
    report.wall_time_ms = started.elapsed().as_millis() as u64;
    Ok(report)
}

/// Checks a given list as the family of `case`: the class count, and a
/// deterministic independence certificate plus sparsity for every member.
pub fn verify_independence(case: RegularCase, graphs: &[Graph], config: &HarnessConfig) -> VerificationReport {
    let started = Instant::now();
    let (n, k, d, count) = case.parameters();
    let codes: BTreeSet<_> = graphs.iter().map(canonical_code).collect();
    let mut instances = vec![Instance::new(
        "class count",
        Status::of(graphs.len() == count && codes.len() == count),
        format!("{} pairwise non-isomorphic {k}-regular graphs on {n} vertices (expected {count})", codes.len()),
    )];
    let rank = config.rank;
    instances.extend(config.exec.map(graphs, |g| {
        let v = generic_rank(g, d, &rank);
        let sparse = is_d_sparse(g, d).sparse;
        let ok = v.certificate == Certificate::DeterministicIndependent && v.rank_lb == g.edge_count() && sparse;
        Instance::new(
            graph6::encode(g),
            Status::of(ok),
            format!("rank {} of {} edges at d={d}, {}-sparse: {sparse}, certificate {:?}", v.rank_lb, g.edge_count(), d, v.certificate),
        )
        .with_verdict(v)
    }));
    VerificationReport::build(case.claim(), config, instances, started)
}

/// A flexible-circuit instance: flexible circuit flag true, and when
/// `need_cut`, flexibility certified by a small separator.
fn flexible_instance(name: String, g: &Graph, d: usize, expected_rank: Option<usize>, need_cut: bool, config: &HarnessConfig) -> Instance {
    let v = generic_rank(g, d, &config.rank);
    let flag = v.flags.flexible_circuit;
    let mut status = Status::expect(flag, true);
    let mut notes = vec![format!(
        "|V|={} |E|={} rank {}..={} flexible circuit {:?} ({})",
        v.vertices,
        v.edges,
        v.rank_lb,
        v.rank_ub,
        flag.value,
        describe_basis(flag)
    )];
    if let Some(r) = expected_rank {
        if v.rank_lb != r {
            status = Status::Fail;
            notes.push(format!("expected rank {r}"));
        }
    }
    if need_cut {
        match dependent_by_cut(g, d) {
            Some(cert) if v.flags.rigid.basis == Basis::Deterministic && flag.basis == Basis::Deterministic => {
                notes.push(format!("cut {:?} bounds rank by {}", cert.cut, cert.rank_ub));
            }
            _ => {
                status = status.combine(Status::Fail);
                notes.push("no deterministic cut certificate".into());
            }
        }
    }
    Instance::new(name, status, notes.join("; ")).with_verdict(v)
}

/// `B_{d,d-1}`, `B_{d,d-2}` (`d >= 4`) and every `B+_{d,d-1}` member are
/// flexible circuits with cut certificates for `d = 3..=d_max`;
/// `K_{d+2,d+2}` is a circuit, flexible exactly when `d >= 4`.
pub fn verify_families(d_max: usize, config: &HarnessConfig) -> Result<VerificationReport, HarnessError> {
    let started = Instant::now();
    if d_max < 3 {
        return Err(HarnessError::Scope(format!("families need d_max >= 3, got {d_max}")));
    }
    let mut jobs: Vec<(String, Graph, usize, Option<usize>, bool)> = Vec::new();
    for d in 3..=d_max {
        for t in [d - 1, d - 2] {
            if t >= 2 {
                let b = build_b(d, t)?.graph;
                let m = b.edge_count();
                jobs.push((format!("B({d},{t})"), b, d, Some(m - 1), true));
            }
        }
        for (i, c) in enumerate_bplus(d)?.into_iter().enumerate() {
            let m = c.graph.edge_count();
            jobs.push((format!("B+({d}) #{i}"), c.graph, d, Some(m - 1), true));
        }
    }
    let mut instances = config.exec.map(&jobs, |(name, g, d, r, cut)| {
        flexible_instance(name.clone(), g, *d, *r, *cut, config)
    });
    let bipartite: Vec<usize> = (3..=d_max).collect();
    instances.extend(config.exec.map(&bipartite, |&d| {
        let g = Graph::complete_bipartite(d + 2, d + 2).expect("small");
        let v = generic_rank(&g, d, &config.rank);
        let circuit = Status::expect(v.flags.circuit, true);
        let flexible = Status::expect(v.flags.flexible_circuit, d >= 4);
        Instance::new(
            format!("K({0},{0}) d={d}", d + 2),
            circuit.combine(flexible),
            format!(
                "rank {} of {} edges; circuit {:?} ({}); flexible circuit {:?} ({})",
                v.rank_lb,
                v.edges,
                v.flags.circuit.value,
                describe_basis(v.flags.circuit),
                v.flags.flexible_circuit.value,
                describe_basis(v.flags.flexible_circuit)
            ),
        )
        .with_verdict(v)
    }));
    Ok(VerificationReport::build(Claim::Families, config, instances, started))
}

/// The flexible circuits on at most `d + 6` vertices predicted for dimension `d`:
/// `B_{d,d-1}`, `B_{d,d-2}` (when `d >= 4`) and all of `B+_{d,d-1}`, restricted to
/// at most `n_max` vertices and sorted by canonical code.
pub fn expected_flexible_circuits(d: usize, n_max: usize) -> Result<Vec<Graph>, HarnessError> {
    let mut out = Vec::new();
    for t in [d - 1, d - 2] {
        if t >= 2 {
            out.push(build_b(d, t)?.graph);
        }
    }
    out.extend(enumerate_bplus(d)?.into_iter().map(|c| c.graph));
    out.retain(|g| g.n() <= n_max);
    out.sort_by_key(canonical_code);
    Ok(out)
}

/// Flexible circuits found by exhaustive search, with the report comparing
/// them against [`expected_flexible_circuits`].
#[derive(Debug, Clone)]
pub struct Classification {
    pub report: VerificationReport,
    pub found: Vec<Graph>,
}

/// Searches every graph on `d + 2..=n_max` vertices with minimum degree at
/// least `d + 1`, `d`-sparse, and `n(d+1)/2 <= |E| <= dn - C(d+1, 2)`, and
/// tests each for being a flexible circuit.
///
/// Dimension 3 is the supported scope; dimension 4 runs only with `allow_long`.
/// A sharded run passes when its findings are all expected; the full set
/// equality is checked only when `partition` is whole.
pub fn classify_flexible_circuits(
    d: usize,
    n_max: usize,
    partition: Partition,
    allow_long: bool,
    config: &HarnessConfig,
) -> Result<Classification, HarnessError> {
    let started = Instant::now();
    match d {
        3 => {}
        4 if allow_long => {}
        4 => return Err(HarnessError::Scope("d=4 classification is long-running; enable it explicitly".into())),
        _ => return Err(HarnessError::Scope(format!("classification supports d=3 (and d=4 on request), got d={d}"))),
    }
    if n_max > d + 6 {
        return Err(HarnessError::Scope(format!("n_max must be at most d+6 = {}, got {n_max}", d + 6)));
    }
    let mut instances = Vec::new();
    let mut found: Vec<Graph> = Vec::new();
    for n in d + 2..=n_max {
        let spec = SearchSpec::new(n)
            .degrees(d + 1, n - 1)
            .edges((n * (d + 1)).div_ceil(2), d * n - choose2(d + 1))
            .sparse(d);
        let candidates = match enumerate_partitioned(&spec, partition, config.exec) {
            Ok(c) => c,
            Err(EnumerationError::Infeasible { .. } | EnumerationError::EdgeRange { .. } | EnumerationError::DegreeRange { .. }) => Vec::new(),
            Err(e) => return Err(e.into()),
        };
        let verdicts: Vec<MatroidVerdict> = config.exec.map(&candidates, |g| generic_rank(g, d, &config.rank));
        let unresolved = verdicts.iter().filter(|v| v.flags.flexible_circuit.value == crate::rigidity::TriState::Unresolved).count();
        let hits: Vec<usize> = (0..candidates.len()).filter(|&i| verdicts[i].flags.flexible_circuit.value.is_true()).collect();
        instances.push(Instance::new(
            format!("n={n}"),
            if unresolved > 0 { Status::Unresolved } else { Status::Pass },
            format!("{} candidates, {} flexible circuits, {unresolved} unresolved", candidates.len(), hits.len()),
        ));
        for i in hits {
            let v = verdicts[i].clone();
            instances.push(Instance::new(
                format!("flexible circuit {}", v.graph6),
                Status::Pass,
                format!("|V|={} |E|={} rank {} ({})", v.vertices, v.edges, v.rank_lb, describe_basis(v.flags.flexible_circuit)),
            ).with_verdict(v));
            found.push(candidates[i].clone());
        }
    }
    found.sort_by_key(canonical_code);

    let expected = expected_flexible_circuits(d, n_max)?;
    let want: BTreeSet<Vec<u8>> = expected.iter().map(canonical_code).collect();
    let got: BTreeSet<Vec<u8>> = found.iter().map(canonical_code).collect();
    let whole = partition == Partition::WHOLE;
    let ok = if whole { got == want } else { got.is_subset(&want) };
    let missing = want.difference(&got).count();
    let extra = got.difference(&want).count();
    instances.push(Instance::new(
        "set equality",
        Status::of(ok),
        format!(
            "{} found, {} expected, {missing} missing, {extra} unexpected{}",
            got.len(),
            want.len(),
            if whole { "" } else { " (shard: subset check only)" }
        ),
    ));

    let mut report = VerificationReport::build(Claim::Classify, config, instances, started);
    report.graphs = found.iter().map(graph6::encode).collect();
    if !whole {
        report.partition = Some(partition.to_string());
    }
    Ok(Classification { report, found })
}

/// `|E(B_{d,d-1})| = d(d+9)/2` for `d = 3..=d_max`, and no flexible circuit on
/// at most 9 vertices in dimension 3 has fewer edges, with equality only for `B_{3,2}`.
pub fn verify_edge_bound(d_max: usize, config: &HarnessConfig) -> Result<VerificationReport, HarnessError> {
    let started = Instant::now();
    if d_max < 3 {
        return Err(HarnessError::Scope(format!("edge bound needs d_max >= 3, got {d_max}")));
    }
    let mut instances = Vec::new();
    for d in 3..=d_max {
        let b = build_b(d, d - 1)?.graph;
        let formula = d * (d + 9) / 2;
        instances.push(Instance::new(
            format!("B({d},{})", d - 1),
            Status::of(b.edge_count() == formula),
            format!("{} edges, d(d+9)/2 = {formula}", b.edge_count()),
        ));
    }
    let classification = classify_flexible_circuits(3, 9, Partition::WHOLE, false, config)?;
    let b32 = canonical_code(&build_b(3, 2)?.graph);
    let bound = 3 * 12 / 2;
    let fewest = classification.found.iter().map(Graph::edge_count).min();
    let at_bound: Vec<_> = classification.found.iter().filter(|g| g.edge_count() == bound).map(canonical_code).collect();
    let ok = classification.report.status == Status::Pass
        && fewest.is_some_and(|m| m >= bound)
        && at_bound == vec![b32];
    instances.push(Instance::new(
        "d=3 classification",
        if classification.report.status == Status::Unresolved { Status::Unresolved } else { Status::of(ok) },
        format!(
            "{} flexible circuits on <= 9 vertices, fewest edges {:?}, {} with exactly {bound} edges",
            classification.found.len(),
            fewest,
            at_bound.len()
        ),
    ));
    Ok(VerificationReport::build(Claim::EdgeBound, config, instances, started))
}

/// Starting from `K_{6,6}` in dimension 4, each of `steps` successive cones is
/// a flexible circuit one dimension up on `d + 8` vertices, with every
/// sampled claim below the configured failure threshold.
pub fn verify_cone_ladder(steps: usize, config: &HarnessConfig) -> Result<VerificationReport, HarnessError> {
    let started = Instant::now();
    let mut ladder = vec![(4usize, Graph::complete_bipartite(6, 6).expect("small"))];
    for _ in 0..steps {
        let (d, g) = ladder.last().expect("nonempty");
        ladder.push((d + 1, cone(g)?));
    }
    let threshold = config.rank.threshold_log2;
    let instances = config.exec.map(&ladder, |(d, g)| {
        let v = generic_rank(g, *d, &config.rank);
        let flag = v.flags.flexible_circuit;
        let mut status = Status::expect(flag, true);
        let bound = failure_log2(flag);
        if bound.is_some_and(|b| b > threshold) {
            status = status.combine(Status::Unresolved);
        }
        if g.n() != d + 8 || (*d == 4 && v.rank_lb != 35) {
            status = Status::Fail;
        }
        Instance::new(
            format!("d={d}"),
            status,
            format!(
                "|V|={} (d+8={}) |E|={} rank {} < {}; flexible circuit {:?} ({})",
                g.n(),
                d + 8,
                g.edge_count(),
                v.rank_lb,
                complete_rank(g.n(), *d),
                flag.value,
                describe_basis(flag)
            ),
        )
        .with_verdict(v)
    });
    Ok(VerificationReport::build(Claim::ConeLadder, config, instances, started))
}

/// Named circuits in dimension `d` used as 2-sum summands.
pub(super) fn circuit_pool(d: usize) -> Result<Vec<(String, Graph)>, HarnessError> {
    let mut pool = vec![(format!("K{}", d + 2), Graph::complete(d + 2).expect("small"))];
    for t in [d - 1, d - 2] {
        if t >= 2 {
            pool.push((format!("B({d},{t})"), build_b(d, t)?.graph));
        }
    }
    for (i, c) in enumerate_bplus(d)?.into_iter().enumerate() {
        pool.push((format!("B+({d})#{i}"), c.graph));
    }
    pool.push((format!("K({0},{0})", d + 2), Graph::complete_bipartite(d + 2, d + 2).expect("small")));
    Ok(pool)
}

/// Relabels `g` so that the edge `ab` becomes `01`.
pub(super) fn edge_to_front(g: &Graph, a: usize, b: usize) -> Graph {
    let mut perm = vec![0; g.n()];
    perm[a] = 0;
    perm[b] = 1;
    let mut next = 2;
    for (v, slot) in perm.iter_mut().enumerate() {
        if v != a && v != b {
            *slot = next;
            next += 1;
        }
    }
    g.relabel(&perm).expect("permutation")
}

/// 2-sum of `g1` and `g2` along random edges of each.
pub(super) fn random_two_sum(rng: &mut ChaCha8Rng, g1: &Graph, g2: &Graph) -> (Graph, Graph, Graph) {
    let e1 = *g1.edges().choose(rng).expect("edge");
    let e2 = *g2.edges().choose(rng).expect("edge");
    let (c, d) = if rng.gen_bool(0.5) { e2 } else { (e2.1, e2.0) };
    let h1 = edge_to_front(g1, e1.0, e1.1);
    let h2 = edge_to_front(g2, c, d);
    let sum = two_sum(&h1, &h2, (0, 1)).expect("shared edge").graph;
    (h1, h2, sum)
}

/// `two_sum(K_5, K_5)` is `B_{3,2}`; `count` random 2-sums of circuit pairs in
/// dimensions 3 and 4 are circuits; `count` 2-sums with one summand made
/// independent (a circuit minus an edge) are not.
pub fn verify_two_sum_closure(count: usize, config: &HarnessConfig) -> Result<VerificationReport, HarnessError> {
    let started = Instant::now();
    let k5 = Graph::complete(5).expect("small");
    let sum = two_sum(&k5, &k5, (0, 1))?.graph;
    let b32 = build_b(3, 2)?.graph;
    let mut instances = vec![Instance::new(
        "K5 2-sum K5 = B(3,2)",
        Status::of(canonical_code(&sum) == canonical_code(&b32)),
        format!("codes {} and {}", String::from_utf8_lossy(&canonical_code(&sum)), String::from_utf8_lossy(&canonical_code(&b32))),
    )];

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x2_5u64);
    let pools = [circuit_pool(3)?, circuit_pool(4)?];
    let mut jobs: Vec<(String, Graph, usize, bool)> = Vec::new();
    for i in 0..2 * count {
        let positive = i < count;
        let d = 3 + i % 2;
        let pool = &pools[d - 3];
        let (n1, g1) = pool.choose(&mut rng).expect("pool");
        let (n2, g2) = pool.choose(&mut rng).expect("pool");
        let (h1, h2, s) = random_two_sum(&mut rng, g1, g2);
        if positive {
            jobs.push((format!("d={d} {n1} + {n2}"), s, d, true));
        } else {
            // drop an edge of the second summand other than the glued one
            let others: Vec<_> = h2.edges().into_iter().filter(|&e| e != (0, 1)).collect();
            let f = *others.choose(&mut rng).expect("edge");
            let h2 = h2.without_edge(f.0, f.1).expect("edge");
            let s = two_sum(&h1, &h2, (0, 1)).expect("shared edge").graph;
            jobs.push((format!("d={d} {n1} + ({n2} - {f:?})"), s, d, false));
        }
    }
    instances.extend(config.exec.map(&jobs, |(name, g, d, expect)| {
        let v = generic_rank(g, *d, &config.rank);
        let flag = v.flags.circuit;
        Instance::new(
            name.clone(),
            Status::expect(flag, *expect),
            format!("|V|={} |E|={} rank {}; circuit {:?} ({})", v.vertices, v.edges, v.rank_lb, flag.value, describe_basis(flag)),
        )
        .with_verdict(v)
    }));
    Ok(VerificationReport::build(Claim::TwoSum, config, instances, started))
}
