//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rigikit::canon::{canonical_code, is_isomorphic};
use rigikit::constructions::{build_b, cone, enumerate_bplus, two_sum};
use rigikit::enumeration::{enumerate_regular, partitions_with_min_part, Partition};
use rigikit::graph::Graph;
use rigikit::harness::{
    classify_flexible_circuits, run, verify_independence, Claim, HarnessConfig, RegularCase, Status,
    VerificationReport,
};
use rigikit::rigidity::{complete_rank, generic_rank, Basis, Certificate, TriState, DEFAULT_THRESHOLD_LOG2};

type Check = Result<String, String>;
type Criterion = (&'static str, fn(&HarnessConfig) -> Check, Duration);

fn ensure(ok: bool, message: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message.into())
    }
}

fn passed(report: &VerificationReport) -> Result<(), String> {
    let failing: Vec<String> = report.failures().map(|i| format!("{} [{}]: {}", i.name, i.status, i.detail)).collect();
    ensure(report.status == Status::Pass, format!("{} {}: {}", report.claim, report.status, failing.join("; ")))
}

fn regular(config: &HarnessConfig, case: RegularCase, n: usize, k: usize, d: usize, count: usize) -> Result<Vec<Graph>, String> {
    let graphs = enumerate_regular(n, k).map_err(|e| e.to_string())?;
    ensure(graphs.len() == count, format!("{} classes of {k}-regular graphs on {n} vertices, expected {count}", graphs.len()))?;
    for g in &graphs {
        let v = generic_rank(g, d, &config.rank);
        ensure(
            v.certificate == Certificate::DeterministicIndependent && v.rank_lb == complete_rank(n, d),
            format!("{}: rank {} with {:?}", v.graph6, v.rank_lb, v.certificate),
        )?;
        ensure(v.rank_lb == g.edge_count(), format!("{}: rank below edge count", v.graph6))?;
    }
    let report = verify_independence(case, &graphs, config);
    passed(&report)?;
    Ok(graphs)
}

fn criterion_1(config: &HarnessConfig) -> Check {
    let graphs = regular(config, RegularCase::TenSix, 10, 6, 4, 21)?;
    passed(&run(Claim::Regular10, config).map_err(|e| e.to_string())?)?;

    // Corrupt one member with an extra edge: the report must fail.
    let mut corrupted = graphs.clone();
    let g = &corrupted[0];
    let (u, v) = (0..10)
        .flat_map(|u| (u + 1..10).map(move |v| (u, v)))
        .find(|&(u, v)| !g.has_edge(u, v))
        .expect("a non-edge");
    corrupted[0] = g.with_edge(u, v).map_err(|e| e.to_string())?;
    let report = verify_independence(RegularCase::TenSix, &corrupted, config);
    ensure(report.status == Status::Fail, "corrupted input did not fail")?;
    Ok("21 classes, all independent at d=4 with rank 30; corrupted member fails".into())
}

fn criterion_2(config: &HarnessConfig) -> Check {
    let graphs = regular(config, RegularCase::FifteenTwelve, 15, 12, 9, 17)?;
    ensure(partitions_with_min_part(15, 3) == 17, "partition count of 15 into parts >= 3 is not 17")?;
    // Complements are 2-regular: disjoint unions of cycles of length >= 3.
    let cycle_types: BTreeSet<Vec<usize>> = graphs
        .iter()
        .map(|g| {
            let c = g.complement();
            let mut parts: Vec<usize> = c.components().iter().map(|m| m.count_ones() as usize).collect();
            parts.sort_unstable();
            parts
        })
        .collect();
    ensure(cycle_types.len() == 17, format!("{} distinct complement cycle types", cycle_types.len()))?;
    ensure(cycle_types.iter().all(|p| p.iter().all(|&s| s >= 3)), "complement has a short component")?;
    passed(&run(Claim::Regular15, config).map_err(|e| e.to_string())?)?;
    Ok("17 classes matching the 17 partitions of 15 into parts >= 3, all independent at d=9 with rank 90".into())
}

fn criterion_3(config: &HarnessConfig) -> Check {
    for (d, t, n, m, r) in [(3, 2, 8, 18, 17), (4, 3, 9, 26, 25), (4, 2, 10, 28, 27)] {
        let g = build_b(d, t).map_err(|e| e.to_string())?.graph;
        let v = generic_rank(&g, d, &config.rank);
        ensure(
            (v.vertices, v.edges, v.rank_lb, v.rank_ub) == (n, m, r, r),
            format!("B({d},{t}): |V|={} |E|={} rank {}..{}", v.vertices, v.edges, v.rank_lb, v.rank_ub),
        )?;
        let flag = v.flags.flexible_circuit;
        ensure(
            flag.value == TriState::True && flag.basis == Basis::Deterministic,
            format!("B({d},{t}) flexible circuit flag {flag:?}"),
        )?;
        ensure(
            v.certificate == Certificate::DeterministicDependentByCut,
            format!("B({d},{t}) certificate {:?}", v.certificate),
        )?;
    }
    let mut members = 0;
    for d in 3..=5 {
        for c in enumerate_bplus(d).map_err(|e| e.to_string())? {
            let v = generic_rank(&c.graph, d, &config.rank);
            let flag = v.flags.flexible_circuit;
            ensure(
                flag.value == TriState::True
                    && flag.basis == Basis::Deterministic
                    && v.certificate == Certificate::DeterministicDependentByCut,
                format!("B+ member {} at d={d}: {flag:?}, {:?}", v.graph6, v.certificate),
            )?;
            members += 1;
        }
    }
    passed(&run(Claim::Families, config).map_err(|e| e.to_string())?)?;
    Ok(format!("B(3,2) rank 17, B(4,3) rank 25, B(4,2) rank 27 and {members} B+ members (d=3..5) are flexible circuits by cut"))
}

fn criterion_4(config: &HarnessConfig) -> Check {
    let k5 = Graph::complete(5).map_err(|e| e.to_string())?;
    let sum = two_sum(&k5, &k5, (0, 1)).map_err(|e| e.to_string())?.graph;
    let b32 = build_b(3, 2).map_err(|e| e.to_string())?.graph;
    ensure(canonical_code(&sum) == canonical_code(&b32), "K5 2-sum K5 is not B(3,2)")?;
    let report = run(Claim::TwoSum, config).map_err(|e| e.to_string())?;
    passed(&report)?;
    let circuit = |value: TriState| {
        report.instances.iter().filter(|i| i.verdict.as_ref().is_some_and(|v| v.flags.circuit.value == value)).count()
    };
    let (positive, negative) = (circuit(TriState::True), circuit(TriState::False));
    ensure(positive == 20 && negative == 20, format!("{positive} positive and {negative} negative sums"))?;
    Ok("K5 2-sum K5 = B(3,2); 20 circuit sums are circuits, 20 sums with an independent summand are not".into())
}

fn codes(graphs: &[Graph]) -> BTreeSet<Vec<u8>> {
    graphs.iter().map(canonical_code).collect()
}

fn criterion_5(config: &HarnessConfig) -> Check {
    let b32 = build_b(3, 2).map_err(|e| e.to_string())?.graph;
    let bplus: Vec<Graph> = enumerate_bplus(3).map_err(|e| e.to_string())?.into_iter().map(|c| c.graph).collect();
    let mut expected = bplus.clone();
    expected.push(b32.clone());

    let whole = classify_flexible_circuits(3, 9, Partition::WHOLE, false, config).map_err(|e| e.to_string())?;
    passed(&whole.report)?;
    ensure(codes(&whole.found) == codes(&expected), format!("{} found, {} expected", whole.found.len(), expected.len()))?;

    let eight = classify_flexible_circuits(3, 8, Partition::WHOLE, false, config).map_err(|e| e.to_string())?;
    ensure(
        eight.found.len() == 1 && is_isomorphic(&eight.found[0], &b32),
        format!("n <= 8 found {} graphs", eight.found.len()),
    )?;
    let seven = classify_flexible_circuits(3, 7, Partition::WHOLE, false, config).map_err(|e| e.to_string())?;
    ensure(seven.found.is_empty(), format!("n <= 7 found {} graphs", seven.found.len()))?;

    // Shards partition the search.
    let mut union = BTreeSet::new();
    for i in 0..3 {
        let part = Partition::new(i, 3).map_err(|e| e.to_string())?;
        let shard = classify_flexible_circuits(3, 9, part, false, config).map_err(|e| e.to_string())?;
        ensure(shard.report.status == Status::Pass, format!("shard {part} {}", shard.report.status))?;
        for code in codes(&shard.found) {
            ensure(union.insert(code), format!("shard {part} repeats a graph"))?;
        }
    }
    ensure(union == codes(&expected), "shards do not cover the classification")?;
    Ok(format!(
        "d=3, n<=9: exactly B(3,2) and the {} B+ members; n<=8: B(3,2); n<=7: none; 3 shards agree",
        bplus.len()
    ))
}

fn criterion_6(config: &HarnessConfig) -> Check {
    for d in 3..=8 {
        let m = build_b(d, d - 1).map_err(|e| e.to_string())?.graph.edge_count();
        ensure(m == d * (d + 9) / 2, format!("|E(B({d},{}))| = {m}, formula {}", d - 1, d * (d + 9) / 2))?;
    }
    let c = classify_flexible_circuits(3, 9, Partition::WHOLE, false, config).map_err(|e| e.to_string())?;
    let fewest = c.found.iter().map(Graph::edge_count).min();
    ensure(fewest == Some(18), format!("fewest edges {fewest:?}"))?;
    passed(&run(Claim::EdgeBound, config).map_err(|e| e.to_string())?)?;
    Ok("|E(B(d,d-1))| = d(d+9)/2 for d=3..8; no d=3 flexible circuit on <= 9 vertices has < 18 edges".into())
}

fn criterion_7(config: &HarnessConfig) -> Check {
    let mut g = Graph::complete_bipartite(6, 6).map_err(|e| e.to_string())?;
    let mut worst = f64::NEG_INFINITY;
    for d in 4..=7 {
        if d > 4 {
            g = cone(&g).map_err(|e| e.to_string())?;
        }
        let v = generic_rank(&g, d, &config.rank);
        ensure(g.n() == d + 8, format!("d={d}: {} vertices", g.n()))?;
        ensure(d != 4 || v.rank_lb == 35, format!("K(6,6) rank {}", v.rank_lb))?;
        let flag = v.flags.flexible_circuit;
        ensure(flag.value == TriState::True, format!("d={d}: flexible circuit {flag:?}"))?;
        if let Basis::MonteCarlo { failure_log2 } = flag.basis {
            ensure(failure_log2 <= DEFAULT_THRESHOLD_LOG2, format!("d={d}: bound 2^{failure_log2}"))?;
            worst = worst.max(failure_log2);
        }
    }
    passed(&run(Claim::ConeLadder, config).map_err(|e| e.to_string())?)?;
    Ok(format!("K(6,6) at d=4 (rank 35) and 3 cones are flexible circuits on d+8 vertices; worst bound 2^{worst:.1}"))
}

fn criterion_8(config: &HarnessConfig) -> Check {
    let report = run(Claim::Structure, config).map_err(|e| e.to_string())?;
    passed(&report)?;
    let again = run(Claim::Structure, config).map_err(|e| e.to_string())?;
    ensure(report.without_timing() == again.without_timing(), "structure report is not reproducible")?;
    Ok(format!("{} property suites pass at the default seed; report reproducible", report.instance_count))
}

fn main() -> ExitCode {
    let config = HarnessConfig::default();
    let criteria: [Criterion; 8] = [
        ("6-regular graphs on 10 vertices", criterion_1, Duration::from_secs(60)),
        ("12-regular graphs on 15 vertices", criterion_2, Duration::from_secs(120)),
        ("flexible circuit families", criterion_3, Duration::from_secs(60)),
        ("2-sum closure", criterion_4, Duration::from_secs(60)),
        ("classification at d=3", criterion_5, Duration::from_secs(3600)),
        ("edge bound", criterion_6, Duration::from_secs(60)),
        ("coning ladder", criterion_7, Duration::from_secs(60)),
        ("property suites", criterion_8, Duration::from_secs(600)),
    ];
    let mut failed = 0;
    for (i, (name, check, budget)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let result = check(&config);
        let elapsed = started.elapsed();
        match result {
            Ok(detail) => println!(
                "PASS criterion {}: {name}: {detail} ({:.2}s, budget {}s)",
                i + 1,
                elapsed.as_secs_f64(),
                budget.as_secs()
            ),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why} ({:.2}s)", i + 1, elapsed.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
