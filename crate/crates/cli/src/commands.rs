use rigikit::constructions::{
    build_b, cone, enumerate_bplus, one_extension, t_sum, two_sum, vertex_split, zero_extension,
    LabeledConstruction,
};
use rigikit::enumeration::{enumerate_partitioned, enumerate_regular_with, Partition, SearchSpec};
use rigikit::graph::Graph;
use rigikit::graph6;
use rigikit::harness::{
    classify_flexible_circuits, verify_cone_ladder, verify_edge_bound, verify_families,
    verify_two_sum_closure, Claim, HarnessConfig, Status, VerificationReport,
};
use rigikit::par::Exec;
use rigikit::rigidity::{
    generic_rank, Basis, Certificate, Flag, MatroidVerdict, Predicate, RankConfig, TriState,
    DEFAULT_SEED,
};

use crate::input::read_graphs;
use crate::{Cli, Command, EnumerateArgs, FamilyArg, Format, Global, OpArgs, Operation, VerifyArgs};

type Outcome = Result<u8, String>;

pub fn run(cli: Cli) -> Outcome {
    let g = &cli.global;
    if g.dim == 0 {
        return Err("--dim must be at least 1".into());
    }
    match cli.command {
        Command::Rank { files } => rank(g, &read_graphs(&files)?),
        Command::Check { predicate, files } => check(g, predicate.into(), &read_graphs(&files)?),
        Command::Family { family, t } => family_cmd(g, family, t),
        Command::Op(args) => op(g, &args),
        Command::Enumerate(args) => enumerate(g, &args),
        Command::Verify(args) => verify(g, &args),
    }
}

impl Global {
    fn exec(&self) -> Exec {
        if self.sequential {
            Exec::Sequential
        } else {
            Exec::Parallel
        }
    }

    fn rank_config(&self) -> RankConfig {
        let mut config = RankConfig::default().with_seed(self.seed.unwrap_or(DEFAULT_SEED));
        if let Some(t) = self.trials {
            config = config.with_trials(t);
        }
        config
    }

    fn harness_config(&self) -> HarnessConfig {
        let mut config =
            HarnessConfig::default().with_seed(self.seed.unwrap_or(DEFAULT_SEED)).with_exec(self.exec());
        if let Some(t) = self.trials {
            config = config.with_trials(t);
        }
        config
    }

    fn partition(&self) -> Result<Partition, String> {
        match &self.partition {
            Some(s) => s.parse().map_err(|e| format!("--partition: {e}")),
            None => Ok(Partition::WHOLE),
        }
    }

    fn no_partition(&self, command: &str) -> Result<(), String> {
        match &self.partition {
            Some(_) => Err(format!("--partition does not apply to {command}")),
            None => Ok(()),
        }
    }
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable")
}

fn status_of(value: TriState) -> Status {
    match value {
        TriState::True => Status::Pass,
        TriState::False => Status::Fail,
        TriState::Unresolved => Status::Unresolved,
    }
}

fn code(status: Status) -> u8 {
    status.exit_code() as u8
}

fn describe_flag(flag: Flag) -> String {
    match flag.basis {
        Basis::Deterministic => format!("{:?}", flag.value).to_lowercase(),
        Basis::MonteCarlo { failure_log2 } => {
            format!("{} (p<=2^{failure_log2:.1})", format!("{:?}", flag.value).to_lowercase())
        }
        Basis::Open => "unresolved".to_string(),
    }
}

fn describe_certificate(c: &Certificate) -> String {
    match c {
        Certificate::DeterministicIndependent => "independent".into(),
        Certificate::DeterministicDependentByCount => "dependent-by-count".into(),
        Certificate::DeterministicDependentByCut => "dependent-by-cut".into(),
        Certificate::MonteCarlo { failure_log2 } => format!("monte-carlo(2^{failure_log2:.1})"),
    }
}

fn verdict_text(v: &MatroidVerdict) -> String {
    let rank = if v.rank_is_exact() {
        v.rank_lb.to_string()
    } else {
        format!("{}..{}", v.rank_lb, v.rank_ub)
    };
    format!(
        "{} n={} m={} d={} rank={} certificate={} independent={} rigid={} circuit={} flexible-circuit={}",
        v.graph6,
        v.vertices,
        v.edges,
        v.d,
        rank,
        describe_certificate(&v.certificate),
        describe_flag(v.flags.independent),
        describe_flag(v.flags.rigid),
        describe_flag(v.flags.circuit),
        describe_flag(v.flags.flexible_circuit),
    )
}

fn verdicts(g: &Global, graphs: &[Graph]) -> Vec<MatroidVerdict> {
    let config = g.rank_config();
    g.exec().map(graphs, |h| generic_rank(h, g.dim, &config))
}

fn rank(g: &Global, graphs: &[Graph]) -> Outcome {
    g.no_partition("rank")?;
    for v in verdicts(g, graphs) {
        match g.format.unwrap_or(Format::Json) {
            Format::Json => println!("{}", json(&v)),
            Format::Text => println!("{}", verdict_text(&v)),
            Format::G6 => println!("{}", v.graph6),
        }
    }
    Ok(0)
}

/// Exit status combines all inputs; `g6` output keeps the graphs where the
/// predicate holds.
fn check(g: &Global, predicate: Predicate, graphs: &[Graph]) -> Outcome {
    g.no_partition("check")?;
    let mut status = Status::Pass;
    for v in verdicts(g, graphs) {
        let flag = predicate.flag(&v);
        let s = status_of(flag.value);
        status = status.combine(s);
        match g.format.unwrap_or(Format::Text) {
            Format::Json => println!(
                "{}",
                json(&serde_json::json!({ "graph6": v.graph6, "predicate": predicate, "flag": flag, "verdict": v }))
            ),
            Format::Text => println!("{} {}", v.graph6, describe_flag(flag)),
            Format::G6 => {
                if s == Status::Pass {
                    println!("{}", v.graph6);
                }
            }
        }
    }
    Ok(code(status))
}

fn emit_constructions(g: &Global, items: &[LabeledConstruction]) {
    for c in items {
        match g.format.unwrap_or(Format::Json) {
            Format::Json => println!("{}", json(c)),
            Format::G6 => println!("{}", graph6::encode(&c.graph)),
            Format::Text => {
                let roles: Vec<String> = c.roles.iter().map(|(k, r)| format!("{k}={}", json(r))).collect();
                println!("{} {}", graph6::encode(&c.graph), roles.join(" "));
            }
        }
    }
}

fn family_cmd(g: &Global, family: FamilyArg, t: Option<usize>) -> Outcome {
    g.no_partition("family")?;
    let d = g.dim;
    let items = match family {
        FamilyArg::B => {
            let t = t.unwrap_or(d.saturating_sub(1));
            vec![build_b(d, t).map_err(|e| e.to_string())?]
        }
        FamilyArg::Bplus => enumerate_bplus(d).map_err(|e| e.to_string())?,
        FamilyArg::Bipartite => {
            let graph = Graph::complete_bipartite(d + 2, d + 2).map_err(|e| e.to_string())?;
            vec![LabeledConstruction { graph, roles: Default::default() }]
        }
    };
    emit_constructions(g, &items);
    Ok(0)
}

fn require<T>(value: Option<T>, flag: &str, op: &str) -> Result<T, String> {
    value.ok_or_else(|| format!("{op} needs --{flag}"))
}

fn op(g: &Global, args: &OpArgs) -> Outcome {
    g.no_partition("op")?;
    let graphs = read_graphs(&args.files)?;
    let two = matches!(args.operation, Operation::TwoSum | Operation::TSum);
    let wanted = if two { 2 } else { 1 };
    if graphs.len() != wanted {
        return Err(format!("operation reads {wanted} graph(s), got {}", graphs.len()));
    }
    let d = g.dim;
    let first = &graphs[0];
    let err = |e: rigikit::constructions::ConstructionError| e.to_string();
    let result = match args.operation {
        Operation::ZeroExt => plain(zero_extension(first, d, &args.neighbors).map_err(err)?),
        Operation::OneExt => {
            let removed = require(args.remove, "remove", "one-ext")?;
            plain(one_extension(first, d, &args.neighbors, removed).map_err(err)?)
        }
        Operation::Split => {
            let v = require(args.vertex, "vertex", "split")?;
            plain(vertex_split(first, d, v, &args.hinge, &args.part1).map_err(err)?)
        }
        Operation::Cone => plain(cone(first).map_err(err)?),
        Operation::TwoSum => {
            let e = require(args.edge, "edge", "two-sum")?;
            two_sum(first, &graphs[1], e).map_err(err)?
        }
        Operation::TSum => {
            let e = require(args.edge, "edge", "t-sum")?;
            t_sum(first, &graphs[1], &args.shared, e).map_err(err)?
        }
        Operation::Complement => plain(first.complement()),
        Operation::Contract => {
            let (u, v) = require(args.edge, "edge", "contract")?;
            plain(first.contract_edge(u, v).map_err(|e| e.to_string())?)
        }
    };
    match g.format.unwrap_or(Format::G6) {
        Format::G6 => println!("{}", graph6::encode(&result.graph)),
        _ => emit_constructions(g, &[result]),
    }
    Ok(0)
}

fn plain(graph: Graph) -> LabeledConstruction {
    LabeledConstruction { graph, roles: Default::default() }
}

fn enumerate(g: &Global, args: &EnumerateArgs) -> Outcome {
    let partition = g.partition()?;
    let n = args.n;
    let plain_regular = args.regular.is_some()
        && args.degree_min.is_none()
        && args.degree_max.is_none()
        && args.edge_min.is_none()
        && args.edge_max.is_none()
        && args.sparse.is_none()
        && args.connectivity.is_none()
        && partition == Partition::WHOLE;
    let graphs = if plain_regular {
        enumerate_regular_with(n, args.regular.unwrap_or(0), g.exec()).map_err(|e| e.to_string())?
    } else {
        let top = n.saturating_sub(1);
        let mut spec = SearchSpec::new(n).degrees(
            args.regular.or(args.degree_min).unwrap_or(0),
            args.regular.or(args.degree_max).unwrap_or(top),
        );
        spec = spec.edges(args.edge_min.unwrap_or(0), args.edge_max.unwrap_or(n * top / 2));
        if let Some(d) = args.sparse {
            spec = spec.sparse(d);
        }
        if let Some(k) = args.connectivity {
            spec = spec.connectivity(k);
        }
        enumerate_partitioned(&spec, partition, g.exec()).map_err(|e| e.to_string())?
    };
    match g.format.unwrap_or(Format::G6) {
        Format::G6 | Format::Text => {
            for h in &graphs {
                println!("{}", graph6::encode(h));
            }
        }
        Format::Json => {
            let codes: Vec<String> = graphs.iter().map(graph6::encode).collect();
            println!("{}", json(&serde_json::json!({ "count": codes.len(), "graphs": codes })));
        }
    }
    Ok(0)
}

fn verify(g: &Global, args: &VerifyArgs) -> Outcome {
    let config = g.harness_config();
    let partition = g.partition()?;
    if args.claim != Claim::Classify {
        g.no_partition(args.claim.id())?;
    }
    let report = match args.claim {
        Claim::Families => verify_families(args.d_max.unwrap_or(5), &config),
        Claim::EdgeBound => verify_edge_bound(args.d_max.unwrap_or(8), &config),
        Claim::ConeLadder => verify_cone_ladder(args.steps.unwrap_or(3), &config),
        Claim::TwoSum => verify_two_sum_closure(args.count.unwrap_or(20), &config),
        Claim::Classify => {
            let n_max = args.n_max.unwrap_or(g.dim + 6);
            classify_flexible_circuits(g.dim, n_max, partition, args.long, &config).map(|c| c.report)
        }
        claim => rigikit::harness::run(claim, &config),
    }
    .map_err(|e| e.to_string())?;
    print_report(g, &report);
    Ok(code(report.status))
}

fn print_report(g: &Global, report: &VerificationReport) {
    match g.format.unwrap_or(Format::Json) {
        Format::Json => println!("{}", serde_json::to_string_pretty(report).expect("serializable")),
        Format::G6 => {
            for s in &report.graphs {
                println!("{s}");
            }
        }
        Format::Text => {
            println!(
                "{} {} instances={} seed={:#x} time={}ms",
                report.claim, report.status, report.instance_count, report.seed, report.wall_time_ms
            );
            for i in &report.instances {
                println!("  {} {}: {}", i.status, i.name, i.detail);
            }
        }
    }
}
