//! Randomized generic rank with explicit certificate semantics.
//!
//! The rank of `R(G, p)` at any point `p` is at most the generic rank, so the
//! best rank over random prime-field points is a proven lower bound, and a
//! full-row-rank point proves independence outright. Claims that the rank is
//! *small* are proven by the counting and cut bounds in [`super::bounds`]
//! when they apply, and otherwise carry a Schwartz-Zippel failure bound: a
//! nonzero `k x k` minor (a polynomial of degree `k`) vanishes at a uniform
//! point of `F_p^N` with probability at most `k / p`, independently per trial.

use serde::{Deserialize, Serialize};

use super::bounds::{count_rank_bound, cut_rank_bound, SPARSITY_SEARCH_LIMIT};
use super::field::DEFAULT_PRIME;
use super::matrix::{random_realization, FieldChoice, RigidityMatrix};
use super::sparsity::complete_rank;
use crate::graph::Graph;
use crate::graph6;
use crate::par::Exec;

/// Default seed for rank trials and property suites.
pub const DEFAULT_SEED: u64 = 0x5EED_2024_0D1C_E5ED;

/// Default acceptance threshold for Monte Carlo claims, as `log2` of the failure probability.
pub const DEFAULT_THRESHOLD_LOG2: f64 = -80.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RankConfig {
    pub prime: u64,
    /// Trials used before a dependence claim is accepted.
    pub trials: usize,
    pub seed: u64,
    /// Monte Carlo claims with a larger failure bound are reported unresolved.
    pub threshold_log2: f64,
    pub exec: Exec,
}

impl Default for RankConfig {
    fn default() -> Self {
        RankConfig {
            prime: DEFAULT_PRIME,
            trials: 2,
            seed: DEFAULT_SEED,
            threshold_log2: DEFAULT_THRESHOLD_LOG2,
            exec: Exec::Sequential,
        }
    }
}

impl RankConfig {
    pub fn with_seed(self, seed: u64) -> Self {
        RankConfig { seed, ..self }
    }

    pub fn with_trials(self, trials: usize) -> Self {
        RankConfig { trials, ..self }
    }

    pub fn with_exec(self, exec: Exec) -> Self {
        RankConfig { exec, ..self }
    }

    /// `log2((k / p)^trials)`.
    fn failure_log2(&self, minor: usize, trials: usize) -> f64 {
        if minor == 0 {
            return f64::NEG_INFINITY;
        }
        trials as f64 * ((minor as f64).log2() - (self.prime as f64).log2())
    }

    /// Seed of the `trial`-th random point.
    pub fn trial_seed(&self, trial: usize) -> u64 {
        splitmix64(self.seed ^ splitmix64(trial as u64 + 1))
    }
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// How the dependence status of the edge set is known.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    /// Some point gave full row rank.
    DeterministicIndependent,
    /// Some vertex set induces more edges than its generic rank allows.
    DeterministicDependentByCount,
    /// A separator of size at most `d - 1` bounds the rank below `|E|`.
    DeterministicDependentByCut,
    /// Every sampled point was row-deficient; `failure_log2` bounds the chance
    /// that the graph is nevertheless independent.
    MonteCarlo { failure_log2: f64 },
}

impl Certificate {
    pub fn is_deterministic(&self) -> bool {
        !matches!(self, Certificate::MonteCarlo { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TriState {
    True,
    False,
    Unresolved,
}

impl TriState {
    pub fn is_true(self) -> bool {
        self == TriState::True
    }

    pub fn is_false(self) -> bool {
        self == TriState::False
    }
}

impl From<bool> for TriState {
    fn from(b: bool) -> Self {
        if b {
            TriState::True
        } else {
            TriState::False
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    Deterministic,
    MonteCarlo { failure_log2: f64 },
    /// Nothing settles the flag.
    Open,
}

impl Basis {
    /// Basis of a conjunction: the union bound of the failure probabilities.
    fn and(self, other: Basis) -> Basis {
        match (self, other) {
            (Basis::Open, _) | (_, Basis::Open) => Basis::Open,
            (Basis::Deterministic, b) | (b, Basis::Deterministic) => b,
            (Basis::MonteCarlo { failure_log2: a }, Basis::MonteCarlo { failure_log2: b }) => {
                let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
                Basis::MonteCarlo { failure_log2: hi + (1.0 + (lo - hi).exp2()).log2() }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Flag {
    pub value: TriState,
    pub basis: Basis,
}

impl Flag {
    fn proven(value: bool) -> Self {
        Flag { value: value.into(), basis: Basis::Deterministic }
    }

    fn unresolved() -> Self {
        Flag { value: TriState::Unresolved, basis: Basis::Open }
    }

    /// A Monte Carlo claim, accepted only when its bound clears the threshold.
    fn sampled(value: bool, failure_log2: f64, threshold_log2: f64) -> Self {
        if failure_log2 <= threshold_log2 {
            Flag { value: value.into(), basis: Basis::MonteCarlo { failure_log2 } }
        } else {
            Flag::unresolved()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Flags {
    pub independent: Flag,
    pub rigid: Flag,
    pub circuit: Flag,
    pub flexible_circuit: Flag,
}

/// Rank information for one graph in one dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatroidVerdict {
    pub graph6: String,
    pub d: usize,
    pub vertices: usize,
    pub edges: usize,
    /// Best rank seen at a sampled point; a proven lower bound on generic rank.
    pub rank_lb: usize,
    /// Proven upper bound from counting and cut arguments.
    pub rank_ub: usize,
    /// `min(|E|, d|V| - C(d+1,2))` for `|V| >= d + 2`, else `|E|`.
    pub count_ub: usize,
    pub trials: usize,
    pub primes: Vec<u64>,
    pub certificate: Certificate,
    pub flags: Flags,
}

impl MatroidVerdict {
    /// Rank is known exactly without appeal to sampling.
    pub fn rank_is_exact(&self) -> bool {
        self.rank_lb == self.rank_ub
    }
}

struct Trial {
    rank: usize,
    /// Edges appearing in some linear dependency among the rows at this point.
    redundant: Vec<bool>,
}

fn run_trial(g: &Graph, d: usize, config: &RankConfig, index: usize) -> Trial {
    let p = random_realization(g, d, config.trial_seed(index), FieldChoice::Prime(config.prime));
    let matrix = RigidityMatrix::new(g, &p).expect("realization matches graph");
    let echelon = matrix.echelon().expect("modular matrix");
    Trial {
        rank: echelon.rank,
        redundant: echelon.kernel_support(matrix.rows()),
    }
}

/// Generic rank of `g` in dimension `d` with certificates and all matroid flags.
pub fn generic_rank(g: &Graph, d: usize, config: &RankConfig) -> MatroidVerdict {
    assert!(d >= 1, "dimension must be positive");
    let n = g.n();
    let m = g.edge_count();
    let count_ub = if n >= d + 2 { m.min(complete_rank(n, d)) } else { m };

    let first = run_trial(g, d, config, 0);
    let mut trials = vec![first];
    if trials[0].rank < m && config.trials > 1 {
        trials.extend(config.exec.map_range(1..config.trials, |i| run_trial(g, d, config, i)));
    }
    let rank_lb = trials.iter().map(|t| t.rank).max().unwrap_or(0);
    let sampled = trials.len();

    let (count_bound, cut_bound) = if rank_lb < m {
        (count_rank_bound(g, d), cut_rank_bound(g, d))
    } else {
        (m, m)
    };
    let rank_ub = count_bound.min(cut_bound).max(rank_lb);

    let certificate = if rank_lb == m {
        Certificate::DeterministicIndependent
    } else if count_bound < m {
        Certificate::DeterministicDependentByCount
    } else if cut_bound < m {
        Certificate::DeterministicDependentByCut
    } else {
        Certificate::MonteCarlo { failure_log2: config.failure_log2(m.min(d * n), sampled) }
    };

    let independent = match certificate {
        Certificate::DeterministicIndependent => Flag::proven(true),
        Certificate::MonteCarlo { failure_log2 } => {
            Flag::sampled(false, failure_log2, config.threshold_log2)
        }
        _ => Flag::proven(false),
    };

    let rigid = if n <= d + 1 {
        Flag::proven(g.is_complete())
    } else {
        let target = complete_rank(n, d);
        if rank_lb >= target {
            Flag::proven(true)
        } else if rank_ub < target {
            Flag::proven(false)
        } else {
            Flag::sampled(false, config.failure_log2(target, sampled), config.threshold_log2)
        }
    };

    let circuit = circuit_flag(g, d, config, &trials, rank_lb, rank_ub, independent);

    let flexible_circuit = match (circuit.value, rigid.value) {
        (TriState::True, TriState::False) => Flag {
            value: TriState::True,
            basis: circuit.basis.and(rigid.basis),
        },
        (TriState::False, _) => circuit,
        (_, TriState::True) => Flag { value: TriState::False, basis: rigid.basis },
        _ => Flag::unresolved(),
    };

    MatroidVerdict {
        graph6: graph6::encode(g),
        d,
        vertices: n,
        edges: m,
        rank_lb,
        rank_ub,
        count_ub,
        trials: sampled,
        primes: vec![config.prime],
        certificate,
        flags: Flags { independent, rigid, circuit, flexible_circuit },
    }
}

fn circuit_flag(
    g: &Graph,
    d: usize,
    config: &RankConfig,
    trials: &[Trial],
    rank_lb: usize,
    rank_ub: usize,
    independent: Flag,
) -> Flag {
    let m = g.edge_count();
    match independent.value {
        TriState::True => return Flag::proven(false),
        TriState::Unresolved => return Flag::unresolved(),
        TriState::False => {}
    }
    if rank_lb + 1 < m {
        // rank <= |E| - 2 means two independent dependencies
        if rank_ub + 1 < m {
            return Flag::proven(false);
        }
        return Flag::sampled(false, config.failure_log2(m - 1, trials.len()), config.threshold_log2);
    }
    // rank_lb == m - 1: every edge in the support of the unique row
    // dependency at a maximal-rank point has an independent complement.
    let mut covered = vec![false; m];
    for t in trials.iter().filter(|t| t.rank == rank_lb) {
        for (c, &r) in covered.iter_mut().zip(&t.redundant) {
            *c |= r;
        }
    }
    if covered.iter().all(|&c| c) {
        return Flag { value: TriState::True, basis: independent.basis };
    }
    // Some G - e looked dependent at every point. Try to prove it.
    let edges = g.edges();
    let proven = covered.iter().zip(&edges).filter(|(c, _)| !**c).any(|(_, &(u, v))| {
        let h = g.without_edge(u, v).expect("edge of g");
        h.n() <= SPARSITY_SEARCH_LIMIT && count_rank_bound(&h, d).min(cut_rank_bound(&h, d)) < m - 1
    });
    if proven {
        return Flag::proven(false);
    }
    Flag::sampled(false, config.failure_log2(m - 1, trials.len()), config.threshold_log2)
}

/// Matroid predicates answered by [`check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Predicate {
    Independent,
    Rigid,
    Circuit,
    FlexibleCircuit,
}

impl Predicate {
    pub fn flag(self, verdict: &MatroidVerdict) -> Flag {
        match self {
            Predicate::Independent => verdict.flags.independent,
            Predicate::Rigid => verdict.flags.rigid,
            Predicate::Circuit => verdict.flags.circuit,
            Predicate::FlexibleCircuit => verdict.flags.flexible_circuit,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredicateResult {
    pub value: TriState,
    pub verdict: MatroidVerdict,
}

pub fn check(g: &Graph, d: usize, predicate: Predicate, config: &RankConfig) -> PredicateResult {
    let verdict = generic_rank(g, d, config);
    PredicateResult { value: predicate.flag(&verdict).value, verdict }
}

pub fn is_independent(g: &Graph, d: usize, config: &RankConfig) -> PredicateResult {
    check(g, d, Predicate::Independent, config)
}

pub fn is_rigid(g: &Graph, d: usize, config: &RankConfig) -> PredicateResult {
    check(g, d, Predicate::Rigid, config)
}

pub fn is_circuit(g: &Graph, d: usize, config: &RankConfig) -> PredicateResult {
    check(g, d, Predicate::Circuit, config)
}

pub fn is_flexible_circuit(g: &Graph, d: usize, config: &RankConfig) -> PredicateResult {
    check(g, d, Predicate::FlexibleCircuit, config)
}

/// Circuit test straight from the definition: `G` dependent and every
/// `G - e` independent, each decided by its own rank computation.
pub fn is_circuit_by_deletion(g: &Graph, d: usize, config: &RankConfig) -> TriState {
    let whole = generic_rank(g, d, config).flags.independent.value;
    match whole {
        TriState::True => return TriState::False,
        TriState::Unresolved => return TriState::Unresolved,
        TriState::False => {}
    }
    let mut result = TriState::True;
    for (u, v) in g.edges() {
        let h = g.without_edge(u, v).expect("edge of g");
        match generic_rank(&h, d, config).flags.independent.value {
            TriState::True => {}
            TriState::False => return TriState::False,
            TriState::Unresolved => result = TriState::Unresolved,
        }
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rigidity::matrix::{random_realization, FieldChoice, RigidityMatrix};

    fn cfg() -> RankConfig {
        RankConfig::default()
    }

    #[test]
    fn single_edge() {
        let v = generic_rank(&Graph::complete(2).unwrap(), 3, &cfg());
        assert_eq!(v.rank_lb, 1);
        assert_eq!(v.certificate, Certificate::DeterministicIndependent);
        assert_eq!(v.trials, 1);
        assert!(v.flags.rigid.value.is_true());
    }

    #[test]
    fn k5_in_three_dimensions() {
        let v = generic_rank(&Graph::complete(5).unwrap(), 3, &cfg());
        assert_eq!(v.rank_lb, 9);
        assert_eq!(v.rank_ub, 9);
        assert_eq!(v.certificate, Certificate::DeterministicDependentByCount);
        assert_eq!(v.flags.circuit, Flag::proven(true));
        assert!(v.flags.rigid.value.is_true());
        assert!(v.flags.flexible_circuit.value.is_false());
    }

    #[test]
    fn triangle_on_a_line() {
        let v = generic_rank(&Graph::complete(3).unwrap(), 1, &cfg());
        assert_eq!(v.rank_lb, 2);
        assert!(v.flags.circuit.value.is_true());
    }

    #[test]
    fn k66_in_four_dimensions() {
        let v = generic_rank(&Graph::complete_bipartite(6, 6).unwrap(), 4, &cfg());
        assert_eq!(v.rank_lb, 35);
        assert_eq!(v.count_ub, 36);
        assert!(matches!(v.certificate, Certificate::MonteCarlo { failure_log2 } if failure_log2 < -80.0));
        assert!(v.flags.circuit.value.is_true());
        assert!(v.flags.rigid.value.is_false());
        assert!(v.flags.flexible_circuit.value.is_true());
    }

    #[test]
    fn complete_graphs_are_rigid_circuits() {
        for d in 1..=6 {
            let v = generic_rank(&Graph::complete(d + 2).unwrap(), d, &cfg());
            assert_eq!(v.rank_lb, complete_rank(d + 2, d));
            assert_eq!(v.edges, v.rank_lb + 1);
            assert!(v.flags.circuit.value.is_true() && v.flags.rigid.value.is_true());
        }
    }

    #[test]
    fn k4_in_the_plane_exact() {
        // exact rank over Q at a random integer point
        let g = Graph::complete(4).unwrap();
        let p = random_realization(&g, 2, 17, FieldChoice::Rational);
        assert_eq!(RigidityMatrix::new(&g, &p).unwrap().rank(), 5);
        let v = generic_rank(&g, 2, &cfg());
        assert_eq!(v.rank_lb, 5);
        assert!(v.flags.rigid.value.is_true());
        assert!(v.flags.independent.value.is_false());
    }

    #[test]
    fn unresolved_when_threshold_is_strict() {
        let g = Graph::complete_bipartite(6, 6).unwrap();
        let strict = RankConfig { threshold_log2: -1000.0, ..cfg() };
        let v = generic_rank(&g, 4, &strict);
        assert_eq!(v.flags.independent.value, TriState::Unresolved);
        assert_eq!(v.flags.circuit.value, TriState::Unresolved);
        assert_eq!(v.flags.flexible_circuit.value, TriState::Unresolved);
        // single trial is not enough for the default threshold
        let once = generic_rank(&g, 4, &cfg().with_trials(1));
        assert_eq!(once.flags.independent.value, TriState::Unresolved);
    }

    #[test]
    fn circuit_routes_agree() {
        let graphs = [
            Graph::complete(5).unwrap(),
            Graph::complete(6).unwrap(),
            Graph::complete_bipartite(5, 5).unwrap(),
            Graph::cycle(6).unwrap(),
            Graph::complete(4).unwrap(),
        ];
        for d in 1..=3 {
            for g in &graphs {
                assert_eq!(
                    generic_rank(g, d, &cfg()).flags.circuit.value,
                    is_circuit_by_deletion(g, d, &cfg()),
                    "{g:?} d={d}"
                );
            }
        }
    }

    #[test]
    fn exec_modes_agree() {
        let g = Graph::complete_bipartite(5, 6).unwrap();
        let a = generic_rank(&g, 4, &cfg().with_exec(Exec::Sequential).with_trials(4));
        let b = generic_rank(&g, 4, &cfg().with_exec(Exec::Parallel).with_trials(4));
        assert_eq!(a, b);
    }

    #[test]
    fn union_bound_of_bases() {
        let a = Basis::MonteCarlo { failure_log2: -100.0 };
        let Basis::MonteCarlo { failure_log2 } = a.and(a) else { panic!() };
        assert!((failure_log2 + 99.0).abs() < 1e-9);
        assert_eq!(Basis::Deterministic.and(a), a);
        assert_eq!(Basis::Open.and(a), Basis::Open);
    }
}
