//! The branching solver: split crossings until the graph is planar, solve
//! each planar instance with big-M weights on the fixed edges, keep the best.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::crossing::{first_bad_crossing, reduce_touches, ConfigError, CrossingConfiguration, CrossingId};
use crate::graph::{pf_infeasible, Cut, PFInstance, Value, Weight, WeightedGraph};
use crate::planar::{max_cut_embedded, PlanarError};
use crate::planarity::planar_embedding;
use crate::split::{crossing_split, SplitError, Triplet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("crossing configuration is not realizable")]
    InfeasibleConfiguration,
    #[error("crossing configuration is not good: crossing {0} joins adjacent edges or repeats a pair")]
    NotGood(CrossingId),
    #[error(transparent)]
    Split(#[from] SplitError),
    #[error(transparent)]
    Planar(#[from] PlanarError),
    #[error("graph is not planar but no crossings are left")]
    NoCrossingLeft,
}

/// Which crossing to split next.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum CrossingStrategy {
    #[default]
    LowestId,
    HighestId,
    /// The first listed crossing still present; lowest id otherwise.
    Priority(Vec<CrossingId>),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolverOptions {
    pub strategy: CrossingStrategy,
    /// Worker threads for concurrent branches; `None` runs serially.
    pub threads: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SolveStats {
    /// Crossing splits performed.
    pub branches: usize,
    pub base_cases: usize,
    /// Subproblems discarded by the odd fixed-cycle test.
    pub pruned: usize,
    pub max_depth: usize,
    /// `(depth, node count)` of every planar base case, in branch order.
    pub base_case_sizes: Vec<(usize, usize)>,
    /// Time spent splitting and solving base cases, per depth.
    pub level_times: Vec<Duration>,
    /// Declared crossings dropped as touches before solving.
    pub touches_removed: Vec<CrossingId>,
    /// Crossings left after touch removal.
    pub crossings: usize,
}

impl SolveStats {
    fn add_time(&mut self, depth: usize, t: Duration) {
        if self.level_times.len() <= depth {
            self.level_times.resize(depth + 1, Duration::ZERO);
        }
        self.level_times[depth] += t;
    }

    fn merge(&mut self, other: SolveStats) {
        self.branches += other.branches;
        self.base_cases += other.base_cases;
        self.pruned += other.pruned;
        self.max_depth = self.max_depth.max(other.max_depth);
        self.base_case_sizes.extend(other.base_case_sizes);
        for (d, t) in other.level_times.into_iter().enumerate() {
            self.add_time(d, t);
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveResult {
    pub value: Value,
    pub witness: Option<Cut>,
    pub stats: SolveStats,
}

/// Weight put on fixed edges and the feasibility threshold for a planar
/// PF instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BigM {
    pub m: Weight,
    pub threshold: Weight,
}

impl BigM {
    /// `M = 2·Σ|c|`, raised to 1 on all-zero graphs so fixed edges still
    /// carry weight. Threshold `M·|F| + Σ_{c<0} c`.
    pub fn for_instance(inst: &PFInstance) -> Self {
        let m = (2 * inst.graph.total_abs_weight()).max(1);
        let threshold = m * inst.fixed.len() as Weight + inst.graph.negative_weight_sum();
        BigM { m, threshold }
    }
}

/// Solves a PF instance on a planar graph by adding `M` to every fixed edge
/// and running the planar engine. The instance is infeasible iff the planar
/// optimum is below the threshold.
pub fn solve_pf_planar(inst: &PFInstance) -> Result<SolveResult, PlanarError> {
    let embedding =
        planar_embedding(inst.graph.node_count(), &inst.graph.endpoints()).ok_or(PlanarError::NotPlanar)?;
    let (value, witness) = planar_base_case(inst, &embedding)?;
    let stats = SolveStats {
        base_cases: 1,
        base_case_sizes: vec![(0, inst.graph.node_count())],
        ..SolveStats::default()
    };
    Ok(SolveResult { value, witness: witness.map(Cut::normalized), stats })
}

fn planar_base_case(
    inst: &PFInstance,
    embedding: &crate::planarity::RotationSystem,
) -> Result<(Value, Option<Cut>), PlanarError> {
    let big = BigM::for_instance(inst);
    let boosted = inst
        .graph
        .reweighted(|id, e| if inst.fixed.contains(&id) { e.weight + big.m } else { e.weight });
    let cut = max_cut_embedded(&boosted, embedding)?;
    if cut.value < big.threshold {
        return Ok((Value::NegInfinity, None));
    }
    let witness = Cut::from_sides(&inst.graph, cut.side);
    debug_assert_eq!(witness.value, cut.value - big.m * inst.fixed.len() as Weight);
    Ok((Value::Finite(witness.value), Some(witness)))
}

pub fn choose_crossing(config: &CrossingConfiguration, strategy: &CrossingStrategy) -> Option<CrossingId> {
    match strategy {
        CrossingStrategy::LowestId => config.ids().next(),
        CrossingStrategy::HighestId => config.ids().last(),
        CrossingStrategy::Priority(list) => {
            list.iter().copied().find(|&c| config.contains(c)).or_else(|| config.ids().next())
        }
    }
}

/// Maximum cut of `graph` drawn with crossing configuration `config`.
pub fn solve(graph: &WeightedGraph, config: &CrossingConfiguration) -> Result<SolveResult, SolveError> {
    solve_with(graph, config, &SolverOptions::default())
}

pub fn solve_with(
    graph: &WeightedGraph,
    config: &CrossingConfiguration,
    options: &SolverOptions,
) -> Result<SolveResult, SolveError> {
    let (config, _, touches) = reduce_touches(graph, config)?.ok_or(SolveError::InfeasibleConfiguration)?;
    if let Some(bad) = first_bad_crossing(graph, &config) {
        return Err(SolveError::NotGood(bad));
    }
    let k = config.len();
    let root = Triplet::new(PFInstance::unfixed(graph.clone()), config);
    let mut result = solve_triplet(&root, options)?;
    result.stats.touches_removed = touches;
    result.stats.crossings = k;
    Ok(result)
}

/// Runs the recursion on a triplet without validating its configuration.
pub fn solve_triplet(root: &Triplet, options: &SolverOptions) -> Result<SolveResult, SolveError> {
    let (value, side, stats) = match options.threads {
        None => recurse(root, 0, options, false)?,
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .expect("thread pool");
            pool.install(|| recurse(root, 0, options, true))?
        }
    };
    let witness = side.map(|s| Cut::from_sides(&root.instance.graph, s).normalized());
    debug_assert_eq!(witness.as_ref().map(|c| Value::Finite(c.value)).unwrap_or(Value::NegInfinity), value);
    Ok(SolveResult { value, witness, stats })
}

type Branch = (Value, Option<Vec<bool>>, SolveStats);

fn recurse(t: &Triplet, depth: usize, options: &SolverOptions, parallel: bool) -> Result<Branch, SolveError> {
    let mut stats = SolveStats { max_depth: depth, ..SolveStats::default() };
    if pf_infeasible(&t.instance) {
        stats.pruned = 1;
        return Ok((Value::NegInfinity, None, stats));
    }
    let start = Instant::now();
    let g = &t.instance.graph;
    if let Some(embedding) = planar_embedding(g.node_count(), &g.endpoints()) {
        let (value, cut) = planar_base_case(&t.instance, &embedding)?;
        stats.base_cases = 1;
        stats.base_case_sizes.push((depth, g.node_count()));
        stats.add_time(depth, start.elapsed());
        return Ok((value, cut.map(|c| c.side), stats));
    }
    let chi = choose_crossing(&t.config, &options.strategy).ok_or(SolveError::NoCrossingLeft)?;
    let split = crossing_split(t, chi)?;
    stats.branches = 1;
    stats.add_time(depth, start.elapsed());
    let (same, opposite) = if parallel {
        rayon::join(
            || recurse(&split.same, depth + 1, options, true),
            || recurse(&split.opposite, depth + 1, options, true),
        )
    } else {
        (
            recurse(&split.same, depth + 1, options, false),
            recurse(&split.opposite, depth + 1, options, false),
        )
    };
    let (same, opposite) = (same?, opposite?);
    let (value, side) = if same.0 >= opposite.0 {
        (same.0, same.1.map(|s| split.same_map.lift(&s)))
    } else {
        (opposite.0, opposite.1.map(|s| split.opposite_map.lift(&s)))
    };
    stats.merge(same.2);
    stats.merge(opposite.2);
    Ok((value, side, stats))
}
