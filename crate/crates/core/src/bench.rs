//! A scalable instance family with exactly `k` crossings: a planar grid core
//! with `k` pendant K3,3 gadgets, each drawn with a single crossing.

use std::time::Instant;

use crate::crossing::{CrossingConfiguration, CrossingId};
use crate::graph::{Edge, Weight, WeightedGraph};
use crate::solver::{solve_with, SolveError, SolverOptions};

#[derive(Clone, Debug)]
pub struct BenchInstance {
    pub graph: WeightedGraph,
    pub config: CrossingConfiguration,
    pub k: usize,
}

/// Grid core of `side × side` nodes with positive weights, plus `k` gadgets.
///
/// A gadget is the hexagon `a1 b1 a2 b2 a3 b3` with chords `a1b2` and `a3b1`
/// drawn inside (crossing once) and `a2b3` outside. Node `a1` hangs off a
/// distinct core node.
pub fn gadget_family(k: usize, side: usize) -> BenchInstance {
    let core = side * side;
    assert!(k <= core, "at most one gadget per core node");
    let mut edges = Vec::new();
    for r in 0..side {
        for c in 0..side {
            let v = r * side + c;
            let w = ((r + c) % 3 + 1) as Weight;
            if c + 1 < side {
                edges.push(Edge::new(v, v + 1, w));
            }
            if r + 1 < side {
                edges.push(Edge::new(v, v + side, w));
            }
        }
    }
    let mut crossings = Vec::new();
    let step = (core / k.max(1)).max(1);
    for g in 0..k {
        let base = core + 6 * g;
        for i in 0..6 {
            edges.push(Edge::new(base + i, base + (i + 1) % 6, 1));
        }
        let inner_a = edges.len();
        edges.push(Edge::new(base, base + 3, 1));
        edges.push(Edge::new(base + 2, base + 5, 1));
        let inner_b = edges.len();
        edges.push(Edge::new(base + 4, base + 1, 1));
        edges.push(Edge::new(g * step, base, 1));
        crossings.push((CrossingId(g), inner_a, inner_b));
    }
    let graph = WeightedGraph::new(core + 6 * k, edges).expect("family graph is simple");
    let config = CrossingConfiguration::new(crossings, Default::default());
    BenchInstance { graph, config, k }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub k: usize,
    pub nodes: usize,
    pub branches: usize,
    pub base_cases: usize,
    /// Median wall time over the repetitions.
    pub wall_ms: f64,
}

/// Solves each family member `repeats` times and records the median time.
pub fn run_bench(
    ks: impl IntoIterator<Item = usize>,
    side: usize,
    repeats: usize,
    options: &SolverOptions,
) -> Result<Vec<BenchRow>, SolveError> {
    let mut rows = Vec::new();
    for k in ks {
        let inst = gadget_family(k, side);
        let mut times = Vec::with_capacity(repeats.max(1));
        let mut last = None;
        for _ in 0..repeats.max(1) {
            let start = Instant::now();
            let result = solve_with(&inst.graph, &inst.config, options)?;
            times.push(start.elapsed().as_secs_f64() * 1e3);
            last = Some(result);
        }
        let stats = last.expect("at least one run").stats;
        rows.push(BenchRow {
            k,
            nodes: inst.graph.node_count(),
            branches: stats.branches,
            base_cases: stats.base_cases,
            wall_ms: median(&mut times),
        });
    }
    Ok(rows)
}

pub fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    }
}

pub const CSV_HEADER: &str = "k,nodes,branches,base_cases,wall_ms";

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = format!("{CSV_HEADER}\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{},{:.3}\n", r.k, r.nodes, r.branches, r.base_cases, r.wall_ms));
    }
    out
}
