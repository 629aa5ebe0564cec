//! Exhaustive reference solvers for small instances.

use thiserror::Error;

use crate::graph::{Cut, PFInstance, Value, Weight, WeightedGraph};
use crate::solver::{SolveResult, SolveStats};

pub const ORACLE_MAX_NODES: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{nodes} nodes exceed the brute-force limit of {max}")]
    TooLarge { nodes: usize, max: usize },
}

fn check_size(g: &WeightedGraph) -> Result<(), OracleError> {
    if g.node_count() > ORACLE_MAX_NODES {
        return Err(OracleError::TooLarge { nodes: g.node_count(), max: ORACLE_MAX_NODES });
    }
    Ok(())
}

/// Visits every bipartition with node 0 in `S` in Gray-code order, passing
/// the sides, the cut value and the number of cut fixed edges.
fn enumerate(inst: &PFInstance, mut visit: impl FnMut(&[bool], Weight, usize)) {
    let g = &inst.graph;
    let n = g.node_count();
    if n == 0 {
        visit(&[], 0, 0);
        return;
    }
    let is_fixed: Vec<bool> = (0..g.edge_count()).map(|e| inst.fixed.contains(&e)).collect();
    let mut side = vec![false; n];
    side[0] = true;
    let mut value: Weight = 0;
    let mut fixed_cut = 0usize;
    for &(_, e) in g.neighbors(0) {
        value += g.edge(e).weight;
        fixed_cut += usize::from(is_fixed[e]);
    }
    visit(&side, value, fixed_cut);
    for step in 1u64..1 << (n - 1) {
        let v = step.trailing_zeros() as usize + 1;
        for &(u, e) in g.neighbors(v) {
            let w = g.edge(e).weight;
            if side[u] == side[v] {
                value += w;
                fixed_cut += usize::from(is_fixed[e]);
            } else {
                value -= w;
                fixed_cut -= usize::from(is_fixed[e]);
            }
        }
        side[v] = !side[v];
        visit(&side, value, fixed_cut);
    }
}

/// Maximum cut by enumerating all `2^(n−1)` bipartitions.
pub fn brute_force_maxcut(graph: &WeightedGraph) -> Result<Cut, OracleError> {
    let r = brute_force_pf(&PFInstance::unfixed(graph.clone()))?;
    Ok(r.witness.expect("an unconstrained instance is feasible"))
}

/// Maximum over cuts containing every fixed edge; `−∞` when there is none.
pub fn brute_force_pf(inst: &PFInstance) -> Result<SolveResult, OracleError> {
    check_size(&inst.graph)?;
    let need = inst.fixed.len();
    let mut best: Option<(Weight, Vec<bool>)> = None;
    enumerate(inst, |side, value, fixed_cut| {
        if fixed_cut == need && best.as_ref().is_none_or(|b| value > b.0) {
            best = Some((value, side.to_vec()));
        }
    });
    let stats = SolveStats::default();
    Ok(match best {
        Some((value, side)) => SolveResult {
            value: Value::Finite(value),
            witness: Some(Cut { side, value }),
            stats,
        },
        None => SolveResult { value: Value::NegInfinity, witness: None, stats },
    })
}

/// Values of all feasible cuts over every subset `S ⊆ V`, sorted. Each cut
/// appears twice (as `S` and its complement).
pub fn feasible_cut_values(inst: &PFInstance) -> Result<Vec<Weight>, OracleError> {
    check_size(&inst.graph)?;
    let need = inst.fixed.len();
    let mut values = Vec::new();
    enumerate(inst, |_, value, fixed_cut| {
        if fixed_cut == need {
            values.push(value);
            values.push(value);
        }
    });
    values.sort_unstable();
    Ok(values)
}
