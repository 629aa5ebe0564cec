//! Line-oriented instance files.
//!
//! ```text
//! # comment
//! nodes 5
//! edge 0 0 1 2.5
//! crossing 0 1 5
//! order 1 0
//! realize nodes 10
//! realize edge 0 0 1 2.5
//! split 12
//! contract 7 3
//! realize crossing 0 1 5
//! realize order 1 0
//! ```
//!
//! Orders run from the lower to the higher endpoint id and may be omitted
//! for edges with a single crossing.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::crossing::{CrossingConfiguration, CrossingId};
use crate::graph::{common_scale, normalize_at_scale, EdgeId, NodeId, RawEdge, RawGraph, Weight, WeightedGraph};
use crate::mcr::Realization;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    Duplicate,
    Dangling,
    Invalid,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: Option<usize>,
    pub kind: ParseErrorKind,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

fn err(line: impl Into<Option<usize>>, kind: ParseErrorKind, message: impl Into<String>) -> ParseError {
    ParseError { line: line.into(), kind, message: message.into() }
}

/// A realization of the main graph together with a drawing of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizedDrawing {
    pub realization: Realization,
    pub config: CrossingConfiguration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub graph: WeightedGraph,
    pub config: CrossingConfiguration,
    pub realization: Option<RealizedDrawing>,
}

/// Declarations of one graph section (main or realization).
#[derive(Default)]
struct Section {
    nodes: Option<(usize, usize)>,
    edges: BTreeMap<u64, (NodeId, NodeId, String, usize)>,
    crossings: BTreeMap<usize, (u64, u64, usize)>,
    orders: BTreeMap<u64, (Vec<usize>, usize)>,
}

fn number<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, ParseError> {
    let tok = tok.ok_or_else(|| err(line, ParseErrorKind::Syntax, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| err(line, ParseErrorKind::Syntax, format!("expected {what}, found `{tok}`")))
}

fn finish(toks: &mut std::str::SplitWhitespace<'_>, line: usize) -> Result<(), ParseError> {
    match toks.next() {
        Some(extra) => Err(err(line, ParseErrorKind::Syntax, format!("unexpected `{extra}`"))),
        None => Ok(()),
    }
}

impl Section {
    fn statement(&mut self, keyword: &str, toks: &mut std::str::SplitWhitespace<'_>, line: usize) -> Result<(), ParseError> {
        match keyword {
            "nodes" => {
                let n = number(toks.next(), line, "node count")?;
                finish(toks, line)?;
                if self.nodes.is_some() {
                    return Err(err(line, ParseErrorKind::Duplicate, "node count declared twice"));
                }
                self.nodes = Some((n, line));
            }
            "edge" => {
                let id: u64 = number(toks.next(), line, "edge id")?;
                let u = number(toks.next(), line, "node id")?;
                let v = number(toks.next(), line, "node id")?;
                let w = toks.next().ok_or_else(|| err(line, ParseErrorKind::Syntax, "missing weight"))?;
                crate::graph::parse_decimal(w).map_err(|e| err(line, ParseErrorKind::Syntax, e.to_string()))?;
                finish(toks, line)?;
                if self.edges.insert(id, (u, v, w.to_string(), line)).is_some() {
                    return Err(err(line, ParseErrorKind::Duplicate, format!("edge {id} declared twice")));
                }
            }
            "crossing" => {
                let id = number(toks.next(), line, "crossing id")?;
                let a = number(toks.next(), line, "edge id")?;
                let b = number(toks.next(), line, "edge id")?;
                finish(toks, line)?;
                if self.crossings.insert(id, (a, b, line)).is_some() {
                    return Err(err(line, ParseErrorKind::Duplicate, format!("crossing {id} declared twice")));
                }
            }
            "order" => {
                let e = number(toks.next(), line, "edge id")?;
                let list = toks.map(|t| number(Some(t), line, "crossing id")).collect::<Result<Vec<usize>, _>>()?;
                if self.orders.insert(e, (list, line)).is_some() {
                    return Err(err(line, ParseErrorKind::Duplicate, format!("order of edge {e} declared twice")));
                }
            }
            other => return Err(err(line, ParseErrorKind::Syntax, format!("unknown keyword `{other}`"))),
        }
        Ok(())
    }

    fn weights(&self) -> impl Iterator<Item = &str> {
        self.edges.values().map(|e| e.2.as_str())
    }

    /// Builds the graph at `scale` and the file-id to edge-id map.
    fn graph(&self, scale: u32, name: &str) -> Result<(WeightedGraph, BTreeMap<u64, Option<EdgeId>>), ParseError> {
        let (n, _) = self.nodes.ok_or_else(|| err(None, ParseErrorKind::Syntax, format!("missing `{name}` line")))?;
        for (id, &(u, v, _, line)) in &self.edges {
            if u >= n || v >= n {
                return Err(err(line, ParseErrorKind::Dangling, format!("edge {id} uses a node outside 0..{n}")));
            }
        }
        let raw = RawGraph {
            node_count: n,
            edges: self.edges.values().map(|(u, v, w, _)| RawEdge { u: *u, v: *v, weight: w.clone() }).collect(),
        };
        let normalized =
            normalize_at_scale(&raw, scale).map_err(|e| err(None, ParseErrorKind::Invalid, e.to_string()))?;
        let ids = self.edges.keys().copied().zip(normalized.edge_map).collect();
        Ok((normalized.graph, ids))
    }

    fn config(&self, ids: &BTreeMap<u64, Option<EdgeId>>) -> Result<CrossingConfiguration, ParseError> {
        let mut uses: BTreeMap<EdgeId, u64> = BTreeMap::new();
        let mut resolve = |file_id: u64, line: usize| -> Result<EdgeId, ParseError> {
            let id = ids
                .get(&file_id)
                .ok_or_else(|| err(line, ParseErrorKind::Dangling, format!("edge {file_id} is not declared")))?
                .ok_or_else(|| err(line, ParseErrorKind::Invalid, format!("edge {file_id} is a self-loop")))?;
            if let Some(&other) = uses.get(&id) {
                if other != file_id {
                    return Err(err(
                        line,
                        ParseErrorKind::Invalid,
                        format!("edges {other} and {file_id} are parallel and merged"),
                    ));
                }
            }
            uses.insert(id, file_id);
            Ok(id)
        };
        let mut crossings = Vec::new();
        for (&c, &(a, b, line)) in &self.crossings {
            crossings.push((CrossingId(c), resolve(a, line)?, resolve(b, line)?));
        }
        let mut orders = BTreeMap::new();
        for (&e, (list, line)) in &self.orders {
            let id = resolve(e, *line)?;
            for c in list {
                if !self.crossings.contains_key(c) {
                    return Err(err(*line, ParseErrorKind::Dangling, format!("crossing {c} is not declared")));
                }
            }
            orders.insert(id, list.iter().map(|&c| CrossingId(c)).collect());
        }
        Ok(CrossingConfiguration::new(crossings, orders))
    }
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut main = Section::default();
    let mut realized = Section::default();
    let mut splits: BTreeMap<u64, usize> = BTreeMap::new();
    let mut contract: BTreeMap<NodeId, (NodeId, usize)> = BTreeMap::new();
    let mut has_realization = false;
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut toks = content.split_whitespace();
        let Some(keyword) = toks.next() else { continue };
        match keyword {
            "realize" => {
                has_realization = true;
                let sub = toks.next().ok_or_else(|| err(line, ParseErrorKind::Syntax, "missing keyword after `realize`"))?;
                realized.statement(sub, &mut toks, line)?;
            }
            "split" => {
                has_realization = true;
                let e = number(toks.next(), line, "edge id")?;
                finish(&mut toks, line)?;
                if splits.insert(e, line).is_some() {
                    return Err(err(line, ParseErrorKind::Duplicate, format!("split edge {e} declared twice")));
                }
            }
            "contract" => {
                has_realization = true;
                let h = number(toks.next(), line, "node id")?;
                let g = number(toks.next(), line, "node id")?;
                finish(&mut toks, line)?;
                if contract.insert(h, (g, line)).is_some() {
                    return Err(err(line, ParseErrorKind::Duplicate, format!("contraction of node {h} declared twice")));
                }
            }
            _ => main.statement(keyword, &mut toks, line)?,
        }
    }
    let scale = common_scale(main.weights().chain(realized.weights()))
        .map_err(|e| err(None, ParseErrorKind::Invalid, e.to_string()))?;
    let (graph, ids) = main.graph(scale, "nodes")?;
    let config = main.config(&ids)?;
    config.check(&graph).map_err(|e| err(None, ParseErrorKind::Invalid, e.to_string()))?;

    let realization = if has_realization {
        let (h, h_ids) = realized.graph(scale, "realize nodes")?;
        let h_config = realized.config(&h_ids)?;
        h_config.check(&h).map_err(|e| err(None, ParseErrorKind::Invalid, format!("realization: {e}")))?;
        let mut split_edges = BTreeSet::new();
        for (&e, &line) in &splits {
            let id = h_ids
                .get(&e)
                .copied()
                .flatten()
                .ok_or_else(|| err(line, ParseErrorKind::Dangling, format!("split edge {e} is not a realization edge")))?;
            split_edges.insert(id);
        }
        let mut map = vec![usize::MAX; h.node_count()];
        for (&hn, &(gn, line)) in &contract {
            if hn >= h.node_count() || gn >= graph.node_count() {
                return Err(err(line, ParseErrorKind::Dangling, format!("contraction {hn} -> {gn} is out of range")));
            }
            map[hn] = gn;
        }
        if let Some(missing) = map.iter().position(|&g| g == usize::MAX) {
            return Err(err(None, ParseErrorKind::Invalid, format!("realization node {missing} has no contraction")));
        }
        Some(RealizedDrawing { realization: Realization { h, split_edges, contraction: map }, config: h_config })
    } else {
        None
    };
    Ok(Instance { graph, config, realization })
}

/// Exact decimal text of a scaled integer.
pub fn format_weight(w: Weight, scale: u32) -> String {
    if scale == 0 {
        return w.to_string();
    }
    let factor = 10i128.pow(scale);
    let sign = if w < 0 { "-" } else { "" };
    let a = w.unsigned_abs();
    let f = factor as u128;
    format!("{sign}{}.{:0width$}", a / f, a % f, width = scale as usize)
}

fn write_section(out: &mut String, prefix: &str, g: &WeightedGraph, config: &CrossingConfiguration) {
    writeln!(out, "{prefix}nodes {}", g.node_count()).unwrap();
    for (id, e) in g.edges().iter().enumerate() {
        writeln!(out, "{prefix}edge {id} {} {} {}", e.u, e.v, format_weight(e.weight, g.scale())).unwrap();
    }
    for (c, [a, b]) in config.crossings() {
        writeln!(out, "{prefix}crossing {c} {a} {b}").unwrap();
    }
    for (e, list) in config.orders() {
        let list: Vec<String> = list.iter().map(|c| c.to_string()).collect();
        writeln!(out, "{prefix}order {e} {}", list.join(" ")).unwrap();
    }
}

pub fn serialize_instance(inst: &Instance) -> String {
    let mut out = String::new();
    write_section(&mut out, "", &inst.graph, &inst.config);
    if let Some(r) = &inst.realization {
        write_section(&mut out, "realize ", &r.realization.h, &r.config);
        for s in &r.realization.split_edges {
            writeln!(out, "split {s}").unwrap();
        }
        for (h, g) in r.realization.contraction.iter().enumerate() {
            writeln!(out, "contract {h} {g}").unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const K5: &str = "\
# K5 with the diagonals 02 and 13 crossing
nodes 5
edge 0 0 1 1
edge 1 0 2 1
edge 2 0 3 1
edge 3 0 4 1
edge 4 1 2 1
edge 5 1 3 1
edge 6 1 4 1
edge 7 2 3 1
edge 8 2 4 1
edge 9 3 4 1
crossing 0 1 5
";

    #[test]
    fn minimal_file() {
        let inst = parse_instance("nodes 2\nedge 0 0 1 3\n").unwrap();
        assert_eq!(inst.graph.edge_count(), 1);
        assert!(inst.config.is_empty());
        assert!(inst.realization.is_none());
    }

    #[test]
    fn k5_file() {
        let inst = parse_instance(K5).unwrap();
        assert_eq!(inst.config.len(), 1);
        assert_eq!(inst.config.order(1), &[CrossingId(0)]);
        assert!(crate::crossing::validate(&inst.graph, &inst.config).unwrap().is_feasible());
    }

    #[test]
    fn dangling_edge_reports_its_line() {
        let e = parse_instance("nodes 2\nedge 0 0 1 1\n\ncrossing 0 0 7\n").unwrap_err();
        assert_eq!((e.line, e.kind), (Some(4), ParseErrorKind::Dangling));
        assert!(e.to_string().starts_with("line 4:"));
    }

    #[test]
    fn syntax_and_duplicates() {
        let e = parse_instance("nodes 2\nedge 0 0 1 x\n").unwrap_err();
        assert_eq!((e.line, e.kind), (Some(2), ParseErrorKind::Syntax));
        let e = parse_instance("nodes 2\nedge 0 0 1 1\nedge 0 0 1 2\n").unwrap_err();
        assert_eq!((e.line, e.kind), (Some(3), ParseErrorKind::Duplicate));
        let e = parse_instance("nodes 2\nnodes 3\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Duplicate);
        let e = parse_instance("nodes 2\nedge 0 0 2 1\n").unwrap_err();
        assert_eq!((e.line, e.kind), (Some(2), ParseErrorKind::Dangling));
        let e = parse_instance("nodes 2\nfrobnicate\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Syntax);
    }

    #[test]
    fn decimals_and_merging() {
        let inst = parse_instance("nodes 3\nedge 5 0 1 0.5\nedge 2 1 0 1.25\nedge 9 2 2 4\n").unwrap();
        assert_eq!(inst.graph.scale(), 2);
        assert_eq!(inst.graph.edge_count(), 1);
        assert_eq!(inst.graph.edge(0).weight, 175);
        assert_eq!(format_weight(175, 2), "1.75");
        assert_eq!(format_weight(-5, 3), "-0.005");
        assert_eq!(format_weight(-5, 0), "-5");
        // crossing a merged edge is ambiguous
        let text = "nodes 4\nedge 0 0 1 1\nedge 1 1 0 1\nedge 2 2 3 1\ncrossing 0 0 2\ncrossing 1 1 2\norder 2 0 1\n";
        assert_eq!(parse_instance(text).unwrap_err().kind, ParseErrorKind::Invalid);
        let looped = "nodes 2\nedge 0 0 0 1\nedge 1 0 1 1\ncrossing 0 0 1\n";
        assert_eq!(parse_instance(looped).unwrap_err().kind, ParseErrorKind::Invalid);
    }

    #[test]
    fn missing_order_is_invalid() {
        let text = "nodes 6\nedge 0 0 1 1\nedge 1 2 3 1\nedge 2 4 5 1\ncrossing 0 0 1\ncrossing 1 0 2\n";
        assert_eq!(parse_instance(text).unwrap_err().kind, ParseErrorKind::Invalid);
    }

    #[test]
    fn realization_block_round_trips() {
        let text = "\
nodes 3
edge 0 0 1 2
edge 1 1 2 3
realize nodes 4
realize edge 0 0 1 2
realize edge 1 3 2 3
realize edge 2 1 3 0
split 2
contract 0 0
contract 1 1
contract 2 2
contract 3 1
";
        let inst = parse_instance(text).unwrap();
        let r = inst.realization.as_ref().unwrap();
        assert_eq!(r.realization.split_edges, [2].into());
        assert_eq!(r.realization.contraction, vec![0, 1, 2, 1]);
        let again = parse_instance(&serialize_instance(&inst)).unwrap();
        assert_eq!(again, inst);
        assert_eq!(serialize_instance(&again), serialize_instance(&inst));
    }

    #[test]
    fn serialization_is_a_fixed_point() {
        let inst = parse_instance(K5).unwrap();
        let text = serialize_instance(&inst);
        assert_eq!(parse_instance(&text).unwrap(), inst);
    }
}
