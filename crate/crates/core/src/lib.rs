//! Exact maximum cut for graphs drawn with `k` crossings.
//!
//! Each crossing is removed by branching on whether two of its endpoints lie
//! on the same side of the cut; after `k` levels every subproblem is planar
//! and is solved through its dual graph with a minimum-weight T-join.

pub mod bench;
pub mod crossing;
pub mod format;
pub mod graph;
pub mod mcr;
pub mod oracle;
pub mod planar;
pub mod planarity;
pub mod solver;
pub mod split;
