//! Exact maximum cut for planar graphs via the dual graph and a T-join.

pub mod dual;
pub mod matching;
pub mod maxcut;
pub mod tjoin;

pub use maxcut::{max_cut_embedded, max_cut_planar, recover_partition, PlanarError};
