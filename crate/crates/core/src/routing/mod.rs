//! Beacon (landmark) routing: all-pairs routes through one node, a
//! round-based distributed construction of the same tables, and a compact
//! port/header realization with explicit memory accounting.

mod beacon;
mod compact;
mod distributed;
mod stretch;

pub use beacon::{beacon_route, beacon_route_with, build_beacon_tables, BeaconTables, RouteOptions, RoutedPath};
pub use compact::{
    compact_route_sim, compact_scheme_build, memory_account, CompactScheme, Header, MemoryReport, TraceResult,
    TraceStep,
};
pub use distributed::{distributed_beacon_sim, BeaconChoice, DistributedReport};
pub use stretch::{stretch_report, Quantiles, StretchReport, StretchSample, ThresholdFraction};

use thiserror::Error;

use crate::graph::NodeId;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RoutingError {
    #[error("node {node} out of range for n={n}")]
    OutOfRange { node: NodeId, n: usize },
    #[error("no route from {a} to {b} through the beacon")]
    Unroutable { a: NodeId, b: NodeId },
    #[error("{0} requires an undirected graph")]
    DirectedInput(&'static str),
    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub(crate) fn check_node(node: NodeId, n: usize) -> Result<(), RoutingError> {
    if node < n {
        Ok(())
    } else {
        Err(RoutingError::OutOfRange { node, n })
    }
}

/// `⌈log₂ x⌉`, at least 1.
pub(crate) fn bits_for(x: usize) -> u64 {
    if x <= 2 {
        1
    } else {
        (usize::BITS - (x - 1).leading_zeros()) as u64
    }
}
