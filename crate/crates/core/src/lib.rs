//! Power graphs of finite groups: closed twins, neighbourhood closures,
//! critical classes, cyclic partitions and metacyclic Frobenius groups.

pub mod criticality;
pub mod elements;
pub mod error;
pub mod frobenius;
pub mod group;
pub mod numtheory;
pub mod partitions;
pub mod power_graph;

pub use elements::ElementSet;
pub use error::{Error, MetacyclicError, Result};
pub use group::{CyclicSubgroup, Group, GroupSpec, Limits, MetacyclicParams};
pub use power_graph::{AdjacencyOracle, PowerGraph, TwinPartition};
