//! Kernelization and exact solving for the α-fixed cardinality graph
//! partitioning problem (Max/Min α-FCGP).

pub mod graph;
pub mod rational;
pub mod fcgp;
pub mod harness;
pub mod ramsey;
pub mod rules;
pub mod solve;
