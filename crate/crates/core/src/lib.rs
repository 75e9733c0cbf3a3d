//! Exact verification toolkit for degenerations of finite-dimensional
//! superalgebras given by structure constants.

pub mod arith;
pub mod algebra;
pub mod identities;
pub mod invariants;
pub mod degeneration;
pub mod certificates;
pub mod catalog;
pub mod graph;
pub mod reproduce;
pub mod cli;
