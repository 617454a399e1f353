//! Clique-width toolkit for unit interval graphs.

pub mod cli;
pub mod cochain;
pub mod compose;
pub mod corpus;
pub mod decomposition;
pub mod embedding;
pub mod expr;
pub mod graph;
pub mod oracle;
pub mod uig;
