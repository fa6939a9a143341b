pub mod builder;
pub mod cli;
pub mod diagnostics;
pub mod dot;
pub mod dtd;
pub mod graph;
