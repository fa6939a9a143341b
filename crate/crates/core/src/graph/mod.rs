//! Emitter-independent schema graph.

mod ir;
mod json;
mod validate;

pub use ir::{
    AttributeRow, Edge, EdgeKind, GroupKind, Node, NodeId, NodeKind, Provenance, RowKind,
    SchemaGraph,
};
pub use json::{from_json, to_json, verify_json, JsonError, FORMAT_VERSION};
pub use validate::validate_graph;
