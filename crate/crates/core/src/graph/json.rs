//! Canonical JSON form of a [`SchemaGraph`] (format 1).
//!
//! Object keys are sorted, nodes are sorted by id and edges keep graph order,
//! so equal graphs always serialize to identical bytes.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::ir::{Edge, Node, NodeId, Provenance, SchemaGraph};
use super::validate::validate_graph;
use crate::diagnostics::Diagnostic;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDocument {
    format: u32,
    nodes: Vec<Node>,
    edges: Vec<Edge>,
    root: Option<NodeId>,
    provenance: Provenance,
}

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed graph JSON: {0}")]
    Malformed(#[from] serde_json::Error),
    #[error("unsupported graph format {0} (expected {FORMAT_VERSION})")]
    UnsupportedFormat(u32),
    #[error("duplicate node id `{0}`")]
    DuplicateNode(NodeId),
    #[error("nodes are not sorted by id (at `{0}`)")]
    UnsortedNodes(NodeId),
    #[error("graph JSON is not in canonical form")]
    NotCanonical,
    #[error("graph violates {} invariant(s); first: {}", .0.len(), .0[0])]
    Invalid(Vec<Diagnostic>),
}

pub fn to_json(g: &SchemaGraph) -> String {
    let doc = GraphDocument {
        format: FORMAT_VERSION,
        nodes: g.nodes.values().cloned().collect(),
        edges: g.edges.clone(),
        root: g.root.clone(),
        provenance: g.provenance.clone(),
    };
    // Going through `Value` sorts every object's keys.
    let value = serde_json::to_value(&doc).expect("graph documents always serialize");
    value.to_string()
}

/// Reads a format-1 document. The graph is not validated; see [`verify_json`].
pub fn from_json(text: &str) -> Result<SchemaGraph, JsonError> {
    let doc: GraphDocument = serde_json::from_str(text)?;
    if doc.format != FORMAT_VERSION {
        return Err(JsonError::UnsupportedFormat(doc.format));
    }
    let mut prev: Option<&NodeId> = None;
    for n in &doc.nodes {
        match prev {
            Some(p) if p == &n.id => return Err(JsonError::DuplicateNode(n.id.clone())),
            Some(p) if p > &n.id => return Err(JsonError::UnsortedNodes(n.id.clone())),
            _ => prev = Some(&n.id),
        }
    }
    Ok(SchemaGraph::from_parts(
        doc.nodes,
        doc.edges,
        doc.root,
        doc.provenance,
    ))
}

/// Accepts `text` only if it is a valid graph in exact canonical form.
pub fn verify_json(text: &str) -> Result<SchemaGraph, JsonError> {
    let g = from_json(text)?;
    let diags = validate_graph(&g);
    if !diags.is_empty() {
        return Err(JsonError::Invalid(diags));
    }
    if to_json(&g) != text.trim_end_matches('\n') {
        return Err(JsonError::NotCanonical);
    }
    Ok(g)
}
