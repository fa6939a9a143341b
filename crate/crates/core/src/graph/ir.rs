use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dtd::Occurrence;

/// Stable node identifier: `<kind>:<owner>[/<path>]`.
///
/// The kind prefix is one of `e` (element), `t` (text leaf), `a` (attribute
/// block), `g` (group), `c` (cloud) and `u` (placeholder for an undeclared
/// element). `path` locates a particle inside its owner's content model, so
/// two builds of the same input always yield the same ids.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(String);

impl NodeId {
    pub fn element(name: &str) -> Self {
        NodeId(format!("e:{name}"))
    }

    pub fn attributes(owner: &str) -> Self {
        NodeId(format!("a:{owner}"))
    }

    pub fn text(owner: &str, path: &str) -> Self {
        NodeId(format!("t:{owner}/{path}"))
    }

    pub fn group(owner: &str, path: &str) -> Self {
        NodeId(format!("g:{owner}/{path}"))
    }

    pub fn cloud(owner: &str, path: &str) -> Self {
        NodeId(format!("c:{owner}/{path}"))
    }

    pub fn placeholder(name: &str) -> Self {
        NodeId(format!("u:{name}"))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The single-letter kind prefix.
    pub fn prefix(&self) -> &str {
        self.0.split(':').next().unwrap_or("")
    }

    /// Element name the node belongs to (for `e:`/`a:` ids, the element itself).
    pub fn owner(&self) -> &str {
        let rest = self.0.split_once(':').map_or("", |(_, r)| r);
        match self.prefix() {
            "e" | "a" | "u" => rest,
            _ => rest.rsplit_once('/').map_or(rest, |(owner, _)| owner),
        }
    }
}

impl From<&str> for NodeId {
    fn from(raw: &str) -> Self {
        NodeId(raw.to_string())
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupKind {
    Seq,
    Alt,
}

/// The declared type of the attribute a row displays.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowKind {
    Cdata,
    Id,
    Idref,
    Idrefs,
    Enumeration,
    Nmtoken,
    Nmtokens,
    Notation,
    Entity,
    Entities,
}

/// One formatted line of an attribute block.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AttributeRow {
    pub name: String,
    pub kind: RowKind,
    /// Display form, e.g. `%date-modif`, `#(clients)`, `{stars}/'0'`.
    pub text: String,
    /// Set for ID attributes; emitters underline the row.
    pub underline: bool,
    /// Set for `#FIXED` defaults.
    pub fixed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum NodeKind {
    Element {
        name: String,
        /// Declared but neither the root nor used in any content model.
        unreferenced: bool,
    },
    TextLeaf {
        label: String,
    },
    AttributeBlock {
        owner: String,
        rows: Vec<AttributeRow>,
    },
    Group {
        kind: GroupKind,
        subgroup: bool,
    },
    Cloud {
        label: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Node {
    pub id: NodeId,
    pub kind: NodeKind,
}

impl Node {
    pub fn element_name(&self) -> Option<&str> {
        match &self.kind {
            NodeKind::Element { name, .. } => Some(name),
            _ => None,
        }
    }

    pub fn rows(&self) -> &[AttributeRow] {
        match &self.kind {
            NodeKind::AttributeBlock { rows, .. } => rows,
            _ => &[],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum EdgeKind {
    Containment {
        occurrence: Occurrence,
        /// Position among the children of a sequence group, from 1.
        seq_index: Option<u32>,
    },
    AttributeAttachment,
    RefLink {
        from_attribute: String,
        to_attribute: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Edge {
    pub from: NodeId,
    pub to: NodeId,
    pub kind: EdgeKind,
}

impl Edge {
    pub fn containment(
        from: NodeId,
        to: NodeId,
        occurrence: Occurrence,
        seq_index: Option<u32>,
    ) -> Self {
        Edge {
            from,
            to,
            kind: EdgeKind::Containment {
                occurrence,
                seq_index,
            },
        }
    }

    pub fn is_containment(&self) -> bool {
        matches!(self.kind, EdgeKind::Containment { .. })
    }
}

/// Where a graph came from: the input's name and the SHA-256 of its bytes.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub source: String,
    pub sha256: String,
}

impl Provenance {
    pub fn of_bytes(source: impl Into<String>, bytes: &[u8]) -> Self {
        use sha2::{Digest, Sha256};
        Provenance {
            source: source.into(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

/// The schema graph. Nodes are kept sorted by id; edges keep insertion order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SchemaGraph {
    pub(crate) nodes: BTreeMap<NodeId, Node>,
    pub(crate) edges: Vec<Edge>,
    pub(crate) root: Option<NodeId>,
    pub(crate) provenance: Provenance,
}

impl SchemaGraph {
    /// Assembles a graph without checking it; see [`validate_graph`](super::validate_graph).
    /// Later nodes with a repeated id replace earlier ones.
    pub fn from_parts(
        nodes: impl IntoIterator<Item = Node>,
        edges: Vec<Edge>,
        root: Option<NodeId>,
        provenance: Provenance,
    ) -> Self {
        SchemaGraph {
            nodes: nodes.into_iter().map(|n| (n.id.clone(), n)).collect(),
            edges,
            root,
            provenance,
        }
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = &Node> {
        self.nodes.values()
    }

    pub fn node(&self, id: &NodeId) -> Option<&Node> {
        self.nodes.get(id)
    }

    pub fn contains(&self, id: &NodeId) -> bool {
        self.nodes.contains_key(id)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn root(&self) -> Option<&NodeId> {
        self.root.as_ref()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn element(&self, name: &str) -> Option<&Node> {
        self.nodes.get(&NodeId::element(name))
    }

    pub fn attribute_block(&self, owner: &str) -> Option<&Node> {
        self.nodes.get(&NodeId::attributes(owner))
    }

    pub fn elements(&self) -> impl Iterator<Item = &Node> {
        self.nodes
            .values()
            .filter(|n| matches!(n.kind, NodeKind::Element { .. }))
    }

    pub fn outgoing<'a>(&'a self, id: &'a NodeId) -> impl Iterator<Item = &'a Edge> + 'a {
        self.edges.iter().filter(move |e| &e.from == id)
    }

    pub fn containment_children<'a>(
        &'a self,
        id: &'a NodeId,
    ) -> impl Iterator<Item = &'a Edge> + 'a {
        self.outgoing(id).filter(|e| e.is_containment())
    }

    pub fn count_where(&self, pred: impl Fn(&NodeKind) -> bool) -> usize {
        self.nodes.values().filter(|n| pred(&n.kind)).count()
    }
}
