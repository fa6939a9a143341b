use std::collections::{BTreeMap, BTreeSet};

use super::ir::{EdgeKind, GroupKind, NodeId, NodeKind, RowKind, SchemaGraph};
use crate::diagnostics::{Diagnostic, DiagnosticCode as Code};

/// Checks every structural invariant of `g`. An empty result means the graph
/// is valid.
pub fn validate_graph(g: &SchemaGraph) -> Vec<Diagnostic> {
    let mut out = Vec::new();

    for (key, node) in &g.nodes {
        let expected_prefix = match &node.kind {
            NodeKind::Element { name, .. } => {
                if node.id != NodeId::element(name) {
                    out.push(
                        Diagnostic::error(
                            Code::MisplacedNodeId,
                            format!("element `{name}` has id `{}`", node.id),
                        )
                        .about(node.id.as_str()),
                    );
                }
                continue;
            }
            NodeKind::AttributeBlock { owner, rows } => {
                if node.id != NodeId::attributes(owner) {
                    out.push(
                        Diagnostic::error(
                            Code::MisplacedNodeId,
                            format!("attribute block of `{owner}` has id `{}`", node.id),
                        )
                        .about(node.id.as_str()),
                    );
                }
                if rows.is_empty() {
                    out.push(
                        Diagnostic::error(
                            Code::EmptyAttributeBlock,
                            format!("attribute block of `{owner}` has no rows"),
                        )
                        .about(node.id.as_str()),
                    );
                }
                if g.element(owner).is_none() {
                    out.push(
                        Diagnostic::error(
                            Code::AttachmentMismatch,
                            format!(
                                "attribute block owner `{owner}` is not an element of the graph"
                            ),
                        )
                        .about(node.id.as_str()),
                    );
                }
                continue;
            }
            NodeKind::TextLeaf { .. } => &["t"][..],
            NodeKind::Group { .. } => &["g"][..],
            NodeKind::Cloud { .. } => &["c", "u"][..],
        };
        if key != &node.id || !expected_prefix.contains(&node.id.prefix()) {
            out.push(
                Diagnostic::error(
                    Code::MisplacedNodeId,
                    format!("node id `{}` does not match its kind", node.id),
                )
                .about(node.id.as_str()),
            );
        }
    }

    let mut seq_indices: BTreeMap<&NodeId, Vec<u32>> = BTreeMap::new();
    let mut group_parents: BTreeMap<&NodeId, usize> = BTreeMap::new();
    let mut group_edges: BTreeMap<&NodeId, Vec<&NodeId>> = BTreeMap::new();
    let mut attachments: BTreeMap<&NodeId, usize> = BTreeMap::new();

    for (i, edge) in g.edges.iter().enumerate() {
        let subject = format!("edge#{i}");
        let (Some(from), Some(to)) = (g.nodes.get(&edge.from), g.nodes.get(&edge.to)) else {
            let missing = if g.contains(&edge.from) {
                &edge.to
            } else {
                &edge.from
            };
            out.push(
                Diagnostic::error(
                    Code::DanglingEdge,
                    format!(
                        "edge {} -> {} refers to missing node `{missing}`",
                        edge.from, edge.to
                    ),
                )
                .about(subject),
            );
            continue;
        };
        match &edge.kind {
            EdgeKind::Containment { seq_index, .. } => {
                match &from.kind {
                    NodeKind::Element { .. } | NodeKind::Group { .. } => {}
                    _ => out.push(
                        Diagnostic::error(
                            Code::LeafWithChildren,
                            format!("`{}` cannot contain other nodes", edge.from),
                        )
                        .about(subject.clone()),
                    ),
                }
                if matches!(to.kind, NodeKind::AttributeBlock { .. }) {
                    out.push(
                        Diagnostic::error(
                            Code::AttachmentMismatch,
                            format!(
                                "attribute block `{}` is the target of a containment edge",
                                edge.to
                            ),
                        )
                        .about(subject.clone()),
                    );
                }
                let from_seq = matches!(
                    from.kind,
                    NodeKind::Group {
                        kind: GroupKind::Seq,
                        ..
                    }
                );
                match (from_seq, seq_index) {
                    (true, Some(ix)) => seq_indices.entry(&edge.from).or_default().push(*ix),
                    (true, None) => {
                        seq_indices.entry(&edge.from).or_default().push(0);
                    }
                    (false, Some(ix)) => out.push(
                        Diagnostic::error(
                            Code::UnexpectedSeqIndex,
                            format!(
                                "edge {} -> {} carries seq_index {ix} outside a sequence",
                                edge.from, edge.to
                            ),
                        )
                        .about(subject.clone()),
                    ),
                    (false, None) => {}
                }
                if matches!(to.kind, NodeKind::Group { .. }) {
                    *group_parents.entry(&edge.to).or_default() += 1;
                    if matches!(from.kind, NodeKind::Group { .. }) {
                        group_edges.entry(&edge.from).or_default().push(&edge.to);
                    }
                }
                if matches!(from.kind, NodeKind::Group { .. }) {
                    group_parents.entry(&edge.from).or_default();
                }
            }
            EdgeKind::AttributeAttachment => {
                let ok = matches!(
                    (&from.kind, &to.kind),
                    (NodeKind::Element { name, .. }, NodeKind::AttributeBlock { owner, .. }) if name == owner
                );
                if !ok {
                    out.push(
                        Diagnostic::error(
                            Code::AttachmentMismatch,
                            format!("attachment {} -> {} does not join an element to its attribute block", edge.from, edge.to),
                        )
                        .about(subject),
                    );
                } else {
                    *attachments.entry(&edge.to).or_default() += 1;
                }
            }
            EdgeKind::RefLink {
                from_attribute,
                to_attribute,
            } => {
                let source = from.rows().iter().find(|r| &r.name == from_attribute);
                let target = to.rows().iter().find(|r| &r.name == to_attribute);
                match source {
                    None => out.push(
                        Diagnostic::error(
                            Code::RefLinkUnknownRow,
                            format!(
                                "ref-link source `{}.{from_attribute}` does not exist",
                                edge.from.owner()
                            ),
                        )
                        .about(subject.clone()),
                    ),
                    Some(r) if !matches!(r.kind, RowKind::Idref | RowKind::Idrefs) => out.push(
                        Diagnostic::error(
                            Code::RefLinkSourceNotIdRef,
                            format!(
                                "ref-link source `{}.{from_attribute}` is not IDREF/IDREFS",
                                edge.from.owner()
                            ),
                        )
                        .about(subject.clone()),
                    ),
                    _ => {}
                }
                match target {
                    None => out.push(
                        Diagnostic::error(
                            Code::RefLinkUnknownRow,
                            format!(
                                "ref-link target `{}.{to_attribute}` does not exist",
                                edge.to.owner()
                            ),
                        )
                        .about(subject),
                    ),
                    Some(r) if r.kind != RowKind::Id => out.push(
                        Diagnostic::error(
                            Code::RefLinkTargetNotId,
                            format!(
                                "ref-link target `{}.{to_attribute}` is not an ID",
                                edge.to.owner()
                            ),
                        )
                        .about(subject),
                    ),
                    _ => {}
                }
            }
        }
    }

    for node in g.nodes.values() {
        match &node.kind {
            NodeKind::Group { .. } => {
                let parents = group_parents.get(&node.id).copied().unwrap_or(0);
                if parents != 1 {
                    out.push(
                        Diagnostic::error(
                            Code::SharedGroup,
                            format!(
                                "group `{}` has {parents} parents, expected exactly 1",
                                node.id
                            ),
                        )
                        .about(node.id.as_str()),
                    );
                }
                if g.containment_children(&node.id).next().is_none() {
                    out.push(
                        Diagnostic::error(
                            Code::EmptyGroup,
                            format!("group `{}` has no children", node.id),
                        )
                        .about(node.id.as_str()),
                    );
                }
            }
            NodeKind::AttributeBlock { .. } => {
                let n = attachments.get(&node.id).copied().unwrap_or(0);
                if n != 1 {
                    out.push(
                        Diagnostic::error(
                            Code::AttachmentMismatch,
                            format!(
                                "attribute block `{}` is attached {n} times, expected exactly once",
                                node.id
                            ),
                        )
                        .about(node.id.as_str()),
                    );
                }
            }
            _ => {}
        }
    }

    for (group, mut indices) in seq_indices {
        indices.sort_unstable();
        let expected: Vec<u32> = (1..=indices.len() as u32).collect();
        if indices != expected {
            out.push(
                Diagnostic::error(
                    Code::NonConsecutiveSeqIndex,
                    format!(
                        "sequence `{group}` has child indices {:?}, expected 1..={}",
                        indices,
                        indices.len()
                    ),
                )
                .about(group.as_str()),
            );
        }
    }

    if let Some(cycle_at) = find_group_cycle(&group_edges) {
        out.push(
            Diagnostic::error(
                Code::GroupCycle,
                format!("group `{cycle_at}` lies on a containment cycle"),
            )
            .about(cycle_at.as_str()),
        );
    }

    if let Some(root) = &g.root {
        if !g
            .nodes
            .get(root)
            .is_some_and(|n| matches!(n.kind, NodeKind::Element { .. }))
        {
            out.push(
                Diagnostic::error(
                    Code::RootNotElement,
                    format!("root `{root}` is not an element of the graph"),
                )
                .about(root.as_str()),
            );
        }
    }

    out
}

fn find_group_cycle<'a>(edges: &BTreeMap<&'a NodeId, Vec<&'a NodeId>>) -> Option<&'a NodeId> {
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state: BTreeMap<&NodeId, u8> = BTreeMap::new();
    fn visit<'a>(
        n: &'a NodeId,
        edges: &BTreeMap<&'a NodeId, Vec<&'a NodeId>>,
        state: &mut BTreeMap<&'a NodeId, u8>,
    ) -> Option<&'a NodeId> {
        match state.get(n) {
            Some(1) => return Some(n),
            Some(2) => return None,
            _ => {}
        }
        state.insert(n, 1);
        for next in edges.get(n).into_iter().flatten() {
            if let Some(hit) = visit(next, edges, state) {
                return Some(hit);
            }
        }
        state.insert(n, 2);
        None
    }
    let starts: BTreeSet<&NodeId> = edges.keys().copied().collect();
    starts.into_iter().find_map(|s| visit(s, edges, &mut state))
}
