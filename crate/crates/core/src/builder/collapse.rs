use std::collections::{BTreeSet, HashSet};

use crate::diagnostics::{Diagnostic, DiagnosticCode as Code};
use crate::dtd::Occurrence;
use crate::graph::{Edge, EdgeKind, Node, NodeId, NodeKind, SchemaGraph};

/// Replaces the content of each named element with a single cloud.
///
/// Nodes reachable from the element are removed unless something outside its
/// subtree still reaches them. Ref links into removed attribute blocks go too.
/// Collapsing an already collapsed element changes nothing.
pub fn collapse(g: &SchemaGraph, names: &BTreeSet<String>) -> (SchemaGraph, Vec<Diagnostic>) {
    let mut g = g.clone();
    let mut diags = Vec::new();
    let mut removed_here: HashSet<NodeId> = HashSet::new();

    for name in names {
        let x = NodeId::element(name);
        if !g.contains(&x) {
            if !removed_here.contains(&x) {
                diags.push(
                    Diagnostic::warning(
                        Code::UnknownCollapseTarget,
                        format!("cannot collapse `{name}`: no such element"),
                    )
                    .about(x.as_str()),
                );
            }
            continue;
        }
        let cloud = NodeId::cloud(name, "collapsed");
        let children: Vec<&NodeId> = g.containment_children(&x).map(|e| &e.to).collect();
        if children == [&cloud] {
            continue;
        }

        let inside = reachable(&g, children.into_iter().cloned(), None);
        let outside = reachable(
            &g,
            g.nodes
                .keys()
                .filter(|id| !inside.contains(*id) || **id == x || Some(*id) == g.root.as_ref())
                .cloned(),
            Some(&x),
        );
        let mut removed: HashSet<NodeId> = inside
            .into_iter()
            .filter(|id| !outside.contains(id) && *id != x)
            .collect();
        let blocks: Vec<NodeId> = removed
            .iter()
            .filter(|id| id.prefix() == "e")
            .map(|id| NodeId::attributes(id.owner()))
            .filter(|id| g.contains(id))
            .collect();
        removed.extend(blocks);

        for e in &g.edges {
            if let EdgeKind::RefLink { from_attribute, .. } = &e.kind {
                if removed.contains(&e.to) && !removed.contains(&e.from) {
                    diags.push(
                        Diagnostic::note(
                            Code::ReducedFidelity,
                            format!(
                                "link from `{}.{from_attribute}` into collapsed `{name}` is dropped",
                                e.from.owner()
                            ),
                        )
                        .about(e.from.as_str()),
                    );
                }
            }
        }
        g.edges.retain(|e| {
            !(removed.contains(&e.from)
                || removed.contains(&e.to)
                || (e.from == x && e.is_containment()))
        });
        for id in &removed {
            g.nodes.remove(id);
        }
        removed_here.extend(removed);

        g.nodes.insert(
            cloud.clone(),
            Node {
                id: cloud.clone(),
                kind: NodeKind::Cloud {
                    label: name.clone(),
                },
            },
        );
        g.edges
            .push(Edge::containment(x, cloud, Occurrence::ExactlyOne, None));
    }
    (g, diags)
}

fn reachable(
    g: &SchemaGraph,
    start: impl IntoIterator<Item = NodeId>,
    skip_from: Option<&NodeId>,
) -> HashSet<NodeId> {
    let mut seen: HashSet<NodeId> = HashSet::new();
    let mut stack: Vec<NodeId> = start.into_iter().collect();
    while let Some(id) = stack.pop() {
        if !seen.insert(id.clone()) || Some(&id) == skip_from {
            continue;
        }
        for e in g.containment_children(&id) {
            if !seen.contains(&e.to) {
                stack.push(e.to.clone());
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::{build_graph, BuildOptions};
    use crate::dtd::parse_dtd;
    use crate::graph::validate_graph;

    fn graph(src: &str) -> SchemaGraph {
        build_graph(&parse_dtd(src).unwrap(), &BuildOptions::default()).graph
    }

    fn set(names: &[&str]) -> BTreeSet<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    const SRC: &str = "<!ELEMENT r (lst, tags)>\
        <!ELEMENT lst (item*)>\
        <!ELEMENT item (name, tag*)>\
        <!ELEMENT name (#PCDATA)>\
        <!ELEMENT tags (tag*)>\
        <!ELEMENT tag EMPTY>\
        <!ATTLIST item id ID #REQUIRED>\
        <!ATTLIST tag of IDREF #IMPLIED>";

    #[test]
    fn removes_exclusive_subtree_only() {
        let (g, diags) = collapse(&graph(SRC), &set(&["lst"]));
        assert!(diags.is_empty());
        for gone in ["e:item", "e:name", "a:item", "t:name/c"] {
            assert!(!g.contains(&NodeId::from(gone)), "{gone} survived");
        }
        for kept in ["e:tag", "a:tag", "e:tags", "e:lst"] {
            assert!(g.contains(&NodeId::from(kept)), "{kept} removed");
        }
        let children: Vec<_> = g
            .containment_children(&NodeId::element("lst"))
            .map(|e| e.to.to_string())
            .collect();
        assert_eq!(children, vec!["c:lst/collapsed"]);
        assert!(validate_graph(&g).is_empty());
    }

    #[test]
    fn idempotent() {
        let once = collapse(&graph(SRC), &set(&["lst", "tags"])).0;
        let twice = collapse(&once, &set(&["lst", "tags"])).0;
        assert_eq!(once, twice);
    }

    #[test]
    fn unknown_and_already_removed_targets() {
        let (_, diags) = collapse(&graph(SRC), &set(&["nope"]));
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].code, Code::UnknownCollapseTarget);

        // `item` sorts after `lst` and is gone by then.
        let (g, diags) = collapse(&graph(SRC), &set(&["lst", "item"]));
        assert!(diags.is_empty());
        assert!(!g.contains(&NodeId::element("item")));
    }

    #[test]
    fn recursive_element_keeps_itself() {
        let g = graph("<!ELEMENT r (part)><!ELEMENT part (leaf, part*)><!ELEMENT leaf EMPTY>");
        let (g, _) = collapse(&g, &set(&["part"]));
        assert!(g.contains(&NodeId::element("part")));
        assert!(!g.contains(&NodeId::element("leaf")));
        assert!(validate_graph(&g).is_empty());
    }

    #[test]
    fn drops_links_into_removed_blocks() {
        let mut g = graph(SRC);
        g.edges.push(Edge {
            from: NodeId::attributes("tag"),
            to: NodeId::attributes("item"),
            kind: EdgeKind::RefLink {
                from_attribute: "of".into(),
                to_attribute: "id".into(),
            },
        });
        assert!(validate_graph(&g).is_empty());
        let (g, diags) = collapse(&g, &set(&["lst"]));
        assert!(!g
            .edges()
            .iter()
            .any(|e| matches!(e.kind, EdgeKind::RefLink { .. })));
        assert_eq!(diags.len(), 1);
        assert!(validate_graph(&g).is_empty());
    }
}
