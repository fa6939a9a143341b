use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::style::RenderStyle;
use crate::diagnostics::Diagnostic;
use crate::dtd::Occurrence;
use crate::graph::{validate_graph, EdgeKind, GroupKind, Node, NodeId, NodeKind, SchemaGraph};

#[derive(Debug, Error)]
pub enum DotError {
    #[error("graph violates {} invariant(s); first: {}", .0.len(), .0[0])]
    InvalidGraph(Vec<Diagnostic>),
}

/// Quotes `s` as a DOT string.
pub fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => {}
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn html_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            c => out.push(c),
        }
    }
    out
}

fn port(index: usize) -> String {
    format!("p{index}")
}

pub fn emit_dot(g: &SchemaGraph, style: &RenderStyle) -> Result<String, DotError> {
    let diags = validate_graph(g);
    if !diags.is_empty() {
        return Err(DotError::InvalidGraph(diags));
    }
    let show_links = style.show_attributes && style.show_reflinks;

    // Each subgroup sits in the cluster of its nearest subgroup ancestor.
    let mut parent_of: BTreeMap<&NodeId, &NodeId> = BTreeMap::new();
    for e in g.edges().iter().filter(|e| e.is_containment()) {
        parent_of.insert(&e.to, &e.from);
    }
    let is_subgroup = |id: &NodeId| {
        matches!(
            g.node(id).map(|n| &n.kind),
            Some(NodeKind::Group { subgroup: true, .. })
        )
    };
    let mut cluster_children: BTreeMap<Option<&NodeId>, Vec<&Node>> = BTreeMap::new();
    for node in g.nodes() {
        if !style.show_attributes && matches!(node.kind, NodeKind::AttributeBlock { .. }) {
            continue;
        }
        let mut cluster = None;
        if is_subgroup(&node.id) {
            let mut up = parent_of.get(&node.id).copied();
            while let Some(p) = up {
                if is_subgroup(p) {
                    cluster = Some(p);
                    break;
                }
                if p.prefix() != "g" {
                    break;
                }
                up = parent_of.get(p).copied();
            }
        }
        cluster_children.entry(cluster).or_default().push(node);
    }

    let mut out = String::new();
    let prov = g.provenance();
    if !prov.source.is_empty() || !prov.sha256.is_empty() {
        let source = prov.source.replace(['\n', '\r'], " ");
        let _ = writeln!(out, "// source: {source} sha256: {}", prov.sha256);
    }
    out.push_str("digraph schema {\n");
    let _ = writeln!(out, "  rankdir={};", style.rankdir.as_str());
    out.push_str("  node [fontname=\"Helvetica\"];\n");
    out.push_str("  edge [fontname=\"Helvetica\", fontsize=10];\n");

    let top: Vec<&Node> = cluster_children.get(&None).cloned().unwrap_or_default();
    for node in top.iter().filter(|n| !is_subgroup(&n.id)) {
        node_stmt(&mut out, node, style, 1);
    }
    for node in top.iter().filter(|n| is_subgroup(&n.id)) {
        emit_cluster(&mut out, node, style, &cluster_children, 1);
    }

    for e in g.edges() {
        match &e.kind {
            EdgeKind::Containment {
                occurrence,
                seq_index,
            } => {
                let mut attrs = format!("arrowhead={}", style.glyph_map.get(*occurrence));
                if let Some(i) = seq_index {
                    let _ = write!(attrs, ", label=\"{i}\"");
                }
                let _ = writeln!(
                    out,
                    "  {} -> {} [{attrs}];",
                    quote(e.from.as_str()),
                    quote(e.to.as_str())
                );
            }
            EdgeKind::AttributeAttachment if style.show_attributes => {
                let _ = writeln!(
                    out,
                    "  {} -> {} [dir=none, minlen=1, weight=4];",
                    quote(e.from.as_str()),
                    quote(e.to.as_str())
                );
            }
            EdgeKind::RefLink {
                from_attribute,
                to_attribute,
            } if show_links => {
                let row_port = |id: &NodeId, name: &str| {
                    let rows = g.node(id).map(Node::rows).unwrap_or_default();
                    port(rows.iter().position(|r| r.name == name).unwrap_or(0))
                };
                let _ = writeln!(
                    out,
                    "  {}:{} -> {}:{} [style=dashed, arrowhead=onormal, constraint=false];",
                    quote(e.from.as_str()),
                    row_port(&e.from, from_attribute),
                    quote(e.to.as_str()),
                    row_port(&e.to, to_attribute),
                );
            }
            _ => {}
        }
    }
    out.push_str("}\n");
    Ok(out)
}

fn emit_cluster(
    out: &mut String,
    group: &Node,
    style: &RenderStyle,
    children: &BTreeMap<Option<&NodeId>, Vec<&Node>>,
    depth: usize,
) {
    let pad = "  ".repeat(depth);
    let _ = writeln!(
        out,
        "{pad}subgraph {} {{",
        quote(&format!("cluster_{}", group.id))
    );
    let _ = writeln!(
        out,
        "{pad}  style=filled; color={}; fillcolor={}; label=\"\";",
        quote(&style.subgroup_fill),
        quote(&style.subgroup_fill)
    );
    node_stmt(out, group, style, depth + 1);
    if let Some(inner) = children.get(&Some(&group.id)) {
        for node in inner {
            emit_cluster(out, node, style, children, depth + 1);
        }
    }
    let _ = writeln!(out, "{pad}}}");
}

fn node_stmt(out: &mut String, node: &Node, style: &RenderStyle, depth: usize) {
    let pad = "  ".repeat(depth);
    let id = quote(node.id.as_str());
    let attrs = match &node.kind {
        NodeKind::Element { name, .. } => format!(
            "shape=box, style=filled, fillcolor={}, label={}",
            quote(&style.element_fill),
            quote(name)
        ),
        NodeKind::TextLeaf { label } => format!(
            "shape=box, style=filled, fillcolor={}, label={}",
            quote(&style.text_fill),
            quote(label)
        ),
        NodeKind::AttributeBlock { rows, .. } => {
            let mut table = format!(
                "<table border=\"0\" cellborder=\"1\" cellspacing=\"0\" bgcolor={}>",
                quote(&html_escape(&style.attribute_fill))
            );
            for (i, row) in rows.iter().enumerate() {
                let mut text = html_escape(&row.text);
                if row.underline {
                    text = format!("<u>{text}</u>");
                }
                if row.fixed {
                    text = format!("<i>{text}</i>");
                }
                let _ = write!(table, "<tr><td port=\"{}\">{text}</td></tr>", port(i));
            }
            table.push_str("</table>");
            format!("shape=plaintext, label=<{table}>")
        }
        NodeKind::Group {
            kind: GroupKind::Seq,
            ..
        } => "shape=point, width=0.12, style=filled, fillcolor=black".to_string(),
        NodeKind::Group {
            kind: GroupKind::Alt,
            ..
        } => "shape=triangle, width=0.18, height=0.18, fixedsize=true, style=filled, fillcolor=black, label=\"\""
            .to_string(),
        NodeKind::Cloud { label } => format!(
            "shape=ellipse, style=dashed, label={}",
            quote(&format!("~ {label}"))
        ),
    };
    let _ = writeln!(out, "{pad}{id} [{attrs}];");
}

/// A key to the notation: one sample per node kind and one edge per
/// occurrence glyph.
pub fn emit_legend(style: &RenderStyle) -> String {
    let mut out = String::from("digraph legend {\n");
    out.push_str("  rankdir=LR;\n");
    out.push_str("  node [fontname=\"Helvetica\"];\n");
    out.push_str("  edge [fontname=\"Helvetica\", fontsize=10];\n");

    out.push_str("  subgraph \"cluster_nodes\" {\n    label=\"nodes\";\n");
    let mut kinds: Vec<(&str, String, &str)> = vec![
        (
            "element",
            format!(
                "shape=box, style=filled, fillcolor={}, label=\"name\"",
                quote(&style.element_fill)
            ),
            "element",
        ),
        (
            "text",
            format!(
                "shape=box, style=filled, fillcolor={}, label=\"\"",
                quote(&style.text_fill)
            ),
            "text content",
        ),
    ];
    if style.show_attributes {
        kinds.push((
            "attributes",
            format!(
                "shape=plaintext, label=<<table border=\"0\" cellborder=\"1\" cellspacing=\"0\" bgcolor={}>\
                 <tr><td><u>id</u></td></tr><tr><td>%optional</td></tr><tr><td>#ref</td></tr></table>>",
                quote(&html_escape(&style.attribute_fill))
            ),
            "attributes",
        ));
    }
    kinds.push((
        "group",
        "shape=point, width=0.12, style=filled, fillcolor=black".to_string(),
        "sequence (numbered) / alternative (triangle); subgroups on a filled zone",
    ));
    kinds.push((
        "cloud",
        "shape=ellipse, style=dashed, label=\"~ name\"".to_string(),
        "undetailed content",
    ));
    for (kind, attrs, meaning) in &kinds {
        if *kind == "group" {
            let _ = writeln!(
                out,
                "    subgraph \"cluster_sample:group\" {{\n      style=filled; color={0}; fillcolor={0}; label=\"\";",
                quote(&style.subgroup_fill)
            );
            let _ = writeln!(out, "      \"sample:group\" [{attrs}];");
            out.push_str(
                "      \"sample:group/alt\" [shape=triangle, width=0.18, height=0.18, fixedsize=true, style=filled, fillcolor=black, label=\"\"];\n    }\n",
            );
        } else {
            let _ = writeln!(out, "    \"sample:{kind}\" [{attrs}];");
        }
        let _ = writeln!(
            out,
            "    \"meaning:{kind}\" [shape=plaintext, label={}];",
            quote(meaning)
        );
        let _ = writeln!(
            out,
            "    \"sample:{kind}\" -> \"meaning:{kind}\" [style=invis];"
        );
    }
    out.push_str("  }\n");

    out.push_str("  subgraph \"cluster_glyphs\" {\n    label=\"occurrences\";\n");
    for occ in Occurrence::ALL {
        let key = format!("{occ:?}").to_lowercase();
        let _ = writeln!(out, "    \"glyph:{key}\" [shape=point, width=0.08];");
        let _ = writeln!(
            out,
            "    \"glyph:{key}:meaning\" [shape=plaintext, label={}];",
            quote(&glyph_meaning(occ))
        );
        let _ = writeln!(
            out,
            "    \"glyph:{key}\" -> \"glyph:{key}:meaning\" [arrowhead={}];",
            style.glyph_map.get(occ)
        );
    }
    out.push_str("  }\n}\n");
    out
}

fn glyph_meaning(occ: Occurrence) -> String {
    let marker = occ.marker();
    let text = occ.describe();
    if marker.is_empty() {
        text.to_string()
    } else {
        format!("{marker}  {text}")
    }
}
