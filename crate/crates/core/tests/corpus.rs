mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::{build_corpus, corpus_text};
use dtdgraph::builder::{build_graph, infer_ref_links_heuristic, BuildOptions};
use dtdgraph::diagnostics::{DiagnosticCode, Severity};
use dtdgraph::dtd::{expand_parameter_entities, parse_dtd, Occurrence};
use dtdgraph::graph::{from_json, to_json, EdgeKind, GroupKind, NodeId, NodeKind};

const BODY_ID: &str = "http://www.w3.org/TR/xhtml1/DTD/xhtml1-strict.dtd";

fn occurrence_of(g: &dtdgraph::graph::SchemaGraph, from: &str, to: &str) -> Occurrence {
    let (from, to) = (NodeId::from(from), NodeId::from(to));
    let found = g
        .containment_children(&from)
        .find(|e| e.to == to)
        .map(|e| match e.kind {
            EdgeKind::Containment { occurrence, .. } => occurrence,
            _ => unreachable!(),
        });
    found.unwrap_or_else(|| panic!("no edge {from} -> {to}"))
}

#[test]
fn node_counts() {
    let g = build_corpus(&[]).graph;
    assert_eq!(g.elements().count(), 25);
    assert_eq!(
        g.count_where(|k| matches!(k, NodeKind::AttributeBlock { .. })),
        11
    );
    let rows: usize = g.nodes().map(|n| n.rows().len()).sum();
    assert_eq!(rows, 28);
    assert_eq!(g.root(), Some(&NodeId::element("AMV")));
}

#[test]
fn groups_and_highlighting() {
    let g = build_corpus(&[]).graph;
    let groups: BTreeMap<String, (GroupKind, bool)> = g
        .nodes()
        .filter_map(|n| match n.kind {
            NodeKind::Group { kind, subgroup } => Some((n.id.to_string(), (kind, subgroup))),
            _ => None,
        })
        .collect();
    assert_eq!(groups["g:client/c.0"], (GroupKind::Alt, true));
    assert_eq!(groups["g:artiste/c.2"], (GroupKind::Alt, true));
    assert_eq!(groups["g:liste-films/c"], (GroupKind::Seq, true));
    assert_eq!(groups["g:AMV/c"], (GroupKind::Seq, false));
    let highlighted = groups.values().filter(|(_, s)| *s).count();
    assert_eq!(highlighted, 5);

    assert_eq!(
        occurrence_of(&g, "g:liste-films/c", "e:genre"),
        Occurrence::ExactlyOne
    );
    assert_eq!(
        occurrence_of(&g, "e:liste-films", "g:liste-films/c"),
        Occurrence::OneOrMore
    );
    assert_eq!(
        occurrence_of(&g, "e:liste-amis", "e:ami"),
        Occurrence::ZeroOrMore
    );
    assert_eq!(
        occurrence_of(&g, "g:film/c", "e:produit"),
        Occurrence::OneOrMore
    );
    assert_eq!(
        occurrence_of(&g, "g:film/c", "e:liste-mots-clés"),
        Occurrence::Optional
    );
}

#[test]
fn unresolved_body_entity() {
    let out = build_corpus(&[]);
    for owner in ["résumé", "biographie"] {
        let cloud = out.graph.node(&NodeId::cloud(owner, "c.0")).unwrap();
        assert_eq!(
            cloud.kind,
            NodeKind::Cloud {
                label: "%body;".into()
            }
        );
    }
    let unresolved: Vec<_> = out
        .diagnostics
        .iter()
        .filter(|d| d.code == DiagnosticCode::UnresolvedEntity)
        .collect();
    assert_eq!(unresolved.len(), 1);
    assert_eq!(unresolved[0].severity, Severity::Note);
}

#[test]
fn resolved_body_entity() {
    let ast = parse_dtd(&corpus_text()).unwrap();
    let files = BTreeMap::from([(BODY_ID.to_string(), "p | em".to_string())]);
    let ast = expand_parameter_entities(&ast, Some(&files)).unwrap();
    assert!(ast.unresolved_entities.is_empty());
    let out = build_graph(&ast, &BuildOptions::default());
    assert_eq!(
        out.graph
            .count_where(|k| matches!(k, NodeKind::Cloud { .. })),
        2
    );
    assert!(out.graph.contains(&NodeId::placeholder("p")));
    assert!(out.graph.contains(&NodeId::placeholder("em")));
    assert!(out.graph.contains(&NodeId::group("résumé", "c")));
}

#[test]
fn heuristic_only_matches_named_owner() {
    let ast = expand_parameter_entities(&parse_dtd(&corpus_text()).unwrap(), None).unwrap();
    let out = build_graph(&ast, &BuildOptions::default());
    let proposals: Vec<String> = infer_ref_links_heuristic(&out.graph)
        .iter()
        .map(ToString::to_string)
        .collect();
    assert_eq!(proposals, ["like.client -> client"]);
}

#[test]
fn annotated_links_and_json_round_trip() {
    let g = build_corpus(&[]).graph;
    let links: BTreeSet<(String, String)> = g
        .edges()
        .iter()
        .filter(|e| matches!(e.kind, EdgeKind::RefLink { .. }))
        .map(|e| (e.from.to_string(), e.to.to_string()))
        .collect();
    assert_eq!(links.len(), 6);
    assert!(links.contains(&("a:joue".into(), "a:film".into())));

    let json = to_json(&g);
    let back = from_json(&json).unwrap();
    assert_eq!(back, g);
    assert_eq!(to_json(&back), json);
}

#[test]
fn text_hints_label_leaves() {
    let ast = expand_parameter_entities(&parse_dtd(&corpus_text()).unwrap(), None).unwrap();
    let opts = BuildOptions {
        text_hints: BTreeMap::from([("mot-clé".to_string(), "string".to_string())]),
        ..BuildOptions::default()
    };
    let g = build_graph(&ast, &opts).graph;
    assert_eq!(
        g.node(&NodeId::text("mot-clé", "c")).unwrap().kind,
        NodeKind::TextLeaf {
            label: "string".into()
        }
    );
    assert_eq!(
        g.node(&NodeId::text("like", "c")).unwrap().kind,
        NodeKind::TextLeaf {
            label: String::new()
        }
    );
}
