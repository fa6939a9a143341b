//! Shows how content models become group nodes and containment edges.
//!
//! Each model is compiled on its own and the resulting edges are printed
//! with their occurrence and, under a sequence, their position.

use dtdgraph::builder::{build_graph, BuildOptions};
use dtdgraph::dtd::parse_dtd;
use dtdgraph::graph::{EdgeKind, NodeKind};

const MODELS: &[&str] = &[
    "EMPTY",
    "(#PCDATA)",
    "(#PCDATA | em | strong)*",
    "(titre, auteur+, résumé?)",
    "(gratuit | standard | universel)",
    "(joue | réalise | compose)+",
    "(a, (b | c)*, (d))",
    "ANY",
];

fn main() {
    for model in MODELS {
        let ast = parse_dtd(&format!("<!ELEMENT x {model}>")).unwrap();
        let out = build_graph(&ast, &BuildOptions::default());
        let g = &out.graph;
        println!("x {model}");
        for node in g.nodes() {
            let what = match &node.kind {
                NodeKind::Group {
                    kind,
                    subgroup: true,
                } => format!("{kind:?} group, highlighted"),
                NodeKind::Group { kind, .. } => format!("{kind:?} group"),
                NodeKind::TextLeaf { .. } => "text".into(),
                NodeKind::Cloud { label } => format!("cloud {label}"),
                _ => continue,
            };
            println!("  node {:<12} {what}", node.id);
        }
        for e in g.edges() {
            if let EdgeKind::Containment {
                occurrence,
                seq_index,
            } = e.kind
            {
                let pos = seq_index.map(|i| format!(" #{i}")).unwrap_or_default();
                println!("  {} -> {}  {}{pos}", e.from, e.to, occurrence.describe());
            }
        }
        println!();
    }
}
