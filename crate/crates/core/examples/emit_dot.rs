//! Renders the AMV graph as DOT with a custom style and checks the result.
//!
//! ```text
//! cargo run --example emit_dot > amv.dot && dot -Tsvg amv.dot -o amv.svg
//! ```

use dtdgraph::builder::{build_graph, parse_annotations, BuildOptions};
use dtdgraph::dot::{check_dot, emit_dot, Arrow, RankDir, RenderStyle};
use dtdgraph::dtd::{expand_parameter_entities, parse_dtd, Occurrence};
use dtdgraph::graph::Provenance;

fn main() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let bytes = std::fs::read(dir.join("amv.dtd")).unwrap();
    let text = String::from_utf8(bytes.clone()).unwrap();
    let ast = expand_parameter_entities(&parse_dtd(&text).unwrap(), None).unwrap();
    let opts = BuildOptions {
        annotations: parse_annotations(&std::fs::read_to_string(dir.join("amv.links")).unwrap())
            .unwrap(),
        provenance: Provenance::of_bytes("amv.dtd", &bytes),
        ..BuildOptions::default()
    };
    let graph = build_graph(&ast, &opts).graph;

    let mut style = RenderStyle {
        rankdir: RankDir::LeftRight,
        element_fill: "palegreen".into(),
        ..RenderStyle::default()
    };
    style
        .glyph_map
        .set(Occurrence::ExactlyOne, "tee".parse::<Arrow>().unwrap());

    let dot = emit_dot(&graph, &style).unwrap();
    let stats = check_dot(&dot).unwrap();
    eprintln!(
        "{} node statements, {} edges, {} clusters",
        stats.node_statements, stats.edges, stats.clusters
    );
    print!("{dot}");
}
