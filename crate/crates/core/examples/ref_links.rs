//! Adds ID/IDREF links to the AMV graph from an annotation file, then asks
//! the name heuristic what it would have proposed without one.

use dtdgraph::builder::{build_graph, infer_ref_links_heuristic, parse_annotations, BuildOptions};
use dtdgraph::dtd::{expand_parameter_entities, parse_dtd};
use dtdgraph::graph::EdgeKind;

fn main() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let text = std::fs::read_to_string(dir.join("amv.dtd")).unwrap();
    let links = std::fs::read_to_string(dir.join("amv.links")).unwrap();
    let ast = expand_parameter_entities(&parse_dtd(&text).unwrap(), None).unwrap();

    let opts = BuildOptions {
        annotations: parse_annotations(&links).unwrap(),
        ..BuildOptions::default()
    };
    let out = build_graph(&ast, &opts);
    for e in out.graph.edges() {
        if let EdgeKind::RefLink {
            from_attribute,
            to_attribute,
        } = &e.kind
        {
            println!(
                "{}.{from_attribute} -> {}.{to_attribute}",
                e.from.owner(),
                e.to.owner()
            );
        }
    }

    // A bad annotation is reported and skipped; it never stops the build.
    let bad = BuildOptions {
        annotations: parse_annotations("film.titre -> client\nami.avec -> nulle-part\n").unwrap(),
        ..BuildOptions::default()
    };
    println!();
    for d in build_graph(&ast, &bad)
        .diagnostics
        .iter()
        .filter(|d| d.code.as_str() == "annotation-mismatch")
    {
        println!("{d}");
    }

    println!();
    let plain = build_graph(&ast, &BuildOptions::default());
    for p in infer_ref_links_heuristic(&plain.graph) {
        println!("proposed: {p}");
    }
}
