//! Collapses subtrees of the AMV graph into single cloud nodes.
//!
//! ```text
//! cargo run --example collapse [ELEMENT...]
//! ```
//! Defaults to `liste-films`.

use std::collections::BTreeSet;

use dtdgraph::builder::{build_graph, collapse, BuildOptions};
use dtdgraph::dtd::{expand_parameter_entities, parse_dtd};

fn main() {
    let mut names: BTreeSet<String> = std::env::args().skip(1).collect();
    if names.is_empty() {
        names.insert("liste-films".into());
    }
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus/amv.dtd");
    let ast = expand_parameter_entities(
        &parse_dtd(&std::fs::read_to_string(path).unwrap()).unwrap(),
        None,
    )
    .unwrap();
    let full = build_graph(&ast, &BuildOptions::default()).graph;

    let (small, diags) = collapse(&full, &names);
    for d in &diags {
        println!("{d}");
    }
    let kept: BTreeSet<_> = small.nodes().map(|n| n.id.clone()).collect();
    println!("removed:");
    for n in full.nodes().filter(|n| !kept.contains(&n.id)) {
        println!("  {}", n.id);
    }
    println!(
        "{} nodes before, {} after",
        full.nodes().len(),
        small.nodes().len()
    );

    // Collapsing again changes nothing.
    assert_eq!(collapse(&small, &names).0, small);
}
