//! Writes a graph as canonical JSON, reads it back and verifies it.

use dtdgraph::builder::{build_graph, BuildOptions};
use dtdgraph::dot::{emit_dot, RenderStyle};
use dtdgraph::dtd::parse_dtd;
use dtdgraph::graph::{from_json, to_json, verify_json, Provenance};

const SCHEMA: &str = "<!ELEMENT liste-artistes (artiste)+>
<!ELEMENT artiste (nom, (joue | réalise | compose)+)>
<!ELEMENT nom (#PCDATA)>
<!ELEMENT joue EMPTY>
<!ELEMENT réalise EMPTY>
<!ELEMENT compose EMPTY>
<!ATTLIST artiste id-artiste ID #REQUIRED>
";

fn main() {
    let opts = BuildOptions {
        provenance: Provenance::of_bytes("inline", SCHEMA.as_bytes()),
        ..BuildOptions::default()
    };
    let graph = build_graph(&parse_dtd(SCHEMA).unwrap(), &opts).graph;

    let json = to_json(&graph);
    println!("{json}");

    let back = from_json(&json).unwrap();
    assert_eq!(back, graph);
    verify_json(&json).expect("canonical");

    // Same graph, same DOT, whichever way it was obtained.
    let style = RenderStyle::default();
    assert_eq!(
        emit_dot(&back, &style).unwrap(),
        emit_dot(&graph, &style).unwrap()
    );

    // Any byte change away from the canonical form is rejected.
    let reindented = json.replacen(',', ", ", 1);
    if let Err(e) = verify_json(&reindented) {
        eprintln!("rejected: {e}");
    }
}
