//! Expands parameter entities, with and without a local resolver.
//!
//! Internal entities are always expanded. External ones need their text
//! supplied through an `EntityResolver`; here a map from system identifier to
//! text stands in for files on disk.

use std::collections::BTreeMap;

use dtdgraph::builder::{build_graph, BuildOptions};
use dtdgraph::dtd::{expand_parameter_entities, parse_dtd};

const SCHEMA: &str = r#"
<!ENTITY % dates "créé CDATA #REQUIRED modifié CDATA #IMPLIED">
<!ENTITY % inline SYSTEM "inline.ent">
<!ELEMENT page (titre, para+)>
<!ELEMENT titre (#PCDATA)>
<!ELEMENT para (%inline;)>
<!ATTLIST page %dates;>
"#;

fn main() {
    let ast = parse_dtd(SCHEMA).unwrap();

    let unresolved = expand_parameter_entities(&ast, None).unwrap();
    println!("without a resolver:");
    print!("{}", unresolved.to_dtd());
    for u in &unresolved.unresolved_entities {
        println!("  unresolved %{}; ({})", u.name, u.system_id);
    }
    let out = build_graph(&unresolved, &BuildOptions::default());
    for d in &out.diagnostics {
        println!("  {d}");
    }

    let files = BTreeMap::from([("inline.ent".to_string(), "(#PCDATA | em)*".to_string())]);
    let resolved = expand_parameter_entities(&ast, Some(&files)).unwrap();
    println!();
    println!("with inline.ent supplied:");
    print!("{}", resolved.to_dtd());
}
