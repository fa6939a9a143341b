//! Parses a DTD and prints its declarations in canonical form.
//!
//! ```text
//! cargo run --example parse_dtd [FILE]
//! ```
//! Without an argument the bundled AMV schema is used.

use std::path::PathBuf;

use dtdgraph::dtd::{parse_dtd, DeclarationKind};

fn main() {
    let path = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus/amv.dtd"));
    let text = std::fs::read_to_string(&path).expect("readable input");

    let ast = match parse_dtd(&text) {
        Ok(ast) => ast,
        Err(e) => {
            eprintln!("{}:{e}", path.display());
            std::process::exit(1);
        }
    };

    let (mut elements, mut lists, mut attributes, mut entities) = (0, 0, 0, 0);
    for decl in &ast.declarations {
        match &decl.kind {
            DeclarationKind::Element { .. } => elements += 1,
            DeclarationKind::AttList { attributes: a, .. } => {
                lists += 1;
                attributes += a.len();
            }
            DeclarationKind::ParamEntity { .. } => entities += 1,
            DeclarationKind::EntityReference(_) => {}
        }
        println!(
            "{:>4}:{:<3} {}",
            decl.location.line,
            decl.location.column,
            decl.to_dtd()
        );
    }
    println!();
    println!("{elements} elements, {lists} attribute lists, {attributes} attributes, {entities} parameter entities");

    // Printing and parsing again gives the same declarations back.
    let again = parse_dtd(&ast.to_dtd()).expect("canonical form parses");
    assert!(ast.same_structure(&again));
}
