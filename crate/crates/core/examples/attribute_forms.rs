//! Formats attribute definitions the way attribute blocks display them.

use dtdgraph::builder::format_attribute;
use dtdgraph::dtd::parse_dtd;

const LIST: &str = r#"
<!ATTLIST film
    id-film        ID               #REQUIRED
    titre          CDATA            #REQUIRED
    date-modif     CDATA            #IMPLIED
    clients        IDREFS           #IMPLIED
    genre          (drame|comédie)  "drame"
    étoiles        CDATA            '0'
    version        CDATA            #FIXED "2"
    format         NOTATION (mp4|webm) #IMPLIED
    mots           NMTOKENS         #IMPLIED>
"#;

fn main() {
    let ast = parse_dtd(LIST).unwrap();
    for (_, attributes, _) in ast.attribute_lists() {
        for spec in attributes {
            let row = format_attribute(spec);
            let mut marks = String::new();
            if row.underline {
                marks.push_str(" underlined");
            }
            if row.fixed {
                marks.push_str(" fixed");
            }
            println!(
                "{:<40} {:<22} {:?}{marks}",
                spec.to_dtd(),
                row.text,
                row.kind
            );
        }
    }
}
