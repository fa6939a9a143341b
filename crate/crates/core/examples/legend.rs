//! Prints the legend graph: one sample per node kind and one edge per
//! occurrence glyph.

use dtdgraph::dot::{emit_legend, RenderStyle};

fn main() {
    let style = RenderStyle::default();
    for occ in ["one", "?", "*", "+"] {
        let occ = dtdgraph::dot::parse_occurrence(occ).unwrap();
        eprintln!("{:<14} {}", occ.describe(), style.glyph_map.get(occ));
    }
    print!("{}", emit_legend(&style));
}
