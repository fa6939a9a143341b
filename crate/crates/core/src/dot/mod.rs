//! Graphviz DOT output.

mod check;
mod emit;
mod style;

pub use check::{check_dot, is_valid_arrow, DotStats, DotSyntaxError};
pub use emit::{emit_dot, emit_legend, quote, DotError};
pub use style::{parse_occurrence, Arrow, GlyphMap, RankDir, RenderStyle, StyleError};
