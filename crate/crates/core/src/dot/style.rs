use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::dtd::Occurrence;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StyleError {
    #[error("`{0}` is not an arrow made of crow, tee, odot and none (at most 4 shapes)")]
    BadArrow(String),
    #[error("`{0}` is not a layout direction (TB, LR, BT or RL)")]
    BadRankDir(String),
    #[error("`{0}` is not an occurrence (one, ?, *, +)")]
    BadOccurrence(String),
}

/// An arrowhead built from the crow's-foot primitives, e.g. `crowodot`.
/// The first shape sits against the node.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow(String);

impl Arrow {
    const SHAPES: [&'static str; 4] = ["crow", "tee", "odot", "none"];

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl FromStr for Arrow {
    type Err = StyleError;

    fn from_str(s: &str) -> Result<Self, StyleError> {
        let mut rest = s;
        let mut count = 0;
        while !rest.is_empty() {
            let shape = Arrow::SHAPES
                .iter()
                .find(|p| rest.starts_with(*p))
                .ok_or_else(|| StyleError::BadArrow(s.to_string()))?;
            rest = &rest[shape.len()..];
            count += 1;
        }
        if count == 0 || count > 4 {
            return Err(StyleError::BadArrow(s.to_string()));
        }
        Ok(Arrow(s.to_string()))
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Arrowhead per occurrence. Every occurrence has one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlyphMap {
    pub exactly_one: Arrow,
    pub optional: Arrow,
    pub zero_or_more: Arrow,
    pub one_or_more: Arrow,
}

impl GlyphMap {
    pub fn get(&self, occ: Occurrence) -> &Arrow {
        match occ {
            Occurrence::ExactlyOne => &self.exactly_one,
            Occurrence::Optional => &self.optional,
            Occurrence::ZeroOrMore => &self.zero_or_more,
            Occurrence::OneOrMore => &self.one_or_more,
        }
    }

    pub fn set(&mut self, occ: Occurrence, arrow: Arrow) {
        match occ {
            Occurrence::ExactlyOne => self.exactly_one = arrow,
            Occurrence::Optional => self.optional = arrow,
            Occurrence::ZeroOrMore => self.zero_or_more = arrow,
            Occurrence::OneOrMore => self.one_or_more = arrow,
        }
    }
}

impl Default for GlyphMap {
    fn default() -> Self {
        let a = |s: &str| Arrow(s.to_string());
        GlyphMap {
            exactly_one: a("teetee"),
            optional: a("teeodot"),
            zero_or_more: a("crowodot"),
            one_or_more: a("crowtee"),
        }
    }
}

/// Parses the occurrence names accepted on the command line: `one`, `?`,
/// `*`, `+` or the snake_case names.
pub fn parse_occurrence(s: &str) -> Result<Occurrence, StyleError> {
    match s {
        "one" | "1" | "exactly_one" => Ok(Occurrence::ExactlyOne),
        "?" | "optional" => Ok(Occurrence::Optional),
        "*" | "zero_or_more" => Ok(Occurrence::ZeroOrMore),
        "+" | "one_or_more" => Ok(Occurrence::OneOrMore),
        _ => Err(StyleError::BadOccurrence(s.to_string())),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RankDir {
    #[default]
    TopBottom,
    LeftRight,
    BottomTop,
    RightLeft,
}

impl RankDir {
    pub fn as_str(self) -> &'static str {
        match self {
            RankDir::TopBottom => "TB",
            RankDir::LeftRight => "LR",
            RankDir::BottomTop => "BT",
            RankDir::RightLeft => "RL",
        }
    }
}

impl FromStr for RankDir {
    type Err = StyleError;

    fn from_str(s: &str) -> Result<Self, StyleError> {
        match s.to_ascii_uppercase().as_str() {
            "TB" => Ok(RankDir::TopBottom),
            "LR" => Ok(RankDir::LeftRight),
            "BT" => Ok(RankDir::BottomTop),
            "RL" => Ok(RankDir::RightLeft),
            _ => Err(StyleError::BadRankDir(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderStyle {
    pub element_fill: String,
    pub text_fill: String,
    pub attribute_fill: String,
    pub subgroup_fill: String,
    pub glyph_map: GlyphMap,
    pub rankdir: RankDir,
    pub show_attributes: bool,
    /// Ref links are only drawn when attributes are shown as well.
    pub show_reflinks: bool,
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle {
            element_fill: "green".into(),
            text_fill: "white".into(),
            attribute_fill: "yellow".into(),
            subgroup_fill: "orange".into(),
            glyph_map: GlyphMap::default(),
            rankdir: RankDir::default(),
            show_attributes: true,
            show_reflinks: true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrows() {
        for ok in ["crow", "teetee", "crowodot", "nonetee", "teeteeteetee"] {
            assert_eq!(ok.parse::<Arrow>().unwrap().as_str(), ok);
        }
        for bad in ["", "normal", "crowx", "onormal", "teeteeteeteetee"] {
            assert!(bad.parse::<Arrow>().is_err(), "{bad}");
        }
    }

    #[test]
    fn default_glyphs() {
        let g = GlyphMap::default();
        let names: Vec<_> = Occurrence::ALL.iter().map(|o| g.get(*o).as_str()).collect();
        assert_eq!(names, ["teetee", "teeodot", "crowodot", "crowtee"]);
    }

    #[test]
    fn occurrence_names() {
        assert_eq!(parse_occurrence("+").unwrap(), Occurrence::OneOrMore);
        assert_eq!(parse_occurrence("optional").unwrap(), Occurrence::Optional);
        assert!(parse_occurrence("x").is_err());
        assert_eq!("lr".parse::<RankDir>().unwrap(), RankDir::LeftRight);
    }
}
