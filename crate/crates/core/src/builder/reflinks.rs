//! ID/IDREF links. DTDs cannot say which ID an IDREF points at, so the links
//! come from a sidecar file:
//!
//! ```text
//! # comment
//! like.client -> client
//! ```
//!
//! Each line names `element.attribute` (split at the last `.`) and the element
//! owning the referenced ID.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::graph::{EdgeKind, NodeKind, RowKind, SchemaGraph};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RefAnnotation {
    pub source_element: String,
    pub source_attribute: String,
    pub target_element: String,
}

impl RefAnnotation {
    pub fn new(
        source_element: impl Into<String>,
        source_attribute: impl Into<String>,
        target_element: impl Into<String>,
    ) -> Self {
        RefAnnotation {
            source_element: source_element.into(),
            source_attribute: source_attribute.into(),
            target_element: target_element.into(),
        }
    }
}

impl fmt::Display for RefAnnotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}.{} -> {}",
            self.source_element, self.source_attribute, self.target_element
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct AnnotationError {
    pub line: u32,
    pub message: String,
}

pub fn parse_annotations(text: &str) -> Result<Vec<RefAnnotation>, AnnotationError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i as u32 + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |message: &str| AnnotationError {
            line,
            message: message.to_string(),
        };
        let (source, target) = content
            .split_once("->")
            .ok_or_else(|| err("expected `element.attribute -> element`"))?;
        let (element, attribute) = source
            .trim()
            .rsplit_once('.')
            .ok_or_else(|| err("source must be `element.attribute`"))?;
        let target = target.trim();
        if [element, attribute, target]
            .iter()
            .any(|s| s.is_empty() || s.chars().any(char::is_whitespace))
        {
            return Err(err("names must be non-empty and contain no spaces"));
        }
        out.push(RefAnnotation::new(element, attribute, target));
    }
    Ok(out)
}

/// Suggests links for IDREF/IDREFS rows that have none yet. With a single
/// ID-owning element every reference maps to it; otherwise a reference maps to
/// the ID owner whose name equals the attribute name. The result is sorted and
/// nothing is applied to the graph.
pub fn infer_ref_links_heuristic(g: &SchemaGraph) -> Vec<RefAnnotation> {
    let id_owners: BTreeSet<&str> = g
        .nodes()
        .filter_map(|n| match &n.kind {
            NodeKind::AttributeBlock { owner, rows }
                if rows.iter().any(|r| r.kind == RowKind::Id) =>
            {
                Some(owner.as_str())
            }
            _ => None,
        })
        .collect();
    let linked: BTreeSet<(&str, &str)> = g
        .edges()
        .iter()
        .filter_map(|e| match &e.kind {
            EdgeKind::RefLink { from_attribute, .. } => {
                Some((e.from.owner(), from_attribute.as_str()))
            }
            _ => None,
        })
        .collect();

    let mut proposals = BTreeSet::new();
    for node in g.nodes() {
        let NodeKind::AttributeBlock { owner, rows } = &node.kind else {
            continue;
        };
        for row in rows {
            if !matches!(row.kind, RowKind::Idref | RowKind::Idrefs)
                || linked.contains(&(owner.as_str(), row.name.as_str()))
            {
                continue;
            }
            let target = if id_owners.len() == 1 {
                id_owners.first().copied()
            } else {
                id_owners.get(row.name.as_str()).copied()
            };
            if let Some(target) = target {
                proposals.insert(RefAnnotation::new(owner.clone(), row.name.clone(), target));
            }
        }
    }
    proposals.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_lines_and_comments() {
        let text = "# links\n\nami.avec -> client   # friend\nréalise.le-film->film\n";
        assert_eq!(
            parse_annotations(text).unwrap(),
            vec![
                RefAnnotation::new("ami", "avec", "client"),
                RefAnnotation::new("réalise", "le-film", "film"),
            ]
        );
    }

    #[test]
    fn splits_at_last_dot() {
        assert_eq!(
            parse_annotations("a.b.c -> d").unwrap(),
            vec![RefAnnotation::new("a.b", "c", "d")]
        );
    }

    #[test]
    fn reports_bad_lines() {
        assert_eq!(parse_annotations("x\n").unwrap_err().line, 1);
        assert_eq!(parse_annotations("\nnodot -> y").unwrap_err().line, 2);
        assert_eq!(parse_annotations("a.b -> ").unwrap_err().line, 1);
        assert_eq!(parse_annotations("a.b -> c d").unwrap_err().line, 1);
    }
}
