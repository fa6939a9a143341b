use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use super::error::Location;

/// Iteration marker attached to a content particle.
///
/// The derived order (`ExactlyOne < Optional < ZeroOrMore < OneOrMore`) is the
/// order used wherever occurrences are serialized or sorted.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
#[serde(rename_all = "snake_case")]
pub enum Occurrence {
    #[default]
    ExactlyOne,
    Optional,
    ZeroOrMore,
    OneOrMore,
}

impl Occurrence {
    pub const ALL: [Occurrence; 4] = [
        Occurrence::ExactlyOne,
        Occurrence::Optional,
        Occurrence::ZeroOrMore,
        Occurrence::OneOrMore,
    ];

    /// The DTD suffix: `""`, `"?"`, `"*"` or `"+"`.
    pub fn marker(self) -> &'static str {
        match self {
            Occurrence::ExactlyOne => "",
            Occurrence::Optional => "?",
            Occurrence::ZeroOrMore => "*",
            Occurrence::OneOrMore => "+",
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Occurrence::ExactlyOne => "exactly one",
            Occurrence::Optional => "zero or one",
            Occurrence::ZeroOrMore => "zero or more",
            Occurrence::OneOrMore => "one or more",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ContentNode {
    Empty,
    Any,
    PCData,
    Name(String),
    Seq(Vec<ContentModel>),
    Alt(Vec<ContentModel>),
    /// `%name;` not yet expanded.
    EntityRef(String),
    /// Reference to an external parameter entity that was not resolved.
    ExternalRef(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ContentModel {
    pub node: ContentNode,
    pub occurrence: Occurrence,
}

impl ContentModel {
    pub fn new(node: ContentNode, occurrence: Occurrence) -> Self {
        ContentModel { node, occurrence }
    }

    pub fn one(node: ContentNode) -> Self {
        ContentModel::new(node, Occurrence::ExactlyOne)
    }

    pub fn name(name: impl Into<String>, occurrence: Occurrence) -> Self {
        ContentModel::new(ContentNode::Name(name.into()), occurrence)
    }

    pub fn seq(children: Vec<ContentModel>, occurrence: Occurrence) -> Self {
        ContentModel::new(ContentNode::Seq(children), occurrence)
    }

    pub fn alt(children: Vec<ContentModel>, occurrence: Occurrence) -> Self {
        ContentModel::new(ContentNode::Alt(children), occurrence)
    }

    pub fn children(&self) -> &[ContentModel] {
        match &self.node {
            ContentNode::Seq(c) | ContentNode::Alt(c) => c,
            _ => &[],
        }
    }

    /// Pre-order walk over this model and all nested particles.
    pub fn walk(&self, f: &mut impl FnMut(&ContentModel)) {
        f(self);
        for child in self.children() {
            child.walk(f);
        }
    }

    pub fn walk_mut(&mut self, f: &mut impl FnMut(&mut ContentModel)) {
        f(self);
        if let ContentNode::Seq(c) | ContentNode::Alt(c) = &mut self.node {
            for child in c {
                child.walk_mut(f);
            }
        }
    }

    /// Element names referenced anywhere in the model, in source order.
    pub fn referenced_names(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.walk_names(&mut out);
        out
    }

    fn walk_names<'a>(&'a self, out: &mut Vec<&'a str>) {
        match &self.node {
            ContentNode::Name(n) => out.push(n),
            ContentNode::Seq(c) | ContentNode::Alt(c) => {
                for child in c {
                    child.walk_names(out);
                }
            }
            _ => {}
        }
    }

    pub fn has_entity_refs(&self) -> bool {
        let mut found = false;
        self.walk(&mut |m| found |= matches!(m.node, ContentNode::EntityRef(_)));
        found
    }

    /// Canonical DTD text for a complete element content specification.
    pub fn to_dtd(&self) -> String {
        let mut out = String::new();
        match &self.node {
            ContentNode::Empty => out.push_str("EMPTY"),
            ContentNode::Any => out.push_str("ANY"),
            ContentNode::PCData => {
                out.push_str("(#PCDATA)");
                out.push_str(self.occurrence.marker());
            }
            ContentNode::Seq(_) | ContentNode::Alt(_) => self.write_particle(&mut out),
            ContentNode::EntityRef(n) | ContentNode::ExternalRef(n) => {
                let _ = write!(out, "%{n};");
            }
            ContentNode::Name(_) => {
                out.push('(');
                self.write_particle(&mut out);
                out.push(')');
            }
        }
        out
    }

    fn write_particle(&self, out: &mut String) {
        match &self.node {
            ContentNode::Empty => out.push_str("EMPTY"),
            ContentNode::Any => out.push_str("ANY"),
            ContentNode::PCData => out.push_str("#PCDATA"),
            ContentNode::Name(n) => out.push_str(n),
            ContentNode::EntityRef(n) | ContentNode::ExternalRef(n) => {
                let _ = write!(out, "%{n};");
            }
            ContentNode::Seq(children) | ContentNode::Alt(children) => {
                let sep = if matches!(self.node, ContentNode::Seq(_)) {
                    ", "
                } else {
                    " | "
                };
                out.push('(');
                for (i, child) in children.iter().enumerate() {
                    if i > 0 {
                        out.push_str(sep);
                    }
                    child.write_particle(out);
                }
                out.push(')');
            }
        }
        if !matches!(
            self.node,
            ContentNode::EntityRef(_) | ContentNode::ExternalRef(_)
        ) {
            out.push_str(self.occurrence.marker());
        }
    }
}

impl fmt::Display for ContentModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_dtd())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AttributeKind {
    CData,
    Id,
    IdRef,
    IdRefs,
    Entity,
    Entities,
    NmToken,
    NmTokens,
    Enumeration(Vec<String>),
    Notation(Vec<String>),
}

impl AttributeKind {
    pub fn is_reference(&self) -> bool {
        matches!(self, AttributeKind::IdRef | AttributeKind::IdRefs)
    }

    pub fn allowed_values(&self) -> Option<&[String]> {
        match self {
            AttributeKind::Enumeration(v) | AttributeKind::Notation(v) => Some(v),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DefaultDecl {
    Required,
    Implied,
    Fixed(String),
    Default(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AttributeSpec {
    pub name: String,
    pub kind: AttributeKind,
    pub default: DefaultDecl,
}

impl AttributeSpec {
    pub fn new(name: impl Into<String>, kind: AttributeKind, default: DefaultDecl) -> Self {
        AttributeSpec {
            name: name.into(),
            kind,
            default,
        }
    }

    pub fn to_dtd(&self) -> String {
        let mut out = self.name.clone();
        out.push(' ');
        match &self.kind {
            AttributeKind::CData => out.push_str("CDATA"),
            AttributeKind::Id => out.push_str("ID"),
            AttributeKind::IdRef => out.push_str("IDREF"),
            AttributeKind::IdRefs => out.push_str("IDREFS"),
            AttributeKind::Entity => out.push_str("ENTITY"),
            AttributeKind::Entities => out.push_str("ENTITIES"),
            AttributeKind::NmToken => out.push_str("NMTOKEN"),
            AttributeKind::NmTokens => out.push_str("NMTOKENS"),
            AttributeKind::Enumeration(values) => {
                let _ = write!(out, "({})", values.join(" | "));
            }
            AttributeKind::Notation(values) => {
                let _ = write!(out, "NOTATION ({})", values.join(" | "));
            }
        }
        out.push(' ');
        match &self.default {
            DefaultDecl::Required => out.push_str("#REQUIRED"),
            DefaultDecl::Implied => out.push_str("#IMPLIED"),
            DefaultDecl::Fixed(v) => {
                out.push_str("#FIXED ");
                out.push_str(&quote(v));
            }
            DefaultDecl::Default(v) => out.push_str(&quote(v)),
        }
        out
    }
}

fn quote(value: &str) -> String {
    if value.contains('"') {
        format!("'{value}'")
    } else {
        format!("\"{value}\"")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum EntityValue {
    Internal(String),
    External {
        system_id: String,
        public_id: Option<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DeclarationKind {
    Element {
        name: String,
        content: ContentModel,
    },
    AttList {
        element: String,
        attributes: Vec<AttributeSpec>,
        /// `%name;` references inside the list, keyed by the index of the
        /// attribute they precede. Empty once entities are expanded.
        entity_refs: Vec<(usize, String)>,
    },
    ParamEntity {
        name: String,
        value: EntityValue,
    },
    /// A `%name;` reference standing at declaration level.
    EntityReference(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Declaration {
    pub kind: DeclarationKind,
    pub location: Location,
}

impl Declaration {
    pub fn to_dtd(&self) -> String {
        match &self.kind {
            DeclarationKind::Element { name, content } => {
                format!("<!ELEMENT {name} {}>", content.to_dtd())
            }
            DeclarationKind::AttList {
                element,
                attributes,
                entity_refs,
            } => {
                let mut out = format!("<!ATTLIST {element}");
                for i in 0..=attributes.len() {
                    for (_, r) in entity_refs.iter().filter(|(at, _)| *at == i) {
                        let _ = write!(out, " %{r};");
                    }
                    if let Some(a) = attributes.get(i) {
                        out.push(' ');
                        out.push_str(&a.to_dtd());
                    }
                }
                out.push('>');
                out
            }
            DeclarationKind::ParamEntity { name, value } => match value {
                EntityValue::Internal(text) => format!("<!ENTITY % {name} {}>", quote(text)),
                EntityValue::External {
                    system_id,
                    public_id: None,
                } => format!("<!ENTITY % {name} SYSTEM {}>", quote(system_id)),
                EntityValue::External {
                    system_id,
                    public_id: Some(p),
                } => format!(
                    "<!ENTITY % {name} PUBLIC {} {}>",
                    quote(p),
                    quote(system_id)
                ),
            },
            DeclarationKind::EntityReference(name) => format!("%{name};"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnresolvedEntity {
    pub name: String,
    pub system_id: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DtdAst {
    pub declarations: Vec<Declaration>,
    pub unresolved_entities: Vec<UnresolvedEntity>,
}

impl DtdAst {
    pub fn elements(&self) -> impl Iterator<Item = (&str, &ContentModel, Location)> {
        self.declarations.iter().filter_map(|d| match &d.kind {
            DeclarationKind::Element { name, content } => {
                Some((name.as_str(), content, d.location))
            }
            _ => None,
        })
    }

    pub fn attribute_lists(&self) -> impl Iterator<Item = (&str, &[AttributeSpec], Location)> {
        self.declarations.iter().filter_map(|d| match &d.kind {
            DeclarationKind::AttList {
                element,
                attributes,
                ..
            } => Some((element.as_str(), attributes.as_slice(), d.location)),
            _ => None,
        })
    }

    /// Canonical DTD text, one declaration per line.
    pub fn to_dtd(&self) -> String {
        let mut out = String::new();
        for d in &self.declarations {
            out.push_str(&d.to_dtd());
            out.push('\n');
        }
        out
    }

    /// Equality that ignores source locations.
    pub fn same_structure(&self, other: &DtdAst) -> bool {
        self.declarations.len() == other.declarations.len()
            && self
                .declarations
                .iter()
                .zip(&other.declarations)
                .all(|(a, b)| a.kind == b.kind)
            && self.unresolved_entities == other.unresolved_entities
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn occurrence_order() {
        let mut v = vec![
            Occurrence::OneOrMore,
            Occurrence::ExactlyOne,
            Occurrence::ZeroOrMore,
            Occurrence::Optional,
        ];
        v.sort();
        assert_eq!(v, Occurrence::ALL);
    }

    #[test]
    fn prints_nested_groups() {
        let m = ContentModel::seq(
            vec![
                ContentModel::alt(
                    vec![
                        ContentModel::name("gratuit", Occurrence::ExactlyOne),
                        ContentModel::name("prémium-standard", Occurrence::ExactlyOne),
                    ],
                    Occurrence::ExactlyOne,
                ),
                ContentModel::name("liste-mots-clés", Occurrence::Optional),
            ],
            Occurrence::ExactlyOne,
        );
        assert_eq!(
            m.to_dtd(),
            "((gratuit | prémium-standard), liste-mots-clés?)"
        );
    }

    #[test]
    fn prints_pcdata_forms() {
        assert_eq!(ContentModel::one(ContentNode::PCData).to_dtd(), "(#PCDATA)");
        let mixed = ContentModel::alt(
            vec![
                ContentModel::one(ContentNode::PCData),
                ContentModel::name("b", Occurrence::ExactlyOne),
            ],
            Occurrence::ZeroOrMore,
        );
        assert_eq!(mixed.to_dtd(), "(#PCDATA | b)*");
    }

    #[test]
    fn prints_attributes() {
        let a = AttributeSpec::new(
            "stars",
            AttributeKind::Enumeration(vec!["0".into(), "1".into()]),
            DefaultDecl::Default("0".into()),
        );
        assert_eq!(a.to_dtd(), "stars (0 | 1) \"0\"");
        let f = AttributeSpec::new("v", AttributeKind::CData, DefaultDecl::Fixed("a\"b".into()));
        assert_eq!(f.to_dtd(), "v CDATA #FIXED 'a\"b'");
    }
}
