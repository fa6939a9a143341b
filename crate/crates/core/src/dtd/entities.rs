//! Parameter-entity expansion.
//!
//! References are replaced textually: the declaration holding a `%name;` is
//! printed in canonical form, the fully expanded replacement text is spliced
//! in, and the result is parsed again. External entities are read only
//! through an [`EntityResolver`]; when none can supply the text, the
//! reference survives as [`ContentNode::ExternalRef`] and the entity is listed
//! in [`DtdAst::unresolved_entities`].

use std::collections::{BTreeMap, HashMap, HashSet};
use std::hash::BuildHasher;

use super::ast::{
    ContentModel, ContentNode, Declaration, DeclarationKind, DtdAst, EntityValue, UnresolvedEntity,
};
use super::error::{DtdError, Location};
use super::lexer::{tokenize, TokenKind};
use super::parser::{parse_content_model, parse_dtd};

/// Maps a system identifier to the text of the resource. Implementations must
/// be local lookups.
pub trait EntityResolver {
    fn resolve(&self, system_id: &str) -> Option<String>;
}

impl<S: BuildHasher> EntityResolver for HashMap<String, String, S> {
    fn resolve(&self, system_id: &str) -> Option<String> {
        self.get(system_id).cloned()
    }
}

impl EntityResolver for BTreeMap<String, String> {
    fn resolve(&self, system_id: &str) -> Option<String> {
        self.get(system_id).cloned()
    }
}

pub fn expand_parameter_entities(
    ast: &DtdAst,
    resolver: Option<&dyn EntityResolver>,
) -> Result<DtdAst, DtdError> {
    let mut ex = Expander {
        table: HashMap::new(),
        resolver,
        expanded: HashMap::new(),
        unresolved: ast.unresolved_entities.clone(),
        stack: Vec::new(),
    };
    ex.declare_all(&ast.declarations);
    let mut declarations = Vec::new();
    let mut elements = HashSet::new();
    ex.expand_declarations(&ast.declarations, None, &mut declarations, &mut elements)?;
    Ok(DtdAst {
        declarations,
        unresolved_entities: ex.unresolved,
    })
}

struct Expander<'r> {
    table: HashMap<String, EntityValue>,
    resolver: Option<&'r dyn EntityResolver>,
    /// Fully expanded replacement text; `None` for unresolved externals.
    expanded: HashMap<String, Option<String>>,
    unresolved: Vec<UnresolvedEntity>,
    stack: Vec<String>,
}

impl Expander<'_> {
    fn declare_all(&mut self, decls: &[Declaration]) {
        for d in decls {
            if let DeclarationKind::ParamEntity { name, value } = &d.kind {
                self.table
                    .entry(name.clone())
                    .or_insert_with(|| value.clone());
            }
        }
    }

    /// `site` overrides declaration locations for text pulled in from an entity.
    fn expand_declarations(
        &mut self,
        decls: &[Declaration],
        site: Option<Location>,
        out: &mut Vec<Declaration>,
        elements: &mut HashSet<String>,
    ) -> Result<(), DtdError> {
        for d in decls {
            let at = site.unwrap_or(d.location);
            match &d.kind {
                DeclarationKind::EntityReference(name) => {
                    let Some(text) = self.replacement(name, at)? else {
                        continue;
                    };
                    let included = parse_dtd(&text).map_err(|e| in_entity(name, at, e))?;
                    self.declare_all(&included.declarations);
                    self.stack.push(name.clone());
                    let result =
                        self.expand_declarations(&included.declarations, Some(at), out, elements);
                    self.stack.pop();
                    result?;
                }
                DeclarationKind::Element { name, content } => {
                    if !elements.insert(name.clone()) {
                        return Err(DtdError::DuplicateElement {
                            name: name.clone(),
                            at,
                        });
                    }
                    let content = if content.has_entity_refs() {
                        self.expand_content(content, at)?
                    } else {
                        content.clone()
                    };
                    out.push(Declaration {
                        kind: DeclarationKind::Element {
                            name: name.clone(),
                            content,
                        },
                        location: at,
                    });
                }
                DeclarationKind::AttList { entity_refs, .. } if !entity_refs.is_empty() => {
                    let first = entity_refs[0].1.clone();
                    let text = self.substitute(&d.to_dtd(), at)?;
                    let reparsed = parse_dtd(&text).map_err(|e| in_entity(&first, at, e))?;
                    for decl in reparsed.declarations {
                        let kind = match decl.kind {
                            // Leftover references are unresolved externals.
                            DeclarationKind::AttList {
                                element,
                                attributes,
                                ..
                            } => DeclarationKind::AttList {
                                element,
                                attributes,
                                entity_refs: Vec::new(),
                            },
                            _ => {
                                return Err(DtdError::Syntax {
                                    expected: "attribute definitions".into(),
                                    found: format!("replacement text of `%{first};`"),
                                    at,
                                })
                            }
                        };
                        out.push(Declaration { kind, location: at });
                    }
                }
                _ => out.push(Declaration {
                    kind: d.kind.clone(),
                    location: at,
                }),
            }
        }
        Ok(())
    }

    fn expand_content(
        &mut self,
        content: &ContentModel,
        at: Location,
    ) -> Result<ContentModel, DtdError> {
        let mut first = None;
        content.walk(&mut |m| {
            if let (None, ContentNode::EntityRef(n)) = (&first, &m.node) {
                first = Some(n.clone());
            }
        });
        let first = first.unwrap_or_default();
        let text = self.substitute(&content.to_dtd(), at)?;
        let tokens = tokenize(&text).map_err(|e| in_entity(&first, at, e))?;
        let mut model = parse_content_model(&tokens).map_err(|e| in_entity(&first, at, e))?;
        model.walk_mut(&mut |m| {
            if let ContentNode::EntityRef(n) = &m.node {
                m.node = ContentNode::ExternalRef(n.clone());
            }
        });
        Ok(model)
    }

    /// Replaces every `%name;` in `text` (outside literals) by its expanded
    /// replacement, padded with one space on each side. References to
    /// unresolved external entities are left in place.
    fn substitute(&mut self, text: &str, at: Location) -> Result<String, DtdError> {
        let current = self.stack.last().cloned().unwrap_or_default();
        let tokens = tokenize(text).map_err(|e| in_entity(&current, at, e))?;
        let mut out = String::with_capacity(text.len());
        let mut copied = 0;
        let mut i = 0;
        while i < tokens.len() {
            let is_ref = tokens[i].kind == TokenKind::Percent
                && tokens
                    .get(i + 1)
                    .is_some_and(|t| t.kind == TokenKind::Name && t.offset == tokens[i].end())
                && tokens.get(i + 2).is_some_and(|t| {
                    t.kind == TokenKind::Semicolon && t.offset == tokens[i + 1].end()
                });
            if !is_ref {
                i += 1;
                continue;
            }
            let name = tokens[i + 1].lexeme.clone();
            if let Some(replacement) = self.replacement(&name, at)? {
                out.push_str(&text[copied..tokens[i].offset]);
                out.push(' ');
                out.push_str(&replacement);
                out.push(' ');
                copied = tokens[i + 2].end();
            }
            i += 3;
        }
        out.push_str(&text[copied..]);
        Ok(out)
    }

    fn replacement(&mut self, name: &str, at: Location) -> Result<Option<String>, DtdError> {
        if let Some(pos) = self.stack.iter().position(|n| n == name) {
            let mut cycle = self.stack[pos..].to_vec();
            cycle.push(name.to_string());
            return Err(DtdError::RecursiveEntity { cycle, at });
        }
        if let Some(done) = self.expanded.get(name) {
            return Ok(done.clone());
        }
        let value = self
            .table
            .get(name)
            .cloned()
            .ok_or_else(|| DtdError::UndeclaredEntity {
                name: name.to_string(),
                at,
            })?;
        let raw = match value {
            EntityValue::Internal(text) => Some(text),
            EntityValue::External { system_id, .. } => {
                let text = self.resolver.and_then(|r| r.resolve(&system_id));
                if text.is_none() {
                    let entry = UnresolvedEntity {
                        name: name.to_string(),
                        system_id,
                    };
                    if !self.unresolved.contains(&entry) {
                        self.unresolved.push(entry);
                    }
                }
                text
            }
        };
        let result = match raw {
            Some(text) => {
                self.stack.push(name.to_string());
                let r = self.substitute(&text, at);
                self.stack.pop();
                Some(r?)
            }
            None => None,
        };
        self.expanded.insert(name.to_string(), result.clone());
        Ok(result)
    }
}

fn in_entity(entity: &str, at: Location, source: DtdError) -> DtdError {
    match source {
        e @ (DtdError::RecursiveEntity { .. }
        | DtdError::UndeclaredEntity { .. }
        | DtdError::InEntity { .. }) => e,
        other => DtdError::InEntity {
            entity: entity.to_string(),
            at,
            source: Box::new(other),
        },
    }
}
