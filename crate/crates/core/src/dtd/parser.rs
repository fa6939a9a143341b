//! Recursive-descent parser for DTD declarations (internal-subset syntax).

use std::collections::HashSet;

use super::ast::{
    AttributeKind, AttributeSpec, ContentModel, ContentNode, Declaration, DeclarationKind,
    DefaultDecl, DtdAst, EntityValue, Occurrence,
};
use super::error::{DtdError, Location};
use super::lexer::{is_valid_name, tokenize, MarkupKind, Token, TokenKind};

/// Parses DTD text into its declarations, in source order.
///
/// Comments and processing instructions (including a leading XML
/// declaration) are skipped. `<!NOTATION` and general-entity declarations are
/// consumed but not kept.
pub fn parse_dtd(input: &str) -> Result<DtdAst, DtdError> {
    let tokens = tokenize(input)?;
    let mut parser = Parser::new(&tokens, end_location(input));
    let mut ast = DtdAst::default();
    let mut seen = HashSet::new();

    while let Some(tok) = parser.peek() {
        let location = tok.location();
        let kind = match tok.kind {
            TokenKind::Comment | TokenKind::ProcessingInstruction => {
                parser.bump();
                continue;
            }
            TokenKind::MarkupOpen(MarkupKind::Element) => parser.element_decl()?,
            TokenKind::MarkupOpen(MarkupKind::AttList) => parser.attlist_decl()?,
            TokenKind::MarkupOpen(MarkupKind::Entity) => match parser.entity_decl()? {
                Some(kind) => kind,
                None => continue,
            },
            TokenKind::MarkupOpen(MarkupKind::Notation) => {
                parser.bump();
                parser.skip_to_close()?;
                continue;
            }
            TokenKind::Percent => DeclarationKind::EntityReference(parser.entity_ref()?),
            _ => return Err(parser.unexpected("a declaration")),
        };
        if let DeclarationKind::Element { name, .. } = &kind {
            if !seen.insert(name.clone()) {
                return Err(DtdError::DuplicateElement {
                    name: name.clone(),
                    at: location,
                });
            }
        }
        ast.declarations.push(Declaration { kind, location });
    }
    Ok(ast)
}

/// Parses a complete content specification: `EMPTY`, `ANY`, a `%ref;`, or a
/// parenthesized group with an optional occurrence marker.
pub fn parse_content_model(tokens: &[Token]) -> Result<ContentModel, DtdError> {
    let eof = tokens
        .last()
        .map(|t| Location::new(t.line, t.column))
        .unwrap_or_default();
    let mut parser = Parser::new(tokens, eof);
    let model = parser.content_spec()?;
    if let Some(extra) = parser.peek() {
        if extra.kind == TokenKind::RParen {
            return Err(DtdError::UnbalancedParen {
                at: extra.location(),
            });
        }
        return Err(DtdError::TrailingTokens {
            found: extra.to_string(),
            at: extra.location(),
        });
    }
    Ok(model)
}

fn end_location(input: &str) -> Location {
    let line = input.matches('\n').count() as u32 + 1;
    let last = input.rsplit('\n').next().unwrap_or("");
    Location::new(line, last.chars().count() as u32 + 1)
}

struct Parser<'t> {
    tokens: &'t [Token],
    pos: usize,
    eof: Location,
}

impl<'t> Parser<'t> {
    fn new(tokens: &'t [Token], eof: Location) -> Self {
        Parser {
            tokens,
            pos: 0,
            eof,
        }
    }

    fn peek(&self) -> Option<&'t Token> {
        self.tokens.get(self.pos)
    }

    fn peek_kind(&self) -> Option<TokenKind> {
        self.peek().map(|t| t.kind)
    }

    fn bump(&mut self) -> Option<&'t Token> {
        let t = self.tokens.get(self.pos)?;
        self.pos += 1;
        Some(t)
    }

    fn unexpected(&self, expected: &str) -> DtdError {
        match self.peek() {
            Some(t) => DtdError::Syntax {
                expected: expected.to_string(),
                found: t.to_string(),
                at: t.location(),
            },
            None => DtdError::Syntax {
                expected: expected.to_string(),
                found: "end of input".to_string(),
                at: self.eof,
            },
        }
    }

    fn expect(&mut self, kind: TokenKind, what: &str) -> Result<&'t Token, DtdError> {
        match self.peek() {
            Some(t) if t.kind == kind => {
                self.pos += 1;
                Ok(t)
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn name(&mut self, what: &str) -> Result<String, DtdError> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Name && is_valid_name(&t.lexeme) => {
                self.pos += 1;
                Ok(t.lexeme.clone())
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn nmtoken(&mut self, what: &str) -> Result<String, DtdError> {
        Ok(self.expect(TokenKind::Name, what)?.lexeme.clone())
    }

    fn keyword(&mut self, word: &str) -> bool {
        if self.peek().is_some_and(|t| t.is_name(word)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn close(&mut self) -> Result<(), DtdError> {
        self.expect(TokenKind::Close, "`>`").map(|_| ())
    }

    fn skip_to_close(&mut self) -> Result<(), DtdError> {
        while let Some(t) = self.bump() {
            if t.kind == TokenKind::Close {
                return Ok(());
            }
        }
        Err(self.unexpected("`>`"))
    }

    /// `%name;` with no whitespace between the three parts.
    fn entity_ref(&mut self) -> Result<String, DtdError> {
        let percent = self.expect(TokenKind::Percent, "`%`")?;
        let name = match self.peek() {
            Some(t) if t.kind == TokenKind::Name && t.offset == percent.end() => t,
            _ => return Err(self.unexpected("entity name directly after `%`")),
        };
        self.pos += 1;
        match self.peek() {
            Some(t) if t.kind == TokenKind::Semicolon && t.offset == name.end() => {
                self.pos += 1;
                Ok(name.lexeme.clone())
            }
            _ => Err(self.unexpected("`;` directly after entity name")),
        }
    }

    fn element_decl(&mut self) -> Result<DeclarationKind, DtdError> {
        self.bump();
        let name = self.name("element name")?;
        let start = self.pos;
        while self.peek().is_some_and(|t| t.kind != TokenKind::Close) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.unexpected("content specification"));
        }
        let content = parse_content_model(&self.tokens[start..self.pos])?;
        self.close()?;
        Ok(DeclarationKind::Element { name, content })
    }

    fn content_spec(&mut self) -> Result<ContentModel, DtdError> {
        match self.peek_kind() {
            Some(TokenKind::Name) if self.keyword("EMPTY") => {
                Ok(ContentModel::one(ContentNode::Empty))
            }
            Some(TokenKind::Name) if self.keyword("ANY") => Ok(ContentModel::one(ContentNode::Any)),
            Some(TokenKind::Percent) => Ok(ContentModel::one(ContentNode::EntityRef(
                self.entity_ref()?,
            ))),
            Some(TokenKind::LParen) => self.group(),
            _ => Err(self.unexpected("`EMPTY`, `ANY` or `(`")),
        }
    }

    fn occurrence(&mut self) -> Occurrence {
        let occ = match self.peek_kind() {
            Some(TokenKind::Question) => Occurrence::Optional,
            Some(TokenKind::Star) => Occurrence::ZeroOrMore,
            Some(TokenKind::Plus) => Occurrence::OneOrMore,
            _ => return Occurrence::ExactlyOne,
        };
        self.pos += 1;
        occ
    }

    /// Parses `( ... )` plus its trailing marker. The opening paren is next.
    fn group(&mut self) -> Result<ContentModel, DtdError> {
        let open = self.expect(TokenKind::LParen, "`(`")?;
        let unbalanced = DtdError::UnbalancedParen {
            at: open.location(),
        };

        if self.peek_kind() == Some(TokenKind::Hash) {
            return self.mixed(open);
        }
        match self.peek_kind() {
            Some(TokenKind::RParen) => {
                return Err(DtdError::EmptyGroup {
                    at: open.location(),
                })
            }
            None => return Err(unbalanced),
            _ => {}
        }

        let mut children = vec![self.particle()?];
        let mut separator: Option<TokenKind> = None;
        loop {
            match self.peek() {
                None => return Err(unbalanced),
                Some(t) if t.kind == TokenKind::RParen => {
                    self.pos += 1;
                    break;
                }
                Some(t) if matches!(t.kind, TokenKind::Comma | TokenKind::Pipe) => {
                    match separator {
                        Some(s) if s != t.kind => {
                            return Err(DtdError::MixedSeqAlt { at: t.location() })
                        }
                        _ => separator = Some(t.kind),
                    }
                    self.pos += 1;
                    if self.peek().is_none() {
                        return Err(unbalanced);
                    }
                    children.push(self.particle()?);
                }
                Some(_) => return Err(self.unexpected("`,`, `|` or `)`")),
            }
        }
        let occurrence = self.occurrence();
        let node = match separator {
            Some(TokenKind::Pipe) => ContentNode::Alt(children),
            _ => ContentNode::Seq(children),
        };
        Ok(ContentModel::new(node, occurrence))
    }

    fn particle(&mut self) -> Result<ContentModel, DtdError> {
        match self.peek_kind() {
            Some(TokenKind::LParen) => self.group(),
            Some(TokenKind::Percent) => Ok(ContentModel::one(ContentNode::EntityRef(
                self.entity_ref()?,
            ))),
            Some(TokenKind::Hash) => {
                Err(self.unexpected("element name (`#PCDATA` must come first in its group)"))
            }
            _ => {
                let name = self.name("element name or `(`")?;
                Ok(ContentModel::name(name, self.occurrence()))
            }
        }
    }

    /// `(#PCDATA)`, `(#PCDATA)*` or `(#PCDATA | a | b)*`. The `(` is consumed.
    fn mixed(&mut self, open: &Token) -> Result<ContentModel, DtdError> {
        self.expect(TokenKind::Hash, "`#`")?;
        if !self.keyword("PCDATA") {
            return Err(self.unexpected("`PCDATA`"));
        }
        let mut children = vec![ContentModel::one(ContentNode::PCData)];
        loop {
            match self.peek_kind() {
                Some(TokenKind::RParen) => {
                    self.pos += 1;
                    break;
                }
                Some(TokenKind::Pipe) => {
                    self.pos += 1;
                    if self.peek_kind() == Some(TokenKind::Percent) {
                        children.push(ContentModel::one(ContentNode::EntityRef(
                            self.entity_ref()?,
                        )));
                    } else {
                        children.push(ContentModel::name(
                            self.name("element name")?,
                            Occurrence::ExactlyOne,
                        ));
                    }
                }
                Some(TokenKind::Comma) => {
                    return Err(DtdError::MixedSeqAlt {
                        at: self.peek().unwrap().location(),
                    })
                }
                None => {
                    return Err(DtdError::UnbalancedParen {
                        at: open.location(),
                    })
                }
                Some(_) => return Err(self.unexpected("`|` or `)`")),
            }
        }
        let marker_at = self.peek().map(Token::location);
        let occurrence = self.occurrence();
        if children.len() == 1 {
            return match occurrence {
                Occurrence::ExactlyOne | Occurrence::ZeroOrMore => {
                    Ok(ContentModel::new(ContentNode::PCData, occurrence))
                }
                _ => Err(DtdError::Syntax {
                    expected: "`*` or nothing after `(#PCDATA)`".into(),
                    found: format!("`{}`", occurrence.marker()),
                    at: marker_at.unwrap_or(self.eof),
                }),
            };
        }
        if occurrence != Occurrence::ZeroOrMore {
            return Err(match self.tokens.get(self.pos.wrapping_sub(1)) {
                Some(t) if occurrence != Occurrence::ExactlyOne => DtdError::Syntax {
                    expected: "`*` after mixed content".into(),
                    found: t.to_string(),
                    at: t.location(),
                },
                _ => self.unexpected("`*` after mixed content"),
            });
        }
        Ok(ContentModel::alt(children, Occurrence::ZeroOrMore))
    }

    fn attlist_decl(&mut self) -> Result<DeclarationKind, DtdError> {
        self.bump();
        let element = self.name("element name")?;
        let mut attributes = Vec::new();
        let mut entity_refs = Vec::new();
        loop {
            match self.peek_kind() {
                Some(TokenKind::Close) => {
                    self.pos += 1;
                    break;
                }
                Some(TokenKind::Percent) => {
                    entity_refs.push((attributes.len(), self.entity_ref()?));
                }
                _ => attributes.push(self.attribute_def()?),
            }
        }
        Ok(DeclarationKind::AttList {
            element,
            attributes,
            entity_refs,
        })
    }

    fn attribute_def(&mut self) -> Result<AttributeSpec, DtdError> {
        let name = self.name("attribute name or `>`")?;
        let kind = match self.peek() {
            Some(t) if t.kind == TokenKind::LParen => {
                AttributeKind::Enumeration(self.value_list(false)?)
            }
            Some(t) if t.kind == TokenKind::Name => {
                let kind = match t.lexeme.as_str() {
                    "CDATA" => AttributeKind::CData,
                    "ID" => AttributeKind::Id,
                    "IDREF" => AttributeKind::IdRef,
                    "IDREFS" => AttributeKind::IdRefs,
                    "ENTITY" => AttributeKind::Entity,
                    "ENTITIES" => AttributeKind::Entities,
                    "NMTOKEN" => AttributeKind::NmToken,
                    "NMTOKENS" => AttributeKind::NmTokens,
                    "NOTATION" => {
                        self.pos += 1;
                        let values = self.value_list(true)?;
                        return self.finish_attribute(name, AttributeKind::Notation(values));
                    }
                    _ => return Err(self.unexpected("attribute type")),
                };
                self.pos += 1;
                kind
            }
            _ => return Err(self.unexpected("attribute type")),
        };
        self.finish_attribute(name, kind)
    }

    fn finish_attribute(
        &mut self,
        name: String,
        kind: AttributeKind,
    ) -> Result<AttributeSpec, DtdError> {
        let at = self.peek().map(Token::location).unwrap_or(self.eof);
        let default = match self.peek_kind() {
            Some(TokenKind::Hash) => {
                self.pos += 1;
                if self.keyword("REQUIRED") {
                    DefaultDecl::Required
                } else if self.keyword("IMPLIED") {
                    DefaultDecl::Implied
                } else if self.keyword("FIXED") {
                    let lit = self.expect(TokenKind::Literal, "quoted default value")?;
                    DefaultDecl::Fixed(lit.literal_value().to_string())
                } else {
                    return Err(self.unexpected("`REQUIRED`, `IMPLIED` or `FIXED`"));
                }
            }
            Some(TokenKind::Literal) => {
                DefaultDecl::Default(self.bump().unwrap().literal_value().to_string())
            }
            _ => return Err(self.unexpected("default declaration")),
        };
        if let (Some(values), DefaultDecl::Default(v) | DefaultDecl::Fixed(v)) =
            (kind.allowed_values(), &default)
        {
            if !values.contains(v) {
                return Err(DtdError::InvalidDefault {
                    attribute: name,
                    value: v.clone(),
                    at,
                });
            }
        }
        Ok(AttributeSpec {
            name,
            kind,
            default,
        })
    }

    /// `( v1 | v2 | ... )`; `names` requires strict names (NOTATION lists).
    fn value_list(&mut self, names: bool) -> Result<Vec<String>, DtdError> {
        let open = self.expect(TokenKind::LParen, "`(`")?;
        if self.peek_kind() == Some(TokenKind::RParen) {
            return Err(DtdError::EmptyGroup {
                at: open.location(),
            });
        }
        let mut values = Vec::new();
        loop {
            values.push(if names {
                self.name("notation name")?
            } else {
                self.nmtoken("enumerated value")?
            });
            match self.peek_kind() {
                Some(TokenKind::Pipe) => self.pos += 1,
                Some(TokenKind::RParen) => {
                    self.pos += 1;
                    return Ok(values);
                }
                Some(TokenKind::Comma) => {
                    return Err(DtdError::MixedSeqAlt {
                        at: self.peek().unwrap().location(),
                    })
                }
                None => {
                    return Err(DtdError::UnbalancedParen {
                        at: open.location(),
                    })
                }
                _ => return Err(self.unexpected("`|` or `)`")),
            }
        }
    }

    /// Returns `None` for general entities, which are consumed and dropped.
    fn entity_decl(&mut self) -> Result<Option<DeclarationKind>, DtdError> {
        self.bump();
        if self.peek_kind() != Some(TokenKind::Percent) {
            self.name("entity name")?;
            self.skip_to_close()?;
            return Ok(None);
        }
        self.pos += 1;
        let name = self.name("parameter entity name")?;
        let value = if self.keyword("SYSTEM") {
            let sys = self.expect(TokenKind::Literal, "system identifier")?;
            EntityValue::External {
                system_id: sys.literal_value().to_string(),
                public_id: None,
            }
        } else if self.keyword("PUBLIC") {
            let public = self.expect(TokenKind::Literal, "public identifier")?;
            let sys = self.expect(TokenKind::Literal, "system identifier")?;
            EntityValue::External {
                system_id: sys.literal_value().to_string(),
                public_id: Some(public.literal_value().to_string()),
            }
        } else {
            let lit = self.expect(TokenKind::Literal, "entity value, `SYSTEM` or `PUBLIC`")?;
            EntityValue::Internal(lit.literal_value().to_string())
        };
        self.close()?;
        Ok(Some(DeclarationKind::ParamEntity { name, value }))
    }
}
