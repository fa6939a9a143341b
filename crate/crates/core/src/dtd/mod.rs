//! DTD front end: tokenizer, declaration parser and parameter-entity expansion.

mod ast;
mod entities;
mod error;
mod lexer;
mod parser;

pub use ast::{
    AttributeKind, AttributeSpec, ContentModel, ContentNode, Declaration, DeclarationKind,
    DefaultDecl, DtdAst, EntityValue, Occurrence, UnresolvedEntity,
};
pub use entities::{expand_parameter_entities, EntityResolver};
pub use error::{DtdError, Location};
pub use lexer::{is_valid_name, tokenize, MarkupKind, Token, TokenKind};
pub use parser::{parse_content_model, parse_dtd};
