use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// 1-based line and column (columns count characters, not bytes).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Location {
    pub line: u32,
    pub column: u32,
}

impl Location {
    pub const fn new(line: u32, column: u32) -> Self {
        Location { line, column }
    }
}

impl Default for Location {
    fn default() -> Self {
        Location::new(1, 1)
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DtdError {
    #[error("{at}: unterminated comment")]
    UnterminatedComment { at: Location },
    #[error("{at}: unterminated literal")]
    UnterminatedLiteral { at: Location },
    #[error("{at}: unterminated processing instruction")]
    UnterminatedProcessingInstruction { at: Location },
    #[error("{at}: illegal character {character:?}")]
    IllegalCharacter { character: char, at: Location },

    #[error("{at}: `,` and `|` mixed in one group; add parentheses")]
    MixedSeqAlt { at: Location },
    #[error("{at}: unbalanced parenthesis")]
    UnbalancedParen { at: Location },
    #[error("{at}: empty group")]
    EmptyGroup { at: Location },
    #[error("{at}: unexpected {found} after content model")]
    TrailingTokens { found: String, at: Location },

    #[error("{at}: expected {expected}, found {found}")]
    Syntax {
        expected: String,
        found: String,
        at: Location,
    },
    #[error("{at}: element `{name}` is declared more than once")]
    DuplicateElement { name: String, at: Location },
    #[error("{at}: default value '{value}' of attribute `{attribute}` is not one of its enumerated values")]
    InvalidDefault {
        attribute: String,
        value: String,
        at: Location,
    },

    #[error("{at}: reference to undeclared parameter entity `%{name};`")]
    UndeclaredEntity { name: String, at: Location },
    #[error("{at}: recursive parameter entity: {}", cycle.join(" -> "))]
    RecursiveEntity { cycle: Vec<String>, at: Location },
    #[error("{at}: in replacement text of `%{entity};`: {source}")]
    InEntity {
        entity: String,
        at: Location,
        #[source]
        source: Box<DtdError>,
    },
}

impl DtdError {
    pub fn location(&self) -> Location {
        use DtdError::*;
        match self {
            UnterminatedComment { at }
            | UnterminatedLiteral { at }
            | UnterminatedProcessingInstruction { at }
            | IllegalCharacter { at, .. }
            | MixedSeqAlt { at }
            | UnbalancedParen { at }
            | EmptyGroup { at }
            | TrailingTokens { at, .. }
            | Syntax { at, .. }
            | DuplicateElement { at, .. }
            | InvalidDefault { at, .. }
            | UndeclaredEntity { at, .. }
            | RecursiveEntity { at, .. }
            | InEntity { at, .. } => *at,
        }
    }
}
