use std::fmt;

use super::error::{DtdError, Location};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MarkupKind {
    Element,
    AttList,
    Entity,
    Notation,
}

impl MarkupKind {
    pub fn keyword(self) -> &'static str {
        match self {
            MarkupKind::Element => "ELEMENT",
            MarkupKind::AttList => "ATTLIST",
            MarkupKind::Entity => "ENTITY",
            MarkupKind::Notation => "NOTATION",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    /// `<!ELEMENT`, `<!ATTLIST`, `<!ENTITY` or `<!NOTATION`.
    MarkupOpen(MarkupKind),
    /// `<!-- ... -->`, delimiters included.
    Comment,
    /// `<? ... ?>`, delimiters included.
    ProcessingInstruction,
    /// Name or name token. Leading digits are accepted here; the parser
    /// decides where a strict name is required.
    Name,
    /// Quoted literal, quotes included in the lexeme.
    Literal,
    LParen,
    RParen,
    Pipe,
    Comma,
    Star,
    Plus,
    Question,
    Percent,
    Semicolon,
    Hash,
    Close,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    pub line: u32,
    pub column: u32,
    /// Byte offset of the first character of the lexeme.
    pub offset: usize,
}

impl Token {
    pub fn location(&self) -> Location {
        Location::new(self.line, self.column)
    }

    pub fn end(&self) -> usize {
        self.offset + self.lexeme.len()
    }

    /// Text of a literal without its quotes.
    pub fn literal_value(&self) -> &str {
        debug_assert_eq!(self.kind, TokenKind::Literal);
        &self.lexeme[1..self.lexeme.len() - 1]
    }

    pub fn is_punct(&self, kind: TokenKind) -> bool {
        self.kind == kind
    }

    pub fn is_name(&self, text: &str) -> bool {
        self.kind == TokenKind::Name && self.lexeme == text
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            TokenKind::Comment => f.write_str("comment"),
            TokenKind::ProcessingInstruction => f.write_str("processing instruction"),
            _ => write!(f, "`{}`", self.lexeme),
        }
    }
}

pub fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '-' | '.' | '_' | ':' | '\u{B7}')
}

pub fn is_name_start(c: char) -> bool {
    c.is_alphabetic() || matches!(c, '_' | ':')
}

/// Checks that `text` is a well-formed XML name (used for elements, attributes and entities).
pub fn is_valid_name(text: &str) -> bool {
    let mut chars = text.chars();
    match chars.next() {
        Some(c) if is_name_start(c) => chars.all(is_name_char),
        _ => false,
    }
}

struct Cursor<'a> {
    input: &'a str,
    pos: usize,
    line: u32,
    column: u32,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.input[self.pos..].chars().next()
    }

    fn rest(&self) -> &'a str {
        &self.input[self.pos..]
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn bump_str(&mut self, s: &str) {
        for _ in s.chars() {
            self.bump();
        }
    }

    fn location(&self) -> Location {
        Location::new(self.line, self.column)
    }

    /// Advances until just past `terminator`; returns false at end of input.
    fn skip_past(&mut self, terminator: &str) -> bool {
        while !self.rest().is_empty() {
            if self.rest().starts_with(terminator) {
                self.bump_str(terminator);
                return true;
            }
            self.bump();
        }
        false
    }
}

/// Splits DTD text into tokens. Whitespace is skipped; every lexeme is the
/// exact source slice it was read from.
pub fn tokenize(input: &str) -> Result<Vec<Token>, DtdError> {
    let mut cur = Cursor {
        input,
        pos: 0,
        line: 1,
        column: 1,
    };
    let mut tokens = Vec::new();

    while let Some(c) = cur.peek() {
        if c.is_whitespace() {
            cur.bump();
            continue;
        }
        let start = cur.pos;
        let at = cur.location();
        let kind = match c {
            '<' => lex_markup(&mut cur, at)?,
            '"' | '\'' => {
                cur.bump();
                let quote = c.to_string();
                if !cur.skip_past(&quote) {
                    return Err(DtdError::UnterminatedLiteral { at });
                }
                TokenKind::Literal
            }
            '(' | ')' | '|' | ',' | '*' | '+' | '?' | '%' | ';' | '#' | '>' => {
                cur.bump();
                match c {
                    '(' => TokenKind::LParen,
                    ')' => TokenKind::RParen,
                    '|' => TokenKind::Pipe,
                    ',' => TokenKind::Comma,
                    '*' => TokenKind::Star,
                    '+' => TokenKind::Plus,
                    '?' => TokenKind::Question,
                    '%' => TokenKind::Percent,
                    ';' => TokenKind::Semicolon,
                    '#' => TokenKind::Hash,
                    _ => TokenKind::Close,
                }
            }
            c if is_name_char(c) => {
                while cur.peek().is_some_and(is_name_char) {
                    cur.bump();
                }
                TokenKind::Name
            }
            other => {
                return Err(DtdError::IllegalCharacter {
                    character: other,
                    at,
                })
            }
        };
        tokens.push(Token {
            kind,
            lexeme: input[start..cur.pos].to_string(),
            line: at.line,
            column: at.column,
            offset: start,
        });
    }
    Ok(tokens)
}

fn lex_markup(cur: &mut Cursor<'_>, at: Location) -> Result<TokenKind, DtdError> {
    let rest = cur.rest();
    if rest.starts_with("<!--") {
        cur.bump_str("<!--");
        if !cur.skip_past("-->") {
            return Err(DtdError::UnterminatedComment { at });
        }
        return Ok(TokenKind::Comment);
    }
    if rest.starts_with("<?") {
        cur.bump_str("<?");
        if !cur.skip_past("?>") {
            return Err(DtdError::UnterminatedProcessingInstruction { at });
        }
        return Ok(TokenKind::ProcessingInstruction);
    }
    for kind in [
        MarkupKind::Element,
        MarkupKind::AttList,
        MarkupKind::Entity,
        MarkupKind::Notation,
    ] {
        let open = format!("<!{}", kind.keyword());
        if rest.starts_with(&open) && !rest[open.len()..].chars().next().is_some_and(is_name_char) {
            cur.bump_str(&open);
            return Ok(TokenKind::MarkupOpen(kind));
        }
    }
    Err(DtdError::IllegalCharacter { character: '<', at })
}
