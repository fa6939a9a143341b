//! A checker for the subset of the DOT language the emitters produce:
//! graph/digraph, node/edge/attribute statements, subgraphs, quoted, numeral
//! and HTML ids, ports, and C/C++ style comments. Arrow attributes are checked
//! against the Graphviz arrow grammar and HTML labels for tag balance.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct DotSyntaxError {
    pub line: u32,
    pub column: u32,
    pub message: String,
}

/// Counts gathered while checking.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DotStats {
    pub directed: bool,
    pub node_statements: usize,
    /// One per `->`/`--`, so `a -> b -> c` counts two.
    pub edges: usize,
    pub subgraphs: usize,
    pub clusters: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Id(String),
    Html(String),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Eq,
    Semi,
    Comma,
    Colon,
    EdgeOp(bool),
}

struct Lexed {
    tok: Tok,
    line: u32,
    column: u32,
}

fn lex(text: &str) -> Result<Vec<Lexed>, DotSyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1u32, 1u32);
    let mut line_start = true;
    let err = |line, column, message: &str| DotSyntaxError {
        line,
        column,
        message: message.to_string(),
    };
    macro_rules! bump {
        () => {{
            if chars[i] == '\n' {
                line += 1;
                col = 1;
                line_start = true;
            } else {
                col += 1;
                if !chars[i].is_whitespace() {
                    line_start = false;
                }
            }
            i += 1;
        }};
    }
    while i < chars.len() {
        let c = chars[i];
        let (l, k) = (line, col);
        if c.is_whitespace() {
            bump!();
            continue;
        }
        if c == '#' && line_start {
            while i < chars.len() && chars[i] != '\n' {
                bump!();
            }
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                bump!();
            }
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'*') {
            bump!();
            bump!();
            loop {
                if i >= chars.len() {
                    return Err(err(l, k, "unterminated comment"));
                }
                if chars[i] == '*' && chars.get(i + 1) == Some(&'/') {
                    bump!();
                    bump!();
                    break;
                }
                bump!();
            }
            continue;
        }
        let single = match c {
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            '=' => Some(Tok::Eq),
            ';' => Some(Tok::Semi),
            ',' => Some(Tok::Comma),
            ':' => Some(Tok::Colon),
            _ => None,
        };
        if let Some(tok) = single {
            bump!();
            out.push(Lexed {
                tok,
                line: l,
                column: k,
            });
            continue;
        }
        if c == '-' && matches!(chars.get(i + 1), Some('>') | Some('-')) {
            let directed = chars[i + 1] == '>';
            bump!();
            bump!();
            out.push(Lexed {
                tok: Tok::EdgeOp(directed),
                line: l,
                column: k,
            });
            continue;
        }
        if c == '"' {
            bump!();
            let mut s = String::new();
            loop {
                match chars.get(i) {
                    None => return Err(err(l, k, "unterminated string")),
                    Some('"') => {
                        bump!();
                        break;
                    }
                    Some('\\') if chars.get(i + 1).is_some() => {
                        let next = chars[i + 1];
                        if next != '"' {
                            s.push('\\');
                        }
                        s.push(next);
                        bump!();
                        bump!();
                    }
                    Some(&ch) => {
                        s.push(ch);
                        bump!();
                    }
                }
            }
            out.push(Lexed {
                tok: Tok::Id(s),
                line: l,
                column: k,
            });
            continue;
        }
        if c == '<' {
            let mut depth = 0usize;
            let mut s = String::new();
            loop {
                match chars.get(i) {
                    None => return Err(err(l, k, "unterminated HTML string")),
                    Some(&ch) => {
                        if ch == '<' {
                            depth += 1;
                        } else if ch == '>' {
                            depth -= 1;
                        }
                        s.push(ch);
                        bump!();
                        if depth == 0 {
                            break;
                        }
                    }
                }
            }
            let inner = s[1..s.len() - 1].to_string();
            check_html(&inner).map_err(|m| err(l, k, &m))?;
            out.push(Lexed {
                tok: Tok::Html(inner),
                line: l,
                column: k,
            });
            continue;
        }
        if c.is_alphabetic() || c == '_' || !c.is_ascii() {
            let mut s = String::new();
            while let Some(&ch) = chars.get(i) {
                if ch.is_alphanumeric() || ch == '_' || !ch.is_ascii() {
                    s.push(ch);
                    bump!();
                } else {
                    break;
                }
            }
            out.push(Lexed {
                tok: Tok::Id(s),
                line: l,
                column: k,
            });
            continue;
        }
        if c.is_ascii_digit() || c == '.' || c == '-' {
            let mut s = String::new();
            if c == '-' {
                s.push(c);
                bump!();
            }
            let mut dots = 0;
            let mut digits = 0;
            while let Some(&ch) = chars.get(i) {
                if ch.is_ascii_digit() {
                    digits += 1;
                } else if ch == '.' {
                    dots += 1;
                } else {
                    break;
                }
                s.push(ch);
                bump!();
            }
            if digits == 0 || dots > 1 {
                return Err(err(l, k, "malformed numeral"));
            }
            if chars
                .get(i)
                .is_some_and(|ch| ch.is_alphabetic() || *ch == '_')
            {
                return Err(err(line, col, "identifier may not start with a digit"));
            }
            out.push(Lexed {
                tok: Tok::Id(s),
                line: l,
                column: k,
            });
            continue;
        }
        return Err(err(l, k, &format!("unexpected character `{c}`")));
    }
    Ok(out)
}

/// Checks that tags in an HTML label are balanced.
fn check_html(s: &str) -> Result<(), String> {
    let mut stack: Vec<String> = Vec::new();
    let mut rest = s;
    while let Some(start) = rest.find('<') {
        let after = &rest[start + 1..];
        let end = after.find('>').ok_or("unclosed HTML tag")?;
        let tag = &after[..end];
        rest = &after[end + 1..];
        if let Some(name) = tag.strip_prefix('/') {
            let name = name.trim().to_ascii_lowercase();
            match stack.pop() {
                Some(open) if open == name => {}
                Some(open) => return Err(format!("`</{name}>` closes `<{open}>`")),
                None => return Err(format!("`</{name}>` has no opening tag")),
            }
        } else if !tag.ends_with('/') {
            let name: String = tag
                .chars()
                .take_while(|c| c.is_ascii_alphanumeric())
                .collect::<String>()
                .to_ascii_lowercase();
            if name.is_empty() {
                return Err("empty HTML tag".into());
            }
            stack.push(name);
        }
    }
    match stack.pop() {
        Some(open) => Err(format!("`<{open}>` is never closed")),
        None => Ok(()),
    }
}

const ARROW_SHAPES: [&str; 11] = [
    "box", "crow", "curve", "icurve", "diamond", "dot", "inv", "none", "normal", "tee", "vee",
];

/// Graphviz arrow grammar: up to four shapes, each with optional `o`/`l`/`r`
/// modifiers.
pub fn is_valid_arrow(name: &str) -> bool {
    let mut rest = name;
    let mut shapes = 0;
    while !rest.is_empty() {
        // No shape name starts with a modifier letter.
        let mut body = rest.strip_prefix('o').unwrap_or(rest);
        body = body
            .strip_prefix('l')
            .or_else(|| body.strip_prefix('r'))
            .unwrap_or(body);
        let Some(shape) = ARROW_SHAPES
            .iter()
            .filter(|s| body.starts_with(*s))
            .max_by_key(|s| s.len())
        else {
            return false;
        };
        rest = &body[shape.len()..];
        shapes += 1;
    }
    (1..=4).contains(&shapes)
}

struct Parser {
    toks: Vec<Lexed>,
    pos: usize,
    stats: DotStats,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, DotSyntaxError> {
        let (line, column) = match self.toks.get(self.pos).or(self.toks.last()) {
            Some(t) => (t.line, t.column),
            None => (1, 1),
        };
        Err(DotSyntaxError {
            line,
            column,
            message: message.into(),
        })
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), DotSyntaxError> {
        if self.eat(&tok) {
            Ok(())
        } else {
            self.fail(format!("expected {what}"))
        }
    }

    fn keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Id(s)) if s.eq_ignore_ascii_case(kw))
    }

    fn id(&mut self) -> Result<String, DotSyntaxError> {
        match self.peek() {
            Some(Tok::Id(s)) | Some(Tok::Html(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.fail("expected an identifier"),
        }
    }

    fn graph(&mut self) -> Result<(), DotSyntaxError> {
        if self.keyword("strict") {
            self.pos += 1;
        }
        if self.keyword("digraph") {
            self.stats.directed = true;
        } else if !self.keyword("graph") {
            return self.fail("expected `graph` or `digraph`");
        }
        self.pos += 1;
        if !matches!(self.peek(), Some(Tok::LBrace)) {
            self.id()?;
        }
        self.expect(Tok::LBrace, "`{`")?;
        self.stmt_list()?;
        self.expect(Tok::RBrace, "`}`")?;
        if self.pos != self.toks.len() {
            return self.fail("text after the closing `}`");
        }
        Ok(())
    }

    fn stmt_list(&mut self) -> Result<(), DotSyntaxError> {
        while !matches!(self.peek(), Some(Tok::RBrace) | None) {
            self.stmt()?;
            self.eat(&Tok::Semi);
        }
        Ok(())
    }

    fn stmt(&mut self) -> Result<(), DotSyntaxError> {
        if ["graph", "node", "edge"].iter().any(|k| self.keyword(k)) {
            self.pos += 1;
            if !matches!(self.peek(), Some(Tok::LBracket)) {
                return self.fail("expected `[` after attribute statement keyword");
            }
            return self.attr_list();
        }
        if self.keyword("subgraph") || matches!(self.peek(), Some(Tok::LBrace)) {
            self.subgraph()?;
            return self.edge_rhs(false);
        }
        self.id()?;
        if self.eat(&Tok::Eq) {
            self.id()?;
            return Ok(());
        }
        self.port()?;
        self.edge_rhs(true)
    }

    fn subgraph(&mut self) -> Result<(), DotSyntaxError> {
        if self.keyword("subgraph") {
            self.pos += 1;
            if !matches!(self.peek(), Some(Tok::LBrace)) {
                let name = self.id()?;
                if name.starts_with("cluster") {
                    self.stats.clusters += 1;
                }
            }
        }
        self.stats.subgraphs += 1;
        self.expect(Tok::LBrace, "`{`")?;
        self.stmt_list()?;
        self.expect(Tok::RBrace, "`}`")
    }

    fn port(&mut self) -> Result<(), DotSyntaxError> {
        if self.eat(&Tok::Colon) {
            self.id()?;
            if self.eat(&Tok::Colon) {
                let compass = self.id()?;
                if !["n", "ne", "e", "se", "s", "sw", "w", "nw", "c", "_"]
                    .contains(&compass.as_str())
                {
                    return self.fail(format!("`{compass}` is not a compass point"));
                }
            }
        }
        Ok(())
    }

    /// After a node id or subgraph: either edges follow, or (for a node) it
    /// was a node statement.
    fn edge_rhs(&mut self, is_node: bool) -> Result<(), DotSyntaxError> {
        let mut edges = 0;
        while let Some(Tok::EdgeOp(directed)) = self.peek() {
            if *directed != self.stats.directed {
                return self.fail(if self.stats.directed {
                    "`--` in a digraph"
                } else {
                    "`->` in an undirected graph"
                });
            }
            self.pos += 1;
            if self.keyword("subgraph") || matches!(self.peek(), Some(Tok::LBrace)) {
                self.subgraph()?;
            } else {
                self.id()?;
                self.port()?;
            }
            edges += 1;
        }
        self.stats.edges += edges;
        if edges == 0 && is_node {
            self.stats.node_statements += 1;
        }
        if matches!(self.peek(), Some(Tok::LBracket)) {
            self.attr_list()?;
        }
        Ok(())
    }

    fn attr_list(&mut self) -> Result<(), DotSyntaxError> {
        while self.eat(&Tok::LBracket) {
            while !self.eat(&Tok::RBracket) {
                let key = self.id()?;
                self.expect(Tok::Eq, "`=` in attribute list")?;
                let value = self.id()?;
                if matches!(key.as_str(), "arrowhead" | "arrowtail") && !is_valid_arrow(&value) {
                    return self.fail(format!("`{value}` is not a valid arrow"));
                }
                if !self.eat(&Tok::Comma) {
                    self.eat(&Tok::Semi);
                }
                if self.peek().is_none() {
                    return self.fail("unterminated attribute list");
                }
            }
        }
        Ok(())
    }
}

pub fn check_dot(text: &str) -> Result<DotStats, DotSyntaxError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        stats: DotStats::default(),
    };
    p.graph()?;
    Ok(p.stats)
}
