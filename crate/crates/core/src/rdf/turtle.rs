//! Turtle subset reader and writer.
//!
//! Supported syntax: `@prefix` directives, absolute IRIs, prefixed names,
//! explicit `_:label` blank nodes, anonymous blank-node property lists
//! `[ p o ; p2 o2 ]`, object lists with `,`, predicate lists with `;`, the
//! `a` keyword, plain/typed/language-tagged string literals, and `#`
//! comments. Collections `( )`, numeric/boolean shorthand and base-IRI
//! resolution are out of scope.
//!
//! Serialization is deterministic: prefixes sorted by label, one statement
//! per triple in canonical (subject, predicate, object) order, so equal
//! graphs always produce byte-identical documents.

use std::collections::BTreeSet;

use super::{Graph, RdfError, Term, Triple};
use crate::vocab;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    AtWord(String),
    IriRef(String),
    PName { prefix: String, local: String },
    BlankLabel(String),
    StringLit(String),
    HatHat,
    A,
    Dot,
    Semicolon,
    Comma,
    LBracket,
    RBracket,
    Eof,
}

#[derive(Debug, Clone)]
struct Spanned {
    token: Token,
    line: u32,
    column: u32,
}

struct Lexer<'a> {
    chars: Vec<char>,
    pos: usize,
    line: u32,
    column: u32,
    text: &'a str,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Lexer<'a> {
        Lexer {
            chars: text.chars().collect(),
            pos: 0,
            line: 1,
            column: 1,
            text,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn error(&self, message: impl Into<String>) -> RdfError {
        RdfError::Syntax {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn skip_trivia(&mut self) {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('#') => {
                    while let Some(c) = self.peek() {
                        if c == '\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => break,
            }
        }
    }

    fn is_name_char(c: char) -> bool {
        c.is_ascii_alphanumeric() || c == '_' || c == '-'
    }

    fn read_name(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if Self::is_name_char(c) {
                s.push(c);
                self.bump();
            } else {
                break;
            }
        }
        s
    }

    fn read_string(&mut self) -> Result<String, RdfError> {
        // opening quote already consumed
        let mut s = String::new();
        loop {
            let Some(c) = self.bump() else {
                return Err(self.error("unterminated string literal"));
            };
            match c {
                '"' => return Ok(s),
                '\\' => {
                    let Some(esc) = self.bump() else {
                        return Err(self.error("unterminated escape"));
                    };
                    match esc {
                        '"' => s.push('"'),
                        '\\' => s.push('\\'),
                        'n' => s.push('\n'),
                        'r' => s.push('\r'),
                        't' => s.push('\t'),
                        'u' => {
                            let mut hex = String::new();
                            for _ in 0..4 {
                                let Some(h) = self.bump() else {
                                    return Err(self.error("truncated \\u escape"));
                                };
                                hex.push(h);
                            }
                            let code = u32::from_str_radix(&hex, 16)
                                .map_err(|_| self.error("invalid \\u escape"))?;
                            let ch = char::from_u32(code)
                                .ok_or_else(|| self.error("invalid \\u code point"))?;
                            s.push(ch);
                        }
                        other => return Err(self.error(format!("unknown escape \\{other}"))),
                    }
                }
                '\n' => return Err(self.error("newline inside string literal")),
                other => s.push(other),
            }
        }
    }

    fn next_token(&mut self) -> Result<Spanned, RdfError> {
        self.skip_trivia();
        let (line, column) = (self.line, self.column);
        let spanned = |token| Spanned {
            token,
            line,
            column,
        };
        let Some(c) = self.peek() else {
            return Ok(spanned(Token::Eof));
        };
        match c {
            '.' => {
                self.bump();
                Ok(spanned(Token::Dot))
            }
            ';' => {
                self.bump();
                Ok(spanned(Token::Semicolon))
            }
            ',' => {
                self.bump();
                Ok(spanned(Token::Comma))
            }
            '[' => {
                self.bump();
                Ok(spanned(Token::LBracket))
            }
            ']' => {
                self.bump();
                Ok(spanned(Token::RBracket))
            }
            '(' | ')' => Err(self.error("collections ( ) are not supported")),
            '<' => {
                self.bump();
                let mut iri = String::new();
                loop {
                    let Some(c) = self.peek() else {
                        return Err(self.error("unterminated IRI"));
                    };
                    if c == '>' {
                        self.bump();
                        break;
                    }
                    if c == '\n' || c == ' ' || c == '\t' {
                        return Err(self.error("whitespace inside IRI"));
                    }
                    iri.push(c);
                    self.bump();
                }
                Ok(spanned(Token::IriRef(iri)))
            }
            '"' => {
                self.bump();
                let s = self.read_string()?;
                Ok(spanned(Token::StringLit(s)))
            }
            '@' => {
                self.bump();
                let word = self.read_name();
                if word.is_empty() {
                    return Err(self.error("expected directive or language tag after '@'"));
                }
                Ok(spanned(Token::AtWord(word)))
            }
            '^' => {
                self.bump();
                if self.peek() == Some('^') {
                    self.bump();
                    Ok(spanned(Token::HatHat))
                } else {
                    Err(self.error("expected '^^'"))
                }
            }
            '_' => {
                self.bump();
                if self.peek() != Some(':') {
                    return Err(self.error("expected ':' after '_' in blank node label"));
                }
                self.bump();
                let label = self.read_name();
                if label.is_empty() {
                    return Err(self.error("empty blank node label"));
                }
                Ok(spanned(Token::BlankLabel(label)))
            }
            ':' => {
                self.bump();
                let local = self.read_name();
                Ok(spanned(Token::PName {
                    prefix: String::new(),
                    local,
                }))
            }
            c if c.is_ascii_alphabetic() => {
                let word = self.read_name();
                if self.peek() == Some(':') {
                    self.bump();
                    let local = self.read_name();
                    Ok(spanned(Token::PName {
                        prefix: word,
                        local,
                    }))
                } else if word == "a" {
                    Ok(spanned(Token::A))
                } else {
                    Err(self.error(format!("unexpected bare word '{word}'")))
                }
            }
            other => Err(self.error(format!("unexpected character '{other}'"))),
        }
    }

    fn tokenize(mut self) -> Result<(Vec<Spanned>, BTreeSet<String>), RdfError> {
        let _ = self.text;
        let mut tokens = Vec::new();
        let mut labels = BTreeSet::new();
        loop {
            let t = self.next_token()?;
            let eof = t.token == Token::Eof;
            if let Token::BlankLabel(l) = &t.token {
                labels.insert(l.clone());
            }
            tokens.push(t);
            if eof {
                return Ok((tokens, labels));
            }
        }
    }
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
    graph: Graph,
    used_labels: BTreeSet<String>,
    fresh_counter: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.tokens[self.pos]
    }

    fn advance(&mut self) -> Spanned {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, at: &Spanned, message: impl Into<String>) -> RdfError {
        RdfError::Syntax {
            line: at.line,
            column: at.column,
            message: message.into(),
        }
    }

    fn expect_dot(&mut self) -> Result<(), RdfError> {
        let t = self.advance();
        if t.token == Token::Dot {
            Ok(())
        } else {
            Err(self.error_at(&t, "expected '.'"))
        }
    }

    fn fresh_blank(&mut self) -> Term {
        loop {
            let id = format!("g{}", self.fresh_counter);
            self.fresh_counter += 1;
            if !self.used_labels.contains(&id) {
                return Term::blank(id);
            }
        }
    }

    fn resolve_pname(&self, at: &Spanned, prefix: &str, local: &str) -> Result<Term, RdfError> {
        let Some(ns) = self.graph.prefixes().get(prefix) else {
            return Err(RdfError::UnknownPrefix(prefix.to_string()));
        };
        Term::iri(format!("{ns}{local}")).map_err(|e| self.error_at(at, e.to_string()))
    }

    fn parse_document(&mut self) -> Result<(), RdfError> {
        loop {
            match &self.peek().token {
                Token::Eof => return Ok(()),
                Token::AtWord(w) if w == "prefix" => {
                    self.advance();
                    self.parse_prefix_directive()?;
                }
                Token::AtWord(w) => {
                    let t = self.peek().clone();
                    return Err(self.error_at(&t, format!("unsupported directive '@{w}'")));
                }
                _ => {
                    let subject = self.parse_subject()?;
                    self.parse_predicate_object_list(&subject)?;
                    self.expect_dot()?;
                }
            }
        }
    }

    fn parse_prefix_directive(&mut self) -> Result<(), RdfError> {
        let t = self.advance();
        let Token::PName { prefix, local } = &t.token else {
            return Err(self.error_at(&t, "expected prefix name after '@prefix'"));
        };
        if !local.is_empty() {
            return Err(self.error_at(&t, "prefix declaration must end in ':'"));
        }
        let label = prefix.clone();
        let t = self.advance();
        let Token::IriRef(ns) = &t.token else {
            return Err(self.error_at(&t, "expected IRI in prefix declaration"));
        };
        let ns = ns.clone();
        self.expect_dot()?;
        self.graph.add_prefix(label, ns);
        Ok(())
    }

    fn parse_subject(&mut self) -> Result<Term, RdfError> {
        let t = self.advance();
        match &t.token {
            Token::IriRef(iri) => Term::iri(iri.clone()).map_err(|e| self.error_at(&t, e.to_string())),
            Token::PName { prefix, local } => self.resolve_pname(&t, prefix, local),
            Token::BlankLabel(l) => Ok(Term::blank(l.clone())),
            Token::LBracket => self.parse_blank_property_list(),
            other => Err(self.error_at(&t, format!("expected subject, found {other:?}"))),
        }
    }

    fn parse_verb(&mut self) -> Result<Term, RdfError> {
        let t = self.advance();
        match &t.token {
            Token::A => Ok(vocab::rdf_type()),
            Token::IriRef(iri) => Term::iri(iri.clone()).map_err(|e| self.error_at(&t, e.to_string())),
            Token::PName { prefix, local } => self.resolve_pname(&t, prefix, local),
            other => Err(self.error_at(&t, format!("expected predicate, found {other:?}"))),
        }
    }

    fn parse_object(&mut self) -> Result<Term, RdfError> {
        let t = self.advance();
        match &t.token {
            Token::IriRef(iri) => Term::iri(iri.clone()).map_err(|e| self.error_at(&t, e.to_string())),
            Token::PName { prefix, local } => self.resolve_pname(&t, prefix, local),
            Token::BlankLabel(l) => Ok(Term::blank(l.clone())),
            Token::LBracket => self.parse_blank_property_list(),
            Token::StringLit(lex) => {
                let lex = lex.clone();
                match &self.peek().token {
                    Token::HatHat => {
                        self.advance();
                        let dt = self.advance();
                        let datatype = match &dt.token {
                            Token::IriRef(iri) => {
                                Term::iri(iri.clone()).map_err(|e| self.error_at(&dt, e.to_string()))?
                            }
                            Token::PName { prefix, local } => self.resolve_pname(&dt, prefix, local)?,
                            other => {
                                return Err(
                                    self.error_at(&dt, format!("expected datatype IRI, found {other:?}"))
                                )
                            }
                        };
                        let Term::Iri(dt_iri) = datatype else {
                            unreachable!()
                        };
                        Ok(Term::literal(lex, dt_iri))
                    }
                    Token::AtWord(lang) => {
                        let lang = lang.clone();
                        self.advance();
                        Ok(Term::lang_literal(lex, lang))
                    }
                    _ => Ok(Term::string_literal(lex)),
                }
            }
            other => Err(self.error_at(&t, format!("expected object, found {other:?}"))),
        }
    }

    /// `[ p o ; p2 o2 ]` — returns the fresh blank node. `[]` is allowed.
    fn parse_blank_property_list(&mut self) -> Result<Term, RdfError> {
        let node = self.fresh_blank();
        if self.peek().token == Token::RBracket {
            self.advance();
            return Ok(node);
        }
        self.parse_predicate_object_list(&node)?;
        let t = self.advance();
        if t.token != Token::RBracket {
            return Err(self.error_at(&t, "expected ']'"));
        }
        Ok(node)
    }

    fn parse_predicate_object_list(&mut self, subject: &Term) -> Result<(), RdfError> {
        loop {
            let predicate = self.parse_verb()?;
            loop {
                let object = self.parse_object()?;
                let at = self.peek().clone();
                let triple = Triple::new(subject.clone(), predicate.clone(), object)
                    .map_err(|e| self.error_at(&at, e.to_string()))?;
                self.graph.insert(triple);
                if self.peek().token == Token::Comma {
                    self.advance();
                } else {
                    break;
                }
            }
            if self.peek().token == Token::Semicolon {
                self.advance();
                // allow a trailing ';' before '.' or ']'
                if matches!(self.peek().token, Token::Dot | Token::RBracket) {
                    return Ok(());
                }
            } else {
                return Ok(());
            }
        }
    }
}

/// Parses a Turtle document into a graph.
pub fn parse_turtle(text: &str) -> Result<Graph, RdfError> {
    let (tokens, used_labels) = Lexer::new(text).tokenize()?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        graph: Graph::new(),
        used_labels,
        fresh_counter: 0,
    };
    parser.parse_document()?;
    Ok(parser.graph)
}

fn local_is_pn_safe(local: &str) -> bool {
    local
        .chars()
        .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

fn escape_lexical(lex: &str) -> String {
    let mut out = String::with_capacity(lex.len());
    for c in lex.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            other => out.push(other),
        }
    }
    out
}

fn iri_text(iri: &str, graph: &Graph) -> String {
    let mut best: Option<(&str, &str)> = None; // (label, remainder)
    for (label, ns) in graph.prefixes() {
        if let Some(rest) = iri.strip_prefix(ns.as_str()) {
            if local_is_pn_safe(rest) {
                let better = match best {
                    Some((_, prev_rest)) => rest.len() < prev_rest.len(),
                    None => true,
                };
                if better {
                    best = Some((label, rest));
                }
            }
        }
    }
    match best {
        Some((label, rest)) => format!("{label}:{rest}"),
        None => format!("<{iri}>"),
    }
}

fn term_text(term: &Term, graph: &Graph) -> String {
    match term {
        Term::Iri(iri) => iri_text(iri, graph),
        Term::BlankNode(id) => format!("_:{id}"),
        Term::Literal(l) => {
            let quoted = format!("\"{}\"", escape_lexical(&l.lexical));
            if let Some(lang) = &l.language {
                format!("{quoted}@{lang}")
            } else if l.datatype == vocab::xsd_string() {
                quoted
            } else {
                format!("{quoted}^^{}", iri_text(&l.datatype, graph))
            }
        }
    }
}

/// Serializes a graph to Turtle. Output is byte-stable for equal graphs and
/// re-parses to an isomorphic graph.
pub fn serialize_turtle(graph: &Graph) -> String {
    let mut out = String::new();
    for (label, ns) in graph.prefixes() {
        out.push_str(&format!("@prefix {label}: <{ns}> .\n"));
    }
    if !graph.prefixes().is_empty() && !graph.is_empty() {
        out.push('\n');
    }
    let rdf_type = vocab::rdf_type();
    for t in graph.iter() {
        let p = if t.predicate() == &rdf_type {
            "a".to_string()
        } else {
            term_text(t.predicate(), graph)
        };
        out.push_str(&format!(
            "{} {} {} .\n",
            term_text(t.subject(), graph),
            p,
            term_text(t.object(), graph)
        ));
    }
    out
}
