//! Parser for the SELECT/WHERE/FILTER query subset.
//!
//! Inline blank nodes (`_:label` or `[ p o ]`) become fresh non-projected
//! variables, which gives them the standard existential reading. Bare words
//! that are not keywords parse as relative IRIs; recognized SPARQL keywords
//! outside the subset are rejected with `UnsupportedFeature`.

use std::collections::BTreeMap;

use super::ast::{FilterAtom, FilterExpr, PatternTerm, Query, TriplePattern};
use super::SparqlError;
use crate::rdf::Term;
use crate::vocab;

const UNSUPPORTED_KEYWORDS: &[&str] = &[
    "OPTIONAL", "UNION", "MINUS", "GRAPH", "SERVICE", "BIND", "VALUES", "ORDER", "GROUP",
    "HAVING", "LIMIT", "OFFSET", "DISTINCT", "REDUCED", "CONSTRUCT", "ASK", "DESCRIBE",
    "INSERT", "DELETE", "NOT", "EXISTS", "REGEX", "FROM", "NAMED", "UNDEF", "IN", "BOUND",
    "STR", "LANG", "DATATYPE", "SAMETERM",
];

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Word(String),
    Var(String),
    IriRef(String),
    PName { prefix: String, local: String },
    BlankLabel(String),
    StringLit(String),
    LangTag(String),
    HatHat,
    Star,
    Eq,
    AndAnd,
    Dot,
    Semicolon,
    Comma,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Eof,
}

#[derive(Debug, Clone)]
struct Spanned {
    token: Token,
    position: usize,
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '-'
}

fn tokenize(text: &str) -> Result<Vec<Spanned>, SparqlError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0usize;
    let err = |position: usize, message: &str| SparqlError::Syntax {
        position,
        message: message.to_string(),
    };
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        match c {
            c if c.is_whitespace() => {
                i += 1;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '{' => {
                tokens.push(Spanned { token: Token::LBrace, position: start });
                i += 1;
            }
            '}' => {
                tokens.push(Spanned { token: Token::RBrace, position: start });
                i += 1;
            }
            '[' => {
                tokens.push(Spanned { token: Token::LBracket, position: start });
                i += 1;
            }
            ']' => {
                tokens.push(Spanned { token: Token::RBracket, position: start });
                i += 1;
            }
            '(' => {
                tokens.push(Spanned { token: Token::LParen, position: start });
                i += 1;
            }
            ')' => {
                tokens.push(Spanned { token: Token::RParen, position: start });
                i += 1;
            }
            '.' => {
                tokens.push(Spanned { token: Token::Dot, position: start });
                i += 1;
            }
            ';' => {
                tokens.push(Spanned { token: Token::Semicolon, position: start });
                i += 1;
            }
            ',' => {
                tokens.push(Spanned { token: Token::Comma, position: start });
                i += 1;
            }
            '*' => {
                tokens.push(Spanned { token: Token::Star, position: start });
                i += 1;
            }
            '=' => {
                tokens.push(Spanned { token: Token::Eq, position: start });
                i += 1;
            }
            '&' => {
                if chars.get(i + 1) == Some(&'&') {
                    tokens.push(Spanned { token: Token::AndAnd, position: start });
                    i += 2;
                } else {
                    return Err(err(start, "expected '&&'"));
                }
            }
            '?' | '$' => {
                i += 1;
                let mut name = String::new();
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    name.push(chars[i]);
                    i += 1;
                }
                if name.is_empty() {
                    return Err(err(start, "empty variable name"));
                }
                tokens.push(Spanned { token: Token::Var(name), position: start });
            }
            '<' => {
                i += 1;
                let mut iri = String::new();
                loop {
                    if i >= chars.len() {
                        return Err(err(start, "unterminated IRI"));
                    }
                    let c = chars[i];
                    if c == '>' {
                        i += 1;
                        break;
                    }
                    if c.is_whitespace() {
                        return Err(err(i, "whitespace inside IRI"));
                    }
                    iri.push(c);
                    i += 1;
                }
                tokens.push(Spanned { token: Token::IriRef(iri), position: start });
            }
            '"' => {
                i += 1;
                let mut s = String::new();
                loop {
                    if i >= chars.len() {
                        return Err(err(start, "unterminated string literal"));
                    }
                    match chars[i] {
                        '"' => {
                            i += 1;
                            break;
                        }
                        '\\' => {
                            let Some(&esc) = chars.get(i + 1) else {
                                return Err(err(i, "unterminated escape"));
                            };
                            match esc {
                                '"' => s.push('"'),
                                '\\' => s.push('\\'),
                                'n' => s.push('\n'),
                                'r' => s.push('\r'),
                                't' => s.push('\t'),
                                _ => return Err(err(i, "unknown escape")),
                            }
                            i += 2;
                        }
                        other => {
                            s.push(other);
                            i += 1;
                        }
                    }
                }
                tokens.push(Spanned { token: Token::StringLit(s), position: start });
            }
            '^' => {
                if chars.get(i + 1) == Some(&'^') {
                    tokens.push(Spanned { token: Token::HatHat, position: start });
                    i += 2;
                } else {
                    return Err(err(start, "expected '^^'"));
                }
            }
            '@' => {
                i += 1;
                let mut tag = String::new();
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '-') {
                    tag.push(chars[i]);
                    i += 1;
                }
                if tag.is_empty() {
                    return Err(err(start, "empty language tag"));
                }
                tokens.push(Spanned { token: Token::LangTag(tag), position: start });
            }
            '_' => {
                if chars.get(i + 1) != Some(&':') {
                    return Err(err(start, "expected ':' after '_'"));
                }
                i += 2;
                let mut label = String::new();
                while i < chars.len() && is_name_char(chars[i]) {
                    label.push(chars[i]);
                    i += 1;
                }
                if label.is_empty() {
                    return Err(err(start, "empty blank node label"));
                }
                tokens.push(Spanned { token: Token::BlankLabel(label), position: start });
            }
            ':' => {
                i += 1;
                let mut local = String::new();
                while i < chars.len() && is_name_char(chars[i]) {
                    local.push(chars[i]);
                    i += 1;
                }
                tokens.push(Spanned {
                    token: Token::PName { prefix: String::new(), local },
                    position: start,
                });
            }
            c if c.is_ascii_alphabetic() => {
                let mut word = String::new();
                while i < chars.len() && is_name_char(chars[i]) {
                    word.push(chars[i]);
                    i += 1;
                }
                if i < chars.len() && chars[i] == ':' {
                    i += 1;
                    let mut local = String::new();
                    while i < chars.len() && is_name_char(chars[i]) {
                        local.push(chars[i]);
                        i += 1;
                    }
                    tokens.push(Spanned {
                        token: Token::PName { prefix: word, local },
                        position: start,
                    });
                } else {
                    tokens.push(Spanned { token: Token::Word(word), position: start });
                }
            }
            other => {
                return Err(SparqlError::Syntax {
                    position: start,
                    message: format!("unexpected character '{other}'"),
                })
            }
        }
    }
    tokens.push(Spanned { token: Token::Eof, position: chars.len() });
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
    prefixes: BTreeMap<String, String>,
    patterns: Vec<TriplePattern>,
    filters: Vec<FilterExpr>,
    blank_vars: BTreeMap<String, String>,
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

    fn syntax(&self, at: &Spanned, message: impl Into<String>) -> SparqlError {
        SparqlError::Syntax {
            position: at.position,
            message: message.into(),
        }
    }

    fn check_unsupported(&self, _at: &Spanned, word: &str) -> Result<(), SparqlError> {
        let upper = word.to_ascii_uppercase();
        if UNSUPPORTED_KEYWORDS.contains(&upper.as_str()) {
            return Err(SparqlError::Unsupported(upper));
        }
        Ok(())
    }

    fn fresh_var(&mut self) -> String {
        let name = format!("bn#{}", self.fresh_counter);
        self.fresh_counter += 1;
        name
    }

    fn blank_var(&mut self, label: &str) -> String {
        if let Some(v) = self.blank_vars.get(label) {
            return v.clone();
        }
        let v = self.fresh_var();
        self.blank_vars.insert(label.to_string(), v.clone());
        v
    }

    fn resolve_pname(&self, at: &Spanned, prefix: &str, local: &str) -> Result<Term, SparqlError> {
        let Some(ns) = self.prefixes.get(prefix) else {
            return Err(self.syntax(at, format!("undeclared prefix '{prefix}'")));
        };
        Term::iri(format!("{ns}{local}")).map_err(|e| self.syntax(at, e.to_string()))
    }

    fn keyword_is(&self, word: &str) -> bool {
        matches!(&self.peek().token, Token::Word(w) if w.eq_ignore_ascii_case(word))
    }

    fn parse_query(&mut self) -> Result<Vec<String>, SparqlError> {
        while self.keyword_is("PREFIX") {
            self.advance();
            let t = self.advance();
            let Token::PName { prefix, local } = &t.token else {
                return Err(self.syntax(&t, "expected prefix name after PREFIX"));
            };
            if !local.is_empty() {
                return Err(self.syntax(&t, "prefix declaration must end in ':'"));
            }
            let label = prefix.clone();
            let t = self.advance();
            let Token::IriRef(ns) = &t.token else {
                return Err(self.syntax(&t, "expected IRI in PREFIX declaration"));
            };
            self.prefixes.insert(label, ns.clone());
        }

        let t = self.advance();
        match &t.token {
            Token::Word(w) if w.eq_ignore_ascii_case("SELECT") => {}
            Token::Word(w) => {
                self.check_unsupported(&t, w)?;
                return Err(self.syntax(&t, format!("expected SELECT, found '{w}'")));
            }
            other => return Err(self.syntax(&t, format!("expected SELECT, found {other:?}"))),
        }

        let mut projection = Vec::new();
        loop {
            match &self.peek().token {
                Token::Var(v) => {
                    projection.push(v.clone());
                    self.advance();
                }
                Token::Star => {
                    return Err(SparqlError::Unsupported("SELECT *".to_string()));
                }
                _ => break,
            }
        }
        if projection.is_empty() {
            let t = self.peek().clone();
            return Err(self.syntax(&t, "SELECT needs at least one variable"));
        }

        let t = self.advance();
        match &t.token {
            Token::Word(w) if w.eq_ignore_ascii_case("WHERE") => {}
            other => return Err(self.syntax(&t, format!("expected WHERE, found {other:?}"))),
        }
        let t = self.advance();
        if t.token != Token::LBrace {
            return Err(self.syntax(&t, "expected '{' after WHERE"));
        }
        self.parse_group()?;
        let t = self.advance();
        if t.token != Token::Eof {
            return Err(self.syntax(&t, "unexpected input after '}'"));
        }
        Ok(projection)
    }

    fn parse_group(&mut self) -> Result<(), SparqlError> {
        loop {
            match &self.peek().token {
                Token::RBrace => {
                    self.advance();
                    return Ok(());
                }
                Token::Eof => {
                    let t = self.peek().clone();
                    return Err(self.syntax(&t, "unterminated WHERE group"));
                }
                Token::Dot => {
                    self.advance();
                }
                Token::Word(w) if w.eq_ignore_ascii_case("FILTER") => {
                    self.advance();
                    self.parse_filter()?;
                }
                Token::LBrace => {
                    let t = self.peek().clone();
                    return Err(self.syntax(&t, "nested groups are not supported"));
                }
                _ => {
                    let subject = self.parse_pattern_term(PatternPosition::Subject)?;
                    self.parse_predicate_object_list(&subject)?;
                }
            }
        }
    }

    fn parse_filter(&mut self) -> Result<(), SparqlError> {
        let t = self.advance();
        if t.token != Token::LParen {
            return Err(self.syntax(&t, "expected '(' after FILTER"));
        }
        let mut atoms = Vec::new();
        loop {
            let left = self.parse_operand()?;
            let t = self.advance();
            if t.token != Token::Eq {
                return Err(self.syntax(&t, "FILTER supports only '=' comparisons"));
            }
            let right = self.parse_operand()?;
            let at = self.peek().clone();
            let atom = match (left, right) {
                (PatternTerm::Var(a), PatternTerm::Var(b)) => FilterAtom::VarVar(a, b),
                (PatternTerm::Var(v), PatternTerm::Term(t)) => FilterAtom::VarTerm(v, t),
                (PatternTerm::Term(t), PatternTerm::Var(v)) => FilterAtom::VarTerm(v, t),
                (PatternTerm::Term(_), PatternTerm::Term(_)) => {
                    return Err(self.syntax(&at, "filter atom must reference a variable"))
                }
            };
            atoms.push(atom);
            match &self.peek().token {
                Token::AndAnd => {
                    self.advance();
                }
                Token::RParen => {
                    self.advance();
                    break;
                }
                _ => {
                    let t = self.peek().clone();
                    return Err(self.syntax(&t, "expected '&&' or ')' in FILTER"));
                }
            }
        }
        self.filters.push(FilterExpr { atoms });
        Ok(())
    }

    fn parse_operand(&mut self) -> Result<PatternTerm, SparqlError> {
        let t = self.advance();
        match &t.token {
            Token::Var(v) => Ok(PatternTerm::var(v.clone())),
            Token::IriRef(iri) => Ok(PatternTerm::Term(
                Term::iri(iri.clone()).map_err(|e| self.syntax(&t, e.to_string()))?,
            )),
            Token::PName { prefix, local } => {
                Ok(PatternTerm::Term(self.resolve_pname(&t, prefix, local)?))
            }
            Token::BlankLabel(l) => {
                let label = l.clone();
                Ok(PatternTerm::var(self.blank_var(&label)))
            }
            Token::StringLit(_) => {
                self.pos -= 1;
                Ok(PatternTerm::Term(self.parse_literal()?))
            }
            Token::Word(w) => {
                self.check_unsupported(&t, w)?;
                // bare identifier: a relative IRI (template placeholders land here)
                Ok(PatternTerm::Term(
                    Term::iri(w.clone()).map_err(|e| self.syntax(&t, e.to_string()))?,
                ))
            }
            other => Err(self.syntax(&t, format!("expected filter operand, found {other:?}"))),
        }
    }

    fn parse_literal(&mut self) -> Result<Term, SparqlError> {
        let t = self.advance();
        let Token::StringLit(lex) = &t.token else {
            return Err(self.syntax(&t, "expected string literal"));
        };
        let lex = lex.clone();
        match &self.peek().token {
            Token::HatHat => {
                self.advance();
                let dt = self.advance();
                let datatype = match &dt.token {
                    Token::IriRef(iri) => {
                        Term::iri(iri.clone()).map_err(|e| self.syntax(&dt, e.to_string()))?
                    }
                    Token::PName { prefix, local } => self.resolve_pname(&dt, prefix, local)?,
                    other => {
                        return Err(self.syntax(&dt, format!("expected datatype IRI, found {other:?}")))
                    }
                };
                let Term::Iri(dt_iri) = datatype else {
                    unreachable!()
                };
                Ok(Term::literal(lex, dt_iri))
            }
            Token::LangTag(tag) => {
                let tag = tag.clone();
                self.advance();
                Ok(Term::lang_literal(lex, tag))
            }
            _ => Ok(Term::string_literal(lex)),
        }
    }

    fn parse_pattern_term(&mut self, pos: PatternPosition) -> Result<PatternTerm, SparqlError> {
        let t = self.advance();
        match &t.token {
            Token::Var(v) => Ok(PatternTerm::var(v.clone())),
            Token::IriRef(iri) => Ok(PatternTerm::Term(
                Term::iri(iri.clone()).map_err(|e| self.syntax(&t, e.to_string()))?,
            )),
            Token::PName { prefix, local } => {
                Ok(PatternTerm::Term(self.resolve_pname(&t, prefix, local)?))
            }
            Token::Word(w) if w == "a" && pos == PatternPosition::Predicate => {
                Ok(PatternTerm::Term(vocab::rdf_type()))
            }
            Token::Word(w) => {
                self.check_unsupported(&t, w)?;
                Ok(PatternTerm::Term(
                    Term::iri(w.clone()).map_err(|e| self.syntax(&t, e.to_string()))?,
                ))
            }
            Token::BlankLabel(l) if pos != PatternPosition::Predicate => {
                let label = l.clone();
                Ok(PatternTerm::var(self.blank_var(&label)))
            }
            Token::LBracket if pos != PatternPosition::Predicate => {
                let var = self.fresh_var();
                let node = PatternTerm::var(var);
                if self.peek().token == Token::RBracket {
                    self.advance();
                    return Ok(node);
                }
                self.parse_predicate_object_list(&node)?;
                let t = self.advance();
                if t.token != Token::RBracket {
                    return Err(self.syntax(&t, "expected ']'"));
                }
                Ok(node)
            }
            Token::StringLit(_) if pos == PatternPosition::Object => {
                self.pos -= 1;
                Ok(PatternTerm::Term(self.parse_literal()?))
            }
            other => Err(self.syntax(&t, format!("unexpected token in pattern: {other:?}"))),
        }
    }

    fn parse_predicate_object_list(&mut self, subject: &PatternTerm) -> Result<(), SparqlError> {
        loop {
            let predicate = self.parse_pattern_term(PatternPosition::Predicate)?;
            if matches!(&predicate, PatternTerm::Term(t) if t.is_literal()) {
                let t = self.peek().clone();
                return Err(self.syntax(&t, "literal in predicate position"));
            }
            loop {
                let object = self.parse_pattern_term(PatternPosition::Object)?;
                self.patterns.push(TriplePattern {
                    subject: subject.clone(),
                    predicate: predicate.clone(),
                    object,
                });
                if self.peek().token == Token::Comma {
                    self.advance();
                } else {
                    break;
                }
            }
            if self.peek().token == Token::Semicolon {
                self.advance();
                if matches!(self.peek().token, Token::Dot | Token::RBracket | Token::RBrace) {
                    return Ok(());
                }
            } else {
                return Ok(());
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PatternPosition {
    Subject,
    Predicate,
    Object,
}

/// Parses query text into a [`Query`].
pub fn parse_query(text: &str) -> Result<Query, SparqlError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        prefixes: BTreeMap::new(),
        patterns: Vec::new(),
        filters: Vec::new(),
        blank_vars: BTreeMap::new(),
        fresh_counter: 0,
    };
    let projection = parser.parse_query()?;

    let pattern_vars: Vec<&str> = parser
        .patterns
        .iter()
        .flat_map(|p| p.variables())
        .collect();
    for var in &projection {
        if !pattern_vars.contains(&var.as_str()) {
            return Err(SparqlError::Syntax {
                position: 0,
                message: format!("projected variable ?{var} does not appear in any pattern"),
            });
        }
    }

    Ok(Query {
        prefixes: parser.prefixes,
        projection,
        patterns: parser.patterns,
        filters: parser.filters,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_query() {
        let q = parse_query("SELECT ?x WHERE { ?x ?p ?o }").unwrap();
        assert_eq!(q.projection, vec!["x"]);
        assert_eq!(q.patterns.len(), 1);
        assert!(q.filters.is_empty());
    }

    #[test]
    fn optional_is_unsupported() {
        let err = parse_query("SELECT ?x WHERE { OPTIONAL { ?x ?p ?o } }").unwrap_err();
        assert!(matches!(err, SparqlError::Unsupported(k) if k == "OPTIONAL"));
    }

    #[test]
    fn select_star_is_unsupported() {
        let err = parse_query("SELECT * WHERE { ?x ?p ?o }").unwrap_err();
        assert!(matches!(err, SparqlError::Unsupported(_)));
    }

    #[test]
    fn kpi_template_shape_parses_verbatim() {
        // nested blank-node property lists expand to fresh variables and the
        // bare placeholder words parse as relative IRIs
        let text = r#"
PREFIX icm: <http://tio.models.tmforum.org/tio/v2.0.0/IntentCommonModel/>

SELECT ?parameter ?value
WHERE {
  ?service ?property [ icm:valueBy [
  ?parameter ?value ] ] .
  FILTER (?parameter = param && ?service = serv)
}
"#;
        let q = parse_query(text).unwrap();
        assert_eq!(q.projection, vec!["parameter", "value"]);
        assert_eq!(q.patterns.len(), 3);
        assert_eq!(q.filters.len(), 1);
        assert_eq!(q.filters[0].atoms.len(), 2);
        assert_eq!(
            q.filters[0].atoms[0],
            FilterAtom::VarTerm("parameter".into(), Term::iri("param").unwrap())
        );
    }

    #[test]
    fn projected_variable_must_occur_in_patterns() {
        let err = parse_query("SELECT ?y WHERE { ?x ?p ?o }").unwrap_err();
        assert!(matches!(err, SparqlError::Syntax { .. }));
    }

    #[test]
    fn undeclared_prefix_is_syntax_error() {
        let err = parse_query("SELECT ?x WHERE { ?x ex:p ?o }").unwrap_err();
        assert!(matches!(err, SparqlError::Syntax { .. }));
    }
}
