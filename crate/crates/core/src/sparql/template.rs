//! Query-template substitution.
//!
//! Templates are ordinary query text carrying bare-word placeholders (for
//! example `param` and `serv` in the shipped KPI retrieval template). Each
//! placeholder is replaced by the Turtle form of its bound term before the
//! text is parsed. Variables, prefixed names, IRIs, strings, comments and
//! the grammar keywords are never treated as placeholders.

use std::collections::BTreeMap;

use super::SparqlError;
use crate::rdf::Term;
use crate::vocab;

const KEYWORDS: &[&str] = &["PREFIX", "SELECT", "WHERE", "FILTER"];

fn is_word_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_word_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Turtle form of a term for splicing into query text; IRIs use the
/// angle-bracket form so substitution never depends on prefix declarations.
fn term_text(term: &Term) -> String {
    match term {
        Term::Iri(iri) => format!("<{iri}>"),
        Term::BlankNode(id) => format!("_:{id}"),
        Term::Literal(l) => {
            let escaped = l
                .lexical
                .replace('\\', "\\\\")
                .replace('"', "\\\"")
                .replace('\n', "\\n");
            if let Some(lang) = &l.language {
                format!("\"{escaped}\"@{lang}")
            } else if l.datatype == vocab::xsd_string() {
                format!("\"{escaped}\"")
            } else {
                format!("\"{escaped}\"^^<{}>", l.datatype)
            }
        }
    }
}

/// Replaces every placeholder in `template` with the Turtle form of its
/// binding. Fails with `MissingPlaceholder` when the template mentions a
/// placeholder the bindings do not cover.
pub fn substitute(template: &str, bindings: &BTreeMap<String, Term>) -> Result<String, SparqlError> {
    let chars: Vec<char> = template.chars().collect();
    let mut out = String::with_capacity(template.len());
    let mut i = 0usize;
    while i < chars.len() {
        let c = chars[i];
        match c {
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    out.push(chars[i]);
                    i += 1;
                }
            }
            '"' => {
                out.push(c);
                i += 1;
                while i < chars.len() {
                    out.push(chars[i]);
                    if chars[i] == '\\' && i + 1 < chars.len() {
                        out.push(chars[i + 1]);
                        i += 2;
                        continue;
                    }
                    let done = chars[i] == '"';
                    i += 1;
                    if done {
                        break;
                    }
                }
            }
            '<' => {
                while i < chars.len() {
                    out.push(chars[i]);
                    let done = chars[i] == '>';
                    i += 1;
                    if done {
                        break;
                    }
                }
            }
            '?' | '$' => {
                out.push(c);
                i += 1;
                while i < chars.len() && is_word_char(chars[i]) {
                    out.push(chars[i]);
                    i += 1;
                }
            }
            ':' => {
                // empty-prefix name, copy the local part through
                out.push(c);
                i += 1;
                while i < chars.len() && (is_word_char(chars[i]) || chars[i] == '-') {
                    out.push(chars[i]);
                    i += 1;
                }
            }
            c if is_word_start(c) => {
                let start = i;
                while i < chars.len() && is_word_char(chars[i]) {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                if i < chars.len() && chars[i] == ':' {
                    // prefixed name: copy prefix, colon and local part
                    out.push_str(&word);
                    out.push(':');
                    i += 1;
                    while i < chars.len() && (is_word_char(chars[i]) || chars[i] == '-') {
                        out.push(chars[i]);
                        i += 1;
                    }
                } else if word == "a" || KEYWORDS.iter().any(|k| word.eq_ignore_ascii_case(k)) {
                    out.push_str(&word);
                } else {
                    match bindings.get(&word) {
                        Some(term) => out.push_str(&term_text(term)),
                        None => return Err(SparqlError::MissingPlaceholder(word)),
                    }
                }
            }
            other => {
                out.push(other);
                i += 1;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn template_without_placeholders_is_unchanged() {
        let text = "PREFIX ex: <http://e/>\nSELECT ?x WHERE { ?x ex:p \"v\" }";
        let out = substitute(text, &BTreeMap::new()).unwrap();
        assert_eq!(out, text);
    }

    #[test]
    fn placeholders_are_replaced_with_turtle_forms() {
        let mut bindings = BTreeMap::new();
        bindings.insert("param".to_string(), Term::iri("http://e/kpi").unwrap());
        let out = substitute("FILTER (?p = param)", &bindings).unwrap();
        assert_eq!(out, "FILTER (?p = <http://e/kpi>)");
    }

    #[test]
    fn missing_placeholder_is_reported_by_name() {
        let err = substitute("FILTER (?p = param && ?s = serv)", &BTreeMap::new()).unwrap_err();
        assert!(matches!(err, SparqlError::MissingPlaceholder(n) if n == "param"));
    }

    #[test]
    fn words_inside_strings_comments_and_names_are_untouched() {
        let text = "# param here\nSELECT ?x WHERE { ?x ex:param \"param\" }";
        let out = substitute(text, &BTreeMap::new()).unwrap();
        assert_eq!(out, text);
    }
}
