//! Keyword recognition: deterministic longest-alias matching of free-form
//! request text against catalog service names and a fixed alias table.

use std::collections::BTreeSet;

use super::{PipelineError, UserIntent};
use crate::kb::Catalog;

/// Alias phrases mapped to built-in service names. Matching is done on
/// lowercased, punctuation-stripped token sequences.
const ALIASES: &[(&str, &str)] = &[
    ("mission critical voice", "McpttVoice"),
    ("mission critical push to talk", "McpttVoice"),
    ("mcptt voice", "McpttVoice"),
    ("mission critical data", "McpttData"),
    ("mcptt data", "McpttData"),
    ("mission critical signalling", "McpttSignalling"),
    ("mcptt signalling", "McpttSignalling"),
    ("conversational voice", "ConvVoice"),
    ("voice call", "ConvVoice"),
    ("conversational video", "ConvVideo"),
    ("video call", "ConvVideo"),
    ("live video", "ConvVideo"),
    ("non conversational video", "NonConvVideo"),
    ("buffered video", "VideoBuffered"),
    ("video streaming", "VideoBuffered"),
    ("real time gaming", "RealTimeGaming"),
    ("gaming", "RealTimeGaming"),
    ("process monitoring", "ProcessMonitor"),
    ("process automation", "ProcessMonitor"),
    ("ims signalling", "ImsSignalling"),
    ("tcp interactive", "TcpInteractive"),
    ("web browsing", "TcpInteractive"),
];

fn tokens(text: &str) -> Vec<String> {
    text.to_lowercase()
        .split(|c: char| !c.is_ascii_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(str::to_string)
        .collect()
}

fn contains_phrase(haystack: &[String], phrase: &[String]) -> bool {
    !phrase.is_empty() && haystack.windows(phrase.len()).any(|w| w == phrase)
}

/// Recognizes exactly one catalog service in `raw_text`.
///
/// Candidate aliases are all catalog service names plus the fixed alias
/// table; the longest matching phrase wins. Distinct services matched by
/// equally long phrases make the intent ambiguous.
pub fn recognize(raw_text: &str, catalog: &Catalog) -> Result<UserIntent, PipelineError> {
    let text_tokens = tokens(raw_text);
    let mut matches: Vec<(usize, &str)> = Vec::new(); // (phrase length, service)

    for name in catalog.specs().keys() {
        let phrase = tokens(name);
        if contains_phrase(&text_tokens, &phrase) {
            matches.push((name.len(), name));
        }
    }
    for (alias, service) in ALIASES {
        if catalog.get(service).is_none() {
            continue;
        }
        let phrase = tokens(alias);
        if contains_phrase(&text_tokens, &phrase) {
            matches.push((alias.len(), service));
        }
    }

    let Some(best_len) = matches.iter().map(|(len, _)| *len).max() else {
        return Err(PipelineError::NoServiceRecognized(raw_text.to_string()));
    };
    let winners: BTreeSet<&str> = matches
        .iter()
        .filter(|(len, _)| *len == best_len)
        .map(|(_, s)| *s)
        .collect();
    if winners.len() > 1 {
        return Err(PipelineError::AmbiguousIntent(
            winners.into_iter().map(str::to_string).collect(),
        ));
    }
    let service = winners.into_iter().next().expect("non-empty");
    Ok(UserIntent {
        raw_text: raw_text.to_string(),
        recognized_service: service.to_string(),
        requester: "user".to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alias_phrase_is_recognized() {
        let catalog = Catalog::load_builtin();
        let intent = recognize("I need Mission Critical Voice for my team", &catalog).unwrap();
        assert_eq!(intent.recognized_service, "McpttVoice");
    }

    #[test]
    fn exact_service_name_is_recognized() {
        let catalog = Catalog::load_builtin();
        let intent = recognize("deploy ConvVideo please", &catalog).unwrap();
        assert_eq!(intent.recognized_service, "ConvVideo");
    }

    #[test]
    fn unknown_text_is_rejected() {
        let catalog = Catalog::load_builtin();
        assert!(matches!(
            recognize("hello world", &catalog),
            Err(PipelineError::NoServiceRecognized(_))
        ));
    }

    #[test]
    fn longest_alias_wins_over_contained_phrase() {
        // "non conversational video" contains "conversational video"
        let catalog = Catalog::load_builtin();
        let intent = recognize("we want non conversational video", &catalog).unwrap();
        assert_eq!(intent.recognized_service, "NonConvVideo");
    }

    #[test]
    fn two_distinct_services_are_ambiguous() {
        let catalog = Catalog::load_builtin();
        let err = recognize("ConvVideo or McpttData", &catalog).unwrap_err();
        match err {
            PipelineError::AmbiguousIntent(candidates) => {
                assert_eq!(candidates, vec!["ConvVideo", "McpttData"]);
            }
            other => panic!("expected ambiguity, got {other:?}"),
        }
    }
}
