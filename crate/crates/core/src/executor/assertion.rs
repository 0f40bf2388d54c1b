use std::fmt;
use std::path::Path;

use super::ExecError;
use crate::lexicon::{predicate_name, Lexicon, WordClass};

/// A statement about the situation: `john is a customer`, `1234 is not valid`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Assertion {
    Instance { name: String, sort: String },
    Truth { name: String, adjective: String, positive: bool },
}

impl Assertion {
    pub fn name(&self) -> &str {
        match self {
            Assertion::Instance { name, .. } | Assertion::Truth { name, .. } => name,
        }
    }
}

impl fmt::Display for Assertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Assertion::Instance { name, sort } => {
                write!(f, "{name} is {} {sort}", crate::discourse::article(sort))
            }
            Assertion::Truth { name, adjective, positive: true } => write!(f, "{name} is {adjective}"),
            Assertion::Truth { name, adjective, positive: false } => write!(f, "{name} is not {adjective}"),
        }
    }
}

fn malformed(text: &str, reason: &str) -> ExecError {
    ExecError::MalformedAssertion { text: text.to_string(), reason: reason.to_string(), line: None }
}

fn is_sort(word: &str, lex: &Lexicon) -> bool {
    lex.content_words().iter().any(|e| match e.class {
        WordClass::CommonNoun => e.predicate() == word,
        WordClass::ProperNoun => e.lemma == word,
        _ => false,
    })
}

/// Parses `<name> is a|an <sort>` or `<name> is [not] <adjective>`. Sorts
/// are noun predicates (`personal_code`) or proper-noun names (`simplemat`).
pub fn parse_assertion(text: &str, lexicon: &Lexicon) -> Result<Assertion, ExecError> {
    let line = text.trim().trim_end_matches('.').trim();
    let words: Vec<String> = line.split_whitespace().map(str::to_lowercase).collect();
    let valid_name = |w: &str| !w.is_empty() && w.chars().all(|c| c.is_alphanumeric() || c == '_');
    match words.iter().map(String::as_str).collect::<Vec<_>>().as_slice() {
        [name, "is", art @ ("a" | "an"), sort] => {
            if !valid_name(name) {
                return Err(malformed(text, "names are letters, digits and `_`"));
            }
            if !is_sort(sort, lexicon) {
                return Err(malformed(text, &format!("`{sort}` is not a noun of the lexicon")));
            }
            if *art != crate::discourse::article(sort) {
                return Err(malformed(text, &format!("use `{}` before `{sort}`", crate::discourse::article(sort))));
            }
            Ok(Assertion::Instance { name: name.to_string(), sort: sort.to_string() })
        }
        [name, "is", rest @ ..] if !rest.is_empty() && rest.len() <= 2 => {
            let (positive, word) = match rest {
                ["not", w] => (false, *w),
                [w] => (true, *w),
                _ => return Err(malformed(text, "expected `<name> is [not] <adjective>`")),
            };
            if !valid_name(name) {
                return Err(malformed(text, "names are letters, digits and `_`"));
            }
            if is_sort(word, lexicon) {
                return Err(malformed(text, &format!("missing article before `{word}`")));
            }
            match lexicon.entry(word, WordClass::Adjective) {
                Some(e) => Ok(Assertion::Truth { name: name.to_string(), adjective: predicate_name(&e.lemma), positive }),
                None => Err(malformed(text, &format!("`{word}` is not an adjective of the lexicon"))),
            }
        }
        _ => Err(malformed(text, "expected `<name> is a <sort>` or `<name> is [not] <adjective>`")),
    }
}

/// One assertion per line; blank lines and `#` comments are skipped.
pub fn parse_definitions(text: &str, lexicon: &Lexicon) -> Result<Vec<Assertion>, ExecError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let l = line.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        match parse_assertion(l, lexicon) {
            Ok(a) => out.push(a),
            Err(ExecError::MalformedAssertion { text, reason, .. }) => {
                return Err(ExecError::MalformedAssertion { text, reason, line: Some(i + 1) })
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

pub fn load_definitions(path: impl AsRef<Path>, lexicon: &Lexicon) -> Result<Vec<Assertion>, ExecError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| ExecError::MalformedAssertion {
        text: path.display().to_string(),
        reason: e.to_string(),
        line: None,
    })?;
    parse_definitions(&text, lexicon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::SIMPLEMAT_LEXICON;

    fn lex() -> Lexicon {
        Lexicon::parse(SIMPLEMAT_LEXICON).unwrap()
    }

    #[test]
    fn assertion_forms() {
        let l = lex();
        assert_eq!(
            parse_assertion("john is a customer", &l).unwrap(),
            Assertion::Instance { name: "john".into(), sort: "customer".into() }
        );
        assert_eq!(
            parse_assertion("1234 is a personal_code", &l).unwrap().to_string(),
            "1234 is a personal_code"
        );
        assert_eq!(parse_assertion("s1 is a simplemat.", &l).unwrap().to_string(), "s1 is a simplemat");
        assert_eq!(
            parse_assertion("1234 is not valid", &l).unwrap(),
            Assertion::Truth { name: "1234".into(), adjective: "valid".into(), positive: false }
        );
        for bad in ["john is customer", "john is a valid", "john is an card", "john", "john is very not valid", "jo-hn is valid"] {
            assert!(matches!(parse_assertion(bad, &l), Err(ExecError::MalformedAssertion { .. })), "{bad}");
        }
    }

    #[test]
    fn definition_lines() {
        let l = lex();
        assert_eq!(parse_definitions("", &l).unwrap(), vec![]);
        let defs = parse_definitions("# situation\njohn is a customer\n\n1234 is valid\n", &l).unwrap();
        assert_eq!(defs.len(), 2);
        let err = parse_definitions("john is a customer\njohn is customer\n", &l).unwrap_err();
        assert!(matches!(err, ExecError::MalformedAssertion { line: Some(2), .. }));
        assert!(err.to_string().starts_with("line 2: "));
    }
}
