use std::ops::Range;

use crate::lexicon::Lexicon;

use super::ParseError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Word,
    Numeral,
    Punctuation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    /// Byte offsets into the sentence text.
    pub span: Range<usize>,
    pub kind: TokenKind,
}

impl Token {
    pub fn lower(&self) -> String {
        self.surface.to_lowercase()
    }

    pub fn is(&self, word: &str) -> bool {
        self.kind != TokenKind::Numeral && self.surface.eq_ignore_ascii_case(word)
    }
}

fn raw_tokens(text: &str) -> Vec<Token> {
    let mut out = Vec::new();
    let bytes: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < bytes.len() {
        let (start, c) = bytes[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let mut j = i;
            let mut seen_point = false;
            while j < bytes.len() {
                let ch = bytes[j].1;
                if ch.is_ascii_digit() {
                    j += 1;
                } else if ch == '.' && !seen_point && bytes.get(j + 1).is_some_and(|(_, n)| n.is_ascii_digit()) {
                    seen_point = true;
                    j += 1;
                } else {
                    break;
                }
            }
            // `s1`-style alphanumeric names stay words.
            if bytes.get(j).is_some_and(|(_, n)| n.is_alphabetic() || *n == '_') {
                while bytes.get(j).is_some_and(|(_, n)| n.is_alphanumeric() || *n == '_' || *n == '-') {
                    j += 1;
                }
                let end = bytes.get(j).map_or(text.len(), |b| b.0);
                out.push(Token { surface: text[start..end].into(), span: start..end, kind: TokenKind::Word });
            } else {
                let end = bytes.get(j).map_or(text.len(), |b| b.0);
                out.push(Token { surface: text[start..end].into(), span: start..end, kind: TokenKind::Numeral });
            }
            i = j;
        } else if c.is_alphabetic() || c == '_' {
            let mut j = i;
            while bytes.get(j).is_some_and(|(_, n)| n.is_alphanumeric() || *n == '_' || *n == '-' || *n == '\'') {
                j += 1;
            }
            let end = bytes.get(j).map_or(text.len(), |b| b.0);
            out.push(Token { surface: text[start..end].into(), span: start..end, kind: TokenKind::Word });
            i = j;
        } else {
            let end = start + c.len_utf8();
            out.push(Token { surface: c.to_string(), span: start..end, kind: TokenKind::Punctuation });
            i += 1;
        }
    }
    out
}

/// Splits a sentence into tokens, joining known compounds longest-first.
///
/// The last token must be `.` or `?`.
pub fn tokenize(text: &str, lexicon: &Lexicon) -> Result<Vec<Token>, ParseError> {
    let raw = raw_tokens(text);
    match raw.last() {
        Some(t) if t.kind == TokenKind::Punctuation && (t.surface == "." || t.surface == "?") => {}
        _ => return Err(ParseError::UnterminatedSentence),
    }
    let mut out = Vec::with_capacity(raw.len());
    let mut i = 0;
    while i < raw.len() {
        let mut joined = None;
        if raw[i].kind == TokenKind::Word {
            let max = lexicon.max_words().min(raw.len() - i);
            for n in (2..=max).rev() {
                let window = &raw[i..i + n];
                if window.iter().any(|t| t.kind != TokenKind::Word) {
                    continue;
                }
                let surface = window.iter().map(|t| t.surface.as_str()).collect::<Vec<_>>().join(" ");
                if lexicon.is_known(&surface) {
                    let span = window[0].span.start..window[n - 1].span.end;
                    joined = Some((Token { surface, span, kind: TokenKind::Word }, n));
                    break;
                }
            }
        }
        match joined {
            Some((tok, n)) => {
                out.push(tok);
                i += n;
            }
            None => {
                out.push(raw[i].clone());
                i += 1;
            }
        }
    }
    Ok(out)
}

/// Splits running text into sentences at `.`/`?` (decimal points excluded).
pub fn split_sentences(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut start = 0;
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    for (k, &(i, c)) in chars.iter().enumerate() {
        let decimal = c == '.'
            && k > 0
            && chars[k - 1].1.is_ascii_digit()
            && chars.get(k + 1).is_some_and(|(_, n)| n.is_ascii_digit());
        if (c == '.' || c == '?') && !decimal {
            let s = text[start..i + 1].trim();
            if !s.is_empty() {
                out.push(s.to_string());
            }
            start = i + 1;
        }
    }
    let rest = text[start..].trim();
    if !rest.is_empty() {
        out.push(rest.to_string());
    }
    out
}
