//! Deterministic top-down parsing of single controlled-English sentences.
//!
//! The grammar is a hand-written recursive descent over the token stream with
//! number/gender/person agreement. Structural choices are never revisited:
//! prepositional phrases attach to the verb phrase and relative clauses to the
//! noun phrase immediately to their left. The only lookahead is lexical, to
//! tell an object conjunct (`... a card and a code`) from a new clause
//! (`... a card and the customer types ...`).

mod grammar;
mod token;
pub mod tree;

use std::ops::Range;

use thiserror::Error;

use crate::diagnostics::Diagnostic;
use crate::lexicon::Lexicon;

pub use token::{split_sentences, tokenize, Token, TokenKind};
pub use tree::*;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("sentence must end with `.` or `?`")]
    UnterminatedSentence,
    #[error("unknown words: {}", .words.join(", "))]
    UnknownWords { words: Vec<String> },
    #[error("{message}")]
    Syntax { message: String, span: Range<usize> },
    #[error("modal verb `{word}` is not admitted; state facts directly")]
    ModalVerbRejected { word: String, span: Range<usize> },
    #[error("participle `{word}` is not admitted")]
    ParticipleRejected { word: String, span: Range<usize> },
    #[error("`{word}` is not in the simple present tense")]
    NonPresentTenseRejected { word: String, span: Range<usize> },
    #[error("passive `{word}` is not admitted; name the agent and use the active voice")]
    PassiveRejected { word: String, span: Range<usize> },
}

impl ParseError {
    pub fn code(&self) -> &'static str {
        match self {
            ParseError::UnterminatedSentence => "unterminated-sentence",
            ParseError::UnknownWords { .. } => "unknown-words",
            ParseError::Syntax { .. } => "syntax-error",
            ParseError::ModalVerbRejected { .. } => "modal-verb",
            ParseError::ParticipleRejected { .. } => "participle",
            ParseError::NonPresentTenseRejected { .. } => "non-present-tense",
            ParseError::PassiveRejected { .. } => "passive",
        }
    }

    pub fn span(&self) -> Option<Range<usize>> {
        match self {
            ParseError::Syntax { span, .. }
            | ParseError::ModalVerbRejected { span, .. }
            | ParseError::ParticipleRejected { span, .. }
            | ParseError::NonPresentTenseRejected { span, .. }
            | ParseError::PassiveRejected { span, .. } => Some(span.clone()),
            _ => None,
        }
    }

    pub fn diagnostic(&self) -> Diagnostic {
        Diagnostic::error(self.code(), self.to_string(), self.span())
    }
}

/// Parses one sentence. Info diagnostics describe the attachment decisions.
pub fn parse_sentence(
    text: &str,
    tokens: &[Token],
    lexicon: &Lexicon,
) -> Result<(SyntaxTree, SentenceKind, Vec<Diagnostic>), ParseError> {
    grammar::check_words(tokens, lexicon)?;
    let tree = grammar::Parser::new(text, tokens, lexicon).parse()?;
    let diagnostics = tree
        .attachments
        .iter()
        .map(|a| {
            let what = match a.policy {
                AttachmentPolicy::MinimalAttachment => "prepositional phrase attached to the verb phrase",
                AttachmentPolicy::RightAssociation => "relative clause attached to the rightmost noun phrase",
            };
            Diagnostic::info("attachment", what.to_string(), None)
        })
        .collect();
    let kind = tree.kind;
    Ok((tree, kind, diagnostics))
}

/// Tokenizes and parses in one step.
pub fn parse(text: &str, lexicon: &Lexicon) -> Result<SyntaxTree, ParseError> {
    let tokens = tokenize(text, lexicon)?;
    parse_sentence(text, &tokens, lexicon).map(|(t, _, _)| t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::{Number, SIMPLEMAT_LEXICON};

    fn lex() -> Lexicon {
        Lexicon::parse(SIMPLEMAT_LEXICON).unwrap()
    }

    fn ok(text: &str) -> SyntaxTree {
        parse(text, &lex()).unwrap_or_else(|e| panic!("{text}: {e}"))
    }

    fn code(text: &str) -> &'static str {
        parse(text, &lex()).unwrap_err().code()
    }

    fn only_clause(t: &SyntaxTree) -> &Clause {
        match &t.sentence {
            Sentence::Clause(c) => c,
            other => panic!("not a clause: {other:?}"),
        }
    }

    fn verb_group(c: &Clause) -> &VerbGroup {
        match &c.predicate.items[0] {
            VerbPhrase::Verb(v) => v,
            other => panic!("not a verb group: {other:?}"),
        }
    }

    #[test]
    fn simple_declarative() {
        let t = ok("The customer enters a card.");
        assert_eq!(t.kind, SentenceKind::Declarative);
        assert_eq!(t.root_category(), RootCategory::Decl);
        let v = verb_group(only_clause(&t));
        assert_eq!(v.verb.lemma, "enter");
        assert_eq!(v.object.as_ref().unwrap().items.len(), 1);
    }

    #[test]
    fn pp_attaches_to_verb_phrase() {
        let t = ok("The customer enters a card with a code.");
        let v = verb_group(only_clause(&t));
        assert_eq!(v.pps.len(), 1);
        assert_eq!(t.attachments.len(), 1);
        assert_eq!(t.attachments[0].policy, AttachmentPolicy::MinimalAttachment);
        assert_eq!(t.attachments[0].site, v.id);
        assert_eq!(t.attachments[0].site_category, Category::VP);
    }

    #[test]
    fn relative_clause_attaches_to_rightmost_np() {
        let t = ok("The customer enters a card that carries a code.");
        let v = verb_group(only_clause(&t));
        let card = &v.object.as_ref().unwrap().items[0];
        assert!(card.rel.is_some());
        assert_eq!(t.attachments[0].policy, AttachmentPolicy::RightAssociation);
        assert_eq!(t.attachments[0].site, card.id);
    }

    #[test]
    fn rejected_forms() {
        assert_eq!(code("The customer must enter a card."), "modal-verb");
        assert_eq!(code("The customer entered a card."), "non-present-tense");
        assert_eq!(code("The card is entered."), "passive");
        assert_eq!(code("The customer is entering a card."), "participle");
        assert_eq!(code("The customer did enter a card."), "non-present-tense");
        assert_eq!(code("The customer frobnicates a card."), "unknown-words");
        assert_eq!(code("The customer enter a card."), "syntax-error");
        assert_eq!(code("If the card is valid SM accepts the card."), "syntax-error");
    }

    #[test]
    fn unknown_words_are_listed() {
        match parse("The wizard frobnicates a card.", &lex()) {
            Err(ParseError::UnknownWords { words }) => assert_eq!(words, ["wizard", "frobnicates"]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn questions() {
        let t = ok("Does the customer enter a card?");
        assert_eq!(t.kind, SentenceKind::YesNoQuestion);
        let t = ok("Who enters a card?");
        assert_eq!(t.kind, SentenceKind::WhQuestion);
        assert!(matches!(&only_clause(&t).subject, Subject::Single(NounPhrase { kind: NpKind::Wh(_), .. })));
        let t = ok("What does the customer enter?");
        let v = verb_group(only_clause(&t));
        assert!(matches!(v.object.as_ref().unwrap().items[0].kind, NpKind::Wh(_)));
        ok("Is the card valid?");
        assert_eq!(code("Does SM not reject the card?"), "syntax-error");
        assert_eq!(code("Does the customer enter a card and a code?"), "syntax-error");
        assert_eq!(code("Does the customer enter a card."), "syntax-error");
    }

    #[test]
    fn object_versus_sentence_coordination() {
        let t = ok("The customer enters a card and a numeric personal code.");
        let v = verb_group(only_clause(&t));
        let o = v.object.as_ref().unwrap();
        assert_eq!(o.op, Some(Coordinator::And));
        assert_eq!(o.items.len(), 2);
        let t = ok("The customer enters the card and the customer types a code.");
        assert!(matches!(&t.sentence, Sentence::Coord { op: Coordinator::And, items, .. } if items.len() == 2));
        let t = ok("The customer enters a card and types a code.");
        assert_eq!(only_clause(&t).predicate.items.len(), 2);
    }

    #[test]
    fn disjunctions_and_negations() {
        let t = ok("The customer enters either a card or a code.");
        assert_eq!(verb_group(only_clause(&t)).object.as_ref().unwrap().op, Some(Coordinator::EitherOr));
        let t = ok("The customer enters neither a card nor a code.");
        assert_eq!(verb_group(only_clause(&t)).object.as_ref().unwrap().op, Some(Coordinator::NeitherNor));
        let t = ok("The customer enters a card or a code or a receipt.");
        assert_eq!(verb_group(only_clause(&t)).object.as_ref().unwrap().items.len(), 3);
        assert_eq!(ok("The customer does not enter a card.").root_category(), RootCategory::Neg);
        assert_eq!(ok("No customer enters a card.").root_category(), RootCategory::Neg);
        assert_eq!(ok("The card is not valid.").root_category(), RootCategory::Neg);
        assert_eq!(code("The customer enters a card and a code or a receipt."), "syntax-error");
        assert_eq!(code("The customer does enter a card."), "syntax-error");
    }

    #[test]
    fn plural_readings() {
        let t = ok("John and Mary each enter a card.");
        assert!(matches!(&only_clause(&t).subject, Subject::Coord { each: true, members, .. } if members.len() == 2));
        let t = ok("John and Mary enter a card together.");
        assert!(only_clause(&t).predicate.together());
        assert_eq!(code("John and Mary enters a card."), "syntax-error");
        assert_eq!(code("John enters a card together."), "syntax-error");
    }

    #[test]
    fn if_then_and_anaphora_shapes() {
        let t = ok("If it is not valid then SM rejects the card.");
        assert_eq!(t.root_category(), RootCategory::IfThen);
        ok("If a customer enters a card, then SimpleMat accepts the card.");
    }

    #[test]
    fn numbers_and_comparatives() {
        let t = ok("The customer enters two cards.");
        let v = verb_group(only_clause(&t));
        assert_eq!(v.object.as_ref().unwrap().items[0].features.number, Number::Pl);
        ok("The customer enters 3 cards.");
        ok("The customer enters 1234.");
        ok("The card is bigger than the code.");
        ok("The card is more valid than the code.");
        ok("The customer enters money.");
        assert_eq!(code("The customer enters two card."), "syntax-error");
        assert_eq!(code("The customer enters card."), "syntax-error");
        assert_eq!(code("The customer enters a money."), "syntax-error");
    }

    #[test]
    fn nested_relative_clauses_rejected() {
        assert_eq!(code("The customer enters a card that carries a code that carries a receipt."), "syntax-error");
    }

    #[test]
    fn every_verb_agrees_with_its_subject() {
        for s in [
            "The customer enters a card and a numeric personal code.",
            "John and Mary enter a card together.",
            "The customer enters a card that carries a code.",
            "The customers do not enter a card.",
        ] {
            for (leaf, n) in ok(s).verb_agreements() {
                let want = if n == Number::Sg { crate::lexicon::FormSlot::ThirdSg } else { crate::lexicon::FormSlot::ThirdPl };
                assert_eq!(leaf.slot, want, "{s}: {}", leaf.surface);
            }
        }
    }

    #[test]
    fn parsing_is_deterministic() {
        let s = "If a customer enters a card that carries a code then SM checks the code with a machine.";
        assert_eq!(ok(s), ok(s));
    }
}
