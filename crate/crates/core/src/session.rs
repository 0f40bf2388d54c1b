//! A specification session: lexicon, accepted sentences, their DRS and
//! clauses, and at most one analysed sentence waiting for the user's
//! decision.
//!
//! A session file records how to rebuild a session, one line per step:
//!
//! ```text
//! lex: noun|receipt|count,neut|sg=receipt,pl=receipts||
//! sentence: The customer enters a card.
//! ```

use std::path::Path;

use thiserror::Error;

use crate::diagnostics::Diagnostic;
use crate::discourse::{DiscourseError, Drs, ResolutionReport};
use crate::engine::{answer, Answers, KnowledgeBase};
use crate::executor::{parse_definitions, Assertion, ExecError, Execution};
use crate::lexicon::{parse_record, render_record, LexEntry, Lexicon, LexiconError, WordClass};
use crate::paraphrase::{render, Paraphrase};
use crate::parser::{parse_sentence, tokenize, ParseError, SentenceKind, SyntaxTree};
use crate::translator::{translate, TranslateError, Translation};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SessionError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Discourse(#[from] DiscourseError),
    #[error("{}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Translate(Vec<TranslateError>),
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
    #[error(transparent)]
    Execution(#[from] ExecError),
    #[error("no sentence is waiting for a decision")]
    NothingPending,
    #[error("session file line {line}: {message}")]
    SessionFile { line: usize, message: String },
    #[error("{0}")]
    Io(String),
}

impl SessionError {
    /// Process exit status: 1 parse errors, 2 resolution errors,
    /// 3 translation errors, 4 anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            SessionError::Parse(_) => 1,
            SessionError::Discourse(_) => 2,
            SessionError::Translate(_) => 3,
            _ => 4,
        }
    }

    pub fn diagnostics(&self) -> Vec<Diagnostic> {
        match self {
            SessionError::Parse(e) => vec![e.diagnostic()],
            SessionError::Discourse(e) => vec![e.diagnostic()],
            SessionError::Translate(es) => es.iter().map(TranslateError::diagnostic).collect(),
            SessionError::Lexicon(e) => vec![Diagnostic::error("lexicon", e.to_string(), None)],
            SessionError::Execution(e) => vec![Diagnostic::error(e.code(), e.to_string(), None)],
            other => vec![Diagnostic::error("session", other.to_string(), None)],
        }
    }

    /// Words missing from the lexicon, if that is what went wrong.
    pub fn unknown_words(&self) -> &[String] {
        match self {
            SessionError::Parse(ParseError::UnknownWords { words }) => words,
            _ => &[],
        }
    }
}

/// A parsed and resolved sentence, not yet part of the specification.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub text: String,
    pub tree: SyntaxTree,
    pub report: ResolutionReport,
    pub paraphrase: Paraphrase,
    /// Attachment notes and resolution decisions.
    pub diagnostics: Vec<Diagnostic>,
    /// The DRS the session would have after accepting.
    pub drs: Drs,
}

/// The outcome of accepting a sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Accepted {
    pub clauses_text: String,
    /// Translation problems of the new sentence; the sentence is kept and
    /// the predicates involved answer as unknown.
    pub warnings: Vec<TranslateError>,
}

#[derive(Debug, Clone)]
pub struct Session {
    /// The lexicon before any of the logged edits.
    base: Lexicon,
    lexicon: Lexicon,
    drs: Drs,
    translation: Translation,
    kb: KnowledgeBase,
    sentences: Vec<String>,
    paraphrases: Vec<Paraphrase>,
    /// Session file lines in the order the steps happened.
    log: Vec<String>,
    pending: Option<Analysis>,
}

impl Session {
    pub fn new(lexicon: Lexicon) -> Session {
        Session {
            base: lexicon.clone(),
            lexicon,
            drs: Drs::new(),
            translation: Translation::default(),
            kb: KnowledgeBase::new(),
            sentences: Vec::new(),
            paraphrases: Vec::new(),
            log: Vec::new(),
            pending: None,
        }
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }

    /// The lexicon the session file's edits apply to.
    pub fn base_lexicon(&self) -> &Lexicon {
        &self.base
    }

    pub fn drs(&self) -> &Drs {
        &self.drs
    }

    pub fn knowledge_base(&self) -> &KnowledgeBase {
        &self.kb
    }

    pub fn translation(&self) -> &Translation {
        &self.translation
    }

    pub fn sentences(&self) -> &[String] {
        &self.sentences
    }

    pub fn paraphrases(&self) -> &[Paraphrase] {
        &self.paraphrases
    }

    pub fn pending(&self) -> Option<&Analysis> {
        self.pending.as_ref()
    }

    pub fn drs_text(&self) -> String {
        self.drs.pretty()
    }

    pub fn clauses_text(&self) -> String {
        self.translation.text()
    }

    pub fn paraphrase_text(&self) -> String {
        self.paraphrases.iter().map(|p| format!("{}\n", p.text)).collect()
    }

    fn parse(&self, text: &str) -> Result<(SyntaxTree, Vec<Diagnostic>), SessionError> {
        let tokens = tokenize(text, &self.lexicon)?;
        let (tree, _, diags) = parse_sentence(text, &tokens, &self.lexicon)?;
        Ok((tree, diags))
    }

    /// Analyses a declarative sentence against the accepted ones and holds
    /// it for a decision, replacing any earlier pending sentence.
    pub fn submit(&mut self, text: &str) -> Result<&Analysis, SessionError> {
        self.pending = None;
        let (tree, mut diagnostics) = self.parse(text)?;
        if tree.kind != SentenceKind::Declarative {
            return Err(DiscourseError::NotDeclarative.into());
        }
        let (drs, report) = self.drs.extend(&tree, &self.lexicon)?;
        diagnostics.extend(report.entries.iter().map(|e| Diagnostic::info("resolution", e.describe(), None)));
        let paraphrase = render(&tree, &report, &self.lexicon);
        Ok(self.pending.insert(Analysis { text: text.trim().to_string(), tree, report, paraphrase, diagnostics, drs }))
    }

    /// Accepts or rejects the pending sentence. Accepting adds it to the
    /// specification and returns the resulting clauses.
    pub fn decide(&mut self, accept: bool) -> Result<Option<Accepted>, SessionError> {
        let pending = self.pending.take().ok_or(SessionError::NothingPending)?;
        if !accept {
            return Ok(None);
        }
        let index = self.sentences.len();
        self.drs = pending.drs;
        self.log.push(format!("sentence: {}", pending.text));
        self.sentences.push(pending.text);
        self.paraphrases.push(pending.paraphrase);
        self.retranslate();
        let warnings = self.translation.errors.iter().filter(|e| e.sentence() == index).cloned().collect();
        Ok(Some(Accepted { clauses_text: self.clauses_text(), warnings }))
    }

    fn retranslate(&mut self) {
        self.translation = translate(&self.drs);
        self.kb = KnowledgeBase::from_translation(&self.translation);
    }

    /// Submits and accepts in one step.
    pub fn add(&mut self, text: &str) -> Result<Accepted, SessionError> {
        self.submit(text)?;
        Ok(self.decide(true)?.expect("accepted"))
    }

    /// Answers a question; answers are computed as they are consumed.
    pub fn ask(&self, text: &str) -> Result<Answers, SessionError> {
        let (tree, _) = self.parse(text)?;
        if tree.kind == SentenceKind::Declarative {
            return Err(DiscourseError::NotAQuestion.into());
        }
        let q = self.drs.query(&tree, &self.lexicon)?;
        answer(&self.kb, &q, &tree, &self.lexicon).map_err(|e| SessionError::Translate(vec![e]))
    }

    /// Adds a lexicon record (`class|lemma|features|forms|synonyms|abbreviations`).
    pub fn add_word(&mut self, record: &str) -> Result<&LexEntry, SessionError> {
        let template = parse_record(record).map_err(|message| LexiconError::Parse { line: 1, message })?;
        let entry = self.lexicon.add_entry(template)?;
        self.log.push(format!("lex: {}", render_record(entry)));
        Ok(self.lexicon.content_words().last().expect("just added"))
    }

    /// Removes a content word. Accepted sentences keep their meaning.
    pub fn remove_word(&mut self, lemma: &str, class: Option<WordClass>) -> Result<LexEntry, SessionError> {
        let removed = self.lexicon.remove_entry(lemma, class)?;
        self.log.push(format!("unlex: {}", removed.lemma));
        Ok(removed)
    }

    /// Starts a step-wise execution of the accepted sentences.
    pub fn start_execution(&self, definitions: Vec<Assertion>) -> Result<Execution, SessionError> {
        Ok(Execution::start(self.drs.clone(), self.lexicon.clone(), definitions)?)
    }

    pub fn parse_definitions(&self, text: &str) -> Result<Vec<Assertion>, SessionError> {
        Ok(parse_definitions(text, &self.lexicon)?)
    }

    /// Session file text: every lexicon edit and accepted sentence in order.
    pub fn to_file(&self) -> String {
        self.log.iter().map(|l| format!("{l}\n")).collect()
    }

    /// Rebuilds a session by replaying a session file over `lexicon`.
    pub fn from_file(text: &str, lexicon: Lexicon) -> Result<Session, SessionError> {
        let mut s = Session::new(lexicon);
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let wrap = |e: SessionError| SessionError::SessionFile { line: i + 1, message: e.to_string() };
            if let Some(r) = line.strip_prefix("lex:") {
                s.add_word(r.trim()).map_err(wrap)?;
            } else if let Some(l) = line.strip_prefix("unlex:") {
                s.remove_word(l.trim(), None).map_err(wrap)?;
            } else if let Some(t) = line.strip_prefix("sentence:") {
                s.add(t.trim()).map_err(wrap)?;
            } else {
                return Err(SessionError::SessionFile { line: i + 1, message: format!("unrecognised line `{line}`") });
            }
        }
        Ok(s)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), SessionError> {
        std::fs::write(path.as_ref(), self.to_file())
            .map_err(|e| SessionError::Io(format!("{}: {e}", path.as_ref().display())))
    }

    pub fn load(path: impl AsRef<Path>, lexicon: Lexicon) -> Result<Session, SessionError> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| SessionError::Io(format!("{}: {e}", path.as_ref().display())))?;
        Session::from_file(&text, lexicon)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::SIMPLEMAT_LEXICON;

    fn session() -> Session {
        Session::new(Lexicon::parse(SIMPLEMAT_LEXICON).unwrap())
    }

    #[test]
    fn submit_decide_ask() {
        let mut s = session();
        let a = s.submit("The customer enters a card and a numeric personal code.").unwrap();
        assert_eq!(a.paraphrase.text, "the customer enters a card and [the customer enters] a numeric personal code.");
        assert!(s.drs().is_empty());
        let acc = s.decide(true).unwrap().unwrap();
        assert_eq!(acc.clauses_text.lines().count(), 6);
        s.submit("SM rejects the card.").unwrap();
        assert_eq!(s.decide(false).unwrap(), None);
        assert_eq!(s.sentences().len(), 1);
        assert!(matches!(s.decide(true), Err(SessionError::NothingPending)));
        let answers: Vec<String> = s.ask("Who enters a card?").unwrap().map(|a| a.to_string()).collect();
        assert_eq!(answers, vec!["Answer: [a customer] enters a card."]);
        assert_eq!(s.ask("SM waits.").err().map(|e| e.exit_code()), Some(2));
    }

    #[test]
    fn error_codes() {
        let mut s = session();
        let e = s.submit("The customer enters a flurb.").unwrap_err();
        assert_eq!(e.exit_code(), 1);
        assert_eq!(e.unknown_words(), ["flurb"]);
        assert_eq!(s.submit("It enters a card.").unwrap_err().exit_code(), 2);
        let acc = s.add("The customer enters a card or a code.").unwrap();
        assert_eq!(acc.warnings, vec![TranslateError::UntranslatableDisjunction { sentence: 0 }]);
    }

    #[test]
    fn session_file_round_trip() {
        let mut s = session();
        s.add_word("noun|ticket|count,neut|sg=ticket,pl=tickets||").unwrap();
        s.add("The customer enters a ticket.").unwrap();
        s.remove_word("clerk", None).unwrap();
        let text = s.to_file();
        assert!(text.starts_with("lex: noun|ticket|"));
        assert!(text.contains("unlex: clerk\n"));
        let back = Session::from_file(&text, Lexicon::parse(SIMPLEMAT_LEXICON).unwrap()).unwrap();
        assert_eq!(back.clauses_text(), s.clauses_text());
        assert_eq!(back.to_file(), text);
        assert!(matches!(
            Session::from_file("bogus", Lexicon::new()),
            Err(SessionError::SessionFile { line: 1, .. })
        ));
    }
}
