//! Simulated execution of a specification.
//!
//! Sentences are walked in order. Events are printed as a trace; the
//! situation (which individuals play which roles, which properties hold) is
//! obtained from a definition file or from an oracle, normally the user.
//! An [`Execution`] drives this step by step: every reply re-runs the
//! specification from the start with all replies so far, so a run is a pure
//! function of the specification, the definitions and the replies.

mod assertion;
mod run;

use std::fmt;

use thiserror::Error;

use crate::discourse::Drs;
use crate::lexicon::Lexicon;

pub use assertion::{load_definitions, parse_assertion, parse_definitions, Assertion};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExecError {
    #[error("`{name}` is already a {existing}, cannot also be a {asserted}")]
    InconsistentAssertion { name: String, existing: String, asserted: String },
    #[error("{}malformed assertion `{text}`: {reason}", .line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    MalformedAssertion { text: String, reason: String, line: Option<usize> },
    #[error("no reply available for {request}")]
    OracleExhausted { request: String },
}

impl ExecError {
    pub fn code(&self) -> &'static str {
        match self {
            ExecError::InconsistentAssertion { .. } => "inconsistent-assertion",
            ExecError::MalformedAssertion { .. } => "malformed-assertion",
            ExecError::OracleExhausted { .. } => "oracle-exhausted",
        }
    }
}

/// Everything exchanged between an execution and its oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleMessage {
    /// Name an individual of this sort: `john is a customer`.
    InstantiationRequest { sort: String },
    /// Say whether the property holds: `1234 is [not] valid`.
    TruthRequest { name: String, adjective: String },
    UserAssertion { text: String },
    EventTrace { text: String },
}

impl OracleMessage {
    pub fn kind(&self) -> &'static str {
        match self {
            OracleMessage::InstantiationRequest { .. } => "instantiation",
            OracleMessage::TruthRequest { .. } => "truth",
            OracleMessage::UserAssertion { .. } => "user",
            OracleMessage::EventTrace { .. } => "event",
        }
    }

    pub fn is_request(&self) -> bool {
        matches!(self, OracleMessage::InstantiationRequest { .. } | OracleMessage::TruthRequest { .. })
    }

    /// The message without its prefix.
    pub fn text(&self) -> String {
        match self {
            OracleMessage::InstantiationRequest { sort } => format!("which {sort}?"),
            OracleMessage::TruthRequest { name, adjective } => format!("{adjective}({name})?"),
            OracleMessage::UserAssertion { text } | OracleMessage::EventTrace { text } => text.clone(),
        }
    }
}

impl fmt::Display for OracleMessage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = if self.is_request() { "request" } else { self.kind() };
        write!(f, "{prefix}: {}", self.text())
    }
}

/// Result of one complete run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    /// User and event lines in order.
    pub messages: Vec<OracleMessage>,
    /// Definitions never consulted.
    pub unused: Vec<Assertion>,
}

impl Trace {
    pub fn text(&self) -> String {
        self.messages.iter().map(|m| format!("{m}\n")).collect()
    }

    pub fn events(&self) -> Vec<&str> {
        self.messages
            .iter()
            .filter_map(|m| match m {
                OracleMessage::EventTrace { text } => Some(text.as_str()),
                _ => None,
            })
            .collect()
    }
}

/// Runs to completion, asking `oracle` whenever the definitions do not
/// settle a request. `None` from the oracle ends the run with
/// [`ExecError::OracleExhausted`].
pub fn execute(
    drs: &Drs,
    lexicon: &Lexicon,
    definitions: &[Assertion],
    oracle: &mut dyn FnMut(&OracleMessage) -> Option<String>,
) -> Result<Trace, ExecError> {
    match run::run(drs, lexicon, definitions, oracle) {
        run::Outcome::Finished(t) => Ok(t),
        run::Outcome::Suspended { request, .. } => Err(ExecError::OracleExhausted { request: request.to_string() }),
        run::Outcome::Failed { error, .. } => Err(error),
    }
}

/// Runs with a fixed list of replies.
pub fn execute_scripted(
    drs: &Drs,
    lexicon: &Lexicon,
    definitions: &[Assertion],
    replies: &[&str],
) -> Result<Trace, ExecError> {
    let mut it = replies.iter();
    execute(drs, lexicon, definitions, &mut |_| it.next().map(|s| s.to_string()))
}

/// A step-wise execution driven by replies.
#[derive(Debug, Clone)]
pub struct Execution {
    drs: Drs,
    lexicon: Lexicon,
    definitions: Vec<Assertion>,
    replies: Vec<String>,
    messages: Vec<OracleMessage>,
    pending: Option<OracleMessage>,
    unused: Vec<Assertion>,
    delivered: usize,
}

impl Execution {
    pub fn start(drs: Drs, lexicon: Lexicon, definitions: Vec<Assertion>) -> Result<Execution, ExecError> {
        let mut e = Execution {
            drs,
            lexicon,
            definitions,
            replies: Vec::new(),
            messages: Vec::new(),
            pending: None,
            unused: Vec::new(),
            delivered: 0,
        };
        e.rerun()?;
        Ok(e)
    }

    fn rerun(&mut self) -> Result<(), ExecError> {
        let mut it = self.replies.iter();
        match run::run(&self.drs, &self.lexicon, &self.definitions, &mut |_| it.next().cloned()) {
            run::Outcome::Finished(t) => {
                self.messages = t.messages;
                self.unused = t.unused;
                self.pending = None;
            }
            run::Outcome::Suspended { request, messages } => {
                self.messages = messages;
                self.pending = Some(request);
            }
            run::Outcome::Failed { error, .. } => return Err(error),
        }
        Ok(())
    }

    /// The request waiting for a reply, if any.
    pub fn pending(&self) -> Option<&OracleMessage> {
        self.pending.as_ref()
    }

    pub fn is_done(&self) -> bool {
        self.pending.is_none()
    }

    /// Answers the pending request. A rejected reply leaves the execution
    /// where it was.
    pub fn reply(&mut self, text: &str) -> Result<(), ExecError> {
        if self.pending.is_none() {
            return Err(ExecError::MalformedAssertion {
                text: text.to_string(),
                reason: "no request is pending".into(),
                line: None,
            });
        }
        self.replies.push(text.to_string());
        if let Err(e) = self.rerun() {
            self.replies.pop();
            self.rerun().expect("previous replies were accepted");
            return Err(e);
        }
        Ok(())
    }

    /// Messages produced since the previous call.
    pub fn drain(&mut self) -> Vec<OracleMessage> {
        let new = self.messages[self.delivered.min(self.messages.len())..].to_vec();
        self.delivered = self.messages.len();
        new
    }

    pub fn messages(&self) -> &[OracleMessage] {
        &self.messages
    }

    /// Definitions left unconsulted by a finished run.
    pub fn unused(&self) -> &[Assertion] {
        &self.unused
    }

    pub fn transcript(&self) -> String {
        self.messages.iter().map(|m| format!("{m}\n")).collect()
    }
}
