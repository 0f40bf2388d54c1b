//! Query answering over the clauses of a specification.
//!
//! Resolution is depth-first and left-to-right over clauses in sentence
//! order. A negated literal succeeds when its (ground) atom has no proof.
//! Solutions are produced lazily, so callers can page through answers.

mod answer;
mod solve;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::logic::Clause;
use crate::translator::Translation;

pub use answer::{answer, Answer, AnswerKind, Answers};
pub use solve::{provable, Solver, DEFAULT_DEPTH_LIMIT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("negated goal `{goal}` is not ground when selected")]
    Floundering { goal: String },
    #[error("derivation deeper than {limit} steps")]
    DepthLimitExceeded { limit: usize },
}

/// Rules, facts and denials, each tagged with the sentence it came from.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KnowledgeBase {
    rules: Vec<Clause>,
    denials: Vec<Clause>,
    opaque: BTreeSet<String>,
}

impl KnowledgeBase {
    pub fn new() -> KnowledgeBase {
        KnowledgeBase::default()
    }

    pub fn from_translation(t: &Translation) -> KnowledgeBase {
        let mut kb = KnowledgeBase::new();
        for c in &t.clauses {
            kb.insert(c.clone());
        }
        kb.opaque = t.opaque.clone();
        kb
    }

    fn insert(&mut self, c: Clause) {
        let list = if c.is_denial() { &mut self.denials } else { &mut self.rules };
        let at = list.partition_point(|x| x.provenance <= c.provenance);
        list.insert(at, c);
    }

    /// Replaces whatever came from sentence `provenance` with `clauses`.
    pub fn assimilate(&mut self, provenance: usize, clauses: Vec<Clause>) {
        self.retract(provenance);
        for mut c in clauses {
            c.provenance = provenance;
            self.insert(c);
        }
    }

    pub fn retract(&mut self, provenance: usize) {
        self.rules.retain(|c| c.provenance != provenance);
        self.denials.retain(|c| c.provenance != provenance);
    }

    pub fn add_rule(&mut self, clause: Clause) {
        self.insert(clause);
    }

    pub fn mark_opaque(&mut self, pred: &str) {
        self.opaque.insert(pred.to_string());
    }

    pub fn is_opaque(&self, pred: &str) -> bool {
        self.opaque.contains(pred)
    }

    pub fn rules(&self) -> &[Clause] {
        &self.rules
    }

    pub fn denials(&self) -> &[Clause] {
        &self.denials
    }

    pub fn len(&self) -> usize {
        self.rules.len() + self.denials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All clauses in sentence order, denials after the rules of their sentence.
    pub fn clauses(&self) -> Vec<&Clause> {
        let mut all: Vec<&Clause> = self.rules.iter().chain(&self.denials).collect();
        all.sort_by_key(|c| c.provenance);
        all
    }

    pub fn text(&self) -> String {
        self.clauses().iter().map(|c| format!("{c}\n")).collect()
    }
}
