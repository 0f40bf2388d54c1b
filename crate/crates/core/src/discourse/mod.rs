//! Discourse representation structures for a whole specification.
//!
//! A [`Drs`] is an arena of boxes. Box 0 is the top box; every other box has
//! a parent, which encodes accessibility: a referent may be mentioned in its
//! home box and in any box below it. For an implication the consequent's
//! parent is the antecedent, so antecedent referents are visible there.

mod build;
mod report;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::diagnostics::Diagnostic;
use crate::lexicon::{Gender, Lexicon, Number};
use crate::parser::{SentenceKind, SyntaxTree};

pub use report::{Reading, ReportEntry, ResolutionReport};

pub type RefId = usize;
pub type BoxId = usize;

/// The top box of every DRS.
pub const TOP: BoxId = 0;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Referent {
    pub id: RefId,
    pub gender: Gender,
    pub number: Number,
    /// Predicate of the introducing noun, `named` for proper nouns, `group`
    /// for collective plurals, empty for question words and numerals.
    pub sort: String,
    /// How the referent is described in text: `personal code`, `cards`.
    pub noun: String,
    /// Lowercased name of a proper-noun referent.
    pub name: Option<String>,
    pub home: BoxId,
    pub sentence: usize,
}

impl Referent {
    /// Definite description used when a pronoun is replaced.
    pub fn description(&self) -> String {
        match (&self.name, self.sort.as_str()) {
            (Some(n), _) => n.clone(),
            (None, "group") => "they".into(),
            (None, "") => "it".into(),
            (None, _) => format!("the {}", self.noun),
        }
    }

    /// Indefinite description, used when answers are rendered.
    pub fn indefinite(&self) -> String {
        match (&self.name, self.sort.as_str()) {
            (Some(n), _) => n.clone(),
            (None, "group") => "they".into(),
            (None, "") => "something".into(),
            (None, _) if self.number == Number::Pl => format!("some {}", self.noun),
            (None, _) => format!("{} {}", article(&self.noun), self.noun),
        }
    }
}

/// `a` or `an` by the first letter.
pub fn article(word: &str) -> &'static str {
    match word.chars().next() {
        Some('a' | 'e' | 'i' | 'o' | 'u') => "an",
        _ => "a",
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Arg {
    Ref(RefId),
    /// Proper-name constant, e.g. `simplemat` in `named(D, simplemat)`.
    Name(String),
    Num(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AtomKind {
    Noun,
    Adjective,
    Verb,
    /// `<verb>_<prep>(subject, object?, prepositional object)`.
    Prep,
    Named,
    Comparative,
    Cardinality,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Atom {
    pub pred: String,
    pub args: Vec<Arg>,
    pub kind: AtomKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Condition {
    Atom(Atom),
    Not(BoxId),
    Implies(BoxId, BoxId),
    Or { disjuncts: Vec<BoxId>, exclusive: bool },
    Group { group: RefId, members: Vec<RefId> },
}

/// A condition and the index of the sentence that introduced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub sentence: usize,
    pub condition: Condition,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrsBox {
    pub referents: Vec<RefId>,
    pub conditions: Vec<Entry>,
    pub parent: Option<BoxId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Drs {
    boxes: Vec<DrsBox>,
    referents: Vec<Referent>,
    sentences: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiscourseError {
    #[error("no accessible antecedent for `{pronoun}`")]
    UnresolvedPronoun { pronoun: String, span: std::ops::Range<usize> },
    #[error("`does not ... or ...` is ambiguous; use `neither ... nor ...` or repeat `does not`")]
    NegatedDisjunctionAmbiguous { span: std::ops::Range<usize> },
    #[error("`does not` cannot be combined with `neither ... nor ...`")]
    DoubleNegation { span: std::ops::Range<usize> },
    #[error("questions are answered, not added to the specification")]
    NotDeclarative,
    #[error("only questions can be asked")]
    NotAQuestion,
    #[error("`{word}` is not in the lexicon")]
    MissingEntry { word: String },
}

impl DiscourseError {
    pub fn code(&self) -> &'static str {
        match self {
            DiscourseError::UnresolvedPronoun { .. } => "unresolved-pronoun",
            DiscourseError::NegatedDisjunctionAmbiguous { .. } => "negated-disjunction",
            DiscourseError::DoubleNegation { .. } => "double-negation",
            DiscourseError::NotDeclarative => "not-declarative",
            DiscourseError::NotAQuestion => "not-a-question",
            DiscourseError::MissingEntry { .. } => "missing-entry",
        }
    }

    pub fn diagnostic(&self) -> Diagnostic {
        let span = match self {
            DiscourseError::UnresolvedPronoun { span, .. }
            | DiscourseError::NegatedDisjunctionAmbiguous { span }
            | DiscourseError::DoubleNegation { span } => Some(span.clone()),
            _ => None,
        };
        Diagnostic::error(self.code(), self.to_string(), span)
    }
}

/// The DRS of a question: the session DRS plus one extra box under the top
/// holding everything the question introduces.
#[derive(Debug, Clone)]
pub struct QueryDrs {
    pub drs: Drs,
    pub query_box: BoxId,
    /// Referent standing for `who`/`what`.
    pub wh: Option<RefId>,
    pub kind: SentenceKind,
}

impl Default for Drs {
    fn default() -> Self {
        Drs::new()
    }
}

impl Drs {
    pub fn new() -> Drs {
        Drs { boxes: vec![DrsBox { referents: Vec::new(), conditions: Vec::new(), parent: None }], referents: Vec::new(), sentences: 0 }
    }

    pub fn get(&self, b: BoxId) -> &DrsBox {
        &self.boxes[b]
    }

    pub fn top(&self) -> &DrsBox {
        &self.boxes[TOP]
    }

    pub fn box_count(&self) -> usize {
        self.boxes.len()
    }

    pub fn referent(&self, id: RefId) -> &Referent {
        &self.referents[id]
    }

    pub fn referents(&self) -> &[Referent] {
        &self.referents
    }

    /// Number of sentences added so far.
    pub fn sentence_count(&self) -> usize {
        self.sentences
    }

    pub fn is_empty(&self) -> bool {
        self.referents.is_empty() && self.boxes[TOP].conditions.is_empty()
    }

    /// Boxes from `b` up to the top.
    pub fn chain(&self, b: BoxId) -> Vec<BoxId> {
        let mut out = vec![b];
        let mut cur = b;
        while let Some(p) = self.boxes[cur].parent {
            out.push(p);
            cur = p;
        }
        out
    }

    /// Referents visible from box `b`, in increasing id order.
    pub fn accessible(&self, b: BoxId) -> Vec<RefId> {
        let chain = self.chain(b);
        self.referents.iter().filter(|r| chain.contains(&r.home)).map(|r| r.id).collect()
    }

    /// Adds one declarative sentence; `self` is left untouched so the caller
    /// can keep or drop the result.
    pub fn extend(&self, tree: &SyntaxTree, lexicon: &Lexicon) -> Result<(Drs, ResolutionReport), DiscourseError> {
        if tree.kind != SentenceKind::Declarative {
            return Err(DiscourseError::NotDeclarative);
        }
        build::extend(self, tree, lexicon)
    }

    /// Builds the query DRS for a question in the context of `self`.
    pub fn query(&self, tree: &SyntaxTree, lexicon: &Lexicon) -> Result<QueryDrs, DiscourseError> {
        if tree.kind == SentenceKind::Declarative {
            return Err(DiscourseError::NotAQuestion);
        }
        build::query(self, tree, lexicon)
    }

    /// Referent name in printed form: A..Z, then A1..Z1 and so on.
    pub fn letter(id: RefId) -> String {
        let c = (b'A' + (id % 26) as u8) as char;
        match id / 26 {
            0 => c.to_string(),
            n => format!("{c}{n}"),
        }
    }

    pub fn render_arg(a: &Arg) -> String {
        match a {
            Arg::Ref(r) => Drs::letter(*r),
            Arg::Name(n) | Arg::Num(n) => n.clone(),
        }
    }

    pub fn render_atom(a: &Atom) -> String {
        let args: Vec<String> = a.args.iter().map(Drs::render_arg).collect();
        format!("{}({})", a.pred, args.join(", "))
    }

    fn print_box(&self, b: BoxId, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        let refs: Vec<String> = self.boxes[b].referents.iter().map(|r| Drs::letter(*r)).collect();
        out.push_str(&format!("{pad}[{}]\n", refs.join(", ")));
        for e in &self.boxes[b].conditions {
            match &e.condition {
                Condition::Atom(a) => out.push_str(&format!("{pad}{}\n", Drs::render_atom(a))),
                Condition::Not(n) => {
                    out.push_str(&format!("{pad}NOT:\n"));
                    self.print_box(*n, depth + 1, out);
                }
                Condition::Implies(a, c) => {
                    out.push_str(&format!("{pad}IF:\n"));
                    self.print_box(*a, depth + 1, out);
                    out.push_str(&format!("{pad}THEN:\n"));
                    self.print_box(*c, depth + 1, out);
                }
                Condition::Or { disjuncts, exclusive } => {
                    out.push_str(&format!("{pad}{}:\n", if *exclusive { "XOR" } else { "OR" }));
                    for d in disjuncts {
                        out.push_str(&format!("{pad}ALT:\n"));
                        self.print_box(*d, depth + 1, out);
                    }
                }
                Condition::Group { group, members } => {
                    let ms: Vec<String> = members.iter().map(|m| Drs::letter(*m)).collect();
                    out.push_str(&format!("{pad}group({}, [{}])\n", Drs::letter(*group), ms.join(", ")));
                }
            }
        }
    }

    /// Indented text form: referent line, then conditions, with labelled
    /// sub-boxes for `IF:`/`THEN:`/`NOT:`/`OR:`.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        self.print_box(TOP, 0, &mut out);
        out
    }

    /// True if the two DRSs are equal up to a consistent renaming of
    /// referents.
    pub fn alpha_eq(&self, other: &Drs) -> bool {
        let mut map = HashMap::new();
        let mut back = HashMap::new();
        self.box_eq(TOP, other, TOP, &mut map, &mut back)
    }

    fn bind(a: RefId, b: RefId, map: &mut HashMap<RefId, RefId>, back: &mut HashMap<RefId, RefId>) -> bool {
        match (map.get(&a), back.get(&b)) {
            (None, None) => {
                map.insert(a, b);
                back.insert(b, a);
                true
            }
            (Some(x), Some(y)) => *x == b && *y == a,
            _ => false,
        }
    }

    fn box_eq(
        &self,
        x: BoxId,
        other: &Drs,
        y: BoxId,
        map: &mut HashMap<RefId, RefId>,
        back: &mut HashMap<RefId, RefId>,
    ) -> bool {
        let (bx, by) = (&self.boxes[x], &other.boxes[y]);
        if bx.referents.len() != by.referents.len() || bx.conditions.len() != by.conditions.len() {
            return false;
        }
        for (a, b) in bx.referents.iter().zip(&by.referents) {
            let (ra, rb) = (&self.referents[*a], &other.referents[*b]);
            if ra.sort != rb.sort || ra.number != rb.number || ra.name != rb.name {
                return false;
            }
            if !Drs::bind(*a, *b, map, back) {
                return false;
            }
        }
        for (ea, eb) in bx.conditions.iter().zip(&by.conditions) {
            let ok = match (&ea.condition, &eb.condition) {
                (Condition::Atom(a), Condition::Atom(b)) => {
                    a.pred == b.pred
                        && a.kind == b.kind
                        && a.args.len() == b.args.len()
                        && a.args.iter().zip(&b.args).all(|(p, q)| match (p, q) {
                            (Arg::Ref(p), Arg::Ref(q)) => Drs::bind(*p, *q, map, back),
                            (p, q) => p == q,
                        })
                }
                (Condition::Not(a), Condition::Not(b)) => self.box_eq(*a, other, *b, map, back),
                (Condition::Implies(a1, c1), Condition::Implies(a2, c2)) => {
                    self.box_eq(*a1, other, *a2, map, back) && self.box_eq(*c1, other, *c2, map, back)
                }
                (Condition::Or { disjuncts: d1, exclusive: e1 }, Condition::Or { disjuncts: d2, exclusive: e2 }) => {
                    e1 == e2 && d1.len() == d2.len() && d1.iter().zip(d2).all(|(a, b)| self.box_eq(*a, other, *b, map, back))
                }
                (Condition::Group { group: g1, members: m1 }, Condition::Group { group: g2, members: m2 }) => {
                    Drs::bind(*g1, *g2, map, back)
                        && m1.len() == m2.len()
                        && m1.iter().zip(m2).all(|(a, b)| Drs::bind(*a, *b, map, back))
                }
                _ => false,
            };
            if !ok {
                return false;
            }
        }
        true
    }

    /// Checks that every referent mentioned in a box is accessible from it.
    pub fn check_accessibility(&self) -> Result<(), String> {
        for (b, bx) in self.boxes.iter().enumerate() {
            let visible = self.accessible(b);
            for e in &bx.conditions {
                let mentioned: Vec<RefId> = match &e.condition {
                    Condition::Atom(a) => a.args.iter().filter_map(|x| if let Arg::Ref(r) = x { Some(*r) } else { None }).collect(),
                    Condition::Group { group, members } => std::iter::once(*group).chain(members.iter().copied()).collect(),
                    _ => Vec::new(),
                };
                if let Some(r) = mentioned.iter().find(|r| !visible.contains(r)) {
                    return Err(format!("referent {} used outside its scope in box {b}", Drs::letter(*r)));
                }
            }
        }
        Ok(())
    }

    /// Conditions of the top box introduced by sentence `i`.
    pub fn sentence_conditions(&self, i: usize) -> impl Iterator<Item = &Condition> {
        self.boxes[TOP].conditions.iter().filter(move |e| e.sentence == i).map(|e| &e.condition)
    }

    fn new_box(&mut self, parent: BoxId) -> BoxId {
        self.boxes.push(DrsBox { referents: Vec::new(), conditions: Vec::new(), parent: Some(parent) });
        self.boxes.len() - 1
    }
}

impl fmt::Display for Drs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::SIMPLEMAT_LEXICON;
    use crate::parser::parse;

    fn lex() -> Lexicon {
        Lexicon::parse(SIMPLEMAT_LEXICON).unwrap()
    }

    fn run(sentences: &[&str]) -> Result<(Drs, Vec<ResolutionReport>), DiscourseError> {
        let lex = lex();
        let mut drs = Drs::new();
        let mut reports = Vec::new();
        for s in sentences {
            let tree = parse(s, &lex).unwrap_or_else(|e| panic!("{s}: {e}"));
            let (next, report) = drs.extend(&tree, &lex)?;
            next.check_accessibility().unwrap();
            drs = next;
            reports.push(report);
        }
        Ok((drs, reports))
    }

    fn drs(sentences: &[&str]) -> Drs {
        run(sentences).unwrap().0
    }

    #[test]
    fn simplemat_drs() {
        let d = drs(&["The customer enters a card and a numeric personal code.", "If it is not valid then SM rejects the card."]);
        let expected = "\
[A, B, C, D]
customer(A)
card(B)
enter(A, B)
numeric(C)
personal_code(C)
enter(A, C)
named(D, simplemat)
IF:
  []
  NOT:
    []
    valid(C)
THEN:
  []
  reject(D, B)
";
        assert_eq!(d.pretty(), expected);
    }

    #[test]
    fn resolution_report() {
        let (_, reports) =
            run(&["The customer enters a card and a numeric personal code.", "If it is not valid then SM rejects the card."]).unwrap();
        let r = &reports[1];
        assert!(r.entries.iter().any(|e| matches!(e, ReportEntry::Pronoun { antecedent: 2, replacement, .. } if replacement == "the personal code")));
        assert!(r.entries.iter().any(|e| matches!(e, ReportEntry::Definite { antecedent: 1, .. })));
        assert!(r.entries.iter().any(|e| matches!(e, ReportEntry::Abbreviation { expansion, .. } if expansion == "simplemat")));
        assert!(reports[0].entries.iter().any(|e| matches!(e, ReportEntry::Ellipsis { restored, .. } if restored == "the customer enters")));
    }

    #[test]
    fn distributive_and_collective() {
        let d = drs(&["John and Mary each enter a card."]);
        let enters: Vec<_> = d
            .top()
            .conditions
            .iter()
            .filter_map(|e| match &e.condition {
                Condition::Atom(a) if a.pred == "enter" => Some(a.args.clone()),
                _ => None,
            })
            .collect();
        assert_eq!(enters.len(), 2);
        assert_ne!(enters[0][1], enters[1][1]);
        assert!(drs(&["John and Mary enter a card."]).alpha_eq(&d));

        let d = drs(&["John and Mary enter a card together."]);
        let text = d.pretty();
        assert!(text.contains("group(C, [A, B])"), "{text}");
        assert_eq!(text.matches("enter(").count(), 1);
        assert!(text.contains("enter(C, D)"));
    }

    #[test]
    fn unique_reference_and_unresolved_pronoun() {
        let d = drs(&["The card is valid."]);
        assert_eq!(d.pretty(), "[A]\ncard(A)\nvalid(A)\n");
        assert!(matches!(run(&["He enters a card."]), Err(DiscourseError::UnresolvedPronoun { .. })));
        assert!(matches!(run(&["The customer enters a card.", "He waits."]), Err(DiscourseError::UnresolvedPronoun { .. })));
        assert!(run(&["John enters a card.", "He waits."]).is_ok());
    }

    #[test]
    fn pronoun_takes_most_recent_match() {
        let (_, reports) = run(&["Mary enters a card.", "John enters a code.", "She waits.", "It is valid."]).unwrap();
        assert!(matches!(reports[2].entries[0], ReportEntry::Pronoun { antecedent: 0, .. }));
        assert!(matches!(reports[3].entries[0], ReportEntry::Pronoun { antecedent: 3, .. }));
    }

    #[test]
    fn object_pronoun_skips_its_own_subject() {
        let d = drs(&["The customer enters a card and SM checks it."]);
        assert!(d.pretty().contains("check(C, B)\n"), "{}", d.pretty());
        let (_, reports) = run(&["SM waits.", "John enters a card.", "It checks it."]).unwrap();
        assert!(matches!(reports[2].entries[0], ReportEntry::Pronoun { antecedent: 2, .. }));
        assert!(matches!(reports[2].entries[1], ReportEntry::Pronoun { antecedent: 0, .. }));
    }

    #[test]
    fn inaccessible_referents_are_skipped() {
        let (_, reports) = run(&["A customer enters a card.", "If a clerk owns a code then the clerk waits.", "The code is valid."]).unwrap();
        // `the code` cannot see the code inside the conditional, so it is new.
        assert!(!reports[2].entries.iter().any(|e| matches!(e, ReportEntry::Definite { .. })));
        let d = drs(&["The customer enters a card or a code.", "It waits."]);
        assert!(d.pretty().contains("wait(A)"));
    }

    #[test]
    fn negation_forms() {
        let d = drs(&["No customer enters a card."]);
        assert_eq!(d.pretty(), "[]\nNOT:\n  [A, B]\n  customer(A)\n  card(B)\n  enter(A, B)\n");
        let a = drs(&["A customer owns a card and a code.", "The customer enters neither a card nor a code."]);
        let b = drs(&["A customer owns a card and a code.", "The customer does not enter either a card or a code."]);
        assert!(a.alpha_eq(&b));
        let c = drs(&["A customer owns a card and a code.", "The customer does not enter a card and does not enter a code."]);
        assert!(a.alpha_eq(&c));
        assert!(matches!(
            run(&["The customer does not enter a card or a code."]),
            Err(DiscourseError::NegatedDisjunctionAmbiguous { .. })
        ));
        let d = drs(&["The card is not valid."]);
        assert_eq!(d.pretty(), "[A]\ncard(A)\nNOT:\n  []\n  valid(A)\n");
    }

    #[test]
    fn disjunctions() {
        let d = drs(&["The customer enters either a card or a code."]);
        assert!(d.pretty().contains("XOR:\nALT:\n  [B]\n  card(B)\n  enter(A, B)\nALT:\n  [C]\n"));
        let d = drs(&["The customer enters a card or a code."]);
        assert!(d.pretty().contains("OR:\n"));
    }

    #[test]
    fn ellipsis_matches_explicit_sentences() {
        let a = drs(&["The customer enters a card and a code."]);
        let b = drs(&["The customer enters a card.", "The customer enters a code."]);
        assert_eq!(a.pretty(), b.pretty());
    }

    #[test]
    fn prepositional_phrase_and_comparative() {
        let d = drs(&["The customer enters a card with a code."]);
        assert!(d.pretty().contains("enter_with(A, B, C)"));
        let d = drs(&["The card is bigger than the code."]);
        assert!(d.pretty().contains("bigger(A, B)"));
        let d = drs(&["The card is more valid than the code."]);
        assert!(d.pretty().contains("more_valid(A, B)"));
        let d = drs(&["The customer enters two cards."]);
        assert!(d.pretty().contains("cardinality(B, 2)"));
    }

    #[test]
    fn extension_leaves_context_untouched() {
        let lex = lex();
        let d = drs(&["The customer enters a card."]);
        let before = d.clone();
        let tree = parse("The customer enters a code.", &lex).unwrap();
        let _ = d.extend(&tree, &lex).unwrap();
        assert_eq!(d, before);
    }

    #[test]
    fn query_boxes() {
        let lex = lex();
        let d = drs(&["The customer enters a card."]);
        let q = d.query(&parse("Who enters a card?", &lex).unwrap(), &lex).unwrap();
        assert_eq!(q.wh, Some(2));
        assert_eq!(q.drs.get(q.query_box).referents, vec![2, 3]);
        let q = d.query(&parse("Does the customer enter a card?", &lex).unwrap(), &lex).unwrap();
        assert_eq!(q.wh, None);
        assert_eq!(q.drs.get(q.query_box).referents, vec![2]);
    }

    #[test]
    fn letters() {
        assert_eq!(Drs::letter(0), "A");
        assert_eq!(Drs::letter(25), "Z");
        assert_eq!(Drs::letter(26), "A1");
    }
}
