//! Renders an accepted sentence back in controlled English, lowercased,
//! with every interpretation made visible: substitutions in `[...]`,
//! restored elided material in `[...]`, attachment groupings in `{...}`.

use std::collections::HashMap;
use std::ops::Range;

use crate::discourse::{Reading, ReportEntry, ResolutionReport};
use crate::lexicon::{FormSlot, Lexicon, Number, WordClass};
use crate::parser::{
    AttachmentPolicy, Clause, Complement, Coordinator, Determiner, Leaf, NodeId, NounPhrase, NpKind, Objects,
    Predicate, Sentence, SentenceKind, Subject, SyntaxTree, VerbPhrase,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarkerKind {
    Substitution,
    Reconstruction,
    AttachmentGroup,
}

impl MarkerKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MarkerKind::Substitution => "substitution",
            MarkerKind::Reconstruction => "reconstruction",
            MarkerKind::AttachmentGroup => "attachment-group",
        }
    }
}

/// A marked region of the paraphrase text; the span covers the brackets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Marker {
    pub kind: MarkerKind,
    pub span: Range<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Paraphrase {
    pub text: String,
    pub markers: Vec<Marker>,
}

impl Paraphrase {
    /// The text with all marker brackets removed.
    pub fn stripped(&self) -> String {
        strip_markers(&self.text)
    }
}

pub fn strip_markers(text: &str) -> String {
    text.chars().filter(|c| !matches!(c, '[' | ']' | '{' | '}')).collect()
}

/// Paraphrase of a sentence given its resolution report.
pub fn render(tree: &SyntaxTree, report: &ResolutionReport, lexicon: &Lexicon) -> Paraphrase {
    let mut w = Writer::new(report, lexicon, HashMap::new());
    w.sentence(&tree.sentence);
    w.finish(if tree.kind == SentenceKind::Declarative { "." } else { "?" })
}

/// Restates a question clause declaratively with some noun phrases replaced
/// by bracketed text; used for answers.
pub fn render_answer(clause: &Clause, replacements: HashMap<NodeId, String>, lexicon: &Lexicon) -> Paraphrase {
    let report = ResolutionReport::default();
    let mut w = Writer::new(&report, lexicon, replacements);
    w.clause(clause);
    w.finish(".")
}

struct Writer<'a> {
    out: String,
    markers: Vec<Marker>,
    open: Vec<(MarkerKind, usize)>,
    report: &'a ResolutionReport,
    lex: &'a Lexicon,
    replace: HashMap<NodeId, String>,
}

impl<'a> Writer<'a> {
    fn new(report: &'a ResolutionReport, lex: &'a Lexicon, replace: HashMap<NodeId, String>) -> Self {
        Writer { out: String::new(), markers: Vec::new(), open: Vec::new(), report, lex, replace }
    }

    fn finish(mut self, terminator: &str) -> Paraphrase {
        self.out.push_str(terminator);
        Paraphrase { text: self.out, markers: self.markers }
    }

    fn space(&mut self) {
        if !self.out.is_empty() && !self.out.ends_with(['[', '{']) {
            self.out.push(' ');
        }
    }

    fn word(&mut self, w: &str) {
        self.space();
        self.out.push_str(&w.to_lowercase());
    }

    fn begin(&mut self, kind: MarkerKind) {
        self.space();
        let start = self.out.len();
        self.out.push(if kind == MarkerKind::AttachmentGroup { '{' } else { '[' });
        self.open.push((kind, start));
    }

    fn end(&mut self) {
        let (kind, start) = self.open.pop().expect("balanced markers");
        self.out.push(if kind == MarkerKind::AttachmentGroup { '}' } else { ']' });
        self.markers.push(Marker { kind, span: start..self.out.len() });
    }

    fn bracketed(&mut self, kind: MarkerKind, text: &str) {
        self.begin(kind);
        self.word(text);
        self.end();
    }

    fn entry(&self, pred: impl Fn(&ReportEntry) -> bool) -> Option<&'a ReportEntry> {
        self.report.entries.iter().find(|e| pred(e))
    }

    fn ellipsis(&mut self, node: NodeId) {
        if let Some(ReportEntry::Ellipsis { restored, .. }) =
            self.entry(|e| matches!(e, ReportEntry::Ellipsis { node: n, .. } if *n == node))
        {
            self.bracketed(MarkerKind::Reconstruction, restored);
        }
    }

    fn attached(&self, site: NodeId, policy: AttachmentPolicy) -> bool {
        self.entry(|e| matches!(e, ReportEntry::Attachment { site: s, policy: p, .. } if *s == site && *p == policy))
            .is_some()
    }

    fn finite(&self, leaf: &Leaf, number: Number) -> String {
        let slot = if number == Number::Sg { FormSlot::ThirdSg } else { FormSlot::ThirdPl };
        let found = self.lex.lookup(&leaf.surface).into_iter().find(|(e, _)| e.class == WordClass::Verb).map(|(e, _)| e);
        found.and_then(|e| e.form(slot)).unwrap_or(&leaf.surface).to_string()
    }

    // ---- structure ----

    fn sentence(&mut self, s: &Sentence) {
        match s {
            Sentence::Clause(c) => self.clause(c),
            Sentence::Coord { op, items, .. } => {
                if let Some(o) = op.opener() {
                    self.word(o);
                }
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        self.word(op.joiner());
                    }
                    self.sentence(item);
                }
            }
            Sentence::IfThen { condition, consequence, .. } => {
                self.word("if");
                self.sentence(condition);
                self.word("then");
                self.sentence(consequence);
            }
        }
    }

    fn clause(&mut self, c: &Clause) {
        match &c.subject {
            Subject::Single(np) => {
                self.np(np);
                self.predicate(&c.predicate, np.features.number);
            }
            Subject::Coord { id, members, each } => {
                let reading = self.entry(|e| matches!(e, ReportEntry::PluralReading { node, .. } if node == id));
                match reading {
                    Some(ReportEntry::PluralReading { reading: Reading::Distributive, .. }) => {
                        // Each member gets the predicate; all but the last
                        // copy are restored material.
                        for (i, m) in members.iter().enumerate() {
                            if i > 0 {
                                self.word("and");
                            }
                            self.np(m);
                            if i + 1 < members.len() {
                                self.begin(MarkerKind::Reconstruction);
                                self.predicate(&c.predicate, m.features.number);
                                self.end();
                            } else {
                                self.predicate(&c.predicate, m.features.number);
                            }
                        }
                    }
                    Some(_) => {
                        self.begin(MarkerKind::AttachmentGroup);
                        self.members(members);
                        self.end();
                        self.predicate(&c.predicate, Number::Pl);
                    }
                    None => {
                        self.members(members);
                        if *each {
                            self.word("each");
                        }
                        self.predicate(&c.predicate, Number::Pl);
                    }
                }
            }
        }
    }

    fn members(&mut self, members: &[NounPhrase]) {
        for (i, m) in members.iter().enumerate() {
            if i > 0 {
                self.word("and");
            }
            self.np(m);
        }
    }

    fn predicate(&mut self, p: &Predicate, number: Number) {
        if let Some(o) = p.op.and_then(Coordinator::opener) {
            self.word(o);
        }
        for (i, vp) in p.items.iter().enumerate() {
            if i > 0 {
                self.word(p.op.map_or("and", Coordinator::joiner));
            }
            self.ellipsis(vp.id());
            self.vp(vp, number);
        }
    }

    fn vp(&mut self, vp: &VerbPhrase, number: Number) {
        let grouped = self.attached(vp.id(), AttachmentPolicy::MinimalAttachment);
        if grouped {
            self.begin(MarkerKind::AttachmentGroup);
        }
        match vp {
            VerbPhrase::Copula(c) => {
                let cop = if number == Number::Sg { "is" } else { "are" };
                self.word(cop);
                if c.negated {
                    self.word("not");
                }
                match &c.complement {
                    Complement::Adjective(a) => self.word(&a.surface),
                    Complement::Comparative { surface, than, .. } => {
                        self.word(surface);
                        self.word("than");
                        self.np(than);
                    }
                    Complement::Noun(np) => self.np(np),
                }
            }
            VerbPhrase::Verb(v) => {
                if v.negated {
                    self.word(if number == Number::Sg { "does" } else { "do" });
                    self.word("not");
                    self.word(&v.verb.surface);
                } else {
                    let f = self.finite(&v.verb, number);
                    self.word(&f);
                }
                if let Some(o) = &v.object {
                    self.objects(o);
                }
                for pp in &v.pps {
                    self.word(&pp.prep.surface);
                    self.np(&pp.object);
                }
                if v.together {
                    self.word("together");
                }
            }
        }
        if grouped {
            self.end();
        }
    }

    fn objects(&mut self, o: &Objects) {
        if let Some(w) = o.op.and_then(Coordinator::opener) {
            self.word(w);
        }
        for (i, np) in o.items.iter().enumerate() {
            if i > 0 {
                self.word(o.op.map_or("and", Coordinator::joiner));
            }
            self.ellipsis(np.id);
            self.np(np);
        }
    }

    fn np(&mut self, np: &NounPhrase) {
        if let Some(text) = self.replace.get(&np.id).cloned() {
            self.bracketed(MarkerKind::Substitution, &text);
            return;
        }
        let grouped = np.rel.as_ref().is_some_and(|_| self.attached(np.id, AttachmentPolicy::RightAssociation));
        if grouped {
            self.begin(MarkerKind::AttachmentGroup);
        }
        let id = np.id;
        match &np.kind {
            NpKind::Numeral(s) => self.word(s),
            NpKind::Wh(leaf) => self.word(&leaf.surface),
            NpKind::Pronoun(leaf) => {
                match self.entry(|e| matches!(e, ReportEntry::Pronoun { node, .. } if *node == id)) {
                    Some(ReportEntry::Pronoun { replacement, .. }) => self.bracketed(MarkerKind::Substitution, replacement),
                    _ => self.word(&leaf.surface),
                }
            }
            NpKind::Proper(leaf) => {
                match self.entry(|e| matches!(e, ReportEntry::Abbreviation { node, .. } if *node == id)) {
                    Some(ReportEntry::Abbreviation { expansion, .. }) => self.bracketed(MarkerKind::Substitution, expansion),
                    _ => self.word(&leaf.surface),
                }
            }
            NpKind::Common { det, adjectives, noun } => {
                match det {
                    Determiner::Indefinite(l) | Determiner::Definite(l) | Determiner::Negative(l) => self.word(&l.surface),
                    Determiner::Count { surface, .. } => self.word(surface),
                    Determiner::None => {}
                }
                for a in adjectives {
                    self.word(&a.surface);
                }
                let synonym = self.entry(|e| matches!(e, ReportEntry::Synonym { node, .. } if *node == id)).is_some();
                let definite = self.entry(|e| matches!(e, ReportEntry::Definite { node, .. } if *node == id)).is_some();
                if synonym {
                    let canonical = self.canonical_noun(noun, np.features.number);
                    self.bracketed(MarkerKind::Substitution, &canonical);
                } else if definite {
                    self.bracketed(MarkerKind::Substitution, &noun.surface);
                } else {
                    self.word(&noun.surface);
                }
            }
        }
        if let Some(rel) = &np.rel {
            self.word(&rel.pronoun.surface);
            self.vp(&rel.vp, np.features.number);
        }
        if grouped {
            self.end();
        }
    }

    fn canonical_noun(&self, noun: &Leaf, number: Number) -> String {
        let slot = if number == Number::Sg { FormSlot::Sg } else { FormSlot::Pl };
        self.lex
            .entry(&noun.lemma, WordClass::CommonNoun)
            .and_then(|e| e.form(slot))
            .unwrap_or(&noun.lemma)
            .to_string()
    }
}
