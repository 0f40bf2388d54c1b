//! Syntax trees. Every phrase carries a [`NodeId`] so that later stages
//! (resolution, paraphrasing) can refer back to it.

use std::ops::Range;

use crate::lexicon::{FormSlot, Gender, Number, WordClass};

pub type NodeId = u32;

/// A lexical leaf: the surface as typed plus the entry it resolved to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Leaf {
    pub surface: String,
    pub lemma: String,
    pub class: WordClass,
    pub slot: FormSlot,
    pub span: Range<usize>,
}

impl Leaf {
    pub fn lower(&self) -> String {
        self.surface.to_lowercase()
    }
}

/// Unification features of a noun phrase or finite verb.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Features {
    pub number: Number,
    pub gender: Gender,
    pub person: u8,
}

impl Features {
    pub fn third(number: Number, gender: Gender) -> Features {
        Features { number, gender, person: 3 }
    }

    /// Agreement check: `None` if the two feature bundles clash.
    pub fn unify(self, other: Features) -> Option<Features> {
        if self.number != other.number || self.person != other.person {
            return None;
        }
        let gender = match (self.gender, other.gender) {
            (Gender::NotApplicable, g) | (g, Gender::NotApplicable) => g,
            (a, b) if a == b => a,
            _ => return None,
        };
        Some(Features { gender, ..self })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coordinator {
    And,
    Or,
    EitherOr,
    NeitherNor,
}

impl Coordinator {
    /// Word between the items (`and`, `or`, `nor`).
    pub fn joiner(self) -> &'static str {
        match self {
            Coordinator::And => "and",
            Coordinator::Or | Coordinator::EitherOr => "or",
            Coordinator::NeitherNor => "nor",
        }
    }

    /// Word before the first item, if any (`either`, `neither`).
    pub fn opener(self) -> Option<&'static str> {
        match self {
            Coordinator::EitherOr => Some("either"),
            Coordinator::NeitherNor => Some("neither"),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SentenceKind {
    Declarative,
    YesNoQuestion,
    WhQuestion,
}

/// Category of the tree root.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootCategory {
    Decl,
    IfThen,
    Coord,
    Neg,
    YesNoQ,
    WhQ,
}

/// Phrase categories appearing inside a tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Category {
    S,
    NP,
    VP,
    PP,
    RelCl,
    AdjP,
    Conj,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Sentence {
    Clause(Clause),
    Coord { id: NodeId, op: Coordinator, items: Vec<Sentence> },
    IfThen { id: NodeId, condition: Box<Sentence>, consequence: Box<Sentence> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Clause {
    pub id: NodeId,
    pub subject: Subject,
    pub predicate: Predicate,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Subject {
    Single(NounPhrase),
    /// `John and Mary [each] ...`
    Coord { id: NodeId, members: Vec<NounPhrase>, each: bool },
}

impl Subject {
    pub fn number(&self) -> Number {
        match self {
            Subject::Single(np) => np.features.number,
            Subject::Coord { .. } => Number::Pl,
        }
    }
}

/// One or more coordinated verb phrases sharing a subject.
#[derive(Debug, Clone, PartialEq)]
pub struct Predicate {
    pub id: NodeId,
    pub op: Option<Coordinator>,
    pub items: Vec<VerbPhrase>,
}

impl Predicate {
    /// `together` on any conjunct forces the collective reading.
    pub fn together(&self) -> bool {
        self.items.iter().any(|vp| matches!(vp, VerbPhrase::Verb(v) if v.together))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum VerbPhrase {
    Verb(VerbGroup),
    Copula(CopulaPhrase),
}

impl VerbPhrase {
    pub fn id(&self) -> NodeId {
        match self {
            VerbPhrase::Verb(v) => v.id,
            VerbPhrase::Copula(c) => c.id,
        }
    }

    pub fn negated(&self) -> bool {
        match self {
            VerbPhrase::Verb(v) => v.negated,
            VerbPhrase::Copula(c) => c.negated,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerbGroup {
    pub id: NodeId,
    /// `does`/`do` in negations and fronted in questions.
    pub aux: Option<Leaf>,
    pub negated: bool,
    pub verb: Leaf,
    pub object: Option<Objects>,
    pub pps: Vec<PrepPhrase>,
    pub together: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CopulaPhrase {
    pub id: NodeId,
    pub copula: Leaf,
    pub negated: bool,
    pub complement: Complement,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Complement {
    Adjective(Leaf),
    /// `bigger than X` / `more valid than X`; `surface` is what was typed.
    Comparative { adjective: Leaf, surface: String, than: NounPhrase },
    /// `a card`, `a valid card`.
    Noun(NounPhrase),
}

/// One or more coordinated object noun phrases.
#[derive(Debug, Clone, PartialEq)]
pub struct Objects {
    pub id: NodeId,
    pub op: Option<Coordinator>,
    pub items: Vec<NounPhrase>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PrepPhrase {
    pub id: NodeId,
    pub prep: Leaf,
    pub object: NounPhrase,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelClause {
    pub id: NodeId,
    pub pronoun: Leaf,
    pub vp: VerbPhrase,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Determiner {
    Indefinite(Leaf),
    Definite(Leaf),
    Negative(Leaf),
    /// Number word or numeral in determiner position.
    Count { surface: String, value: u32 },
    /// Bare mass noun.
    None,
}

#[derive(Debug, Clone, PartialEq)]
pub enum NpKind {
    Common { det: Determiner, adjectives: Vec<Leaf>, noun: Leaf },
    Proper(Leaf),
    Pronoun(Leaf),
    Numeral(String),
    /// `who`/`what` in a question.
    Wh(Leaf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct NounPhrase {
    pub id: NodeId,
    pub kind: NpKind,
    pub rel: Option<Box<RelClause>>,
    pub features: Features,
    pub span: Range<usize>,
}

impl NounPhrase {
    pub fn is_negative(&self) -> bool {
        matches!(self.kind, NpKind::Common { det: Determiner::Negative(_), .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AttachmentPolicy {
    /// Prepositional phrases attach to the verb phrase.
    MinimalAttachment,
    /// Relative clauses attach to the rightmost noun phrase.
    RightAssociation,
}

/// One attachment decision taken while parsing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attachment {
    pub policy: AttachmentPolicy,
    /// The PP or relative clause attached.
    pub attached: NodeId,
    /// The VP or NP it was attached to.
    pub site: NodeId,
    pub site_category: Category,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntaxTree {
    pub text: String,
    pub sentence: Sentence,
    pub kind: SentenceKind,
    pub attachments: Vec<Attachment>,
}

impl SyntaxTree {
    pub fn root_category(&self) -> RootCategory {
        match (&self.kind, &self.sentence) {
            (SentenceKind::YesNoQuestion, _) => RootCategory::YesNoQ,
            (SentenceKind::WhQuestion, _) => RootCategory::WhQ,
            (_, Sentence::IfThen { .. }) => RootCategory::IfThen,
            (_, Sentence::Coord { .. }) => RootCategory::Coord,
            (_, Sentence::Clause(c)) => {
                let neg_subject = matches!(&c.subject, Subject::Single(np) if np.is_negative());
                if neg_subject || c.predicate.items.iter().any(VerbPhrase::negated) {
                    RootCategory::Neg
                } else {
                    RootCategory::Decl
                }
            }
        }
    }

    /// The clause of a question.
    pub fn question_clause(&self) -> Option<&Clause> {
        match (&self.kind, &self.sentence) {
            (SentenceKind::Declarative, _) => None,
            (_, Sentence::Clause(c)) => Some(c),
            _ => None,
        }
    }

    /// All verb leaves with the number of their subject, for agreement checks.
    pub fn verb_agreements(&self) -> Vec<(Leaf, Number)> {
        let mut out = Vec::new();
        fn np(n: &NounPhrase, out: &mut Vec<(Leaf, Number)>) {
            if let Some(rel) = &n.rel {
                vp(&rel.vp, n.features.number, out);
            }
        }
        fn vp(v: &VerbPhrase, num: Number, out: &mut Vec<(Leaf, Number)>) {
            match v {
                VerbPhrase::Verb(g) => {
                    out.push((g.aux.clone().unwrap_or_else(|| g.verb.clone()), num));
                    if let Some(o) = &g.object {
                        o.items.iter().for_each(|i| np(i, out));
                    }
                    g.pps.iter().for_each(|p| np(&p.object, out));
                }
                VerbPhrase::Copula(c) => {
                    out.push((c.copula.clone(), num));
                    match &c.complement {
                        Complement::Noun(n) => np(n, out),
                        Complement::Comparative { than, .. } => np(than, out),
                        Complement::Adjective(_) => {}
                    }
                }
            }
        }
        fn sentence(s: &Sentence, out: &mut Vec<(Leaf, Number)>) {
            match s {
                Sentence::Clause(c) => {
                    match &c.subject {
                        Subject::Single(n) => np(n, out),
                        Subject::Coord { members, .. } => members.iter().for_each(|m| np(m, out)),
                    }
                    let num = c.subject.number();
                    c.predicate.items.iter().for_each(|v| vp(v, num, out));
                }
                Sentence::Coord { items, .. } => items.iter().for_each(|i| sentence(i, out)),
                Sentence::IfThen { condition, consequence, .. } => {
                    sentence(condition, out);
                    sentence(consequence, out);
                }
            }
        }
        sentence(&self.sentence, &mut out);
        out
    }
}
