use crate::lexicon::{FormSlot, Gender, LexEntry, Lexicon, NounKind, Number, WordClass, MODAL_VERBS};

use super::token::{Token, TokenKind};
use super::tree::*;
use super::ParseError;

type Result<T> = std::result::Result<T, ParseError>;

const PAST_FORMS: &[&str] = &["was", "were", "did", "had", "been"];
const SUBJECT_PRONOUNS: &[&str] = &["he", "she", "it", "they"];
const OBJECT_PRONOUNS: &[&str] = &["him", "her", "it", "them"];
const RELATIVE_PRONOUNS: &[&str] = &["who", "which", "that"];

fn known_verb(lex: &Lexicon, base: &str) -> bool {
    lex.lookup(base).iter().any(|(e, _)| e.class == WordClass::Verb && e.lemma != "be" && e.lemma != "do")
}

fn participle_base(lex: &Lexicon, w: &str) -> bool {
    let Some(stem) = w.strip_suffix("ing") else { return false };
    let mut cands = vec![stem.to_string(), format!("{stem}e")];
    let c: Vec<char> = stem.chars().collect();
    if c.len() > 2 && c[c.len() - 1] == c[c.len() - 2] {
        cands.push(c[..c.len() - 1].iter().collect());
    }
    cands.iter().any(|b| known_verb(lex, b))
}

fn past_base(lex: &Lexicon, w: &str) -> bool {
    let Some(stem) = w.strip_suffix("ed") else { return false };
    let mut cands = vec![stem.to_string(), format!("{stem}e")];
    if let Some(s) = stem.strip_suffix('i') {
        cands.push(format!("{s}y"));
    }
    let c: Vec<char> = stem.chars().collect();
    if c.len() > 2 && c[c.len() - 1] == c[c.len() - 2] {
        cands.push(c[..c.len() - 1].iter().collect());
    }
    cands.iter().any(|b| known_verb(lex, b))
}

/// Rejects banned forms (modals, past tense, participles, passives) and
/// collects unknown words before any structural parsing happens.
pub(super) fn check_words(tokens: &[Token], lex: &Lexicon) -> Result<()> {
    let mut unknown: Vec<String> = Vec::new();
    for (i, t) in tokens.iter().enumerate() {
        if t.kind != TokenKind::Word {
            continue;
        }
        let w = t.lower();
        let span = t.span.clone();
        if MODAL_VERBS.contains(&w.as_str()) {
            return Err(ParseError::ModalVerbRejected { word: t.surface.clone(), span });
        }
        if PAST_FORMS.contains(&w.as_str()) {
            return Err(ParseError::NonPresentTenseRejected { word: t.surface.clone(), span });
        }
        if lex.is_known(&w) {
            continue;
        }
        if participle_base(lex, &w) {
            return Err(ParseError::ParticipleRejected { word: t.surface.clone(), span });
        }
        if past_base(lex, &w) {
            let after_copula = i > 0 && ["is", "are", "was", "were", "been"].contains(&tokens[i - 1].lower().as_str());
            return Err(if after_copula {
                ParseError::PassiveRejected { word: t.surface.clone(), span }
            } else {
                ParseError::NonPresentTenseRejected { word: t.surface.clone(), span }
            });
        }
        if !unknown.contains(&t.surface) {
            unknown.push(t.surface.clone());
        }
    }
    if unknown.is_empty() {
        Ok(())
    } else {
        Err(ParseError::UnknownWords { words: unknown })
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Role {
    Subject,
    Object,
}

pub(super) struct Parser<'a> {
    text: &'a str,
    tokens: &'a [Token],
    lex: &'a Lexicon,
    pos: usize,
    next_id: NodeId,
    attachments: Vec<Attachment>,
    in_relative: bool,
}

impl<'a> Parser<'a> {
    pub(super) fn new(text: &'a str, tokens: &'a [Token], lex: &'a Lexicon) -> Self {
        Parser { text, tokens, lex, pos: 0, next_id: 0, attachments: Vec::new(), in_relative: false }
    }

    pub(super) fn parse(mut self) -> Result<SyntaxTree> {
        let first = self.word(0);
        let (sentence, kind) = match first.as_deref() {
            Some("does" | "do") => (Sentence::Clause(self.yes_no_verb_question()?), SentenceKind::YesNoQuestion),
            Some("is" | "are") => (Sentence::Clause(self.yes_no_copula_question()?), SentenceKind::YesNoQuestion),
            Some("who" | "what") => (Sentence::Clause(self.wh_question()?), SentenceKind::WhQuestion),
            _ => (self.statement()?, SentenceKind::Declarative),
        };
        let expected = if kind == SentenceKind::Declarative { "." } else { "?" };
        if kind != SentenceKind::Declarative && matches!(self.word(0).as_deref(), Some("and" | "or")) {
            return Err(self.err("questions may not contain coordination"));
        }
        match self.tokens.get(self.pos) {
            Some(t) if t.surface == expected && self.pos + 1 == self.tokens.len() => {}
            Some(t) if t.kind == TokenKind::Punctuation && self.pos + 1 == self.tokens.len() => {
                return Err(self.err(&format!("expected `{expected}` at the end of this sentence")));
            }
            Some(t) => return Err(self.err(&format!("unexpected `{}`", t.surface))),
            None => return Err(ParseError::UnterminatedSentence),
        }
        Ok(SyntaxTree { text: self.text.to_string(), sentence, kind, attachments: self.attachments })
    }

    // ---- token helpers ----

    fn id(&mut self) -> NodeId {
        self.next_id += 1;
        self.next_id
    }

    fn tok(&self, k: usize) -> Option<&'a Token> {
        self.tokens.get(self.pos + k)
    }

    fn word(&self, k: usize) -> Option<String> {
        self.tok(k).filter(|t| t.kind == TokenKind::Word).map(Token::lower)
    }

    fn word_at(&self, pos: usize) -> Option<String> {
        self.tokens.get(pos).filter(|t| t.kind == TokenKind::Word).map(Token::lower)
    }

    fn peek_is(&self, w: &str) -> bool {
        self.word(0).as_deref() == Some(w)
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn eat(&mut self, w: &str) -> bool {
        if self.peek_is(w) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn eat_comma(&mut self) {
        if self.tok(0).is_some_and(|t| t.surface == ",") {
            self.bump();
        }
    }

    fn expect(&mut self, w: &str) -> Result<()> {
        if self.eat(w) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{w}`")))
        }
    }

    fn span(&self) -> std::ops::Range<usize> {
        self.tok(0).map(|t| t.span.clone()).unwrap_or(self.text.len()..self.text.len())
    }

    fn err(&self, message: &str) -> ParseError {
        let found = self.tok(0).map(|t| format!(" (found `{}`)", t.surface)).unwrap_or_default();
        ParseError::Syntax { message: format!("{message}{found}"), span: self.span() }
    }

    fn entry_at(&self, pos: usize, class: WordClass) -> Option<(&'a LexEntry, FormSlot)> {
        let t = self.tokens.get(pos)?;
        if t.kind != TokenKind::Word {
            return None;
        }
        self.lex.lookup_class(&t.surface, class)
    }

    fn leaf(&self, pos: usize, entry: &LexEntry, slot: FormSlot) -> Leaf {
        let t = &self.tokens[pos];
        Leaf { surface: t.surface.clone(), lemma: entry.lemma.clone(), class: entry.class, slot, span: t.span.clone() }
    }

    /// Leaf for the function word at the cursor, consuming it.
    fn take_function(&mut self, class: WordClass) -> Result<Leaf> {
        let (e, slot) = self.entry_at(self.pos, class).ok_or_else(|| self.err(&format!("expected a {}", class.name())))?;
        let leaf = self.leaf(self.pos, e, slot);
        self.bump();
        Ok(leaf)
    }

    /// Runs `f` without committing anything; returns its end position on success.
    fn trial<T>(&mut self, pos: usize, f: impl FnOnce(&mut Self) -> Result<T>) -> Option<usize> {
        let saved = (self.pos, self.next_id, self.attachments.len(), self.in_relative);
        self.pos = pos;
        let ok = f(self).is_ok();
        let end = self.pos;
        self.pos = saved.0;
        self.next_id = saved.1;
        self.attachments.truncate(saved.2);
        self.in_relative = saved.3;
        ok.then_some(end)
    }

    fn starts_np(&mut self, pos: usize) -> bool {
        self.trial(pos, |p| p.noun_phrase(Role::Object)).is_some()
            || self.trial(pos, |p| p.noun_phrase(Role::Subject)).is_some()
    }

    fn is_content_verb_at(&self, pos: usize) -> bool {
        self.entry_at(pos, WordClass::Verb)
            .is_some_and(|(e, _)| e.lemma != "be" && e.lemma != "do")
    }

    fn starts_vp(&self, pos: usize) -> bool {
        matches!(self.word_at(pos).as_deref(), Some("does" | "do" | "is" | "are")) || self.is_content_verb_at(pos)
    }

    /// A noun phrase at `pos` that is followed by a verb: the start of a clause.
    fn starts_clause(&mut self, pos: usize) -> bool {
        match self.trial(pos, |p| p.subject()) {
            Some(end) => self.starts_vp(end) || self.word_at(end).as_deref() == Some("each"),
            None => false,
        }
    }

    // ---- sentences ----

    fn statement(&mut self) -> Result<Sentence> {
        if self.peek_is("if") {
            let id = self.id();
            self.bump();
            let condition = self.coordination()?;
            self.eat_comma();
            if !self.peek_is("then") {
                return Err(self.err("expected `then`; every `if` needs an explicit `then`"));
            }
            self.bump();
            let consequence = self.coordination()?;
            return Ok(Sentence::IfThen { id, condition: Box::new(condition), consequence: Box::new(consequence) });
        }
        self.coordination()
    }

    fn coordination(&mut self) -> Result<Sentence> {
        let id = self.id();
        let either = self.eat("either");
        let mut items = vec![Sentence::Clause(self.clause()?)];
        let mut op = either.then_some(Coordinator::EitherOr);
        loop {
            let save = self.pos;
            self.eat_comma();
            let conj = match self.word(0).as_deref() {
                Some("and") => Coordinator::And,
                Some("or") => Coordinator::Or,
                _ => {
                    self.pos = save;
                    break;
                }
            };
            let this = if either {
                if conj != Coordinator::Or {
                    return Err(self.err("`either` must be continued with `or`"));
                }
                Coordinator::EitherOr
            } else {
                conj
            };
            if op.is_some_and(|o| o != this) {
                return Err(self.err("`and` and `or` may not be mixed; split the sentence"));
            }
            if !self.starts_clause(self.pos + 1) {
                self.bump();
                return Err(self.err("expected a sentence after the coordinator"));
            }
            op = Some(this);
            self.bump();
            items.push(Sentence::Clause(self.clause()?));
        }
        if either && items.len() < 2 {
            return Err(self.err("`either` needs an `or` alternative"));
        }
        match op {
            Some(op) => Ok(Sentence::Coord { id, op, items }),
            None => Ok(items.pop().expect("one item")),
        }
    }

    fn clause(&mut self) -> Result<Clause> {
        let id = self.id();
        let subject = self.subject()?;
        let predicate = self.predicate(subject.number())?;
        if predicate.together() && !matches!(subject, Subject::Coord { .. }) {
            let plural = matches!(&subject, Subject::Single(np) if np.features.number == Number::Pl);
            if !plural {
                return Err(self.err("`together` needs a plural subject"));
            }
        }
        if let Subject::Coord { each: true, .. } = subject {
            if predicate.together() {
                return Err(self.err("`each` and `together` exclude each other"));
            }
        }
        Ok(Clause { id, subject, predicate })
    }

    fn subject(&mut self) -> Result<Subject> {
        let first = self.noun_phrase(Role::Subject)?;
        if !self.peek_is("and") || self.starts_vp(self.pos + 1) {
            return Ok(Subject::Single(first));
        }
        let id = self.id();
        let mut members = vec![first];
        while self.eat("and") {
            members.push(self.noun_phrase(Role::Subject)?);
        }
        if members.iter().any(NounPhrase::is_negative) {
            return Err(self.err("`no` may not appear in a coordinated subject"));
        }
        let each = self.eat("each");
        Ok(Subject::Coord { id, members, each })
    }

    fn predicate(&mut self, number: Number) -> Result<Predicate> {
        let id = self.id();
        if self.peek_is("either") && self.starts_vp(self.pos + 1) {
            self.bump();
            let mut items = vec![self.verb_phrase(number)?];
            while self.peek_is("or") && self.starts_vp(self.pos + 1) {
                self.bump();
                items.push(self.verb_phrase(number)?);
            }
            if items.len() < 2 {
                return Err(self.err("`either` needs an `or` alternative"));
            }
            return Ok(Predicate { id, op: Some(Coordinator::EitherOr), items });
        }
        let mut items = vec![self.verb_phrase(number)?];
        let mut op = None;
        loop {
            let save = self.pos;
            self.eat_comma();
            let conj = match self.word(0).as_deref() {
                Some("and") => Coordinator::And,
                Some("or") => Coordinator::Or,
                _ => {
                    self.pos = save;
                    break;
                }
            };
            if !self.starts_vp(self.pos + 1) {
                self.pos = save;
                break;
            }
            if op.is_some_and(|o| o != conj) {
                return Err(self.err("`and` and `or` may not be mixed; split the sentence"));
            }
            op = Some(conj);
            self.bump();
            items.push(self.verb_phrase(number)?);
        }
        Ok(Predicate { id, op, items })
    }

    fn agree(&self, leaf: &Leaf, number: Number) -> Result<()> {
        let ok = match leaf.slot {
            FormSlot::ThirdSg => number == Number::Sg,
            FormSlot::ThirdPl => number == Number::Pl,
            _ => true,
        };
        if ok {
            Ok(())
        } else {
            let which = if number == Number::Sg { "singular" } else { "plural" };
            Err(ParseError::Syntax {
                message: format!("`{}` does not agree with the {which} subject", leaf.surface),
                span: leaf.span.clone(),
            })
        }
    }

    fn verb_phrase(&mut self, number: Number) -> Result<VerbPhrase> {
        let id = self.id();
        if matches!(self.word(0).as_deref(), Some("is" | "are")) {
            let copula = self.take_function(WordClass::Verb)?;
            self.agree(&copula, number)?;
            let negated = self.eat("not");
            let complement = self.complement()?;
            return Ok(VerbPhrase::Copula(CopulaPhrase { id, copula, negated, complement }));
        }
        let mut aux = None;
        let mut negated = false;
        if matches!(self.word(0).as_deref(), Some("does" | "do")) {
            let leaf = self.take_function(WordClass::Verb)?;
            self.agree(&leaf, number)?;
            if !self.eat("not") {
                return Err(self.err("`does` is only used for negation and questions"));
            }
            aux = Some(leaf);
            negated = true;
        }
        let verb = self.take_verb(if aux.is_some() { None } else { Some(number) })?;
        self.verb_tail(id, aux, negated, verb)
    }

    fn verb_tail(&mut self, id: NodeId, aux: Option<Leaf>, negated: bool, verb: Leaf) -> Result<VerbPhrase> {
        let mut together = self.eat("together");
        let object = if self.starts_object() { Some(self.objects()?) } else { None };
        let mut pps = Vec::new();
        while self.entry_at(self.pos, WordClass::Preposition).is_some() {
            let pp = self.prep_phrase()?;
            self.attachments.push(Attachment {
                policy: AttachmentPolicy::MinimalAttachment,
                attached: pp.id,
                site: id,
                site_category: Category::VP,
            });
            pps.push(pp);
        }
        if self.eat("together") {
            together = true;
        }
        Ok(VerbPhrase::Verb(VerbGroup { id, aux, negated, verb, object, pps, together }))
    }

    /// A content verb; `number` is the required agreement, or `None` for the
    /// base form after `does`/`do`.
    fn take_verb(&mut self, number: Option<Number>) -> Result<Leaf> {
        if !self.is_content_verb_at(self.pos) {
            return Err(self.err("expected a verb"));
        }
        let (e, slot) = self.entry_at(self.pos, WordClass::Verb).expect("checked");
        let leaf = self.leaf(self.pos, e, slot);
        match number {
            Some(n) => self.agree(&leaf, n)?,
            None if slot != FormSlot::ThirdPl => {
                let base = e.form(FormSlot::ThirdPl).unwrap_or(&e.lemma);
                return Err(self.err(&format!("use the base form `{base}` after `does not`")));
            }
            None => {}
        }
        self.bump();
        Ok(leaf)
    }

    fn complement(&mut self) -> Result<Complement> {
        if matches!(self.word(0).as_deref(), Some("a" | "an")) {
            let np = self.noun_phrase(Role::Object)?;
            return Ok(Complement::Noun(np));
        }
        if self.peek_is("more") {
            if let Some((e, FormSlot::Base)) = self.entry_at(self.pos + 1, WordClass::Adjective) {
                let adjective = self.leaf(self.pos + 1, e, FormSlot::Comparative);
                let surface = format!("{} {}", self.tokens[self.pos].surface, self.tokens[self.pos + 1].surface);
                self.pos += 2;
                self.expect("than")?;
                let than = self.noun_phrase(Role::Object)?;
                return Ok(Complement::Comparative { adjective, surface, than });
            }
        }
        match self.entry_at(self.pos, WordClass::Adjective) {
            Some((e, FormSlot::Base)) => {
                let leaf = self.leaf(self.pos, e, FormSlot::Base);
                self.bump();
                if self.peek_is("than") {
                    return Err(self.err("use the comparative form before `than`"));
                }
                Ok(Complement::Adjective(leaf))
            }
            Some((e, FormSlot::Comparative)) => {
                let leaf = self.leaf(self.pos, e, FormSlot::Comparative);
                let surface = leaf.surface.clone();
                self.bump();
                self.expect("than")?;
                let than = self.noun_phrase(Role::Object)?;
                Ok(Complement::Comparative { adjective: leaf, surface, than })
            }
            Some(_) => Err(self.err("superlatives are not admitted after the copula")),
            None => Err(self.err("expected an adjective or an indefinite noun phrase after the copula")),
        }
    }

    fn starts_object(&mut self) -> bool {
        match self.word(0).as_deref() {
            Some("neither") => true,
            Some("either") => self.starts_np(self.pos + 1),
            _ => self.starts_np(self.pos),
        }
    }

    fn objects(&mut self) -> Result<Objects> {
        let id = self.id();
        if self.eat("neither") {
            let mut items = vec![self.noun_phrase(Role::Object)?];
            self.expect("nor")?;
            items.push(self.noun_phrase(Role::Object)?);
            while self.eat("nor") {
                items.push(self.noun_phrase(Role::Object)?);
            }
            return Ok(Objects { id, op: Some(Coordinator::NeitherNor), items });
        }
        if self.eat("either") {
            let mut items = vec![self.noun_phrase(Role::Object)?];
            self.expect("or")?;
            items.push(self.noun_phrase(Role::Object)?);
            while self.peek_is("or") && !self.starts_clause(self.pos + 1) && self.starts_np(self.pos + 1) {
                self.bump();
                items.push(self.noun_phrase(Role::Object)?);
            }
            return Ok(Objects { id, op: Some(Coordinator::EitherOr), items });
        }
        let mut items = vec![self.noun_phrase(Role::Object)?];
        let mut op = None;
        loop {
            let save = self.pos;
            self.eat_comma();
            let conj = match self.word(0).as_deref() {
                Some("and") => Coordinator::And,
                Some("or") => Coordinator::Or,
                _ => {
                    self.pos = save;
                    break;
                }
            };
            let next = self.pos + 1;
            if self.starts_vp(next) || self.starts_clause(next) || !self.starts_np(next) {
                self.pos = save;
                break;
            }
            if op.is_some_and(|o| o != conj) {
                return Err(self.err("`and` and `or` may not be mixed; split the sentence"));
            }
            op = Some(conj);
            self.bump();
            items.push(self.noun_phrase(Role::Object)?);
        }
        Ok(Objects { id, op, items })
    }

    fn prep_phrase(&mut self) -> Result<PrepPhrase> {
        let id = self.id();
        let prep = self.take_function(WordClass::Preposition)?;
        let object = self.noun_phrase(Role::Object)?;
        Ok(PrepPhrase { id, prep, object })
    }

    fn noun(&mut self) -> Result<(Leaf, Number, Gender, NounKind)> {
        let (e, slot) = self
            .entry_at(self.pos, WordClass::CommonNoun)
            .ok_or_else(|| self.err("expected a noun"))?;
        let number = if slot == FormSlot::Pl { Number::Pl } else { Number::Sg };
        let leaf = self.leaf(self.pos, e, slot);
        self.bump();
        Ok((leaf, number, e.gender, e.noun_kind))
    }

    fn adjectives(&mut self) -> Vec<Leaf> {
        let mut out = Vec::new();
        while let Some((e, FormSlot::Base)) = self.entry_at(self.pos, WordClass::Adjective) {
            // A word that is also a noun ends the adjective run when nothing
            // nominal follows it.
            let is_noun = self.entry_at(self.pos, WordClass::CommonNoun).is_some();
            let nominal_next = self.entry_at(self.pos + 1, WordClass::CommonNoun).is_some()
                || self.entry_at(self.pos + 1, WordClass::Adjective).is_some();
            if is_noun && !nominal_next {
                break;
            }
            out.push(self.leaf(self.pos, e, FormSlot::Base));
            self.bump();
        }
        out
    }

    fn noun_phrase(&mut self, role: Role) -> Result<NounPhrase> {
        let start = self.span().start;
        let id = self.id();
        let tok = self.tok(0).ok_or_else(|| self.err("expected a noun phrase"))?;
        let w = tok.lower();
        let (kind, features) = if tok.kind == TokenKind::Numeral {
            self.bump();
            if self.entry_at(self.pos, WordClass::CommonNoun).is_some() {
                let value: u32 = tok.surface.parse().map_err(|_| self.err("only whole numbers can count nouns"))?;
                let adjectives = self.adjectives();
                let (noun, number, gender, kind) = self.noun()?;
                self.check_count(value, number, kind, &noun)?;
                let det = Determiner::Count { surface: tok.surface.clone(), value };
                (NpKind::Common { det, adjectives, noun }, Features::third(number, gender))
            } else {
                (NpKind::Numeral(tok.surface.clone()), Features::third(Number::Sg, Gender::Neut))
            }
        } else if let Some((e, _)) = self.entry_at(self.pos, WordClass::NumberWord) {
            let value = e.value.unwrap_or(1);
            let surface = tok.surface.clone();
            self.bump();
            let adjectives = self.adjectives();
            let (noun, number, gender, kind) = self.noun()?;
            self.check_count(value, number, kind, &noun)?;
            (NpKind::Common { det: Determiner::Count { surface, value }, adjectives, noun }, Features::third(number, gender))
        } else if let Some((e, slot)) = self.entry_at(self.pos, WordClass::Determiner) {
            let det_leaf = self.leaf(self.pos, e, slot);
            self.bump();
            let adjectives = self.adjectives();
            let (noun, number, gender, kind) = self.noun()?;
            let det = match w.as_str() {
                "a" | "an" => {
                    if kind == NounKind::Mass {
                        return Err(ParseError::Syntax {
                            message: format!("mass noun `{}` takes no indefinite article", noun.surface),
                            span: noun.span.clone(),
                        });
                    }
                    if number != Number::Sg {
                        return Err(ParseError::Syntax {
                            message: format!("`{}` needs a singular noun", det_leaf.surface),
                            span: noun.span.clone(),
                        });
                    }
                    Determiner::Indefinite(det_leaf)
                }
                "the" => Determiner::Definite(det_leaf),
                "no" => Determiner::Negative(det_leaf),
                _ => return Err(self.err("unsupported determiner")),
            };
            (NpKind::Common { det, adjectives, noun }, Features::third(number, gender))
        } else if let Some((e, slot)) = self.entry_at(self.pos, WordClass::Pronoun) {
            let allowed = match role {
                Role::Subject => SUBJECT_PRONOUNS,
                Role::Object => OBJECT_PRONOUNS,
            };
            if !allowed.contains(&w.as_str()) {
                return Err(self.err("pronoun in the wrong position"));
            }
            let leaf = self.leaf(self.pos, e, slot);
            self.bump();
            (NpKind::Pronoun(leaf), Features::third(e.number.unwrap_or(Number::Sg), e.gender))
        } else if let Some((e, slot)) = self.entry_at(self.pos, WordClass::ProperNoun) {
            let leaf = self.leaf(self.pos, e, slot);
            self.bump();
            (NpKind::Proper(leaf), Features::third(e.number.unwrap_or(Number::Sg), e.gender))
        } else {
            // Bare mass noun, possibly with adjectives.
            let save = self.pos;
            let adjectives = self.adjectives();
            match self.entry_at(self.pos, WordClass::CommonNoun) {
                Some((e, _)) if e.noun_kind == NounKind::Mass => {
                    let (noun, number, gender, _) = self.noun()?;
                    (NpKind::Common { det: Determiner::None, adjectives, noun }, Features::third(number, gender))
                }
                Some(_) => {
                    return Err(self.err("a countable noun needs a determiner"));
                }
                None => {
                    self.pos = save;
                    return Err(self.err("expected a noun phrase"));
                }
            }
        };
        let mut np = NounPhrase { id, kind, rel: None, features, span: start..start };
        if let Some(w) = self.word(0) {
            if RELATIVE_PRONOUNS.contains(&w.as_str()) {
                if self.in_relative {
                    return Err(self.err("relative clauses may not be nested"));
                }
                if matches!(np.kind, NpKind::Pronoun(_)) {
                    return Err(self.err("a pronoun cannot take a relative clause"));
                }
                let rel_id = self.id();
                let pronoun = self.take_function(WordClass::Pronoun)?;
                self.in_relative = true;
                let vp = self.verb_phrase(np.features.number);
                self.in_relative = false;
                let vp = vp?;
                self.attachments.push(Attachment {
                    policy: AttachmentPolicy::RightAssociation,
                    attached: rel_id,
                    site: np.id,
                    site_category: Category::NP,
                });
                np.rel = Some(Box::new(RelClause { id: rel_id, pronoun, vp }));
            }
        }
        let end = self.tokens[..self.pos].last().map_or(start, |t| t.span.end);
        np.span = start..end;
        Ok(np)
    }

    fn check_count(&self, value: u32, number: Number, kind: NounKind, noun: &Leaf) -> Result<()> {
        if kind == NounKind::Mass {
            return Err(ParseError::Syntax {
                message: format!("mass noun `{}` cannot be counted", noun.surface),
                span: noun.span.clone(),
            });
        }
        let want = if value == 1 { Number::Sg } else { Number::Pl };
        if want != number {
            return Err(ParseError::Syntax {
                message: format!("number {value} does not agree with `{}`", noun.surface),
                span: noun.span.clone(),
            });
        }
        Ok(())
    }

    // ---- questions ----

    fn no_negation(&self) -> Result<()> {
        if self.peek_is("not") {
            return Err(self.err("questions may not contain negation"));
        }
        Ok(())
    }

    fn single_subject(&mut self) -> Result<NounPhrase> {
        let np = self.noun_phrase(Role::Subject)?;
        if self.peek_is("and") || self.peek_is("or") {
            return Err(self.err("questions may not contain coordination"));
        }
        if np.is_negative() {
            return Err(self.err("questions may not contain negation"));
        }
        Ok(np)
    }

    fn question_objects(&mut self) -> Result<VerbPhrase> {
        let id = self.id();
        let verb = self.take_verb(None)?;
        let vp = self.verb_tail(id, None, false, verb)?;
        if let VerbPhrase::Verb(v) = &vp {
            if v.object.as_ref().is_some_and(|o| o.op.is_some() || o.items.iter().any(NounPhrase::is_negative)) {
                return Err(self.err("questions may not contain coordination or negation"));
            }
        }
        Ok(vp)
    }

    fn yes_no_verb_question(&mut self) -> Result<Clause> {
        let id = self.id();
        let aux = self.take_function(WordClass::Verb)?;
        let subject = self.single_subject()?;
        self.agree(&aux, subject.features.number)?;
        self.no_negation()?;
        let mut vp = self.question_objects()?;
        if let VerbPhrase::Verb(v) = &mut vp {
            v.aux = Some(aux);
        }
        let predicate = Predicate { id: self.id(), op: None, items: vec![vp] };
        Ok(Clause { id, subject: Subject::Single(subject), predicate })
    }

    fn yes_no_copula_question(&mut self) -> Result<Clause> {
        let id = self.id();
        let vp_id = self.id();
        let copula = self.take_function(WordClass::Verb)?;
        let subject = self.single_subject()?;
        self.agree(&copula, subject.features.number)?;
        self.no_negation()?;
        let complement = self.complement()?;
        let vp = VerbPhrase::Copula(CopulaPhrase { id: vp_id, copula, negated: false, complement });
        let predicate = Predicate { id: self.id(), op: None, items: vec![vp] };
        Ok(Clause { id, subject: Subject::Single(subject), predicate })
    }

    fn wh_question(&mut self) -> Result<Clause> {
        let id = self.id();
        let np_id = self.id();
        let start = self.span();
        let wh = self.take_function(WordClass::Pronoun)?;
        let wh_np = NounPhrase {
            id: np_id,
            kind: NpKind::Wh(wh),
            rel: None,
            features: Features::third(Number::Sg, Gender::NotApplicable),
            span: start,
        };
        if matches!(self.word(0).as_deref(), Some("does" | "do")) {
            // Object question: `What does the customer enter?`
            let aux = self.take_function(WordClass::Verb)?;
            let subject = self.single_subject()?;
            self.agree(&aux, subject.features.number)?;
            self.no_negation()?;
            let vp_id = self.id();
            let verb = self.take_verb(None)?;
            if self.starts_object() {
                return Err(self.err("the questioned object already fills the object position"));
            }
            let obj_id = self.id();
            let object = Some(Objects { id: obj_id, op: None, items: vec![wh_np] });
            let mut pps = Vec::new();
            while self.entry_at(self.pos, WordClass::Preposition).is_some() {
                let pp = self.prep_phrase()?;
                self.attachments.push(Attachment {
                    policy: AttachmentPolicy::MinimalAttachment,
                    attached: pp.id,
                    site: vp_id,
                    site_category: Category::VP,
                });
                pps.push(pp);
            }
            let vp = VerbPhrase::Verb(VerbGroup { id: vp_id, aux: Some(aux), negated: false, verb, object, pps, together: false });
            let predicate = Predicate { id: self.id(), op: None, items: vec![vp] };
            return Ok(Clause { id, subject: Subject::Single(subject), predicate });
        }
        // Subject question: `Who enters a card?`
        let vp = self.verb_phrase(Number::Sg)?;
        if vp.negated() {
            return Err(ParseError::Syntax { message: "questions may not contain negation".into(), span: self.span() });
        }
        if let VerbPhrase::Verb(v) = &vp {
            if v.object.as_ref().is_some_and(|o| o.op.is_some()) {
                return Err(self.err("questions may not contain coordination"));
            }
        }
        let predicate = Predicate { id: self.id(), op: None, items: vec![vp] };
        Ok(Clause { id, subject: Subject::Single(wh_np), predicate })
    }
}
