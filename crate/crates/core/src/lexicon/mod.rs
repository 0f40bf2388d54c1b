//! Vocabulary: a fixed set of function words plus user-editable content words.
//!
//! Content words are added through [`EntryTemplate`], the small form a domain
//! specialist fills in (word class, lemma, count/mass, gender and optional
//! irregular forms). Regular inflections are generated here; irregular ones
//! must be supplied explicitly.

mod file;
pub mod morphology;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

pub use file::{parse_record, render_record};

/// Verbs expressing a degree of certainty. Never entered into the lexicon.
pub const MODAL_VERBS: &[&str] = &[
    "can", "could", "may", "might", "must", "shall", "should", "will", "would",
];

/// Adjectives modifying a state of affairs rather than describing an object.
pub const MODAL_ADJECTIVES: &[&str] = &["possible", "probable", "certain", "sure", "necessary"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WordClass {
    CommonNoun,
    ProperNoun,
    Verb,
    Adjective,
    Adverb,
    Preposition,
    Determiner,
    Pronoun,
    Conjunction,
    NumberWord,
}

impl WordClass {
    /// Classes a user may extend.
    pub fn is_content(self) -> bool {
        matches!(
            self,
            WordClass::CommonNoun
                | WordClass::ProperNoun
                | WordClass::Verb
                | WordClass::Adjective
                | WordClass::Adverb
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            WordClass::CommonNoun => "common noun",
            WordClass::ProperNoun => "proper noun",
            WordClass::Verb => "verb",
            WordClass::Adjective => "adjective",
            WordClass::Adverb => "adverb",
            WordClass::Preposition => "preposition",
            WordClass::Determiner => "determiner",
            WordClass::Pronoun => "pronoun",
            WordClass::Conjunction => "conjunction",
            WordClass::NumberWord => "number word",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NounKind {
    Count,
    Mass,
    NotApplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gender {
    Masc,
    Fem,
    Neut,
    NotApplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Number {
    Sg,
    Pl,
}

/// Which inflected form of an entry a surface string realizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormSlot {
    Sg,
    Pl,
    ThirdSg,
    ThirdPl,
    Base,
    Comparative,
    Superlative,
    /// Surface of an uninflected function word.
    Word,
    Synonym,
    Abbreviation,
}

impl FormSlot {
    pub fn key(self) -> &'static str {
        match self {
            FormSlot::Sg => "sg",
            FormSlot::Pl => "pl",
            FormSlot::ThirdSg => "3sg",
            FormSlot::ThirdPl => "3pl",
            FormSlot::Base => "base",
            FormSlot::Comparative => "cmp",
            FormSlot::Superlative => "sup",
            FormSlot::Word => "word",
            FormSlot::Synonym => "syn",
            FormSlot::Abbreviation => "abbr",
        }
    }

    pub fn from_key(key: &str) -> Option<FormSlot> {
        Some(match key {
            "sg" => FormSlot::Sg,
            "pl" => FormSlot::Pl,
            "3sg" => FormSlot::ThirdSg,
            "3pl" => FormSlot::ThirdPl,
            "base" => FormSlot::Base,
            "cmp" => FormSlot::Comparative,
            "sup" => FormSlot::Superlative,
            _ => return None,
        })
    }
}

/// One vocabulary item.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexEntry {
    /// Lowercase citation form; singular for nouns, base form for verbs.
    pub lemma: String,
    pub class: WordClass,
    pub noun_kind: NounKind,
    pub gender: Gender,
    /// Grammatical number for proper nouns and pronouns.
    pub number: Option<Number>,
    pub forms: BTreeMap<FormSlot, String>,
    pub synonyms: Vec<String>,
    pub abbreviations: Vec<String>,
    pub compound: bool,
    /// Value of a spelled-out number word.
    pub value: Option<u32>,
}

impl LexEntry {
    fn function(class: WordClass, lemma: &str) -> LexEntry {
        let mut forms = BTreeMap::new();
        forms.insert(FormSlot::Word, lemma.to_string());
        LexEntry {
            lemma: lemma.to_string(),
            class,
            noun_kind: NounKind::NotApplicable,
            gender: Gender::NotApplicable,
            number: None,
            forms,
            synonyms: Vec::new(),
            abbreviations: Vec::new(),
            compound: false,
            value: None,
        }
    }

    pub fn form(&self, slot: FormSlot) -> Option<&str> {
        self.forms.get(&slot).map(String::as_str)
    }

    /// Predicate symbol used in logical forms: compounds joined by `_`.
    pub fn predicate(&self) -> String {
        predicate_name(&self.lemma)
    }

    /// Name as written by the user (proper nouns keep their capitalization).
    pub fn display_name(&self) -> &str {
        self.form(FormSlot::Sg).unwrap_or(&self.lemma)
    }

    /// All surfaces this entry owns, with their slots.
    pub fn surfaces(&self) -> impl Iterator<Item = (&str, FormSlot)> {
        self.forms
            .iter()
            .map(|(slot, s)| (s.as_str(), *slot))
            .chain(self.synonyms.iter().map(|s| (s.as_str(), FormSlot::Synonym)))
            .chain(self.abbreviations.iter().map(|s| (s.as_str(), FormSlot::Abbreviation)))
    }
}

/// Turns a lemma into a predicate symbol (`personal code` -> `personal_code`).
pub fn predicate_name(lemma: &str) -> String {
    lemma.trim().to_lowercase().replace(' ', "_")
}

/// The user-facing form for a new content word. Missing optional fields are
/// filled in by regular morphology.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EntryTemplate {
    pub class: Option<WordClass>,
    pub lemma: String,
    pub noun_kind: Option<NounKind>,
    pub gender: Option<Gender>,
    pub number: Option<Number>,
    pub forms: BTreeMap<FormSlot, String>,
    pub synonyms: Vec<String>,
    pub abbreviations: Vec<String>,
}

impl EntryTemplate {
    pub fn common_noun(lemma: &str, kind: NounKind) -> Self {
        EntryTemplate {
            class: Some(WordClass::CommonNoun),
            lemma: lemma.into(),
            noun_kind: Some(kind),
            ..Default::default()
        }
    }

    pub fn proper_noun(name: &str, gender: Gender) -> Self {
        EntryTemplate {
            class: Some(WordClass::ProperNoun),
            lemma: name.into(),
            gender: Some(gender),
            ..Default::default()
        }
    }

    pub fn verb(lemma: &str) -> Self {
        EntryTemplate { class: Some(WordClass::Verb), lemma: lemma.into(), ..Default::default() }
    }

    pub fn adjective(lemma: &str) -> Self {
        EntryTemplate {
            class: Some(WordClass::Adjective),
            lemma: lemma.into(),
            ..Default::default()
        }
    }

    pub fn adverb(lemma: &str) -> Self {
        EntryTemplate { class: Some(WordClass::Adverb), lemma: lemma.into(), ..Default::default() }
    }

    pub fn gender(mut self, gender: Gender) -> Self {
        self.gender = Some(gender);
        self
    }

    pub fn form(mut self, slot: FormSlot, surface: &str) -> Self {
        self.forms.insert(slot, surface.into());
        self
    }

    pub fn synonym(mut self, surface: &str) -> Self {
        self.synonyms.push(surface.into());
        self
    }

    pub fn abbreviation(mut self, surface: &str) -> Self {
        self.abbreviations.push(surface.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LexiconError {
    #[error("surface `{surface}` already belongs to {class} `{owner}`")]
    DuplicateSurface { surface: String, owner: String, class: &'static str },
    #[error("missing template field: {0}")]
    MissingTemplateField(&'static str),
    #[error("`{0}` is a modal word and is not admitted")]
    ModalRejected(String),
    #[error("{0} is a function-word class and cannot be edited")]
    FunctionWordClass(&'static str),
    #[error("invalid form for `{lemma}`: {reason}")]
    InvalidForm { lemma: String, reason: String },
    #[error("no content word `{0}`")]
    NotFound(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Io(String),
}

/// Function words plus an editable set of content words.
///
/// A `Lexicon` is a value: cloning it gives an independent version, and the
/// version counter increases with every edit.
#[derive(Debug, Clone)]
pub struct Lexicon {
    entries: Vec<LexEntry>,
    function_count: usize,
    index: HashMap<String, Vec<(usize, FormSlot)>>,
    max_words: usize,
    version: u64,
}

impl PartialEq for Lexicon {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

const DETERMINERS: &[&str] = &["a", "an", "the", "no"];
const CONJUNCTIONS: &[&str] = &["and", "or", "either", "neither", "nor", "if", "then", "than"];
const PREPOSITIONS: &[&str] =
    &["with", "of", "to", "from", "in", "on", "at", "by", "for", "into", "about"];
const ADVERBS: &[&str] = &["not", "each", "together", "more", "most"];
const NUMBER_WORDS: &[&str] =
    &["one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten"];

impl Default for Lexicon {
    fn default() -> Self {
        Lexicon::new()
    }
}

impl Lexicon {
    /// A lexicon holding only the built-in function words.
    pub fn new() -> Lexicon {
        let mut entries = Vec::new();
        for d in DETERMINERS {
            entries.push(LexEntry::function(WordClass::Determiner, d));
        }
        for c in CONJUNCTIONS {
            entries.push(LexEntry::function(WordClass::Conjunction, c));
        }
        for p in PREPOSITIONS {
            entries.push(LexEntry::function(WordClass::Preposition, p));
        }
        for a in ADVERBS {
            entries.push(LexEntry::function(WordClass::Adverb, a));
        }
        for (i, w) in NUMBER_WORDS.iter().enumerate() {
            let mut e = LexEntry::function(WordClass::NumberWord, w);
            e.value = Some(i as u32 + 1);
            e.number = Some(if i == 0 { Number::Sg } else { Number::Pl });
            entries.push(e);
        }
        let pronouns: &[(&str, Gender, Option<Number>)] = &[
            ("he", Gender::Masc, Some(Number::Sg)),
            ("him", Gender::Masc, Some(Number::Sg)),
            ("she", Gender::Fem, Some(Number::Sg)),
            ("her", Gender::Fem, Some(Number::Sg)),
            ("it", Gender::Neut, Some(Number::Sg)),
            ("they", Gender::NotApplicable, Some(Number::Pl)),
            ("them", Gender::NotApplicable, Some(Number::Pl)),
            ("who", Gender::NotApplicable, None),
            ("which", Gender::NotApplicable, None),
            ("that", Gender::NotApplicable, None),
            ("what", Gender::NotApplicable, None),
        ];
        for (p, g, n) in pronouns {
            let mut e = LexEntry::function(WordClass::Pronoun, p);
            e.gender = *g;
            e.number = *n;
            entries.push(e);
        }
        // Auxiliary and copula.
        for (lemma, sg, pl) in [("do", "does", "do"), ("be", "is", "are")] {
            let mut e = LexEntry::function(WordClass::Verb, lemma);
            e.forms.clear();
            e.forms.insert(FormSlot::ThirdSg, sg.into());
            e.forms.insert(FormSlot::ThirdPl, pl.into());
            entries.push(e);
        }
        let function_count = entries.len();
        let mut lex = Lexicon { entries, function_count, index: HashMap::new(), max_words: 1, version: 0 };
        lex.reindex();
        lex
    }

    fn reindex(&mut self) {
        self.index.clear();
        self.max_words = 1;
        for (i, e) in self.entries.iter().enumerate() {
            for (surface, slot) in e.surfaces() {
                let key = surface.to_lowercase();
                self.max_words = self.max_words.max(key.split(' ').count());
                self.index.entry(key).or_default().push((i, slot));
            }
        }
    }

    pub fn version(&self) -> u64 {
        self.version
    }

    /// Longest multi-word surface known; bounds compound matching.
    pub fn max_words(&self) -> usize {
        self.max_words
    }

    pub fn function_words(&self) -> &[LexEntry] {
        &self.entries[..self.function_count]
    }

    pub fn content_words(&self) -> &[LexEntry] {
        &self.entries[self.function_count..]
    }

    /// Candidates for a surface string. Case-insensitive; an empty result
    /// means the word is unknown.
    pub fn lookup(&self, surface: &str) -> Vec<(&LexEntry, FormSlot)> {
        self.index
            .get(&surface.to_lowercase())
            .map(|v| v.iter().map(|&(i, slot)| (&self.entries[i], slot)).collect())
            .unwrap_or_default()
    }

    pub fn is_known(&self, surface: &str) -> bool {
        self.index.contains_key(&surface.to_lowercase())
    }

    /// First candidate of the given class.
    pub fn lookup_class(&self, surface: &str, class: WordClass) -> Option<(&LexEntry, FormSlot)> {
        self.lookup(surface).into_iter().find(|(e, _)| e.class == class)
    }

    /// Content entry by lemma and class.
    pub fn entry(&self, lemma: &str, class: WordClass) -> Option<&LexEntry> {
        let lemma = lemma.to_lowercase();
        self.entries.iter().find(|e| e.class == class && e.lemma == lemma)
    }

    /// Canonical lemma of a surface: resolves synonyms and abbreviations.
    pub fn canonical(&self, surface: &str) -> Option<&str> {
        self.lookup(surface).first().map(|(e, _)| e.lemma.as_str())
    }

    /// Validates a template, fills regular forms, and adds it.
    pub fn add_entry(&mut self, template: EntryTemplate) -> Result<&LexEntry, LexiconError> {
        let entry = build_entry(template)?;
        self.check_conflicts(&entry)?;
        self.entries.push(entry);
        self.version += 1;
        self.reindex();
        Ok(self.entries.last().expect("just pushed"))
    }

    /// Removes a content word by lemma (any class, or the given one).
    pub fn remove_entry(&mut self, lemma: &str, class: Option<WordClass>) -> Result<LexEntry, LexiconError> {
        let lemma_lc = lemma.to_lowercase();
        let pos = self.entries[self.function_count..]
            .iter()
            .position(|e| e.lemma == lemma_lc && class.is_none_or(|c| c == e.class))
            .ok_or_else(|| LexiconError::NotFound(lemma.into()))?;
        let removed = self.entries.remove(self.function_count + pos);
        self.version += 1;
        self.reindex();
        Ok(removed)
    }

    fn check_conflicts(&self, entry: &LexEntry) -> Result<(), LexiconError> {
        let mut seen: Vec<String> = Vec::new();
        for (surface, slot) in entry.surfaces() {
            let key = surface.to_lowercase();
            for (other, other_slot) in self.lookup(&key) {
                let abbreviation = slot == FormSlot::Abbreviation || other_slot == FormSlot::Abbreviation;
                if other.class == entry.class || abbreviation {
                    return Err(LexiconError::DuplicateSurface {
                        surface: surface.to_string(),
                        owner: other.lemma.clone(),
                        class: other.class.name(),
                    });
                }
            }
            // The same surface in two slots of one entry is fine (`enter`
            // as lemma and plural form), except for abbreviations.
            if slot == FormSlot::Abbreviation && seen.contains(&key) {
                return Err(LexiconError::DuplicateSurface {
                    surface: surface.to_string(),
                    owner: entry.lemma.clone(),
                    class: entry.class.name(),
                });
            }
            seen.push(key);
        }
        Ok(())
    }
}

fn check_surface(lemma: &str, s: &str) -> Result<(), LexiconError> {
    let bad = s.trim().is_empty()
        || s.chars().any(|c| matches!(c, '|' | ',' | '=' | '#' | '.' | '?' | '[' | ']' | '{' | '}'))
        || s != s.trim()
        || s.contains("  ");
    if bad {
        return Err(LexiconError::InvalidForm { lemma: lemma.into(), reason: format!("bad surface `{s}`") });
    }
    Ok(())
}

fn build_entry(t: EntryTemplate) -> Result<LexEntry, LexiconError> {
    let class = t.class.ok_or(LexiconError::MissingTemplateField("class"))?;
    if !class.is_content() {
        return Err(LexiconError::FunctionWordClass(class.name()));
    }
    let written = t.lemma.trim().to_string();
    if written.is_empty() {
        return Err(LexiconError::MissingTemplateField("lemma"));
    }
    check_surface(&written, &written)?;
    let lemma = written.to_lowercase();
    let mut forms = t.forms.clone();
    for s in forms.values().chain(&t.synonyms).chain(&t.abbreviations) {
        check_surface(&lemma, s)?;
    }
    let mut noun_kind = NounKind::NotApplicable;
    let mut gender = Gender::NotApplicable;
    let mut number = None;
    let unexpected = |allowed: &[FormSlot], forms: &BTreeMap<FormSlot, String>| {
        forms.keys().find(|k| !allowed.contains(k)).map(|k| LexiconError::InvalidForm {
            lemma: lemma.clone(),
            reason: format!("slot `{}` does not apply to a {}", k.key(), class.name()),
        })
    };
    match class {
        WordClass::CommonNoun => {
            noun_kind = t.noun_kind.ok_or(LexiconError::MissingTemplateField("kind"))?;
            if noun_kind == NounKind::NotApplicable {
                return Err(LexiconError::MissingTemplateField("kind"));
            }
            gender = t.gender.unwrap_or(Gender::Neut);
            forms.entry(FormSlot::Sg).or_insert_with(|| lemma.clone());
            match noun_kind {
                NounKind::Count => {
                    forms.entry(FormSlot::Pl).or_insert_with(|| morphology::plural(&lemma));
                }
                _ => {
                    if forms.contains_key(&FormSlot::Pl) {
                        return Err(LexiconError::InvalidForm {
                            lemma,
                            reason: "mass nouns have no plural".into(),
                        });
                    }
                }
            }
            if let Some(e) = unexpected(&[FormSlot::Sg, FormSlot::Pl], &forms) {
                return Err(e);
            }
        }
        WordClass::ProperNoun => {
            gender = t.gender.ok_or(LexiconError::MissingTemplateField("gender"))?;
            number = Some(t.number.unwrap_or(Number::Sg));
            forms.insert(FormSlot::Sg, written.clone());
            if let Some(e) = unexpected(&[FormSlot::Sg], &forms) {
                return Err(e);
            }
        }
        WordClass::Verb => {
            if MODAL_VERBS.contains(&lemma.as_str()) {
                return Err(LexiconError::ModalRejected(lemma));
            }
            forms.entry(FormSlot::ThirdPl).or_insert_with(|| lemma.clone());
            forms.entry(FormSlot::ThirdSg).or_insert_with(|| morphology::third_singular(&lemma));
            if let Some(e) = unexpected(&[FormSlot::ThirdSg, FormSlot::ThirdPl], &forms) {
                return Err(e);
            }
        }
        WordClass::Adjective => {
            if MODAL_ADJECTIVES.contains(&lemma.as_str()) {
                return Err(LexiconError::ModalRejected(lemma));
            }
            let (cmp, sup) = morphology::degrees(&lemma);
            forms.entry(FormSlot::Base).or_insert_with(|| lemma.clone());
            forms.entry(FormSlot::Comparative).or_insert(cmp);
            forms.entry(FormSlot::Superlative).or_insert(sup);
            if let Some(e) = unexpected(&[FormSlot::Base, FormSlot::Comparative, FormSlot::Superlative], &forms) {
                return Err(e);
            }
        }
        WordClass::Adverb => {
            forms.insert(FormSlot::Word, lemma.clone());
            if let Some(e) = unexpected(&[FormSlot::Word], &forms) {
                return Err(e);
            }
        }
        _ => unreachable!("checked is_content"),
    }
    let lower = |v: Vec<String>| v.into_iter().map(|s| s.to_lowercase()).collect::<Vec<_>>();
    Ok(LexEntry {
        compound: lemma.contains(' '),
        lemma,
        class,
        noun_kind,
        gender,
        number,
        forms,
        synonyms: lower(t.synonyms),
        abbreviations: t.abbreviations,
        value: None,
    })
}

impl fmt::Display for Lexicon {
    /// Canonical file form: one record per content word, in insertion order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in self.content_words() {
            writeln!(f, "{}", render_record(e))?;
        }
        Ok(())
    }
}

impl Lexicon {
    /// Parses the line-oriented lexicon format; see [`parse_record`].
    pub fn parse(text: &str) -> Result<Lexicon, LexiconError> {
        let mut lex = Lexicon::new();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let template = parse_record(trimmed)
                .map_err(|message| LexiconError::Parse { line: line_no, message })?;
            lex.add_entry(template)
                .map_err(|e| LexiconError::Parse { line: line_no, message: e.to_string() })?;
        }
        Ok(lex)
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Lexicon, LexiconError> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| LexiconError::Io(format!("{}: {e}", path.as_ref().display())))?;
        Lexicon::parse(&text)
    }

    pub fn save(&self, path: impl AsRef<std::path::Path>) -> Result<(), LexiconError> {
        std::fs::write(path.as_ref(), self.to_string())
            .map_err(|e| LexiconError::Io(format!("{}: {e}", path.as_ref().display())))
    }
}

/// Vocabulary of the automated teller machine example, used by the examples
/// and tests.
pub const SIMPLEMAT_LEXICON: &str = include_str!("../../data/simplemat.lex");

#[cfg(test)]
mod tests {
    use super::*;

    fn lex() -> Lexicon {
        Lexicon::parse(SIMPLEMAT_LEXICON).unwrap()
    }

    #[test]
    fn compound_noun_resolves_as_one_entry() {
        let mut l = Lexicon::new();
        let e = l
            .add_entry(EntryTemplate::common_noun("personal code", NounKind::Count).form(FormSlot::Pl, "personal codes"))
            .unwrap();
        assert!(e.compound);
        assert_eq!(e.predicate(), "personal_code");
        let hits = l.lookup("personal code");
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].0.lemma, "personal code");
        assert_eq!(hits[0].1, FormSlot::Sg);
        assert_eq!(l.lookup("Personal Codes")[0].1, FormSlot::Pl);
        assert_eq!(l.max_words(), 2);
    }

    #[test]
    fn abbreviation_resolves_to_proper_noun() {
        let mut l = Lexicon::new();
        l.add_entry(EntryTemplate::proper_noun("SimpleMat", Gender::Neut).abbreviation("SM")).unwrap();
        let hits = l.lookup("SM");
        assert_eq!(hits[0].0.lemma, "simplemat");
        assert_eq!(hits[0].1, FormSlot::Abbreviation);
        assert_eq!(hits[0].0.display_name(), "SimpleMat");
    }

    #[test]
    fn adjective_degrees_generated() {
        let mut l = Lexicon::new();
        let e = l.add_entry(EntryTemplate::adjective("valid")).unwrap().clone();
        assert_eq!(e.form(FormSlot::Comparative), Some("more valid"));
        assert_eq!(e.form(FormSlot::Superlative), Some("most valid"));
        assert!(l.lookup("valider").is_empty());
        let e = l.add_entry(EntryTemplate::adjective("good")
            .form(FormSlot::Comparative, "better")
            .form(FormSlot::Superlative, "best")).unwrap();
        assert_eq!(e.form(FormSlot::Comparative), Some("better"));
    }

    #[test]
    fn lookup_examples() {
        let l = lex();
        let hits = l.lookup("cards");
        assert_eq!((hits[0].0.lemma.as_str(), hits[0].1), ("card", FormSlot::Pl));
        assert!(l.lookup("frobnicate").is_empty());
        let ten = l.lookup("ten");
        assert_eq!(ten[0].0.class, WordClass::NumberWord);
        assert_eq!(ten[0].0.value, Some(10));
    }

    #[test]
    fn duplicate_surface_rejected() {
        let mut l = lex();
        let err = l.add_entry(EntryTemplate::common_noun("card", NounKind::Count)).unwrap_err();
        assert!(matches!(err, LexiconError::DuplicateSurface { .. }));
        // Same surface in another class is allowed.
        l.add_entry(EntryTemplate::verb("card")).unwrap();
        // Abbreviations are unique across classes.
        let err = l.add_entry(EntryTemplate::common_noun("system manager", NounKind::Count).abbreviation("SM")).unwrap_err();
        assert!(matches!(err, LexiconError::DuplicateSurface { .. }));
    }

    #[test]
    fn missing_template_fields() {
        let mut l = Lexicon::new();
        let t = EntryTemplate { class: Some(WordClass::CommonNoun), lemma: "card".into(), ..Default::default() };
        assert_eq!(l.add_entry(t).unwrap_err(), LexiconError::MissingTemplateField("kind"));
        let t = EntryTemplate { class: Some(WordClass::ProperNoun), lemma: "John".into(), ..Default::default() };
        assert_eq!(l.add_entry(t).unwrap_err(), LexiconError::MissingTemplateField("gender"));
        assert_eq!(
            l.add_entry(EntryTemplate::verb("  ")).unwrap_err(),
            LexiconError::MissingTemplateField("lemma")
        );
    }

    #[test]
    fn mass_nouns_have_no_plural() {
        let mut l = Lexicon::new();
        let e = l.add_entry(EntryTemplate::common_noun("money", NounKind::Mass)).unwrap();
        assert_eq!(e.form(FormSlot::Pl), None);
        let err = l
            .add_entry(EntryTemplate::common_noun("cash", NounKind::Mass).form(FormSlot::Pl, "cashes"))
            .unwrap_err();
        assert!(matches!(err, LexiconError::InvalidForm { .. }));
    }

    #[test]
    fn modal_words_rejected_and_absent() {
        let mut l = Lexicon::new();
        for m in MODAL_VERBS {
            assert!(l.lookup(m).is_empty(), "{m} must not be a function word");
            assert_eq!(l.add_entry(EntryTemplate::verb(m)).unwrap_err(), LexiconError::ModalRejected(m.to_string()));
        }
        for m in MODAL_ADJECTIVES {
            assert!(l.lookup(m).is_empty());
            assert!(matches!(l.add_entry(EntryTemplate::adjective(m)), Err(LexiconError::ModalRejected(_))));
        }
    }

    #[test]
    fn function_words_are_not_editable() {
        let mut l = Lexicon::new();
        let t = EntryTemplate { class: Some(WordClass::Determiner), lemma: "some".into(), ..Default::default() };
        assert!(matches!(l.add_entry(t), Err(LexiconError::FunctionWordClass(_))));
        assert!(matches!(l.remove_entry("the", None), Err(LexiconError::NotFound(_))));
    }

    #[test]
    fn remove_entry_drops_surfaces() {
        let mut l = lex();
        let v = l.version();
        l.remove_entry("card", Some(WordClass::CommonNoun)).unwrap();
        assert!(l.lookup("cards").is_empty());
        assert!(l.version() > v);
    }

    #[test]
    fn synonym_resolution_is_idempotent() {
        let mut l = Lexicon::new();
        l.add_entry(EntryTemplate::common_noun("card", NounKind::Count).synonym("ticket")).unwrap();
        let canon = l.canonical("ticket").unwrap().to_string();
        assert_eq!(canon, "card");
        assert_eq!(l.canonical(&canon), Some("card"));
    }

    #[test]
    fn empty_file_yields_function_words_only() {
        let l = Lexicon::parse("").unwrap();
        assert!(l.content_words().is_empty());
        assert_eq!(l, Lexicon::new());
        let l = Lexicon::parse("# just a comment\n\n").unwrap();
        assert!(l.content_words().is_empty());
    }

    #[test]
    fn duplicate_surface_in_file_names_line() {
        let text = "noun|card|count,neut|sg=card,pl=cards||\n# c\nnoun|card|count,neut|sg=card,pl=cards||\n";
        match Lexicon::parse(text) {
            Err(LexiconError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn save_load_round_trip() {
        let l = lex();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.lex");
        l.save(&path).unwrap();
        let again = Lexicon::load(&path).unwrap();
        assert_eq!(again, l);
        assert_eq!(again.to_string(), l.to_string());
    }
}
