//! Line format for content words:
//!
//! ```text
//! class|lemma|features|forms|synonyms|abbreviations
//! noun|personal code|count,neut|sg=personal code,pl=personal codes||
//! pn|SimpleMat|neut,sg|sg=SimpleMat||SM
//! ```
//!
//! `class` is one of `noun`, `pn`, `verb`, `adj`, `adv`. Features are a comma
//! list drawn from `count`/`mass`, `masc`/`fem`/`neut`, `sg`/`pl`. Forms are
//! `slot=surface` pairs. Lines starting with `#` are comments.

use super::{EntryTemplate, FormSlot, Gender, LexEntry, NounKind, Number, WordClass};

fn class_key(class: WordClass) -> &'static str {
    match class {
        WordClass::CommonNoun => "noun",
        WordClass::ProperNoun => "pn",
        WordClass::Verb => "verb",
        WordClass::Adjective => "adj",
        WordClass::Adverb => "adv",
        WordClass::Preposition => "prep",
        WordClass::Determiner => "det",
        WordClass::Pronoun => "pron",
        WordClass::Conjunction => "conj",
        WordClass::NumberWord => "num",
    }
}

fn parse_class(key: &str) -> Result<WordClass, String> {
    Ok(match key {
        "noun" => WordClass::CommonNoun,
        "pn" => WordClass::ProperNoun,
        "verb" => WordClass::Verb,
        "adj" => WordClass::Adjective,
        "adv" => WordClass::Adverb,
        "prep" => WordClass::Preposition,
        "det" => WordClass::Determiner,
        "pron" => WordClass::Pronoun,
        "conj" => WordClass::Conjunction,
        "num" => WordClass::NumberWord,
        other => return Err(format!("unknown word class `{other}`")),
    })
}

fn list(field: &str) -> Vec<String> {
    field.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect()
}

/// Parses one record into a template. Blank optional fields are allowed.
pub fn parse_record(line: &str) -> Result<EntryTemplate, String> {
    let fields: Vec<&str> = line.split('|').map(str::trim).collect();
    if fields.len() < 2 || fields.len() > 6 {
        return Err(format!("expected 6 `|`-separated fields, found {}", fields.len()));
    }
    let get = |i: usize| fields.get(i).copied().unwrap_or("");
    let mut t = EntryTemplate {
        class: Some(parse_class(get(0))?),
        lemma: get(1).to_string(),
        ..Default::default()
    };
    for feat in list(get(2)) {
        match feat.as_str() {
            "count" => t.noun_kind = Some(NounKind::Count),
            "mass" => t.noun_kind = Some(NounKind::Mass),
            "masc" => t.gender = Some(Gender::Masc),
            "fem" => t.gender = Some(Gender::Fem),
            "neut" => t.gender = Some(Gender::Neut),
            "sg" => t.number = Some(Number::Sg),
            "pl" => t.number = Some(Number::Pl),
            other => return Err(format!("unknown feature `{other}`")),
        }
    }
    for pair in list(get(3)) {
        let (k, v) = pair.split_once('=').ok_or_else(|| format!("form `{pair}` lacks `=`"))?;
        let slot = FormSlot::from_key(k.trim()).ok_or_else(|| format!("unknown form slot `{k}`"))?;
        t.forms.insert(slot, v.trim().to_string());
    }
    t.synonyms = list(get(4));
    t.abbreviations = list(get(5));
    Ok(t)
}

/// Canonical record for an entry; `parse_record` of the result rebuilds it.
pub fn render_record(e: &LexEntry) -> String {
    let mut feats = Vec::new();
    match e.noun_kind {
        NounKind::Count => feats.push("count"),
        NounKind::Mass => feats.push("mass"),
        NounKind::NotApplicable => {}
    }
    match e.gender {
        Gender::Masc => feats.push("masc"),
        Gender::Fem => feats.push("fem"),
        Gender::Neut => feats.push("neut"),
        Gender::NotApplicable => {}
    }
    match e.number {
        Some(Number::Sg) => feats.push("sg"),
        Some(Number::Pl) => feats.push("pl"),
        None => {}
    }
    let forms: Vec<String> = e
        .forms
        .iter()
        .filter(|(slot, _)| **slot != FormSlot::Word)
        .map(|(slot, s)| format!("{}={}", slot.key(), s))
        .collect();
    let lemma = if e.class == WordClass::ProperNoun { e.display_name() } else { &e.lemma };
    format!(
        "{}|{}|{}|{}|{}|{}",
        class_key(e.class),
        lemma,
        feats.join(","),
        forms.join(","),
        e.synonyms.join(","),
        e.abbreviations.join(",")
    )
}
