use crate::lexicon::{predicate_name, FormSlot, Gender, Lexicon, Number, WordClass};
use crate::parser::{
    Clause, Complement, CopulaPhrase, Coordinator, Determiner, NounPhrase, NpKind, Predicate, Sentence, Subject,
    SyntaxTree, VerbGroup, VerbPhrase,
};

use super::*;

type Result<T> = std::result::Result<T, DiscourseError>;

pub(super) fn extend(base: &Drs, tree: &SyntaxTree, lex: &Lexicon) -> Result<(Drs, ResolutionReport)> {
    let mut b = Builder::new(base.clone(), lex, TOP);
    b.sentence(&tree.sentence)?;
    for a in &tree.attachments {
        b.report.push(ReportEntry::Attachment { attached: a.attached, site: a.site, policy: a.policy });
    }
    b.drs.sentences += 1;
    Ok((b.drs, ResolutionReport { sentence: base.sentences, entries: b.report }))
}

pub(super) fn query(base: &Drs, tree: &SyntaxTree, lex: &Lexicon) -> Result<QueryDrs> {
    let mut drs = base.clone();
    let q = drs.new_box(TOP);
    let mut b = Builder::new(drs, lex, q);
    match &tree.sentence {
        Sentence::Clause(c) => b.clause(c)?,
        _ => return Err(DiscourseError::NotAQuestion),
    }
    Ok(QueryDrs { drs: b.drs, query_box: q, wh: b.wh, kind: tree.kind })
}

struct Builder<'a> {
    drs: Drs,
    lex: &'a Lexicon,
    sentence: usize,
    frame: Vec<BoxId>,
    /// Home of proper-noun referents and of definites without antecedent.
    anchor: BoxId,
    report: Vec<ReportEntry>,
    wh: Option<RefId>,
    /// Subjects of the verb phrases being built, innermost last. A plain
    /// pronoun inside a verb phrase never refers to that phrase's subject.
    subjects: Vec<Option<RefId>>,
}

impl<'a> Builder<'a> {
    fn new(drs: Drs, lex: &'a Lexicon, anchor: BoxId) -> Self {
        let sentence = drs.sentences;
        Builder { drs, lex, sentence, frame: vec![anchor], anchor, report: Vec::new(), wh: None, subjects: Vec::new() }
    }

    fn cur(&self) -> BoxId {
        *self.frame.last().expect("frame stack never empty")
    }

    fn push(&mut self, b: BoxId, condition: Condition) {
        self.drs.boxes[b].conditions.push(Entry { sentence: self.sentence, condition });
    }

    fn atom_in(&mut self, b: BoxId, pred: String, args: Vec<Arg>, kind: AtomKind) {
        self.push(b, Condition::Atom(Atom { pred, args, kind }));
    }

    fn atom(&mut self, pred: String, args: Vec<Arg>, kind: AtomKind) {
        let b = self.cur();
        self.atom_in(b, pred, args, kind);
    }

    fn new_ref(&mut self, home: BoxId, gender: Gender, number: Number, sort: &str, noun: &str, name: Option<String>) -> RefId {
        let id = self.drs.referents.len();
        self.drs.referents.push(Referent {
            id,
            gender,
            number,
            sort: sort.to_string(),
            noun: noun.to_string(),
            name,
            home,
            sentence: self.sentence,
        });
        self.drs.boxes[home].referents.push(id);
        id
    }

    fn in_box<T>(&mut self, b: BoxId, f: impl FnOnce(&mut Self) -> Result<T>) -> Result<T> {
        self.frame.push(b);
        let r = f(self);
        self.frame.pop();
        r
    }

    fn scoped_not(&mut self, f: impl FnOnce(&mut Self) -> Result<()>) -> Result<()> {
        let parent = self.cur();
        let b = self.drs.new_box(parent);
        self.in_box(b, f)?;
        self.push(parent, Condition::Not(b));
        Ok(())
    }

    /// Runs each alternative in its own box and records the disjunction.
    fn disjunction<T>(&mut self, items: &[T], exclusive: bool, mut f: impl FnMut(&mut Self, usize, &T) -> Result<()>) -> Result<()> {
        let parent = self.cur();
        let mut disjuncts = Vec::new();
        for (i, item) in items.iter().enumerate() {
            let b = self.drs.new_box(parent);
            self.in_box(b, |s| f(s, i, item))?;
            disjuncts.push(b);
        }
        self.push(parent, Condition::Or { disjuncts, exclusive });
        Ok(())
    }

    // ---- sentences ----

    fn sentence(&mut self, s: &Sentence) -> Result<()> {
        match s {
            Sentence::Clause(c) => self.clause(c),
            Sentence::Coord { op: Coordinator::And, items, .. } => items.iter().try_for_each(|i| self.sentence(i)),
            Sentence::Coord { op, items, .. } => {
                self.disjunction(items, *op == Coordinator::EitherOr, |s, _, item| s.sentence(item))
            }
            Sentence::IfThen { condition, consequence, .. } => {
                let parent = self.cur();
                let ante = self.drs.new_box(parent);
                self.in_box(ante, |s| s.sentence(condition))?;
                let cons = self.drs.new_box(ante);
                self.in_box(cons, |s| s.sentence(consequence))?;
                self.push(parent, Condition::Implies(ante, cons));
                Ok(())
            }
        }
    }

    fn clause(&mut self, c: &Clause) -> Result<()> {
        match &c.subject {
            Subject::Single(np) if np.is_negative() => self.scoped_not(|s| {
                let subj = s.np(np)?;
                s.predicate(&subj, None, &c.predicate)
            }),
            Subject::Single(np) => {
                let subj = self.np(np)?;
                let text = self.np_text(np, &subj);
                self.predicate(&subj, Some(text), &c.predicate)
            }
            Subject::Coord { id, members, .. } if c.predicate.together() => {
                let mut refs = Vec::new();
                for m in members {
                    match self.np(m)? {
                        Arg::Ref(r) => refs.push(r),
                        other => {
                            // Numerals in a group get a referent of their own.
                            let r = self.new_ref(self.cur(), Gender::Neut, Number::Sg, "", &Drs::render_arg(&other), None);
                            refs.push(r);
                        }
                    }
                }
                let g = self.new_ref(self.cur(), Gender::NotApplicable, Number::Pl, "group", "group", None);
                let b = self.cur();
                self.push(b, Condition::Group { group: g, members: refs });
                self.report.push(ReportEntry::PluralReading { node: *id, reading: Reading::Collective });
                self.predicate(&Arg::Ref(g), None, &c.predicate)
            }
            Subject::Coord { id, members, .. } => {
                self.report.push(ReportEntry::PluralReading { node: *id, reading: Reading::Distributive });
                for m in members {
                    let subj = self.np(m)?;
                    self.predicate(&subj, None, &c.predicate)?;
                }
                Ok(())
            }
        }
    }

    fn predicate(&mut self, subj: &Arg, ctx: Option<String>, p: &Predicate) -> Result<()> {
        match p.op {
            Some(op @ (Coordinator::Or | Coordinator::EitherOr)) => {
                let inclusive = op == Coordinator::Or;
                self.disjunction(&p.items, !inclusive, |s, i, vp| {
                    if i > 0 && inclusive {
                        if let Some(t) = &ctx {
                            s.report.push(ReportEntry::Ellipsis { node: vp.id(), restored: t.clone() });
                        }
                    }
                    s.vp(subj, ctx.clone(), vp)
                })
            }
            _ => {
                for (i, vp) in p.items.iter().enumerate() {
                    if i > 0 {
                        if let Some(t) = &ctx {
                            self.report.push(ReportEntry::Ellipsis { node: vp.id(), restored: t.clone() });
                        }
                    }
                    self.vp(subj, ctx.clone(), vp)?;
                }
                Ok(())
            }
        }
    }

    fn vp(&mut self, subj: &Arg, ctx: Option<String>, vp: &VerbPhrase) -> Result<()> {
        self.subjects.push(match subj {
            Arg::Ref(r) => Some(*r),
            _ => None,
        });
        let r = self.vp_body(subj, ctx, vp);
        self.subjects.pop();
        r
    }

    fn vp_body(&mut self, subj: &Arg, ctx: Option<String>, vp: &VerbPhrase) -> Result<()> {
        match vp {
            VerbPhrase::Copula(c) if c.negated => self.scoped_not(|s| s.copula(subj, c)),
            VerbPhrase::Copula(c) => self.copula(subj, c),
            VerbPhrase::Verb(v) if !v.negated => self.verb_body(subj, ctx, v),
            VerbPhrase::Verb(v) => match v.object.as_ref().and_then(|o| o.op) {
                Some(Coordinator::Or) => Err(DiscourseError::NegatedDisjunctionAmbiguous { span: v.verb.span.clone() }),
                Some(Coordinator::NeitherNor) => Err(DiscourseError::DoubleNegation { span: v.verb.span.clone() }),
                Some(Coordinator::EitherOr) => {
                    // `does not enter either X or Y`: none of the alternatives.
                    for item in &v.object.as_ref().expect("has objects").items {
                        self.scoped_not(|s| s.object_event(subj, v, item))?;
                    }
                    Ok(())
                }
                _ => self.scoped_not(|s| s.verb_body(subj, None, v)),
            },
        }
    }

    fn verb_body(&mut self, subj: &Arg, ctx: Option<String>, v: &VerbGroup) -> Result<()> {
        let Some(objects) = &v.object else {
            return self.event(subj, v, None);
        };
        let restored = ctx.map(|t| format!("{t} {}", v.verb.lower()));
        match objects.op {
            None => self.object_event(subj, v, &objects.items[0]),
            Some(Coordinator::And) => {
                for (i, item) in objects.items.iter().enumerate() {
                    if i > 0 {
                        if let Some(t) = &restored {
                            self.report.push(ReportEntry::Ellipsis { node: item.id, restored: t.clone() });
                        }
                    }
                    self.object_event(subj, v, item)?;
                }
                Ok(())
            }
            Some(op @ (Coordinator::Or | Coordinator::EitherOr)) => {
                let inclusive = op == Coordinator::Or;
                self.disjunction(&objects.items, !inclusive, |s, i, item| {
                    if i > 0 && inclusive {
                        if let Some(t) = &restored {
                            s.report.push(ReportEntry::Ellipsis { node: item.id, restored: t.clone() });
                        }
                    }
                    s.object_event(subj, v, item)
                })
            }
            Some(Coordinator::NeitherNor) => {
                for item in &objects.items {
                    self.scoped_not(|s| s.object_event(subj, v, item))?;
                }
                Ok(())
            }
        }
    }

    fn object_event(&mut self, subj: &Arg, v: &VerbGroup, np: &NounPhrase) -> Result<()> {
        if np.is_negative() {
            self.scoped_not(|s| {
                let o = s.np(np)?;
                s.event(subj, v, Some(o))
            })
        } else {
            let o = self.np(np)?;
            self.event(subj, v, Some(o))
        }
    }

    fn event(&mut self, subj: &Arg, v: &VerbGroup, obj: Option<Arg>) -> Result<()> {
        let pred = predicate_name(&v.verb.lemma);
        let mut args = vec![subj.clone()];
        args.extend(obj);
        self.atom(pred.clone(), args.clone(), AtomKind::Verb);
        for pp in &v.pps {
            let name = format!("{pred}_{}", pp.prep.lemma);
            let f = |s: &mut Self| {
                let po = s.np(&pp.object)?;
                let mut a = args.clone();
                a.push(po);
                s.atom(name.clone(), a, AtomKind::Prep);
                Ok(())
            };
            if pp.object.is_negative() {
                self.scoped_not(f)?;
            } else {
                f(self)?;
            }
        }
        Ok(())
    }

    fn copula(&mut self, subj: &Arg, c: &CopulaPhrase) -> Result<()> {
        match &c.complement {
            Complement::Adjective(a) => {
                self.atom(predicate_name(&a.lemma), vec![subj.clone()], AtomKind::Adjective);
                Ok(())
            }
            Complement::Comparative { adjective, than, .. } => {
                let other = self.np(than)?;
                let entry = self
                    .lex
                    .entry(&adjective.lemma, WordClass::Adjective)
                    .ok_or_else(|| DiscourseError::MissingEntry { word: adjective.surface.clone() })?;
                let form = entry.form(FormSlot::Comparative).unwrap_or(&adjective.lemma);
                self.atom(predicate_name(form), vec![subj.clone(), other], AtomKind::Comparative);
                Ok(())
            }
            Complement::Noun(np) => {
                let NpKind::Common { adjectives, noun, .. } = &np.kind else {
                    return Err(DiscourseError::MissingEntry { word: "complement".into() });
                };
                self.synonym(np, noun);
                for a in adjectives {
                    self.atom(predicate_name(&a.lemma), vec![subj.clone()], AtomKind::Adjective);
                }
                self.atom(predicate_name(&noun.lemma), vec![subj.clone()], AtomKind::Noun);
                if let Some(rel) = &np.rel {
                    self.vp(subj, None, &rel.vp)?;
                }
                Ok(())
            }
        }
    }

    // ---- noun phrases ----

    fn synonym(&mut self, np: &NounPhrase, noun: &crate::parser::Leaf) {
        if noun.slot == FormSlot::Synonym {
            self.report.push(ReportEntry::Synonym { node: np.id, canonical: noun.lemma.clone() });
        }
    }

    fn np(&mut self, np: &NounPhrase) -> Result<Arg> {
        let arg = match &np.kind {
            NpKind::Numeral(s) => Arg::Num(s.clone()),
            NpKind::Wh(_) => {
                let r = self.new_ref(self.cur(), Gender::NotApplicable, Number::Sg, "", "", None);
                self.wh = Some(r);
                Arg::Ref(r)
            }
            NpKind::Proper(leaf) => {
                let entry = self
                    .lex
                    .entry(&leaf.lemma, WordClass::ProperNoun)
                    .ok_or_else(|| DiscourseError::MissingEntry { word: leaf.surface.clone() })?;
                if leaf.slot == FormSlot::Abbreviation {
                    self.report.push(ReportEntry::Abbreviation { node: np.id, expansion: entry.lemma.clone() });
                }
                let visible = self.drs.accessible(self.cur());
                let existing = visible.into_iter().find(|r| self.drs.referents[*r].name.as_deref() == Some(&entry.lemma));
                let r = match existing {
                    Some(r) => r,
                    None => {
                        let number = entry.number.unwrap_or(Number::Sg);
                        let r = self.new_ref(self.anchor, entry.gender, number, "named", &entry.lemma, Some(entry.lemma.clone()));
                        self.atom_in(self.anchor, "named".into(), vec![Arg::Ref(r), Arg::Name(entry.lemma.clone())], AtomKind::Named);
                        r
                    }
                };
                Arg::Ref(r)
            }
            NpKind::Pronoun(leaf) => {
                let f = np.features;
                let visible = self.drs.accessible(self.cur());
                let own_subject = self.subjects.last().copied().flatten();
                let found = visible.into_iter().rev().find(|r| {
                    let own = Some(*r) == own_subject;
                    let r = &self.drs.referents[*r];
                    !own && !r.sort.is_empty()
                        && r.number == f.number
                        && (f.gender == Gender::NotApplicable || r.gender == f.gender)
                });
                let r = found.ok_or_else(|| DiscourseError::UnresolvedPronoun {
                    pronoun: leaf.surface.clone(),
                    span: leaf.span.clone(),
                })?;
                let replacement = self.drs.referents[r].description();
                self.report.push(ReportEntry::Pronoun { node: np.id, antecedent: r, replacement });
                Arg::Ref(r)
            }
            NpKind::Common { det, adjectives, noun } => {
                let entry = self
                    .lex
                    .entry(&noun.lemma, WordClass::CommonNoun)
                    .ok_or_else(|| DiscourseError::MissingEntry { word: noun.surface.clone() })?;
                let sort = entry.predicate();
                let number = np.features.number;
                let noun_text = match number {
                    Number::Pl => entry.form(FormSlot::Pl).unwrap_or(&entry.lemma).to_lowercase(),
                    Number::Sg => entry.lemma.clone(),
                };
                self.synonym(np, noun);
                let resolved = match det {
                    Determiner::Definite(_) => {
                        let visible = self.drs.accessible(self.cur());
                        visible.into_iter().rev().find(|r| {
                            let r = &self.drs.referents[*r];
                            r.sort == sort && r.number == number
                        })
                    }
                    _ => None,
                };
                let r = match resolved {
                    Some(r) => {
                        self.report.push(ReportEntry::Definite { node: np.id, antecedent: r });
                        r
                    }
                    None => {
                        let home = if matches!(det, Determiner::Definite(_)) { self.anchor } else { self.cur() };
                        let r = self.new_ref(home, entry.gender, number, &sort, &noun_text, None);
                        for a in adjectives {
                            self.atom_in(home, predicate_name(&a.lemma), vec![Arg::Ref(r)], AtomKind::Adjective);
                        }
                        self.atom_in(home, sort.clone(), vec![Arg::Ref(r)], AtomKind::Noun);
                        if let Determiner::Count { value, .. } = det {
                            if *value != 1 {
                                self.atom_in(home, "cardinality".into(), vec![Arg::Ref(r), Arg::Num(value.to_string())], AtomKind::Cardinality);
                            }
                        }
                        r
                    }
                };
                Arg::Ref(r)
            }
        };
        if let Some(rel) = &np.rel {
            self.vp(&arg, None, &rel.vp)?;
        }
        Ok(arg)
    }

    /// How an already-built subject is restated when elided material is
    /// restored.
    fn np_text(&self, np: &NounPhrase, arg: &Arg) -> String {
        match (&np.kind, arg) {
            (NpKind::Pronoun(_), Arg::Ref(r)) => self.drs.referents[*r].description(),
            (NpKind::Proper(_), Arg::Ref(r)) => self.drs.referents[*r].name.clone().unwrap_or_default(),
            (NpKind::Common { noun, .. }, _) => format!("the {}", noun.lower()),
            (NpKind::Numeral(s), _) => s.clone(),
            _ => "it".into(),
        }
    }
}
