//! Translation of a DRS into clauses.
//!
//! Top-box referents become skolem constants numbered by referent id, top
//! atoms become facts, each conditional becomes one rule per consequent atom
//! with antecedent referents as variables. Consequent referents become
//! skolem functions of the antecedent variables. A top-level negation becomes
//! a denial. Disjunctions outside antecedents are not translated; their
//! predicates are recorded as opaque so queries touching them are answered
//! as unknown.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::diagnostics::Diagnostic;
use crate::discourse::{Arg, BoxId, Condition, Drs, RefId};
use crate::logic::{Atom, Clause, Literal, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("sentence {}: a disjunction outside an if-part cannot be turned into clauses; the sentence stays queryable as unknown", .sentence + 1)]
    UntranslatableDisjunction { sentence: usize },
    #[error("sentence {}: negation of a compound condition nested too deeply", .sentence + 1)]
    NonAtomicNegation { sentence: usize },
}

impl TranslateError {
    pub fn code(&self) -> &'static str {
        match self {
            TranslateError::UntranslatableDisjunction { .. } => "untranslatable-disjunction",
            TranslateError::NonAtomicNegation { .. } => "non-atomic-negation",
        }
    }

    pub fn sentence(&self) -> usize {
        match self {
            TranslateError::UntranslatableDisjunction { sentence } | TranslateError::NonAtomicNegation { sentence } => {
                *sentence
            }
        }
    }

    pub fn diagnostic(&self) -> Diagnostic {
        Diagnostic::error(self.code(), self.to_string(), None)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Translation {
    /// Facts, rules and denials in sentence order.
    pub clauses: Vec<Clause>,
    /// Predicates mentioned by untranslated conditions.
    pub opaque: BTreeSet<String>,
    pub errors: Vec<TranslateError>,
}

impl Translation {
    pub fn text(&self) -> String {
        crate::logic::render_clauses(&self.clauses)
    }
}

type Vars = BTreeMap<RefId, Term>;

/// Translates the whole DRS.
pub fn translate(drs: &Drs) -> Translation {
    let mut t = Translator { drs, out: Translation::default(), aux: 0, sentence: 0 };
    for e in &drs.top().conditions {
        t.sentence = e.sentence;
        if let Err(err) = t.top_condition(&e.condition) {
            t.out.errors.push(err);
        }
    }
    t.out
}

/// Body alternatives for a query box: referents of `query_box` become
/// variables named by their letters. Also returns the auxiliary clauses the
/// body relies on.
pub fn query_body(drs: &Drs, query_box: BoxId) -> Result<(Vec<Vec<Literal>>, Vec<Clause>), TranslateError> {
    let mut t = Translator { drs, out: Translation::default(), aux: 1000, sentence: drs.sentence_count() };
    let mut vars = Vars::new();
    let alts = t.body(query_box, &mut vars, 0)?;
    Ok((alts, t.out.clauses))
}

/// Predicates used anywhere inside a box.
pub fn predicates(drs: &Drs, b: BoxId, out: &mut BTreeSet<String>) {
    for e in &drs.get(b).conditions {
        match &e.condition {
            Condition::Atom(a) => {
                out.insert(a.pred.clone());
            }
            Condition::Not(n) => predicates(drs, *n, out),
            Condition::Implies(a, c) => {
                predicates(drs, *a, out);
                predicates(drs, *c, out);
            }
            Condition::Or { disjuncts, .. } => disjuncts.iter().for_each(|d| predicates(drs, *d, out)),
            Condition::Group { .. } => {
                out.insert("member".into());
            }
        }
    }
}

struct Translator<'a> {
    drs: &'a Drs,
    out: Translation,
    aux: usize,
    sentence: usize,
}

impl<'a> Translator<'a> {
    fn term(&self, a: &Arg, vars: &Vars) -> Term {
        match a {
            Arg::Ref(r) => vars.get(r).cloned().unwrap_or(Term::Const(*r)),
            Arg::Name(n) => Term::Name(n.clone()),
            Arg::Num(n) => Term::Num(n.clone()),
        }
    }

    fn atom(&self, a: &crate::discourse::Atom, vars: &Vars) -> Atom {
        Atom { pred: a.pred.clone(), args: a.args.iter().map(|x| self.term(x, vars)).collect() }
    }

    fn member_atoms(&self, group: RefId, members: &[RefId], vars: &Vars) -> Vec<Atom> {
        let g = self.term(&Arg::Ref(group), vars);
        members.iter().map(|m| Atom::new("member", vec![self.term(&Arg::Ref(*m), vars), g.clone()])).collect()
    }

    fn push(&mut self, head: Option<Atom>, body: Vec<Literal>) {
        self.out.clauses.push(Clause { head, body, provenance: self.sentence });
    }

    fn opaque(&mut self, b: BoxId) {
        predicates(self.drs, b, &mut self.out.opaque);
    }

    fn top_condition(&mut self, c: &Condition) -> Result<(), TranslateError> {
        let vars = Vars::new();
        match c {
            Condition::Atom(a) => {
                let atom = self.atom(a, &vars);
                self.push(Some(atom), Vec::new());
            }
            Condition::Group { group, members } => {
                for a in self.member_atoms(*group, members, &vars) {
                    self.push(Some(a), Vec::new());
                }
            }
            Condition::Not(b) => {
                let mut vars = vars;
                let alts = self.body(*b, &mut vars, 0)?;
                for body in alts {
                    self.push(None, body);
                }
            }
            Condition::Implies(a, c) => self.rule(*a, *c)?,
            Condition::Or { disjuncts, .. } => {
                for d in disjuncts {
                    self.opaque(*d);
                }
                return Err(TranslateError::UntranslatableDisjunction { sentence: self.sentence });
            }
        }
        Ok(())
    }

    fn rule(&mut self, ante: BoxId, cons: BoxId) -> Result<(), TranslateError> {
        let mut vars = Vars::new();
        let alts = self.body(ante, &mut vars, 0)?;
        let ante_vars: Vec<Term> = vars.values().cloned().collect();
        for r in &self.drs.get(cons).referents {
            let t = if ante_vars.is_empty() { Term::Const(*r) } else { Term::Fn(*r, ante_vars.clone()) };
            vars.insert(*r, t);
        }
        for e in &self.drs.get(cons).conditions {
            match &e.condition {
                Condition::Atom(a) => {
                    let head = self.atom(a, &vars);
                    for body in &alts {
                        self.push(Some(head.clone()), body.clone());
                    }
                }
                Condition::Group { group, members } => {
                    for head in self.member_atoms(*group, members, &vars) {
                        for body in &alts {
                            self.push(Some(head.clone()), body.clone());
                        }
                    }
                }
                Condition::Not(n) => {
                    // `if P then not Q`: P and Q must not hold together.
                    let mut inner_vars = vars.clone();
                    let inner = self.body(*n, &mut inner_vars, 0)?;
                    for body in &alts {
                        for extra in &inner {
                            let mut b = body.clone();
                            b.extend(extra.iter().cloned());
                            self.push(None, order(b));
                        }
                    }
                }
                Condition::Or { disjuncts, .. } => {
                    for d in disjuncts {
                        self.opaque(*d);
                    }
                    return Err(TranslateError::UntranslatableDisjunction { sentence: self.sentence });
                }
                Condition::Implies(..) => return Err(TranslateError::NonAtomicNegation { sentence: self.sentence }),
            }
        }
        Ok(())
    }

    /// Alternative bodies for a box whose referents become variables.
    fn body(&mut self, b: BoxId, vars: &mut Vars, level: usize) -> Result<Vec<Vec<Literal>>, TranslateError> {
        for r in &self.drs.get(b).referents {
            vars.insert(*r, Term::var(&Drs::letter(*r)));
        }
        let mut alts: Vec<Vec<Literal>> = vec![Vec::new()];
        for e in &self.drs.get(b).conditions {
            match &e.condition {
                Condition::Atom(a) => {
                    let lit = Literal::pos(self.atom(a, vars));
                    alts.iter_mut().for_each(|x| x.push(lit.clone()));
                }
                Condition::Group { group, members } => {
                    for a in self.member_atoms(*group, members, vars) {
                        alts.iter_mut().for_each(|x| x.push(Literal::pos(a.clone())));
                    }
                }
                Condition::Not(n) => {
                    let lit = self.negation(*n, vars, level)?;
                    alts.iter_mut().for_each(|x| x.push(lit.clone()));
                }
                Condition::Or { disjuncts, exclusive } => {
                    let mut options: Vec<Vec<Literal>> = Vec::new();
                    for (i, d) in disjuncts.iter().enumerate() {
                        let mut dv = vars.clone();
                        let d_alts = self.body(*d, &mut dv, level)?;
                        let mut others = Vec::new();
                        if *exclusive {
                            for (j, o) in disjuncts.iter().enumerate() {
                                if j != i {
                                    others.push(self.negation(*o, vars, level)?);
                                }
                            }
                        }
                        for mut a in d_alts {
                            a.extend(others.iter().cloned());
                            options.push(a);
                        }
                    }
                    alts = alts
                        .iter()
                        .flat_map(|x| options.iter().map(move |o| x.iter().chain(o).cloned().collect()))
                        .collect();
                }
                Condition::Implies(..) => return Err(TranslateError::NonAtomicNegation { sentence: self.sentence }),
            }
        }
        Ok(alts.into_iter().map(order).collect())
    }

    /// `neg(atom)` for a single-atom box, otherwise `neg(auxN(...))` with an
    /// auxiliary predicate defined by the box (one level only).
    fn negation(&mut self, n: BoxId, vars: &Vars, level: usize) -> Result<Literal, TranslateError> {
        let bx = self.drs.get(n);
        if let ([], [only]) = (bx.referents.as_slice(), bx.conditions.as_slice()) {
            if let Condition::Atom(a) = &only.condition {
                return Ok(Literal::neg(self.atom(a, vars)));
            }
        }
        if level > 0 {
            return Err(TranslateError::NonAtomicNegation { sentence: self.sentence });
        }
        let mut inner_vars = vars.clone();
        let alts = self.body(n, &mut inner_vars, level + 1)?;
        let outer: BTreeSet<&Term> = vars.values().filter(|t| matches!(t, Term::Var(..))).collect();
        let mut shared: Vec<Term> = Vec::new();
        for alt in &alts {
            for lit in alt {
                for (name, scope) in lit.atom.vars() {
                    let t = Term::Var(name, scope);
                    if outer.contains(&t) && !shared.contains(&t) {
                        shared.push(t);
                    }
                }
            }
        }
        shared.sort();
        self.aux += 1;
        let head = Atom::new(&format!("aux{}", self.aux), shared);
        for body in alts {
            self.push(Some(head.clone()), body);
        }
        Ok(Literal::neg(head))
    }
}

/// Positive literals first so negated ones are ground when reached.
fn order(body: Vec<Literal>) -> Vec<Literal> {
    let (pos, neg): (Vec<_>, Vec<_>) = body.into_iter().partition(|l| l.positive);
    pos.into_iter().chain(neg).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::{Lexicon, SIMPLEMAT_LEXICON};
    use crate::parser::parse;

    fn drs(sentences: &[&str]) -> Drs {
        let lex = Lexicon::parse(SIMPLEMAT_LEXICON).unwrap();
        let mut d = Drs::new();
        for s in sentences {
            d = d.extend(&parse(s, &lex).unwrap(), &lex).unwrap().0;
        }
        d
    }

    #[test]
    fn simplemat_clauses() {
        let t = translate(&drs(&["The customer enters a card and a numeric personal code.", "If it is not valid then SM rejects the card."]));
        assert_eq!(
            t.text(),
            "fact(customer(0)).\nfact(card(1)).\nfact(enter(0, 1)).\nfact(numeric(2)).\nfact(personal_code(2)).\nfact(enter(0, 2)).\nfact(named(3, simplemat)).\nfact((reject(3, 1):- neg(valid(2)))).\n"
        );
        assert!(t.errors.is_empty());
    }

    #[test]
    fn empty_drs_has_no_clauses() {
        assert_eq!(translate(&Drs::new()), Translation::default());
    }

    #[test]
    fn conditional_with_variables() {
        let t = translate(&drs(&["If a customer enters a card then SimpleMat accepts the card."]));
        assert_eq!(
            t.text(),
            "fact(named(2, simplemat)).\nfact((accept(2, B):- customer(A), card(B), enter(A, B))).\n"
        );
    }

    #[test]
    fn consequent_referents_are_skolem_functions() {
        let t = translate(&drs(&["If a customer enters a card then SimpleMat gives a receipt to the customer."]));
        assert!(t.text().contains("fact((receipt(sk(3, A, B)):- customer(A), card(B), enter(A, B)))."), "{}", t.text());
    }

    #[test]
    fn denials_and_disjunctions() {
        let t = translate(&drs(&["No customer enters a card."]));
        assert_eq!(t.text(), "fact((false:- customer(A), card(B), enter(A, B))).\n");
        let t = translate(&drs(&["The customer enters a card or a code."]));
        assert_eq!(t.errors, vec![TranslateError::UntranslatableDisjunction { sentence: 0 }]);
        assert!(t.opaque.contains("enter"));
        assert_eq!(t.text(), "fact(customer(0)).\n");
    }

    #[test]
    fn antecedent_disjunction_gives_one_rule_per_alternative() {
        let t = translate(&drs(&["If a customer enters a card or a code then SM waits."]));
        let rules: Vec<_> = t.clauses.iter().filter(|c| c.head.as_ref().is_some_and(|h| h.pred == "wait")).collect();
        assert_eq!(rules.len(), 2);
    }

    #[test]
    fn compound_negation_uses_an_auxiliary() {
        let t = translate(&drs(&["If a customer does not enter a card then SM waits."]));
        assert!(t.text().contains("fact((aux1(A):- card(B), enter(A, B)))."), "{}", t.text());
        assert!(t.text().contains("fact((wait(2):- customer(A), neg(aux1(A))))."), "{}", t.text());
    }

    #[test]
    fn groups_become_member_facts() {
        let t = translate(&drs(&["John and Mary enter a card together."]));
        assert!(t.text().contains("fact(member(0, 2)).\nfact(member(1, 2)).\nfact(card(3)).\nfact(enter(2, 3)).\n"), "{}", t.text());
    }

    #[test]
    fn numbering_is_stable_under_extension() {
        let a = translate(&drs(&["The customer enters a card."]));
        let b = translate(&drs(&["The customer enters a card.", "SM checks a code."]));
        assert_eq!(&b.clauses[..a.clauses.len()], &a.clauses[..]);
    }
}
