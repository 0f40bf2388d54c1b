use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use super::solve::{apply, provable, Solver};
use super::KnowledgeBase;
use crate::discourse::{Drs, QueryDrs};
use crate::lexicon::Lexicon;
use crate::logic::{Clause, Literal, Term};
use crate::paraphrase::render_answer;
use crate::parser::{Clause as TreeClause, NodeId, NpKind, SentenceKind, Subject, SyntaxTree, VerbPhrase};
use crate::translator::{predicates, query_body, TranslateError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnswerKind {
    YesNo,
    Wh,
}

impl AnswerKind {
    pub fn as_str(self) -> &'static str {
        match self {
            AnswerKind::YesNo => "yesno",
            AnswerKind::Wh => "wh",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Answer {
    Yes,
    No,
    /// The question touches untranslated material or the proof search failed.
    Unknown { reason: String },
    /// A restated question with the question word replaced: `[a customer] enters a card.`
    Value { text: String },
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Answer::Yes => f.write_str("Answer: yes"),
            Answer::No => f.write_str("Answer: no"),
            Answer::Unknown { reason } => write!(f, "Answer: unknown ({reason})"),
            Answer::Value { text } => write!(f, "Answer: {text}"),
        }
    }
}

enum State {
    Fixed(Option<Answer>),
    Searching { solvers: Vec<Solver>, current: usize },
}

/// Lazily computed answers to one question. A yes/no question yields exactly
/// one answer; a wh-question yields one answer per distinct answer text.
pub struct Answers {
    kind: AnswerKind,
    state: State,
    kb: Arc<KnowledgeBase>,
    query: Vec<Vec<Literal>>,
    outputs: Vec<Term>,
    wh: Option<Term>,
    /// Texts already given; distinct referents described alike count once.
    seen: HashSet<String>,
    drs: Drs,
    clause: Option<TreeClause>,
    wh_node: Option<NodeId>,
    lexicon: Lexicon,
}

impl Answers {
    pub fn kind(&self) -> AnswerKind {
        self.kind
    }

    fn term_text(&self, t: &Term) -> String {
        match t {
            Term::Const(i) | Term::Fn(i, _) => self.drs.referent(*i).indefinite(),
            Term::Name(n) | Term::Num(n) => n.clone(),
            Term::Var(..) => "something".into(),
        }
    }

    /// A solution survives unless adding its instance of the question makes
    /// a denial provable.
    fn allowed(&self, alt: usize, solution: &[Term]) -> Result<bool, super::EngineError> {
        if self.kb.denials().is_empty() {
            return Ok(true);
        }
        let subst: HashMap<(String, u32), Term> = self
            .outputs
            .iter()
            .zip(solution)
            .filter_map(|(o, v)| match o {
                Term::Var(n, s) => Some(((n.clone(), *s), v.clone())),
                _ => None,
            })
            .collect();
        let mut kb = (*self.kb).clone();
        for l in self.query[alt].iter().filter(|l| l.positive) {
            kb.add_rule(Clause::fact(apply(&l.atom, &subst), usize::MAX));
        }
        let kb = Arc::new(kb);
        for d in self.kb.denials() {
            if provable(kb.clone(), d.body.clone())? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn render(&self, value: &Term) -> Answer {
        let text = match (&self.clause, self.wh_node) {
            (Some(c), Some(node)) => {
                let mut r = HashMap::new();
                r.insert(node, self.term_text(value));
                render_answer(c, r, &self.lexicon).text
            }
            _ => format!("[{}].", self.term_text(value)),
        };
        Answer::Value { text }
    }
}

impl Iterator for Answers {
    type Item = Answer;

    fn next(&mut self) -> Option<Answer> {
        loop {
            let (alt, item) = match &mut self.state {
                State::Fixed(a) => return a.take(),
                State::Searching { solvers, current } => {
                    let Some(s) = solvers.get_mut(*current) else {
                        let last = (self.kind == AnswerKind::YesNo).then_some(Answer::No);
                        self.state = State::Fixed(None);
                        return last;
                    };
                    match s.next() {
                        None => {
                            *current += 1;
                            continue;
                        }
                        Some(r) => (*current, r),
                    }
                }
            };
            let solution = match item {
                Ok(s) => s,
                Err(e) => {
                    self.state = State::Fixed(None);
                    return Some(Answer::Unknown { reason: e.to_string() });
                }
            };
            match self.allowed(alt, &solution) {
                Ok(true) => {}
                Ok(false) => continue,
                Err(e) => {
                    self.state = State::Fixed(None);
                    return Some(Answer::Unknown { reason: e.to_string() });
                }
            }
            if self.kind == AnswerKind::YesNo {
                self.state = State::Fixed(None);
                return Some(Answer::Yes);
            }
            let wh = self.wh.as_ref().expect("wh-question has a wh term");
            let pos = self.outputs.iter().position(|o| o == wh);
            let value = pos.map_or_else(|| wh.clone(), |p| solution[p].clone());
            let answer = self.render(&value);
            if self.seen.insert(answer.to_string()) {
                return Some(answer);
            }
        }
    }
}

fn wh_in_vp(vp: &VerbPhrase) -> Option<NodeId> {
    match vp {
        VerbPhrase::Verb(v) => v
            .object
            .iter()
            .flat_map(|o| &o.items)
            .chain(v.pps.iter().map(|p| &p.object))
            .find(|np| matches!(np.kind, NpKind::Wh(_)))
            .map(|np| np.id),
        VerbPhrase::Copula(_) => None,
    }
}

fn wh_node(c: &TreeClause) -> Option<NodeId> {
    if let Subject::Single(np) = &c.subject {
        if matches!(np.kind, NpKind::Wh(_)) {
            return Some(np.id);
        }
    }
    c.predicate.items.iter().find_map(wh_in_vp)
}

/// Predicates the question depends on through the rules.
fn reachable(kb: &KnowledgeBase, start: BTreeSet<String>) -> BTreeSet<String> {
    let mut seen = start.clone();
    let mut todo: Vec<String> = start.into_iter().collect();
    while let Some(p) = todo.pop() {
        for r in kb.rules().iter().filter(|r| r.head.as_ref().is_some_and(|h| h.pred == p)) {
            for l in &r.body {
                if seen.insert(l.atom.pred.clone()) {
                    todo.push(l.atom.pred.clone());
                }
            }
        }
    }
    seen
}

/// Answers a question whose DRS was built against the session DRS.
pub fn answer(kb: &KnowledgeBase, q: &QueryDrs, tree: &SyntaxTree, lexicon: &Lexicon) -> Result<Answers, TranslateError> {
    let kind = if q.kind == SentenceKind::WhQuestion { AnswerKind::Wh } else { AnswerKind::YesNo };
    let (alts, aux) = query_body(&q.drs, q.query_box)?;
    let mut kb = kb.clone();
    aux.into_iter().for_each(|c| kb.add_rule(c));
    let mut preds = BTreeSet::new();
    predicates(&q.drs, q.query_box, &mut preds);
    let opaque: Vec<String> = reachable(&kb, preds).into_iter().filter(|p| kb.is_opaque(p)).collect();
    let mut outputs: Vec<Term> = Vec::new();
    for l in alts.iter().flatten() {
        for (n, s) in l.atom.vars() {
            let t = Term::Var(n, s);
            if !outputs.contains(&t) {
                outputs.push(t);
            }
        }
    }
    let wh = q.wh.map(|r| Term::var(&Drs::letter(r)));
    let kb = Arc::new(kb);
    let state = if !opaque.is_empty() {
        State::Fixed(Some(Answer::Unknown { reason: format!("depends on untranslated `{}`", opaque.join("`, `")) }))
    } else {
        let solvers = alts.iter().map(|a| Solver::new(kb.clone(), a.clone(), outputs.clone())).collect();
        State::Searching { solvers, current: 0 }
    };
    let clause = tree.question_clause().cloned();
    let wh_node = clause.as_ref().and_then(wh_node);
    Ok(Answers {
        kind,
        state,
        kb,
        query: alts,
        outputs,
        wh,
        seen: HashSet::new(),
        drs: q.drs.clone(),
        clause,
        wh_node,
        lexicon: lexicon.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::SIMPLEMAT_LEXICON;
    use crate::parser::parse;
    use crate::translator::translate;

    fn ask(spec: &[&str], question: &str) -> Vec<String> {
        let lex = Lexicon::parse(SIMPLEMAT_LEXICON).unwrap();
        let mut d = Drs::new();
        for s in spec {
            d = d.extend(&parse(s, &lex).unwrap(), &lex).unwrap().0;
        }
        let kb = KnowledgeBase::from_translation(&translate(&d));
        let tree = parse(question, &lex).unwrap();
        let q = d.query(&tree, &lex).unwrap();
        answer(&kb, &q, &tree, &lex).unwrap().map(|a| a.to_string()).collect()
    }

    const SPEC: [&str; 2] =
        ["The customer enters a card and a numeric personal code.", "If it is not valid then SM rejects the card."];

    #[test]
    fn yes_no_and_wh() {
        assert_eq!(ask(&SPEC, "Does the customer enter a card?"), vec!["Answer: yes"]);
        assert_eq!(ask(&SPEC, "Who enters a card?"), vec!["Answer: [a customer] enters a card."]);
        assert_eq!(ask(&SPEC, "Does SimpleMat reject the card?"), vec!["Answer: yes"]);
        assert_eq!(ask(&SPEC, "Is the personal code valid?"), vec!["Answer: no"]);
        assert_eq!(ask(&SPEC, "What does the customer enter?"), vec![
            "Answer: the customer enters [a card].",
            "Answer: the customer enters [a personal code]."
        ]);
        assert!(ask(&[], "Who enters a card?").is_empty());
    }

    #[test]
    fn opaque_and_denials() {
        let got = ask(&["The customer enters a card or a code."], "Does the customer enter a card?");
        assert!(got[0].starts_with("Answer: unknown"), "{got:?}");
        let got = ask(&["No customer enters a card.", "The customer owns a card."], "Does the customer own a card?");
        assert_eq!(got, vec!["Answer: yes"]);
    }
}
