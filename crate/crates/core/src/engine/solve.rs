use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use super::{EngineError, KnowledgeBase};
use crate::logic::{Atom, Literal, Term};

pub const DEFAULT_DEPTH_LIMIT: usize = 512;

type Subst = HashMap<(String, u32), Term>;

fn walk(t: &Term, s: &Subst) -> Term {
    match t {
        Term::Var(n, sc) => match s.get(&(n.clone(), *sc)) {
            Some(b) => walk(b, s),
            None => t.clone(),
        },
        Term::Fn(i, args) => Term::Fn(*i, args.iter().map(|a| walk(a, s)).collect()),
        _ => t.clone(),
    }
}

fn occurs(v: &(String, u32), t: &Term) -> bool {
    match t {
        Term::Var(n, s) => n == &v.0 && *s == v.1,
        Term::Fn(_, args) => args.iter().any(|a| occurs(v, a)),
        _ => false,
    }
}

fn unify(a: &Term, b: &Term, s: &mut Subst) -> bool {
    let (a, b) = (walk(a, s), walk(b, s));
    match (&a, &b) {
        (Term::Var(n, x), Term::Var(m, y)) if n == m && x == y => true,
        (Term::Var(n, x), t) | (t, Term::Var(n, x)) => {
            let key = (n.clone(), *x);
            if occurs(&key, t) {
                return false;
            }
            s.insert(key, t.clone());
            true
        }
        (Term::Fn(i, xs), Term::Fn(j, ys)) => {
            i == j && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| unify(x, y, s))
        }
        _ => a == b,
    }
}

fn unify_atoms(a: &Atom, b: &Atom, s: &mut Subst) -> bool {
    a.pred == b.pred && a.args.len() == b.args.len() && a.args.iter().zip(&b.args).all(|(x, y)| unify(x, y, s))
}

fn rename(t: &Term, scope: u32) -> Term {
    match t {
        Term::Var(n, _) => Term::Var(n.clone(), scope),
        Term::Fn(i, args) => Term::Fn(*i, args.iter().map(|a| rename(a, scope)).collect()),
        _ => t.clone(),
    }
}

fn rename_atom(a: &Atom, scope: u32) -> Atom {
    Atom { pred: a.pred.clone(), args: a.args.iter().map(|t| rename(t, scope)).collect() }
}

pub(crate) fn apply(a: &Atom, s: &HashMap<(String, u32), Term>) -> Atom {
    Atom { pred: a.pred.clone(), args: a.args.iter().map(|t| walk(t, s)).collect() }
}

struct Frame {
    /// Pending goals with their derivation depth.
    goals: Vec<(Literal, usize)>,
    subst: Subst,
    /// Next rule to try for the first goal.
    next: usize,
}

/// Lazy enumeration of the distinct instances of `outputs` for which the goal
/// list succeeds.
pub struct Solver {
    kb: Arc<KnowledgeBase>,
    stack: Vec<Frame>,
    outputs: Vec<Term>,
    seen: HashSet<Vec<Term>>,
    limit: usize,
    scope: u32,
    stopped: bool,
}

impl Solver {
    pub fn new(kb: Arc<KnowledgeBase>, goals: Vec<Literal>, outputs: Vec<Term>) -> Solver {
        Solver::with_limit(kb, goals, outputs, DEFAULT_DEPTH_LIMIT)
    }

    pub fn with_limit(kb: Arc<KnowledgeBase>, goals: Vec<Literal>, outputs: Vec<Term>, limit: usize) -> Solver {
        let frame = Frame { goals: goals.into_iter().map(|g| (g, 0)).collect(), subst: Subst::new(), next: 0 };
        Solver { kb, stack: vec![frame], outputs, seen: HashSet::new(), limit, scope: 0, stopped: false }
    }

    fn fail(&mut self, e: EngineError) -> Option<Result<Vec<Term>, EngineError>> {
        self.stopped = true;
        self.stack.clear();
        Some(Err(e))
    }
}

impl Iterator for Solver {
    type Item = Result<Vec<Term>, EngineError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.stopped {
            return None;
        }
        while let Some(frame) = self.stack.last_mut() {
            let Some((goal, depth)) = frame.goals.first().cloned() else {
                let done = self.stack.pop().expect("non-empty stack");
                let answer: Vec<Term> = self.outputs.iter().map(|t| walk(t, &done.subst)).collect();
                if self.seen.insert(answer.clone()) {
                    return Some(Ok(answer));
                }
                continue;
            };
            if depth > self.limit {
                return self.fail(EngineError::DepthLimitExceeded { limit: self.limit });
            }
            if goal.positive {
                let mut child = None;
                while frame.next < self.kb.rules().len() {
                    let rule = &self.kb.rules()[frame.next];
                    frame.next += 1;
                    let head = rule.head.as_ref().expect("rules have heads");
                    if head.pred != goal.atom.pred || head.args.len() != goal.atom.args.len() {
                        continue;
                    }
                    self.scope += 1;
                    let mut s = frame.subst.clone();
                    if unify_atoms(&goal.atom, &rename_atom(head, self.scope), &mut s) {
                        let mut goals: Vec<(Literal, usize)> = rule
                            .body
                            .iter()
                            .map(|l| (Literal { positive: l.positive, atom: rename_atom(&l.atom, self.scope) }, depth + 1))
                            .collect();
                        goals.extend(frame.goals[1..].iter().cloned());
                        child = Some(Frame { goals, subst: s, next: 0 });
                        break;
                    }
                }
                match child {
                    Some(c) => self.stack.push(c),
                    None => {
                        self.stack.pop();
                    }
                }
            } else {
                let frame = self.stack.pop().expect("non-empty stack");
                let atom = apply(&goal.atom, &frame.subst);
                if !atom.is_ground() {
                    return self.fail(EngineError::Floundering { goal: atom.to_string() });
                }
                let mut sub =
                    Solver::with_limit(self.kb.clone(), vec![Literal::pos(atom)], Vec::new(), self.limit - depth);
                match sub.next() {
                    None => self.stack.push(Frame { goals: frame.goals[1..].to_vec(), subst: frame.subst, next: 0 }),
                    Some(Ok(_)) => {}
                    Some(Err(e)) => return self.fail(e),
                }
            }
        }
        None
    }
}

/// Whether the goal list has at least one proof.
pub fn provable(kb: Arc<KnowledgeBase>, goals: Vec<Literal>) -> Result<bool, EngineError> {
    Solver::new(kb, goals, Vec::new()).next().transpose().map(|o| o.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::Clause;

    fn c(i: usize) -> Term {
        Term::Const(i)
    }

    fn v(n: &str) -> Term {
        Term::var(n)
    }

    fn kb(clauses: Vec<Clause>) -> Arc<KnowledgeBase> {
        let mut kb = KnowledgeBase::new();
        clauses.into_iter().for_each(|c| kb.add_rule(c));
        Arc::new(kb)
    }

    fn rule(head: Atom, body: Vec<Literal>) -> Clause {
        Clause { head: Some(head), body, provenance: 0 }
    }

    #[test]
    fn facts_rules_and_negation() {
        let kb = kb(vec![
            Clause::fact(Atom::new("card", vec![c(1)]), 0),
            Clause::fact(Atom::new("card", vec![c(2)]), 0),
            Clause::fact(Atom::new("valid", vec![c(2)]), 0),
            rule(
                Atom::new("reject", vec![v("X")]),
                vec![Literal::pos(Atom::new("card", vec![v("X")])), Literal::neg(Atom::new("valid", vec![v("X")]))],
            ),
        ]);
        let got: Vec<_> = Solver::new(kb.clone(), vec![Literal::pos(Atom::new("reject", vec![v("Q")]))], vec![v("Q")])
            .collect::<Result<_, _>>()
            .unwrap();
        assert_eq!(got, vec![vec![c(1)]]);
        assert!(provable(kb.clone(), vec![Literal::neg(Atom::new("valid", vec![c(1)]))]).unwrap());
        assert!(!provable(kb, vec![Literal::neg(Atom::new("valid", vec![c(2)]))]).unwrap());
    }

    #[test]
    fn answers_are_distinct() {
        let kb = kb(vec![
            Clause::fact(Atom::new("p", vec![c(1)]), 0),
            Clause::fact(Atom::new("p", vec![c(1)]), 1),
            Clause::fact(Atom::new("p", vec![c(2)]), 1),
        ]);
        let got: Vec<_> =
            Solver::new(kb, vec![Literal::pos(Atom::new("p", vec![v("X")]))], vec![v("X")]).map(Result::unwrap).collect();
        assert_eq!(got, vec![vec![c(1)], vec![c(2)]]);
    }

    #[test]
    fn floundering_and_depth() {
        let kb = kb(vec![rule(Atom::new("loop", vec![v("X")]), vec![Literal::pos(Atom::new("loop", vec![v("X")]))])]);
        let mut s = Solver::new(kb.clone(), vec![Literal::pos(Atom::new("loop", vec![c(0)]))], vec![]);
        assert_eq!(s.next(), Some(Err(EngineError::DepthLimitExceeded { limit: DEFAULT_DEPTH_LIMIT })));
        assert_eq!(s.next(), None);
        let mut s = Solver::new(kb, vec![Literal::neg(Atom::new("q", vec![v("X")]))], vec![]);
        assert!(matches!(s.next(), Some(Err(EngineError::Floundering { .. }))));
    }

    #[test]
    fn skolem_functions_unify_structurally() {
        let kb = kb(vec![
            Clause::fact(Atom::new("p", vec![Term::Fn(3, vec![c(1)])]), 0),
        ]);
        assert!(provable(kb.clone(), vec![Literal::pos(Atom::new("p", vec![Term::Fn(3, vec![v("A")])]))]).unwrap());
        assert!(!provable(kb, vec![Literal::pos(Atom::new("p", vec![Term::Fn(3, vec![c(2)])]))]).unwrap());
    }
}
