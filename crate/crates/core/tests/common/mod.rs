//! Fixtures and independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cewb::lexicon::{Lexicon, SIMPLEMAT_LEXICON};
use cewb::logic::{Atom, Clause, Literal, Term};
use cewb::session::Session;

pub fn lexicon() -> Lexicon {
    Lexicon::parse(SIMPLEMAT_LEXICON).expect("built-in lexicon")
}

/// A session with every sentence accepted.
pub fn session(sentences: &[&str]) -> Session {
    let mut s = Session::new(lexicon());
    for text in sentences {
        s.add(text).unwrap_or_else(|e| panic!("{text}: {e}"));
    }
    s
}

pub const TWO_SENTENCES: [&str; 2] =
    ["The customer enters a card and a numeric personal code.", "If it is not valid then SM rejects the card."];

pub const TELLER: [&str; 4] = [
    "The customer enters a card and a personal code.",
    "SimpleMat checks the personal code.",
    "If the personal code is valid then SimpleMat accepts the card.",
    "If the personal code is not valid then SimpleMat rejects the card.",
];

pub const DRS_LISTING: &str = "\
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

pub const CLAUSE_LISTING: &str = "\
fact(customer(0)).
fact(card(1)).
fact(enter(0, 1)).
fact(numeric(2)).
fact(personal_code(2)).
fact(enter(0, 2)).
fact(named(3, simplemat)).
fact((reject(3, 1):- neg(valid(2)))).
";

/// Non-blank lines with their indentation removed.
pub fn flat_lines(text: &str) -> Vec<&str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty()).collect()
}

pub fn replies(valid: bool) -> [&'static str; 5] {
    [
        "john is a customer",
        "bank_card is a card",
        "1234 is a personal_code",
        "s1 is a simplemat",
        if valid { "1234 is valid" } else { "1234 is not valid" },
    ]
}

/// The teller's event lines for one validity outcome, from a table of the
/// two conditionals: each rule fires when its condition matches.
pub fn expected_events(valid: bool) -> Vec<String> {
    let table = [(true, "accepts"), (false, "rejects")];
    let mut events = vec![
        "john enters the bank_card".to_string(),
        "john enters 1234".to_string(),
        "s1 checks 1234".to_string(),
    ];
    for (condition, verb) in table {
        if condition == valid {
            events.push(format!("s1 {verb} the bank_card"));
        }
    }
    events
}

/// Sentence groups (each group is one discourse) covering every sentence
/// constructor.
pub const CORPUS: &[&[&str]] = &[
    &TWO_SENTENCES,
    &["The customer enters a card with a code."],
    &["The customer enters a card or a code."],
    &["The customer enters either a card or a code."],
    &["The customer enters neither a card nor a code."],
    &["The customer does not enter a card."],
    &["The customer does not enter either a card or a code."],
    &["The card is not valid."],
    &["No customer enters a card."],
    &["The customer who enters a card waits."],
    &["The customer enters a card which is valid."],
    &["The customer enters a card that is valid."],
    &["John and Mary enter a card."],
    &["John and Mary each enter a card."],
    &["John and Mary enter a card together.", "They wait."],
    &["The customer enters 2 cards."],
    &["The customers enter 3 cards."],
    &["The customer enters a card.", "SM checks it.", "SM accepts the card."],
    &["The customer types a code and SM checks the code."],
    &["The customer enters a card or SM waits."],
    &["The customer enters a card or the customer enters a code or SM waits."],
    &["A card is bigger than a receipt."],
    &["The clerk gives money to the customer."],
    &["John enters a card.", "He waits."],
    &["The customer enters a card and waits."],
    &["If a customer enters a valid card then SM accepts the card."],
    &["John carries a card to SM.", "SM checks the card."],
];

/// Ground atoms as predicate plus constant arguments.
pub type GroundAtom = (String, Vec<usize>);

/// A function-free program over constants `0..constants`.
#[derive(Debug, Clone)]
pub struct Program {
    pub constants: usize,
    /// Predicate name, arity and stratum.
    pub predicates: Vec<(String, usize, usize)>,
    pub facts: Vec<GroundAtom>,
    pub rules: Vec<Clause>,
}

impl Program {
    pub fn clauses(&self) -> Vec<Clause> {
        let facts = self.facts.iter().map(|(p, args)| {
            Clause::fact(Atom::new(p, args.iter().map(|&c| Term::Const(c)).collect()), 0)
        });
        facts.chain(self.rules.iter().cloned()).collect()
    }

    pub fn ground_atoms(&self) -> Vec<GroundAtom> {
        let mut out = Vec::new();
        for (p, arity, _) in &self.predicates {
            for args in tuples(self.constants, *arity) {
                out.push((p.clone(), args));
            }
        }
        out
    }
}

fn tuples(constants: usize, arity: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|t| (0..constants).map(move |c| [t.clone(), vec![c]].concat()))
            .collect();
    }
    out
}

/// Random stratified program: two base predicates, two derived ones, each
/// derived predicate defined only in terms of lower strata.
pub fn random_program(seed: u64) -> Program {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let constants = 3;
    let predicates = vec![
        ("p".to_string(), 1, 0),
        ("q".to_string(), 2, 0),
        ("r".to_string(), rng.gen_range(1..=2), 1),
        ("s".to_string(), rng.gen_range(1..=2), 2),
    ];
    let mut facts = BTreeSet::new();
    for _ in 0..rng.gen_range(0..=12) {
        let (p, arity, _) = &predicates[rng.gen_range(0..predicates.len())];
        facts.insert((p.clone(), (0..*arity).map(|_| rng.gen_range(0..constants)).collect::<Vec<_>>()));
    }
    let vars = ["X", "Y", "Z"];
    let mut rules = Vec::new();
    for _ in 0..rng.gen_range(0..=4) {
        let (head_pred, head_arity, stratum) = predicates[rng.gen_range(2..4)].clone();
        let lower: Vec<_> = predicates.iter().filter(|p| p.2 < stratum).cloned().collect();
        let mut body = Vec::new();
        let mut bound = BTreeSet::new();
        for _ in 0..rng.gen_range(1..=2) {
            let (p, arity, _) = &lower[rng.gen_range(0..lower.len())];
            let args: Vec<Term> = (0..*arity)
                .map(|_| {
                    if rng.gen_bool(0.15) {
                        Term::Const(rng.gen_range(0..constants))
                    } else {
                        let v = vars[rng.gen_range(0..vars.len())];
                        bound.insert(v);
                        Term::var(v)
                    }
                })
                .collect();
            body.push(Literal::pos(Atom::new(p, args)));
        }
        if bound.is_empty() {
            // Keep the head range-restricted.
            continue;
        }
        let bound: Vec<&str> = bound.into_iter().collect();
        let pick = |rng: &mut ChaCha8Rng| Term::var(bound[rng.gen_range(0..bound.len())]);
        if rng.gen_bool(0.6) {
            let (p, arity, _) = &lower[rng.gen_range(0..lower.len())];
            let args = (0..*arity).map(|_| pick(&mut rng)).collect();
            body.push(Literal::neg(Atom::new(p, args)));
        }
        let head = Atom::new(&head_pred, (0..head_arity).map(|_| pick(&mut rng)).collect());
        rules.push(Clause { head: Some(head), body, provenance: 0 });
    }
    Program { constants, predicates, facts: facts.into_iter().collect(), rules }
}

fn ground_term(t: &Term, binding: &BTreeMap<String, usize>) -> usize {
    match t {
        Term::Const(c) => *c,
        Term::Var(v, _) => binding[v],
        other => panic!("unexpected term {other}"),
    }
}

fn rule_vars(rule: &Clause) -> Vec<String> {
    let mut vars = BTreeSet::new();
    for l in &rule.body {
        for t in &l.atom.args {
            if let Term::Var(v, _) = t {
                vars.insert(v.clone());
            }
        }
    }
    vars.into_iter().collect()
}

/// Perfect model by bottom-up evaluation stratum by stratum, trying every
/// assignment of constants to each rule's variables.
pub fn minimal_model(program: &Program) -> BTreeSet<GroundAtom> {
    let mut model: BTreeSet<GroundAtom> = program.facts.iter().cloned().collect();
    let stratum_of: BTreeMap<&str, usize> = program.predicates.iter().map(|(p, _, s)| (p.as_str(), *s)).collect();
    let top = program.predicates.iter().map(|p| p.2).max().unwrap_or(0);
    for stratum in 0..=top {
        let rules: Vec<&Clause> = program
            .rules
            .iter()
            .filter(|r| stratum_of[r.head.as_ref().unwrap().pred.as_str()] == stratum)
            .collect();
        loop {
            let mut added = false;
            for rule in &rules {
                let vars = rule_vars(rule);
                for values in tuples(program.constants, vars.len()) {
                    let binding: BTreeMap<String, usize> = vars.iter().cloned().zip(values).collect();
                    let holds = rule.body.iter().all(|l| {
                        let g = (l.atom.pred.clone(), l.atom.args.iter().map(|t| ground_term(t, &binding)).collect());
                        model.contains(&g) == l.positive
                    });
                    if holds {
                        let h = rule.head.as_ref().unwrap();
                        let g = (h.pred.clone(), h.args.iter().map(|t| ground_term(t, &binding)).collect());
                        added |= model.insert(g);
                    }
                }
            }
            if !added {
                break;
            }
        }
    }
    model
}

/// The extra ground facts a two-object world can add to a one-customer
/// session: each object may be a card, a code, and entered by the customer.
pub fn two_object_facts() -> Vec<GroundAtom> {
    let mut out = Vec::new();
    for object in [1, 2] {
        out.push(("card".to_string(), vec![object]));
        out.push(("code".to_string(), vec![object]));
        out.push(("enter".to_string(), vec![0, object]));
    }
    out
}

/// Whether a world satisfies "the customer enters no card and no code".
pub fn enters_nothing_listed(world: &BTreeSet<GroundAtom>) -> bool {
    ![1, 2].iter().any(|&o| {
        let listed = world.contains(&("card".to_string(), vec![o])) || world.contains(&("code".to_string(), vec![o]));
        listed && world.contains(&("enter".to_string(), vec![0, o]))
    })
}

pub fn ground(atom: &GroundAtom) -> Atom {
    Atom::new(&atom.0, atom.1.iter().map(|&c| Term::Const(c)).collect())
}
