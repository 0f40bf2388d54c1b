use std::collections::{BTreeMap, HashMap, HashSet};

use super::{parse_assertion, Assertion, ExecError, OracleMessage, Trace};
use crate::discourse::{Arg, Atom, AtomKind, BoxId, Condition, Drs, RefId, TOP};
use crate::lexicon::{FormSlot, Gender, Lexicon, WordClass};

pub(super) enum Outcome {
    Finished(Trace),
    Suspended { request: OracleMessage, messages: Vec<OracleMessage> },
    Failed { error: ExecError },
}

enum Halt {
    Suspended(OracleMessage),
    Error(ExecError),
}

impl From<ExecError> for Halt {
    fn from(e: ExecError) -> Halt {
        Halt::Error(e)
    }
}

type Binding = HashMap<RefId, RefId>;
type Fact = (String, Vec<Arg>);

struct Run<'a> {
    drs: &'a Drs,
    lex: &'a Lexicon,
    oracle: &'a mut dyn FnMut(&OracleMessage) -> Option<String>,
    definitions: Vec<(Assertion, bool)>,
    /// Instance name of each individual.
    names: BTreeMap<RefId, String>,
    /// Sort each instance name was introduced with.
    sorts: HashMap<String, String>,
    /// Asserted truth of `adjective(name)`.
    truth: HashMap<(String, String), bool>,
    /// Facts established so far: stated conditions and events that happened.
    facts: HashSet<Fact>,
    /// Individuals in order of introduction, candidates for antecedents.
    individuals: Vec<RefId>,
    messages: Vec<OracleMessage>,
}

pub(super) fn run(
    drs: &Drs,
    lex: &Lexicon,
    definitions: &[Assertion],
    oracle: &mut dyn FnMut(&OracleMessage) -> Option<String>,
) -> Outcome {
    let mut r = Run {
        drs,
        lex,
        oracle,
        definitions: definitions.iter().map(|d| (d.clone(), false)).collect(),
        names: BTreeMap::new(),
        sorts: HashMap::new(),
        truth: HashMap::new(),
        facts: HashSet::new(),
        individuals: Vec::new(),
        messages: Vec::new(),
    };
    match r.perform(TOP, &Binding::new()) {
        Ok(()) => Outcome::Finished(Trace {
            messages: r.messages,
            unused: r.definitions.into_iter().filter(|(_, used)| !used).map(|(a, _)| a).collect(),
        }),
        Err(Halt::Suspended(request)) => Outcome::Suspended { request, messages: r.messages },
        Err(Halt::Error(error)) => Outcome::Failed { error },
    }
}

impl<'a> Run<'a> {
    fn sort_of(&self, r: RefId) -> String {
        let rf = self.drs.referent(r);
        match &rf.name {
            Some(n) => n.clone(),
            None => rf.sort.clone(),
        }
    }

    /// Gets an assertion answering `request` from the definitions or the oracle.
    fn ask(&mut self, request: OracleMessage) -> Result<Assertion, Halt> {
        let matches = |a: &Assertion| match (&request, a) {
            (OracleMessage::InstantiationRequest { sort }, Assertion::Instance { sort: s, .. }) => s == sort,
            (OracleMessage::TruthRequest { name, adjective }, Assertion::Truth { name: n, adjective: j, .. }) => {
                n == name && j == adjective
            }
            _ => false,
        };
        if let Some(slot) = self.definitions.iter_mut().find(|(a, used)| !used && matches(a)) {
            slot.1 = true;
            let a = slot.0.clone();
            self.messages.push(OracleMessage::UserAssertion { text: a.to_string() });
            return Ok(a);
        }
        let Some(reply) = (self.oracle)(&request) else {
            return Err(Halt::Suspended(request));
        };
        let a = parse_assertion(&reply, self.lex)?;
        if !matches(&a) {
            return Err(Halt::Error(ExecError::MalformedAssertion {
                text: reply,
                reason: match &request {
                    OracleMessage::InstantiationRequest { sort } => {
                        format!("expected `<name> is {} {sort}`", crate::discourse::article(sort))
                    }
                    OracleMessage::TruthRequest { name, adjective } => {
                        format!("expected `{name} is [not] {adjective}`")
                    }
                    _ => unreachable!("only requests are asked"),
                },
                line: None,
            }));
        }
        self.messages.push(OracleMessage::UserAssertion { text: a.to_string() });
        Ok(a)
    }

    fn group_members(&self, g: RefId) -> Option<Vec<RefId>> {
        (0..self.drs.box_count()).find_map(|b| {
            self.drs.get(b).conditions.iter().find_map(|e| match &e.condition {
                Condition::Group { group, members } if *group == g => Some(members.clone()),
                _ => None,
            })
        })
    }

    fn instantiate(&mut self, r: RefId) -> Result<(), Halt> {
        if self.names.contains_key(&r) {
            return Ok(());
        }
        if let Some(members) = self.group_members(r) {
            for m in members {
                self.instantiate(m)?;
            }
            return Ok(());
        }
        let rf = self.drs.referent(r);
        if let (Some(n), Gender::Masc | Gender::Fem) = (&rf.name, rf.gender) {
            // Named persons are individuals already.
            self.names.insert(r, n.clone());
            return Ok(());
        }
        let sort = self.sort_of(r);
        let Assertion::Instance { name, sort } = self.ask(OracleMessage::InstantiationRequest { sort })? else {
            unreachable!("instantiation requests are answered by instance assertions")
        };
        if let Some(existing) = self.sorts.get(&name) {
            if *existing != sort {
                return Err(Halt::Error(ExecError::InconsistentAssertion {
                    name,
                    existing: existing.clone(),
                    asserted: sort,
                }));
            }
        }
        self.sorts.insert(name.clone(), sort);
        self.names.insert(r, name);
        Ok(())
    }

    fn name(&self, r: RefId) -> String {
        match self.group_members(r) {
            Some(ms) => ms.iter().map(|m| self.name(*m)).collect::<Vec<_>>().join(" and "),
            None => self.names.get(&r).cloned().unwrap_or_else(|| self.drs.referent(r).description()),
        }
    }

    fn bind(arg: &Arg, b: &Binding) -> Arg {
        match arg {
            Arg::Ref(r) => Arg::Ref(*b.get(r).unwrap_or(r)),
            other => other.clone(),
        }
    }

    fn fact(a: &Atom, b: &Binding) -> Fact {
        (a.pred.clone(), a.args.iter().map(|x| Self::bind(x, b)).collect())
    }

    fn subject_text(&self, arg: &Arg) -> String {
        match arg {
            Arg::Ref(r) => self.name(*r),
            Arg::Name(n) | Arg::Num(n) => n.clone(),
        }
    }

    fn object_text(&self, arg: &Arg) -> String {
        let name = self.subject_text(arg);
        let person = match arg {
            Arg::Ref(r) => {
                let rf = self.drs.referent(*r);
                rf.name.is_some() && matches!(rf.gender, Gender::Masc | Gender::Fem)
            }
            _ => true,
        };
        if person || name.chars().all(|c| c.is_ascii_digit()) || self.group_members(Self::ref_of(arg)).is_some() {
            name
        } else {
            format!("the {name}")
        }
    }

    fn ref_of(arg: &Arg) -> RefId {
        match arg {
            Arg::Ref(r) => *r,
            _ => usize::MAX,
        }
    }

    fn verb_form(&self, pred: &str, plural: bool) -> String {
        let lemma = pred.replace('_', " ");
        let slot = if plural { FormSlot::ThirdPl } else { FormSlot::ThirdSg };
        match self.lex.entry(&lemma, WordClass::Verb).and_then(|e| e.form(slot)) {
            Some(f) => f.to_string(),
            None if plural => lemma,
            None => format!("{lemma}s"),
        }
    }

    /// Prints the event of a verb atom with the prepositional atoms that
    /// extend it, after naming every participant.
    fn event(&mut self, verb: &Atom, pps: &[&Atom], b: &Binding) -> Result<(), Halt> {
        let (pred, args) = Self::fact(verb, b);
        let pp_facts: Vec<Fact> = pps.iter().map(|p| Self::fact(p, b)).collect();
        for arg in args.iter().chain(pp_facts.iter().filter_map(|(_, a)| a.last())) {
            if let Arg::Ref(r) = arg {
                self.instantiate(*r)?;
            }
        }
        let plural = matches!(&args[0], Arg::Ref(r) if self.group_members(*r).is_some());
        let mut text = format!("{} {}", self.subject_text(&args[0]), self.verb_form(&pred, plural));
        if let Some(o) = args.get(1) {
            text = format!("{text} {}", self.object_text(o));
        }
        for (p, a) in &pp_facts {
            let prep = p.strip_prefix(&format!("{pred}_")).unwrap_or(p).replace('_', " ");
            text = format!("{text} {prep} {}", self.object_text(a.last().expect("prepositional object")));
        }
        self.messages.push(OracleMessage::EventTrace { text });
        self.facts.insert((pred, args));
        self.facts.extend(pp_facts);
        Ok(())
    }

    /// Carries out the conditions of a box under a binding.
    fn perform(&mut self, bx: BoxId, b: &Binding) -> Result<(), Halt> {
        let conds: Vec<Condition> = self.drs.get(bx).conditions.iter().map(|e| e.condition.clone()).collect();
        let mut b = b.clone();
        for r in &self.drs.get(bx).referents {
            b.entry(*r).or_insert(*r);
        }
        let mut folded = HashSet::new();
        for (i, c) in conds.iter().enumerate() {
            if folded.contains(&i) {
                continue;
            }
            match c {
                Condition::Atom(a) if matches!(a.kind, AtomKind::Verb | AtomKind::Prep) => {
                    let mut pps = Vec::new();
                    if a.kind == AtomKind::Verb {
                        let prefix = format!("{}_", a.pred);
                        for (j, later) in conds.iter().enumerate().skip(i + 1) {
                            let Condition::Atom(l) = later else { break };
                            match l.kind {
                                AtomKind::Verb => break,
                                AtomKind::Prep if l.pred.starts_with(&prefix) && l.args.starts_with(&a.args) => {
                                    pps.push(l);
                                    folded.insert(j);
                                }
                                AtomKind::Prep => {}
                                _ => {
                                    self.state(l, &b);
                                    folded.insert(j);
                                }
                            }
                        }
                    }
                    self.event(a, &pps, &b)?;
                }
                Condition::Atom(a) => self.state(a, &b),
                Condition::Group { group, members } => {
                    for m in members {
                        self.facts.insert(("member".into(), vec![Arg::Ref(b[m]), Arg::Ref(b[group])]));
                    }
                }
                Condition::Implies(ante, cons) => {
                    for binding in self.satisfy(*ante, &b)? {
                        self.perform(*cons, &binding)?;
                    }
                }
                // Denials and disjunctions constrain the situation but cause nothing.
                Condition::Not(_) | Condition::Or { .. } => {}
            }
        }
        Ok(())
    }

    /// Records a stated non-event condition.
    fn state(&mut self, a: &Atom, b: &Binding) {
        let f = Self::fact(a, b);
        if matches!(a.kind, AtomKind::Noun | AtomKind::Named) {
            if let Some(Arg::Ref(r)) = f.1.first() {
                if !self.individuals.contains(r) {
                    self.individuals.push(*r);
                }
            }
        }
        self.facts.insert(f);
    }

    /// All extensions of `b` over the referents of `bx` under which its
    /// conditions hold.
    fn satisfy(&mut self, bx: BoxId, b: &Binding) -> Result<Vec<Binding>, Halt> {
        let refs = self.drs.get(bx).referents.clone();
        let mut out = Vec::new();
        let mut candidates = vec![b.clone()];
        for r in refs {
            candidates = candidates
                .into_iter()
                .flat_map(|c| {
                    self.individuals.iter().map(move |i| {
                        let mut c = c.clone();
                        c.insert(r, *i);
                        c
                    })
                })
                .collect();
        }
        for c in candidates {
            if self.holds(bx, &c)? {
                out.push(c);
            }
        }
        Ok(out)
    }

    /// Facts first, then properties (which may need the oracle), then
    /// negations and disjunctions.
    fn holds(&mut self, bx: BoxId, b: &Binding) -> Result<bool, Halt> {
        let conds: Vec<Condition> = self.drs.get(bx).conditions.iter().map(|e| e.condition.clone()).collect();
        for c in &conds {
            match c {
                Condition::Atom(a) if !is_property(a) => {
                    if !self.facts.contains(&Self::fact(a, b)) {
                        return Ok(false);
                    }
                }
                Condition::Group { group, members } => {
                    for m in members {
                        let f = ("member".to_string(), vec![Self::bind(&Arg::Ref(*m), b), Self::bind(&Arg::Ref(*group), b)]);
                        if !self.facts.contains(&f) {
                            return Ok(false);
                        }
                    }
                }
                _ => {}
            }
        }
        for c in &conds {
            if let Condition::Atom(a) = c {
                if is_property(a) && !self.property(a, b)? {
                    return Ok(false);
                }
            }
        }
        for c in &conds {
            let ok = match c {
                Condition::Not(n) => self.satisfy(*n, b)?.is_empty(),
                Condition::Or { disjuncts, exclusive } => {
                    let mut n = 0;
                    for d in disjuncts {
                        if !self.satisfy(*d, b)?.is_empty() {
                            n += 1;
                        }
                    }
                    if *exclusive { n == 1 } else { n >= 1 }
                }
                Condition::Implies(a, k) => {
                    let mut ok = true;
                    for binding in self.satisfy(*a, b)? {
                        if self.satisfy(*k, &binding)?.is_empty() {
                            ok = false;
                        }
                    }
                    ok
                }
                _ => true,
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Truth of a one-place adjective: stated facts, then earlier
    /// assertions, then the oracle.
    fn property(&mut self, a: &Atom, b: &Binding) -> Result<bool, Halt> {
        let f = Self::fact(a, b);
        if self.facts.contains(&f) {
            return Ok(true);
        }
        let Some(Arg::Ref(r)) = f.1.first().cloned() else { return Ok(false) };
        self.instantiate(r)?;
        let name = self.names[&r].clone();
        if let Some(v) = self.truth.get(&(a.pred.clone(), name.clone())) {
            return Ok(*v);
        }
        let request = OracleMessage::TruthRequest { name: name.clone(), adjective: a.pred.clone() };
        let Assertion::Truth { positive, .. } = self.ask(request)? else {
            unreachable!("truth requests are answered by truth assertions")
        };
        self.truth.insert((a.pred.clone(), name), positive);
        Ok(positive)
    }
}

fn is_property(a: &Atom) -> bool {
    a.kind == AtomKind::Adjective && a.args.len() == 1
}
