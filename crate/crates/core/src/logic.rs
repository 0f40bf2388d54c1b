//! Terms, atoms and clauses of the knowledge base, with their text form:
//!
//! ```text
//! fact(customer(0)).
//! fact((reject(3, 1):- neg(valid(2)))).
//! ```

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    /// Skolem constant numbered by the referent it replaces.
    Const(usize),
    Name(String),
    Num(String),
    /// Variable name and renaming scope (0 for clause text and queries).
    Var(String, u32),
    /// Skolem function `sk(id, args)` for referents introduced in a
    /// conditional's consequent.
    Fn(usize, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string(), 0)
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(..) => false,
            Term::Fn(_, args) => args.iter().all(Term::is_ground),
            _ => true,
        }
    }

    /// Referent behind a skolem term.
    pub fn skolem_id(&self) -> Option<usize> {
        match self {
            Term::Const(i) | Term::Fn(i, _) => Some(*i),
            _ => None,
        }
    }

    fn collect_vars(&self, out: &mut Vec<(String, u32)>) {
        match self {
            Term::Var(n, s) => {
                if !out.iter().any(|(m, t)| m == n && t == s) {
                    out.push((n.clone(), *s));
                }
            }
            Term::Fn(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
            _ => {}
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Const(i) => write!(f, "{i}"),
            Term::Name(n) | Term::Num(n) => f.write_str(n),
            Term::Var(n, 0) => f.write_str(n),
            Term::Var(n, s) => write!(f, "{n}_{s}"),
            Term::Fn(i, args) => {
                write!(f, "sk({i}")?;
                for a in args {
                    write!(f, ", {a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub pred: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(pred: &str, args: Vec<Term>) -> Atom {
        Atom { pred: pred.to_string(), args }
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(Term::is_ground)
    }

    pub fn vars(&self) -> Vec<(String, u32)> {
        let mut out = Vec::new();
        self.args.iter().for_each(|a| a.collect_vars(&mut out));
        out
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.pred)?;
        for (i, a) in self.args.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Literal {
    pub positive: bool,
    pub atom: Atom,
}

impl Literal {
    pub fn pos(atom: Atom) -> Literal {
        Literal { positive: true, atom }
    }

    pub fn neg(atom: Atom) -> Literal {
        Literal { positive: false, atom }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "{}", self.atom)
        } else {
            write!(f, "neg({})", self.atom)
        }
    }
}

/// A fact, a rule, or (with no head) a denial: the body must not hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    pub head: Option<Atom>,
    pub body: Vec<Literal>,
    /// Index of the sentence the clause came from.
    pub provenance: usize,
}

impl Clause {
    pub fn fact(head: Atom, provenance: usize) -> Clause {
        Clause { head: Some(head), body: Vec::new(), provenance }
    }

    pub fn is_denial(&self) -> bool {
        self.head.is_none()
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head = self.head.as_ref().map_or_else(|| "false".to_string(), Atom::to_string);
        if self.body.is_empty() {
            return write!(f, "fact({head}).");
        }
        let body: Vec<String> = self.body.iter().map(Literal::to_string).collect();
        write!(f, "fact(({head}:- {})).", body.join(", "))
    }
}

/// One clause per line in the given order.
pub fn render_clauses(clauses: &[Clause]) -> String {
    clauses.iter().map(|c| format!("{c}\n")).collect()
}
