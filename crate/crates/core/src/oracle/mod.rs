//! A brute-force reference for checking translations on small inputs:
//! grounding, stable models, tightness, and evaluation of formulas over
//! finite domains.

mod correspondence;
mod evaluate;
mod generate;
mod ground;
mod reader;
mod stable;

use {
    crate::{
        formula::{Formula, Predicate, Term},
        program::{BodyLiteral, Program, ProgramTerm},
        translation::Value,
    },
    std::{
        collections::BTreeSet,
        fmt::{self, Display, Formatter},
    },
    thiserror::Error,
};

pub use {
    correspondence::{check_correspondence, Verdict},
    evaluate::{evaluate, formula_models},
    generate::random_tight_program,
    ground::{find_cycle, ground, is_tight, GroundHead, GroundProgram, GroundRule},
    reader::{read_annotation, read_formula, read_output, ReadError},
    stable::stable_models,
};

/// Ceiling on the number of atoms whose truth values are enumerated.
pub const GUESS_BUDGET: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundAtom {
    pub predicate: String,
    pub arguments: Vec<Value>,
}

impl GroundAtom {
    pub fn new(predicate: impl Into<String>, arguments: Vec<Value>) -> Self {
        GroundAtom {
            predicate: predicate.into(),
            arguments,
        }
    }

    pub fn predicate(&self) -> Predicate {
        Predicate::new(self.predicate.clone(), self.arguments.len())
    }
}

impl Display for GroundAtom {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.predicate)?;
        if !self.arguments.is_empty() {
            let arguments: Vec<String> = self.arguments.iter().map(ToString::to_string).collect();
            write!(f, "({})", arguments.join(", "))?;
        }
        Ok(())
    }
}

pub type Interpretation = BTreeSet<GroundAtom>;

pub fn format_interpretation(interpretation: &Interpretation) -> String {
    let atoms: Vec<String> = interpretation.iter().map(ToString::to_string).collect();
    format!("{{{}}}", atoms.join(", "))
}

/// The values general variables range over. Integer variables range over
/// the integer window, which covers every integer in the domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Domain {
    values: BTreeSet<Value>,
    window: (i64, i64),
}

impl Domain {
    pub fn new(values: impl IntoIterator<Item = Value>, window: (i64, i64)) -> Self {
        let mut values: BTreeSet<Value> = values.into_iter().collect();
        let (mut lo, mut hi) = window;
        for n in values.iter().filter_map(Value::as_integer) {
            lo = lo.min(n);
            hi = hi.max(n);
        }
        values.extend((lo..=hi).map(Value::Integer));
        Domain {
            values,
            window: (lo, hi),
        }
    }

    pub fn symbols<S: Into<String>>(
        symbols: impl IntoIterator<Item = S>,
        window: (i64, i64),
    ) -> Self {
        Domain::new(symbols.into_iter().map(|s| Value::Symbol(s.into())), window)
    }

    /// The symbolic constants of the program and of `external_input`, with
    /// the integers of both, widened by 2 on each side.
    pub fn for_program(program: &Program, external_input: &Interpretation) -> Self {
        let mut integers = BTreeSet::new();
        for rule in &program.rules {
            let mut terms: Vec<&ProgramTerm> = Vec::new();
            if let Some(atom) = rule.head.atom() {
                terms.extend(&atom.arguments);
            }
            for literal in &rule.body {
                match literal {
                    BodyLiteral::Positive(atom) | BodyLiteral::Negative(atom) => {
                        terms.extend(&atom.arguments)
                    }
                    BodyLiteral::Comparison { lhs, rhs, .. } => terms.extend([lhs, rhs]),
                }
            }
            terms
                .into_iter()
                .for_each(|t| program_integers(t, &mut integers));
        }
        let mut values: BTreeSet<Value> =
            program.symbols().into_iter().map(Value::Symbol).collect();
        for atom in external_input {
            for value in &atom.arguments {
                match value {
                    Value::Integer(n) => {
                        integers.insert(*n);
                    }
                    Value::Symbol(_) => {
                        values.insert(value.clone());
                    }
                }
            }
        }
        let window = match (integers.first(), integers.last()) {
            (Some(lo), Some(hi)) => (lo.saturating_sub(2), hi.saturating_add(2)),
            _ => (0, 0),
        };
        Domain::new(values, window)
    }

    pub fn values(&self) -> &BTreeSet<Value> {
        &self.values
    }

    pub fn window(&self) -> (i64, i64) {
        self.window
    }

    pub fn integers(&self) -> impl Iterator<Item = Value> {
        (self.window.0..=self.window.1).map(Value::Integer)
    }

    pub fn contains(&self, value: &Value) -> bool {
        self.values.contains(value)
    }
}

fn program_integers(term: &ProgramTerm, out: &mut BTreeSet<i64>) {
    match term {
        ProgramTerm::Integer(n) => {
            out.insert(*n);
        }
        ProgramTerm::Binary { lhs, rhs, .. } => {
            program_integers(lhs, out);
            program_integers(rhs, out);
        }
        _ => (),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{count} atoms would have to be enumerated, more than the budget of {budget}")]
    Budget { count: usize, budget: usize },
}

/// Replaces the symbolic constant `name` by `value` throughout `formula`.
pub fn instantiate_constant(formula: &Formula, name: &str, value: i64) -> Formula {
    fn term(t: &Term, name: &str, value: i64) -> Term {
        match t {
            Term::Symbol(s) if s == name => Term::Integer(value),
            Term::Arith { op, lhs, rhs } => Term::Arith {
                op: *op,
                lhs: Box::new(term(lhs, name, value)),
                rhs: Box::new(term(rhs, name, value)),
            },
            Term::Set { op, lhs, rhs } => Term::Set {
                op: *op,
                lhs: Box::new(term(lhs, name, value)),
                rhs: Box::new(term(rhs, name, value)),
            },
            other => other.clone(),
        }
    }
    let recurse = |f: &Formula| instantiate_constant(f, name, value);
    match formula {
        Formula::True | Formula::False => formula.clone(),
        Formula::Atom(atom) => Formula::atom(
            atom.predicate.clone(),
            atom.arguments
                .iter()
                .map(|t| term(t, name, value))
                .collect(),
        ),
        Formula::Comparison { relation, lhs, rhs } => {
            Formula::comparison(*relation, term(lhs, name, value), term(rhs, name, value))
        }
        Formula::Membership { element, set } => {
            Formula::membership(term(element, name, value), term(set, name, value))
        }
        Formula::Not(f) => Formula::Not(Box::new(recurse(f))),
        Formula::And(fs) => Formula::And(fs.iter().map(recurse).collect()),
        Formula::Or(fs) => Formula::Or(fs.iter().map(recurse).collect()),
        Formula::Implies(a, b) => Formula::Implies(Box::new(recurse(a)), Box::new(recurse(b))),
        Formula::Iff(a, b) => Formula::Iff(Box::new(recurse(a)), Box::new(recurse(b))),
        Formula::Forall(vs, f) => Formula::Forall(vs.clone(), Box::new(recurse(f))),
        Formula::Exists(vs, f) => Formula::Exists(vs.clone(), Box::new(recurse(f))),
    }
}
