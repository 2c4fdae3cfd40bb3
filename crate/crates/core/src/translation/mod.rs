//! Translation of rules into formulas.
//!
//! Each rule becomes a head descriptor plus a body formula whose free
//! variables are the head variables. Terms that may denote several values
//! (intervals, division, arithmetic over general variables) are bound to
//! fresh variables through membership atoms.

mod values;

use {
    crate::{
        formula::{ArithOp, Formula, Predicate, Sort, Term, Variable},
        program::{BinaryOperator, BodyLiteral, Head, ProgramTerm, Rule},
    },
    std::collections::BTreeMap,
};

pub use values::{apply_integer, term_values, values, Value, ValueSet};

/// Maps program variable names to formula variables.
pub type VariableMap = BTreeMap<String, Variable>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RuleHead {
    Definite {
        predicate: Predicate,
        variables: Vec<Variable>,
    },
    Choice {
        predicate: Predicate,
        variables: Vec<Variable>,
    },
    Constraint,
}

impl RuleHead {
    pub fn predicate(&self) -> Option<&Predicate> {
        match self {
            RuleHead::Definite { predicate, .. } | RuleHead::Choice { predicate, .. } => {
                Some(predicate)
            }
            RuleHead::Constraint => None,
        }
    }

    pub fn variables(&self) -> &[Variable] {
        match self {
            RuleHead::Definite { variables, .. } | RuleHead::Choice { variables, .. } => variables,
            RuleHead::Constraint => &[],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleFormula {
    pub head: RuleHead,
    pub body: Formula,
}

impl RuleFormula {
    /// The head atom over the head variables, if there is one.
    pub fn head_atom(&self) -> Option<Formula> {
        let predicate = self.head.predicate()?;
        Some(Formula::atom(
            predicate.name.clone(),
            self.head.variables().iter().map(Term::var).collect(),
        ))
    }

    /// The rule read as a sentence: `forall V (B -> H)` for basic rules,
    /// `forall V (H -> B)` for choice rules, `not B` for constraints.
    pub fn to_sentence(&self) -> Formula {
        let variables = self.head.variables().to_vec();
        match &self.head {
            RuleHead::Definite { .. } => Formula::forall(
                variables,
                Formula::implies(self.body.clone(), self.head_atom().unwrap()),
            ),
            RuleHead::Choice { .. } => Formula::forall(
                variables,
                Formula::implies(self.head_atom().unwrap(), self.body.clone()),
            ),
            RuleHead::Constraint => Formula::not(self.body.clone()),
        }
    }
}

fn arith_op(op: BinaryOperator) -> Option<ArithOp> {
    match op {
        BinaryOperator::Add => Some(ArithOp::Add),
        BinaryOperator::Subtract => Some(ArithOp::Subtract),
        BinaryOperator::Multiply => Some(ArithOp::Multiply),
        BinaryOperator::Divide | BinaryOperator::Interval => None,
    }
}

fn set_op(op: BinaryOperator) -> crate::formula::SetOp {
    use crate::formula::SetOp;
    match op {
        BinaryOperator::Add => SetOp::Add,
        BinaryOperator::Subtract => SetOp::Subtract,
        BinaryOperator::Multiply => SetOp::Multiply,
        BinaryOperator::Divide => SetOp::Divide,
        BinaryOperator::Interval => SetOp::Interval,
    }
}

fn variable(name: &str, map: &VariableMap) -> Variable {
    map.get(name)
        .unwrap_or_else(|| panic!("variable {name} is not mapped"))
        .clone()
}

/// The single-valued image of a term, if it has one.
fn image(term: &ProgramTerm, map: &VariableMap) -> Option<Term> {
    match term {
        ProgramTerm::Integer(n) => Some(Term::Integer(*n)),
        ProgramTerm::Symbol(s) => Some(Term::Symbol(s.clone())),
        ProgramTerm::Variable(name) => Some(Term::var(&variable(name, map))),
        ProgramTerm::Anonymous => None,
        ProgramTerm::Binary { op, lhs, rhs } => {
            let op = arith_op(*op)?;
            let (lhs, rhs) = (image(lhs, map)?, image(rhs, map)?);
            (lhs.is_integer_valued() && rhs.is_integer_valued()).then(|| Term::arith(op, lhs, rhs))
        }
    }
}

/// The image of a term as a set term, keeping single-valued subterms intact.
fn set_image(term: &ProgramTerm, map: &VariableMap) -> Term {
    if let Some(t) = image(term, map) {
        return t;
    }
    match term {
        ProgramTerm::Binary { op, lhs, rhs } => {
            Term::set(set_op(*op), set_image(lhs, map), set_image(rhs, map))
        }
        _ => unreachable!("atomic terms other than `_` have images"),
    }
}

/// A formula stating that `target` is one of the values of `term`.
pub fn translate_term(term: &ProgramTerm, target: &Variable, map: &VariableMap) -> Formula {
    let target = Term::var(target);
    match image(term, map) {
        Some(t) => Formula::equal(target, t),
        None => Formula::membership(target, set_image(term, map)),
    }
}

/// Images of atom arguments, introducing fresh variables (and their
/// bindings) for anonymous and multi-valued arguments.
fn arguments(
    terms: &[ProgramTerm],
    map: &VariableMap,
    locals: &mut Vec<Variable>,
    bindings: &mut Vec<Formula>,
) -> Vec<Term> {
    terms
        .iter()
        .map(|term| match term {
            ProgramTerm::Anonymous => {
                let local = Variable::fresh("U", Sort::General);
                locals.push(local.clone());
                Term::var(&local)
            }
            _ => image(term, map).unwrap_or_else(|| {
                let local = Variable::fresh("Z", Sort::General);
                bindings.push(translate_term(term, &local, map));
                locals.push(local.clone());
                Term::var(&local)
            }),
        })
        .collect()
}

pub fn translate_literal(literal: &BodyLiteral, map: &VariableMap) -> Formula {
    let mut locals = Vec::new();
    let mut bindings = Vec::new();
    let core = match literal {
        BodyLiteral::Positive(atom) | BodyLiteral::Negative(atom) => {
            let args = arguments(&atom.arguments, map, &mut locals, &mut bindings);
            let formula = Formula::atom(atom.predicate.clone(), args);
            match literal {
                BodyLiteral::Negative(_) => Formula::not(formula),
                _ => formula,
            }
        }
        BodyLiteral::Comparison { op, lhs, rhs } => {
            if *op == crate::program::ComparisonOperator::Equal {
                match (image(lhs, map), image(rhs, map)) {
                    (Some(l), None) => return Formula::membership(l, set_image(rhs, map)),
                    (None, Some(r)) => return Formula::membership(r, set_image(lhs, map)),
                    _ => (),
                }
            }
            let args = arguments(&[lhs.clone(), rhs.clone()], map, &mut locals, &mut bindings);
            let [l, r]: [Term; 2] = args.try_into().expect("two arguments");
            Formula::comparison(*op, l, r)
        }
    };
    bindings.push(core);
    Formula::exists(locals, Formula::conjoin(bindings))
}

pub fn translate_rule(rule: &Rule) -> RuleFormula {
    let mut map = VariableMap::new();
    let head_atom = rule.head.atom();
    let head_variables: Vec<Variable> = head_atom
        .map(|atom| {
            atom.arguments
                .iter()
                .map(|_| Variable::fresh("V", Sort::General))
                .collect()
        })
        .unwrap_or_default();

    let mut pending = Vec::new();
    if let Some(atom) = head_atom {
        for (argument, head_variable) in atom.arguments.iter().zip(&head_variables) {
            match argument {
                ProgramTerm::Variable(name) if !map.contains_key(name) => {
                    map.insert(name.clone(), head_variable.clone());
                }
                _ => pending.push((argument, head_variable)),
            }
        }
    }

    let mut locals = Vec::new();
    for name in rule.variables() {
        if let std::collections::btree_map::Entry::Vacant(entry) = map.entry(name) {
            let local = Variable::fresh(entry.key(), Sort::General);
            entry.insert(local.clone());
            locals.push(local);
        }
    }

    let conjuncts = pending
        .into_iter()
        .map(|(term, target)| translate_term(term, target, &map))
        .chain(rule.body.iter().map(|l| translate_literal(l, &map)));
    let body = Formula::exists(locals, Formula::conjoin(conjuncts));

    let head = match &rule.head {
        Head::Basic(atom) => RuleHead::Definite {
            predicate: atom.predicate(),
            variables: head_variables,
        },
        Head::Choice(atom) => RuleHead::Choice {
            predicate: atom.predicate(),
            variables: head_variables,
        },
        Head::Empty => RuleHead::Constraint,
    };
    RuleFormula { head, body }
}
