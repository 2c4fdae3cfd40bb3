//! Two-sorted first-order formulas.
//!
//! Variables are either general (ranging over all precomputed terms) or
//! integer-sorted. Multi-valued terms (intervals, division, and arithmetic
//! over general variables) are confined to the right-hand side of a
//! membership atom; everywhere else terms denote exactly one value.

mod format;

use std::{
    collections::{BTreeMap, BTreeSet},
    fmt::{self, Display, Formatter},
    sync::atomic::{AtomicUsize, Ordering},
};

pub use crate::program::{ComparisonOperator as Relation, Predicate};
pub use format::{format_formula, Printer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sort {
    General,
    Integer,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable {
    pub name: String,
    pub sort: Sort,
}

static FRESH: AtomicUsize = AtomicUsize::new(0);

impl Variable {
    pub fn new(name: impl Into<String>, sort: Sort) -> Self {
        Variable {
            name: name.into(),
            sort,
        }
    }

    /// A variable whose name is distinct from every variable created so far.
    /// Fresh names contain `#`, which never occurs in user-written names.
    pub fn fresh(hint: &str, sort: Sort) -> Self {
        let id = FRESH.fetch_add(1, Ordering::Relaxed);
        let base = hint.split('#').next().unwrap_or(hint);
        Variable::new(format!("{base}#{id}"), sort)
    }

    pub fn general(name: impl Into<String>) -> Self {
        Variable::new(name, Sort::General)
    }

    pub fn integer(name: impl Into<String>) -> Self {
        Variable::new(name, Sort::Integer)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArithOp {
    Add,
    Subtract,
    Multiply,
}

impl ArithOp {
    pub fn symbol(self) -> &'static str {
        match self {
            ArithOp::Add => "+",
            ArithOp::Subtract => "-",
            ArithOp::Multiply => "*",
        }
    }

    pub fn apply(self, lhs: i64, rhs: i64) -> Option<i64> {
        match self {
            ArithOp::Add => lhs.checked_add(rhs),
            ArithOp::Subtract => lhs.checked_sub(rhs),
            ArithOp::Multiply => lhs.checked_mul(rhs),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SetOp {
    Interval,
    Divide,
    Add,
    Subtract,
    Multiply,
}

impl SetOp {
    pub fn symbol(self) -> &'static str {
        match self {
            SetOp::Interval => "..",
            SetOp::Divide => "/",
            SetOp::Add => "+",
            SetOp::Subtract => "-",
            SetOp::Multiply => "*",
        }
    }

    pub fn as_arith(self) -> Option<ArithOp> {
        match self {
            SetOp::Add => Some(ArithOp::Add),
            SetOp::Subtract => Some(ArithOp::Subtract),
            SetOp::Multiply => Some(ArithOp::Multiply),
            SetOp::Interval | SetOp::Divide => None,
        }
    }
}

impl From<ArithOp> for SetOp {
    fn from(op: ArithOp) -> Self {
        match op {
            ArithOp::Add => SetOp::Add,
            ArithOp::Subtract => SetOp::Subtract,
            ArithOp::Multiply => SetOp::Multiply,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Variable(Variable),
    Symbol(String),
    Integer(i64),
    /// Single-valued integer arithmetic over integer variables and numerals.
    Arith {
        op: ArithOp,
        lhs: Box<Term>,
        rhs: Box<Term>,
    },
    /// A term that may denote zero or several values.
    Set {
        op: SetOp,
        lhs: Box<Term>,
        rhs: Box<Term>,
    },
}

impl Term {
    pub fn var(variable: &Variable) -> Self {
        Term::Variable(variable.clone())
    }

    pub fn arith(op: ArithOp, lhs: Term, rhs: Term) -> Self {
        Term::Arith {
            op,
            lhs: Box::new(lhs),
            rhs: Box::new(rhs),
        }
    }

    pub fn set(op: SetOp, lhs: Term, rhs: Term) -> Self {
        Term::Set {
            op,
            lhs: Box::new(lhs),
            rhs: Box::new(rhs),
        }
    }

    /// Whether the term is guaranteed to denote exactly one integer.
    pub fn is_integer_valued(&self) -> bool {
        match self {
            Term::Integer(_) | Term::Arith { .. } => true,
            Term::Variable(v) => v.sort == Sort::Integer,
            Term::Symbol(_) | Term::Set { .. } => false,
        }
    }

    pub fn is_single_valued(&self) -> bool {
        match self {
            Term::Set { .. } => false,
            Term::Arith { lhs, rhs, .. } => lhs.is_single_valued() && rhs.is_single_valued(),
            _ => true,
        }
    }

    pub fn contains_set(&self) -> bool {
        match self {
            Term::Set { .. } => true,
            Term::Arith { lhs, rhs, .. } => lhs.contains_set() || rhs.contains_set(),
            _ => false,
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Variable(_) => false,
            Term::Arith { lhs, rhs, .. } | Term::Set { lhs, rhs, .. } => {
                lhs.is_ground() && rhs.is_ground()
            }
            Term::Symbol(_) | Term::Integer(_) => true,
        }
    }

    pub fn contains_symbol(&self) -> bool {
        match self {
            Term::Symbol(_) => true,
            Term::Arith { lhs, rhs, .. } | Term::Set { lhs, rhs, .. } => {
                lhs.contains_symbol() || rhs.contains_symbol()
            }
            Term::Variable(_) | Term::Integer(_) => false,
        }
    }

    pub fn variables(&self, out: &mut BTreeSet<Variable>) {
        match self {
            Term::Variable(v) => {
                out.insert(v.clone());
            }
            Term::Arith { lhs, rhs, .. } | Term::Set { lhs, rhs, .. } => {
                lhs.variables(out);
                rhs.variables(out);
            }
            Term::Symbol(_) | Term::Integer(_) => (),
        }
    }

    pub fn contains_variable(&self, variable: &Variable) -> bool {
        match self {
            Term::Variable(v) => v == variable,
            Term::Arith { lhs, rhs, .. } | Term::Set { lhs, rhs, .. } => {
                lhs.contains_variable(variable) || rhs.contains_variable(variable)
            }
            Term::Symbol(_) | Term::Integer(_) => false,
        }
    }

    fn substitute(&self, map: &BTreeMap<Variable, Term>) -> Term {
        match self {
            Term::Variable(v) => map.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::Arith { op, lhs, rhs } => {
                Term::arith(*op, lhs.substitute(map), rhs.substitute(map))
            }
            Term::Set { op, lhs, rhs } => Term::set(*op, lhs.substitute(map), rhs.substitute(map)),
            Term::Symbol(_) | Term::Integer(_) => self.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Atom {
    pub predicate: String,
    pub arguments: Vec<Term>,
}

impl Atom {
    pub fn new(predicate: impl Into<String>, arguments: Vec<Term>) -> Self {
        Atom {
            predicate: predicate.into(),
            arguments,
        }
    }

    pub fn predicate(&self) -> Predicate {
        Predicate::new(self.predicate.clone(), self.arguments.len())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Atom(Atom),
    Comparison {
        relation: Relation,
        lhs: Term,
        rhs: Term,
    },
    Membership {
        element: Term,
        set: Term,
    },
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(Vec<Variable>, Box<Formula>),
    Exists(Vec<Variable>, Box<Formula>),
}

impl Formula {
    pub fn atom(predicate: impl Into<String>, arguments: Vec<Term>) -> Self {
        Formula::Atom(Atom::new(predicate, arguments))
    }

    pub fn comparison(relation: Relation, lhs: Term, rhs: Term) -> Self {
        Formula::Comparison { relation, lhs, rhs }
    }

    pub fn equal(lhs: Term, rhs: Term) -> Self {
        Formula::comparison(Relation::Equal, lhs, rhs)
    }

    pub fn membership(element: Term, set: Term) -> Self {
        Formula::Membership { element, set }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(formula: Formula) -> Self {
        Formula::Not(Box::new(formula))
    }

    pub fn implies(lhs: Formula, rhs: Formula) -> Self {
        Formula::Implies(Box::new(lhs), Box::new(rhs))
    }

    pub fn iff(lhs: Formula, rhs: Formula) -> Self {
        Formula::Iff(Box::new(lhs), Box::new(rhs))
    }

    /// Conjunction, flattening nested conjunctions; the empty conjunction is `True`.
    pub fn conjoin(formulas: impl IntoIterator<Item = Formula>) -> Self {
        let mut out = Vec::new();
        for formula in formulas {
            match formula {
                Formula::And(inner) => out.extend(inner),
                Formula::True => (),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => Formula::True,
            1 => out.pop().unwrap(),
            _ => Formula::And(out),
        }
    }

    /// Disjunction, flattening nested disjunctions; the empty disjunction is `False`.
    pub fn disjoin(formulas: impl IntoIterator<Item = Formula>) -> Self {
        let mut out = Vec::new();
        for formula in formulas {
            match formula {
                Formula::Or(inner) => out.extend(inner),
                Formula::False => (),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => Formula::False,
            1 => out.pop().unwrap(),
            _ => Formula::Or(out),
        }
    }

    pub fn forall(variables: Vec<Variable>, formula: Formula) -> Self {
        if variables.is_empty() {
            formula
        } else {
            Formula::Forall(variables, Box::new(formula))
        }
    }

    pub fn exists(variables: Vec<Variable>, formula: Formula) -> Self {
        if variables.is_empty() {
            formula
        } else {
            Formula::Exists(variables, Box::new(formula))
        }
    }

    pub fn is_atomic(&self) -> bool {
        matches!(
            self,
            Formula::True
                | Formula::False
                | Formula::Atom(_)
                | Formula::Comparison { .. }
                | Formula::Membership { .. }
        )
    }

    pub fn free_variables(&self) -> BTreeSet<Variable> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Variable>, out: &mut BTreeSet<Variable>) {
        let mut terms = |terms: &[&Term], bound: &Vec<Variable>| {
            let mut vars = BTreeSet::new();
            terms.iter().for_each(|t| t.variables(&mut vars));
            out.extend(vars.into_iter().filter(|v| !bound.contains(v)));
        };
        match self {
            Formula::True | Formula::False => (),
            Formula::Atom(atom) => terms(&atom.arguments.iter().collect::<Vec<_>>(), bound),
            Formula::Comparison { lhs, rhs, .. } => terms(&[lhs, rhs], bound),
            Formula::Membership { element, set } => terms(&[element, set], bound),
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(fs) | Formula::Or(fs) => {
                fs.iter().for_each(|f| f.collect_free(bound, out))
            }
            Formula::Implies(l, r) | Formula::Iff(l, r) => {
                l.collect_free(bound, out);
                r.collect_free(bound, out);
            }
            Formula::Forall(vs, f) | Formula::Exists(vs, f) => {
                let depth = bound.len();
                bound.extend(vs.iter().cloned());
                f.collect_free(bound, out);
                bound.truncate(depth);
            }
        }
    }

    pub fn has_free(&self, variable: &Variable) -> bool {
        match self {
            Formula::True | Formula::False => false,
            Formula::Atom(atom) => atom.arguments.iter().any(|t| t.contains_variable(variable)),
            Formula::Comparison { lhs, rhs, .. } => {
                lhs.contains_variable(variable) || rhs.contains_variable(variable)
            }
            Formula::Membership { element, set } => {
                element.contains_variable(variable) || set.contains_variable(variable)
            }
            Formula::Not(f) => f.has_free(variable),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().any(|f| f.has_free(variable)),
            Formula::Implies(l, r) | Formula::Iff(l, r) => {
                l.has_free(variable) || r.has_free(variable)
            }
            Formula::Forall(vs, f) | Formula::Exists(vs, f) => {
                !vs.contains(variable) && f.has_free(variable)
            }
        }
    }

    /// Predicates of all atoms in the formula.
    pub fn predicates(&self) -> BTreeSet<Predicate> {
        let mut out = BTreeSet::new();
        self.visit_atoms(&mut |atom| {
            out.insert(atom.predicate());
        });
        out
    }

    pub fn mentions(&self, predicate: &Predicate) -> bool {
        let mut found = false;
        self.visit_atoms(&mut |atom| {
            found |= atom.predicate == predicate.name && atom.arguments.len() == predicate.arity
        });
        found
    }

    pub fn visit_atoms(&self, visit: &mut impl FnMut(&Atom)) {
        match self {
            Formula::Atom(atom) => visit(atom),
            Formula::Not(f) | Formula::Forall(_, f) | Formula::Exists(_, f) => f.visit_atoms(visit),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.visit_atoms(visit)),
            Formula::Implies(l, r) | Formula::Iff(l, r) => {
                l.visit_atoms(visit);
                r.visit_atoms(visit);
            }
            Formula::True
            | Formula::False
            | Formula::Comparison { .. }
            | Formula::Membership { .. } => (),
        }
    }

    /// Rebuilds the formula, replacing each atom for which `replace` returns a formula.
    pub fn map_atoms(&self, replace: &mut impl FnMut(&Atom) -> Option<Formula>) -> Formula {
        match self {
            Formula::Atom(atom) => replace(atom).unwrap_or_else(|| self.clone()),
            Formula::Not(f) => Formula::not(f.map_atoms(replace)),
            Formula::And(fs) => Formula::And(fs.iter().map(|f| f.map_atoms(replace)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|f| f.map_atoms(replace)).collect()),
            Formula::Implies(l, r) => Formula::implies(l.map_atoms(replace), r.map_atoms(replace)),
            Formula::Iff(l, r) => Formula::iff(l.map_atoms(replace), r.map_atoms(replace)),
            Formula::Forall(vs, f) => Formula::Forall(vs.clone(), Box::new(f.map_atoms(replace))),
            Formula::Exists(vs, f) => Formula::Exists(vs.clone(), Box::new(f.map_atoms(replace))),
            Formula::True
            | Formula::False
            | Formula::Comparison { .. }
            | Formula::Membership { .. } => self.clone(),
        }
    }

    /// Visits every term occurring in the formula, with a flag telling whether
    /// the term is the right-hand side of a membership atom.
    pub fn visit_terms(&self, visit: &mut impl FnMut(&Term, bool)) {
        match self {
            Formula::Atom(atom) => atom.arguments.iter().for_each(|t| visit(t, false)),
            Formula::Comparison { lhs, rhs, .. } => {
                visit(lhs, false);
                visit(rhs, false);
            }
            Formula::Membership { element, set } => {
                visit(element, false);
                visit(set, true);
            }
            Formula::Not(f) | Formula::Forall(_, f) | Formula::Exists(_, f) => f.visit_terms(visit),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.visit_terms(visit)),
            Formula::Implies(l, r) | Formula::Iff(l, r) => {
                l.visit_terms(visit);
                r.visit_terms(visit);
            }
            Formula::True | Formula::False => (),
        }
    }

    /// Checks that multi-valued terms only occur to the right of `in`, that
    /// arithmetic terms are built from integer-valued operands, and that
    /// quantifier lists are nonempty and duplicate-free.
    pub fn satisfies_invariants(&self) -> bool {
        fn arith_ok(term: &Term) -> bool {
            match term {
                Term::Arith { lhs, rhs, .. } => {
                    lhs.is_integer_valued()
                        && rhs.is_integer_valued()
                        && arith_ok(lhs)
                        && arith_ok(rhs)
                }
                Term::Set { lhs, rhs, .. } => arith_ok(lhs) && arith_ok(rhs),
                _ => true,
            }
        }
        fn quantifiers_ok(formula: &Formula) -> bool {
            match formula {
                Formula::Forall(vs, f) | Formula::Exists(vs, f) => {
                    let distinct: BTreeSet<_> = vs.iter().collect();
                    !vs.is_empty() && distinct.len() == vs.len() && quantifiers_ok(f)
                }
                Formula::Not(f) => quantifiers_ok(f),
                Formula::And(fs) | Formula::Or(fs) => fs.iter().all(quantifiers_ok),
                Formula::Implies(l, r) | Formula::Iff(l, r) => {
                    quantifiers_ok(l) && quantifiers_ok(r)
                }
                _ => true,
            }
        }
        let mut ok = quantifiers_ok(self);
        self.visit_terms(&mut |term, in_set_position| {
            ok &= arith_ok(term);
            if !in_set_position {
                ok &= !term.contains_set();
            }
        });
        ok
    }

    /// Capture-avoiding substitution of `term` for the free occurrences of `variable`.
    pub fn substitute(&self, variable: &Variable, term: &Term) -> Result<Formula, SortError> {
        self.substitute_all(&[(variable.clone(), term.clone())])
    }

    /// Simultaneous capture-avoiding substitution.
    pub fn substitute_all(&self, pairs: &[(Variable, Term)]) -> Result<Formula, SortError> {
        for (variable, term) in pairs {
            if term.contains_set() {
                return Err(SortError::MultiValued {
                    variable: variable.clone(),
                    term: term.clone(),
                });
            }
            if variable.sort == Sort::Integer && !term.is_integer_valued() {
                return Err(SortError::NotInteger {
                    variable: variable.clone(),
                    term: term.clone(),
                });
            }
        }
        let map: BTreeMap<Variable, Term> = pairs.iter().cloned().collect();
        Ok(self.substitute_map(&map))
    }

    fn substitute_map(&self, map: &BTreeMap<Variable, Term>) -> Formula {
        if map.is_empty() {
            return self.clone();
        }
        match self {
            Formula::True | Formula::False => self.clone(),
            Formula::Atom(atom) => Formula::Atom(Atom::new(
                atom.predicate.clone(),
                atom.arguments.iter().map(|t| t.substitute(map)).collect(),
            )),
            Formula::Comparison { relation, lhs, rhs } => {
                Formula::comparison(*relation, lhs.substitute(map), rhs.substitute(map))
            }
            Formula::Membership { element, set } => {
                Formula::membership(element.substitute(map), set.substitute(map))
            }
            Formula::Not(f) => Formula::not(f.substitute_map(map)),
            Formula::And(fs) => Formula::And(fs.iter().map(|f| f.substitute_map(map)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|f| f.substitute_map(map)).collect()),
            Formula::Implies(l, r) => {
                Formula::implies(l.substitute_map(map), r.substitute_map(map))
            }
            Formula::Iff(l, r) => Formula::iff(l.substitute_map(map), r.substitute_map(map)),
            Formula::Forall(vs, f) | Formula::Exists(vs, f) => {
                let inner: BTreeMap<Variable, Term> = map
                    .iter()
                    .filter(|(v, _)| !vs.contains(v) && f.has_free(v))
                    .map(|(v, t)| (v.clone(), t.clone()))
                    .collect();
                let mut incoming = BTreeSet::new();
                inner.values().for_each(|t| t.variables(&mut incoming));

                let mut renaming = BTreeMap::new();
                let variables: Vec<Variable> = vs
                    .iter()
                    .map(|v| {
                        if incoming.contains(v) {
                            let fresh = Variable::fresh(&v.name, v.sort);
                            renaming.insert(v.clone(), Term::var(&fresh));
                            fresh
                        } else {
                            v.clone()
                        }
                    })
                    .collect();
                let body = f.substitute_map(&renaming).substitute_map(&inner);
                match self {
                    Formula::Forall(..) => Formula::Forall(variables, Box::new(body)),
                    _ => Formula::Exists(variables, Box::new(body)),
                }
            }
        }
    }

    /// Structural equality up to renaming of bound variables.
    pub fn alpha_equivalent(&self, other: &Formula) -> bool {
        alpha_eq(self, other, &mut Vec::new())
    }
}

fn alpha_eq(lhs: &Formula, rhs: &Formula, bound: &mut Vec<(Variable, Variable)>) -> bool {
    fn term_eq(lhs: &Term, rhs: &Term, bound: &[(Variable, Variable)]) -> bool {
        match (lhs, rhs) {
            (Term::Variable(a), Term::Variable(b)) => {
                for (x, y) in bound.iter().rev() {
                    if x == a || y == b {
                        return x == a && y == b;
                    }
                }
                a == b
            }
            (Term::Symbol(a), Term::Symbol(b)) => a == b,
            (Term::Integer(a), Term::Integer(b)) => a == b,
            (
                Term::Arith {
                    op,
                    lhs: l1,
                    rhs: r1,
                },
                Term::Arith {
                    op: op2,
                    lhs: l2,
                    rhs: r2,
                },
            ) => op == op2 && term_eq(l1, l2, bound) && term_eq(r1, r2, bound),
            (
                Term::Set {
                    op,
                    lhs: l1,
                    rhs: r1,
                },
                Term::Set {
                    op: op2,
                    lhs: l2,
                    rhs: r2,
                },
            ) => op == op2 && term_eq(l1, l2, bound) && term_eq(r1, r2, bound),
            _ => false,
        }
    }

    match (lhs, rhs) {
        (Formula::True, Formula::True) | (Formula::False, Formula::False) => true,
        (Formula::Atom(a), Formula::Atom(b)) => {
            a.predicate == b.predicate
                && a.arguments.len() == b.arguments.len()
                && a.arguments
                    .iter()
                    .zip(&b.arguments)
                    .all(|(x, y)| term_eq(x, y, bound))
        }
        (
            Formula::Comparison {
                relation,
                lhs: l1,
                rhs: r1,
            },
            Formula::Comparison {
                relation: relation2,
                lhs: l2,
                rhs: r2,
            },
        ) => relation == relation2 && term_eq(l1, l2, bound) && term_eq(r1, r2, bound),
        (
            Formula::Membership {
                element: e1,
                set: s1,
            },
            Formula::Membership {
                element: e2,
                set: s2,
            },
        ) => term_eq(e1, e2, bound) && term_eq(s1, s2, bound),
        (Formula::Not(a), Formula::Not(b)) => alpha_eq(a, b, bound),
        (Formula::And(a), Formula::And(b)) | (Formula::Or(a), Formula::Or(b)) => {
            a.len() == b.len() && a.iter().zip(b).all(|(x, y)| alpha_eq(x, y, bound))
        }
        (Formula::Implies(l1, r1), Formula::Implies(l2, r2))
        | (Formula::Iff(l1, r1), Formula::Iff(l2, r2)) => {
            alpha_eq(l1, l2, bound) && alpha_eq(r1, r2, bound)
        }
        (Formula::Forall(v1, f1), Formula::Forall(v2, f2))
        | (Formula::Exists(v1, f1), Formula::Exists(v2, f2)) => {
            if v1.len() != v2.len() || v1.iter().zip(v2).any(|(a, b)| a.sort != b.sort) {
                return false;
            }
            let depth = bound.len();
            bound.extend(v1.iter().cloned().zip(v2.iter().cloned()));
            let result = alpha_eq(f1, f2, bound);
            bound.truncate(depth);
            result
        }
        _ => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SortError {
    #[error("cannot substitute non-integer term `{term}` for integer variable {}", variable.name)]
    NotInteger { variable: Variable, term: Term },
    #[error("cannot substitute multi-valued term `{term}` for variable {}", variable.name)]
    MultiValued { variable: Variable, term: Term },
}

/// `int(p/n@k)`: the `k`-th argument of every tuple in `p` is an integer.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntegerAnnotation {
    pub predicate: Predicate,
    /// One-based argument position.
    pub position: usize,
}

impl IntegerAnnotation {
    pub fn new(predicate: Predicate, position: usize) -> Self {
        assert!(
            (1..=predicate.arity).contains(&position),
            "annotation position {position} out of range for {predicate}"
        );
        IntegerAnnotation {
            predicate,
            position,
        }
    }

    /// `forall X1, ..., Xn (p(X1, ..., Xn) -> exists N (Xk = N))`
    pub fn expand(&self) -> Formula {
        let variables: Vec<Variable> = (1..=self.predicate.arity)
            .map(|i| Variable::fresh(&format!("X{i}"), Sort::General))
            .collect();
        let witness = Variable::fresh("N", Sort::Integer);
        Formula::forall(
            variables.clone(),
            Formula::implies(
                Formula::atom(
                    self.predicate.name.clone(),
                    variables.iter().map(Term::var).collect(),
                ),
                Formula::exists(
                    vec![witness.clone()],
                    Formula::equal(
                        Term::var(&variables[self.position - 1]),
                        Term::var(&witness),
                    ),
                ),
            ),
        )
    }
}

impl Display for IntegerAnnotation {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "int({}@{})", self.predicate, self.position)
    }
}

impl Display for Term {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        format::write_term(self, &|v: &Variable| v.name.clone(), true, f)
    }
}

impl Display for Formula {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_formula(self))
    }
}
