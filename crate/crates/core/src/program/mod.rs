//! Abstract syntax of the supported gringo fragment.
//!
//! Programs are nondisjunctive: every rule has a single atom in the head, a
//! singleton choice without bounds, or no head at all (a constraint). Terms
//! are integers, symbolic constants, variables, the anonymous variable and
//! binary arithmetic including intervals.

mod parser;
mod safety;

use std::{
    collections::BTreeSet,
    fmt::{self, Display, Formatter},
};

pub use parser::{parse_program, ParseError};

/// A predicate is identified by its name together with its arity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Predicate {
    pub name: String,
    pub arity: usize,
}

impl Predicate {
    pub fn new(name: impl Into<String>, arity: usize) -> Self {
        Predicate {
            name: name.into(),
            arity,
        }
    }
}

impl Display for Predicate {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.name, self.arity)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinaryOperator {
    Add,
    Subtract,
    Multiply,
    Divide,
    Interval,
}

impl BinaryOperator {
    pub fn symbol(self) -> &'static str {
        match self {
            BinaryOperator::Add => "+",
            BinaryOperator::Subtract => "-",
            BinaryOperator::Multiply => "*",
            BinaryOperator::Divide => "/",
            BinaryOperator::Interval => "..",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ProgramTerm {
    Integer(i64),
    Symbol(String),
    Variable(String),
    /// `_`; every occurrence stands for a distinct variable.
    Anonymous,
    Binary {
        op: BinaryOperator,
        lhs: Box<ProgramTerm>,
        rhs: Box<ProgramTerm>,
    },
}

impl ProgramTerm {
    pub fn binary(op: BinaryOperator, lhs: ProgramTerm, rhs: ProgramTerm) -> Self {
        ProgramTerm::Binary {
            op,
            lhs: Box::new(lhs),
            rhs: Box::new(rhs),
        }
    }

    /// Named variables in order of first occurrence.
    pub fn variables(&self, out: &mut Vec<String>) {
        match self {
            ProgramTerm::Variable(name) => {
                if !out.contains(name) {
                    out.push(name.clone());
                }
            }
            ProgramTerm::Binary { lhs, rhs, .. } => {
                lhs.variables(out);
                rhs.variables(out);
            }
            ProgramTerm::Integer(_) | ProgramTerm::Symbol(_) | ProgramTerm::Anonymous => (),
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            ProgramTerm::Variable(_) | ProgramTerm::Anonymous => false,
            ProgramTerm::Binary { lhs, rhs, .. } => lhs.is_ground() && rhs.is_ground(),
            ProgramTerm::Integer(_) | ProgramTerm::Symbol(_) => true,
        }
    }

    fn contains_anonymous(&self) -> bool {
        match self {
            ProgramTerm::Anonymous => true,
            ProgramTerm::Binary { lhs, rhs, .. } => {
                lhs.contains_anonymous() || rhs.contains_anonymous()
            }
            _ => false,
        }
    }

    fn symbols(&self, out: &mut BTreeSet<String>) {
        match self {
            ProgramTerm::Symbol(s) => {
                out.insert(s.clone());
            }
            ProgramTerm::Binary { lhs, rhs, .. } => {
                lhs.symbols(out);
                rhs.symbols(out);
            }
            _ => (),
        }
    }
}

impl Display for ProgramTerm {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            ProgramTerm::Integer(n) => write!(f, "{n}"),
            ProgramTerm::Symbol(s) => write!(f, "{s}"),
            ProgramTerm::Variable(v) => write!(f, "{v}"),
            ProgramTerm::Anonymous => write!(f, "_"),
            ProgramTerm::Binary { op, lhs, rhs } => {
                fmt_operand(lhs, f)?;
                match op {
                    BinaryOperator::Interval => write!(f, "..")?,
                    _ => write!(f, " {} ", op.symbol())?,
                }
                fmt_operand(rhs, f)
            }
        }
    }
}

fn fmt_operand(term: &ProgramTerm, f: &mut Formatter<'_>) -> fmt::Result {
    match term {
        ProgramTerm::Binary { .. } => write!(f, "({term})"),
        _ => write!(f, "{term}"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Atom {
    pub predicate: String,
    pub arguments: Vec<ProgramTerm>,
}

impl Atom {
    pub fn new(predicate: impl Into<String>, arguments: Vec<ProgramTerm>) -> Self {
        Atom {
            predicate: predicate.into(),
            arguments,
        }
    }

    pub fn predicate(&self) -> Predicate {
        Predicate::new(self.predicate.clone(), self.arguments.len())
    }
}

impl Display for Atom {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.predicate)?;
        if !self.arguments.is_empty() {
            write!(f, "(")?;
            for (i, argument) in self.arguments.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{argument}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComparisonOperator {
    Equal,
    NotEqual,
    Less,
    Greater,
    LessEqual,
    GreaterEqual,
}

impl ComparisonOperator {
    pub fn symbol(self) -> &'static str {
        match self {
            ComparisonOperator::Equal => "=",
            ComparisonOperator::NotEqual => "!=",
            ComparisonOperator::Less => "<",
            ComparisonOperator::Greater => ">",
            ComparisonOperator::LessEqual => "<=",
            ComparisonOperator::GreaterEqual => ">=",
        }
    }

    /// The relation holding exactly when this one does not.
    pub fn negation(self) -> Self {
        match self {
            ComparisonOperator::Equal => ComparisonOperator::NotEqual,
            ComparisonOperator::NotEqual => ComparisonOperator::Equal,
            ComparisonOperator::Less => ComparisonOperator::GreaterEqual,
            ComparisonOperator::Greater => ComparisonOperator::LessEqual,
            ComparisonOperator::LessEqual => ComparisonOperator::Greater,
            ComparisonOperator::GreaterEqual => ComparisonOperator::Less,
        }
    }

    pub fn holds<T: Ord>(self, lhs: &T, rhs: &T) -> bool {
        match self {
            ComparisonOperator::Equal => lhs == rhs,
            ComparisonOperator::NotEqual => lhs != rhs,
            ComparisonOperator::Less => lhs < rhs,
            ComparisonOperator::Greater => lhs > rhs,
            ComparisonOperator::LessEqual => lhs <= rhs,
            ComparisonOperator::GreaterEqual => lhs >= rhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BodyLiteral {
    Positive(Atom),
    Negative(Atom),
    Comparison {
        op: ComparisonOperator,
        lhs: ProgramTerm,
        rhs: ProgramTerm,
    },
}

impl BodyLiteral {
    fn variables(&self, out: &mut Vec<String>) {
        match self {
            BodyLiteral::Positive(atom) | BodyLiteral::Negative(atom) => {
                atom.arguments.iter().for_each(|t| t.variables(out))
            }
            BodyLiteral::Comparison { lhs, rhs, .. } => {
                lhs.variables(out);
                rhs.variables(out);
            }
        }
    }
}

impl Display for BodyLiteral {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            BodyLiteral::Positive(atom) => write!(f, "{atom}"),
            BodyLiteral::Negative(atom) => write!(f, "not {atom}"),
            BodyLiteral::Comparison { op, lhs, rhs } => {
                write!(f, "{lhs} {} {rhs}", op.symbol())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Head {
    Basic(Atom),
    Choice(Atom),
    /// No head: the rule is a constraint.
    Empty,
}

impl Head {
    pub fn atom(&self) -> Option<&Atom> {
        match self {
            Head::Basic(atom) | Head::Choice(atom) => Some(atom),
            Head::Empty => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    pub head: Head,
    pub body: Vec<BodyLiteral>,
}

impl Rule {
    /// Named variables of the rule, head first, in order of first occurrence.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(atom) = self.head.atom() {
            atom.arguments.iter().for_each(|t| t.variables(&mut out));
        }
        self.body.iter().for_each(|l| l.variables(&mut out));
        out
    }

    /// Predicates occurring in the rule, head first.
    pub fn predicates(&self) -> Vec<Predicate> {
        let mut out = Vec::new();
        if let Some(atom) = self.head.atom() {
            out.push(atom.predicate());
        }
        for literal in &self.body {
            if let BodyLiteral::Positive(atom) | BodyLiteral::Negative(atom) = literal {
                out.push(atom.predicate());
            }
        }
        out
    }
}

impl Display for Rule {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match &self.head {
            Head::Basic(atom) => write!(f, "{atom}")?,
            Head::Choice(atom) => write!(f, "{{{atom}}}")?,
            Head::Empty => (),
        }
        if !self.body.is_empty() {
            if self.head == Head::Empty {
                write!(f, ":- ")?;
            } else {
                write!(f, " :- ")?;
            }
            for (i, literal) in self.body.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{literal}")?;
            }
        } else if self.head == Head::Empty {
            write!(f, ":-")?;
        }
        write!(f, ".")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Directive {
    Show(Predicate),
    External(Predicate),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Program {
    pub rules: Vec<Rule>,
    pub shows: BTreeSet<Predicate>,
    pub externals: BTreeSet<Predicate>,
    pub has_show_directive: bool,
}

impl Program {
    /// Appends the statements of `other`, as if the source texts were concatenated.
    pub fn extend(&mut self, other: Program) {
        self.rules.extend(other.rules);
        self.shows.extend(other.shows);
        self.externals.extend(other.externals);
        self.has_show_directive |= other.has_show_directive;
    }

    /// Every predicate occurring in a rule, in order of first occurrence.
    pub fn predicates(&self) -> Vec<Predicate> {
        let mut out: Vec<Predicate> = Vec::new();
        for predicate in self.rules.iter().flat_map(Rule::predicates) {
            if !out.contains(&predicate) {
                out.push(predicate);
            }
        }
        out
    }

    /// Predicates occurring in rule heads, in order of first occurrence.
    pub fn head_predicates(&self) -> Vec<Predicate> {
        let mut out: Vec<Predicate> = Vec::new();
        for atom in self.rules.iter().filter_map(|r| r.head.atom()) {
            let predicate = atom.predicate();
            if !out.contains(&predicate) {
                out.push(predicate);
            }
        }
        out
    }

    pub fn is_shown(&self, predicate: &Predicate) -> bool {
        !self.has_show_directive || self.shows.contains(predicate)
    }

    pub fn is_external(&self, predicate: &Predicate) -> bool {
        self.externals.contains(predicate)
    }

    /// Symbolic constants occurring anywhere in the rules.
    pub fn symbols(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for rule in &self.rules {
            if let Some(atom) = rule.head.atom() {
                atom.arguments.iter().for_each(|t| t.symbols(&mut out));
            }
            for literal in &rule.body {
                match literal {
                    BodyLiteral::Positive(atom) | BodyLiteral::Negative(atom) => {
                        atom.arguments.iter().for_each(|t| t.symbols(&mut out))
                    }
                    BodyLiteral::Comparison { lhs, rhs, .. } => {
                        lhs.symbols(&mut out);
                        rhs.symbols(&mut out);
                    }
                }
            }
        }
        out
    }

    /// Replaces every occurrence of the symbolic constant `name` by `value`.
    pub fn instantiate_constant(&mut self, name: &str, value: i64) {
        fn term(t: &mut ProgramTerm, name: &str, value: i64) {
            match t {
                ProgramTerm::Symbol(s) if s == name => *t = ProgramTerm::Integer(value),
                ProgramTerm::Binary { lhs, rhs, .. } => {
                    term(lhs, name, value);
                    term(rhs, name, value);
                }
                _ => (),
            }
        }
        for rule in &mut self.rules {
            if let Head::Basic(atom) | Head::Choice(atom) = &mut rule.head {
                atom.arguments.iter_mut().for_each(|t| term(t, name, value));
            }
            for literal in &mut rule.body {
                match literal {
                    BodyLiteral::Positive(atom) | BodyLiteral::Negative(atom) => {
                        atom.arguments.iter_mut().for_each(|t| term(t, name, value))
                    }
                    BodyLiteral::Comparison { lhs, rhs, .. } => {
                        term(lhs, name, value);
                        term(rhs, name, value);
                    }
                }
            }
        }
    }
}

impl Display for Program {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        for rule in &self.rules {
            writeln!(f, "{rule}")?;
        }
        if self.has_show_directive && self.shows.is_empty() {
            writeln!(f, "#show.")?;
        }
        for predicate in &self.shows {
            writeln!(f, "#show {predicate}.")?;
        }
        for predicate in &self.externals {
            if predicate.arity == 0 {
                writeln!(f, "#external {}.", predicate.name)?;
            } else {
                let dummies = vec!["1"; predicate.arity].join(", ");
                writeln!(f, "#external {}({dummies}).", predicate.name)?;
            }
        }
        Ok(())
    }
}
