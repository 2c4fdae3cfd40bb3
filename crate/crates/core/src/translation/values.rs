use {
    crate::{
        formula::{SetOp, Term, Variable},
        program::{BinaryOperator, ProgramTerm},
    },
    std::{
        collections::BTreeSet,
        fmt::{self, Display, Formatter},
    },
};

/// A precomputed term. Integers precede symbolic constants; symbolic
/// constants are ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Integer(i64),
    Symbol(String),
}

impl Value {
    pub fn as_integer(&self) -> Option<i64> {
        match self {
            Value::Integer(n) => Some(*n),
            Value::Symbol(_) => None,
        }
    }
}

impl Display for Value {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Value::Integer(n) => write!(f, "{n}"),
            Value::Symbol(s) => write!(f, "{s}"),
        }
    }
}

/// The set of values a ground term denotes.
#[derive(Clone, Debug)]
pub enum ValueSet {
    Finite(BTreeSet<Value>),
    /// All integers from the first bound to the second, inclusive.
    IntegerRange(i64, i64),
}

impl PartialEq for ValueSet {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (ValueSet::IntegerRange(a, b), ValueSet::IntegerRange(c, d)) => {
                (a > b && c > d) || (a == c && b == d)
            }
            _ => self.to_set() == other.to_set(),
        }
    }
}

impl Eq for ValueSet {}

impl ValueSet {
    pub fn empty() -> Self {
        ValueSet::Finite(BTreeSet::new())
    }

    pub fn single(value: Value) -> Self {
        ValueSet::Finite(BTreeSet::from([value]))
    }

    pub fn range(lo: i64, hi: i64) -> Self {
        if lo > hi {
            ValueSet::empty()
        } else {
            ValueSet::IntegerRange(lo, hi)
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            ValueSet::Finite(set) => set.is_empty(),
            ValueSet::IntegerRange(lo, hi) => lo > hi,
        }
    }

    pub fn len(&self) -> u128 {
        match self {
            ValueSet::Finite(set) => set.len() as u128,
            ValueSet::IntegerRange(lo, hi) if lo <= hi => (*hi as i128 - *lo as i128 + 1) as u128,
            ValueSet::IntegerRange(..) => 0,
        }
    }

    pub fn contains(&self, value: &Value) -> bool {
        match (self, value) {
            (ValueSet::Finite(set), _) => set.contains(value),
            (ValueSet::IntegerRange(lo, hi), Value::Integer(n)) => lo <= n && n <= hi,
            (ValueSet::IntegerRange(..), Value::Symbol(_)) => false,
        }
    }

    /// The only element, if there is exactly one.
    pub fn as_single(&self) -> Option<Value> {
        match self {
            ValueSet::Finite(set) if set.len() == 1 => set.iter().next().cloned(),
            ValueSet::IntegerRange(lo, hi) if lo == hi => Some(Value::Integer(*lo)),
            _ => None,
        }
    }

    pub fn to_set(&self) -> BTreeSet<Value> {
        match self {
            ValueSet::Finite(set) => set.clone(),
            ValueSet::IntegerRange(lo, hi) => (*lo..=*hi).map(Value::Integer).collect(),
        }
    }

    fn integer_bounds(&self) -> Option<(i64, i64)> {
        match self {
            ValueSet::IntegerRange(lo, hi) if lo <= hi => Some((*lo, *hi)),
            ValueSet::IntegerRange(..) => None,
            ValueSet::Finite(set) => {
                let mut integers = set.iter().filter_map(Value::as_integer);
                let first = integers.next()?;
                Some(integers.fold((first, first), |(lo, hi), n| (lo.min(n), hi.max(n))))
            }
        }
    }

    fn integers(&self) -> Vec<i64> {
        match self {
            ValueSet::IntegerRange(lo, hi) => (*lo..=*hi).collect(),
            ValueSet::Finite(set) => set.iter().filter_map(Value::as_integer).collect(),
        }
    }

    /// Applies a binary operator to every pair of operand values and collects
    /// the results. Non-integer operands and undefined operations (division
    /// by zero, overflow) contribute nothing.
    pub fn apply(op: BinaryOperator, lhs: &ValueSet, rhs: &ValueSet) -> ValueSet {
        match op {
            // k lies in some v1..v2 iff min(lhs) <= k <= max(rhs).
            BinaryOperator::Interval => match (lhs.integer_bounds(), rhs.integer_bounds()) {
                (Some((lo, _)), Some((_, hi))) => ValueSet::range(lo, hi),
                _ => ValueSet::empty(),
            },
            BinaryOperator::Add | BinaryOperator::Subtract
                if matches!(lhs, ValueSet::IntegerRange(..))
                    && matches!(rhs, ValueSet::IntegerRange(..)) =>
            {
                let (Some((a, b)), Some((c, d))) = (lhs.integer_bounds(), rhs.integer_bounds())
                else {
                    return ValueSet::empty();
                };
                let bounds = match op {
                    BinaryOperator::Add => a.checked_add(c).zip(b.checked_add(d)),
                    _ => a.checked_sub(d).zip(b.checked_sub(c)),
                };
                match bounds {
                    Some((lo, hi)) => ValueSet::range(lo, hi),
                    None => ValueSet::Finite(pairwise(op, &lhs.integers(), &rhs.integers())),
                }
            }
            _ => ValueSet::Finite(pairwise(op, &lhs.integers(), &rhs.integers())),
        }
    }
}

fn pairwise(op: BinaryOperator, lhs: &[i64], rhs: &[i64]) -> BTreeSet<Value> {
    let mut out = BTreeSet::new();
    for &a in lhs {
        for &b in rhs {
            if let Some(n) = apply_integer(op, a, b) {
                out.insert(Value::Integer(n));
            }
        }
    }
    out
}

/// Integer arithmetic; division truncates toward zero and is undefined for a zero divisor.
pub fn apply_integer(op: BinaryOperator, lhs: i64, rhs: i64) -> Option<i64> {
    match op {
        BinaryOperator::Add => lhs.checked_add(rhs),
        BinaryOperator::Subtract => lhs.checked_sub(rhs),
        BinaryOperator::Multiply => lhs.checked_mul(rhs),
        BinaryOperator::Divide => lhs.checked_div(rhs),
        BinaryOperator::Interval => None,
    }
}

/// The values of a formula term under an assignment of values to its
/// variables. Unassigned variables have no values.
pub fn term_values(term: &Term, value_of: &dyn Fn(&Variable) -> Option<Value>) -> ValueSet {
    match term {
        Term::Integer(n) => ValueSet::single(Value::Integer(*n)),
        Term::Symbol(s) => ValueSet::single(Value::Symbol(s.clone())),
        Term::Variable(v) => value_of(v).map_or_else(ValueSet::empty, ValueSet::single),
        Term::Arith { op, lhs, rhs } => ValueSet::apply(
            SetOp::from(*op).into(),
            &term_values(lhs, value_of),
            &term_values(rhs, value_of),
        ),
        Term::Set { op, lhs, rhs } => ValueSet::apply(
            (*op).into(),
            &term_values(lhs, value_of),
            &term_values(rhs, value_of),
        ),
    }
}

impl From<SetOp> for BinaryOperator {
    fn from(op: SetOp) -> Self {
        match op {
            SetOp::Interval => BinaryOperator::Interval,
            SetOp::Divide => BinaryOperator::Divide,
            SetOp::Add => BinaryOperator::Add,
            SetOp::Subtract => BinaryOperator::Subtract,
            SetOp::Multiply => BinaryOperator::Multiply,
        }
    }
}

/// The values of a ground program term. Terms containing variables have no values.
pub fn values(term: &ProgramTerm) -> ValueSet {
    match term {
        ProgramTerm::Integer(n) => ValueSet::single(Value::Integer(*n)),
        ProgramTerm::Symbol(s) => ValueSet::single(Value::Symbol(s.clone())),
        ProgramTerm::Variable(_) | ProgramTerm::Anonymous => ValueSet::empty(),
        ProgramTerm::Binary { op, lhs, rhs } => ValueSet::apply(*op, &values(lhs), &values(rhs)),
    }
}
