use {
    super::{Formula, IntegerAnnotation, Sort, Term, Variable},
    std::fmt::{self, Write},
};

/// Assigns printed names to bound variables and renders formulas.
///
/// Head variables of completed definitions are named `V1, V2, ...`,
/// integer variables `N1, N2, ...` and every other bound variable
/// `U1, U2, ...`. The counters run across all formulas printed with the same
/// printer. Free variables keep their own names.
#[derive(Debug, Default)]
pub struct Printer {
    head: usize,
    integer: usize,
    other: usize,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Context {
    Top,
    And,
    Or,
    Implies,
    Iff,
    Not,
    Quantifier,
}

impl Printer {
    pub fn new() -> Self {
        Printer::default()
    }

    pub fn formula(&mut self, formula: &Formula) -> String {
        let mut out = String::new();
        let mut names = Vec::new();
        self.write(formula, Context::Top, false, &mut names, &mut out)
            .expect("writing to a string cannot fail");
        out
    }

    /// Prints a completed definition: the root quantifier binds head variables.
    pub fn definition(&mut self, formula: &Formula) -> String {
        let mut out = String::new();
        let mut names = Vec::new();
        self.write(formula, Context::Top, true, &mut names, &mut out)
            .expect("writing to a string cannot fail");
        out
    }

    pub fn annotation(&self, annotation: &IntegerAnnotation) -> String {
        annotation.to_string()
    }

    fn name(&mut self, variable: &Variable, head: bool) -> String {
        match (variable.sort, head) {
            (Sort::Integer, _) => {
                self.integer += 1;
                format!("N{}", self.integer)
            }
            (Sort::General, true) => {
                self.head += 1;
                format!("V{}", self.head)
            }
            (Sort::General, false) => {
                self.other += 1;
                format!("U{}", self.other)
            }
        }
    }

    fn write(
        &mut self,
        formula: &Formula,
        context: Context,
        head: bool,
        names: &mut Vec<(Variable, String)>,
        out: &mut String,
    ) -> fmt::Result {
        let parenthesize = needs_parentheses(formula, context);
        if parenthesize {
            out.push('(');
        }
        let lookup = |names: &Vec<(Variable, String)>| {
            let names = names.clone();
            move |v: &Variable| {
                names
                    .iter()
                    .rev()
                    .find(|(bound, _)| bound == v)
                    .map(|(_, name)| name.clone())
                    .unwrap_or_else(|| v.name.clone())
            }
        };
        match formula {
            Formula::True => out.push_str("#true"),
            Formula::False => out.push_str("#false"),
            Formula::Atom(atom) => {
                let name_of = lookup(names);
                out.push_str(&atom.predicate);
                if !atom.arguments.is_empty() {
                    out.push('(');
                    for (i, argument) in atom.arguments.iter().enumerate() {
                        if i > 0 {
                            out.push_str(", ");
                        }
                        write_term(argument, &name_of, false, out)?;
                    }
                    out.push(')');
                }
            }
            Formula::Comparison { relation, lhs, rhs } => {
                let name_of = lookup(names);
                write_term(lhs, &name_of, false, out)?;
                write!(out, " {} ", relation.symbol())?;
                write_term(rhs, &name_of, false, out)?;
            }
            Formula::Membership { element, set } => {
                let name_of = lookup(names);
                write_term(element, &name_of, false, out)?;
                out.push_str(" in ");
                write_term(set, &name_of, true, out)?;
            }
            Formula::Not(inner) => {
                out.push_str("not ");
                self.write(inner, Context::Not, false, names, out)?;
            }
            Formula::And(fs) | Formula::Or(fs) => {
                let (separator, child) = match formula {
                    Formula::And(_) => (" and ", Context::And),
                    _ => (" or ", Context::Or),
                };
                for (i, f) in fs.iter().enumerate() {
                    if i > 0 {
                        out.push_str(separator);
                    }
                    self.write(f, child, false, names, out)?;
                }
            }
            Formula::Implies(l, r) | Formula::Iff(l, r) => {
                let (separator, child) = match formula {
                    Formula::Implies(..) => (" -> ", Context::Implies),
                    _ => (" <-> ", Context::Iff),
                };
                self.write(l, child, false, names, out)?;
                out.push_str(separator);
                self.write(r, child, false, names, out)?;
            }
            Formula::Forall(vs, f) | Formula::Exists(vs, f) => {
                out.push_str(match formula {
                    Formula::Forall(..) => "forall ",
                    _ => "exists ",
                });
                let depth = names.len();
                for (i, v) in vs.iter().enumerate() {
                    let name = self.name(v, head);
                    if i > 0 {
                        out.push_str(", ");
                    }
                    out.push_str(&name);
                    names.push((v.clone(), name));
                }
                out.push(' ');
                self.write(f, Context::Quantifier, false, names, out)?;
                names.truncate(depth);
            }
        }
        if parenthesize {
            out.push(')');
        }
        Ok(())
    }
}

fn needs_parentheses(formula: &Formula, context: Context) -> bool {
    if formula.is_atomic() {
        return false;
    }
    match context {
        Context::Top => false,
        Context::Quantifier => true,
        Context::Not => !matches!(
            formula,
            Formula::Not(_) | Formula::Forall(..) | Formula::Exists(..)
        ),
        Context::And | Context::Or | Context::Implies | Context::Iff => match formula {
            Formula::And(_) => context != Context::And,
            Formula::Or(_) => context != Context::Or,
            Formula::Implies(..) | Formula::Iff(..) => true,
            _ => false,
        },
    }
}

/// Binary terms are parenthesized, except a multi-valued term standing
/// directly to the right of `in`.
pub(super) fn write_term(
    term: &Term,
    name_of: &dyn Fn(&Variable) -> String,
    set_position: bool,
    out: &mut impl Write,
) -> fmt::Result {
    match term {
        Term::Variable(v) => write!(out, "{}", name_of(v)),
        Term::Symbol(s) => write!(out, "{s}"),
        Term::Integer(n) => write!(out, "{n}"),
        Term::Arith { op, lhs, rhs } => {
            write!(out, "(")?;
            write_term(lhs, name_of, false, out)?;
            write!(out, " {} ", op.symbol())?;
            write_term(rhs, name_of, false, out)?;
            write!(out, ")")
        }
        Term::Set { op, lhs, rhs } => {
            if !set_position {
                write!(out, "(")?;
            }
            write_term(lhs, name_of, false, out)?;
            match op {
                super::SetOp::Interval => write!(out, "..")?,
                _ => write!(out, " {} ", op.symbol())?,
            }
            write_term(rhs, name_of, false, out)?;
            if !set_position {
                write!(out, ")")?;
            }
            Ok(())
        }
    }
}

/// Prints a single formula with fresh name counters.
pub fn format_formula(formula: &Formula) -> String {
    Printer::new().formula(formula)
}

#[cfg(test)]
mod tests {
    use super::super::{ArithOp, Relation, SetOp};
    use super::*;

    fn g(name: &str) -> Variable {
        Variable::general(name)
    }

    fn atom(p: &str, vars: &[&Variable]) -> Formula {
        Formula::atom(p, vars.iter().map(|v| Term::var(v)).collect())
    }

    #[test]
    fn completed_definition() {
        let x = g("X");
        let f = Formula::forall(
            vec![x.clone()],
            Formula::iff(
                atom("s", &[&x]),
                Formula::disjoin([atom("p", &[&x]), atom("q", &[&x])]),
            ),
        );
        assert_eq!(
            Printer::new().definition(&f),
            "forall V1 (s(V1) <-> (p(V1) or q(V1)))"
        );
        assert_eq!(format_formula(&f), "forall U1 (s(U1) <-> (p(U1) or q(U1)))");
    }

    #[test]
    fn sum_free_constraint() {
        let (i, s, j) = (
            Variable::integer("I"),
            Variable::integer("S"),
            Variable::integer("J"),
        );
        let sum = Term::arith(ArithOp::Add, Term::var(&i), Term::var(&j));
        let f = Formula::forall(
            vec![i.clone(), s.clone(), j.clone()],
            Formula::disjoin([
                Formula::not(atom("in", &[&i, &s])),
                Formula::not(atom("in", &[&j, &s])),
                Formula::not(Formula::atom("in", vec![sum, Term::var(&s)])),
            ]),
        );
        // Counters continue from formulas printed earlier.
        let mut printer = Printer {
            integer: 4,
            ..Printer::default()
        };
        assert_eq!(
            printer.formula(&f),
            "forall N5, N6, N7 (not in(N5, N6) or not in(N7, N6) or not in((N5 + N7), N6))"
        );
    }

    #[test]
    fn boolean_constants() {
        assert_eq!(format_formula(&Formula::True), "#true");
        assert_eq!(format_formula(&Formula::False), "#false");
    }

    #[test]
    fn negation_and_quantifier_operands() {
        let (v, u) = (g("V"), g("U"));
        let f = Formula::forall(
            vec![v.clone()],
            Formula::implies(
                atom("vertex", &[&v]),
                Formula::exists(vec![u.clone()], atom("color", &[&v, &u])),
            ),
        );
        assert_eq!(
            format_formula(&f),
            "forall U1 (vertex(U1) -> exists U2 color(U1, U2))"
        );

        let x = g("X");
        let f = Formula::conjoin([
            atom("r", &[&x]),
            Formula::not(Formula::disjoin([atom("p", &[&x]), atom("q", &[&x])])),
        ]);
        assert_eq!(format_formula(&f), "r(X) and not (p(X) or q(X))");
    }

    #[test]
    fn membership_and_arithmetic() {
        let (n1, n2, n3) = (
            Variable::integer("A"),
            Variable::integer("B"),
            Variable::integer("C"),
        );
        let n = Term::Symbol("n".into());
        let interval = Term::set(SetOp::Interval, Term::Integer(2), n);
        let f = Formula::conjoin([
            Formula::membership(Term::var(&n1), interval.clone()),
            Formula::not(Formula::exists(
                vec![n2.clone(), n3.clone()],
                Formula::conjoin([
                    Formula::equal(
                        Term::var(&n1),
                        Term::arith(ArithOp::Multiply, Term::var(&n2), Term::var(&n3)),
                    ),
                    Formula::membership(Term::var(&n2), interval.clone()),
                    Formula::membership(Term::var(&n3), interval),
                ]),
            )),
        ]);
        let f = Formula::forall(vec![n1.clone()], Formula::iff(atom("prime", &[&n1]), f));
        assert_eq!(
            Printer::new().definition(&f),
            "forall N1 (prime(N1) <-> (N1 in 2..n and not exists N2, N3 \
             (N1 = (N2 * N3) and N2 in 2..n and N3 in 2..n)))"
        );
    }

    #[test]
    fn nested_set_terms() {
        let inner = |a, b| Term::set(SetOp::Interval, Term::Integer(a), Term::Integer(b));
        let f = Formula::membership(
            Term::var(&g("X")),
            Term::set(SetOp::Add, inner(1, 2), inner(0, 1)),
        );
        assert_eq!(format_formula(&f), "X in (1..2) + (0..1)");
        let f = Formula::comparison(Relation::Less, Term::Integer(-3), Term::var(&g("X")));
        assert_eq!(format_formula(&f), "-3 < X");
    }

    #[test]
    fn nested_implications_are_parenthesized() {
        let (p, q, r) = (atom("p", &[]), atom("q", &[]), atom("r", &[]));
        let f = Formula::implies(Formula::implies(p.clone(), q.clone()), r.clone());
        assert_eq!(format_formula(&f), "(p -> q) -> r");
        let f = Formula::iff(p.clone(), Formula::implies(q, r));
        assert_eq!(format_formula(&f), "p <-> (q -> r)");
        let f = Formula::forall(vec![g("X")], Formula::not(p));
        assert_eq!(format_formula(&f), "forall U1 (not p)");
    }
}
