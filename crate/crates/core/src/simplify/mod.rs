//! Equivalence-preserving rewrites that bring completions into a readable form.
//!
//! The local rewrites apply anywhere in a formula and are iterated to a
//! fixpoint. Two further rewrites only make sense for a whole sentence: a
//! negated existential becomes a universally quantified clause, and a
//! two-literal clause `not A or B` is written `A -> B`.

mod integers;

use crate::{
    formula::{Formula, Relation, Sort, Term, Variable},
    translation::{term_values, Value},
};

pub use integers::{detect_integers, narrow_quantifiers, normalize_terms};

/// Upper bound on rewrite passes over a single formula.
pub const PASS_BUDGET: usize = 1000;

/// Rebuilds `formula` bottom-up, applying `rule` at every node after its children.
fn bottom_up(formula: &Formula, rule: &impl Fn(Formula) -> Formula) -> Formula {
    let rebuilt = match formula {
        Formula::Not(f) => Formula::not(bottom_up(f, rule)),
        Formula::And(fs) => Formula::And(fs.iter().map(|f| bottom_up(f, rule)).collect()),
        Formula::Or(fs) => Formula::Or(fs.iter().map(|f| bottom_up(f, rule)).collect()),
        Formula::Implies(l, r) => Formula::implies(bottom_up(l, rule), bottom_up(r, rule)),
        Formula::Iff(l, r) => Formula::iff(bottom_up(l, rule), bottom_up(r, rule)),
        Formula::Forall(vs, f) => Formula::Forall(vs.clone(), Box::new(bottom_up(f, rule))),
        Formula::Exists(vs, f) => Formula::Exists(vs.clone(), Box::new(bottom_up(f, rule))),
        _ => formula.clone(),
    };
    rule(rebuilt)
}

fn is_foldable(term: &Term) -> bool {
    term.is_ground() && !term.contains_symbol()
}

/// Folds ground integer arithmetic and turns set terms whose operands are
/// single integers into arithmetic terms.
pub(crate) fn normalize_term(term: &Term) -> Term {
    match term {
        Term::Arith { op, lhs, rhs } => {
            let (lhs, rhs) = (normalize_term(lhs), normalize_term(rhs));
            if let (Term::Integer(a), Term::Integer(b)) = (&lhs, &rhs) {
                if let Some(n) = op.apply(*a, *b) {
                    return Term::Integer(n);
                }
            }
            Term::arith(*op, lhs, rhs)
        }
        Term::Set { op, lhs, rhs } => {
            let (lhs, rhs) = (normalize_term(lhs), normalize_term(rhs));
            match op.as_arith() {
                Some(arith) if lhs.is_integer_valued() && rhs.is_integer_valued() => {
                    normalize_term(&Term::arith(arith, lhs, rhs))
                }
                _ => Term::set(*op, lhs, rhs),
            }
        }
        _ => term.clone(),
    }
}

fn value_term(value: Value) -> Term {
    match value {
        Value::Integer(n) => Term::Integer(n),
        Value::Symbol(s) => Term::Symbol(s),
    }
}

/// At one node: membership in a set with a single known value
/// becomes an equality, membership in an empty set becomes false, and
/// ground integer arithmetic is evaluated.
fn membership_node(formula: Formula) -> Formula {
    match formula {
        Formula::Atom(atom) => Formula::atom(
            atom.predicate,
            atom.arguments.iter().map(normalize_term).collect(),
        ),
        Formula::Comparison { relation, lhs, rhs } => {
            let (lhs, rhs) = (normalize_term(&lhs), normalize_term(&rhs));
            match (&lhs, &rhs) {
                (Term::Integer(a), Term::Integer(b)) => {
                    if relation.holds(a, b) {
                        Formula::True
                    } else {
                        Formula::False
                    }
                }
                _ => Formula::comparison(relation, lhs, rhs),
            }
        }
        Formula::Membership { element, set } => {
            let (element, set) = (normalize_term(&element), normalize_term(&set));
            if !matches!(set, Term::Set { .. }) {
                return membership_node(Formula::equal(element, set));
            }
            if !is_foldable(&set) {
                return Formula::membership(element, set);
            }
            let values = term_values(&set, &|_| None);
            if values.is_empty() {
                return Formula::False;
            }
            if is_foldable(&element) {
                let element = term_values(&element, &|_| None).as_single();
                return match element {
                    Some(v) if values.contains(&v) => Formula::True,
                    _ => Formula::False,
                };
            }
            match values.as_single() {
                Some(v) => Formula::equal(element, value_term(v)),
                None => Formula::membership(element, set),
            }
        }
        other => other,
    }
}

/// A conjunct `Z = t` defining a quantified variable `Z` by a single-valued
/// term of a compatible sort that does not mention `Z`.
fn find_definition(
    conjuncts: &[Formula],
    variables: &[Variable],
) -> Option<(usize, Variable, Term)> {
    conjuncts.iter().enumerate().find_map(|(i, conjunct)| {
        let Formula::Comparison {
            relation: Relation::Equal,
            lhs,
            rhs,
        } = conjunct
        else {
            return None;
        };
        [(lhs, rhs), (rhs, lhs)]
            .into_iter()
            .find_map(|(side, other)| {
                let Term::Variable(z) = side else { return None };
                let usable = variables.contains(z)
                    && !other.contains_set()
                    && !other.contains_variable(z)
                    && (z.sort == Sort::General || other.is_integer_valued());
                usable.then(|| (i, z.clone(), other.clone()))
            })
    })
}

/// At one node: `exists Z (Z = t and F)` becomes `F[t/Z]`.
fn equality_node(formula: Formula) -> Formula {
    let Formula::Exists(mut variables, body) = formula else {
        return formula;
    };
    let mut conjuncts = match *body {
        Formula::And(fs) => fs,
        other => vec![other],
    };
    while let Some((i, z, term)) = find_definition(&conjuncts, &variables) {
        conjuncts.remove(i);
        variables.retain(|v| v != &z);
        let rest = Formula::conjoin(conjuncts)
            .substitute(&z, &term)
            .expect("sorts were checked");
        conjuncts = match rest {
            Formula::And(fs) => fs,
            Formula::True => Vec::new(),
            other => vec![other],
        };
    }
    Formula::exists(variables, Formula::conjoin(conjuncts))
}

/// At one node: identities for `#true` and `#false`, and flattening.
fn boolean_node(formula: Formula) -> Formula {
    match formula {
        Formula::Not(f) => match *f {
            Formula::True => Formula::False,
            Formula::False => Formula::True,
            other => Formula::not(other),
        },
        Formula::And(fs) => {
            if fs.contains(&Formula::False) {
                Formula::False
            } else {
                Formula::conjoin(fs)
            }
        }
        Formula::Or(fs) => {
            if fs.contains(&Formula::True) {
                Formula::True
            } else {
                Formula::disjoin(fs)
            }
        }
        Formula::Implies(l, r) => match (*l, *r) {
            (Formula::False, _) | (_, Formula::True) => Formula::True,
            (Formula::True, r) => r,
            (l, Formula::False) => Formula::not(l),
            (l, r) => Formula::implies(l, r),
        },
        Formula::Iff(l, r) => match (*l, *r) {
            (Formula::True, f) | (f, Formula::True) => f,
            (Formula::False, f) | (f, Formula::False) => Formula::not(f),
            (l, r) => Formula::iff(l, r),
        },
        Formula::Forall(_, f) | Formula::Exists(_, f)
            if matches!(*f, Formula::True | Formula::False) =>
        {
            *f
        }
        other => other,
    }
}

/// At one node: `not not F` becomes `F`.
fn double_negation_node(formula: Formula) -> Formula {
    match formula {
        Formula::Not(f) => match *f {
            Formula::Not(g) => *g,
            other => Formula::not(other),
        },
        other => other,
    }
}

/// At one node: drop quantified variables that do not occur.
fn prune_node(formula: Formula) -> Formula {
    match formula {
        Formula::Forall(vs, f) => {
            let vs = vs.into_iter().filter(|v| f.has_free(v)).collect();
            Formula::forall(vs, *f)
        }
        Formula::Exists(vs, f) => {
            let vs = vs.into_iter().filter(|v| f.has_free(v)).collect();
            Formula::exists(vs, *f)
        }
        other => other,
    }
}

/// The literal true exactly when `literal` is false.
fn complement(literal: Formula) -> Formula {
    match literal {
        Formula::Not(f) => *f,
        Formula::Comparison { relation, lhs, rhs } => {
            Formula::comparison(relation.negation(), lhs, rhs)
        }
        Formula::True => Formula::False,
        Formula::False => Formula::True,
        other => Formula::not(other),
    }
}

/// Evaluates memberships everywhere, in one pass.
pub fn evaluate_memberships(formula: &Formula) -> Formula {
    bottom_up(formula, &membership_node)
}

/// Eliminates bound variables fixed by an equation, in one pass.
pub fn eliminate_equalities(formula: &Formula) -> Formula {
    bottom_up(formula, &equality_node)
}

/// Applies the identities for `#true` and `#false`, in one pass.
pub fn boolean_identities(formula: &Formula) -> Formula {
    bottom_up(formula, &boolean_node)
}

/// Removes double negations, in one pass.
pub fn remove_double_negations(formula: &Formula) -> Formula {
    bottom_up(formula, &double_negation_node)
}

/// Drops unused quantified variables, in one pass.
pub fn prune_quantifiers(formula: &Formula) -> Formula {
    bottom_up(formula, &prune_node)
}

/// At the root: `not exists X (L1 and ... and Lk)` becomes
/// `forall X (not L1 or ... or not Lk)`, complementing each literal.
pub fn negated_existential_to_clause(formula: &Formula) -> Formula {
    let Formula::Not(inner) = formula else {
        return formula.clone();
    };
    let (variables, body) = match inner.as_ref() {
        Formula::Exists(vs, body) => (vs.clone(), body.as_ref()),
        body @ Formula::And(_) => (Vec::new(), body),
        _ => return formula.clone(),
    };
    let literals = match body {
        Formula::And(fs) => fs.clone(),
        other => vec![other.clone()],
    };
    Formula::forall(
        variables,
        Formula::disjoin(literals.into_iter().map(complement)),
    )
}

/// At the root: a universally closed clause `not A or B` becomes `A -> B`.
pub fn clause_to_implication(formula: &Formula) -> Formula {
    let (variables, body) = match formula {
        Formula::Forall(vs, body) => (vs.clone(), body.as_ref()),
        body => (Vec::new(), body),
    };
    let Formula::Or(disjuncts) = body else {
        return formula.clone();
    };
    let [a, b] = disjuncts.as_slice() else {
        return formula.clone();
    };
    let implication = match (a, b) {
        (Formula::Not(antecedent), consequent) | (consequent, Formula::Not(antecedent))
            if !matches!(consequent, Formula::Not(_)) =>
        {
            Formula::implies(antecedent.as_ref().clone(), consequent.clone())
        }
        _ => return formula.clone(),
    };
    Formula::forall(variables, implication)
}

fn local_pass(formula: &Formula) -> Formula {
    bottom_up(formula, &|f| {
        prune_node(double_negation_node(boolean_node(equality_node(
            membership_node(f),
        ))))
    })
}

fn local_fixpoint(formula: &Formula, budget: &mut usize) -> Formula {
    let mut current = formula.clone();
    loop {
        *budget = budget.checked_sub(1).unwrap_or_else(|| {
            panic!("internal error: simplification did not terminate on {formula}")
        });
        let next = local_pass(&current);
        if next == current {
            return current;
        }
        current = next;
    }
}

/// Applies the local rewrites to a fixpoint. Used for
/// subformulas such as definition bodies, where the sentence-level rewrites
/// do not apply.
pub fn simplify_body(formula: &Formula) -> Formula {
    local_fixpoint(formula, &mut PASS_BUDGET.clone())
}

/// Simplifies a sentence: local rewrites to a fixpoint, then the root
/// rewrites, repeated until nothing changes.
pub fn simplify_formula(formula: &Formula) -> Formula {
    let mut budget = PASS_BUDGET;
    let mut current = formula.clone();
    loop {
        current = local_fixpoint(&current, &mut budget);
        let next = clause_to_implication(&negated_existential_to_clause(&current));
        if next == current {
            return current;
        }
        current = next;
    }
}

#[cfg(test)]
mod tests {
    use {
        super::*,
        crate::formula::{ArithOp, SetOp},
    };

    fn g(name: &str) -> Variable {
        Variable::general(name)
    }

    fn atom(p: &str, vars: &[&Variable]) -> Formula {
        Formula::atom(p, vars.iter().map(|v| Term::var(v)).collect())
    }

    fn interval(lo: Term, hi: Term) -> Term {
        Term::set(SetOp::Interval, lo, hi)
    }

    #[test]
    fn singleton_membership() {
        let v = g("V2");
        let f = Formula::implies(
            atom("q", &[&v]),
            Formula::membership(Term::var(&v), interval(Term::Integer(1), Term::Integer(1))),
        );
        assert_eq!(simplify_body(&f).to_string(), "q(V2) -> V2 = 1");
        let f = Formula::membership(Term::var(&v), Term::Symbol("a".into()));
        assert_eq!(simplify_body(&f).to_string(), "V2 = a");
    }

    #[test]
    fn empty_interval() {
        let f = Formula::membership(
            Term::var(&g("X")),
            interval(Term::Integer(3), Term::Integer(1)),
        );
        assert_eq!(simplify_body(&f), Formula::False);
    }

    #[test]
    fn symbolic_bounds_are_kept() {
        let f = Formula::membership(
            Term::var(&g("X")),
            interval(Term::Integer(2), Term::Symbol("n".into())),
        );
        assert_eq!(simplify_body(&f), f);
    }

    #[test]
    fn existential_equality() {
        let (z, i, j, s) = (
            g("Z"),
            Variable::integer("I"),
            Variable::integer("J"),
            g("S"),
        );
        let sum = Term::arith(ArithOp::Add, Term::var(&i), Term::var(&j));
        let f = Formula::exists(
            vec![z.clone()],
            Formula::conjoin([Formula::equal(Term::var(&z), sum), atom("in", &[&z, &s])]),
        );
        assert_eq!(simplify_body(&f).to_string(), "in((I + J), S)");

        // An integer variable cannot take a general value.
        let n = Variable::integer("N");
        let f = Formula::exists(
            vec![n.clone()],
            Formula::conjoin([
                Formula::equal(Term::var(&n), Term::var(&s)),
                atom("p", &[&n]),
            ]),
        );
        assert_eq!(simplify_body(&f), f);
    }

    #[test]
    fn constraint_becomes_clause() {
        let (v, c1, c2) = (g("V"), g("C1"), g("C2"));
        let f = Formula::not(Formula::exists(
            vec![v.clone(), c1.clone(), c2.clone()],
            Formula::conjoin([
                atom("color", &[&v, &c1]),
                atom("color", &[&v, &c2]),
                Formula::comparison(Relation::NotEqual, Term::var(&c1), Term::var(&c2)),
            ]),
        ));
        assert_eq!(
            simplify_formula(&f).to_string(),
            "forall U1, U2, U3 (not color(U1, U2) or not color(U1, U3) or U2 = U3)"
        );
    }

    #[test]
    fn two_literal_clause_becomes_implication() {
        let (v, u) = (g("V"), g("U"));
        let f = Formula::not(Formula::exists(
            vec![v.clone()],
            Formula::conjoin([
                atom("vertex", &[&v]),
                Formula::not(Formula::exists(vec![u.clone()], atom("color", &[&v, &u]))),
            ]),
        ));
        assert_eq!(
            simplify_formula(&f).to_string(),
            "forall U1 (vertex(U1) -> exists U2 color(U1, U2))"
        );
    }

    #[test]
    fn boolean_identities_and_pruning() {
        let (x, y) = (g("X"), g("Y"));
        let f = Formula::exists(
            vec![x.clone(), y.clone()],
            Formula::And(vec![
                Formula::True,
                Formula::not(Formula::not(atom("p", &[&x]))),
                Formula::Or(vec![Formula::False, atom("q", &[&x])]),
            ]),
        );
        assert_eq!(simplify_body(&f).to_string(), "exists U1 (p(U1) and q(U1))");
        let f = Formula::implies(atom("p", &[]), Formula::True);
        assert_eq!(simplify_body(&f), Formula::True);
        let f = Formula::iff(atom("p", &[]), Formula::False);
        assert_eq!(simplify_body(&f).to_string(), "not p");
    }

    #[test]
    fn ground_arithmetic_is_folded() {
        let x = g("X");
        let f = Formula::membership(
            Term::var(&x),
            Term::set(SetOp::Add, Term::Integer(1), Term::Integer(3)),
        );
        assert_eq!(simplify_body(&f).to_string(), "X = 4");
        let f = Formula::membership(
            Term::var(&x),
            Term::set(SetOp::Divide, Term::Integer(3), Term::Integer(0)),
        );
        assert_eq!(simplify_body(&f), Formula::False);
    }

    #[test]
    fn simplification_is_idempotent_on_sample_programs() {
        let (v, c1, c2) = (g("V"), g("C1"), g("C2"));
        let f = Formula::not(Formula::exists(
            vec![v.clone(), c1.clone(), c2.clone()],
            Formula::conjoin([
                atom("color", &[&v, &c1]),
                Formula::comparison(Relation::Less, Term::var(&c1), Term::var(&c2)),
            ]),
        ));
        let once = simplify_formula(&f);
        assert_eq!(simplify_formula(&once), once);
    }
}
