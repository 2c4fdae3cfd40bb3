//! Detection of argument positions and variables that only take integer values.

use {
    super::{bottom_up, normalize_term},
    crate::{
        completion::CompletionResult,
        formula::{Formula, IntegerAnnotation, Predicate, Relation, Sort, Term, Variable},
    },
    std::collections::BTreeSet,
};

type Annotations = BTreeSet<(Predicate, usize)>;

fn is_variable(term: &Term, x: &Variable) -> bool {
    matches!(term, Term::Variable(v) if v == x)
}

/// With `positive`, whether `formula` being true implies that `x` is an
/// integer; otherwise, whether `formula` being false implies it. Atoms give
/// this information at annotated argument positions.
fn forces_integer(
    formula: &Formula,
    x: &Variable,
    positive: bool,
    annotations: &Annotations,
) -> bool {
    match formula {
        Formula::Atom(atom) => {
            positive
                && atom.arguments.iter().enumerate().any(|(i, t)| {
                    is_variable(t, x) && annotations.contains(&(atom.predicate(), i + 1))
                })
        }
        Formula::Comparison { relation, lhs, rhs } => {
            let equality = if positive {
                Relation::Equal
            } else {
                Relation::NotEqual
            };
            *relation == equality
                && ((is_variable(lhs, x) && rhs.is_integer_valued())
                    || (is_variable(rhs, x) && lhs.is_integer_valued()))
        }
        // Every value of a set term is an integer.
        Formula::Membership { element, set } => {
            positive
                && is_variable(element, x)
                && (matches!(set, Term::Set { .. }) || set.is_integer_valued())
        }
        Formula::Not(f) => forces_integer(f, x, !positive, annotations),
        Formula::And(fs) | Formula::Or(fs) => {
            let any = matches!(formula, Formula::And(_)) == positive;
            if any {
                fs.iter()
                    .any(|f| forces_integer(f, x, positive, annotations))
            } else {
                !fs.is_empty()
                    && fs
                        .iter()
                        .all(|f| forces_integer(f, x, positive, annotations))
            }
        }
        Formula::Implies(a, b) => {
            if positive {
                forces_integer(a, x, false, annotations) && forces_integer(b, x, true, annotations)
            } else {
                forces_integer(a, x, true, annotations) || forces_integer(b, x, false, annotations)
            }
        }
        // Both sorts have nonempty domains, so a quantifier can be instantiated.
        Formula::Forall(vs, f) | Formula::Exists(vs, f) => {
            !vs.contains(x) && forces_integer(f, x, positive, annotations)
        }
        Formula::Iff(..) | Formula::True | Formula::False => false,
    }
}

fn resort(formula: &Formula, variable: &Variable) -> (Variable, Formula) {
    let integer = Variable::new(variable.name.clone(), Sort::Integer);
    let formula = formula
        .substitute(variable, &Term::var(&integer))
        .expect("integer variables are single-valued");
    (integer, formula)
}

/// Re-sorts quantified general variables as integer variables where this
/// does not change the meaning, given the annotations: an existential
/// variable whose body forces it to be an integer, and a universal variable
/// whose body can only be false when it is an integer.
pub fn narrow_quantifiers(formula: &Formula, annotations: &BTreeSet<IntegerAnnotation>) -> Formula {
    let annotations: Annotations = annotations
        .iter()
        .map(|a| (a.predicate.clone(), a.position))
        .collect();
    narrow(formula, &annotations)
}

fn narrow(formula: &Formula, annotations: &Annotations) -> Formula {
    bottom_up(formula, &|f| match f {
        Formula::Forall(ref vs, ref body) | Formula::Exists(ref vs, ref body)
            if vs.iter().any(|v| v.sort == Sort::General) =>
        {
            let universal = matches!(f, Formula::Forall(..));
            let mut body = (**body).clone();
            let variables = vs
                .iter()
                .map(|v| {
                    if v.sort == Sort::General && forces_integer(&body, v, !universal, annotations)
                    {
                        let (integer, narrowed) = resort(&body, v);
                        body = narrowed;
                        integer
                    } else {
                        v.clone()
                    }
                })
                .collect();
            if universal {
                Formula::Forall(variables, Box::new(body))
            } else {
                Formula::Exists(variables, Box::new(body))
            }
        }
        other => other,
    })
}

/// Turns set terms over single integers into arithmetic terms and
/// membership in a single-valued term into equality.
pub fn normalize_terms(formula: &Formula) -> Formula {
    bottom_up(formula, &|f| match f {
        Formula::Atom(atom) => Formula::atom(
            atom.predicate,
            atom.arguments.iter().map(normalize_term).collect(),
        ),
        Formula::Comparison { relation, lhs, rhs } => {
            Formula::comparison(relation, normalize_term(&lhs), normalize_term(&rhs))
        }
        Formula::Membership { element, set } => {
            let (element, set) = (normalize_term(&element), normalize_term(&set));
            if matches!(set, Term::Set { .. }) {
                Formula::membership(element, set)
            } else {
                Formula::equal(element, set)
            }
        }
        other => other,
    })
}

/// Finds argument positions of defined predicates that only hold integers,
/// re-sorts the corresponding head variables and narrows quantified
/// variables throughout. Predicates defined as identically false are not
/// annotated.
pub fn detect_integers(result: &CompletionResult) -> (CompletionResult, Vec<IntegerAnnotation>) {
    let mut result = result.clone();
    let mut annotations = Annotations::new();
    loop {
        let before = result.clone();

        // Least fixpoint: positions are only added, never removed.
        loop {
            let mut changed = false;
            for definition in &result.definitions {
                if definition.body == Formula::False {
                    continue;
                }
                for (i, head) in definition.head_variables.iter().enumerate() {
                    let key = (definition.predicate.clone(), i + 1);
                    if !annotations.contains(&key)
                        && (head.sort == Sort::Integer
                            || forces_integer(&definition.body, head, true, &annotations))
                    {
                        annotations.insert(key);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }

        for definition in &mut result.definitions {
            for i in 0..definition.head_variables.len() {
                let head = definition.head_variables[i].clone();
                if head.sort == Sort::General
                    && annotations.contains(&(definition.predicate.clone(), i + 1))
                {
                    let (integer, body) = resort(&definition.body, &head);
                    definition.head_variables[i] = integer;
                    definition.body = body;
                }
            }
            definition.body = normalize_terms(&narrow(&definition.body, &annotations));
        }
        for constraint in &mut result.constraints {
            *constraint = normalize_terms(&narrow(constraint, &annotations));
        }

        if result == before {
            break;
        }
    }

    let ordered = result
        .definitions
        .iter()
        .flat_map(|d| (1..=d.predicate.arity).map(move |k| (d.predicate.clone(), k)))
        .filter(|key| annotations.contains(key))
        .map(|(predicate, k)| IntegerAnnotation::new(predicate, k))
        .collect();
    (result, ordered)
}
