use {
    super::{Domain, GroundAtom, Interpretation},
    crate::{
        program::{Atom, BodyLiteral, Head, Program, ProgramTerm, Rule},
        translation::{Value, ValueSet},
    },
    std::{
        collections::{BTreeMap, BTreeSet},
        fmt::{self, Display, Formatter},
    },
};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroundHead {
    Atom(GroundAtom),
    Choice(GroundAtom),
    Empty,
}

impl GroundHead {
    pub fn atom(&self) -> Option<&GroundAtom> {
        match self {
            GroundHead::Atom(a) | GroundHead::Choice(a) => Some(a),
            GroundHead::Empty => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundRule {
    pub head: GroundHead,
    pub positive: BTreeSet<GroundAtom>,
    pub negative: BTreeSet<GroundAtom>,
}

impl Display for GroundRule {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match &self.head {
            GroundHead::Atom(a) => write!(f, "{a}")?,
            GroundHead::Choice(a) => write!(f, "{{{a}}}")?,
            GroundHead::Empty => (),
        }
        let body: Vec<String> = self
            .positive
            .iter()
            .map(ToString::to_string)
            .chain(self.negative.iter().map(|a| format!("not {a}")))
            .collect();
        if !body.is_empty() {
            if self.head != GroundHead::Empty {
                write!(f, " ")?;
            }
            write!(f, ":- {}", body.join(", "))?;
        } else if self.head == GroundHead::Empty {
            write!(f, ":-")?;
        }
        write!(f, ".")
    }
}

/// A set of ground rules; duplicate instances collapse.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroundProgram {
    pub rules: BTreeSet<GroundRule>,
}

impl GroundProgram {
    pub fn atoms(&self) -> BTreeSet<GroundAtom> {
        let mut out = BTreeSet::new();
        for rule in &self.rules {
            out.extend(rule.head.atom().cloned());
            out.extend(rule.positive.iter().cloned());
            out.extend(rule.negative.iter().cloned());
        }
        out
    }
}

impl Display for GroundProgram {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        for rule in &self.rules {
            writeln!(f, "{rule}")?;
        }
        Ok(())
    }
}

type Assignment = BTreeMap<String, Value>;

fn term_values(term: &ProgramTerm, assignment: &Assignment) -> ValueSet {
    match term {
        ProgramTerm::Integer(n) => ValueSet::single(Value::Integer(*n)),
        ProgramTerm::Symbol(s) => ValueSet::single(Value::Symbol(s.clone())),
        ProgramTerm::Variable(v) => assignment
            .get(v)
            .cloned()
            .map_or_else(ValueSet::empty, ValueSet::single),
        ProgramTerm::Anonymous => ValueSet::empty(),
        ProgramTerm::Binary { op, lhs, rhs } => ValueSet::apply(
            *op,
            &term_values(lhs, assignment),
            &term_values(rhs, assignment),
        ),
    }
}

/// Every ground atom obtained by choosing one value per argument.
fn atom_instances(atom: &Atom, assignment: &Assignment) -> Vec<GroundAtom> {
    let mut tuples: Vec<Vec<Value>> = vec![Vec::new()];
    for argument in &atom.arguments {
        let values = term_values(argument, assignment).to_set();
        tuples = tuples
            .iter()
            .flat_map(|t| {
                values.iter().map(move |v| {
                    let mut t = t.clone();
                    t.push(v.clone());
                    t
                })
            })
            .collect();
    }
    tuples
        .into_iter()
        .map(|arguments| GroundAtom::new(atom.predicate.clone(), arguments))
        .collect()
}

/// Gives each anonymous variable a name of its own.
fn name_anonymous(rule: &Rule) -> Rule {
    fn term(t: &ProgramTerm, counter: &mut usize) -> ProgramTerm {
        match t {
            ProgramTerm::Anonymous => {
                *counter += 1;
                ProgramTerm::Variable(format!("_#{counter}"))
            }
            ProgramTerm::Binary { op, lhs, rhs } => {
                ProgramTerm::binary(*op, term(lhs, counter), term(rhs, counter))
            }
            other => other.clone(),
        }
    }
    let mut counter = 0;
    let mut atom = |a: &Atom| {
        Atom::new(
            a.predicate.clone(),
            a.arguments.iter().map(|t| term(t, &mut counter)).collect(),
        )
    };
    let head = match &rule.head {
        Head::Basic(a) => Head::Basic(atom(a)),
        Head::Choice(a) => Head::Choice(atom(a)),
        Head::Empty => Head::Empty,
    };
    let body = rule
        .body
        .iter()
        .map(|l| match l {
            BodyLiteral::Positive(a) => BodyLiteral::Positive(atom(a)),
            BodyLiteral::Negative(a) => BodyLiteral::Negative(atom(a)),
            other => other.clone(),
        })
        .collect();
    Rule { head, body }
}

enum Literal {
    Positive(GroundAtom),
    Negative(GroundAtom),
}

/// Instantiates every rule for every assignment of domain values to its
/// variables. A literal over a multi-valued term yields one rule instance per
/// value; comparisons and external atoms are evaluated away.
pub fn ground(
    program: &Program,
    domain: &Domain,
    external_input: &Interpretation,
) -> GroundProgram {
    let mut rules = BTreeSet::new();
    let values: Vec<&Value> = domain.values().iter().collect();
    for rule in &program.rules {
        let rule = name_anonymous(rule);
        let variables = rule.variables();
        if !variables.is_empty() && values.is_empty() {
            continue;
        }
        let mut indices = vec![0; variables.len()];
        'assignments: loop {
            let assignment: Assignment = variables
                .iter()
                .cloned()
                .zip(indices.iter().map(|&i| values[i].clone()))
                .collect();
            ground_instance(&rule, &assignment, program, external_input, &mut rules);

            // Next assignment in lexicographic order.
            for position in (0..indices.len()).rev() {
                indices[position] += 1;
                if indices[position] < values.len() {
                    continue 'assignments;
                }
                indices[position] = 0;
            }
            break;
        }
    }
    GroundProgram { rules }
}

fn ground_instance(
    rule: &Rule,
    assignment: &Assignment,
    program: &Program,
    external_input: &Interpretation,
    out: &mut BTreeSet<GroundRule>,
) {
    // One list of alternatives per body literal; literals that hold for some
    // choice of values without needing an atom contribute no alternative list.
    let mut alternatives: Vec<Vec<Literal>> = Vec::new();
    for literal in &rule.body {
        match literal {
            BodyLiteral::Positive(atom) | BodyLiteral::Negative(atom) => {
                let positive = matches!(literal, BodyLiteral::Positive(_));
                let instances = atom_instances(atom, assignment);
                if program.is_external(&atom.predicate()) {
                    if !instances
                        .iter()
                        .any(|a| external_input.contains(a) == positive)
                    {
                        return;
                    }
                } else if instances.is_empty() {
                    return;
                } else {
                    alternatives.push(
                        instances
                            .into_iter()
                            .map(|a| {
                                if positive {
                                    Literal::Positive(a)
                                } else {
                                    Literal::Negative(a)
                                }
                            })
                            .collect(),
                    );
                }
            }
            BodyLiteral::Comparison { op, lhs, rhs } => {
                let lhs = term_values(lhs, assignment).to_set();
                let rhs = term_values(rhs, assignment).to_set();
                if !lhs.iter().any(|l| rhs.iter().any(|r| op.holds(l, r))) {
                    return;
                }
            }
        }
    }

    let heads: Vec<GroundHead> = match &rule.head {
        Head::Basic(atom) => atom_instances(atom, assignment)
            .into_iter()
            .map(GroundHead::Atom)
            .collect(),
        Head::Choice(atom) => atom_instances(atom, assignment)
            .into_iter()
            .map(GroundHead::Choice)
            .collect(),
        Head::Empty => vec![GroundHead::Empty],
    };

    let mut bodies: Vec<(BTreeSet<GroundAtom>, BTreeSet<GroundAtom>)> =
        vec![(BTreeSet::new(), BTreeSet::new())];
    for options in &alternatives {
        bodies = bodies
            .iter()
            .flat_map(|(positive, negative)| {
                options.iter().map(move |literal| {
                    let (mut positive, mut negative) = (positive.clone(), negative.clone());
                    match literal {
                        Literal::Positive(a) => positive.insert(a.clone()),
                        Literal::Negative(a) => negative.insert(a.clone()),
                    };
                    (positive, negative)
                })
            })
            .collect();
    }
    for head in &heads {
        for (positive, negative) in &bodies {
            out.insert(GroundRule {
                head: head.clone(),
                positive: positive.clone(),
                negative: negative.clone(),
            });
        }
    }
}

/// A cycle in the positive dependency graph, from heads to positive body
/// atoms, listed from its first atom back to that atom.
pub fn find_cycle(program: &GroundProgram) -> Option<Vec<GroundAtom>> {
    let mut edges: BTreeMap<&GroundAtom, BTreeSet<&GroundAtom>> = BTreeMap::new();
    for rule in &program.rules {
        if let Some(head) = rule.head.atom() {
            edges.entry(head).or_default().extend(rule.positive.iter());
        }
    }

    #[derive(Clone, Copy, PartialEq)]
    enum State {
        Active,
        Done,
    }
    let mut state: BTreeMap<&GroundAtom, State> = BTreeMap::new();
    for &start in edges.keys() {
        if state.contains_key(start) {
            continue;
        }
        // Iterative depth-first search keeping the current path.
        let mut path: Vec<&GroundAtom> = vec![start];
        let mut pending: Vec<Vec<&GroundAtom>> = vec![edges[start].iter().copied().collect()];
        state.insert(start, State::Active);
        while let Some(successors) = pending.last_mut() {
            match successors.pop() {
                Some(next) => match state.get(next) {
                    Some(State::Active) => {
                        let from = path.iter().position(|&a| a == next).unwrap();
                        let mut cycle: Vec<GroundAtom> =
                            path[from..].iter().map(|&a| a.clone()).collect();
                        cycle.push(next.clone());
                        return Some(cycle);
                    }
                    Some(State::Done) => (),
                    None => {
                        state.insert(next, State::Active);
                        path.push(next);
                        pending.push(
                            edges
                                .get(next)
                                .map(|s| s.iter().copied().collect())
                                .unwrap_or_default(),
                        );
                    }
                },
                None => {
                    let done = path.pop().unwrap();
                    state.insert(done, State::Done);
                    pending.pop();
                }
            }
        }
    }
    None
}

pub fn is_tight(program: &GroundProgram) -> bool {
    find_cycle(program).is_none()
}

#[cfg(test)]
mod tests {
    use {super::*, crate::program::parse_program};

    fn grounded(source: &str, domain: &Domain, externals: &Interpretation) -> Vec<String> {
        let program = parse_program(source).unwrap();
        ground(&program, domain, externals)
            .rules
            .iter()
            .map(ToString::to_string)
            .collect()
    }

    fn symbols(names: &[&str]) -> Domain {
        Domain::symbols(names.iter().copied(), (0, 0))
    }

    #[test]
    fn ground_facts_and_choices() {
        assert_eq!(
            grounded("p(a). {q(a)}.", &symbols(&["a"]), &Interpretation::new()),
            ["p(a).", "{q(a)}."]
        );
    }

    #[test]
    fn intervals_expand() {
        let domain = Domain::new([], (0, 3));
        assert_eq!(
            grounded("q(X) :- X = 1..2.", &domain, &Interpretation::new()),
            ["q(1).", "q(2)."]
        );
        assert_eq!(
            grounded(
                "composite(I * J) :- I = 2..3, J = 2..3.",
                &domain,
                &Interpretation::new()
            ),
            ["composite(4).", "composite(6).", "composite(9)."]
        );
    }

    #[test]
    fn multi_valued_body_atoms_give_one_instance_per_value() {
        let domain = Domain::new([], (0, 0));
        assert_eq!(
            grounded("q :- p(1..2).", &domain, &Interpretation::new()),
            ["q :- p(1).", "q :- p(2)."]
        );
        assert_eq!(
            grounded("q :- p(1/0).", &domain, &Interpretation::new()),
            Vec::<String>::new()
        );
    }

    #[test]
    fn externals_are_evaluated() {
        let input = Interpretation::from([GroundAtom::new("p", vec![Value::Symbol("a".into())])]);
        assert_eq!(
            grounded(
                "s(X) :- p(X). u(X) :- r(X), not p(X). #external p(1).",
                &symbols(&["a", "b"]),
                &input
            ),
            ["s(a).", "u(0) :- r(0).", "u(b) :- r(b)."]
        );
    }

    #[test]
    fn anonymous_variables_are_projected() {
        let domain = symbols(&["a", "b"]);
        assert_eq!(
            grounded(
                "p(a, b). p(a, a). q(X) :- p(X, _).",
                &domain,
                &Interpretation::new()
            )
            .len(),
            2 + 3 * 3
        );
    }

    #[test]
    fn tightness() {
        let domain = symbols(&["a"]);
        let program = |s: &str| ground(&parse_program(s).unwrap(), &domain, &Interpretation::new());
        let cycle = find_cycle(&program("p :- q. q :- p.")).unwrap();
        assert_eq!(cycle.first(), cycle.last());
        assert_eq!(cycle.len(), 3);
        assert!(!is_tight(&program("p :- p.")));
        assert!(is_tight(&program("s(X) :- p(X). s(X) :- q(X).")));
        assert!(is_tight(&program("p :- not q. q :- not p.")));
        assert!(is_tight(&GroundProgram::default()));
        assert!(!is_tight(&program("{p} :- p.")));
    }
}
