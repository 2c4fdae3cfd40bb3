use {
    super::{Domain, GroundAtom, Interpretation, OracleError, GUESS_BUDGET},
    crate::{
        formula::{Atom, Formula, IntegerAnnotation, Predicate, Sort, Term, Variable},
        translation::{term_values, Value},
    },
    std::collections::{BTreeSet, HashMap},
};

type Environment = Vec<(Variable, Value)>;

fn values_of(term: &Term, environment: &Environment) -> crate::translation::ValueSet {
    term_values(term, &|v: &Variable| {
        environment
            .iter()
            .rev()
            .find(|(bound, _)| bound == v)
            .map(|(_, value)| value.clone())
    })
}

fn single(term: &Term, environment: &Environment) -> Option<Value> {
    values_of(term, environment).as_single()
}

fn ground_atom(atom: &Atom, environment: &Environment) -> Option<GroundAtom> {
    let arguments = atom
        .arguments
        .iter()
        .map(|t| single(t, environment))
        .collect::<Option<Vec<Value>>>()?;
    Some(GroundAtom::new(atom.predicate.clone(), arguments))
}

/// Three-valued (strong Kleene) evaluation; `None` is unknown.
struct Evaluator<'a> {
    domain: &'a Domain,
    atom: &'a dyn Fn(&GroundAtom) -> Option<bool>,
}

impl Evaluator<'_> {
    fn range(&self, sort: Sort) -> Vec<Value> {
        match sort {
            Sort::General => self.domain.values().iter().cloned().collect(),
            Sort::Integer => self.domain.integers().collect(),
        }
    }

    fn eval(&self, formula: &Formula, environment: &mut Environment) -> Option<bool> {
        match formula {
            Formula::True => Some(true),
            Formula::False => Some(false),
            Formula::Atom(atom) => match ground_atom(atom, environment) {
                Some(atom) => (self.atom)(&atom),
                None => Some(false),
            },
            Formula::Comparison { relation, lhs, rhs } => {
                match (single(lhs, environment), single(rhs, environment)) {
                    (Some(l), Some(r)) => Some(relation.holds(&l, &r)),
                    _ => Some(false),
                }
            }
            Formula::Membership { element, set } => Some(
                single(element, environment)
                    .is_some_and(|v| values_of(set, environment).contains(&v)),
            ),
            Formula::Not(f) => self.eval(f, environment).map(|b| !b),
            Formula::And(fs) => self.all(fs.iter().map(|f| (f, false)), environment),
            Formula::Or(fs) => self
                .all(fs.iter().map(|f| (f, true)), environment)
                .map(|b| !b),
            Formula::Implies(a, b) => {
                let (a, b) = (self.eval(a, environment), self.eval(b, environment));
                match (a, b) {
                    (Some(false), _) | (_, Some(true)) => Some(true),
                    (Some(true), Some(false)) => Some(false),
                    _ => None,
                }
            }
            Formula::Iff(a, b) => {
                let a = self.eval(a, environment)?;
                self.eval(b, environment).map(|b| a == b)
            }
            Formula::Forall(vs, f) => self.quantify(vs, f, true, environment),
            Formula::Exists(vs, f) => self.quantify(vs, f, false, environment),
        }
    }

    /// Conjunction of the formulas, each negated when its flag is set.
    fn all<'f>(
        &self,
        formulas: impl Iterator<Item = (&'f Formula, bool)>,
        environment: &mut Environment,
    ) -> Option<bool> {
        let mut unknown = false;
        for (f, negate) in formulas {
            match self.eval(f, environment) {
                Some(b) if b == negate => return Some(false),
                Some(_) => (),
                None => unknown = true,
            }
        }
        if unknown {
            None
        } else {
            Some(true)
        }
    }

    fn quantify(
        &self,
        variables: &[Variable],
        body: &Formula,
        universal: bool,
        environment: &mut Environment,
    ) -> Option<bool> {
        let Some((first, rest)) = variables.split_first() else {
            return self.eval(body, environment);
        };
        let mut unknown = false;
        for value in self.range(first.sort) {
            environment.push((first.clone(), value));
            let result = self.quantify(rest, body, universal, environment);
            environment.pop();
            match result {
                Some(b) if b != universal => return Some(b),
                Some(_) => (),
                None => unknown = true,
            }
        }
        if unknown {
            None
        } else {
            Some(universal)
        }
    }
}

/// Truth of a closed formula in an interpretation. General quantifiers range
/// over the domain, integer quantifiers over its integer window.
pub fn evaluate(formula: &Formula, interpretation: &Interpretation, domain: &Domain) -> bool {
    let atom = |a: &GroundAtom| Some(interpretation.contains(a));
    Evaluator {
        domain,
        atom: &atom,
    }
    .eval(formula, &mut Vec::new())
    .expect("two-valued interpretation")
}

/// Recognizes `forall X1, ..., Xn (p(X1, ..., Xn) <-> F)`, or `->`, with
/// distinct head variables; the flag tells whether it is an equivalence.
fn as_definition(formula: &Formula) -> Option<(&Atom, &Formula, bool)> {
    let (variables, inner): (&[Variable], &Formula) = match formula {
        Formula::Forall(vs, f) => (vs, f),
        other => (&[], other),
    };
    let (head, body, complete) = match inner {
        Formula::Iff(h, b) => (h, b, true),
        Formula::Implies(h, b) => (h, b, false),
        _ => return None,
    };
    let Formula::Atom(atom) = &**head else {
        return None;
    };
    let mut seen = Vec::new();
    for argument in &atom.arguments {
        match argument {
            Term::Variable(v) if variables.contains(v) && !seen.contains(&v) => seen.push(v),
            _ => return None,
        }
    }
    (seen.len() == variables.len()).then_some((atom, &**body, complete))
}

fn tuples(domain: &Domain, arity: usize) -> Vec<Vec<Value>> {
    let mut out: Vec<Vec<Value>> = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .iter()
            .flat_map(|t| {
                domain.values().iter().map(move |v| {
                    let mut t = t.clone();
                    t.push(v.clone());
                    t
                })
            })
            .collect();
    }
    out
}

struct Search<'a> {
    domain: &'a Domain,
    sentences: &'a [Formula],
    atoms: Vec<GroundAtom>,
    index: HashMap<GroundAtom, usize>,
    externals: &'a BTreeSet<Predicate>,
    external_input: &'a Interpretation,
    /// Per atom: (definition, environment binding its head variables).
    definitions: Vec<Vec<(&'a Formula, bool, Environment)>>,
    /// Atoms that an annotation forces to be false.
    excluded: Vec<bool>,
    leaves: usize,
    models: BTreeSet<Interpretation>,
}

const LEAF_BUDGET: usize = 1 << GUESS_BUDGET;

impl Search<'_> {
    fn value(&self, atom: &GroundAtom, assignment: &[Option<bool>]) -> Option<bool> {
        if self.externals.contains(&atom.predicate()) {
            return Some(self.external_input.contains(atom));
        }
        match self.index.get(atom) {
            Some(&i) => assignment[i],
            None => Some(false),
        }
    }

    /// Values some sentence forces, given the assignment so far; `None` on conflict.
    fn propagate(&self, assignment: &mut [Option<bool>]) -> Option<()> {
        loop {
            let mut changed = false;
            for i in 0..self.atoms.len() {
                let mut forced = None;
                if self.excluded[i] {
                    forced = Some(false);
                }
                for (body, complete, environment) in &self.definitions[i] {
                    let lookup = |a: &GroundAtom| self.value(a, assignment);
                    let evaluator = Evaluator {
                        domain: self.domain,
                        atom: &lookup,
                    };
                    let value = evaluator.eval(body, &mut environment.clone());
                    let implied = match (value, complete) {
                        (Some(b), true) => Some(b),
                        (Some(false), false) => Some(false),
                        _ => None,
                    };
                    if let Some(b) = implied {
                        if forced.is_some_and(|f| f != b) {
                            return None;
                        }
                        forced = Some(b);
                    }
                }
                match (forced, assignment[i]) {
                    (Some(f), Some(a)) if f != a => return None,
                    (Some(f), None) => {
                        assignment[i] = Some(f);
                        changed = true;
                    }
                    _ => (),
                }
            }
            if !changed {
                return Some(());
            }
        }
    }

    fn run(&mut self, mut assignment: Vec<Option<bool>>) -> Result<(), OracleError> {
        if self.propagate(&mut assignment).is_none() {
            return Ok(());
        }
        match assignment.iter().position(Option::is_none) {
            Some(i) => {
                for b in [false, true] {
                    let mut next = assignment.clone();
                    next[i] = Some(b);
                    self.run(next)?;
                }
                Ok(())
            }
            None => {
                self.leaves += 1;
                if self.leaves > LEAF_BUDGET {
                    return Err(OracleError::Budget {
                        count: self.leaves,
                        budget: LEAF_BUDGET,
                    });
                }
                let lookup = |a: &GroundAtom| self.value(a, &assignment);
                let evaluator = Evaluator {
                    domain: self.domain,
                    atom: &lookup,
                };
                if self
                    .sentences
                    .iter()
                    .all(|f| evaluator.eval(f, &mut Vec::new()) == Some(true))
                {
                    self.models.insert(
                        self.atoms
                            .iter()
                            .zip(&assignment)
                            .filter(|(_, v)| **v == Some(true))
                            .map(|(a, _)| a.clone())
                            .collect(),
                    );
                }
                Ok(())
            }
        }
    }
}

/// All interpretations over the domain that satisfy the sentences and the
/// expanded annotations and agree with `external_input` on the external
/// predicates. Only predicates occurring in the sentences can be true.
///
/// Atoms fixed by a definition are not enumerated: an atom whose
/// definition body is already true or false takes that value.
pub fn formula_models(
    sentences: &[Formula],
    annotations: &[IntegerAnnotation],
    domain: &Domain,
    externals: &BTreeSet<Predicate>,
    external_input: &Interpretation,
) -> Result<BTreeSet<Interpretation>, OracleError> {
    let mut all: Vec<Formula> = sentences.to_vec();
    all.extend(annotations.iter().map(IntegerAnnotation::expand));

    let mut predicates = BTreeSet::new();
    for sentence in &all {
        predicates.extend(sentence.predicates());
    }
    let atoms: Vec<GroundAtom> = predicates
        .iter()
        .filter(|p| !externals.contains(p))
        .flat_map(|p| {
            tuples(domain, p.arity)
                .into_iter()
                .map(|t| GroundAtom::new(p.name.clone(), t))
        })
        .collect();
    let index: HashMap<GroundAtom, usize> = atoms
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, a)| (a, i))
        .collect();

    let (lo, hi) = domain.window();
    let fits = |v: &Variable, value: &Value| match v.sort {
        Sort::General => true,
        Sort::Integer => value.as_integer().is_some_and(|n| lo <= n && n <= hi),
    };
    let mut definitions: Vec<Vec<(&Formula, bool, Environment)>> = vec![Vec::new(); atoms.len()];
    let mut excluded = vec![false; atoms.len()];
    for (i, atom) in atoms.iter().enumerate() {
        for (head, body, complete) in sentences.iter().filter_map(as_definition) {
            if head.predicate() != atom.predicate() {
                continue;
            }
            let environment: Environment = head
                .arguments
                .iter()
                .zip(&atom.arguments)
                .filter_map(|(t, value)| match t {
                    Term::Variable(v) => Some((v.clone(), value.clone())),
                    _ => None,
                })
                .collect();
            if environment.iter().all(|(v, value)| fits(v, value)) {
                definitions[i].push((body, complete, environment));
            }
        }
        excluded[i] = annotations.iter().any(|a| {
            a.predicate == atom.predicate() && atom.arguments[a.position - 1].as_integer().is_none()
        });
    }

    let mut search = Search {
        domain,
        sentences: &all,
        atoms,
        index,
        externals,
        external_input,
        definitions,
        excluded,
        leaves: 0,
        models: BTreeSet::new(),
    };
    let assignment = vec![None; search.atoms.len()];
    search.run(assignment)?;
    Ok(search.models)
}
