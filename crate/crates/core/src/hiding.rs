//! Elimination of predicates that are not shown, by substituting their
//! completed definitions for their occurrences.

use {
    crate::{
        completion::{CompletionResult, DefinitionKind},
        formula::{Formula, Predicate, Term, Variable},
        program::Program,
    },
    std::{
        collections::{BTreeMap, BTreeSet},
        fmt::{self, Display, Formatter},
    },
};

/// Edges run from each defined predicate to the predicates in its definition body.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PredicateDependencyGraph {
    pub edges: BTreeMap<Predicate, BTreeSet<Predicate>>,
}

impl PredicateDependencyGraph {
    pub fn new(result: &CompletionResult) -> Self {
        let mut edges: BTreeMap<Predicate, BTreeSet<Predicate>> = BTreeMap::new();
        for definition in &result.definitions {
            edges.insert(definition.predicate.clone(), definition.body.predicates());
        }
        for external in &result.externals {
            edges.entry(external.clone()).or_default();
        }
        PredicateDependencyGraph { edges }
    }

    pub fn successors(&self, predicate: &Predicate) -> impl Iterator<Item = &Predicate> {
        self.edges.get(predicate).into_iter().flatten()
    }

    /// Whether `predicate` reaches itself through predicates in `within`.
    pub fn on_cycle_within(&self, predicate: &Predicate, within: &BTreeSet<Predicate>) -> bool {
        let mut stack: Vec<&Predicate> = self.successors(predicate).collect();
        let mut seen = BTreeSet::new();
        while let Some(next) = stack.pop() {
            if next == predicate {
                return true;
            }
            if within.contains(next) && seen.insert(next) {
                stack.extend(self.successors(next));
            }
        }
        false
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Warning {
    CircularDependency(Predicate),
    IncompleteDefinition(Predicate),
}

impl Display for Warning {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Warning::CircularDependency(p) => {
                write!(f, "cannot hide predicate “{p}” due to circular dependency")
            }
            Warning::IncompleteDefinition(p) => {
                write!(f, "cannot hide predicate “{p}”: definition is not complete")
            }
        }
    }
}

/// Defined predicates that are not shown. Without `#show` directives every
/// predicate is shown.
pub fn hidden_predicates(result: &CompletionResult, program: &Program) -> BTreeSet<Predicate> {
    if !program.has_show_directive {
        return BTreeSet::new();
    }
    result
        .definitions
        .iter()
        .map(|d| d.predicate.clone())
        .filter(|p| !program.shows.contains(p))
        .collect()
}

/// Replaces every atom of `predicate` in `formula` by `body` instantiated
/// with the atom's arguments.
pub fn inline(
    formula: &Formula,
    predicate: &Predicate,
    head_variables: &[Variable],
    body: &Formula,
) -> Formula {
    formula.map_atoms(&mut |atom| {
        if atom.predicate != predicate.name || atom.arguments.len() != predicate.arity {
            return None;
        }
        let pairs: Vec<(Variable, Term)> = head_variables
            .iter()
            .cloned()
            .zip(atom.arguments.iter().cloned())
            .collect();
        Some(
            body.substitute_all(&pairs)
                .expect("atom arguments are single-valued and head variables general"),
        )
    })
}

/// Eliminates the hidden predicates one at a time, in definition order.
/// A predicate is kept, with a warning, when its definition is only an
/// implication or when its (partially inlined) definition refers to itself.
pub fn eliminate(
    result: &CompletionResult,
    hidden: &BTreeSet<Predicate>,
) -> (CompletionResult, Vec<Warning>) {
    let mut result = result.clone();
    let mut warnings = Vec::new();
    let candidates: Vec<Predicate> = result
        .definitions
        .iter()
        .map(|d| d.predicate.clone())
        .filter(|p| hidden.contains(p))
        .collect();

    for predicate in candidates {
        let index = result
            .definitions
            .iter()
            .position(|d| d.predicate == predicate)
            .expect("hidden predicates are defined");
        let definition = &result.definitions[index];
        if definition.kind == DefinitionKind::OnlyIf {
            warnings.push(Warning::IncompleteDefinition(predicate));
            continue;
        }
        if definition.body.mentions(&predicate) {
            warnings.push(Warning::CircularDependency(predicate));
            continue;
        }
        let definition = result.definitions.remove(index);
        for other in &mut result.definitions {
            other.body = inline(
                &other.body,
                &predicate,
                &definition.head_variables,
                &definition.body,
            );
        }
        for constraint in &mut result.constraints {
            *constraint = inline(
                constraint,
                &predicate,
                &definition.head_variables,
                &definition.body,
            );
        }
    }
    (result, warnings)
}

#[cfg(test)]
mod tests {
    use {
        super::*,
        crate::{
            completion::complete, formula::Printer, program::parse_program,
            translation::translate_rule,
        },
    };

    fn completion(source: &str) -> (CompletionResult, Program) {
        let program = parse_program(source).unwrap();
        let rules: Vec<_> = program.rules.iter().map(translate_rule).collect();
        (complete(&rules, &program).unwrap(), program)
    }

    fn printed(result: &CompletionResult) -> Vec<String> {
        let mut printer = Printer::new();
        let mut out: Vec<String> = result
            .definitions
            .iter()
            .map(|d| printer.definition(&d.to_formula()))
            .collect();
        out.extend(result.constraints.iter().map(|c| printer.formula(c)));
        out
    }

    const UNION_DIFFERENCE: &str = "s(X) :- p(X). s(X) :- q(X). u(X) :- r(X), not s(X).
        #show u/1. #external p(1). #external q(1). #external r(1).";

    #[test]
    fn hidden_sets() {
        let (result, program) = completion(UNION_DIFFERENCE);
        assert_eq!(
            hidden_predicates(&result, &program),
            BTreeSet::from([Predicate::new("s", 1)])
        );
        let (result, program) = completion("s(X) :- p(X). #external p(1).");
        assert!(hidden_predicates(&result, &program).is_empty());
        let (result, program) =
            completion("letter(a). {p(1..3, Y)} :- letter(Y). q(X) :- p(X, _). #show p/2.");
        assert_eq!(
            hidden_predicates(&result, &program),
            BTreeSet::from([Predicate::new("letter", 1), Predicate::new("q", 1)])
        );
    }

    #[test]
    fn substitution_of_definitions() {
        let (result, program) = completion(UNION_DIFFERENCE);
        let (result, warnings) = eliminate(&result, &hidden_predicates(&result, &program));
        assert!(warnings.is_empty());
        assert_eq!(
            printed(&result),
            ["forall V1 (u(V1) <-> (r(V1) and not (p(V1) or q(V1))))"]
        );
    }

    #[test]
    fn circular_dependency() {
        let (result, program) = completion("p :- not q. q :- not p. r :- not p. #show r/0.");
        let (result, warnings) = eliminate(&result, &hidden_predicates(&result, &program));
        assert_eq!(
            warnings.iter().map(ToString::to_string).collect::<Vec<_>>(),
            ["cannot hide predicate “q/0” due to circular dependency"]
        );
        assert_eq!(printed(&result), ["q <-> not not q", "r <-> not not q"]);
    }

    #[test]
    fn incomplete_definition() {
        let (result, program) = completion("{p}. r :- p. #show r/0.");
        let (result, warnings) = eliminate(&result, &hidden_predicates(&result, &program));
        assert_eq!(
            warnings.iter().map(ToString::to_string).collect::<Vec<_>>(),
            ["cannot hide predicate “p/0”: definition is not complete"]
        );
        assert_eq!(printed(&result), ["p -> #true", "r <-> p"]);
    }

    #[test]
    fn nothing_hidden_is_identity() {
        let (result, _) = completion(UNION_DIFFERENCE);
        let (eliminated, warnings) = eliminate(&result, &BTreeSet::new());
        assert_eq!(eliminated, result);
        assert!(warnings.is_empty());
    }

    #[test]
    fn dependency_graph() {
        let (result, _) = completion("p :- not q. q :- not p. r :- not p. #show r/0.");
        let graph = PredicateDependencyGraph::new(&result);
        let (p, q, r) = (
            Predicate::new("p", 0),
            Predicate::new("q", 0),
            Predicate::new("r", 0),
        );
        let hidden = BTreeSet::from([p.clone(), q.clone()]);
        assert!(graph.on_cycle_within(&p, &hidden));
        assert!(!graph.on_cycle_within(&r, &hidden));
        assert!(!graph.on_cycle_within(&p, &BTreeSet::new()));
    }
}
