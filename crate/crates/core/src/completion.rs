//! Clark completion of translated rules.

use {
    crate::{
        formula::{Formula, Predicate, Sort, Term, Variable},
        program::Program,
        translation::{RuleFormula, RuleHead},
    },
    std::collections::BTreeSet,
    thiserror::Error,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DefinitionKind {
    /// `p(V) <-> body`
    Iff,
    /// `p(V) -> body`, for predicates defined by choice rules only.
    OnlyIf,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletedDefinition {
    pub predicate: Predicate,
    pub head_variables: Vec<Variable>,
    pub kind: DefinitionKind,
    pub body: Formula,
}

impl CompletedDefinition {
    pub fn head(&self) -> Formula {
        Formula::atom(
            self.predicate.name.clone(),
            self.head_variables.iter().map(Term::var).collect(),
        )
    }

    pub fn to_formula(&self) -> Formula {
        let connective = match self.kind {
            DefinitionKind::Iff => Formula::iff,
            DefinitionKind::OnlyIf => Formula::implies,
        };
        Formula::forall(
            self.head_variables.clone(),
            connective(self.head(), self.body.clone()),
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompletionResult {
    pub definitions: Vec<CompletedDefinition>,
    pub constraints: Vec<Formula>,
    pub externals: BTreeSet<Predicate>,
}

impl CompletionResult {
    pub fn definition(&self, predicate: &Predicate) -> Option<&CompletedDefinition> {
        self.definitions.iter().find(|d| &d.predicate == predicate)
    }

    /// All output sentences: definitions followed by constraints.
    pub fn formulas(&self) -> Vec<Formula> {
        self.definitions
            .iter()
            .map(CompletedDefinition::to_formula)
            .chain(self.constraints.iter().cloned())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CompletionError {
    #[error("external predicate {0} occurs in a rule head")]
    ExternalInHead(Predicate),
}

/// Completes the definitions of all non-external predicates of `program`,
/// given the translations of its rules in source order.
pub fn complete(
    rules: &[RuleFormula],
    program: &Program,
) -> Result<CompletionResult, CompletionError> {
    let mut order: Vec<Predicate> = Vec::new();
    for rule in rules {
        if let Some(predicate) = rule.head.predicate() {
            if program.is_external(predicate) {
                return Err(CompletionError::ExternalInHead(predicate.clone()));
            }
            if !order.contains(predicate) {
                order.push(predicate.clone());
            }
        }
    }
    for predicate in program.predicates() {
        if !program.is_external(&predicate) && !order.contains(&predicate) {
            order.push(predicate);
        }
    }

    let definitions = order
        .into_iter()
        .map(|predicate| {
            let head_variables: Vec<Variable> = (0..predicate.arity)
                .map(|_| Variable::fresh("V", Sort::General))
                .collect();
            let head = Formula::atom(
                predicate.name.clone(),
                head_variables.iter().map(Term::var).collect(),
            );
            let contributing: Vec<&RuleFormula> = rules
                .iter()
                .filter(|r| r.head.predicate() == Some(&predicate))
                .collect();
            let has_definite = contributing
                .iter()
                .any(|r| matches!(r.head, RuleHead::Definite { .. }));
            let kind = if contributing.is_empty() || has_definite {
                DefinitionKind::Iff
            } else {
                DefinitionKind::OnlyIf
            };
            let disjuncts = contributing.iter().map(|rule| {
                let renaming: Vec<(Variable, Term)> = rule
                    .head
                    .variables()
                    .iter()
                    .cloned()
                    .zip(head_variables.iter().map(Term::var))
                    .collect();
                let body = rule
                    .body
                    .substitute_all(&renaming)
                    .expect("general variables accept any single-valued term");
                match rule.head {
                    RuleHead::Choice { .. } if has_definite => {
                        Formula::conjoin([body, head.clone()])
                    }
                    _ => body,
                }
            });
            CompletedDefinition {
                predicate,
                head_variables: head_variables.clone(),
                kind,
                body: Formula::disjoin(disjuncts),
            }
        })
        .collect();

    let constraints = rules
        .iter()
        .filter(|r| r.head == RuleHead::Constraint)
        .map(|r| Formula::not(r.body.clone()))
        .collect();

    Ok(CompletionResult {
        definitions,
        constraints,
        externals: program.externals.clone(),
    })
}
