use super::{parser::ParseError, BodyLiteral, ComparisonOperator, ProgramTerm, Rule};

/// A variable is bound when it is a whole argument of a positive body atom, or
/// when it is one side of an equality whose other side only has bound variables.
pub(super) fn check_rule(rule: &Rule) -> Result<(), ParseError> {
    let unsafe_error = |variable: &str| ParseError::Unsafe {
        rule: rule.to_string(),
        variable: variable.to_string(),
    };

    if let Some(atom) = rule.head.atom() {
        if atom.arguments.iter().any(ProgramTerm::contains_anonymous) {
            return Err(unsafe_error("_"));
        }
    }

    let mut bound: Vec<String> = Vec::new();
    for literal in &rule.body {
        match literal {
            BodyLiteral::Positive(atom) => {
                for argument in &atom.arguments {
                    if let ProgramTerm::Variable(name) = argument {
                        if !bound.contains(name) {
                            bound.push(name.clone());
                        }
                    }
                }
            }
            BodyLiteral::Negative(atom) => {
                if atom.arguments.iter().any(ProgramTerm::contains_anonymous) {
                    return Err(unsafe_error("_"));
                }
            }
            BodyLiteral::Comparison { lhs, rhs, .. } => {
                if lhs.contains_anonymous() || rhs.contains_anonymous() {
                    return Err(unsafe_error("_"));
                }
            }
        }
    }

    loop {
        let mut changed = false;
        for literal in &rule.body {
            let BodyLiteral::Comparison {
                op: ComparisonOperator::Equal,
                lhs,
                rhs,
            } = literal
            else {
                continue;
            };
            for (side, other) in [(lhs, rhs), (rhs, lhs)] {
                let ProgramTerm::Variable(name) = side else {
                    continue;
                };
                if bound.contains(name) {
                    continue;
                }
                let mut needed = Vec::new();
                other.variables(&mut needed);
                if needed.iter().all(|v| bound.contains(v)) {
                    bound.push(name.clone());
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }

    match rule.variables().into_iter().find(|v| !bound.contains(v)) {
        Some(variable) => Err(unsafe_error(&variable)),
        None => Ok(()),
    }
}
