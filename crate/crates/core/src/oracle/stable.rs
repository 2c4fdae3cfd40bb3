use {
    super::{GroundAtom, GroundHead, GroundProgram, Interpretation, OracleError, GUESS_BUDGET},
    std::collections::{BTreeMap, BTreeSet},
};

struct Indexed {
    head: Option<usize>,
    choice: bool,
    positive: Vec<usize>,
    negative: Vec<usize>,
}

/// The atoms whose value a well-founded style propagation already fixes in
/// every stable model: an atom is true when some non-choice rule for it has
/// a body known to hold, and false when every rule for it has a body known to
/// fail.
fn propagate(atoms: usize, rules: &[Indexed]) -> Vec<Option<bool>> {
    let mut by_head: Vec<Vec<&Indexed>> = (0..atoms).map(|_| Vec::new()).collect();
    for rule in rules {
        if let Some(h) = rule.head {
            by_head[h].push(rule);
        }
    }
    let mut value: Vec<Option<bool>> = vec![None; atoms];
    let holds = |rule: &Indexed, value: &[Option<bool>]| {
        rule.positive.iter().all(|&a| value[a] == Some(true))
            && rule.negative.iter().all(|&a| value[a] == Some(false))
    };
    let fails = |rule: &Indexed, value: &[Option<bool>]| {
        rule.positive.iter().any(|&a| value[a] == Some(false))
            || rule.negative.iter().any(|&a| value[a] == Some(true))
    };
    loop {
        let mut changed = false;
        for atom in 0..atoms {
            if value[atom].is_some() {
                continue;
            }
            if by_head[atom].iter().any(|r| !r.choice && holds(r, &value)) {
                value[atom] = Some(true);
                changed = true;
            } else if by_head[atom].iter().all(|r| fails(r, &value)) {
                value[atom] = Some(false);
                changed = true;
            }
        }
        if !changed {
            return value;
        }
    }
}

/// Least model of the reduct with respect to `guess`, which fixes the truth
/// of every atom occurring negatively or as a choice head.
fn least_model(atoms: usize, rules: &[Indexed], guess: &[bool]) -> Vec<bool> {
    let active: Vec<&Indexed> = rules
        .iter()
        .filter(|r| r.head.is_some())
        .filter(|r| r.negative.iter().all(|&a| !guess[a]))
        .filter(|r| !r.choice || guess[r.head.unwrap()])
        .collect();
    let mut model = vec![false; atoms];
    loop {
        let mut changed = false;
        for rule in &active {
            let head = rule.head.unwrap();
            if !model[head] && rule.positive.iter().all(|&a| model[a]) {
                model[head] = true;
                changed = true;
            }
        }
        if !changed {
            return model;
        }
    }
}

/// All stable models, by enumerating the truth values of the atoms that
/// occur negatively or as choice heads and are not fixed by propagation.
/// A choice rule `{a} :- B` is read as `a :- B, not not a`.
pub fn stable_models(program: &GroundProgram) -> Result<BTreeSet<Interpretation>, OracleError> {
    let atoms: Vec<GroundAtom> = program.atoms().into_iter().collect();
    let index: BTreeMap<&GroundAtom, usize> =
        atoms.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let rules: Vec<Indexed> = program
        .rules
        .iter()
        .map(|r| Indexed {
            head: r.head.atom().map(|a| index[a]),
            choice: matches!(r.head, GroundHead::Choice(_)),
            positive: r.positive.iter().map(|a| index[a]).collect(),
            negative: r.negative.iter().map(|a| index[a]).collect(),
        })
        .collect();

    let known = propagate(atoms.len(), &rules);
    let mut relevant = BTreeSet::new();
    for rule in &rules {
        relevant.extend(rule.negative.iter().copied());
        if rule.choice {
            relevant.extend(rule.head);
        }
    }
    let free: Vec<usize> = relevant
        .iter()
        .copied()
        .filter(|&a| known[a].is_none())
        .collect();
    if free.len() > GUESS_BUDGET {
        return Err(OracleError::Budget {
            count: free.len(),
            budget: GUESS_BUDGET,
        });
    }

    let mut models = BTreeSet::new();
    let mut guess: Vec<bool> = known.iter().map(|v| v.unwrap_or(false)).collect();
    for bits in 0u64..1 << free.len() {
        for (i, &atom) in free.iter().enumerate() {
            guess[atom] = bits >> i & 1 == 1;
        }
        let model = least_model(atoms.len(), &rules, &guess);
        if relevant.iter().any(|&a| model[a] != guess[a]) {
            continue;
        }
        let violated = rules.iter().any(|r| {
            r.head.is_none()
                && r.positive.iter().all(|&a| model[a])
                && r.negative.iter().all(|&a| !model[a])
        });
        if !violated {
            models.insert(
                (0..atoms.len())
                    .filter(|&a| model[a])
                    .map(|a| atoms[a].clone())
                    .collect(),
            );
        }
    }
    Ok(models)
}

#[cfg(test)]
mod tests {
    use {
        super::*,
        crate::{
            oracle::{format_interpretation, ground, Domain},
            program::parse_program,
        },
    };

    fn models(source: &str) -> Vec<String> {
        let program = parse_program(source).unwrap();
        let domain = Domain::symbols(["a"], (0, 9));
        let g = ground(&program, &domain, &Interpretation::new());
        stable_models(&g)
            .unwrap()
            .iter()
            .map(format_interpretation)
            .collect()
    }

    #[test]
    fn documented_cases() {
        assert_eq!(models("p(a). {q(a)}."), ["{p(a)}", "{p(a), q(a)}"]);
        assert_eq!(models("p :- not q. q :- not p."), ["{p}", "{q}"]);
        assert_eq!(models(""), ["{}"]);
    }

    #[test]
    fn constraints_and_positive_loops() {
        assert_eq!(models("{p}. :- not p."), ["{p}"]);
        assert_eq!(models("p :- p."), ["{}"]);
        assert_eq!(models("p :- not p."), Vec::<String>::new());
        assert_eq!(models("{p}. q :- p. p :- q."), ["{}", "{p, q}"]);
    }

    #[test]
    fn stratified_negation_needs_no_guessing() {
        assert_eq!(
            models("composite(I * J) :- I = 2..3, J = 2..3. prime(N) :- N = 2..9, not composite(N)."),
            ["{composite(4), composite(6), composite(9), prime(2), prime(3), prime(5), prime(7), prime(8)}"]
        );
    }

    #[test]
    fn budget_is_enforced() {
        let program = parse_program("{p(1..30)}.").unwrap();
        let g = ground(&program, &Domain::new([], (0, 0)), &Interpretation::new());
        assert_eq!(
            stable_models(&g),
            Err(OracleError::Budget {
                count: 30,
                budget: GUESS_BUDGET
            })
        );
    }
}
