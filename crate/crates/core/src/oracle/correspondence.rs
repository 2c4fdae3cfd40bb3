use {
    super::{
        find_cycle, format_interpretation, formula_models, ground, stable_models, Domain,
        GroundAtom, Interpretation, OracleError,
    },
    crate::{
        formula::{Formula, IntegerAnnotation},
        program::Program,
    },
    std::{
        collections::BTreeSet,
        fmt::{self, Display, Formatter},
    },
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The shown parts of stable models and formula models coincide.
    Holds { models: usize },
    Mismatch {
        /// Projections of stable models that no formula model has.
        only_stable: Vec<Interpretation>,
        /// Projections of formula models that no stable model has.
        only_formulas: Vec<Interpretation>,
    },
    /// A cycle through positive dependencies, first atom repeated at the end.
    NotTight(Vec<GroundAtom>),
    /// A stable model has a shown atom whose arguments lie outside the domain.
    OutsideDomain(GroundAtom),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds { .. })
    }
}

impl Display for Verdict {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        let list = |models: &[Interpretation]| {
            models
                .iter()
                .map(format_interpretation)
                .collect::<Vec<_>>()
                .join(" ")
        };
        match self {
            Verdict::Holds { models } => {
                write!(f, "holds: {models} model(s) on both sides")
            }
            Verdict::Mismatch {
                only_stable,
                only_formulas,
            } => {
                write!(f, "mismatch")?;
                if !only_stable.is_empty() {
                    write!(f, "; stable models only: {}", list(only_stable))?;
                }
                if !only_formulas.is_empty() {
                    write!(f, "; formula models only: {}", list(only_formulas))?;
                }
                Ok(())
            }
            Verdict::NotTight(cycle) => {
                let atoms: Vec<String> = cycle.iter().map(ToString::to_string).collect();
                write!(f, "not tight: {}", atoms.join(" -> "))
            }
            Verdict::OutsideDomain(atom) => {
                write!(f, "domain too small: a stable model contains {atom}")
            }
        }
    }
}

/// Compares the stable models of `program` for the given external input
/// with the models of the translated `sentences` and `annotations`, both
/// restricted to the shown predicates that are not external.
pub fn check_correspondence(
    program: &Program,
    sentences: &[Formula],
    annotations: &[IntegerAnnotation],
    domain: &Domain,
    external_input: &Interpretation,
) -> Result<Verdict, OracleError> {
    let grounded = ground(program, domain, external_input);
    if let Some(cycle) = find_cycle(&grounded) {
        return Ok(Verdict::NotTight(cycle));
    }
    let shown = |atom: &GroundAtom| {
        let predicate = atom.predicate();
        program.is_shown(&predicate) && !program.is_external(&predicate)
    };
    let project = |model: &Interpretation| -> Interpretation {
        model.iter().filter(|a| shown(a)).cloned().collect()
    };

    let stable: BTreeSet<Interpretation> = stable_models(&grounded)?.iter().map(project).collect();
    for model in &stable {
        if let Some(atom) = model
            .iter()
            .find(|a| !a.arguments.iter().all(|v| domain.contains(v)))
        {
            return Ok(Verdict::OutsideDomain(atom.clone()));
        }
    }
    let formulas: BTreeSet<Interpretation> = formula_models(
        sentences,
        annotations,
        domain,
        &program.externals,
        external_input,
    )?
    .iter()
    .map(project)
    .collect();

    if stable == formulas {
        Ok(Verdict::Holds {
            models: stable.len(),
        })
    } else {
        Ok(Verdict::Mismatch {
            only_stable: stable.difference(&formulas).cloned().collect(),
            only_formulas: formulas.difference(&stable).cloned().collect(),
        })
    }
}
