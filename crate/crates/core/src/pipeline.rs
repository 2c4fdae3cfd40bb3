//! The translation pipeline: parse, translate, complete, hide, simplify,
//! detect integers, print.

use {
    crate::{
        completion::{complete, CompletionError, CompletionResult},
        formula::{Formula, IntegerAnnotation, Printer},
        hiding::{eliminate, hidden_predicates},
        program::{parse_program, ParseError, Program},
        simplify::{detect_integers, simplify_body, simplify_formula},
        translation::{translate_rule, RuleFormula, RuleHead},
    },
    thiserror::Error,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub complete: bool,
    pub simplify: bool,
    pub detect_integers: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            complete: true,
            simplify: true,
            detect_integers: true,
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: ParseError,
    },
    #[error(transparent)]
    Completion(#[from] CompletionError),
}

/// A formula of the output together with how its bound variables are named.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sentence {
    /// The variables bound by the outermost quantifier are head variables.
    Definition(Formula),
    Other(Formula),
}

impl Sentence {
    pub fn formula(&self) -> &Formula {
        match self {
            Sentence::Definition(f) | Sentence::Other(f) => f,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub sentences: Vec<Sentence>,
    pub annotations: Vec<IntegerAnnotation>,
    pub warnings: Vec<String>,
}

impl Output {
    pub fn formulas(&self) -> Vec<Formula> {
        self.sentences.iter().map(|s| s.formula().clone()).collect()
    }

    /// One line per sentence, then one per annotation.
    pub fn render(&self) -> String {
        let mut printer = Printer::new();
        let mut out = String::new();
        for sentence in &self.sentences {
            let line = match sentence {
                Sentence::Definition(f) => printer.definition(f),
                Sentence::Other(f) => printer.formula(f),
            };
            out.push_str(&line);
            out.push('\n');
        }
        for annotation in &self.annotations {
            out.push_str(&printer.annotation(annotation));
            out.push('\n');
        }
        out
    }
}

/// Parses several sources, given as (name, text) pairs, into one program.
pub fn parse_sources<'a>(
    sources: impl IntoIterator<Item = (&'a str, &'a str)>,
) -> Result<Program, Error> {
    let mut program = Program::default();
    for (path, text) in sources {
        let part = parse_program(text).map_err(|source| Error::Parse {
            path: path.to_string(),
            source,
        })?;
        program.extend(part);
    }
    Ok(program)
}

fn rule_sentence(rule: &RuleFormula, simplify: bool) -> Sentence {
    let mut rule = rule.clone();
    if simplify {
        rule.body = simplify_body(&rule.body);
    }
    match rule.head {
        RuleHead::Constraint => {
            let sentence = rule.to_sentence();
            Sentence::Other(if simplify {
                simplify_formula(&sentence)
            } else {
                sentence
            })
        }
        _ => Sentence::Definition(rule.to_sentence()),
    }
}

fn simplify_result(result: &mut CompletionResult) {
    for definition in &mut result.definitions {
        definition.body = simplify_body(&definition.body);
    }
    for constraint in &mut result.constraints {
        *constraint = simplify_formula(constraint);
    }
}

/// The completion after hiding, simplification and integer detection as
/// selected by `options`, with the annotations found and any warnings.
pub fn completion(
    program: &Program,
    options: Options,
) -> Result<(CompletionResult, Vec<IntegerAnnotation>, Vec<String>), Error> {
    let rules: Vec<RuleFormula> = program.rules.iter().map(translate_rule).collect();
    let result = complete(&rules, program)?;
    let (mut result, warnings) = eliminate(&result, &hidden_predicates(&result, program));
    if options.simplify {
        simplify_result(&mut result);
    }
    let mut annotations = Vec::new();
    if options.detect_integers {
        let (detected, found) = detect_integers(&result);
        result = detected;
        annotations = found;
        if options.simplify {
            simplify_result(&mut result);
        }
    }
    let warnings = warnings.iter().map(ToString::to_string).collect();
    Ok((result, annotations, warnings))
}

pub fn translate(program: &Program, options: Options) -> Result<Output, Error> {
    if !options.complete {
        let sentences = program
            .rules
            .iter()
            .map(|rule| rule_sentence(&translate_rule(rule), options.simplify))
            .collect();
        return Ok(Output {
            sentences,
            ..Output::default()
        });
    }
    let (result, annotations, warnings) = completion(program, options)?;
    let sentences = result
        .definitions
        .iter()
        .map(|d| Sentence::Definition(d.to_formula()))
        .chain(result.constraints.iter().cloned().map(Sentence::Other))
        .collect();
    Ok(Output {
        sentences,
        annotations,
        warnings,
    })
}
