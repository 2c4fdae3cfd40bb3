#![allow(dead_code)]

use {
    anthem::{
        formula::{ArithOp, Formula, Relation, SetOp, Sort, Term, Variable},
        oracle::{GroundAtom, GroundHead, GroundProgram, GroundRule, Interpretation},
        pipeline::{parse_sources, translate, Options, Output},
        program::Program,
    },
    rand::{seq::SliceRandom, Rng},
    std::{
        collections::BTreeSet,
        path::{Path, PathBuf},
    },
};

/// Corpus programs with an expected-output file next to them.
pub const GOLDEN: [&str; 8] = [
    "union",
    "difference",
    "choice",
    "coloring",
    "assignment",
    "primes",
    "schur",
    "integers",
];

pub const CORPUS: [&str; 9] = [
    "union",
    "difference",
    "choice",
    "coloring",
    "assignment",
    "primes",
    "schur",
    "integers",
    "cycle",
];

pub fn program_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/programs")
        .join(format!("{name}.lp"))
}

pub fn expected_output(name: &str) -> String {
    let path = program_path(name).with_extension("expected");
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn load(name: &str) -> Program {
    let path = program_path(name);
    let text = std::fs::read_to_string(&path).unwrap();
    parse_sources([(path.to_str().unwrap(), text.as_str())]).unwrap()
}

pub fn translate_corpus(name: &str, options: Options) -> Output {
    translate(&load(name), options).unwrap()
}

/// Collapses every run of whitespace into a single space.
pub fn normalize(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Runs the command line and returns exit code, standard output and
/// diagnostic output.
pub fn run_cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = anthem::cli::run(
        std::iter::once("anthem").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

/// Primes up to `n` by the sieve of Eratosthenes.
pub fn sieve(n: i64) -> BTreeSet<i64> {
    if n < 2 {
        return BTreeSet::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = BTreeSet::new();
    for i in 2..=n {
        if !composite[i] {
            primes.insert(i as i64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

pub fn subsets<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    (0u32..1 << items.len())
        .map(|bits| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| bits >> i & 1 == 1)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect()
}

/// Stable models straight from the definition: every subset `I` of the
/// atoms is tested for being the least model of the reduct relative to `I`
/// and for satisfying every constraint.
pub fn naive_stable_models(program: &GroundProgram) -> BTreeSet<Interpretation> {
    let atoms: Vec<GroundAtom> = program.atoms().into_iter().collect();
    assert!(atoms.len() <= 16, "too many atoms for the naive check");
    let mut models = BTreeSet::new();
    for candidate in subsets(&atoms) {
        let candidate: Interpretation = candidate.into_iter().collect();
        let reduct: Vec<(&GroundAtom, &BTreeSet<GroundAtom>)> = program
            .rules
            .iter()
            .filter(|r| r.negative.is_disjoint(&candidate))
            .filter_map(|r| match &r.head {
                GroundHead::Atom(a) => Some((a, &r.positive)),
                GroundHead::Choice(a) if candidate.contains(a) => Some((a, &r.positive)),
                _ => None,
            })
            .collect();
        let mut least = Interpretation::new();
        loop {
            let before = least.len();
            for (head, body) in &reduct {
                if body.is_subset(&least) {
                    least.insert((*head).clone());
                }
            }
            if least.len() == before {
                break;
            }
        }
        let violated = program.rules.iter().any(|r| {
            matches!(r.head, GroundHead::Empty)
                && r.positive.is_subset(&candidate)
                && r.negative.is_disjoint(&candidate)
        });
        if least == candidate && !violated {
            models.insert(candidate);
        }
    }
    models
}

/// A random ground program over at most six propositional and unary atoms.
pub fn random_ground_program(rng: &mut impl Rng) -> GroundProgram {
    let pool: Vec<GroundAtom> = vec![
        GroundAtom::new("p", vec![]),
        GroundAtom::new("q", vec![]),
        GroundAtom::new("r", vec![]),
        GroundAtom::new("s", vec![anthem::translation::Value::Integer(1)]),
        GroundAtom::new("s", vec![anthem::translation::Value::Symbol("a".into())]),
        GroundAtom::new("t", vec![]),
    ];
    let atoms: Vec<GroundAtom> = pool[..rng.gen_range(1..=pool.len())].to_vec();
    let mut rules = BTreeSet::new();
    for _ in 0..rng.gen_range(1..=7) {
        let pick = |rng: &mut dyn rand::RngCore| -> BTreeSet<GroundAtom> {
            (0..rng.gen_range(0..=2))
                .map(|_| atoms.choose(rng).unwrap().clone())
                .collect()
        };
        let head = match rng.gen_range(0..6) {
            0 => GroundHead::Empty,
            1 | 2 => GroundHead::Choice(atoms.choose(rng).unwrap().clone()),
            _ => GroundHead::Atom(atoms.choose(rng).unwrap().clone()),
        };
        rules.insert(GroundRule {
            head,
            positive: pick(rng),
            negative: pick(rng),
        });
    }
    GroundProgram { rules }
}

/// Random closed formulas over `p/1`, `q/0` and `r/1` for a domain of
/// symbols `a`, `b` and the integer window `-2..2`.
///
/// Arithmetic is limited to operations that map the window into itself
/// (negation, multiplication by -1, 0 or 1, division), so that eliminating
/// a bounded quantifier in favour of a term never produces a value outside
/// the domain.
pub struct FormulaGenerator<'r, R: Rng> {
    pub rng: &'r mut R,
    scope: Vec<Variable>,
    fresh: usize,
}

pub const WINDOW: (i64, i64) = (-2, 2);

impl<'r, R: Rng> FormulaGenerator<'r, R> {
    pub fn new(rng: &'r mut R) -> Self {
        FormulaGenerator {
            rng,
            scope: Vec::new(),
            fresh: 0,
        }
    }

    pub fn sentence(&mut self) -> Formula {
        loop {
            self.scope.clear();
            let formula = match self.rng.gen_range(0..8) {
                // Sentence shapes targeted by the root-level rewrites.
                0 => Formula::Not(Box::new(self.quantified(3, true))),
                1 => {
                    let antecedent = Formula::Not(Box::new(self.atomic()));
                    Formula::Or(vec![antecedent, self.formula(2)])
                }
                _ => self.formula(3),
            };
            let free: Vec<Variable> = formula.free_variables().into_iter().collect();
            let closed = if free.is_empty() {
                formula
            } else if self.rng.gen_bool(0.5) {
                Formula::forall(free, formula)
            } else {
                Formula::exists(free, formula)
            };
            if closed.satisfies_invariants() {
                return closed;
            }
        }
    }

    fn variable(&mut self) -> Variable {
        self.fresh += 1;
        if self.rng.gen_bool(0.5) {
            Variable::integer(format!("N{}", self.fresh))
        } else {
            Variable::general(format!("X{}", self.fresh))
        }
    }

    fn constant(&mut self) -> Term {
        if self.rng.gen_bool(0.3) {
            Term::Symbol(["a", "b"].choose(self.rng).unwrap().to_string())
        } else {
            Term::Integer(self.rng.gen_range(WINDOW.0..=WINDOW.1))
        }
    }

    fn integer_term(&mut self, depth: usize) -> Term {
        let integers: Vec<Variable> = self
            .scope
            .iter()
            .filter(|v| v.sort == Sort::Integer)
            .cloned()
            .collect();
        match self.rng.gen_range(0..5) {
            0 | 1 if !integers.is_empty() => Term::var(integers.choose(self.rng).unwrap()),
            2 if depth > 0 => Term::arith(
                ArithOp::Subtract,
                Term::Integer(0),
                self.integer_term(depth - 1),
            ),
            3 if depth > 0 => {
                let factor = Term::Integer(self.rng.gen_range(-1..=1));
                Term::arith(ArithOp::Multiply, self.integer_term(depth - 1), factor)
            }
            _ => Term::Integer(self.rng.gen_range(WINDOW.0..=WINDOW.1)),
        }
    }

    fn term(&mut self) -> Term {
        match self.rng.gen_range(0..6) {
            0 | 1 if !self.scope.is_empty() => {
                Term::var(&self.scope.choose(self.rng).unwrap().clone())
            }
            2 => self.integer_term(2),
            _ => self.constant(),
        }
    }

    fn set_term(&mut self) -> Term {
        match self.rng.gen_range(0..5) {
            0 | 1 => Term::set(SetOp::Interval, self.term(), self.term()),
            2 => Term::set(SetOp::Divide, self.term(), self.term()),
            3 => Term::set(SetOp::Subtract, Term::Integer(0), self.term()),
            _ => self.term(),
        }
    }

    fn atomic(&mut self) -> Formula {
        match self.rng.gen_range(0..8) {
            0 => Formula::True,
            1 => Formula::False,
            2 => Formula::atom("q", vec![]),
            3 => Formula::atom("p", vec![self.term()]),
            4 => Formula::atom("r", vec![self.term()]),
            5 => {
                let relation = *[
                    Relation::Equal,
                    Relation::NotEqual,
                    Relation::Less,
                    Relation::LessEqual,
                    Relation::Greater,
                    Relation::GreaterEqual,
                ]
                .choose(self.rng)
                .unwrap();
                Formula::comparison(relation, self.term(), self.term())
            }
            _ => Formula::membership(self.term(), self.set_term()),
        }
    }

    fn quantified(&mut self, depth: usize, existential: bool) -> Formula {
        let count = if self.rng.gen_bool(0.8) { 1 } else { 2 };
        let variables: Vec<Variable> = (0..count).map(|_| self.variable()).collect();
        let mark = self.scope.len();
        self.scope.extend(variables.iter().cloned());
        // Equations binding the new variable make equality elimination applicable.
        let body = if self.rng.gen_bool(0.5) {
            let v = Term::var(&variables[0]);
            let bound = if variables[0].sort == Sort::Integer {
                self.integer_term(2)
            } else {
                self.term()
            };
            let equation = if self.rng.gen_bool(0.5) {
                Formula::equal(v, bound)
            } else {
                Formula::equal(bound, v)
            };
            let rest = self.formula(depth - 1);
            Formula::And(vec![equation, rest])
        } else {
            self.formula(depth - 1)
        };
        self.scope.truncate(mark);
        if existential {
            Formula::Exists(variables, Box::new(body))
        } else {
            Formula::Forall(variables, Box::new(body))
        }
    }

    pub fn formula(&mut self, depth: usize) -> Formula {
        if depth == 0 {
            return self.atomic();
        }
        match self.rng.gen_range(0..12) {
            0 | 1 => self.atomic(),
            2 => Formula::Not(Box::new(self.formula(depth - 1))),
            3 => {
                let count = self.rng.gen_range(2..=3);
                Formula::And((0..count).map(|_| self.formula(depth - 1)).collect())
            }
            4 => {
                let count = self.rng.gen_range(2..=3);
                Formula::Or((0..count).map(|_| self.formula(depth - 1)).collect())
            }
            5 => Formula::Implies(
                Box::new(self.formula(depth - 1)),
                Box::new(self.formula(depth - 1)),
            ),
            6 => Formula::Iff(
                Box::new(self.formula(depth - 1)),
                Box::new(self.formula(depth - 1)),
            ),
            7 | 8 => self.quantified(depth, true),
            9 => self.quantified(depth, false),
            10 => Formula::Not(Box::new(self.quantified(depth, true))),
            _ => Formula::Not(Box::new(Formula::Not(Box::new(self.formula(depth - 1))))),
        }
    }
}

/// The interpretations over `p(a)`, `p(0)`, `p(1)`, `q`, `r(b)`, `r(-1)`.
pub fn test_interpretations() -> Vec<Interpretation> {
    use anthem::translation::Value;
    let atoms = vec![
        GroundAtom::new("p", vec![Value::Symbol("a".into())]),
        GroundAtom::new("p", vec![Value::Integer(0)]),
        GroundAtom::new("p", vec![Value::Integer(1)]),
        GroundAtom::new("q", vec![]),
        GroundAtom::new("r", vec![Value::Symbol("b".into())]),
        GroundAtom::new("r", vec![Value::Integer(-1)]),
    ];
    subsets(&atoms)
        .into_iter()
        .map(|s| s.into_iter().collect())
        .collect()
}

/// Projection onto the given predicate names.
pub fn project(
    interpretation: &Interpretation,
    keep: &dyn Fn(&GroundAtom) -> bool,
) -> Interpretation {
    interpretation.iter().filter(|a| keep(a)).cloned().collect()
}
