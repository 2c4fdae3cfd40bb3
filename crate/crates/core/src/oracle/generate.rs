use rand::{seq::SliceRandom, Rng};

const CONSTANTS: [&str; 4] = ["a", "b", "0", "1"];

/// A random safe program with at most three predicates `p0`, `p1`, `p2` of
/// arity at most 2 and at most five rules, plus the unary external `e`.
/// Positive body atoms only use `e` and predicates of lower index than the
/// head, so the program is tight.
pub fn random_tight_program(rng: &mut impl Rng) -> String {
    let count = rng.gen_range(1..=3);
    let arities: Vec<usize> = (0..count).map(|_| rng.gen_range(0..=2)).collect();
    let mut out = String::from("#external e(1).\n");
    for _ in 0..rng.gen_range(1..=5) {
        out.push_str(&random_rule(rng, &arities));
        out.push('\n');
    }
    if rng.gen_bool(0.5) {
        for (i, arity) in arities.iter().enumerate() {
            if rng.gen_bool(0.5) {
                out.push_str(&format!("#show p{i}/{arity}.\n"));
            }
        }
        if !out.contains("#show") {
            out.push_str("#show.\n");
        }
    }
    out
}

fn atom(name: &str, arguments: &[String]) -> String {
    if arguments.is_empty() {
        name.to_string()
    } else {
        format!("{name}({})", arguments.join(", "))
    }
}

fn random_rule(rng: &mut impl Rng, arities: &[usize]) -> String {
    let head = rng.gen_range(0..arities.len());
    let kind = rng.gen_range(0..10);
    let mut body = Vec::new();
    let mut bound: Vec<String> = Vec::new();

    // Positive atoms bind variables.
    for _ in 0..rng.gen_range(0..=2) {
        let (name, arity) = if head == 0 || rng.gen_bool(0.4) {
            ("e".to_string(), 1)
        } else {
            let p = rng.gen_range(0..head);
            (format!("p{p}"), arities[p])
        };
        let arguments: Vec<String> = (0..arity)
            .map(|_| {
                if rng.gen_bool(0.7) {
                    let v = ["X", "Y"].choose(rng).unwrap().to_string();
                    if !bound.contains(&v) {
                        bound.push(v.clone());
                    }
                    v
                } else {
                    CONSTANTS.choose(rng).unwrap().to_string()
                }
            })
            .collect();
        body.push(atom(&name, &arguments));
    }
    if rng.gen_bool(0.2) && !bound.contains(&"Z".to_string()) {
        body.push("Z = 0..1".to_string());
        bound.push("Z".to_string());
    }

    let term = |rng: &mut dyn rand::RngCore, bound: &[String]| -> String {
        match rng.gen_range(0..6) {
            0..=2 if !bound.is_empty() => bound.choose(rng).unwrap().clone(),
            3 if !bound.is_empty() => format!("{} + 1", bound.choose(rng).unwrap()),
            4 => "0..1".to_string(),
            _ => CONSTANTS.choose(rng).unwrap().to_string(),
        }
    };

    for _ in 0..rng.gen_range(0..=1) {
        let p = rng.gen_range(0..arities.len());
        let arguments: Vec<String> = (0..arities[p])
            .map(|_| {
                if !bound.is_empty() && rng.gen_bool(0.7) {
                    bound.choose(rng).unwrap().clone()
                } else {
                    CONSTANTS.choose(rng).unwrap().to_string()
                }
            })
            .collect();
        body.push(format!("not {}", atom(&format!("p{p}"), &arguments)));
    }
    if rng.gen_bool(0.3) {
        let op = ["=", "!=", "<", "<="].choose(rng).unwrap();
        let lhs = term(rng, &bound);
        let rhs = term(rng, &bound);
        body.push(format!("{lhs} {op} {rhs}"));
    }

    let body = if body.is_empty() {
        String::new()
    } else {
        format!(" :- {}", body.join(", "))
    };
    if kind == 0 && !body.is_empty() {
        return format!(":-{}.", body.trim_start_matches(" :-"));
    }
    let arguments: Vec<String> = (0..arities[head]).map(|_| term(rng, &bound)).collect();
    let head = atom(&format!("p{head}"), &arguments);
    if kind <= 3 {
        format!("{{{head}}}{body}.")
    } else {
        format!("{head}{body}.")
    }
}

#[cfg(test)]
mod tests {
    use {
        super::*,
        crate::{
            oracle::{ground, is_tight, Domain, Interpretation},
            program::parse_program,
        },
        rand::SeedableRng,
        rand_chacha::ChaCha8Rng,
    };

    #[test]
    fn generated_programs_parse_and_are_tight() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let domain = Domain::symbols(["a", "b"], (0, 2));
        for _ in 0..200 {
            let source = random_tight_program(&mut rng);
            let program = parse_program(&source).unwrap_or_else(|e| panic!("{source}\n{e}"));
            assert!(program.rules.len() <= 5);
            assert!(
                is_tight(&ground(&program, &domain, &Interpretation::new())),
                "{source}"
            );
        }
    }
}
