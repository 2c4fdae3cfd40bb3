//! Reads formulas in the printed output syntax back into syntax trees.
//! Variables whose names start with `N` are integer variables.

use {
    crate::formula::{
        Formula, IntegerAnnotation, Predicate, Relation, SetOp, Sort, Term, Variable,
    },
    thiserror::Error,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ReadError {
    #[error("unexpected character `{0}`")]
    Character(char),
    #[error("expected {expected}, found {found}")]
    Unexpected { expected: String, found: String },
    #[error("invalid annotation `{0}`")]
    Annotation(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Lower(String),
    Upper(String),
    Integer(i64),
    True,
    False,
    Punct(&'static str),
}

const PUNCTUATION: [&str; 16] = [
    "<->", "->", "<=", ">=", "!=", "..", "<", ">", "=", "+", "-", "*", "/", "(", ")", ",",
];

fn tokenize(text: &str) -> Result<Vec<Token>, ReadError> {
    let mut tokens = Vec::new();
    let mut rest = text.trim_start();
    while let Some(c) = rest.chars().next() {
        if let Some(p) = PUNCTUATION.iter().find(|p| rest.starts_with(**p)) {
            tokens.push(Token::Punct(p));
            rest = &rest[p.len()..];
        } else if let Some(after) = rest.strip_prefix("#true") {
            tokens.push(Token::True);
            rest = after;
        } else if let Some(after) = rest.strip_prefix("#false") {
            tokens.push(Token::False);
            rest = after;
        } else if c.is_ascii_digit() {
            let end = rest
                .find(|c: char| !c.is_ascii_digit())
                .unwrap_or(rest.len());
            let n = rest[..end].parse().map_err(|_| ReadError::Character(c))?;
            tokens.push(Token::Integer(n));
            rest = &rest[end..];
        } else if c.is_ascii_alphabetic() || c == '_' {
            let end = rest
                .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_' || c == '\''))
                .unwrap_or(rest.len());
            let word = rest[..end].to_string();
            tokens.push(if c.is_ascii_uppercase() || c == '_' {
                Token::Upper(word)
            } else {
                Token::Lower(word)
            });
            rest = &rest[end..];
        } else {
            return Err(ReadError::Character(c));
        }
        rest = rest.trim_start();
    }
    Ok(tokens)
}

struct Reader {
    tokens: Vec<Token>,
    position: usize,
}

fn describe(token: Option<&Token>) -> String {
    match token {
        None => "end of input".into(),
        Some(Token::Lower(s) | Token::Upper(s)) => format!("`{s}`"),
        Some(Token::Integer(n)) => format!("`{n}`"),
        Some(Token::True) => "`#true`".into(),
        Some(Token::False) => "`#false`".into(),
        Some(Token::Punct(p)) => format!("`{p}`"),
    }
}

fn keyword(token: Option<&Token>, word: &str) -> bool {
    matches!(token, Some(Token::Lower(s)) if s == word)
}

fn relation(token: Option<&Token>) -> Option<Relation> {
    match token {
        Some(Token::Punct("=")) => Some(Relation::Equal),
        Some(Token::Punct("!=")) => Some(Relation::NotEqual),
        Some(Token::Punct("<")) => Some(Relation::Less),
        Some(Token::Punct(">")) => Some(Relation::Greater),
        Some(Token::Punct("<=")) => Some(Relation::LessEqual),
        Some(Token::Punct(">=")) => Some(Relation::GreaterEqual),
        _ => None,
    }
}

fn variable(name: &str) -> Variable {
    let sort = if name.starts_with('N') {
        Sort::Integer
    } else {
        Sort::General
    };
    Variable::new(name, sort)
}

/// Integer arithmetic when both operands are integer-valued, a set term otherwise.
fn binary(op: SetOp, lhs: Term, rhs: Term) -> Term {
    match op.as_arith() {
        Some(arith) if lhs.is_integer_valued() && rhs.is_integer_valued() => {
            Term::arith(arith, lhs, rhs)
        }
        _ => Term::set(op, lhs, rhs),
    }
}

impl Reader {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.position)
    }

    fn peek_at(&self, offset: usize) -> Option<&Token> {
        self.tokens.get(self.position + offset)
    }

    fn next(&mut self) -> Option<Token> {
        let token = self.tokens.get(self.position).cloned();
        self.position += 1;
        token
    }

    fn unexpected<T>(&self, expected: &str) -> Result<T, ReadError> {
        Err(ReadError::Unexpected {
            expected: expected.into(),
            found: describe(self.peek()),
        })
    }

    fn expect(&mut self, punct: &str) -> Result<(), ReadError> {
        if self.eat(punct) {
            Ok(())
        } else {
            self.unexpected(&format!("`{punct}`"))
        }
    }

    fn eat(&mut self, punct: &str) -> bool {
        if matches!(self.peek(), Some(Token::Punct(p)) if *p == punct) {
            self.position += 1;
            true
        } else {
            false
        }
    }

    fn formula(&mut self) -> Result<Formula, ReadError> {
        let lhs = self.implication()?;
        if self.eat("<->") {
            let rhs = self.implication()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula, ReadError> {
        let lhs = self.disjunction()?;
        if self.eat("->") {
            let rhs = self.disjunction()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ReadError> {
        let mut parts = vec![self.conjunction()?];
        while keyword(self.peek(), "or") {
            self.position += 1;
            parts.push(self.conjunction()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Formula::Or(parts)
        })
    }

    fn conjunction(&mut self) -> Result<Formula, ReadError> {
        let mut parts = vec![self.unary()?];
        while keyword(self.peek(), "and") {
            self.position += 1;
            parts.push(self.unary()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Formula::And(parts)
        })
    }

    fn unary(&mut self) -> Result<Formula, ReadError> {
        if keyword(self.peek(), "not") {
            self.position += 1;
            return Ok(Formula::not(self.unary()?));
        }
        if keyword(self.peek(), "forall") || keyword(self.peek(), "exists") {
            let universal = keyword(self.peek(), "forall");
            self.position += 1;
            let mut variables = Vec::new();
            loop {
                match self.next() {
                    Some(Token::Upper(name)) => variables.push(variable(&name)),
                    _ => {
                        self.position -= 1;
                        return self.unexpected("a variable");
                    }
                }
                if !self.eat(",") {
                    break;
                }
            }
            let body = self.unary()?;
            return Ok(if universal {
                Formula::Forall(variables, Box::new(body))
            } else {
                Formula::Exists(variables, Box::new(body))
            });
        }
        self.primary()
    }

    /// A parenthesis opens a formula unless the term it starts is followed
    /// by a relation or `in`.
    fn opens_formula(&self) -> bool {
        let mut depth = 0usize;
        let mut offset = 0;
        loop {
            match self.peek_at(offset) {
                None => return true,
                Some(Token::Punct("(")) => depth += 1,
                Some(Token::Punct(")")) => {
                    depth -= 1;
                    if depth == 0 {
                        let next = self.peek_at(offset + 1);
                        return !(relation(next).is_some()
                            || keyword(next, "in")
                            || matches!(next, Some(Token::Punct("+" | "-" | "*" | "/" | ".."))));
                    }
                }
                Some(Token::Lower(w))
                    if depth >= 1
                        && matches!(w.as_str(), "not" | "and" | "or" | "forall" | "exists") =>
                {
                    return true
                }
                Some(Token::True | Token::False | Token::Punct("->" | "<->")) => return true,
                Some(Token::Lower(w)) if w == "in" => return true,
                Some(_) => (),
            }
            offset += 1;
        }
    }

    fn primary(&mut self) -> Result<Formula, ReadError> {
        match self.peek() {
            Some(Token::True) => {
                self.position += 1;
                Ok(Formula::True)
            }
            Some(Token::False) => {
                self.position += 1;
                Ok(Formula::False)
            }
            Some(Token::Punct("(")) if self.opens_formula() => {
                self.position += 1;
                let formula = self.formula()?;
                self.expect(")")?;
                Ok(formula)
            }
            Some(Token::Lower(name)) if self.peek_at(1) == Some(&Token::Punct("(")) => {
                let name = name.clone();
                self.position += 2;
                let mut arguments = vec![self.term()?];
                while self.eat(",") {
                    arguments.push(self.term()?);
                }
                self.expect(")")?;
                Ok(Formula::atom(name, arguments))
            }
            Some(Token::Lower(name))
                if relation(self.peek_at(1)).is_none() && !keyword(self.peek_at(1), "in") =>
            {
                let name = name.clone();
                self.position += 1;
                Ok(Formula::atom(name, vec![]))
            }
            _ => {
                let lhs = self.term()?;
                if keyword(self.peek(), "in") {
                    self.position += 1;
                    let set = self.term()?;
                    return Ok(Formula::membership(lhs, set));
                }
                let Some(relation) = relation(self.peek()) else {
                    return self.unexpected("a relation or `in`");
                };
                self.position += 1;
                let rhs = self.term()?;
                Ok(Formula::comparison(relation, lhs, rhs))
            }
        }
    }

    fn term(&mut self) -> Result<Term, ReadError> {
        let lhs = self.sum()?;
        if self.eat("..") {
            let rhs = self.sum()?;
            return Ok(binary(SetOp::Interval, lhs, rhs));
        }
        Ok(lhs)
    }

    fn sum(&mut self) -> Result<Term, ReadError> {
        let mut lhs = self.product()?;
        loop {
            let op = if self.eat("+") {
                SetOp::Add
            } else if self.eat("-") {
                SetOp::Subtract
            } else {
                return Ok(lhs);
            };
            let rhs = self.product()?;
            lhs = binary(op, lhs, rhs);
        }
    }

    fn product(&mut self) -> Result<Term, ReadError> {
        let mut lhs = self.atomic_term()?;
        loop {
            let op = if self.eat("*") {
                SetOp::Multiply
            } else if self.eat("/") {
                SetOp::Divide
            } else {
                return Ok(lhs);
            };
            let rhs = self.atomic_term()?;
            lhs = binary(op, lhs, rhs);
        }
    }

    fn atomic_term(&mut self) -> Result<Term, ReadError> {
        match self.next() {
            Some(Token::Integer(n)) => Ok(Term::Integer(n)),
            Some(Token::Punct("-")) => match self.next() {
                Some(Token::Integer(n)) => Ok(Term::Integer(-n)),
                _ => {
                    self.position -= 1;
                    self.unexpected("an integer")
                }
            },
            Some(Token::Lower(s)) => Ok(Term::Symbol(s)),
            Some(Token::Upper(name)) => Ok(Term::Variable(variable(&name))),
            Some(Token::Punct("(")) => {
                let term = self.term()?;
                self.expect(")")?;
                Ok(term)
            }
            _ => {
                self.position -= 1;
                self.unexpected("a term")
            }
        }
    }
}

pub fn read_formula(text: &str) -> Result<Formula, ReadError> {
    let mut reader = Reader {
        tokens: tokenize(text)?,
        position: 0,
    };
    let formula = reader.formula()?;
    if reader.peek().is_some() {
        return reader.unexpected("end of input");
    }
    Ok(formula)
}

/// Reads `int(p/n@k)`; `None` when the line is not an annotation.
pub fn read_annotation(line: &str) -> Option<Result<IntegerAnnotation, ReadError>> {
    let inner = line.trim().strip_prefix("int(")?.strip_suffix(')')?;
    let (predicate, position) = inner.split_once('@')?;
    let (name, arity) = predicate.rsplit_once('/')?;
    let error = || ReadError::Annotation(line.trim().to_string());
    let parsed = (|| {
        let arity: usize = arity.parse().ok()?;
        let position: usize = position.parse().ok()?;
        (1..=arity)
            .contains(&position)
            .then(|| IntegerAnnotation::new(Predicate::new(name, arity), position))
    })();
    Some(parsed.ok_or_else(error))
}

/// Reads translator output: one formula or annotation per nonblank line,
/// where lines starting with whitespace continue the previous one.
pub fn read_output(text: &str) -> Result<(Vec<Formula>, Vec<IntegerAnnotation>), ReadError> {
    let mut formulas = Vec::new();
    let mut annotations = Vec::new();
    let mut entries: Vec<String> = Vec::new();
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        match entries.last_mut() {
            Some(entry) if line.starts_with(char::is_whitespace) => {
                entry.push(' ');
                entry.push_str(line.trim());
            }
            _ => entries.push(line.trim().to_string()),
        }
    }
    for entry in &entries {
        match read_annotation(entry) {
            Some(annotation) => annotations.push(annotation?),
            None => formulas.push(read_formula(entry)?),
        }
    }
    Ok((formulas, annotations))
}
