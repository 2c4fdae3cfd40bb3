use {
    super::{
        safety, Atom, BinaryOperator, BodyLiteral, ComparisonOperator, Head, Predicate, Program,
        ProgramTerm, Rule,
    },
    thiserror::Error,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("{line}:{column}: syntax error: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{line}:{column}: unsupported construct: {construct}")]
    Unsupported {
        line: usize,
        column: usize,
        construct: String,
    },
    #[error("unsafe variable `{variable}` in rule `{rule}`")]
    Unsafe { rule: String, variable: String },
    #[error("external predicate {predicate} occurs in the head of rule `{rule}`")]
    ExternalInHead { predicate: Predicate, rule: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Identifier(String),
    Variable(String),
    Anonymous,
    Integer(i64),
    Directive(String),
    Str,
    Not,
    If,
    WeakIf,
    Dot,
    DotDot,
    Comma,
    Colon,
    Semicolon,
    Bar,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Plus,
    Minus,
    Star,
    Power,
    Slash,
    Backslash,
    At,
    Equal,
    NotEqual,
    Less,
    Greater,
    LessEqual,
    GreaterEqual,
    Eof,
}

#[derive(Clone, Debug)]
struct Spanned {
    token: Token,
    line: usize,
    column: usize,
}

fn tokenize(source: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = source.chars().collect();
    let mut tokens = Vec::new();
    let (mut i, mut line, mut column) = (0, 1, 1);

    let advance = |i: &mut usize, line: &mut usize, column: &mut usize, n: usize| {
        for _ in 0..n {
            if chars[*i] == '\n' {
                *line += 1;
                *column = 1;
            } else {
                *column += 1;
            }
            *i += 1;
        }
    };

    while i < chars.len() {
        let c = chars[i];
        let next = chars.get(i + 1).copied();
        let (start_line, start_column) = (line, column);

        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut column, 1);
            continue;
        }
        if c == '%' {
            if next == Some('*') {
                let mut j = i + 2;
                while j + 1 < chars.len() && !(chars[j] == '*' && chars[j + 1] == '%') {
                    j += 1;
                }
                if j + 1 >= chars.len() {
                    return Err(ParseError::Syntax {
                        line,
                        column,
                        message: "unterminated block comment".into(),
                    });
                }
                let n = j + 2 - i;
                advance(&mut i, &mut line, &mut column, n);
            } else {
                while i < chars.len() && chars[i] != '\n' {
                    advance(&mut i, &mut line, &mut column, 1);
                }
            }
            continue;
        }

        let (token, len) = if c.is_ascii_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                j += 1;
            }
            let word: String = chars[i..j].iter().collect();
            let token = if word == "_" {
                Token::Anonymous
            } else if word == "not" {
                Token::Not
            } else if c.is_ascii_uppercase() || c == '_' {
                Token::Variable(word)
            } else {
                Token::Identifier(word)
            };
            (token, j - i)
        } else if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let digits: String = chars[i..j].iter().collect();
            let value = digits.parse().map_err(|_| ParseError::Syntax {
                line,
                column,
                message: format!("integer literal `{digits}` out of range"),
            })?;
            (Token::Integer(value), j - i)
        } else if c == '#' {
            let mut j = i + 1;
            while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                j += 1;
            }
            (Token::Directive(chars[i + 1..j].iter().collect()), j - i)
        } else if c == '"' {
            let mut j = i + 1;
            while j < chars.len() && chars[j] != '"' {
                j += if chars[j] == '\\' { 2 } else { 1 };
            }
            (Token::Str, (j + 1).min(chars.len()) - i)
        } else {
            match (c, next) {
                (':', Some('-')) => (Token::If, 2),
                (':', Some('~')) => (Token::WeakIf, 2),
                (':', _) => (Token::Colon, 1),
                ('.', Some('.')) => (Token::DotDot, 2),
                ('.', _) => (Token::Dot, 1),
                (',', _) => (Token::Comma, 1),
                (';', _) => (Token::Semicolon, 1),
                ('|', _) => (Token::Bar, 1),
                ('(', _) => (Token::LParen, 1),
                (')', _) => (Token::RParen, 1),
                ('{', _) => (Token::LBrace, 1),
                ('}', _) => (Token::RBrace, 1),
                ('[', _) => (Token::LBracket, 1),
                (']', _) => (Token::RBracket, 1),
                ('+', _) => (Token::Plus, 1),
                ('-', _) => (Token::Minus, 1),
                ('*', Some('*')) => (Token::Power, 2),
                ('*', _) => (Token::Star, 1),
                ('/', _) => (Token::Slash, 1),
                ('\\', _) => (Token::Backslash, 1),
                ('@', _) => (Token::At, 1),
                ('=', Some('=')) => (Token::Equal, 2),
                ('=', _) => (Token::Equal, 1),
                ('!', Some('=')) => (Token::NotEqual, 2),
                ('<', Some('=')) => (Token::LessEqual, 2),
                ('<', _) => (Token::Less, 1),
                ('>', Some('=')) => (Token::GreaterEqual, 2),
                ('>', _) => (Token::Greater, 1),
                _ => {
                    return Err(ParseError::Syntax {
                        line,
                        column,
                        message: format!("unexpected character `{c}`"),
                    })
                }
            }
        };
        advance(&mut i, &mut line, &mut column, len);
        tokens.push(Spanned {
            token,
            line: start_line,
            column: start_column,
        });
    }
    tokens.push(Spanned {
        token: Token::Eof,
        line,
        column,
    });
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Spanned>,
    position: usize,
}

type Result<T> = std::result::Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.position].token
    }

    fn peek_at(&self, offset: usize) -> &Token {
        let index = (self.position + offset).min(self.tokens.len() - 1);
        &self.tokens[index].token
    }

    fn bump(&mut self) -> Token {
        let token = self.tokens[self.position].token.clone();
        if self.position + 1 < self.tokens.len() {
            self.position += 1;
        }
        token
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T> {
        let Spanned { line, column, .. } = self.tokens[self.position];
        Err(ParseError::Syntax {
            line,
            column,
            message: message.into(),
        })
    }

    fn unsupported<T>(&self, construct: impl Into<String>) -> Result<T> {
        let Spanned { line, column, .. } = self.tokens[self.position];
        Err(ParseError::Unsupported {
            line,
            column,
            construct: construct.into(),
        })
    }

    fn expect(&mut self, expected: Token, what: &str) -> Result<()> {
        if *self.peek() == expected {
            self.bump();
            Ok(())
        } else {
            self.syntax(format!("expected {what}, found {}", describe(self.peek())))
        }
    }

    fn program(&mut self) -> Result<Program> {
        let mut program = Program::default();
        while *self.peek() != Token::Eof {
            self.statement(&mut program)?;
        }
        Ok(program)
    }

    fn statement(&mut self, program: &mut Program) -> Result<()> {
        match self.peek().clone() {
            Token::Directive(name) => self.directive(&name, program),
            Token::If => {
                self.bump();
                let body = self.body()?;
                self.expect(Token::Dot, "`.`")?;
                program.rules.push(Rule {
                    head: Head::Empty,
                    body,
                });
                Ok(())
            }
            Token::WeakIf => self.unsupported("weak constraint"),
            _ => {
                let head = self.head()?;
                let body = match self.peek() {
                    Token::If => {
                        self.bump();
                        self.body()?
                    }
                    _ => Vec::new(),
                };
                self.expect(Token::Dot, "`.`")?;
                program.rules.push(Rule { head, body });
                Ok(())
            }
        }
    }

    fn directive(&mut self, name: &str, program: &mut Program) -> Result<()> {
        match name {
            "show" => {
                self.bump();
                program.has_show_directive = true;
                if *self.peek() == Token::Dot {
                    self.bump();
                    return Ok(());
                }
                let predicate = match self.bump() {
                    Token::Identifier(name) => name,
                    Token::Minus => return self.unsupported("classical negation"),
                    _ => return self.unsupported("#show with a term"),
                };
                if *self.peek() != Token::Slash {
                    return self.unsupported("#show with a term");
                }
                self.bump();
                let arity = match self.bump() {
                    Token::Integer(n) => n as usize,
                    _ => return self.syntax("expected arity after `/`"),
                };
                self.expect(Token::Dot, "`.`")?;
                program.shows.insert(Predicate::new(predicate, arity));
                Ok(())
            }
            "external" => {
                self.bump();
                if *self.peek() == Token::Minus {
                    return self.unsupported("classical negation");
                }
                let atom = self.atom()?;
                match self.peek() {
                    Token::Colon => return self.unsupported("conditional #external"),
                    Token::LBracket => return self.unsupported("#external with a truth value"),
                    _ => (),
                }
                self.expect(Token::Dot, "`.`")?;
                // `#external p(2).` declares p/2: a single integer argument gives the arity.
                let predicate = match atom.arguments.as_slice() {
                    [ProgramTerm::Integer(n)] if *n >= 0 => {
                        Predicate::new(atom.predicate, *n as usize)
                    }
                    _ => atom.predicate(),
                };
                program.externals.insert(predicate);
                Ok(())
            }
            "count" | "sum" | "sum+" | "min" | "max" => self.unsupported("aggregate"),
            "minimize" | "maximize" | "minimise" | "maximise" => {
                self.unsupported("optimization statement")
            }
            "true" | "false" => self.unsupported(format!("#{name}")),
            other => self.unsupported(format!("#{other} directive")),
        }
    }

    fn head(&mut self) -> Result<Head> {
        match self.peek() {
            Token::LBrace => {
                self.bump();
                if *self.peek() == Token::Minus {
                    return self.unsupported("classical negation");
                }
                let atom = self.atom()?;
                match self.peek() {
                    Token::Colon => return self.unsupported("conditional literal"),
                    Token::Semicolon => {
                        return self.unsupported("choice rule with several elements")
                    }
                    _ => (),
                }
                self.expect(Token::RBrace, "`}`")?;
                if !matches!(self.peek(), Token::Dot | Token::If) {
                    return self.unsupported("choice rule bounds");
                }
                Ok(Head::Choice(atom))
            }
            Token::Integer(_) | Token::Variable(_) | Token::LParen if self.lookahead_brace() => {
                self.unsupported("choice rule bounds")
            }
            Token::Minus => self.unsupported("classical negation"),
            Token::Not => self.unsupported("negated head"),
            Token::Identifier(_) => {
                let atom = self.atom()?;
                match self.peek() {
                    Token::Semicolon | Token::Bar => self.unsupported("disjunctive head"),
                    Token::Colon => self.unsupported("conditional literal"),
                    Token::Equal
                    | Token::NotEqual
                    | Token::Less
                    | Token::Greater
                    | Token::LessEqual
                    | Token::GreaterEqual => self.unsupported("comparison in rule head"),
                    _ => Ok(Head::Basic(atom)),
                }
            }
            Token::Directive(name) if matches!(name.as_str(), "count" | "sum" | "min" | "max") => {
                self.unsupported("aggregate")
            }
            other => self.syntax(format!("expected rule head, found {}", describe(other))),
        }
    }

    // Detects `1 { ... }`-style lower bounds before a choice.
    fn lookahead_brace(&self) -> bool {
        let mut offset = 0;
        loop {
            match self.peek_at(offset) {
                Token::LBrace => return true,
                Token::Dot | Token::If | Token::Eof | Token::Comma => return false,
                _ => offset += 1,
            }
        }
    }

    fn body(&mut self) -> Result<Vec<BodyLiteral>> {
        let mut literals = vec![self.literal()?];
        while matches!(self.peek(), Token::Comma | Token::Semicolon) {
            self.bump();
            literals.push(self.literal()?);
        }
        Ok(literals)
    }

    fn literal(&mut self) -> Result<BodyLiteral> {
        let literal = match self.peek() {
            Token::Not => {
                self.bump();
                match self.peek() {
                    Token::Not => return self.unsupported("double negation"),
                    Token::Minus => return self.unsupported("classical negation"),
                    Token::Identifier(_) if !self.starts_comparison() => {
                        BodyLiteral::Negative(self.atom()?)
                    }
                    _ => return self.unsupported("negated comparison"),
                }
            }
            Token::Minus if matches!(self.peek_at(1), Token::Identifier(_)) => {
                return self.unsupported("classical negation")
            }
            Token::LBrace => return self.unsupported("aggregate"),
            Token::Directive(name) => {
                return match name.as_str() {
                    "true" | "false" => self.unsupported(format!("#{name}")),
                    _ => self.unsupported("aggregate"),
                }
            }
            Token::Identifier(_) if !self.starts_comparison() => {
                BodyLiteral::Positive(self.atom()?)
            }
            _ => {
                let lhs = self.term()?;
                let op = match self.bump() {
                    Token::Equal => ComparisonOperator::Equal,
                    Token::NotEqual => ComparisonOperator::NotEqual,
                    Token::Less => ComparisonOperator::Less,
                    Token::Greater => ComparisonOperator::Greater,
                    Token::LessEqual => ComparisonOperator::LessEqual,
                    Token::GreaterEqual => ComparisonOperator::GreaterEqual,
                    Token::LBrace => return self.unsupported("aggregate"),
                    _ => {
                        self.position -= 1;
                        return self.syntax(format!(
                            "expected comparison operator, found {}",
                            describe(self.peek())
                        ));
                    }
                };
                if matches!(self.peek(), Token::Directive(_) | Token::LBrace) {
                    return self.unsupported("aggregate");
                }
                let rhs = self.term()?;
                BodyLiteral::Comparison { op, lhs, rhs }
            }
        };
        if *self.peek() == Token::Colon {
            return self.unsupported("conditional literal");
        }
        Ok(literal)
    }

    // An identifier starts a comparison when it is a constant operand rather than a predicate.
    fn starts_comparison(&self) -> bool {
        matches!(
            self.peek_at(1),
            Token::Equal
                | Token::NotEqual
                | Token::Less
                | Token::Greater
                | Token::LessEqual
                | Token::GreaterEqual
                | Token::Plus
                | Token::Minus
                | Token::Star
                | Token::Slash
                | Token::DotDot
        )
    }

    fn atom(&mut self) -> Result<Atom> {
        let predicate = match self.bump() {
            Token::Identifier(name) => name,
            other => {
                self.position -= 1;
                return self.syntax(format!("expected atom, found {}", describe(&other)));
            }
        };
        let mut arguments = Vec::new();
        if *self.peek() == Token::LParen {
            self.bump();
            if *self.peek() != Token::RParen {
                arguments.push(self.term()?);
                loop {
                    match self.peek() {
                        Token::Comma => {
                            self.bump();
                            arguments.push(self.term()?);
                        }
                        Token::Semicolon => return self.unsupported("pool"),
                        _ => break,
                    }
                }
            }
            self.expect(Token::RParen, "`)`")?;
        }
        Ok(Atom::new(predicate, arguments))
    }

    // term := additive ['..' additive]
    fn term(&mut self) -> Result<ProgramTerm> {
        let lhs = self.additive()?;
        if *self.peek() == Token::DotDot {
            self.bump();
            let rhs = self.additive()?;
            if *self.peek() == Token::DotDot {
                return self.syntax("chained interval");
            }
            return Ok(ProgramTerm::binary(BinaryOperator::Interval, lhs, rhs));
        }
        Ok(lhs)
    }

    fn additive(&mut self) -> Result<ProgramTerm> {
        let mut lhs = self.multiplicative()?;
        loop {
            let op = match self.peek() {
                Token::Plus => BinaryOperator::Add,
                Token::Minus => BinaryOperator::Subtract,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.multiplicative()?;
            lhs = ProgramTerm::binary(op, lhs, rhs);
        }
    }

    fn multiplicative(&mut self) -> Result<ProgramTerm> {
        let mut lhs = self.primary()?;
        loop {
            let op = match self.peek() {
                Token::Star => BinaryOperator::Multiply,
                Token::Slash => BinaryOperator::Divide,
                Token::Backslash => return self.unsupported("modulo"),
                Token::Power => return self.unsupported("exponentiation"),
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.primary()?;
            lhs = ProgramTerm::binary(op, lhs, rhs);
        }
    }

    fn primary(&mut self) -> Result<ProgramTerm> {
        match self.peek().clone() {
            Token::Integer(n) => {
                self.bump();
                Ok(ProgramTerm::Integer(n))
            }
            Token::Identifier(name) => {
                if *self.peek_at(1) == Token::LParen {
                    return self.unsupported("function term");
                }
                self.bump();
                Ok(ProgramTerm::Symbol(name))
            }
            Token::Variable(name) => {
                self.bump();
                Ok(ProgramTerm::Variable(name))
            }
            Token::Anonymous => {
                self.bump();
                Ok(ProgramTerm::Anonymous)
            }
            Token::LParen => {
                self.bump();
                if *self.peek() == Token::RParen {
                    return self.unsupported("tuple");
                }
                let term = self.term()?;
                match self.peek() {
                    Token::Comma => return self.unsupported("tuple"),
                    Token::Semicolon => return self.unsupported("pool"),
                    _ => (),
                }
                self.expect(Token::RParen, "`)`")?;
                Ok(term)
            }
            Token::Minus => self.unsupported("unary minus"),
            Token::Bar => self.unsupported("absolute value"),
            Token::Str => self.unsupported("string constant"),
            Token::At => self.unsupported("external function"),
            Token::Directive(name) if name == "inf" || name == "sup" => {
                self.unsupported(format!("#{name}"))
            }
            other => self.syntax(format!("expected term, found {}", describe(&other))),
        }
    }
}

fn describe(token: &Token) -> String {
    match token {
        Token::Identifier(name) | Token::Variable(name) => format!("`{name}`"),
        Token::Anonymous => "`_`".into(),
        Token::Integer(n) => format!("`{n}`"),
        Token::Directive(name) => format!("`#{name}`"),
        Token::Str => "string".into(),
        Token::Eof => "end of input".into(),
        other => format!("{other:?}").to_lowercase(),
    }
}

/// Parses program text, checking rule safety and the use of external predicates.
pub fn parse_program(source: &str) -> Result<Program> {
    let mut parser = Parser {
        tokens: tokenize(source)?,
        position: 0,
    };
    let program = parser.program()?;
    for rule in &program.rules {
        safety::check_rule(rule)?;
        if let Some(atom) = rule.head.atom() {
            let predicate = atom.predicate();
            if program.externals.contains(&predicate) {
                return Err(ParseError::ExternalInHead {
                    predicate,
                    rule: rule.to_string(),
                });
            }
        }
    }
    Ok(program)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(name: &str) -> ProgramTerm {
        ProgramTerm::Variable(name.into())
    }

    fn unsupported(source: &str) -> String {
        match parse_program(source) {
            Err(ParseError::Unsupported { construct, .. }) => construct,
            other => panic!("expected unsupported-construct error for {source:?}, got {other:?}"),
        }
    }

    #[test]
    fn parse_basic_rule() {
        let program = parse_program("s(X) :- p(X).").unwrap();
        assert_eq!(
            program.rules,
            vec![Rule {
                head: Head::Basic(Atom::new("s", vec![var("X")])),
                body: vec![BodyLiteral::Positive(Atom::new("p", vec![var("X")]))],
            }]
        );
    }

    #[test]
    fn parse_choice_fact() {
        let program = parse_program("{q(a)}.").unwrap();
        assert_eq!(
            program.rules,
            vec![Rule {
                head: Head::Choice(Atom::new("q", vec![ProgramTerm::Symbol("a".into())])),
                body: vec![],
            }]
        );
    }

    #[test]
    fn parse_empty() {
        assert_eq!(parse_program("").unwrap(), Program::default());
        assert_eq!(
            parse_program("  % nothing here\n").unwrap(),
            Program::default()
        );
    }

    #[test]
    fn parse_constraint() {
        let program = parse_program(":- color(V, C1), color(V, C2), C1 != C2.").unwrap();
        let rule = &program.rules[0];
        assert_eq!(rule.head, Head::Empty);
        assert!(matches!(rule.body[0], BodyLiteral::Positive(_)));
        assert!(matches!(rule.body[1], BodyLiteral::Positive(_)));
        assert_eq!(
            rule.body[2],
            BodyLiteral::Comparison {
                op: ComparisonOperator::NotEqual,
                lhs: var("C1"),
                rhs: var("C2"),
            }
        );
    }

    #[test]
    fn parse_directives() {
        let program = parse_program("#show u/1.\n#external p(1).\n#external e(1, 2).").unwrap();
        assert!(program.has_show_directive);
        assert!(program.shows.contains(&Predicate::new("u", 1)));
        assert!(program.externals.contains(&Predicate::new("p", 1)));
        assert!(program.externals.contains(&Predicate::new("e", 2)));
        let program = parse_program("#external edge(2). #external flag(0).").unwrap();
        assert!(program.externals.contains(&Predicate::new("edge", 2)));
        assert!(program.externals.contains(&Predicate::new("flag", 0)));

        let program = parse_program("p. #show.").unwrap();
        assert!(program.has_show_directive);
        assert!(program.shows.is_empty());
    }

    #[test]
    fn operator_precedence() {
        let program = parse_program("p(1 + 2 * 3..4).").unwrap();
        let Head::Basic(atom) = &program.rules[0].head else {
            unreachable!()
        };
        use BinaryOperator::*;
        use ProgramTerm::Integer;
        assert_eq!(
            atom.arguments[0],
            ProgramTerm::binary(
                Interval,
                ProgramTerm::binary(
                    Add,
                    Integer(1),
                    ProgramTerm::binary(Multiply, Integer(2), Integer(3))
                ),
                Integer(4)
            )
        );
    }

    #[test]
    fn comparison_binds_variable() {
        assert!(parse_program(":- X = 1..3, not q(X).").is_ok());
        assert!(parse_program("composite(I * J) :- I = 2..n, J = 2..n.").is_ok());
        assert!(parse_program("p(X) :- X = Y + 1, Y = 1..2.").is_ok());
    }

    #[test]
    fn unsafe_rules() {
        assert_eq!(
            parse_program("p(X) :- not q(X)."),
            Err(ParseError::Unsafe {
                rule: "p(X) :- not q(X).".into(),
                variable: "X".into()
            })
        );
        assert!(matches!(
            parse_program("p(X)."),
            Err(ParseError::Unsafe { .. })
        ));
        assert!(matches!(
            parse_program(":- X < 3."),
            Err(ParseError::Unsafe { .. })
        ));
        assert!(matches!(
            parse_program("p(_) :- q."),
            Err(ParseError::Unsafe { .. })
        ));
        assert!(matches!(
            parse_program("p :- not q(_)."),
            Err(ParseError::Unsafe { .. })
        ));
        assert!(matches!(
            parse_program("p(X) :- q(X + 1)."),
            Err(ParseError::Unsafe { .. })
        ));
    }

    #[test]
    fn unsupported_constructs() {
        assert_eq!(
            unsupported("1 {color(V, C) : color(C)} 1 :- vertex(V)."),
            "choice rule bounds"
        );
        assert_eq!(unsupported("{p(X) : q(X)}."), "conditional literal");
        assert_eq!(unsupported("{p; q}."), "choice rule with several elements");
        assert_eq!(unsupported("{p} 1."), "choice rule bounds");
        assert_eq!(unsupported("a; b."), "disjunctive head");
        assert_eq!(unsupported("a | b."), "disjunctive head");
        assert_eq!(unsupported("-a."), "classical negation");
        assert_eq!(unsupported("a :- -b."), "classical negation");
        assert_eq!(unsupported("a :- not not b."), "double negation");
        assert_eq!(unsupported("a :- #count{X : p(X)} > 2."), "aggregate");
        assert_eq!(unsupported("a :- X = #sum{X : p(X)}, X > 2."), "aggregate");
        assert_eq!(
            unsupported("#minimize{X : p(X)}."),
            "optimization statement"
        );
        assert_eq!(unsupported(":~ p(X). [X]"), "weak constraint");
        assert_eq!(unsupported("p(1;2)."), "pool");
        assert_eq!(unsupported("p(f(1))."), "function term");
        assert_eq!(unsupported("p(-1)."), "unary minus");
        assert_eq!(
            unsupported("p(X) :- q(X), r(X) : s(X)."),
            "conditional literal"
        );
        assert_eq!(unsupported("#const n = 3."), "#const directive");
    }

    #[test]
    fn syntax_error_position() {
        match parse_program("p(a).\nq(b) :- .") {
            Err(ParseError::Syntax { line, column, .. }) => {
                assert_eq!((line, column), (2, 9));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_program("p(a)"),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_program("p(a)) ."),
            Err(ParseError::Syntax { .. })
        ));
    }

    #[test]
    fn external_in_head_is_rejected() {
        assert!(matches!(
            parse_program("p(1). #external p(1)."),
            Err(ParseError::ExternalInHead { .. })
        ));
    }

    #[test]
    fn anonymous_occurrences_are_separate_nodes() {
        let program = parse_program("p(X) :- q(X, _, _).").unwrap();
        let BodyLiteral::Positive(atom) = &program.rules[0].body[0] else {
            unreachable!()
        };
        assert_eq!(atom.arguments[1], ProgramTerm::Anonymous);
        assert_eq!(atom.arguments[2], ProgramTerm::Anonymous);
    }

    #[test]
    fn comments() {
        let program = parse_program("% line\np(a). %* block\n comment *% q(b).").unwrap();
        assert_eq!(program.rules.len(), 2);
    }
}
