//! Lexer and parser for identity files.
//!
//! ```text
//! file   := ("let" NAME "=" expr ";")* [final [";"]]
//! final  := "U" "(" INT ")" expr "=" expr | expr ["=" expr]
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := ("-" | "+") unary | power
//! power  := atom ["^" unary]
//! atom   := INT | "eta" "(" INT ")" | "[" INT ("," INT)* "]" | "[" "]" | NAME | "(" expr ")"
//! ```
//! `#` starts a comment running to the end of the line.

use std::fmt;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("syntax error at {pos}: {message}")]
pub struct SyntaxError {
    pub pos: Pos,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(String),
    Ident(String),
    Sym(char),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(s) => write!(f, "number {s}"),
            Tok::Ident(s) => write!(f, "name `{s}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, SyntaxError> {
    let mut out = vec![];
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            chars.next();
            col += 1;
        } else if c == '#' {
            while chars.peek().is_some_and(|c| *c != '\n') {
                chars.next();
            }
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(*d);
                chars.next();
                col += 1;
            }
            out.push((Tok::Int(s), pos));
        } else if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(d) = chars.peek().filter(|d| d.is_alphanumeric() || **d == '_') {
                s.push(*d);
                chars.next();
                col += 1;
            }
            out.push((Tok::Ident(s), pos));
        } else if "+-*/^()[],=;".contains(c) {
            chars.next();
            col += 1;
            out.push((Tok::Sym(c), pos));
        } else {
            return Err(SyntaxError { pos, message: format!("unexpected character `{c}`") });
        }
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Int(String),
    Eta(u64),
    Bracket(Vec<i64>),
    Name(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: Pos,
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Int(s) => write!(f, "{s}"),
            ExprKind::Eta(k) => write!(f, "eta({k})"),
            ExprKind::Bracket(v) => {
                let parts: Vec<String> = v.iter().map(i64::to_string).collect();
                write!(f, "[{}]", parts.join(","))
            }
            ExprKind::Name(s) => write!(f, "{s}"),
            ExprKind::Neg(a) => write!(f, "-({a})"),
            ExprKind::Add(a, b) => write!(f, "({a} + {b})"),
            ExprKind::Sub(a, b) => write!(f, "({a} - {b})"),
            ExprKind::Mul(a, b) => write!(f, "{a}*{b}"),
            ExprKind::Div(a, b) => write!(f, "{a}/{b}"),
            ExprKind::Pow(a, b) => write!(f, "{a}^{b}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Binding {
    pub name: String,
    pub value: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    /// `lhs` or `lhs = rhs`: the identity `lhs - rhs = 0`.
    Linear { lhs: Expr, rhs: Option<Expr> },
    /// `U(p) lhs = rhs`.
    Up { p: u64, lhs: Expr, rhs: Expr },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Program {
    pub bindings: Vec<Binding>,
    pub statement: Option<Statement>,
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.at + k).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error<T>(&self, message: String) -> Result<T, SyntaxError> {
        Err(SyntaxError { pos: self.pos(), message })
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), SyntaxError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.error(format!("expected `{c}`, found {}", self.peek()))
        }
    }

    fn integer(&mut self) -> Result<u64, SyntaxError> {
        match self.peek().clone() {
            Tok::Int(s) => match s.parse() {
                Ok(v) => {
                    self.bump();
                    Ok(v)
                }
                Err(_) => self.error(format!("integer {s} is too large")),
            },
            t => self.error(format!("expected an integer, found {t}")),
        }
    }

    fn signed_integer(&mut self) -> Result<i64, SyntaxError> {
        let negative = self.eat('-');
        let pos = self.pos();
        let v = self.integer()?;
        let v = i64::try_from(v).map_err(|_| SyntaxError { pos, message: format!("integer {v} is too large") })?;
        Ok(if negative { -v } else { v })
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.term()?;
        loop {
            let pos = self.pos();
            let kind = if self.eat('+') {
                ExprKind::Add
            } else if self.eat('-') {
                ExprKind::Sub
            } else {
                return Ok(lhs);
            };
            let rhs = self.term()?;
            lhs = Expr { kind: kind(Box::new(lhs), Box::new(rhs)), pos };
        }
    }

    fn term(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.unary()?;
        loop {
            let pos = self.pos();
            let kind = if self.eat('*') {
                ExprKind::Mul
            } else if self.eat('/') {
                ExprKind::Div
            } else {
                return Ok(lhs);
            };
            let rhs = self.unary()?;
            lhs = Expr { kind: kind(Box::new(lhs), Box::new(rhs)), pos };
        }
    }

    fn unary(&mut self) -> Result<Expr, SyntaxError> {
        let pos = self.pos();
        if self.eat('-') {
            let inner = self.unary()?;
            Ok(Expr { kind: ExprKind::Neg(Box::new(inner)), pos })
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, SyntaxError> {
        let base = self.atom()?;
        let pos = self.pos();
        if self.eat('^') {
            let exp = self.unary()?;
            Ok(Expr { kind: ExprKind::Pow(Box::new(base), Box::new(exp)), pos })
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr, SyntaxError> {
        let pos = self.pos();
        let kind = match self.peek().clone() {
            Tok::Int(s) => {
                self.bump();
                ExprKind::Int(s)
            }
            Tok::Ident(name) if name == "eta" => {
                self.bump();
                self.expect('(')?;
                let k_pos = self.pos();
                let k = self.integer()?;
                if k == 0 {
                    return Err(SyntaxError { pos: k_pos, message: "eta multiplier must be positive".into() });
                }
                self.expect(')')?;
                ExprKind::Eta(k)
            }
            Tok::Ident(name) => {
                self.bump();
                ExprKind::Name(name)
            }
            Tok::Sym('[') => {
                self.bump();
                let mut list = vec![];
                if !self.eat(']') {
                    loop {
                        list.push(self.signed_integer()?);
                        if self.eat(']') {
                            break;
                        }
                        self.expect(',')?;
                    }
                }
                ExprKind::Bracket(list)
            }
            Tok::Sym('(') => {
                self.bump();
                let inner = self.expr()?;
                self.expect(')')?;
                return Ok(inner);
            }
            t => return self.error(format!("expected an expression, found {t}")),
        };
        Ok(Expr { kind, pos })
    }

    fn statement(&mut self) -> Result<Statement, SyntaxError> {
        let is_up = matches!(self.peek(), Tok::Ident(n) if n == "U") && *self.peek_at(1) == Tok::Sym('(');
        if is_up {
            self.bump();
            self.bump();
            let p = self.integer()?;
            self.expect(')')?;
            let lhs = self.expr()?;
            self.expect('=')?;
            let rhs = self.expr()?;
            return Ok(Statement::Up { p, lhs, rhs });
        }
        let lhs = self.expr()?;
        let rhs = if self.eat('=') { Some(self.expr()?) } else { None };
        Ok(Statement::Linear { lhs, rhs })
    }

    fn program(&mut self) -> Result<Program, SyntaxError> {
        let mut bindings = vec![];
        while matches!(self.peek(), Tok::Ident(n) if n == "let") {
            self.bump();
            let name = match self.bump() {
                (Tok::Ident(n), _) if n != "eta" && n != "let" => n,
                (t, pos) => return Err(SyntaxError { pos, message: format!("expected a name, found {t}") }),
            };
            self.expect('=')?;
            let value = self.expr()?;
            self.expect(';')?;
            bindings.push(Binding { name, value });
        }
        let statement = if *self.peek() == Tok::Eof { None } else { Some(self.statement()?) };
        self.eat(';');
        if *self.peek() != Tok::Eof {
            return self.error(format!("unexpected {} after the identity", self.peek()));
        }
        Ok(Program { bindings, statement })
    }
}

pub fn parse_program(text: &str) -> Result<Program, SyntaxError> {
    Parser { toks: lex(text)?, at: 0 }.program()
}

pub fn parse_expr(text: &str) -> Result<Expr, SyntaxError> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::Eof {
        return p.error(format!("unexpected {}", p.peek()));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        assert_eq!(parse_expr("1 + 2*eta(3)^2").unwrap().to_string(), "(1 + 2*eta(3)^2)");
        assert_eq!(parse_expr("-x^2").unwrap().to_string(), "-(x^2)");
        assert_eq!(parse_expr("a - b - c").unwrap().to_string(), "((a - b) - c)");
        assert_eq!(parse_expr("3/4*[2,1]").unwrap().to_string(), "3/4*[2,1]");
        assert_eq!(parse_expr("x^-3").unwrap().to_string(), "x^-(3)");
    }

    #[test]
    fn programs() {
        let p = parse_program("# comment\nlet P = eta(1)^2/eta(3)^2;\nP = 1;").unwrap();
        assert_eq!(p.bindings.len(), 1);
        assert!(matches!(p.statement, Some(Statement::Linear { rhs: Some(_), .. })));
        let p = parse_program("U(5) [2,1] = 3").unwrap();
        assert!(matches!(p.statement, Some(Statement::Up { p: 5, .. })));
        assert_eq!(parse_program("").unwrap().statement, None);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_program("let P = eta(1;\nP").unwrap_err();
        assert_eq!(e.pos, Pos { line: 1, col: 14 });
        let e = parse_program("1 +\n  $").unwrap_err();
        assert_eq!(e.pos, Pos { line: 2, col: 3 });
        assert!(parse_expr("eta(0)").is_err());
        assert!(parse_expr("[1,2").is_err());
        assert!(parse_expr("1 2").is_err());
    }
}
