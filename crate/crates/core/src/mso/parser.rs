//! Concrete syntax:
//!
//! ```text
//! formula := unary ('&' unary)* ... with precedence  !  >  &  >  |  >  ->
//! unary   := '!' unary | ('EX' | 'ALL') var (',' var)* '.' formula | atom | '(' formula ')'
//! atom    := 'true' | 'false' | 'S0(' x ',' y ')' | 'S1(' x ',' y ')' | 'root(' x ')'
//!          | x 'in' X | x '=' y | x '<=' y
//! ```
//!
//! `->` associates to the right, `&` and `|` to the left. A quantifier body
//! extends as far to the right as possible.

use super::ast::{is_set_variable, Formula, Var};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Bang,
    Amp,
    Bar,
    Arrow,
    Equals,
    Leq,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c.is_ascii_alphanumeric() || c == '_' {
            let mut ident = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                    ident.push(c);
                    chars.next();
                } else {
                    break;
                }
            }
            tokens.push((Token::Ident(ident), pos));
            continue;
        }
        chars.next();
        let token = match c {
            '(' => Token::LParen,
            ')' => Token::RParen,
            ',' => Token::Comma,
            '.' => Token::Dot,
            '!' | '~' => Token::Bang,
            '&' => Token::Amp,
            '|' => Token::Bar,
            '=' => Token::Equals,
            '-' if chars.peek().map(|p| p.1) == Some('>') => {
                chars.next();
                Token::Arrow
            }
            '<' if chars.peek().map(|p| p.1) == Some('=') => {
                chars.next();
                Token::Leq
            }
            _ => {
                return Err(Error::Syntax {
                    pos,
                    message: format!("unexpected character `{c}`"),
                })
            }
        };
        tokens.push((token, pos));
    }
    tokens.push((Token::End, text.len()));
    Ok(tokens)
}

const KEYWORDS: [&str; 8] = ["EX", "ALL", "in", "S0", "S1", "root", "true", "false"];

struct Parser {
    tokens: Vec<(Token, usize)>,
    at: usize,
    bound: Vec<Var>,
    free: Vec<(Var, usize)>,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.at].0
    }

    fn pos(&self) -> usize {
        self.tokens[self.at].1
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.at].0.clone();
        if t != Token::End {
            self.at += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            message: message.into(),
        })
    }

    fn expect(&mut self, token: Token, what: &str) -> Result<()> {
        if *self.peek() == token {
            self.next();
            Ok(())
        } else {
            self.error(format!("expected {what}"))
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let left = self.disjunction()?;
        if *self.peek() == Token::Arrow {
            self.next();
            let right = self.formula()?;
            return Ok(Formula::implies(left, right));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut f = self.conjunction()?;
        while *self.peek() == Token::Bar {
            self.next();
            f = Formula::or(f, self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut f = self.unary()?;
        while *self.peek() == Token::Amp {
            self.next();
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Token::Bang => {
                self.next();
                Ok(Formula::not(self.unary()?))
            }
            Token::LParen => {
                self.next();
                let f = self.formula()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(f)
            }
            Token::Ident(w) if w == "EX" || w == "ALL" => {
                self.next();
                let mut vars = vec![self.binder()?];
                while *self.peek() == Token::Comma {
                    self.next();
                    vars.push(self.binder()?);
                }
                self.expect(Token::Dot, "`.` after quantified variables")?;
                let depth = self.bound.len();
                self.bound.extend(vars.iter().cloned());
                let body = self.formula()?;
                self.bound.truncate(depth);
                Ok(if w == "EX" {
                    Formula::exists_all(vars, body)
                } else {
                    Formula::forall_all(vars, body)
                })
            }
            Token::Ident(w) if w == "true" => {
                self.next();
                Ok(Formula::True)
            }
            Token::Ident(w) if w == "false" => {
                self.next();
                Ok(Formula::False)
            }
            Token::Ident(w) if w == "S0" || w == "S1" || w == "root" => {
                self.next();
                self.expect(Token::LParen, &format!("`(` after {w}"))?;
                let x = self.element()?;
                let f = if w == "root" {
                    Formula::Root(x)
                } else {
                    self.expect(Token::Comma, &format!("`,`: {w} takes two arguments"))?;
                    let y = self.element()?;
                    Formula::Succ(if w == "S0" { 0 } else { 1 }, x, y)
                };
                self.expect(Token::RParen, "`)`")?;
                Ok(f)
            }
            Token::Ident(_) => {
                let x = self.element()?;
                match self.next() {
                    Token::Ident(w) if w == "in" => Ok(Formula::In(x, self.set()?)),
                    Token::Equals => Ok(Formula::Eq(x, self.element()?)),
                    Token::Leq => Ok(Formula::Prefix(x, self.element()?)),
                    _ => {
                        self.at -= 1;
                        self.error("expected `in`, `=` or `<=`")
                    }
                }
            }
            _ => self.error("expected a formula"),
        }
    }

    fn name(&mut self) -> Result<(Var, usize)> {
        let pos = self.pos();
        match self.next() {
            Token::Ident(w) if !KEYWORDS.contains(&w.as_str()) && !w.starts_with(|c: char| c.is_ascii_digit()) => {
                Ok((w, pos))
            }
            _ => {
                self.at -= 1;
                self.error("expected a variable")
            }
        }
    }

    fn binder(&mut self) -> Result<Var> {
        Ok(self.name()?.0)
    }

    fn occurrence(&mut self, set: bool) -> Result<Var> {
        let (v, pos) = self.name()?;
        if is_set_variable(&v) != set {
            let expected = if set { "a set variable" } else { "a node variable" };
            return Err(Error::SortClash {
                pos,
                message: format!("`{v}` used where {expected} is required"),
            });
        }
        if !self.bound.contains(&v) {
            self.free.push((v.clone(), pos));
        }
        Ok(v)
    }

    fn element(&mut self) -> Result<Var> {
        self.occurrence(false)
    }

    fn set(&mut self) -> Result<Var> {
        self.occurrence(true)
    }
}

fn run(text: &str) -> Result<(Formula, Vec<(Var, usize)>)> {
    let mut p = Parser {
        tokens: tokenize(text)?,
        at: 0,
        bound: Vec::new(),
        free: Vec::new(),
    };
    let f = p.formula()?;
    if *p.peek() != Token::End {
        return p.error("unexpected input after formula");
    }
    Ok((f, p.free))
}

/// Parses a formula; free variables are allowed.
pub fn parse(text: &str) -> Result<Formula> {
    Ok(run(text)?.0)
}

/// Parses a formula that must not have free variables.
pub fn parse_sentence(text: &str) -> Result<Formula> {
    let (f, free) = run(text)?;
    match free.into_iter().next() {
        Some((name, pos)) => Err(Error::UnboundVariable { name, pos }),
        None => Ok(f),
    }
}
