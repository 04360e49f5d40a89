//! Concrete syntax.
//!
//! ```text
//! term   := sum
//! sum    := scaled ('+' sum)?
//! scaled := scalar '.' scaled | app
//! app    := atom atom*
//! atom   := var | '0' | '\' var '.' term | '(' term ')'
//! ```
//!
//! Sums associate to the right, matching the shape of linear normal forms.
//! `λ` is accepted in place of `\`. The names `k`, `b`, `b1` and `b2` parse
//! into their reserved namespaces.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::scalar::{Rational, Scalar};
use crate::term::{Term, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at column {column}: {message}")]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

/// Parses a term with rational coefficients.
pub fn parse(input: &str) -> Result<Term<Rational>, ParseError> {
    parse_in(input)
}

/// Parses a term over an arbitrary scalar ring.
pub fn parse_in<S: Scalar>(input: &str) -> Result<Term<S>, ParseError> {
    let mut p = Parser { src: input, pos: 0 };
    let t = p.term()?;
    p.skip_ws();
    if p.pos < input.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(t)
}

impl<S: Scalar> FromStr for Term<S> {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_in(s)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

fn is_ident_start(c: char) -> bool {
    (c.is_alphabetic() || c == '_') && c != 'λ'
}

fn is_ident_continue(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            column: self.src[..self.pos].chars().count() + 1,
            message: message.into(),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn term<S: Scalar>(&mut self) -> Result<Term<S>, ParseError> {
        let left = self.scaled()?;
        self.skip_ws();
        if self.peek() == Some('+') {
            self.pos += 1;
            let right = self.term()?;
            return Ok(Term::sum(left, right));
        }
        Ok(left)
    }

    fn scaled<S: Scalar>(&mut self) -> Result<Term<S>, ParseError> {
        self.skip_ws();
        if let Some((alpha, len)) = S::parse_prefix(self.rest()) {
            let after = self.src[self.pos + len..].trim_start();
            if after.starts_with('.') {
                self.pos = self.src.len() - after.len() + 1;
                let body = self.scaled()?;
                return Ok(Term::scale(alpha, body));
            }
        }
        self.app()
    }

    fn app<S: Scalar>(&mut self) -> Result<Term<S>, ParseError> {
        let mut head = self.atom()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c == '(' || c == '\\' || c == 'λ' || c == '0' || is_ident_start(c) => {
                    let arg = self.atom()?;
                    head = Term::app(head, arg);
                }
                _ => return Ok(head),
            }
        }
    }

    fn atom<S: Scalar>(&mut self) -> Result<Term<S>, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(')')?;
                Ok(t)
            }
            Some(c @ ('\\' | 'λ')) => {
                self.pos += c.len_utf8();
                let v = self.ident()?;
                self.expect('.')?;
                let body = self.term()?;
                Ok(Term::lam(v, body))
            }
            Some('0') => {
                let digits = self
                    .rest()
                    .chars()
                    .take_while(|c| c.is_ascii_digit())
                    .count();
                if digits != 1 {
                    return Err(self.error("numbers other than 0 must be followed by `.`"));
                }
                self.pos += 1;
                Ok(Term::Zero)
            }
            Some(c) if is_ident_start(c) => Ok(Term::Var(self.ident()?)),
            Some(_) => Err(self.error("expected a term")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn ident(&mut self) -> Result<Var, ParseError> {
        self.skip_ws();
        let rest = self.rest();
        match rest.chars().next() {
            Some(c) if is_ident_start(c) => {}
            _ => return Err(self.error("expected a variable name")),
        }
        let len = rest
            .char_indices()
            .find(|&(_, c)| !is_ident_continue(c))
            .map_or(rest.len(), |(i, _)| i);
        let name = &rest[..len];
        self.pos += len;
        Ok(Var::named(name))
    }
}

#[derive(Clone, Copy, PartialEq, PartialOrd)]
enum Level {
    Sum,
    Scaled,
    App,
    Atom,
}

fn write_term<S: Scalar>(
    t: &Term<S>,
    level: Level,
    rightmost: bool,
    f: &mut fmt::Formatter<'_>,
) -> fmt::Result {
    let needs_parens = match t {
        Term::Sum(..) => level > Level::Sum,
        Term::Scale(..) => level > Level::Scaled,
        Term::App(..) => level > Level::App,
        Term::Lam(..) => !rightmost,
        Term::Var(_) | Term::Zero => false,
    };
    if needs_parens {
        f.write_str("(")?;
        write_term(t, Level::Sum, true, f)?;
        return f.write_str(")");
    }
    match t {
        Term::Var(v) => write!(f, "{v}"),
        Term::Zero => f.write_str("0"),
        Term::Lam(v, body) => {
            write!(f, "\\{v}. ")?;
            write_term(body, Level::Sum, true, f)
        }
        Term::App(fun, arg) => {
            write_term(fun, Level::App, false, f)?;
            f.write_str(" ")?;
            write_term(arg, Level::Atom, rightmost, f)
        }
        Term::Scale(alpha, body) => {
            write!(f, "{alpha}.")?;
            write_term(body, Level::Scaled, rightmost, f)
        }
        Term::Sum(l, r) => {
            write_term(l, Level::Scaled, false, f)?;
            f.write_str(" + ")?;
            write_term(r, Level::Sum, rightmost, f)
        }
    }
}

impl<S: Scalar> fmt::Display for Term<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(self, Level::Sum, true, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Gaussian;
    use crate::term::Namespace;

    #[test]
    fn parses_precedence() {
        let t = parse(r"1/2.f x + y").unwrap();
        let expected = Term::sum(
            Term::scale(
                Rational::new(1, 2),
                Term::app(Term::src("f"), Term::src("x")),
            ),
            Term::src("y"),
        );
        assert_eq!(t, expected);
        assert_eq!(
            parse("x + y + z").unwrap(),
            Term::sum(Term::src("x"), Term::sum(Term::src("y"), Term::src("z")))
        );
        assert_eq!(
            parse(r"\x. x y").unwrap(),
            Term::lam(Var::source("x"), Term::app(Term::src("x"), Term::src("y")))
        );
        assert_eq!(
            parse("f x y").unwrap(),
            Term::apps(Term::src("f"), [Term::src("x"), Term::src("y")])
        );
    }

    #[test]
    fn reserved_names() {
        match parse(r"\k. k b1").unwrap() {
            Term::Lam(v, body) => {
                assert_eq!(v.ns(), Namespace::Continuation);
                match &*body {
                    Term::App(_, arg) => assert_eq!(**arg, Term::Var(Var::b1())),
                    other => panic!("unexpected {other:?}"),
                }
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(parse("bb").unwrap(), Term::src("bb"));
    }

    #[test]
    fn zero_and_scalars() {
        assert_eq!(parse("0").unwrap(), Term::Zero);
        assert_eq!(
            parse("0.x").unwrap(),
            Term::scale(Rational::from_integer(0), Term::src("x"))
        );
        assert_eq!(
            parse("2.0").unwrap(),
            Term::scale(Rational::from_integer(2), Term::Zero)
        );
        assert_eq!(
            parse("-1.x").unwrap(),
            Term::scale(Rational::from_integer(-1), Term::src("x"))
        );
        assert!(parse("2 x").is_err());
    }

    #[test]
    fn errors_are_positioned() {
        let err = parse(r"(\x. x").unwrap_err();
        assert_eq!(err.column, 7);
        let err = parse("x + ").unwrap_err();
        assert_eq!(err.column, 5);
        assert!(parse("x )").is_err());
    }

    #[test]
    fn prints_minimal_parentheses() {
        for src in [
            r"\k. k x",
            r"(\x. x) y",
            r"f (\x. x) y",
            r"f \x. x",
            r"(\f. f y y) + \f. f z z",
            r"2.(x + y)",
            r"(x + y) + z",
            r"x + y + z",
            r"f (g x) (2.y)",
            r"1/2.3.x",
            r"0 x",
            r"x + -1.y",
        ] {
            assert_eq!(parse(src).unwrap().to_string(), src);
        }
    }

    #[test]
    fn gaussian_terms() {
        let t: Term<Gaussian> = parse_in("1+2i.x + i.y").unwrap();
        assert_eq!(t.to_string(), "1+2i.x + i.y");
        let u: Term<Gaussian> = parse_in(r"\i. i").unwrap();
        assert!(matches!(u, Term::Lam(..)));
    }

    #[test]
    fn unicode_lambda_and_identifiers() {
        let t = parse("λx. x ψ").unwrap();
        assert_eq!(t.to_string(), r"\x. x ψ");
    }
}
