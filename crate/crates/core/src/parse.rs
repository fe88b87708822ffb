//! Concrete syntax.
//!
//! ```text
//! expr    := operand (('+' | '-') operand)*      left-associative
//! operand := natural | '(' expr ')'
//! ```
//!
//! Whitespace is insignificant. Naturals are unsigned decimal.

use thiserror::Error;

use crate::natural::Natural;
use crate::syntax::{Operator, Term};

/// A parse failure, located by 0-based byte offset into the source.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("unexpected end of input at offset {offset}")]
    UnexpectedEnd { offset: usize },
    #[error("unexpected character {found:?} at offset {offset}")]
    UnexpectedChar { offset: usize, found: char },
    #[error("unbalanced parenthesis at offset {offset}")]
    UnbalancedParen { offset: usize },
    #[error("literal {literal} at offset {offset} is out of range")]
    LiteralOutOfRange { offset: usize, literal: String },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Empty => 0,
            ParseError::UnexpectedEnd { offset }
            | ParseError::UnexpectedChar { offset, .. }
            | ParseError::UnbalancedParen { offset }
            | ParseError::LiteralOutOfRange { offset, .. } => *offset,
        }
    }
}

/// Parses a term whose literals must fit in `N`.
pub fn parse<N: Natural>(src: &str) -> Result<Term<N>, ParseError> {
    Parser::new(src, None).run()
}

/// Parses a term, additionally rejecting any literal above `max_literal`.
pub fn parse_bounded<N: Natural>(src: &str, max_literal: &N) -> Result<Term<N>, ParseError> {
    Parser::new(src, Some(max_literal)).run()
}

struct Parser<'s, 'm, N> {
    src: &'s str,
    pos: usize,
    depth: usize,
    max_literal: Option<&'m N>,
}

impl<'s, 'm, N: Natural> Parser<'s, 'm, N> {
    fn new(src: &'s str, max_literal: Option<&'m N>) -> Self {
        Parser {
            src,
            pos: 0,
            depth: 0,
            max_literal,
        }
    }

    fn run(mut self) -> Result<Term<N>, ParseError> {
        self.skip_ws();
        if self.peek().is_none() {
            return Err(ParseError::Empty);
        }
        let t = self.expr()?;
        self.skip_ws();
        match self.peek() {
            None => Ok(t),
            Some(')') => Err(ParseError::UnbalancedParen { offset: self.pos }),
            Some(c) => Err(self.unexpected(c)),
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek().filter(|c| c.is_whitespace()) {
            self.pos += c.len_utf8();
        }
    }

    fn unexpected(&self, found: char) -> ParseError {
        ParseError::UnexpectedChar {
            offset: self.pos,
            found,
        }
    }

    fn expr(&mut self) -> Result<Term<N>, ParseError> {
        let mut acc = self.operand()?;
        loop {
            self.skip_ws();
            let op = match self.peek() {
                Some('+') => Operator::Add,
                Some('-') => Operator::Sub,
                _ => return Ok(acc),
            };
            self.pos += 1;
            let right = self.operand()?;
            acc = Term::opr(acc, op, right);
        }
    }

    fn operand(&mut self) -> Result<Term<N>, ParseError> {
        self.skip_ws();
        match self.peek() {
            None => Err(ParseError::UnexpectedEnd { offset: self.pos }),
            Some('(') => {
                self.pos += 1;
                self.depth += 1;
                let t = self.expr()?;
                self.skip_ws();
                match self.peek() {
                    Some(')') => {
                        self.pos += 1;
                        self.depth -= 1;
                        Ok(t)
                    }
                    None => Err(ParseError::UnbalancedParen { offset: self.pos }),
                    Some(c) => Err(self.unexpected(c)),
                }
            }
            Some(c) if c.is_ascii_digit() => self.literal(),
            Some(')') if self.depth == 0 => Err(ParseError::UnbalancedParen { offset: self.pos }),
            Some(c) => Err(self.unexpected(c)),
        }
    }

    fn literal(&mut self) -> Result<Term<N>, ParseError> {
        let start = self.pos;
        let digits = self.src[start..].bytes().take_while(u8::is_ascii_digit).count();
        self.pos += digits;
        let text = &self.src[start..self.pos];
        let out_of_range = || ParseError::LiteralOutOfRange {
            offset: start,
            literal: text.to_string(),
        };
        let n = N::from_str_radix(text, 10).map_err(|_| out_of_range())?;
        if self.max_literal.is_some_and(|max| &n > max) {
            return Err(out_of_range());
        }
        Ok(Term::Lit(n))
    }
}
