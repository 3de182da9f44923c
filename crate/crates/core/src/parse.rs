//! Recursive-descent reader for ordinal, cardinal and context literals.
//!
//! ```text
//! ordinal   := oterm ('+' oterm)*
//! oterm     := nat | 'w' ('^' oexp)? ('*' nat)?
//! oexp      := nat | 'w' | '(' ordinal ')'
//! index     := 'w1' ('+' ordinal)? | ordinal
//! term      := '2' '^' term | 'c' | nat
//!            | 'aleph' '(' index ')' | 'beth' '(' index ')'
//!            | 'sup' '[' term (',' term)* ']'
//!            | 'poww' '(' term ')' | 'weakpow' '(' term ')'
//! directive := 'GCH' | 'CH' | 'notCH' | 'lusin' | term '=' term
//! ```

use num_bigint::BigUint;

use crate::cardinal::{CardIndex, CardinalTerm, Directive};
use crate::error::ParseError;
use crate::ordinal::Ordinal;

pub struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn position(&self) -> (usize, usize) {
        let before = &self.src[..self.pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        (line, column)
    }

    pub fn error(&self, message: impl Into<String>) -> ParseError {
        let (line, column) = self.position();
        ParseError::new(line, column, message)
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    pub fn expect_end(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("unexpected '{c}'"))),
        }
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest
            .char_indices()
            .find(|(_, c)| !c.is_ascii_alphanumeric() && *c != '_')
            .map_or(rest.len(), |(i, _)| i);
        if len == 0 || !rest.starts_with(|c: char| c.is_ascii_alphabetic()) {
            return None;
        }
        self.pos += len;
        Some(&rest[..len])
    }

    fn nat(&mut self) -> Option<BigUint> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        if len == 0 {
            return None;
        }
        self.pos += len;
        rest[..len].parse().ok()
    }

    fn small_nat(&mut self) -> Result<Option<u64>, ParseError> {
        let start = self.pos;
        match self.nat() {
            None => Ok(None),
            Some(n) => u64::try_from(n).map(Some).map_err(|_| {
                self.pos = start;
                self.error("coefficient too large")
            }),
        }
    }

    pub fn ordinal(&mut self) -> Result<Ordinal, ParseError> {
        let mut acc = self.ordinal_term()?;
        while self.eat('+') {
            acc = acc.add(&self.ordinal_term()?);
        }
        Ok(acc)
    }

    fn ordinal_term(&mut self) -> Result<Ordinal, ParseError> {
        if let Some(n) = self.small_nat()? {
            return Ok(Ordinal::nat(n));
        }
        let save = self.pos;
        match self.ident() {
            Some("w") => {}
            Some(other) => {
                self.pos = save;
                return Err(self.error(format!("unknown identifier '{other}' in ordinal")));
            }
            None => return Err(self.error("expected ordinal")),
        }
        let exponent = if self.eat('^') {
            if let Some(n) = self.small_nat()? {
                Ordinal::nat(n)
            } else if self.eat('(') {
                let e = self.ordinal()?;
                self.expect(')')?;
                e
            } else {
                let save = self.pos;
                match self.ident() {
                    Some("w") => Ordinal::omega(),
                    _ => {
                        self.pos = save;
                        return Err(self.error("expected exponent"));
                    }
                }
            }
        } else {
            Ordinal::one()
        };
        let coefficient = if self.eat('*') {
            match self.small_nat()? {
                Some(n) => n,
                None => return Err(self.error("expected coefficient")),
            }
        } else {
            1
        };
        Ok(Ordinal::monomial(exponent, coefficient))
    }

    pub fn index(&mut self) -> Result<CardIndex, ParseError> {
        self.skip_ws();
        if let Some(after) = self.rest().strip_prefix("w1") {
            if !after.starts_with(|c: char| c.is_ascii_alphanumeric()) {
                self.pos += 2;
                let offset = if self.eat('+') {
                    self.ordinal()?
                } else {
                    Ordinal::zero()
                };
                return Ok(CardIndex::AboveOmegaOne(offset));
            }
        }
        Ok(CardIndex::Countable(self.ordinal()?))
    }

    pub fn term(&mut self) -> Result<CardinalTerm, ParseError> {
        if let Some(n) = self.nat() {
            if self.eat('^') {
                if n != BigUint::from(2u32) {
                    return Err(self.error("only base 2 exponentiation is supported"));
                }
                return Ok(CardinalTerm::exp2(self.term()?));
            }
            return Ok(CardinalTerm::Fin(n));
        }
        let save = self.pos;
        let Some(name) = self.ident() else {
            return Err(self.error("expected cardinal term"));
        };
        match name {
            "c" => Ok(CardinalTerm::continuum()),
            "aleph" | "beth" => {
                self.expect('(')?;
                let i = self.index()?;
                self.expect(')')?;
                Ok(if name == "aleph" {
                    CardinalTerm::Aleph(i)
                } else {
                    CardinalTerm::Beth(i)
                })
            }
            "poww" | "weakpow" => {
                self.expect('(')?;
                let t = self.term()?;
                self.expect(')')?;
                Ok(if name == "poww" {
                    CardinalTerm::PowOmega(Box::new(t))
                } else {
                    CardinalTerm::WeakPow(Box::new(t))
                })
            }
            "sup" => {
                self.expect('[')?;
                let mut items = vec![self.term()?];
                while self.eat(',') {
                    items.push(self.term()?);
                }
                self.expect(']')?;
                Ok(CardinalTerm::Sup(items))
            }
            other => {
                self.pos = save;
                Err(self.error(format!("unknown identifier '{other}'")))
            }
        }
    }

    pub fn directive(&mut self) -> Result<Directive, ParseError> {
        self.skip_ws();
        let save = self.pos;
        if let Some(word) = self.ident() {
            let d = match word {
                "GCH" | "gch" => Some(Directive::Gch),
                "CH" | "ch" => Some(Directive::Ch),
                "notCH" | "notch" => Some(Directive::NotCh),
                "lusin" | "Lusin" => Some(Directive::Lusin),
                _ => None,
            };
            if let Some(d) = d {
                return Ok(d);
            }
            self.pos = save;
        }
        let lhs = self.term()?;
        self.expect('=')?;
        let rhs = self.term()?;
        let CardinalTerm::Exp2(arg) = lhs else {
            self.pos = save;
            return Err(self.error("equalities must have the form 2^<aleph or beth> = <term>"));
        };
        match *arg {
            CardinalTerm::Aleph(_) | CardinalTerm::Beth(_) => Ok(Directive::Continuum {
                arg: *arg,
                value: rhs,
            }),
            _ => {
                self.pos = save;
                Err(self.error("the argument of 2^ in an equality must be an aleph or beth atom"))
            }
        }
    }
}

pub fn parse_term(src: &str) -> Result<CardinalTerm, ParseError> {
    let mut c = Cursor::new(src);
    let t = c.term()?;
    c.expect_end()?;
    Ok(t)
}

pub fn parse_index(src: &str) -> Result<CardIndex, ParseError> {
    let mut c = Cursor::new(src);
    let i = c.index()?;
    c.expect_end()?;
    Ok(i)
}

/// Parses a context file: one directive per line, `#` starts a comment.
pub fn parse_context_lines(src: &str) -> Result<Vec<Directive>, ParseError> {
    let mut out = Vec::new();
    for (n, line) in src.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let mut c = Cursor::new(body);
        let d = c
            .directive()
            .and_then(|d| c.expect_end().map(|_| d))
            .map_err(|e| e.offset(n, 0))?;
        out.push(d);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terms_parse() {
        assert_eq!(
            parse_term("aleph(w+2)").unwrap(),
            CardinalTerm::Aleph(CardIndex::Countable("w+2".parse().unwrap()))
        );
        assert_eq!(
            parse_term("beth(w1)").unwrap(),
            CardinalTerm::Beth(CardIndex::AboveOmegaOne(Ordinal::zero()))
        );
        assert_eq!(parse_term("c").unwrap(), parse_term("2^aleph(0)").unwrap());
        assert!(matches!(parse_term("sup[aleph(1), 3]").unwrap(), CardinalTerm::Sup(v) if v.len() == 2));
        assert!(matches!(parse_term("poww(weakpow(beth(w)))").unwrap(), CardinalTerm::PowOmega(_)));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_term("aleph(w+)").unwrap_err();
        assert_eq!((e.line, e.column), (1, 9));
        let e = parse_term("alef(1)").unwrap_err();
        assert_eq!(e.column, 1);
        assert!(e.message.contains("unknown identifier"));
        let e = parse_context_lines("GCH\n\n2^aleph(1) aleph(2)").unwrap_err();
        assert_eq!(e.line, 3);
    }

    #[test]
    fn context_lines() {
        let ds = parse_context_lines("# big continuum\n2^aleph(w+1) = aleph(w+2)\nnotCH\n").unwrap();
        assert_eq!(ds.len(), 2);
        assert_eq!(ds[1], Directive::NotCh);
        assert!(parse_context_lines("2^sup[aleph(0)] = aleph(1)").is_err());
    }
}
