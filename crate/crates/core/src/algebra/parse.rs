//! Parser for the element expression syntax used by witnesses and the CLI:
//! `+ - * / ^` over variables and integer literals, parentheses, `^` with a
//! nonnegative integer exponent. Whitespace-insensitive.

use super::ratfunc::RatFunc;
use super::scalar::CoeffField;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Clone, PartialEq, Eq, Debug, Error)]
#[error("element syntax error at offset {offset}: {message}")]
pub struct ElementParseError {
    pub offset: usize,
    pub message: String,
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
    field: CoeffField,
    nvars: usize,
    names: &'a [String],
    aliases: &'a BTreeMap<String, RatFunc>,
}

/// Parse an element expression against an ordered variable list, with
/// optional identifier aliases (used for derived names such as constant
/// chain levels).
pub fn parse_element(
    src: &str,
    field: CoeffField,
    names: &[String],
    aliases: &BTreeMap<String, RatFunc>,
) -> Result<RatFunc, ElementParseError> {
    let mut cur = Cursor { src: src.as_bytes(), pos: 0, field, nvars: names.len(), names, aliases };
    cur.skip_ws();
    let value = cur.expr()?;
    cur.skip_ws();
    if cur.pos != cur.src.len() {
        return Err(cur.err("unexpected trailing input"));
    }
    Ok(value)
}

impl<'a> Cursor<'a> {
    fn err(&self, message: &str) -> ElementParseError {
        ElementParseError { offset: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            self.skip_ws();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatFunc, ElementParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc, ElementParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat(b'/') {
                let pos = self.pos;
                let rhs = self.unary()?;
                acc = acc.div(&rhs).map_err(|_| ElementParseError {
                    offset: pos,
                    message: "division by zero".to_string(),
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc, ElementParseError> {
        if self.eat(b'-') {
            Ok(self.unary()?.neg())
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<RatFunc, ElementParseError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.integer()?;
            if e > 64 {
                return Err(self.err("exponent too large"));
            }
            Ok(base.pow(e as u32))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<RatFunc, ElementParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                self.skip_ws();
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RatFunc::from_poly(super::poly::Poly::constant(
                    self.field,
                    self.nvars,
                    self.field.from_u64(n),
                )))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self
                    .peek()
                    .map(|b| b.is_ascii_alphanumeric() || b == b'_')
                    .unwrap_or(false)
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos])
                    .expect("ascii identifier")
                    .to_string();
                self.skip_ws();
                if let Some(i) = self.names.iter().position(|n| *n == name) {
                    Ok(RatFunc::var(self.field, self.nvars, i).expect("index in range"))
                } else if let Some(alias) = self.aliases.get(&name) {
                    Ok(alias.clone())
                } else {
                    Err(ElementParseError {
                        offset: start,
                        message: format!("unknown variable `{name}`"),
                    })
                }
            }
            _ => Err(self.err("expected a variable, integer or '('")),
        }
    }

    fn integer(&mut self) -> Result<u64, ElementParseError> {
        let start = self.pos;
        while self.peek().map(|b| b.is_ascii_digit()).unwrap_or(false) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let n = text.parse::<u64>().map_err(|_| ElementParseError {
            offset: start,
            message: "integer literal too large".to_string(),
        })?;
        self.skip_ws();
        Ok(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        vec!["t1".into(), "t2".into()]
    }

    fn parse(src: &str) -> RatFunc {
        parse_element(src, CoeffField::rationals(), &names(), &BTreeMap::new()).unwrap()
    }

    #[test]
    fn parses_spec_syntax() {
        let f = parse("t1^2*t2 + 3");
        assert_eq!(f.render(&names()), "t1^2*t2 + 3");
    }

    #[test]
    fn precedence_and_unary_minus() {
        assert_eq!(parse("-t1 + t2*t1"), parse("t1*t2 - t1"));
        assert_eq!(parse("t1 - 2*t2"), parse("t1 - t2 - t2"));
        assert_eq!(parse("(t1 + t2)^2"), parse("t1^2 + 2*t1*t2 + t2^2"));
    }

    #[test]
    fn division_builds_rational_functions() {
        let f = parse("(t1 + 1)/(t2)");
        assert_eq!(f.render(&names()), "(t1 + 1)/(t2)");
        // render/parse round trip
        let g = parse(&f.render(&names()));
        assert_eq!(f, g);
    }

    #[test]
    fn rejects_unknown_variable() {
        let err =
            parse_element("t3 + 1", CoeffField::rationals(), &names(), &BTreeMap::new())
                .unwrap_err();
        assert!(err.message.contains("t3"));
    }

    #[test]
    fn char_p_literals_reduce() {
        let f2 = CoeffField::prime(2).unwrap();
        let f = parse_element("t1 + 3", f2, &names(), &BTreeMap::new()).unwrap();
        assert_eq!(f.render(&names()), "t1 + 1");
    }
}
