//! A small expression language for classes.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary ('*' unary)*
//! unary := '-' unary | power
//! power := atom ('^' integer)?
//! atom  := integer ('/' integer)? | CP<i> | alpha<i>,<j> | x<i> | e<i> | y<i>
//!        | name | '(' expr ')'
//! ```
//!
//! A rational literal such as `9/8` is a single token, so `9/8*CP1^2`
//! parses as `(9/8) * CP1^2`.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::fgl::FglTable;
use crate::generators::{build_e, build_x, build_y, find_su_generator};
use crate::scalar::Rational;
use crate::Poly;

/// Resolves the names an expression may mention.
pub struct Env<'a> {
    table: &'a FglTable,
    named: HashMap<String, Poly>,
}

impl<'a> Env<'a> {
    pub fn new(table: &'a FglTable) -> Self {
        Env { table, named: HashMap::new() }
    }

    /// Binds `name` to a class; bindings shadow the built-in families.
    pub fn bind(&mut self, name: impl Into<String>, class: Poly) {
        self.named.insert(name.into(), class);
    }

    pub fn table(&self) -> &FglTable {
        self.table
    }

    fn lookup(&self, name: &str, offset: usize) -> Result<Poly> {
        if let Some(p) = self.named.get(name) {
            return Ok(p.clone());
        }
        let err = |message: String| Error::Parse { offset, message };
        let index = |prefix: &str| -> Result<usize> {
            name[prefix.len()..].parse::<usize>().map_err(|_| err(format!("bad index in '{name}'")))
        };
        if let Some(rest) = name.strip_prefix("alpha") {
            let (i, j) = rest.split_once(',').ok_or_else(|| err(format!("expected alpha<i>,<j>, got '{name}'")))?;
            let (i, j) = (
                i.parse::<usize>().map_err(|_| err(format!("bad index in '{name}'")))?,
                j.parse::<usize>().map_err(|_| err(format!("bad index in '{name}'")))?,
            );
            return self.table.try_alpha(i, j).cloned();
        }
        if name.starts_with("CP") {
            let i = index("CP")?;
            if i == 0 {
                return Ok(Poly::one());
            }
            return Ok(Poly::cp(i));
        }
        match name.as_bytes()[0] {
            b'x' => {
                let n = index("x")?;
                if (2..=4).contains(&n) {
                    build_x(n, self.table)
                } else {
                    Ok(find_su_generator(n, self.table)?.class)
                }
            }
            b'e' => build_e(index("e")?, self.table),
            b'y' => build_y(index("y")?, self.table),
            _ => Err(err(format!("unknown name '{name}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Number(Rational),
    Name(String),
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |mut j: usize| {
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let simple = match c {
            b' ' | b'\t' | b'\n' => {
                i += 1;
                continue;
            }
            b'+' => Some(Token::Plus),
            b'*' => Some(Token::Star),
            b'^' => Some(Token::Caret),
            b'(' => Some(Token::Open),
            b')' => Some(Token::Close),
            _ => None,
        };
        if let Some(t) = simple {
            out.push((start, t));
            i += 1;
            continue;
        }
        if c == b'-' {
            out.push((start, Token::Minus));
            i += 1;
        } else if src[i..].starts_with('\u{2212}') {
            out.push((start, Token::Minus));
            i += '\u{2212}'.len_utf8();
        } else if c.is_ascii_digit() {
            let end = digits(i);
            let num: BigInt = src[i..end].parse().expect("digits");
            i = end;
            let mut value = Rational::from_integer(num);
            if i < bytes.len() && bytes[i] == b'/' {
                let dend = digits(i + 1);
                if dend == i + 1 {
                    return Err(Error::Parse { offset: i, message: "expected a denominator".into() });
                }
                let den: BigInt = src[i + 1..dend].parse().expect("digits");
                if den == BigInt::from(0) {
                    return Err(Error::Parse { offset: i + 1, message: "zero denominator".into() });
                }
                value /= Rational::from_integer(den);
                i = dend;
            }
            out.push((start, Token::Number(value)));
        } else if c.is_ascii_alphabetic() {
            let mut end = i;
            while end < bytes.len() && (bytes[end].is_ascii_alphanumeric() || bytes[end] == b'_') {
                end += 1;
            }
            // alpha<i>,<j> keeps its comma
            if src[i..end].starts_with("alpha") && end < bytes.len() && bytes[end] == b',' {
                end = digits(end + 1);
            }
            out.push((start, Token::Name(src[i..end].to_string())));
            i = end;
        } else {
            return Err(Error::Parse { offset: i, message: format!("unexpected character '{}'", src[i..].chars().next().unwrap()) });
        }
    }
    Ok(out)
}

struct Parser<'e, 'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    len: usize,
    env: &'e Env<'a>,
}

impl Parser<'_, '_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map(|(o, _)| *o).unwrap_or(self.len)
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { offset: self.offset(), message: message.into() })
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = acc.try_add(&self.term()?)?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = acc.try_sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        while let Some(Token::Star) = self.peek() {
            self.pos += 1;
            acc = acc * self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly> {
        if let Some(Token::Minus) = self.peek() {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            self.pos += 1;
            let e = match self.peek() {
                Some(Token::Number(n)) if n.is_integer() => u32::try_from(n.to_integer()).ok(),
                _ => None,
            };
            let Some(e) = e else { return self.fail("expected a nonnegative integer exponent") };
            self.pos += 1;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        let offset = self.offset();
        match self.peek().cloned() {
            Some(Token::Number(n)) => {
                self.pos += 1;
                Ok(Poly::constant(n))
            }
            Some(Token::Name(name)) => {
                self.pos += 1;
                self.env.lookup(&name, offset)
            }
            Some(Token::Open) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Token::Close) {
                    return self.fail("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) => self.fail("expected a number, a name or '('"),
            None => self.fail("unexpected end of input"),
        }
    }
}

/// Parses and evaluates a class expression.
pub fn parse_class(src: &str, env: &Env<'_>) -> Result<Poly> {
    let tokens = tokenize(src)?;
    let mut p = Parser { tokens, pos: 0, len: src.len(), env };
    let out = p.expr()?;
    if p.pos != p.tokens.len() {
        return p.fail("unexpected trailing input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgl::fgl_coefficients;

    #[test]
    fn literals_and_precedence() {
        let t = fgl_coefficients(8).unwrap();
        let env = Env::new(&t);
        let p = parse_class("CP2 - 9/8*CP1^2", &env).unwrap();
        assert_eq!(p, build_x(2, &t).unwrap());
        assert_eq!(parse_class("-(CP1)^2", &env).unwrap(), -Poly::cp(1).pow(2));
        assert_eq!(parse_class("2*CP1 + CP1", &env).unwrap().to_string(), "3*CP1");
        assert_eq!(parse_class("-alpha2,3 - 3/2*x3*CP1", &env).unwrap(), build_x(4, &t).unwrap());
        assert_eq!(parse_class("alpha1,1", &env).unwrap(), -Poly::cp(1));
    }

    #[test]
    fn display_round_trips() {
        let t = fgl_coefficients(10).unwrap();
        let env = Env::new(&t);
        for (_, _, a) in t.entries() {
            assert_eq!(&parse_class(&a.to_string(), &env).unwrap(), a);
        }
    }

    #[test]
    fn errors_carry_offsets() {
        let t = fgl_coefficients(4).unwrap();
        let env = Env::new(&t);
        match parse_class("CP1 + * CP2", &env) {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 6),
            other => panic!("{other:?}"),
        }
        assert!(parse_class("CP1 + (CP2", &env).is_err());
        assert!(parse_class("1/0", &env).is_err());
        assert!(parse_class("z3", &env).is_err());
        assert!(parse_class("alpha3,3", &env).is_err());
    }

    #[test]
    fn bound_names_shadow() {
        let t = fgl_coefficients(4).unwrap();
        let mut env = Env::new(&t);
        env.bind("x2", Poly::cp(2));
        assert_eq!(parse_class("x2", &env).unwrap(), Poly::cp(2));
    }
}
