use num_bigint::BigInt;

use super::{var_index, Poly, PolyError, VarSpec};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn syntax(offset: usize, message: impl Into<String>) -> PolyError {
    PolyError::SyntaxError { offset, message: message.into() }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, PolyError> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
            continue;
        }
        if c.is_ascii_digit() {
            let mut end = pos;
            while let Some(&(p, d)) = it.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = p + 1;
                it.next();
            }
            out.push((pos, Tok::Num(text[pos..end].parse().expect("digits"))));
            continue;
        }
        if c.is_ascii_alphabetic() {
            let mut end = pos;
            while let Some(&(p, d)) = it.peek() {
                if !(d.is_ascii_alphanumeric() || d == '_') {
                    break;
                }
                end = p + 1;
                it.next();
            }
            out.push((pos, Tok::Ident(text[pos..end].to_string())));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => return Err(syntax(pos, format!("unexpected character `{c}`"))),
        };
        out.push((pos, tok));
        it.next();
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    vars: &'a [VarSpec],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                acc += &self.term()?;
            } else if self.eat(&Tok::Minus) {
                acc -= &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.unary()?;
        while self.eat(&Tok::Star) {
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly, PolyError> {
        if self.eat(&Tok::Minus) {
            return Ok(-self.unary()?);
        }
        if self.eat(&Tok::Plus) {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly, PolyError> {
        let base = self.atom()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let negative = if self.eat(&Tok::Minus) {
            true
        } else {
            self.eat(&Tok::Plus);
            false
        };
        let at = self.offset();
        let Some(Tok::Num(n)) = self.peek().cloned() else {
            return Err(syntax(at, "expected integer exponent"));
        };
        self.pos += 1;
        let k: i64 = i64::try_from(&n).map_err(|_| syntax(at, "exponent too large"))?;
        base.try_pow(if negative { -k } else { k }, self.vars)
    }

    fn atom(&mut self) -> Result<Poly, PolyError> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                if self.eat(&Tok::Slash) {
                    let at = self.offset();
                    let Some(Tok::Num(d)) = self.peek().cloned() else {
                        return Err(syntax(at, "expected denominator"));
                    };
                    self.pos += 1;
                    if d == BigInt::from(0) {
                        return Err(syntax(at, "zero denominator"));
                    }
                    Ok(Poly::constant(Rational::new(n, d)))
                } else {
                    Ok(Poly::constant(Rational::from_integer(n)))
                }
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                var_index(self.vars, &name).map(Poly::var).ok_or(PolyError::UnknownVariable(name))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return Err(syntax(self.offset(), "expected `)`"));
                }
                Ok(inner)
            }
            Some(_) => Err(syntax(at, "unexpected token")),
            None => Err(syntax(at, "unexpected end of input")),
        }
    }
}

/// Parses polynomial text in the variable context `vars`.
pub fn parse(text: &str, vars: &[VarSpec]) -> Result<Poly, PolyError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len(), vars };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(syntax(p.offset(), "trailing input"));
    }
    Ok(out)
}

/// Like [`parse`], with variable names given as plain strings (none invertible
/// unless listed in `units`).
pub fn parse_in(text: &str, names: &[&str], units: &[&str]) -> Result<Poly, PolyError> {
    let vars: Vec<VarSpec> = names.iter().map(|n| VarSpec { name: n.to_string(), invertible: units.contains(n) }).collect();
    parse(text, &vars)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars() -> Vec<VarSpec> {
        vec![VarSpec::new("x"), VarSpec::new("y"), VarSpec::unit("g"), VarSpec::new("h")]
    }

    #[test]
    fn grammar() {
        let v = vars();
        let p = parse("2/3*x^2*y \u{2212} x", &v).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.to_string_with(&v), "2/3*x^2*y - x");
        assert!(parse("g^-1*x", &v).is_ok());
        assert_eq!(parse("h^-1*x", &v), Err(PolyError::NegativePowerOfNonUnit));
        assert_eq!(parse("(x+1)^-1", &v), Err(PolyError::NegativePowerOfNonUnit));
        assert_eq!(parse("q + 1", &v), Err(PolyError::UnknownVariable("q".into())));
    }

    #[test]
    fn syntax_offsets() {
        let v = vars();
        assert!(matches!(parse("x + ", &v), Err(PolyError::SyntaxError { offset: 4, .. })));
        assert!(matches!(parse("x $ y", &v), Err(PolyError::SyntaxError { offset: 2, .. })));
        assert!(matches!(parse("(x", &v), Err(PolyError::SyntaxError { offset: 2, .. })));
        assert!(matches!(parse("x y", &v), Err(PolyError::SyntaxError { offset: 2, .. })));
        assert!(matches!(parse("x^y", &v), Err(PolyError::SyntaxError { offset: 2, .. })));
    }

    #[test]
    fn print_parse_idempotent() {
        let v = vars();
        for s in ["-(x - y)^3 + 1/2", "g^-2*(x+g)^2", "0*x", "3/6*x*y*x"] {
            let once = parse(s, &v).unwrap().to_string_with(&v);
            let twice = parse(&once, &v).unwrap().to_string_with(&v);
            assert_eq!(once, twice);
        }
    }
}
