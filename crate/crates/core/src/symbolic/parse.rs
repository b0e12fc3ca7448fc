//! Reader for the canonical text form of [`Scalar`].
//!
//! Accepts `+ - * / ^`, parentheses, integer literals, the reserved names
//! `i` and `sqrt2`, and identifiers (any alphabetic start, then
//! alphanumerics or `_`).

use std::iter::Peekable;
use std::str::CharIndices;

use super::scalar::Scalar;
use super::SymbolicError;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, SymbolicError> {
    let mut out = Vec::new();
    let mut it: Peekable<CharIndices<'_>> = src.char_indices().peekable();
    while let Some(&(pos, ch)) = it.peek() {
        if ch.is_whitespace() {
            it.next();
        } else if ch.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, d)) = it.peek() {
                if d.is_ascii_digit() {
                    s.push(d);
                    it.next();
                } else {
                    break;
                }
            }
            let n = s.parse().map_err(|_| SymbolicError::Parse {
                pos,
                msg: format!("integer literal out of range: {s}"),
            })?;
            out.push((pos, Tok::Int(n)));
        } else if ch.is_alphabetic() || ch == '_' {
            let mut s = String::new();
            while let Some(&(_, d)) = it.peek() {
                if d.is_alphanumeric() || d == '_' {
                    s.push(d);
                    it.next();
                } else {
                    break;
                }
            }
            out.push((pos, Tok::Ident(s)));
        } else if "+-*/^()".contains(ch) {
            out.push((pos, Tok::Op(ch)));
            it.next();
        } else {
            return Err(SymbolicError::Parse {
                pos,
                msg: format!("unexpected character {ch:?}"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err(&self, msg: &str) -> SymbolicError {
        SymbolicError::Parse {
            pos: self.pos(),
            msg: msg.to_string(),
        }
    }

    fn expr(&mut self) -> Result<Scalar, SymbolicError> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.at += 1;
            let rhs = self.term()?;
            acc = if c == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scalar, SymbolicError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Op(c @ ('*' | '/'))) = self.peek().cloned() {
            self.at += 1;
            let rhs = self.unary()?;
            acc = if c == '*' {
                &acc * &rhs
            } else {
                acc.checked_div(&rhs)?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Scalar, SymbolicError> {
        if let Some(Tok::Op('-')) = self.peek() {
            self.at += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Scalar, SymbolicError> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.at += 1;
            match self.peek().cloned() {
                Some(Tok::Int(e)) if (0..=64).contains(&e) => {
                    self.at += 1;
                    Ok(base.pow(e as u32))
                }
                _ => Err(self.err("expected a small non-negative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Scalar, SymbolicError> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                Ok(Scalar::int(n))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                Ok(match name.as_str() {
                    "i" => Scalar::i(),
                    "sqrt2" => Scalar::sqrt2(),
                    _ => Scalar::sym(&name),
                })
            }
            Some(Tok::Op('(')) => {
                self.at += 1;
                let v = self.expr()?;
                match self.peek() {
                    Some(Tok::Op(')')) => {
                        self.at += 1;
                        Ok(v)
                    }
                    _ => Err(self.err("expected ')'")),
                }
            }
            _ => Err(self.err("expected a number, symbol or '('")),
        }
    }
}

/// Parse a scalar expression.
pub fn parse_scalar(src: &str) -> Result<Scalar, SymbolicError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: src.len(),
    };
    let v = p.expr()?;
    if p.at != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let a = parse_scalar("-3/2*m + x^2*y").unwrap();
        let b = &(&Scalar::ratio(-3, 2) * &Scalar::sym("m")) + &(&Scalar::sym("x").pow(2) * &Scalar::sym("y"));
        assert_eq!(a, b);
        assert_eq!(parse_scalar("-x^2").unwrap(), -Scalar::sym("x").pow(2));
    }

    #[test]
    fn unicode_and_reserved_names() {
        let a = parse_scalar("2*i*m/ħ").unwrap();
        assert!(a.symbols().iter().any(|s| s.name() == "ħ"));
        assert_eq!(parse_scalar("sqrt2*sqrt2").unwrap(), Scalar::int(2));
        assert_eq!(parse_scalar("λ0").unwrap(), Scalar::sym("λ0"));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_scalar("1/0"), Err(SymbolicError::DivisionByZero)));
        assert!(matches!(parse_scalar("(a+b"), Err(SymbolicError::Parse { .. })));
        assert!(matches!(parse_scalar("a $ b"), Err(SymbolicError::Parse { pos: 2, .. })));
        assert!(parse_scalar("a b").is_err());
    }

    #[test]
    fn display_roundtrip_examples() {
        for src in [
            "(1/2 + i)*x - sqrt2*y^3/(z + 1)",
            "Cbar*v^2/(4*Bbar)",
            "-(γ - 1)*m*c^2",
            "(2*i*m)/ħ",
            "(1 + i*sqrt2)/(3*a*b - 2)",
        ] {
            let a = parse_scalar(src).unwrap();
            let text = a.to_string();
            let b = parse_scalar(&text).unwrap();
            assert_eq!(a, b, "{src} → {text}");
            assert_eq!(text, b.to_string());
        }
    }
}
