//! Canonical text form of polynomials.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := unary ("*" unary)*
//! unary   := ("-" | "+") unary | power
//! power   := primary ("^" integer)?
//! primary := integer ("/" integer)? | identifier | "(" expr ")"
//! ```
//!
//! Division is only allowed between two integer literals. Printing sorts
//! terms by degrevlex, descending, so `parse(print(p)) == p`.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::{MonomialOrder, Poly, PolyRing};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(src[start..i].parse().unwrap())));
                continue;
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_string())));
                continue;
            }
            other => {
                return Err(Error::Parse { pos: start, msg: format!("unexpected character `{other}`") });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    ring: &'a Arc<PolyRing>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.offset(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => return self.err("division is only allowed between integer literals"),
                Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    return self.err("expected an operator");
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.primary()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let Some(Tok::Int(e)) = self.peek().cloned() else {
                return self.err("exponent must be a non-negative integer literal");
            };
            let e: u32 = match e.try_into() {
                Ok(e) if e <= 4096 => e,
                _ => return self.err("exponent too large"),
            };
            self.pos += 1;
            if self.peek() == Some(&Tok::Caret) {
                return self.err("chained exponents need parentheses");
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Poly> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    let Some(Tok::Int(d)) = self.peek().cloned() else {
                        return self.err("division is only allowed between integer literals");
                    };
                    let at = self.offset();
                    self.pos += 1;
                    let c = self
                        .ring
                        .field()
                        .from_ratio(&n, &d)
                        .map_err(|_| Error::Parse { pos: at, msg: "zero denominator".into() })?;
                    return Ok(Poly::constant(self.ring, c));
                }
                Ok(Poly::constant(self.ring, self.ring.field().from_bigint(&n)))
            }
            Some(Tok::Ident(name)) => match self.ring.var_index(&name) {
                Some(i) => {
                    self.pos += 1;
                    Ok(Poly::var(self.ring, i))
                }
                None => self.err(format!("unknown variable `{name}`")),
            },
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(_) => self.err("unexpected token"),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse_poly(src: &str, ring: &Arc<PolyRing>) -> Result<Poly> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, end: src.len(), ring };
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Parse a comma separated generator list, optionally wrapped as `(f, g)`.
pub fn parse_poly_list(src: &str, ring: &Arc<PolyRing>) -> Result<Vec<Poly>> {
    let trimmed = src.trim();
    let (body, base) = match strip_outer_parens(trimmed) {
        Some(inner) => (inner, src.find('(').map_or(0, |i| i + 1)),
        None => (trimmed, src.len() - src.trim_start().len()),
    };
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut last = 0usize;
    for (i, c) in body.char_indices().chain(std::iter::once((body.len(), ','))) {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                let piece = &body[last..i];
                let p = parse_poly(piece, ring).map_err(|e| match e {
                    Error::Parse { pos, msg } => Error::Parse { pos: pos + base + last, msg },
                    other => other,
                })?;
                out.push(p);
                last = i + 1;
            }
            _ => {}
        }
    }
    Ok(out)
}

/// The inside of `( ... )` when the outer parentheses enclose a top-level
/// comma list.
fn strip_outer_parens(s: &str) -> Option<&str> {
    if !s.starts_with('(') || !s.ends_with(')') {
        return None;
    }
    let mut depth = 0;
    let mut has_comma = false;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 && i != s.len() - 1 {
                    return None;
                }
            }
            ',' if depth == 1 => has_comma = true,
            _ => {}
        }
    }
    let inner = &s[1..s.len() - 1];
    (has_comma || inner.trim().is_empty()).then_some(inner)
}

pub fn print_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let vars = p.ring().vars();
    let mut out = String::new();
    for (k, (m, c)) in p.sorted_terms(&MonomialOrder::DegRevLex).iter().enumerate() {
        let neg = c.is_negative();
        let abs = if neg { -c } else { c.clone() };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono: Vec<String> = m
            .exps()
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, e)| if *e == 1 { vars[i].clone() } else { format!("{}^{}", vars[i], e) })
            .collect();
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&mono.join("*"));
        } else {
            out.push_str(&format!("{}*{}", abs, mono.join("*")));
        }
    }
    out
}

pub fn print_ideal(gens: &[Poly]) -> String {
    let gens: Vec<String> = gens.iter().filter(|g| !g.is_zero()).map(print_poly).collect();
    if gens.is_empty() {
        "(0)".to_string()
    } else {
        format!("({})", gens.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn ring() -> Arc<PolyRing> {
        PolyRing::new(Field::Q, ["x", "y"]).unwrap()
    }

    #[test]
    fn parses_mixed_expression() {
        let r = ring();
        let p = parse_poly("x^2*y + 3/2", &r).unwrap();
        assert_eq!(print_poly(&p), "x^2*y + 3/2");
    }

    #[test]
    fn square_expands() {
        // (x+y)^2 = x^2 + 2xy + y^2
        let r = ring();
        let p = parse_poly("(x+y)^2", &r).unwrap();
        let x = Poly::var(&r, 0);
        let y = Poly::var(&r, 1);
        let expect = &(&(&x * &x) + &(&x * &y).scale(&Field::Q.from_i64(2))) + &(&y * &y);
        assert_eq!(p, expect);
        assert_eq!(print_poly(&p), "x^2 + 2*x*y + y^2");
    }

    #[test]
    fn errors_carry_positions() {
        let r = ring();
        assert!(matches!(parse_poly("x^-1", &r), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_poly("x + z", &r), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse_poly("x/2", &r), Err(Error::Parse { pos: 1, .. })));
        assert!(matches!(parse_poly("1/0", &r), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("", &r), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("2 x", &r), Err(Error::Parse { .. })));
    }

    #[test]
    fn negative_terms_print_with_minus() {
        let r = ring();
        let p = parse_poly("-3/2*x*y^2 + x - 1", &r).unwrap();
        assert_eq!(print_poly(&p), "-3/2*x*y^2 + x - 1");
        assert_eq!(print_poly(&Poly::zero(&r)), "0");
    }

    #[test]
    fn modular_literals() {
        let r = PolyRing::new(Field::fp(5).unwrap(), ["x"]).unwrap();
        let p = parse_poly("1/2*x - 1", &r).unwrap();
        assert_eq!(print_poly(&p), "3*x + 4");
    }

    #[test]
    fn generator_lists() {
        let r = ring();
        assert_eq!(parse_poly_list("(x, y^2 - 1)", &r).unwrap().len(), 2);
        assert_eq!(parse_poly_list("x*(x+y), y", &r).unwrap().len(), 2);
        assert_eq!(parse_poly_list("(x+y)", &r).unwrap().len(), 1);
        assert!(parse_poly_list("()", &r).unwrap().is_empty());
        assert_eq!(print_ideal(&parse_poly_list("(0)", &r).unwrap()), "(0)");
    }
}
