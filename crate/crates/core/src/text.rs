//! Text grammar for scalars in Q(q) and the shared tokenizer.
//!
//! A scalar is a rational expression in `q`, for example `(q^2-q^-2)/3` or
//! `1/2*q + 3`. Printing produces the reduced power-basis form, which parses
//! back to the same value.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cyclotomic::{Cyc, Field, FieldExt};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Num(BigInt),
    Ident(char),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

pub(crate) fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => {}
            '+' => out.push((pos, Tok::Plus)),
            '-' => out.push((pos, Tok::Minus)),
            '*' => out.push((pos, Tok::Star)),
            '/' => out.push((pos, Tok::Slash)),
            '^' => out.push((pos, Tok::Caret)),
            '(' => out.push((pos, Tok::LParen)),
            ')' => out.push((pos, Tok::RParen)),
            '0'..='9' => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].1.is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..=i].iter().map(|(_, c)| *c).collect();
                out.push((pos, Tok::Num(s.parse().expect("digits"))));
            }
            c if c.is_ascii_alphabetic() => out.push((pos, Tok::Ident(c))),
            other => return Err(Error::parse(pos, format!("unexpected character {other:?}"))),
        }
        i += 1;
    }
    Ok(out)
}

/// Cursor over a token stream.
pub(crate) struct Cursor<'a> {
    toks: &'a [(usize, Tok)],
    idx: usize,
    end: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(toks: &'a [(usize, Tok)], src_len: usize) -> Self {
        Cursor { toks, idx: 0, end: src_len }
    }

    pub(crate) fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(_, t)| t)
    }

    pub(crate) fn pos(&self) -> usize {
        self.toks.get(self.idx).map(|(p, _)| *p).unwrap_or(self.end)
    }

    pub(crate) fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|(_, t)| t.clone());
        self.idx += 1;
        t
    }

    pub(crate) fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.idx += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn at_end(&self) -> bool {
        self.idx >= self.toks.len()
    }

    /// Parses `^ [-] <int>` if present, returning the exponent (default 1).
    pub(crate) fn exponent(&mut self) -> Result<i64> {
        if !self.eat(&Tok::Caret) {
            return Ok(1);
        }
        let neg = self.eat(&Tok::Minus);
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Num(n)) => {
                let v: i64 = n.try_into().map_err(|_| Error::parse(pos, "exponent too large"))?;
                Ok(if neg { -v } else { v })
            }
            _ => Err(Error::parse(pos, "expected integer exponent after '^'")),
        }
    }
}

/// Parses a scalar expression in `q`.
pub fn parse_qexpr(field: &Field, src: &str) -> Result<Cyc> {
    let toks = tokenize(src)?;
    let mut cur = Cursor::new(&toks, src.len());
    if cur.at_end() {
        return Err(Error::parse(0, "empty expression"));
    }
    let v = scalar_expr(field, &mut cur)?;
    if !cur.at_end() {
        return Err(Error::parse(cur.pos(), "trailing input"));
    }
    Ok(v)
}

fn scalar_expr(field: &Field, cur: &mut Cursor) -> Result<Cyc> {
    let mut acc = field.zero();
    let mut first = true;
    loop {
        let neg = if cur.eat(&Tok::Minus) {
            true
        } else {
            if !cur.eat(&Tok::Plus) && !first {
                break;
            }
            false
        };
        let t = scalar_term(field, cur)?;
        acc = if neg { acc - t } else { acc + t };
        first = false;
        match cur.peek() {
            Some(Tok::Plus) | Some(Tok::Minus) => continue,
            _ => break,
        }
    }
    Ok(acc)
}

fn scalar_term(field: &Field, cur: &mut Cursor) -> Result<Cyc> {
    let mut acc = scalar_power(field, cur)?;
    loop {
        if cur.eat(&Tok::Star) {
            acc = acc * scalar_power(field, cur)?;
        } else if cur.peek() == Some(&Tok::Slash) {
            let pos = cur.pos();
            cur.bump();
            let den = scalar_power(field, cur)?;
            acc = acc * den.inv().map_err(|_| Error::parse(pos, "division by zero"))?;
        } else {
            return Ok(acc);
        }
    }
}

fn scalar_power(field: &Field, cur: &mut Cursor) -> Result<Cyc> {
    let pos = cur.pos();
    let base = scalar_atom(field, cur)?;
    let e = cur.exponent()?;
    base.pow(e).map_err(|_| Error::parse(pos, "negative power of zero"))
}

fn scalar_atom(field: &Field, cur: &mut Cursor) -> Result<Cyc> {
    let pos = cur.pos();
    match cur.bump() {
        Some(Tok::Num(n)) => Ok(Cyc::from_rationals(field, &[BigRational::from_integer(n)])),
        Some(Tok::Ident('q')) => Ok(field.q()),
        Some(Tok::Minus) => Ok(-scalar_power(field, cur)?),
        Some(Tok::LParen) => {
            let v = scalar_expr(field, cur)?;
            if !cur.eat(&Tok::RParen) {
                return Err(Error::parse(cur.pos(), "expected ')'"));
            }
            Ok(v)
        }
        Some(other) => Err(Error::parse(pos, format!("unexpected token {other:?}"))),
        None => Err(Error::parse(pos, "unexpected end of input")),
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Prints the reduced power-basis form, lowest power first.
pub fn print_qexpr(x: &Cyc) -> String {
    let mut out = String::new();
    for (k, c) in x.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let power = match k {
            0 => String::new(),
            1 => "q".to_string(),
            _ => format!("q^{k}"),
        };
        if k == 0 {
            out.push_str(&fmt_rational(&mag));
        } else if mag.is_one() {
            out.push_str(&power);
        } else {
            out.push_str(&fmt_rational(&mag));
            out.push('*');
            out.push_str(&power);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::make_field;

    #[test]
    fn grammar_examples() {
        let f = make_field(8).unwrap();
        let x = parse_qexpr(&f, "q^2 - q^-2").unwrap();
        assert_eq!(x, f.q_power(2) - f.q_power(-2));
        let y = parse_qexpr(&f, "1/2*q + 3").unwrap();
        assert_eq!(y, f.rational(1, 2) * f.q() + f.int(3));
        let err = parse_qexpr(&f, "q^").unwrap_err();
        assert!(matches!(err, Error::Parse { pos: 2, .. }), "{err:?}");
    }

    #[test]
    fn division_and_parens() {
        let f = make_field(5).unwrap();
        let x = parse_qexpr(&f, "(q + 1)/(q - 1)").unwrap();
        assert_eq!(x * (f.q() - f.one()), f.q() + f.one());
        assert!(parse_qexpr(&f, "1/(q-q)").is_err());
        assert!(parse_qexpr(&f, "").is_err());
        assert!(parse_qexpr(&f, "2 q").is_err());
    }

    #[test]
    fn print_roundtrip() {
        let f = make_field(7).unwrap();
        for s in ["0", "-1", "q", "-q^3 + 2/3", "1/2*q + 3", "(q+q^-1)^3/5"] {
            let x = parse_qexpr(&f, s).unwrap();
            let printed = print_qexpr(&x);
            assert_eq!(parse_qexpr(&f, &printed).unwrap(), x, "{s} -> {printed}");
        }
    }
}
