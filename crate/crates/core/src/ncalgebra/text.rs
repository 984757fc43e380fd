//! Text form of NCPoly: `(q^2-q^-2)*A*B*g - 3*C^2 + W`, letters `A B C` and
//! central symbols `W a b g`.

use num_traits::{One, Signed, Zero};

use super::{Central, Gen, Monomial, NCPoly};
use crate::cyclotomic::{Cyc, Field, FieldExt};
use crate::error::{Error, Result};
use crate::text::{print_qexpr, tokenize, Cursor, Tok};

pub fn parse_ncpoly(field: &Field, src: &str) -> Result<NCPoly> {
    let toks = tokenize(src)?;
    let mut cur = Cursor::new(&toks, src.len());
    if cur.at_end() {
        return Err(Error::parse(0, "empty expression"));
    }
    let p = expr(field, &mut cur)?;
    if !cur.at_end() {
        return Err(Error::parse(cur.pos(), "trailing input"));
    }
    Ok(p)
}

fn expr(field: &Field, cur: &mut Cursor) -> Result<NCPoly> {
    let mut acc = NCPoly::zero(field);
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
        let t = term(field, cur)?;
        acc = if neg { acc.sub(&t)? } else { acc.add(&t)? };
        first = false;
        if !matches!(cur.peek(), Some(Tok::Plus) | Some(Tok::Minus)) {
            break;
        }
    }
    Ok(acc)
}

fn as_scalar(p: &NCPoly) -> Option<Cyc> {
    match p.len() {
        0 => Some(p.field().zero()),
        1 => {
            let (m, c) = p.leading()?;
            (m.is_empty() && !m.has_central()).then(|| c.clone())
        }
        _ => None,
    }
}

fn term(field: &Field, cur: &mut Cursor) -> Result<NCPoly> {
    let mut acc = factor(field, cur)?;
    loop {
        if cur.eat(&Tok::Star) {
            acc = acc.multiply(&factor(field, cur)?)?;
        } else if cur.peek() == Some(&Tok::Slash) {
            let pos = cur.pos();
            cur.bump();
            let den = factor(field, cur)?;
            let s = as_scalar(&den).ok_or_else(|| Error::parse(pos, "divisor must be a scalar"))?;
            let inv = s.inv().map_err(|_| Error::parse(pos, "division by zero"))?;
            acc = acc.scale(&inv);
        } else {
            return Ok(acc);
        }
    }
}

fn factor(field: &Field, cur: &mut Cursor) -> Result<NCPoly> {
    let pos = cur.pos();
    let base = atom(field, cur)?;
    let e = cur.exponent()?;
    if e >= 0 {
        return Ok(base.pow(e as usize));
    }
    let s = as_scalar(&base).ok_or_else(|| Error::parse(pos, "negative power of a non-scalar"))?;
    let v = s.pow(e).map_err(|_| Error::parse(pos, "negative power of zero"))?;
    Ok(NCPoly::scalar(v))
}

fn atom(field: &Field, cur: &mut Cursor) -> Result<NCPoly> {
    let pos = cur.pos();
    match cur.bump() {
        Some(Tok::Num(n)) => {
            let v = Cyc::from_rationals(field, &[num_rational::BigRational::from_integer(n)]);
            Ok(NCPoly::scalar(v))
        }
        Some(Tok::Ident(c)) => match c {
            'q' => Ok(NCPoly::scalar(field.q())),
            'A' => Ok(NCPoly::gen(field, Gen::A)),
            'B' => Ok(NCPoly::gen(field, Gen::B)),
            'C' => Ok(NCPoly::gen(field, Gen::C)),
            'W' => Ok(NCPoly::central(field, Central::Omega)),
            'a' => Ok(NCPoly::central(field, Central::Alpha)),
            'b' => Ok(NCPoly::central(field, Central::Beta)),
            'g' => Ok(NCPoly::central(field, Central::Gamma)),
            other => Err(Error::parse(pos, format!("unknown symbol {other:?}"))),
        },
        Some(Tok::Minus) => Ok(factor(field, cur)?.neg()),
        Some(Tok::LParen) => {
            let v = expr(field, cur)?;
            if !cur.eat(&Tok::RParen) {
                return Err(Error::parse(cur.pos(), "expected ')'"));
            }
            Ok(v)
        }
        Some(other) => Err(Error::parse(pos, format!("unexpected token {other:?}"))),
        None => Err(Error::parse(pos, "unexpected end of input")),
    }
}

pub(crate) fn print_monomial(m: &Monomial) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut push = |sym: char, k: usize| match k {
        0 => {}
        1 => parts.push(sym.to_string()),
        _ => parts.push(format!("{sym}^{k}")),
    };
    let w = m.letters();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        push(Gen::ALL[w[i] as usize].symbol(), j - i);
        i = j;
    }
    for (c, &e) in Central::ALL.iter().zip(m.central().iter()) {
        push(c.symbol(), e as usize);
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Lowest monomial first; coefficients with several powers of q are parenthesized.
pub fn print_ncpoly(p: &NCPoly) -> String {
    let mut out = String::new();
    for (m, c) in p.terms() {
        let coeffs = c.coeffs();
        let nonzero: Vec<_> = coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
        let (neg, body) = if nonzero.len() == 1 {
            let (k, r) = nonzero[0];
            let neg = r.is_negative();
            let mut v = vec![num_rational::BigRational::zero(); k + 1];
            v[k] = r.abs();
            let mag = Cyc::from_rationals(c.field(), &v);
            (neg, if m.is_unit() || !(k == 0 && r.abs().is_one()) { Some(print_qexpr(&mag)) } else { None })
        } else {
            (false, Some(format!("({})", print_qexpr(c))))
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        match (body, m.is_unit()) {
            (Some(b), true) => out.push_str(&b),
            (Some(b), false) => {
                out.push_str(&b);
                out.push('*');
                out.push_str(&print_monomial(m));
            }
            (None, _) => out.push_str(&print_monomial(m)),
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
    fn parse_examples() {
        let f = make_field(7).unwrap();
        let p = parse_ncpoly(&f, "(q^2-q^-2)*A*B*g").unwrap();
        let mut e = NCPoly::zero(&f);
        e.add_term(Monomial::new(vec![0, 1], [0, 0, 0, 1]), f.q_power(2) - f.q_power(-2));
        assert_eq!(p, e);
        let p = parse_ncpoly(&f, "B*A - A*B").unwrap();
        assert_eq!(p.len(), 2);
        assert!(parse_ncpoly(&f, "A^-1").is_err());
        assert!(parse_ncpoly(&f, "A/B").is_err());
        assert!(matches!(parse_ncpoly(&f, "A*x"), Err(Error::Parse { pos: 2, .. })));
    }

    #[test]
    fn roundtrip() {
        let f = make_field(8).unwrap();
        for s in [
            "0",
            "1",
            "-A",
            "q*A*B - 1/2*C^2*g",
            "(1 + q)*A*B*A + W - a*b",
            "-3*q^2*B^3*g^2 + (q - q^3)/5",
            "A*B*C*A*B*C - 2",
        ] {
            let p = parse_ncpoly(&f, s).unwrap();
            let printed = print_ncpoly(&p);
            assert_eq!(parse_ncpoly(&f, &printed).unwrap(), p, "{s} -> {printed}");
        }
    }

    #[test]
    fn monomial_printing() {
        let m = Monomial::new(vec![0, 0, 1, 2, 2], [1, 0, 2, 0]);
        assert_eq!(print_monomial(&m), "A^2*B*C^2*W*b^2");
        assert_eq!(print_monomial(&Monomial::unit()), "1");
    }
}
