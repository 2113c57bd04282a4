use num_bigint::BigInt;
use num_traits::Zero;

use super::field::{Field, Rational};
use super::poly::Polynomial;
use super::ring::{RingDescriptor, RingElem};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let txt: String = chars[start..i].iter().collect();
            out.push(Tok::Num(txt.parse().unwrap()));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()[],".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character '{c}' at offset {i}")));
        }
    }
    Ok(out)
}

struct PolyParser<'a> {
    toks: &'a [Tok],
    pos: usize,
    vars: &'a [String],
    field: &'a Field,
}

impl<'a> PolyParser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn nvars(&self) -> usize {
        self.vars.len()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = if self.eat('-') { self.term()?.neg() } else { self.term()? };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.power()?);
            } else if self.eat('/') {
                let d = self.power()?;
                if !d.is_constant() || d.is_zero() {
                    return Err(Error::Parse("division only by nonzero constants".into()));
                }
                let inv = self
                    .field
                    .inv(&d.constant_term())
                    .ok_or_else(|| Error::Parse("constant not invertible".into()))?;
                acc = acc.scale(&inv);
            } else if matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::Sym('('))) {
                // implicit multiplication, e.g. 2x
                acc = acc.mul(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        if self.eat('-') {
            return Ok(self.power()?.neg());
        }
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
                    Ok(base.pow(e))
                }
                _ => Err(Error::Parse("expected a nonnegative integer exponent".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Polynomial::constant(self.field, self.nvars(), Rational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let i = self
                    .vars
                    .iter()
                    .position(|v| *v == name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable '{name}'")))?;
                Ok(Polynomial::var(self.field, self.nvars(), i))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses an infix polynomial (`^` for powers) in the given variables.
pub fn parse_polynomial(s: &str, vars: &[String], field: &Field) -> Result<Polynomial> {
    let toks = tokenize(s)?;
    let mut p = PolyParser { toks: &toks, pos: 0, vars, field };
    let out = p.expr()?;
    if p.pos != toks.len() {
        return Err(Error::Parse(format!("trailing input in polynomial '{s}'")));
    }
    Ok(out)
}

fn split_top_level(s: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' | '[' => {
                depth += 1;
                cur.push(c)
            }
            ')' | ']' => {
                depth -= 1;
                cur.push(c)
            }
            ',' if depth == 0 => parts.push(std::mem::take(&mut cur)),
            _ => cur.push(c),
        }
    }
    if !cur.trim().is_empty() {
        parts.push(cur);
    }
    parts.into_iter().map(|p| p.trim().to_string()).collect()
}

/// Parses ring literals: `ZZ`, `QQ`, `ZZ/6`, `GF(5)`, `QQ[x,y]`, `QQ[x,y]/(x^2-1, x*y)`, `ZZ/5[x]/(x^3)`.
pub fn parse_ring(s: &str) -> Result<RingDescriptor> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let (base, rest) = match s.find('[') {
        Some(i) => (&s[..i], &s[i..]),
        None => (s.as_str(), ""),
    };
    let base_ring = match base {
        "ZZ" => RingDescriptor::Integers,
        "QQ" => RingDescriptor::Rationals,
        _ if base.starts_with("ZZ/") => {
            let n: u64 = base[3..].parse().map_err(|_| Error::Parse(format!("bad modulus in '{base}'")))?;
            RingDescriptor::integers_mod(n).map_err(|e| Error::Parse(e.to_string()))?
        }
        _ if base.starts_with("GF(") && base.ends_with(')') => {
            let p: u64 =
                base[3..base.len() - 1].parse().map_err(|_| Error::Parse(format!("bad prime in '{base}'")))?;
            RingDescriptor::integers_mod(p).map_err(|e| Error::Parse(e.to_string()))?
        }
        _ => return Err(Error::Parse(format!("unknown base ring '{base}'"))),
    };
    if rest.is_empty() {
        return Ok(base_ring);
    }
    let field = match &base_ring {
        RingDescriptor::Rationals => Field::Rationals,
        RingDescriptor::IntegersMod(p) => Field::Prime(*p),
        _ => return Err(Error::Parse("polynomial rings need a field base (QQ or ZZ/p)".into())),
    };
    let close = rest.find(']').ok_or_else(|| Error::Parse("missing ']'".into()))?;
    let vars: Vec<String> = rest[1..close].split(',').filter(|v| !v.is_empty()).map(|v| v.to_string()).collect();
    for v in &vars {
        if !v.chars().next().is_some_and(|c| c.is_alphabetic()) {
            return Err(Error::Parse(format!("bad variable name '{v}'")));
        }
    }
    let after = &rest[close + 1..];
    let mut ideal = Vec::new();
    if !after.is_empty() {
        let inner = after
            .strip_prefix("/(")
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected '/(...)' after variables, got '{after}'")))?;
        for g in split_top_level(inner) {
            ideal.push(parse_polynomial(&g, &vars, &field)?);
        }
    }
    let names: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
    RingDescriptor::poly_quotient(field, &names, ideal).map_err(|e| Error::Parse(e.to_string()))
}

/// Parses a ring element written as a polynomial / integer / fraction.
pub fn parse_ring_elem(ring: &RingDescriptor, s: &str) -> Result<RingElem> {
    match ring {
        RingDescriptor::PolyQuotient(q) => {
            let p = parse_polynomial(s, &q.vars, &q.field)?;
            ring.from_poly(&p)
        }
        _ => {
            let p = parse_polynomial(s, &[], &Field::Rationals)?;
            let c = if p.is_zero() { Rational::zero() } else { p.constant_term() };
            ring.from_rational(&c).map_err(|e| Error::Parse(e.to_string()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::field::rat;

    #[test]
    fn ring_literals() {
        assert_eq!(parse_ring("ZZ/6").unwrap(), RingDescriptor::IntegersMod(6));
        assert_eq!(parse_ring("ZZ").unwrap(), RingDescriptor::Integers);
        let r = parse_ring("QQ[x,y]/(x^2-1, x*y)").unwrap();
        let q = r.pq().unwrap();
        assert_eq!(q.vars, vec!["x", "y"]);
        assert_eq!(q.dim(), Some(2)); // y = x²y = x(xy) = 0
        assert!(parse_ring("QQ[x]/(x^2").is_err());
        assert!(parse_ring("RR").is_err());
        assert!(parse_ring("ZZ/1").is_err());
        assert!(parse_ring("ZZ[x]").is_err());
    }

    #[test]
    fn polynomial_grammar() {
        let vars = vec!["x".to_string(), "y".to_string()];
        let f = Field::Rationals;
        let p = parse_polynomial("2x^2 - (x+y)*y + 1/2", &vars, &f).unwrap();
        let x = Polynomial::var(&f, 2, 0);
        let y = Polynomial::var(&f, 2, 1);
        let expect = x.pow(2).scale(&rat(2)).sub(&x.add(&y).mul(&y)).add(&Polynomial::constant(
            &f,
            2,
            crate::exactring::field::ratio(1, 2),
        ));
        assert_eq!(p, expect);
        assert!(parse_polynomial("z", &vars, &f).is_err());
    }
}
