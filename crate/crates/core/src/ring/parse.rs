//! Text syntax for polynomials and linear combinations over `A`.
//!
//! ```text
//! expr   := ["-"] term (("+" | "-") term)*
//! term   := factor ("*" factor)*
//! factor := number ["/" number] | ident ["^" int] | "(" expr ")" ["^" int]
//! ```
//!
//! Identifiers are either ring variables or symbols resolved by the caller
//! (derivations `dx`, generator names, ...). A term may contain at most one symbol.

use std::collections::BTreeMap;

use num::{BigInt, One, Zero};

use crate::error::{Error, Location, Result};

use super::{Monomial, Poly, PolyVector, Rational, VectorField};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    loc: Location,
}

fn tokenize(text: &str, base: Location) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut line = base.line;
    let mut col = base.column;
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let loc = Location { line, column: col };
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token {
                tok: Tok::Num(s.parse().expect("digits")),
                loc,
            });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                loc,
            });
            continue;
        }
        if "+-*/^()".contains(c) {
            out.push(Token {
                tok: Tok::Sym(c),
                loc,
            });
            col += 1;
            i += 1;
            continue;
        }
        return Err(Error::Syntax {
            location: loc,
            message: format!("unexpected character '{c}'"),
        });
    }
    Ok(out)
}

/// A linear combination `scalar + Σ coeff_s * s` parsed from text.
#[derive(Clone, Debug, PartialEq)]
pub struct Combination<S: Ord> {
    pub scalar: Poly,
    pub symbols: BTreeMap<S, Poly>,
}

impl<S: Ord + Clone> Combination<S> {
    fn scalar(p: Poly) -> Self {
        Combination {
            scalar: p,
            symbols: BTreeMap::new(),
        }
    }

    fn is_pure_scalar(&self) -> bool {
        self.symbols.is_empty()
    }

    fn add(mut self, other: Combination<S>, sign: bool) -> Self {
        self.scalar = if sign {
            &self.scalar + &other.scalar
        } else {
            &self.scalar - &other.scalar
        };
        for (s, p) in other.symbols {
            let e = self
                .symbols
                .entry(s)
                .or_insert_with(|| Poly::zero(p.nvars()));
            *e = if sign { &*e + &p } else { &*e - &p };
        }
        self.symbols.retain(|_, p| !p.is_zero());
        self
    }

    fn scale(mut self, p: &Poly) -> Self {
        self.scalar = &self.scalar * p;
        for v in self.symbols.values_mut() {
            *v = &*v * p;
        }
        self.symbols.retain(|_, p| !p.is_zero());
        self
    }
}

struct Parser<'a, S> {
    toks: Vec<Token>,
    pos: usize,
    end: Location,
    vars: &'a [String],
    resolve: &'a dyn Fn(&str) -> Option<S>,
}

impl<S: Ord + Clone> Parser<'_, S> {
    fn nvars(&self) -> usize {
        self.vars.len()
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn loc(&self) -> Location {
        self.toks.get(self.pos).map_or(self.end, |t| t.loc)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            location: self.loc(),
            message: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Combination<S>> {
        let mut neg = false;
        if self.eat('-') {
            neg = true;
        } else {
            self.eat('+');
        }
        let first = self.term()?;
        let mut acc = Combination::scalar(Poly::zero(self.nvars())).add(first, !neg);
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc = acc.add(t, true);
            } else if self.eat('-') {
                let t = self.term()?;
                acc = acc.add(t, false);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Combination<S>> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            let loc = self.loc();
            let f = self.factor()?;
            acc = match (acc.is_pure_scalar(), f.is_pure_scalar()) {
                (true, _) => f.scale(&acc.scalar),
                (false, true) => acc.scale(&f.scalar),
                (false, false) => {
                    return Err(Error::Syntax {
                        location: loc,
                        message: "product of two module symbols".into(),
                    })
                }
            };
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<Option<u32>> {
        if !self.eat('^') {
            return Ok(None);
        }
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                match u32::try_from(n) {
                    Ok(e) if e <= 1000 => Ok(Some(e)),
                    _ => self.err("exponent too large"),
                }
            }
            _ => self.err("expected exponent"),
        }
    }

    fn factor(&mut self) -> Result<Combination<S>> {
        let n = self.nvars();
        match self.peek().cloned() {
            Some(Tok::Num(num)) => {
                self.pos += 1;
                let mut value = Rational::from_integer(num);
                if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Tok::Num(den)) if !den.is_zero() => {
                            self.pos += 1;
                            value /= Rational::from_integer(den);
                        }
                        _ => return self.err("expected nonzero denominator"),
                    }
                }
                Ok(Combination::scalar(Poly::constant(n, value)))
            }
            Some(Tok::Ident(name)) => {
                let here = self.loc();
                self.pos += 1;
                if let Some(i) = self.vars.iter().position(|v| *v == name) {
                    let e = self.exponent()?.unwrap_or(1);
                    let mut exps = vec![0u16; n];
                    exps[i] = e as u16;
                    return Ok(Combination::scalar(Poly::term(
                        Monomial::from_exponents(&exps),
                        Rational::one(),
                    )));
                }
                match (self.resolve)(&name) {
                    Some(s) => {
                        let mut symbols = BTreeMap::new();
                        symbols.insert(s, Poly::one(n));
                        Ok(Combination {
                            scalar: Poly::zero(n),
                            symbols,
                        })
                    }
                    None => Err(Error::Syntax {
                        location: here,
                        message: format!("unknown identifier '{name}'"),
                    }),
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                match self.exponent()? {
                    None => Ok(inner),
                    Some(e) if inner.is_pure_scalar() => {
                        Ok(Combination::scalar(inner.scalar.pow(e)))
                    }
                    Some(_) => self.err("cannot raise a module element to a power"),
                }
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a linear combination whose symbols are resolved by `resolve`.
pub fn parse_combination<S: Ord + Clone>(
    text: &str,
    vars: &[String],
    base: Location,
    resolve: &dyn Fn(&str) -> Option<S>,
) -> Result<Combination<S>> {
    let toks = tokenize(text, base)?;
    let end = toks.last().map_or(base, |t| Location {
        line: t.loc.line,
        column: t.loc.column + 1,
    });
    let mut p = Parser {
        toks,
        pos: 0,
        end,
        vars,
        resolve,
    };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(out)
}

const START: Location = Location { line: 1, column: 1 };

/// Parses a polynomial such as `3/2*x^2*y - x + 7`.
pub fn parse_poly(text: &str, vars: &[String]) -> Result<Poly> {
    parse_poly_at(text, vars, START)
}

pub fn parse_poly_at(text: &str, vars: &[String], base: Location) -> Result<Poly> {
    let c = parse_combination::<usize>(text, vars, base, &|_| None)?;
    Ok(c.scalar)
}

/// Index of the derivation named by `name`: `d<var>`, `dx<i>`, or `dx`/`dy`/`dz` for up to three variables.
pub fn resolve_derivation(name: &str, vars: &[String]) -> Option<usize> {
    let rest = name.strip_prefix('d')?;
    if let Some(i) = vars.iter().position(|v| v == rest) {
        return Some(i);
    }
    if let Some(idx) = rest.strip_prefix('x').and_then(|s| s.parse::<usize>().ok()) {
        if (1..=vars.len()).contains(&idx) {
            return Some(idx - 1);
        }
        return None;
    }
    if vars.len() <= 3 {
        let i = match rest {
            "x" => 0,
            "y" => 1,
            "z" => 2,
            _ => return None,
        };
        return (i < vars.len()).then_some(i);
    }
    None
}

/// Parses a vector field literal such as `x*dx - y*dy`.
pub fn parse_vector_field(text: &str, vars: &[String]) -> Result<VectorField> {
    parse_vector_field_at(text, vars, START)
}

pub fn parse_vector_field_at(text: &str, vars: &[String], base: Location) -> Result<VectorField> {
    let n = vars.len();
    let c = parse_combination(text, vars, base, &|s| resolve_derivation(s, vars))?;
    if !c.scalar.is_zero() {
        return Err(Error::Syntax {
            location: base,
            message: "vector field has a term without a derivation symbol".into(),
        });
    }
    let mut comps = PolyVector::zero(n, n);
    for (i, p) in c.symbols {
        comps[i] = p;
    }
    VectorField::new(comps)
}

/// Checks that a list of variable names is usable: distinct identifiers that do not read as derivations.
pub fn validate_variables(vars: &[String]) -> Result<()> {
    for (i, v) in vars.iter().enumerate() {
        let ok = v
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(Error::invalid(format!("bad variable name '{v}'")));
        }
        if vars[..i].contains(v) {
            return Err(Error::invalid(format!("variable '{v}' declared twice")));
        }
        if resolve_derivation(v, vars).is_some() {
            return Err(Error::invalid(format!(
                "variable '{v}' collides with a derivation symbol"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn poly_roundtrip() {
        let v = vars(&["x", "y"]);
        let p = parse_poly("3/2*x^2*y - x + 7", &v).unwrap();
        assert_eq!(p.display_with(&v).to_string(), "3/2*x^2*y - x + 7");
        let q = parse_poly(&p.display_with(&v).to_string(), &v).unwrap();
        assert_eq!(p, q);
        assert_eq!(parse_poly("(x+y)^2 - x^2 - 2*x*y", &v).unwrap(), parse_poly("y^2", &v).unwrap());
    }

    #[test]
    fn vector_field_syntax() {
        let v = vars(&["x", "y"]);
        let f = parse_vector_field("x*dx - y*dy", &v).unwrap();
        assert_eq!(f.display_with(&v), "x*dx - y*dy");
        let g = parse_vector_field("x*dx1 - y*dx2", &v).unwrap();
        assert_eq!(f, g);
        let err = parse_vector_field("dz", &v).unwrap_err();
        assert!(matches!(err, Error::Syntax { .. }));
    }

    #[test]
    fn syntax_errors_carry_location() {
        let v = vars(&["x"]);
        match parse_poly("x + * 2", &v) {
            Err(Error::Syntax { location, .. }) => assert_eq!(location.column, 5),
            other => panic!("{other:?}"),
        }
    }
}
