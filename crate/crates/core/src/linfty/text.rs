//! ```text
//! algebroid {
//!   max_arity = 3;
//!   gen e1 : 0;
//!   gen f1 : 1;
//!   [e1, e2] = -e2;
//!   [f1] = y*e1 - x*e2;
//!   rho(e1) = x*dx;
//! }
//! ```
//!
//! Only sorted tuples are written; any order is accepted on input.

use crate::error::{Error, Result};
use crate::ring::parse::{parse_combination, parse_vector_field_at};
use crate::ring::VectorField;
use crate::text::Scanner;

use super::algebroid::{BracketTable, LInftyAlgebroid};
use super::element::{GradedBasis, GradedElement};

pub fn write_algebroid(l: &LInftyAlgebroid, vars: &[String]) -> String {
    let b = l.basis();
    let mut out = format!("algebroid {{\n  max_arity = {};\n", l.max_arity());
    for i in 0..b.len() {
        out.push_str(&format!("  gen {} : {};\n", b.name(i), b.degree(i)));
    }
    for (_, tuple, v) in l.brackets().iter() {
        let names: Vec<&str> = tuple.iter().map(|&i| b.name(i)).collect();
        out.push_str(&format!("  [{}] = {};\n", names.join(", "), v.display_with(b, vars)));
    }
    for (i, v) in l.anchor().iter().enumerate() {
        if !v.is_zero() {
            out.push_str(&format!("  rho({}) = {};\n", b.name(i), v.display_with(vars)));
        }
    }
    out.push_str("}\n");
    out
}

fn parse_element(s: &mut Scanner<'_>, basis: &GradedBasis, vars: &[String]) -> Result<GradedElement> {
    let (text, loc) = s.until(&[';', '}']);
    if text.is_empty() {
        return s.err("expected an element");
    }
    let c = parse_combination(&text, vars, loc, &|name| basis.index_of(name))?;
    if !c.scalar.is_zero() {
        return Err(Error::Syntax {
            location: loc,
            message: "element has a term without a generator".into(),
        });
    }
    Ok(GradedElement::from_terms(c.symbols))
}

/// Parses the body after the `algebroid` keyword.
pub fn parse_algebroid_body(s: &mut Scanner<'_>, vars: &[String]) -> Result<LInftyAlgebroid> {
    let n = vars.len();
    s.expect('{')?;
    s.keyword("max_arity")?;
    s.expect('=')?;
    let kmax = s.uint()?;
    s.expect(';')?;
    let mut gens = Vec::new();
    while s.peek_ident().as_deref() == Some("gen") {
        s.keyword("gen")?;
        let (name, loc) = s.ident()?;
        if gens.iter().any(|(g, _)| g == &name) || vars.contains(&name) {
            return Err(Error::Syntax {
                location: loc,
                message: format!("generator name '{name}' is already in use"),
            });
        }
        s.expect(':')?;
        let d = s.uint()?;
        s.expect(';')?;
        gens.push((name, d));
    }
    let basis = GradedBasis::new(gens)?;
    let mut table = BracketTable::new(kmax);
    let mut anchor = vec![VectorField::zero(n); basis.len()];
    while !s.eat('}') {
        let loc = {
            s.skip_ws();
            s.loc()
        };
        let at = |e: Error| match e {
            Error::Syntax { .. } => e,
            other => Error::Syntax {
                location: loc,
                message: other.to_string(),
            },
        };
        if s.eat('[') {
            let mut tuple = Vec::new();
            loop {
                let (name, nloc) = s.ident()?;
                let i = basis.index_of(&name).ok_or_else(|| Error::Syntax {
                    location: nloc,
                    message: format!("unknown generator '{name}'"),
                })?;
                tuple.push(i);
                if s.eat(']') {
                    break;
                }
                s.expect(',')?;
            }
            s.expect('=')?;
            let v = parse_element(s, &basis, vars)?;
            table.set(&basis, &tuple, v).map_err(at)?;
        } else {
            s.keyword("rho")?;
            s.expect('(')?;
            let (name, nloc) = s.ident()?;
            let i = basis.index_of(&name).ok_or_else(|| Error::Syntax {
                location: nloc,
                message: format!("unknown generator '{name}'"),
            })?;
            s.expect(')')?;
            s.expect('=')?;
            let (text, vloc) = s.until(&[';', '}']);
            anchor[i] = parse_vector_field_at(&text, vars, vloc)?;
        }
        s.expect(';')?;
    }
    LInftyAlgebroid::new(n, basis, table, anchor)
}

pub fn parse_algebroid(text: &str, vars: &[String]) -> Result<LInftyAlgebroid> {
    let mut s = Scanner::new(text);
    s.keyword("algebroid")?;
    let l = parse_algebroid_body(&mut s, vars)?;
    if !s.at_end() {
        return s.err("trailing input after algebroid block");
    }
    Ok(l)
}
