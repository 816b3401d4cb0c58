//! `complex { ranks = [2, 1]; d1 = [[y], [-x]]; anchor = [[x, y]] }`
//!
//! Differentials are optional (zero when omitted); the anchor is optional
//! and defaults to zero.

use crate::error::{Error, Result};
use crate::ring::PolyMatrix;
use crate::text::{write_matrix, Scanner};

use super::complex::{AnchoredComplex, GradedComplex};

pub fn write_complex(c: &AnchoredComplex, names: &[String]) -> String {
    let cx = c.complex();
    let ranks: Vec<String> = cx.ranks().iter().map(|r| r.to_string()).collect();
    let mut out = format!("complex {{\n  ranks = [{}];\n", ranks.join(", "));
    for i in 1..=cx.top_degree() {
        let d = cx.d(i).unwrap();
        if !d.is_zero() {
            out.push_str(&format!("  d{i} = {};\n", write_matrix(d, names)));
        }
    }
    if !c.anchor().is_zero() {
        out.push_str(&format!("  anchor = {};\n", write_matrix(c.anchor(), names)));
    }
    out.push_str("}\n");
    out
}

/// Parses the body after the `complex` keyword has been consumed.
pub fn parse_complex_body(s: &mut Scanner<'_>, vars: &[String]) -> Result<AnchoredComplex> {
    let n = vars.len();
    s.expect('{')?;
    s.keyword("ranks")?;
    s.expect('=')?;
    s.expect('[')?;
    let mut ranks = Vec::new();
    if !s.eat(']') {
        loop {
            ranks.push(s.uint()?);
            if s.eat(']') {
                break;
            }
            s.expect(',')?;
        }
    }
    s.expect(';')?;
    let mut c = GradedComplex::with_zero_differentials(n, ranks);
    let mut anchor = PolyMatrix::zero(n, n, c.rank(0));
    while !s.eat('}') {
        let (key, loc) = s.ident()?;
        s.expect('=')?;
        if key == "anchor" {
            anchor = s.matrix(vars, n, c.rank(0))?;
        } else if let Some(i) = key.strip_prefix('d').and_then(|k| k.parse::<usize>().ok()) {
            if i == 0 || i > c.top_degree() {
                return Err(Error::Syntax {
                    location: loc,
                    message: format!("no differential d{i} for this rank list"),
                });
            }
            let d = s.matrix(vars, c.rank(i - 1), c.rank(i))?;
            c.set_differential(i, d);
        } else {
            return Err(Error::Syntax {
                location: loc,
                message: format!("unknown field '{key}'"),
            });
        }
        s.expect(';')?;
    }
    AnchoredComplex::new(c, anchor)
}

pub fn parse_complex(text: &str, vars: &[String]) -> Result<AnchoredComplex> {
    let mut s = Scanner::new(text);
    s.keyword("complex")?;
    let c = parse_complex_body(&mut s, vars)?;
    if !s.at_end() {
        return s.err("trailing input after complex block");
    }
    Ok(c)
}
