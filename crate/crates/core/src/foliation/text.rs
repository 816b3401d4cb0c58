//! ```text
//! foliation F { gen e11 = x*dx; gen e12 = y*dx; }
//! cells {
//!   cell e11 : 0 anchor x*dx;
//!   cell c1_1 : 1 = [e11, e22];
//! }
//! ```

use crate::error::{Error, Result};
use crate::freealg::{parse_word_element, WordElement};
use crate::linfty::GradedBasis;
use crate::ring::parse::parse_vector_field_at;
use crate::ring::VectorField;
use crate::text::Scanner;

use super::involutive::{check_involutive, Foliation};
use super::replacement::LrCell;

pub fn write_foliation(name: &str, f: &Foliation, vars: &[String]) -> String {
    let mut out = format!("foliation {name} {{\n");
    for (g, v) in f.names().iter().zip(f.generators()) {
        out.push_str(&format!("  gen {g} = {};\n", v.display_with(vars)));
    }
    out.push_str("}\n");
    out
}

/// Parses `{ gen v = ...; ... }`. Involutivity is checked here; a failure
/// names the pair and its bracket.
pub fn parse_foliation_body(s: &mut Scanner<'_>, vars: &[String]) -> Result<Foliation> {
    let open = {
        s.skip_ws();
        s.loc()
    };
    s.expect('{')?;
    let mut names: Vec<String> = Vec::new();
    let mut gens = Vec::new();
    while !s.eat('}') {
        s.keyword("gen")?;
        let (name, loc) = s.ident()?;
        if names.contains(&name) || vars.contains(&name) {
            return Err(Error::Syntax {
                location: loc,
                message: format!("generator name '{name}' is already in use"),
            });
        }
        s.expect('=')?;
        let (text, vloc) = s.until(&[';', '}']);
        if text.is_empty() {
            return s.err("expected a vector field");
        }
        gens.push(parse_vector_field_at(&text, vars, vloc)?);
        names.push(name);
        s.expect(';')?;
    }
    let cert = check_involutive(vars.len(), &gens)?;
    if let Some(((i, j), v)) = &cert.failure {
        return Err(Error::Invalid(format!(
            "foliation at {open} is not involutive: [{}, {}] = {} is outside the span",
            names[*i],
            names[*j],
            v.display_with(vars)
        )));
    }
    Foliation::new(vars.len(), names, gens)
}

pub fn write_cells(cells: &[LrCell], vars: &[String]) -> String {
    let basis = cell_basis(cells).expect("cell names are distinct");
    let mut out = String::from("cells {\n");
    for c in cells {
        if c.degree == 0 {
            out.push_str(&format!("  cell {} : 0 anchor {};\n", c.name, c.anchor.display_with(vars)));
        } else {
            out.push_str(&format!("  cell {} : {} = {};\n", c.name, c.degree, c.boundary.display(&basis, vars)));
        }
    }
    out.push_str("}\n");
    out
}

fn cell_basis(cells: &[LrCell]) -> Result<GradedBasis> {
    GradedBasis::new(cells.iter().map(|c| (c.name.clone(), c.degree)).collect())
}

/// Parses the body after the `cells` keyword. Boundaries may only use
/// earlier cells; weights are recomputed.
pub fn parse_cells_body(s: &mut Scanner<'_>, vars: &[String]) -> Result<Vec<LrCell>> {
    let n = vars.len();
    s.expect('{')?;
    let mut cells: Vec<LrCell> = Vec::new();
    while !s.eat('}') {
        s.keyword("cell")?;
        let (name, loc) = s.ident()?;
        if cells.iter().any(|c| c.name == name) || vars.contains(&name) {
            return Err(Error::Syntax {
                location: loc,
                message: format!("cell name '{name}' is already in use"),
            });
        }
        s.expect(':')?;
        let degree = s.uint()?;
        let (boundary, anchor) = if degree == 0 {
            s.keyword("anchor")?;
            let (text, vloc) = s.until(&[';', '}']);
            if text.is_empty() {
                return s.err("expected a vector field");
            }
            (WordElement::zero(), parse_vector_field_at(&text, vars, vloc)?)
        } else {
            s.expect('=')?;
            let (text, eloc) = s.until(&[';', '}']);
            let basis = cell_basis(&cells)?;
            (parse_word_element(&text, &basis, vars, eloc)?, VectorField::zero(n))
        };
        let leaf: Vec<usize> = cells.iter().map(|c| c.weight).collect();
        cells.push(LrCell {
            name,
            degree,
            weight: boundary.max_weight(&leaf),
            boundary,
            anchor,
        });
        s.expect(';')?;
    }
    Ok(cells)
}
