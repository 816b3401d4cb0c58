//! Session files: a ring declaration followed by foliations, complexes and
//! previously emitted artifacts. See `GRAMMAR.md`.

use semimodel_core::dgmod::text::{parse_complex_body, write_complex};
use semimodel_core::dgmod::AnchoredComplex;
use semimodel_core::error::{Error, Location, Result};
use semimodel_core::foliation::{parse_cells_body, parse_foliation_body, write_cells, write_foliation, Foliation, LrCell};
use semimodel_core::linfty::text::{parse_algebroid_body, write_algebroid};
use semimodel_core::linfty::LInftyAlgebroid;
use semimodel_core::ring::parse::validate_variables;
use semimodel_core::text::Scanner;

#[derive(Clone, Debug)]
pub enum Item {
    Foliation {
        name: String,
        value: Foliation,
    },
    Complex {
        name: String,
        value: AnchoredComplex,
    },
    Resolution {
        of: String,
        length: usize,
        complex: AnchoredComplex,
    },
    Universal {
        of: String,
        length: usize,
        arity: usize,
        degree: usize,
        algebroid: LInftyAlgebroid,
    },
    Replacement {
        of: String,
        weight: usize,
        degree: usize,
        cells: Vec<LrCell>,
    },
}

#[derive(Clone, Debug)]
pub struct Session {
    pub vars: Vec<String>,
    pub items: Vec<Item>,
}

impl Session {
    pub fn foliations(&self) -> impl Iterator<Item = (&str, &Foliation)> {
        self.items.iter().filter_map(|i| match i {
            Item::Foliation { name, value } => Some((name.as_str(), value)),
            _ => None,
        })
    }

    pub fn foliation(&self, name: &str) -> Option<&Foliation> {
        self.foliations().find(|(n, _)| *n == name).map(|(_, f)| f)
    }

    pub fn complexes(&self) -> impl Iterator<Item = (&str, &AnchoredComplex)> {
        self.items.iter().filter_map(|i| match i {
            Item::Complex { name, value } => Some((name.as_str(), value)),
            _ => None,
        })
    }

    pub fn write_ring(&self) -> String {
        format!("ring {};\n", self.vars.join(", "))
    }
}

fn syntax<T>(location: Location, message: impl Into<String>) -> Result<T> {
    Err(Error::Syntax {
        location,
        message: message.into(),
    })
}

fn header_uint(s: &mut Scanner<'_>, key: &str) -> Result<usize> {
    s.keyword(key)?;
    s.uint()
}

pub fn parse_session(text: &str) -> Result<Session> {
    let mut s = Scanner::new(text);
    s.keyword("ring")?;
    let mut vars = Vec::new();
    let loc = {
        s.skip_ws();
        s.loc()
    };
    loop {
        vars.push(s.ident()?.0);
        if s.eat(';') {
            break;
        }
        s.expect(',')?;
    }
    if let Err(e) = validate_variables(&vars) {
        return syntax(loc, e.to_string());
    }
    let mut items: Vec<Item> = Vec::new();
    let mut names: Vec<String> = Vec::new();
    while !s.at_end() {
        let (kw, loc) = s.ident()?;
        let mut fresh = |s: &mut Scanner<'_>| -> Result<String> {
            let (name, loc) = s.ident()?;
            if names.contains(&name) {
                return syntax(loc, format!("'{name}' is already defined"));
            }
            names.push(name.clone());
            Ok(name)
        };
        let known = |s: &mut Scanner<'_>, items: &[Item]| -> Result<String> {
            let (name, loc) = s.ident()?;
            if !items.iter().any(|i| matches!(i, Item::Foliation { name: n, .. } if *n == name)) {
                return syntax(loc, format!("no foliation named '{name}' before this point"));
            }
            Ok(name)
        };
        let item = match kw.as_str() {
            "foliation" => {
                let name = fresh(&mut s)?;
                Item::Foliation {
                    name,
                    value: parse_foliation_body(&mut s, &vars)?,
                }
            }
            "complex" => {
                let name = fresh(&mut s)?;
                Item::Complex {
                    name,
                    value: parse_complex_body(&mut s, &vars)?,
                }
            }
            "resolution" => {
                let of = known(&mut s, &items)?;
                let length = header_uint(&mut s, "length")?;
                s.keyword("complex")?;
                Item::Resolution {
                    of,
                    length,
                    complex: parse_complex_body(&mut s, &vars)?,
                }
            }
            "universal" => {
                let of = known(&mut s, &items)?;
                let length = header_uint(&mut s, "length")?;
                let arity = header_uint(&mut s, "arity")?;
                let degree = header_uint(&mut s, "degree")?;
                s.keyword("algebroid")?;
                Item::Universal {
                    of,
                    length,
                    arity,
                    degree,
                    algebroid: parse_algebroid_body(&mut s, &vars)?,
                }
            }
            "replacement" => {
                let of = known(&mut s, &items)?;
                let weight = header_uint(&mut s, "weight")?;
                let degree = header_uint(&mut s, "degree")?;
                s.keyword("cells")?;
                Item::Replacement {
                    of,
                    weight,
                    degree,
                    cells: parse_cells_body(&mut s, &vars)?,
                }
            }
            other => return syntax(loc, format!("unexpected '{other}'")),
        };
        items.push(item);
    }
    Ok(Session { vars, items })
}

pub fn write_item(item: &Item, vars: &[String]) -> String {
    match item {
        Item::Foliation { name, value } => write_foliation(name, value, vars),
        Item::Complex { name, value } => format!("complex {name} {}", body(&write_complex(value, vars), "complex")),
        Item::Resolution { of, length, complex } => {
            format!("resolution {of} length {length} {}", write_complex(complex, vars))
        }
        Item::Universal {
            of,
            length,
            arity,
            degree,
            algebroid,
        } => format!(
            "universal {of} length {length} arity {arity} degree {degree} {}",
            write_algebroid(algebroid, vars)
        ),
        Item::Replacement {
            of,
            weight,
            degree,
            cells,
        } => format!("replacement {of} weight {weight} degree {degree} {}", write_cells(cells, vars)),
    }
}

/// Strips the leading keyword from a block written by a core writer.
fn body<'a>(text: &'a str, kw: &str) -> &'a str {
    text.strip_prefix(kw).map_or(text, str::trim_start)
}
