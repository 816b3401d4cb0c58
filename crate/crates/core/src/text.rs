//! Character scanner shared by the block-structured text formats
//! (complexes, bracket tables, sessions). Tracks 1-based line/column.

use crate::error::{Error, Location, Result};
use crate::ring::parse::parse_poly_at;
use crate::ring::{Poly, PolyMatrix};

pub struct Scanner<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
    column: usize,
}

impl<'a> Scanner<'a> {
    pub fn new(text: &'a str) -> Self {
        Scanner {
            text,
            pos: 0,
            line: 1,
            column: 1,
        }
    }

    pub fn loc(&self) -> Location {
        Location {
            line: self.line,
            column: self.column,
        }
    }

    pub fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            location: self.loc(),
            message: msg.into(),
        })
    }

    pub fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    /// Skips whitespace and `#` comments.
    pub fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c == '#' {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    pub fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.text.len()
    }

    pub fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(got) => self.err(format!("expected '{c}', found '{got}'")),
                None => self.err(format!("expected '{c}', found end of input")),
            }
        }
    }

    pub fn peek_ident(&mut self) -> Option<String> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let first = rest.chars().next()?;
        if !(first.is_ascii_alphabetic() || first == '_') {
            return None;
        }
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        Some(rest[..len].to_string())
    }

    pub fn ident(&mut self) -> Result<(String, Location)> {
        let loc = {
            self.skip_ws();
            self.loc()
        };
        match self.peek_ident() {
            Some(id) => {
                for _ in 0..id.len() {
                    self.bump();
                }
                Ok((id, loc))
            }
            None => self.err("expected an identifier"),
        }
    }

    pub fn keyword(&mut self, kw: &str) -> Result<()> {
        let (id, loc) = self.ident()?;
        if id != kw {
            return Err(Error::Syntax {
                location: loc,
                message: format!("expected '{kw}', found '{id}'"),
            });
        }
        Ok(())
    }

    pub fn uint(&mut self) -> Result<usize> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        if len == 0 {
            return self.err("expected a non-negative integer");
        }
        let v = rest[..len].parse().map_err(|_| Error::Syntax {
            location: self.loc(),
            message: "integer out of range".into(),
        })?;
        for _ in 0..len {
            self.bump();
        }
        Ok(v)
    }

    /// Raw text up to (not including) the first of `stops` outside parentheses.
    pub fn until(&mut self, stops: &[char]) -> (String, Location) {
        self.skip_ws();
        let loc = self.loc();
        let start = self.pos;
        let mut depth = 0i32;
        while let Some(c) = self.peek() {
            if depth == 0 && stops.contains(&c) {
                break;
            }
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            self.bump();
        }
        (self.text[start..self.pos].trim_end().to_string(), loc)
    }

    pub fn poly_until(&mut self, stops: &[char], vars: &[String]) -> Result<Poly> {
        let (s, loc) = self.until(stops);
        if s.is_empty() {
            return Err(Error::Syntax {
                location: loc,
                message: "expected a polynomial".into(),
            });
        }
        parse_poly_at(&s, vars, loc)
    }

    /// `[[a, b], [c, d]]`; `rows x cols` is enforced.
    pub fn matrix(&mut self, vars: &[String], rows: usize, cols: usize) -> Result<PolyMatrix> {
        let loc = {
            self.skip_ws();
            self.loc()
        };
        self.expect('[')?;
        let mut data: Vec<Vec<Poly>> = Vec::new();
        if !self.eat(']') {
            loop {
                self.expect('[')?;
                let mut row = Vec::new();
                if !self.eat(']') {
                    loop {
                        row.push(self.poly_until(&[',', ']'], vars)?);
                        if self.eat(']') {
                            break;
                        }
                        self.expect(',')?;
                    }
                }
                data.push(row);
                if self.eat(']') {
                    break;
                }
                self.expect(',')?;
            }
        }
        let shape_err = |msg: String| Error::Syntax { location: loc, message: msg };
        if data.len() != rows {
            return Err(shape_err(format!("expected {rows} rows, found {}", data.len())));
        }
        if let Some(r) = data.iter().find(|r| r.len() != cols) {
            return Err(shape_err(format!("expected {cols} columns, found {}", r.len())));
        }
        let n = vars.len();
        if rows == 0 {
            return Ok(PolyMatrix::zero(n, 0, cols));
        }
        PolyMatrix::from_rows(n, data)
    }
}

pub fn write_matrix(m: &PolyMatrix, names: &[String]) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            let entries: Vec<String> = m
                .row(i)
                .iter()
                .map(|p| p.display_with(names).to_string())
                .collect();
            format!("[{}]", entries.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}
