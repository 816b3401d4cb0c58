//! Word elements as written by `WordElement::display`:
//! `x * e22 - 1/2*y * [[e12, e21], [e21, e22]] + (x + y) * [a, b]`.
//! Nodes are brought to canonical form on input, so any child order is
//! accepted.

use crate::error::{Error, Location, Result};
use crate::linfty::GradedBasis;
use crate::ring::parse::parse_poly_at;
use crate::ring::Poly;

use super::word::{canonical_node, Word, WordElement};

fn shift(base: Location, text: &str, upto: usize) -> Location {
    let mut loc = base;
    for c in text[..upto].chars() {
        if c == '\n' {
            loc.line += 1;
            loc.column = 1;
        } else {
            loc.column += 1;
        }
    }
    loc
}

struct WordParser<'a> {
    text: &'a str,
    pos: usize,
    base: Location,
    basis: &'a GradedBasis,
}

impl WordParser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            location: shift(self.base, self.text, self.pos),
            message: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.text[self.pos..].chars().next().unwrap().len_utf8();
        }
    }

    /// A word and the sign picked up while canonicalizing; `None` if it vanishes.
    fn word(&mut self) -> Result<Option<(Word, i8)>> {
        self.skip_ws();
        if self.text[self.pos..].starts_with('[') {
            self.pos += 1;
            let mut children = Vec::new();
            let mut sign = 1i8;
            let mut dead = false;
            loop {
                match self.word()? {
                    Some((w, s)) => {
                        children.push(w);
                        sign *= s;
                    }
                    None => dead = true,
                }
                self.skip_ws();
                if self.text[self.pos..].starts_with(']') {
                    self.pos += 1;
                    break;
                }
                if !self.text[self.pos..].starts_with(',') {
                    return self.err("expected ',' or ']' in a bracket word");
                }
                self.pos += 1;
            }
            if dead {
                return Ok(None);
            }
            Ok(canonical_node(children, self.basis).map(|(w, s)| (w, s * sign)))
        } else {
            let rest = &self.text[self.pos..];
            let len = rest
                .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
                .unwrap_or(rest.len());
            if len == 0 {
                return self.err("expected a generator or '['");
            }
            match self.basis.index_of(&rest[..len]) {
                Some(i) => {
                    self.pos += len;
                    Ok(Some((Word::Leaf(i), 1)))
                }
                None => self.err(format!("unknown generator '{}'", &rest[..len])),
            }
        }
    }
}

/// Top-level `+`/`-` split points (outside brackets and parentheses).
fn split_terms(text: &str) -> Vec<(usize, usize, bool)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut neg = false;
    let mut seen = false;
    for (i, c) in text.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            '+' | '-' if depth == 0 => {
                // a sign right after '^' or '*' or '/' belongs to the coefficient
                let prev = text[..i].trim_end().chars().last();
                if matches!(prev, Some('^' | '*' | '/')) {
                    continue;
                }
                if seen {
                    out.push((start, i, neg));
                }
                start = i + 1;
                neg = c == '-';
                seen = false;
                continue;
            }
            _ => {}
        }
        if !c.is_whitespace() {
            seen = true;
        }
    }
    if seen {
        out.push((start, text.len(), neg));
    }
    out
}

pub fn parse_word_element(text: &str, basis: &GradedBasis, vars: &[String], base: Location) -> Result<WordElement> {
    let n = vars.len();
    let mut e = WordElement::zero();
    if text.trim() == "0" {
        return Ok(e);
    }
    let terms = split_terms(text);
    if terms.is_empty() {
        return Err(Error::Syntax {
            location: base,
            message: "expected a word element".into(),
        });
    }
    for (start, end, neg) in terms {
        let t = &text[start..end];
        // the word is whatever follows the last top-level '*'
        let mut depth = 0i32;
        let mut star = None;
        for (i, c) in t.char_indices() {
            match c {
                '[' | '(' => depth += 1,
                ']' | ')' => depth -= 1,
                '*' if depth == 0 => star = Some(i),
                _ => {}
            }
        }
        let (coeff, wstart) = match star {
            Some(i) => {
                let loc = shift(base, text, start);
                let s = t[..i].trim();
                let s = s.strip_prefix('(').and_then(|s| s.strip_suffix(')')).unwrap_or(s);
                (parse_poly_at(s, vars, loc)?, start + i + 1)
            }
            None => (Poly::one(n), start),
        };
        let mut p = WordParser {
            text: &text[..end],
            pos: wstart,
            base,
            basis,
        };
        let w = p.word()?;
        p.skip_ws();
        if p.pos != end {
            return p.err("trailing input after a word");
        }
        if let Some((w, s)) = w {
            let c = if (s < 0) != neg { -&coeff } else { coeff };
            e.add_term(w, &c);
        }
    }
    Ok(e)
}
