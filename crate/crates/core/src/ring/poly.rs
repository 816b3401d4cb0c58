use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Signed, Zero};

use super::{Monomial, Rational};

/// Polynomial in `ℚ[x1, ..., xn]`.
///
/// Terms are kept strictly decreasing in the monomial order with no zero
/// coefficients, so equal polynomials compare equal structurally.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: Vec<(Monomial, Rational)>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Poly {
            nvars,
            terms: vec![(Monomial::one(nvars), c)],
        }
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, Rational::from_integer(c.into()))
    }

    pub fn variable(nvars: usize, index: usize) -> Self {
        Self::term(Monomial::variable(nvars, index), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let nvars = m.nvars();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Poly {
            nvars,
            terms: vec![(m, c)],
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut v: Vec<(Monomial, Rational)> = terms.into_iter().collect();
        v.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, Rational)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            debug_assert_eq!(m.nvars(), nvars);
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { nvars, terms: out }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    /// The constant value if the polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 if self.terms[0].0.is_one() => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.terms[0].1.is_one()
    }

    /// Terms in decreasing monomial order.
    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    /// The polynomial without its leading term.
    pub fn without_leading(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.get(1..).unwrap_or(&[]).to_vec(),
        }
    }

    /// Pushes a term strictly smaller than every existing term.
    pub(crate) fn push_trailing(&mut self, m: Monomial, c: Rational) {
        debug_assert!(self.terms.last().map_or(true, |(l, _)| *l > m));
        if !c.is_zero() {
            self.terms.push((m, c));
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(n, a)| (n.mul(m), a * c))
                .collect(),
        }
    }

    /// `self + c * m * other`, the inner step of every reduction loop.
    pub fn add_scaled_term(&self, c: &Rational, m: &Monomial, other: &Poly) -> Poly {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        merge(
            self.nvars,
            self.terms.iter().cloned(),
            other.terms.iter().map(|(n, a)| (n.mul(m), a * c)),
        )
    }

    pub fn partial_derivative(&self, i: usize) -> Poly {
        let terms = self.terms.iter().filter_map(|(m, c)| {
            m.differentiate(i)
                .map(|(e, dm)| (dm, c * Rational::from_integer(e.into())))
        });
        Poly::from_terms(self.nvars, terms)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formats with the given variable names, in the text syntax accepted by the parser.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }
}

fn merge(
    nvars: usize,
    a: impl Iterator<Item = (Monomial, Rational)>,
    b: impl Iterator<Item = (Monomial, Rational)>,
) -> Poly {
    let mut a = a.peekable();
    let mut b = b.peekable();
    let mut out = Vec::new();
    loop {
        let ord = match (a.peek(), b.peek()) {
            (None, None) => break,
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (Some(x), Some(y)) => x.0.cmp(&y.0),
        };
        match ord {
            Ordering::Greater => out.push(a.next().unwrap()),
            Ordering::Less => out.push(b.next().unwrap()),
            Ordering::Equal => {
                let (m, c) = a.next().unwrap();
                let (_, d) = b.next().unwrap();
                let s = c + d;
                if !s.is_zero() {
                    out.push((m, s));
                }
            }
        }
    }
    Poly { nvars, terms: out }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        debug_assert_eq!(self.nvars, rhs.nvars);
        merge(
            self.nvars,
            self.terms.iter().cloned(),
            rhs.terms.iter().cloned(),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        debug_assert_eq!(self.nvars, rhs.nvars);
        merge(
            self.nvars,
            self.terms.iter().cloned(),
            rhs.terms.iter().map(|(m, c)| (m.clone(), -c)),
        )
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        debug_assert_eq!(self.nvars, rhs.nvars);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.nvars);
        }
        let (small, large) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut acc = Poly::zero(self.nvars);
        for (m, c) in &small.terms {
            acc = acc.add_scaled_term(c, m, large);
        }
        acc
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    names: &'a [String],
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial, names: &[String]) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        match names.get(i) {
            Some(n) => write!(f, "{n}")?,
            None => write!(f, "x{}", i + 1)?,
        }
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.poly.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write_monomial(f, m, self.names)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with(&[]).fmt(f)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}
