use std::collections::BTreeMap;
use std::fmt::Write;

use crate::linfty::{swap_sign, GradedBasis};
use crate::ring::Poly;

/// A bracket word with no internal coefficients: a generator, or a node
/// `[w1, ..., wk]_k` whose arity is the number of children.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Word {
    Leaf(usize),
    Node(Vec<Word>),
}

impl Word {
    pub fn arity(&self) -> usize {
        match self {
            Word::Leaf(_) => 0,
            Word::Node(c) => c.len(),
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Word::Leaf(_))
    }

    /// Whether some subword is a unary bracket of a generator.
    pub fn has_unary_leaf(&self) -> bool {
        match self {
            Word::Leaf(_) => false,
            Word::Node(c) => (c.len() == 1 && c[0].is_leaf()) || c.iter().any(Word::has_unary_leaf),
        }
    }

    pub fn has_unary(&self) -> bool {
        match self {
            Word::Leaf(_) => false,
            Word::Node(c) => c.len() == 1 || c.iter().any(Word::has_unary),
        }
    }

    pub fn display(&self, basis: &GradedBasis) -> String {
        let mut s = String::new();
        self.write_into(basis, &mut s);
        s
    }

    fn write_into(&self, basis: &GradedBasis, out: &mut String) {
        match self {
            Word::Leaf(i) => out.push_str(basis.name(*i)),
            Word::Node(c) => {
                out.push('[');
                for (k, w) in c.iter().enumerate() {
                    if k > 0 {
                        out.push_str(", ");
                    }
                    w.write_into(basis, out);
                }
                out.push(']');
            }
        }
    }
}

/// `deg(a[v0..v_{k-1}]_k) = Σ deg(v_i) + k - 2`; may be negative.
pub fn word_degree(w: &Word, basis: &GradedBasis) -> isize {
    match w {
        Word::Leaf(i) => basis.degree(*i) as isize,
        Word::Node(c) => c.iter().map(|x| word_degree(x, basis)).sum::<isize>() + c.len() as isize - 2,
    }
}

/// Bracket weight: `Σ (k - 1)` over nodes plus the weights of the leaves.
pub fn word_weight(w: &Word, leaf_weight: &[usize]) -> usize {
    match w {
        Word::Leaf(i) => leaf_weight.get(*i).copied().unwrap_or(0),
        Word::Node(c) => c.iter().map(|x| word_weight(x, leaf_weight)).sum::<usize>() + c.len() - 1,
    }
}

/// The canonical node with these children: sorted, with the Koszul sign of
/// the sort, or `None` when a repeated even-degree child kills it.
pub fn canonical_node(children: Vec<Word>, basis: &GradedBasis) -> Option<(Word, i8)> {
    let degs: Vec<isize> = children.iter().map(|w| word_degree(w, basis)).collect();
    let mut order: Vec<usize> = (0..children.len()).collect();
    let mut sign = 1i8;
    let k = order.len();
    for pass in 0..k {
        for p in 0..k.saturating_sub(1 + pass) {
            if children[order[p]] > children[order[p + 1]] {
                let (a, b) = (degs[order[p]], degs[order[p + 1]]);
                sign *= swap_sign(a.rem_euclid(2) as usize, b.rem_euclid(2) as usize);
                order.swap(p, p + 1);
            }
        }
    }
    for w in order.windows(2) {
        if children[w[0]] == children[w[1]] && degs[w[0]].rem_euclid(2) == 0 {
            return None;
        }
    }
    let mut slots: Vec<Option<Word>> = children.into_iter().map(Some).collect();
    let sorted = order.iter().map(|&i| slots[i].take().unwrap()).collect();
    Some((Word::Node(sorted), sign))
}

/// A word with coefficients at any node, as written by hand.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LWord {
    Leaf(usize),
    /// `a v` for a generator `v`.
    ScaledLeaf(Poly, usize),
    Node { coeff: Poly, children: Vec<LWord> },
}

impl LWord {
    pub fn node(coeff: Poly, children: Vec<LWord>) -> Self {
        LWord::Node { coeff, children }
    }

    /// The word with all coefficients dropped, for degree bookkeeping.
    pub fn shape(&self) -> Word {
        match self {
            LWord::Leaf(i) | LWord::ScaledLeaf(_, i) => Word::Leaf(*i),
            LWord::Node { children, .. } => Word::Node(children.iter().map(LWord::shape).collect()),
        }
    }
}

/// `A`-linear combination of words.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct WordElement {
    terms: BTreeMap<Word, Poly>,
}

impl WordElement {
    pub fn zero() -> Self {
        WordElement::default()
    }

    pub fn word(w: Word, nvars: usize) -> Self {
        WordElement::term(w, Poly::one(nvars))
    }

    pub fn term(w: Word, c: Poly) -> Self {
        let mut e = WordElement::zero();
        e.add_term(w, &c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Poly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> Option<&Poly> {
        self.terms.get(w)
    }

    pub fn add_term(&mut self, w: Word, c: &Poly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(old) => {
                let s = &*old + c;
                if s.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &WordElement, c: &Poly) {
        if c.is_zero() {
            return;
        }
        for (w, a) in other.terms() {
            self.add_term(w.clone(), &(a * c));
        }
    }

    pub fn add(&self, other: &WordElement) -> WordElement {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &WordElement) -> WordElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> WordElement {
        WordElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, a: &Poly) -> WordElement {
        let mut out = WordElement::zero();
        out.add_scaled(self, a);
        out
    }

    pub fn scale_int(&self, s: i8) -> WordElement {
        if s >= 0 {
            self.clone()
        } else {
            self.neg()
        }
    }

    pub fn max_weight(&self, leaf_weight: &[usize]) -> usize {
        self.terms.keys().map(|w| word_weight(w, leaf_weight)).max().unwrap_or(0)
    }

    /// `a * [w1, ..., wk]` terms joined by signs.
    pub fn display(&self, basis: &GradedBasis, vars: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (w, c)) in self.terms().enumerate() {
            let ws = w.display(basis);
            let (neg, mag) = if c.terms().len() == 1 && c.terms()[0].1 < num::zero() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            let coeff = if mag.is_one() {
                String::new()
            } else if mag.terms().len() == 1 {
                format!("{} * ", mag.display_with(vars))
            } else {
                format!("({}) * ", mag.display_with(vars))
            };
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let _ = write!(out, "{coeff}{ws}");
        }
        out
    }
}
