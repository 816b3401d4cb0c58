use std::cell::RefCell;
use std::collections::HashMap;

use crate::dgmod::{validate_complex, AnchoredComplex, GradedComplex};
use crate::error::{Error, Result};
use crate::linfty::{koszul_sign, unshuffles, GradedBasis};
use crate::ring::{apply_derivation, lie_bracket, Poly, PolyMatrix, PolyVector, VectorField};

use super::span::{enumerate_span, SpanShape, WordSpan};
use super::word::{canonical_node, word_degree, word_weight, LWord, Word, WordElement};

/// How unary brackets of composite words are treated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnaryMode {
    /// `[w]_1` stays a word; only `[v]_1 = d v` is rewritten.
    Raw,
    /// `[w]_1` is solved from the arity-`k` Jacobi identity, so words never
    /// contain unary nodes.
    Oriented,
}

/// The free `L∞`-algebroid on an anchored module `M` with generators
/// `basis`, differential `diff` and anchor `anchor`.
///
/// Elements are `A`-combinations of canonical words with all coefficients
/// moved to the root: brackets of arity `!= 2` are `A`-linear, the binary
/// one obeys Leibniz with the induced anchor on words.
#[derive(Debug)]
pub struct FreeLR {
    nvars: usize,
    basis: GradedBasis,
    leaf_weight: Vec<usize>,
    diff: Vec<WordElement>,
    anchor: Vec<VectorField>,
    l1_cache: RefCell<HashMap<Word, WordElement>>,
    anchor_cache: RefCell<HashMap<Word, VectorField>>,
}

impl Clone for FreeLR {
    fn clone(&self) -> Self {
        FreeLR {
            nvars: self.nvars,
            basis: self.basis.clone(),
            leaf_weight: self.leaf_weight.clone(),
            diff: self.diff.clone(),
            anchor: self.anchor.clone(),
            l1_cache: RefCell::new(self.l1_cache.borrow().clone()),
            anchor_cache: RefCell::new(self.anchor_cache.borrow().clone()),
        }
    }
}

fn parity(d: isize) -> usize {
    d.rem_euclid(2) as usize
}

impl FreeLR {
    /// `diff[v]` may be any combination of words without unary nodes (cells
    /// attached to a free algebroid); for a plain module it is a combination
    /// of generators. Weights of generators are read off their boundaries.
    pub fn new(nvars: usize, basis: GradedBasis, diff: Vec<WordElement>, anchor: Vec<VectorField>) -> Result<Self> {
        let g = basis.len();
        if diff.len() != g || anchor.len() != g {
            return Err(Error::shape("one boundary and one anchor per generator"));
        }
        let mut order: Vec<usize> = (0..g).collect();
        order.sort_by_key(|&i| basis.degree(i));
        let mut leaf_weight = vec![0usize; g];
        for &v in &order {
            let dv = basis.degree(v) as isize;
            if dv > 0 && !anchor[v].is_zero() {
                return Err(Error::invalid(format!("generator {} of positive degree has an anchor", basis.name(v))));
            }
            for (w, _) in diff[v].terms() {
                if w.has_unary() {
                    return Err(Error::invalid("boundaries must not contain unary brackets"));
                }
                if word_degree(w, &basis) != dv - 1 {
                    return Err(Error::invalid(format!("d({}) is not homogeneous of degree {}", basis.name(v), dv - 1)));
                }
            }
            leaf_weight[v] = diff[v].max_weight(&leaf_weight);
        }
        let ctx = FreeLR {
            nvars,
            basis,
            leaf_weight,
            diff,
            anchor,
            l1_cache: RefCell::new(HashMap::new()),
            anchor_cache: RefCell::new(HashMap::new()),
        };
        for v in 0..g {
            match ctx.basis.degree(v) {
                0 => {}
                1 => {
                    let r = ctx.element_anchor(&ctx.diff[v])?;
                    if !r.is_zero() {
                        return Err(Error::invalid(format!("anchor of d({}) is not zero", ctx.basis.name(v))));
                    }
                }
                _ => {
                    if !ctx.l1_element(&ctx.diff[v])?.is_zero() {
                        return Err(Error::invalid(format!("d(d({})) is not zero", ctx.basis.name(v))));
                    }
                }
            }
        }
        Ok(ctx)
    }

    /// Generators named `prefix{degree}_{k}` from an anchored complex.
    pub fn from_complex(m: &AnchoredComplex, prefix: &str) -> Result<Self> {
        let c = m.complex();
        let n = m.nvars();
        let basis = GradedBasis::from_ranks(prefix, c.ranks());
        let mut offset = vec![0usize];
        for i in 0..c.ranks().len() {
            offset.push(offset[i] + c.rank(i));
        }
        let mut diff = Vec::new();
        let mut anchor = Vec::new();
        for d in 0..c.ranks().len() {
            for k in 0..c.rank(d) {
                let mut e = WordElement::zero();
                if d > 0 {
                    let col = c.differential(d).column(k);
                    for (r, p) in col.entries().iter().enumerate() {
                        e.add_term(Word::Leaf(offset[d - 1] + r), p);
                    }
                    anchor.push(VectorField::zero(n));
                } else {
                    anchor.push(VectorField::new(m.anchor().column(k))?);
                }
                diff.push(e);
            }
        }
        FreeLR::new(n, basis, diff, anchor)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn leaf_weights(&self) -> &[usize] {
        &self.leaf_weight
    }

    pub fn differential(&self, v: usize) -> &WordElement {
        &self.diff[v]
    }

    pub fn generator_anchor(&self, v: usize) -> &VectorField {
        &self.anchor[v]
    }

    pub fn degree(&self, w: &Word) -> isize {
        word_degree(w, &self.basis)
    }

    pub fn weight(&self, w: &Word) -> usize {
        word_weight(w, &self.leaf_weight)
    }

    pub fn leaf(&self, v: usize) -> WordElement {
        WordElement::word(Word::Leaf(v), self.nvars)
    }

    /// Words with unary brackets allowed except on generators: the normal
    /// forms of the raw free algebroid.
    pub fn span(&self, w: usize, d: usize) -> WordSpan {
        enumerate_span(
            &self.basis,
            &self.leaf_weight,
            w,
            d,
            SpanShape {
                unary: true,
                skip_unary_leaves: true,
            },
        )
    }

    /// Words without unary nodes: a basis of the free algebroid as an `A`-module.
    pub fn oriented_span(&self, w: usize, d: usize) -> WordSpan {
        enumerate_span(
            &self.basis,
            &self.leaf_weight,
            w,
            d,
            SpanShape {
                unary: false,
                skip_unary_leaves: true,
            },
        )
    }

    /// The anchor of a word: the generator's anchor on leaves, the Lie bracket
    /// of the children's anchors on binary words of degree 0, zero otherwise.
    pub fn word_anchor(&self, w: &Word) -> Result<VectorField> {
        if self.degree(w) != 0 {
            return Ok(VectorField::zero(self.nvars));
        }
        if let Some(v) = self.anchor_cache.borrow().get(w) {
            return Ok(v.clone());
        }
        let v = match w {
            Word::Leaf(i) => self.anchor[*i].clone(),
            Word::Node(c) if c.len() == 2 => lie_bracket(&self.word_anchor(&c[0])?, &self.word_anchor(&c[1])?)?,
            Word::Node(_) => VectorField::zero(self.nvars),
        };
        self.anchor_cache.borrow_mut().insert(w.clone(), v.clone());
        Ok(v)
    }

    pub fn element_anchor(&self, e: &WordElement) -> Result<VectorField> {
        let mut out = VectorField::zero(self.nvars);
        for (w, a) in e.terms() {
            let r = self.word_anchor(w)?;
            if !r.is_zero() {
                out = out.add(&r.scale(a));
            }
        }
        Ok(out)
    }

    fn derive_coefficients(&self, rho: &VectorField, e: &WordElement) -> Result<WordElement> {
        let mut out = WordElement::zero();
        if rho.is_zero() {
            return Ok(out);
        }
        for (w, b) in e.terms() {
            out.add_term(w.clone(), &apply_derivation(rho, b)?);
        }
        Ok(out)
    }

    /// Bracket of words, before coefficients.
    fn pure_bracket(&self, words: &[&Word], mode: UnaryMode) -> Result<WordElement> {
        if words.len() == 1 {
            let w = words[0];
            return match (w, mode) {
                (Word::Leaf(v), _) => Ok(self.diff[*v].clone()),
                (_, UnaryMode::Oriented) => self.l1_word(w),
                (_, UnaryMode::Raw) => {
                    if self.degree(w) < 1 {
                        Ok(WordElement::zero())
                    } else {
                        Ok(WordElement::word(Word::Node(vec![w.clone()]), self.nvars))
                    }
                }
            };
        }
        match canonical_node(words.iter().map(|w| (*w).clone()).collect(), &self.basis) {
            Some((node, s)) => Ok(WordElement::word(node, self.nvars).scale_int(s)),
            None => Ok(WordElement::zero()),
        }
    }

    /// `[e_1, ..., e_k]_k` on elements.
    pub fn bracket(&self, inputs: &[WordElement], mode: UnaryMode) -> Result<WordElement> {
        let k = inputs.len();
        if k == 0 {
            return Err(Error::shape("bracket of arity 0"));
        }
        if inputs.iter().any(WordElement::is_zero) {
            return Ok(WordElement::zero());
        }
        let supports: Vec<Vec<(&Word, &Poly)>> = inputs.iter().map(|e| e.terms().collect()).collect();
        let mut out = WordElement::zero();
        let mut idx = vec![0usize; k];
        'outer: loop {
            let words: Vec<&Word> = (0..k).map(|s| supports[s][idx[s]].0).collect();
            let val = self.pure_bracket(&words, mode)?;
            if !val.is_zero() {
                let mut c = supports[0][idx[0]].1.clone();
                for s in 1..k {
                    c = &c * supports[s][idx[s]].1;
                }
                out.add_scaled(&val, &c);
            }
            for s in (0..k).rev() {
                idx[s] += 1;
                if idx[s] < supports[s].len() {
                    continue 'outer;
                }
                idx[s] = 0;
            }
            break;
        }
        if k == 2 {
            let (u, w) = (&inputs[0], &inputs[1]);
            out = out.add(&self.derive_coefficients(&self.element_anchor(u)?, w)?);
            out = out.sub(&self.derive_coefficients(&self.element_anchor(w)?, u)?);
        }
        Ok(out)
    }

    /// `ℓ1` of a word without unary nodes, from
    /// `ℓ1 ℓ_k(w) = -Σ_{i=1}^{k-1} (-1)^{i(k-i)} Σ_σ χ [[w_σ(1..i)]_i, w_σ(i+1..k)]_{k-i+1}`.
    pub fn l1_word(&self, w: &Word) -> Result<WordElement> {
        let c = match w {
            Word::Leaf(v) => return Ok(self.diff[*v].clone()),
            Word::Node(c) => c,
        };
        if let Some(e) = self.l1_cache.borrow().get(w) {
            return Ok(e.clone());
        }
        let k = c.len();
        if k == 1 {
            return Err(Error::invalid("unary node in an oriented word"));
        }
        let parities: Vec<usize> = c.iter().map(|x| parity(self.degree(x))).collect();
        let mut total = WordElement::zero();
        for i in 1..k {
            let j = k - i;
            let outer: i8 = if (i * j) % 2 == 1 { -1 } else { 1 };
            for sigma in unshuffles(i, j) {
                let chi = koszul_sign(&sigma, &parities);
                let inner = if i == 1 {
                    self.l1_word(&c[sigma[0]])?
                } else {
                    let ws: Vec<&Word> = sigma[..i].iter().map(|&s| &c[s]).collect();
                    self.pure_bracket(&ws, UnaryMode::Oriented)?
                };
                if inner.is_zero() {
                    continue;
                }
                let mut args = vec![inner];
                args.extend(sigma[i..].iter().map(|&s| WordElement::word(c[s].clone(), self.nvars)));
                let term = self.bracket(&args, UnaryMode::Oriented)?;
                total = total.add(&term.scale_int(outer * chi));
            }
        }
        let out = total.neg();
        self.l1_cache.borrow_mut().insert(w.clone(), out.clone());
        Ok(out)
    }

    pub fn l1_element(&self, e: &WordElement) -> Result<WordElement> {
        let mut out = WordElement::zero();
        for (w, a) in e.terms() {
            out.add_scaled(&self.l1_word(w)?, a);
        }
        Ok(out)
    }

    /// Normal form of a hand-written word: coefficients migrate to the root,
    /// `[v]_1` becomes `d v`, the binary bracket picks up anchor terms.
    pub fn normalize(&self, w: &LWord) -> Result<WordElement> {
        match w {
            LWord::Leaf(v) => {
                if *v >= self.basis.len() {
                    return Err(Error::shape(format!("no generator {v}")));
                }
                Ok(self.leaf(*v))
            }
            LWord::ScaledLeaf(a, v) => Ok(self.normalize(&LWord::Leaf(*v))?.scale(a)),
            LWord::Node { coeff, children } => {
                if children.is_empty() {
                    return Err(Error::shape("bracket of arity 0"));
                }
                let args = children.iter().map(|c| self.normalize(c)).collect::<Result<Vec<_>>>()?;
                Ok(self.bracket(&args, UnaryMode::Raw)?.scale(coeff))
            }
        }
    }

    /// The raw normal form rewritten without unary nodes. Relations of the
    /// free algebroid are exactly the kernel of this map.
    pub fn orient(&self, e: &WordElement) -> Result<WordElement> {
        let mut out = WordElement::zero();
        for (w, a) in e.terms() {
            out.add_scaled(&self.orient_word(w)?, a);
        }
        Ok(out)
    }

    fn orient_word(&self, w: &Word) -> Result<WordElement> {
        match w {
            Word::Leaf(_) => Ok(WordElement::word(w.clone(), self.nvars)),
            Word::Node(c) if c.len() == 1 => self.l1_element(&self.orient_word(&c[0])?),
            Word::Node(c) => {
                let args = c.iter().map(|x| self.orient_word(x)).collect::<Result<Vec<_>>>()?;
                self.bracket(&args, UnaryMode::Oriented)
            }
        }
    }

    /// The arity-`k` Jacobiator of words, in raw normal form.
    pub fn jacobiator(&self, inputs: &[Word]) -> Result<WordElement> {
        let k = inputs.len();
        let parities: Vec<usize> = inputs.iter().map(|x| parity(self.degree(x))).collect();
        let mut out = WordElement::zero();
        for i in 1..=k {
            let j = k - i;
            let outer: i8 = if (i * j) % 2 == 1 { -1 } else { 1 };
            for sigma in unshuffles(i, j) {
                let chi = koszul_sign(&sigma, &parities);
                let ws: Vec<&Word> = sigma[..i].iter().map(|&s| &inputs[s]).collect();
                let inner = self.pure_bracket(&ws, UnaryMode::Raw)?;
                if inner.is_zero() {
                    continue;
                }
                let mut args = vec![inner];
                args.extend(sigma[i..].iter().map(|&s| WordElement::word(inputs[s].clone(), self.nvars)));
                out = out.add(&self.bracket(&args, UnaryMode::Raw)?.scale_int(outer * chi));
            }
        }
        Ok(out)
    }

    /// Coordinates of `e` in `span`, or `None` if a word falls outside.
    pub fn coordinates(&self, span: &WordSpan, e: &WordElement) -> Option<PolyVector> {
        let mut v = PolyVector::zero(self.nvars, span.len());
        for (w, a) in e.terms() {
            v[span.index_of(w)?] = a.clone();
        }
        Some(v)
    }

    pub fn from_coordinates(&self, span: &WordSpan, v: &PolyVector) -> WordElement {
        let mut e = WordElement::zero();
        for (i, a) in v.entries().iter().enumerate() {
            e.add_term(span.word(i).clone(), a);
        }
        e
    }
}

/// The induced anchor on every word of `span`.
pub fn free_algebroid_anchor(ctx: &FreeLR, span: &WordSpan) -> Result<Vec<VectorField>> {
    span.words().iter().map(|w| ctx.word_anchor(w)).collect()
}

/// Raw normal form of a hand-written word.
pub fn normalize_word(ctx: &FreeLR, w: &LWord) -> Result<WordElement> {
    ctx.normalize(w)
}

/// The free algebroid truncated to weight `<= w` and degree `<= top`, as an
/// anchored complex on the oriented words.
#[derive(Clone, Debug)]
pub struct OrientedTruncation {
    pub span: WordSpan,
    /// `by_degree[d][k]` is the span index of generator `k` of the complex in degree `d`.
    pub by_degree: Vec<Vec<usize>>,
    pub complex: AnchoredComplex,
}

impl OrientedTruncation {
    pub fn word(&self, degree: usize, k: usize) -> &Word {
        self.span.word(self.by_degree[degree][k])
    }

    /// Element of the free algebroid from a column vector in degree `d`.
    pub fn element(&self, degree: usize, v: &PolyVector) -> WordElement {
        let mut e = WordElement::zero();
        for (k, a) in v.entries().iter().enumerate() {
            e.add_term(self.word(degree, k).clone(), a);
        }
        e
    }
}

pub fn oriented_truncation(ctx: &FreeLR, w: usize, top: usize) -> Result<OrientedTruncation> {
    let n = ctx.nvars();
    let span = ctx.oriented_span(w, top);
    let by_degree: Vec<Vec<usize>> = (0..=top).map(|d| span.in_degree(d)).collect();
    let mut pos: HashMap<&Word, usize> = HashMap::new();
    for idx in &by_degree {
        for (k, &i) in idx.iter().enumerate() {
            pos.insert(span.word(i), k);
        }
    }
    let ranks: Vec<usize> = by_degree.iter().map(Vec::len).collect();
    let mut diffs = Vec::new();
    for d in 1..=top {
        let mut m = PolyMatrix::zero(n, ranks[d - 1], ranks[d]);
        for (k, &i) in by_degree[d].iter().enumerate() {
            let b = ctx.l1_word(span.word(i))?;
            for (x, a) in b.terms() {
                let r = *pos.get(x).ok_or_else(|| {
                    Error::engine(format!("boundary of {} leaves the truncation", span.word(i).display(ctx.basis())))
                })?;
                m[(r, k)] = a.clone();
            }
        }
        diffs.push(m);
    }
    let complex = GradedComplex::new(n, ranks.clone(), diffs)?;
    if !validate_complex(&complex).is_valid() {
        return Err(Error::engine("oriented differential does not square to zero"));
    }
    let mut anchor = PolyMatrix::zero(n, n, ranks[0]);
    for (k, &i) in by_degree[0].iter().enumerate() {
        let v = ctx.word_anchor(span.word(i))?;
        for r in 0..n {
            anchor[(r, k)] = v.components()[r].clone();
        }
    }
    let complex = AnchoredComplex::new(complex, anchor)?;
    Ok(OrientedTruncation {
        span,
        by_degree,
        complex,
    })
}
