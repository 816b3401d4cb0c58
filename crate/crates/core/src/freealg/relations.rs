use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::groebner::ColumnSolver;
use crate::linfty::{evaluate_bracket, koszul_sign, GradedElement, LInftyAlgebroid};
use crate::ring::{Poly, PolyVector, VectorField};

use super::lr::{FreeLR, UnaryMode};
use super::span::WordSpan;
use super::word::{Word, WordElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelationOrigin {
    /// The Jacobiator of these words.
    Jacobi(Vec<Word>),
    /// `[r, u_2, ..., u_m]_m` for relation `r` and words `u`.
    Wrapped { inner: usize, with: Vec<Word> },
}

/// Generators of the relation span inside a word span.
///
/// Only Jacobi elements and their brackets with words are listed: the
/// unary-equals-differential and Leibniz relations are already applied by
/// the normal form, so they are zero here.
#[derive(Clone, Debug)]
pub struct RelationBasis {
    pub relations: Vec<(RelationOrigin, WordElement)>,
    /// Relations dropped because some term left the span.
    pub escaped: usize,
}

impl RelationBasis {
    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }
}

fn multisets(ctx: &FreeLR, span: &WordSpan, k: usize, max_weight: usize, out: &mut Vec<Vec<usize>>) {
    fn rec(ctx: &FreeLR, span: &WordSpan, start: usize, k: usize, room: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..span.len() {
            if span.weight(i) > room {
                continue;
            }
            if cur.last() == Some(&i) && span.degree(i) % 2 == 0 {
                continue;
            }
            cur.push(i);
            rec(ctx, span, i, k, room - span.weight(i), cur, out);
            cur.pop();
        }
    }
    rec(ctx, span, 0, k, max_weight, &mut Vec::new(), out);
}

fn inside(span: &WordSpan, e: &WordElement) -> bool {
    e.terms().all(|(w, _)| span.contains(w))
}

/// Jacobi elements on tuples of span words, closed under bracketing with
/// span words, as far as the span's bounds allow.
pub fn relation_basis(ctx: &FreeLR, span: &WordSpan) -> Result<RelationBasis> {
    let wmax = span.max_weight;
    let dmax = span.max_degree as isize;
    let mut relations: Vec<(RelationOrigin, WordElement)> = Vec::new();
    let mut seen: HashSet<WordElement> = HashSet::new();
    let mut escaped = 0;
    for k in 1..=wmax + 1 {
        let mut tuples = Vec::new();
        multisets(ctx, span, k, wmax + 1 - k, &mut tuples);
        for t in tuples {
            let deg: isize = t.iter().map(|&i| span.degree(i) as isize).sum::<isize>() + k as isize - 3;
            if deg < 0 || deg > dmax {
                continue;
            }
            let words: Vec<Word> = t.iter().map(|&i| span.word(i).clone()).collect();
            let j = ctx.jacobiator(&words)?;
            if j.is_zero() {
                continue;
            }
            if !inside(span, &j) {
                escaped += 1;
                continue;
            }
            if seen.insert(j.clone()) {
                relations.push((RelationOrigin::Jacobi(words), j));
            }
        }
    }
    let mut q = 0;
    while q < relations.len() {
        let r = relations[q].1.clone();
        let rw = r.max_weight(ctx.leaf_weights());
        let rdeg = r.terms().next().map(|(w, _)| ctx.degree(w)).unwrap_or(0);
        for m in 1..=wmax + 1 {
            if rw + (m - 1) > wmax {
                break;
            }
            let mut tuples = Vec::new();
            multisets(ctx, span, m - 1, wmax - rw - (m - 1), &mut tuples);
            for t in tuples {
                let deg = rdeg + t.iter().map(|&i| span.degree(i) as isize).sum::<isize>() + m as isize - 2;
                if deg < 0 || deg > dmax {
                    continue;
                }
                let with: Vec<Word> = t.iter().map(|&i| span.word(i).clone()).collect();
                let mut args = vec![r.clone()];
                args.extend(with.iter().map(|w| WordElement::word(w.clone(), ctx.nvars())));
                let e = ctx.bracket(&args, UnaryMode::Raw)?;
                if e.is_zero() {
                    continue;
                }
                if !inside(span, &e) {
                    escaped += 1;
                    continue;
                }
                if seen.insert(e.clone()) {
                    relations.push((RelationOrigin::Wrapped { inner: q, with }, e));
                }
            }
        }
        q += 1;
    }
    Ok(RelationBasis { relations, escaped })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// `e = Σ c_i r_i` with these coefficients on the relation basis.
    Member { coefficients: Vec<Poly> },
    /// Not a relation at any bound: `e` survives in the oriented normal form.
    NonMember { image: WordElement },
    /// No combination inside the bounds, yet `e` dies in the oriented
    /// normal form; a larger span would be needed.
    Inconclusive,
}

/// Decides whether `e` lies in the relation span.
pub fn relation_span_membership(ctx: &FreeLR, span: &WordSpan, rels: &RelationBasis, e: &WordElement) -> Result<Membership> {
    let image = ctx.orient(e)?;
    let Some(target) = ctx.coordinates(span, e) else {
        return Ok(if image.is_zero() {
            Membership::Inconclusive
        } else {
            Membership::NonMember { image }
        });
    };
    if e.is_zero() {
        return Ok(Membership::Member {
            coefficients: vec![Poly::zero(ctx.nvars()); rels.len()],
        });
    }
    let cols: Vec<PolyVector> = rels
        .relations
        .iter()
        .map(|(_, r)| ctx.coordinates(span, r).expect("relations lie in the span"))
        .collect();
    if !cols.is_empty() {
        let solver = ColumnSolver::from_columns(ctx.nvars(), span.len(), &cols)?;
        if let Some(u) = solver.solve(&target)? {
            return Ok(Membership::Member {
                coefficients: u.into_entries(),
            });
        }
    }
    Ok(if image.is_zero() {
        Membership::Inconclusive
    } else {
        Membership::NonMember { image }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtensionFailure {
    /// `ℓ1(f v) != f(d v)`.
    NotChainMap { generator: usize, residual: GradedElement },
    /// `ρ(f v) != α(v)`.
    Anchor { generator: usize, residual: VectorField },
    /// A relation basis element with nonzero image.
    Relation { index: usize, image: GradedElement },
}

/// The strict morphism `LR(M) -> L` extending `f : M -> L`, on a word span.
#[derive(Clone, Debug)]
pub struct Extension {
    /// Image of each span word.
    pub images: Vec<GradedElement>,
    pub failures: Vec<ExtensionFailure>,
}

impl Extension {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Extender<'a> {
    f: &'a [GradedElement],
    l: &'a LInftyAlgebroid,
    memo: HashMap<Word, GradedElement>,
}

impl Extender<'_> {
    fn bracket(&self, args: &[GradedElement]) -> Result<GradedElement> {
        if args.len() > self.l.max_arity() {
            return Ok(GradedElement::zero());
        }
        evaluate_bracket(self.l, args.len(), args)
    }

    fn word(&mut self, w: &Word) -> Result<GradedElement> {
        if let Some(e) = self.memo.get(w) {
            return Ok(e.clone());
        }
        let e = match w {
            Word::Leaf(v) => self.f[*v].clone(),
            Word::Node(c) => {
                let args = c.iter().map(|x| self.word(x)).collect::<Result<Vec<_>>>()?;
                self.bracket(&args)?
            }
        };
        self.memo.insert(w.clone(), e.clone());
        Ok(e)
    }

    fn element(&mut self, e: &WordElement) -> Result<GradedElement> {
        let mut out = GradedElement::zero();
        for (w, a) in e.terms() {
            out = out.add(&self.word(w)?.scale(a));
        }
        Ok(out)
    }
}

/// Extends `f` (one image per generator of `M`) to every word of `span` by
/// `φ[w1, ..., wk] = [φ w1, ..., φ wk]`, then checks that `f` is a chain map
/// compatible with anchors and that every relation goes to zero.
pub fn extend_strict_morphism(
    ctx: &FreeLR,
    span: &WordSpan,
    rels: &RelationBasis,
    f: &[GradedElement],
    l: &LInftyAlgebroid,
) -> Result<Extension> {
    if f.len() != ctx.basis().len() {
        return Err(Error::shape("one image per generator"));
    }
    if l.nvars() != ctx.nvars() {
        return Err(Error::shape("algebroids over different rings"));
    }
    for (v, img) in f.iter().enumerate() {
        if !img.is_zero() && img.degree(l.basis()) != Some(ctx.basis().degree(v)) {
            return Err(Error::invalid(format!("image of {} has the wrong degree", ctx.basis().name(v))));
        }
    }
    let mut ext = Extender {
        f,
        l,
        memo: HashMap::new(),
    };
    let mut failures = Vec::new();
    for v in 0..f.len() {
        if ctx.basis().degree(v) == 0 {
            let r = l.anchor_of(&f[v]).sub(ctx.generator_anchor(v));
            if !r.is_zero() {
                failures.push(ExtensionFailure::Anchor { generator: v, residual: r });
            }
        } else {
            let lhs = if l.max_arity() >= 1 {
                evaluate_bracket(l, 1, &[f[v].clone()])?
            } else {
                GradedElement::zero()
            };
            let rhs = ext.element(ctx.differential(v))?;
            let r = lhs.sub(&rhs);
            if !r.is_zero() {
                failures.push(ExtensionFailure::NotChainMap { generator: v, residual: r });
            }
        }
    }
    let images = span.words().iter().map(|w| ext.word(w)).collect::<Result<Vec<_>>>()?;
    for (i, (_, r)) in rels.relations.iter().enumerate() {
        let img = ext.element(r)?;
        if !img.is_zero() {
            failures.push(ExtensionFailure::Relation { index: i, image: img });
        }
    }
    Ok(Extension { images, failures })
}

/// Re-evaluates every span word through every ordering of every node's
/// children (with the Koszul sign) and compares with `ext`; any strict
/// morphism agreeing with `f` on generators must agree with `ext`.
/// Returns the first word where some ordering disagrees.
pub fn extension_disagreement(
    ctx: &FreeLR,
    span: &WordSpan,
    f: &[GradedElement],
    l: &LInftyAlgebroid,
    ext: &Extension,
) -> Result<Option<Word>> {
    fn permutations(k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(k - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, k - 1);
                out.push(q);
            }
        }
        out
    }
    fn all_values(ctx: &FreeLR, f: &[GradedElement], l: &LInftyAlgebroid, w: &Word) -> Result<Vec<GradedElement>> {
        match w {
            Word::Leaf(v) => Ok(vec![f[*v].clone()]),
            Word::Node(c) => {
                let k = c.len();
                if k > l.max_arity() {
                    return Ok(vec![GradedElement::zero()]);
                }
                let child_vals: Vec<Vec<GradedElement>> =
                    c.iter().map(|x| all_values(ctx, f, l, x)).collect::<Result<_>>()?;
                let parities: Vec<usize> = c.iter().map(|x| ctx.degree(x).rem_euclid(2) as usize).collect();
                let mut out: Vec<GradedElement> = Vec::new();
                let mut pick = vec![0usize; k];
                'choices: loop {
                    for sigma in permutations(k) {
                        let chi = koszul_sign(&sigma, &parities);
                        let args: Vec<GradedElement> = sigma.iter().map(|&s| child_vals[s][pick[s]].clone()).collect();
                        let v = evaluate_bracket(l, k, &args)?.scale_int(chi);
                        if !out.contains(&v) {
                            out.push(v);
                        }
                    }
                    for s in (0..k).rev() {
                        pick[s] += 1;
                        if pick[s] < child_vals[s].len() {
                            continue 'choices;
                        }
                        pick[s] = 0;
                    }
                    break;
                }
                Ok(out)
            }
        }
    }
    for (i, w) in span.words().iter().enumerate() {
        for v in all_values(ctx, f, l, w)? {
            if v != ext.images[i] {
                return Ok(Some(w.clone()));
            }
        }
    }
    Ok(None)
}

/// Rebuilds each span word from generators with the free brackets; the
/// extension of `M -> LR(M)` is the identity exactly when this succeeds.
pub fn self_extension_is_identity(ctx: &FreeLR, span: &WordSpan) -> Result<bool> {
    fn rebuild(ctx: &FreeLR, w: &Word) -> Result<WordElement> {
        match w {
            Word::Leaf(v) => Ok(ctx.leaf(*v)),
            Word::Node(c) => {
                let args = c.iter().map(|x| rebuild(ctx, x)).collect::<Result<Vec<_>>>()?;
                ctx.bracket(&args, UnaryMode::Raw)
            }
        }
    }
    for w in span.words() {
        if rebuild(ctx, w)? != WordElement::word(w.clone(), ctx.nvars()) {
            return Ok(false);
        }
    }
    Ok(true)
}
