use std::cmp::Ordering;
use std::collections::BTreeSet;

use num::One;

use crate::error::{Error, Result};
use crate::ring::{Monomial, Poly, PolyVector, Rational};

/// The fixed monomial order on free modules: position over term, lower
/// component index first, degrevlex inside a component.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct MonomialOrder;

impl MonomialOrder {
    /// Compares module monomials `m1 * e_c1` and `m2 * e_c2`.
    pub fn compare(&self, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
        match a.0.cmp(&b.0) {
            Ordering::Equal => a.1.cmp(b.1),
            ord => ord.reverse(),
        }
    }
}

/// Leading module term of `v`: component, monomial and coefficient.
pub fn leading_term(v: &PolyVector) -> Option<(usize, &Monomial, &Rational)> {
    v.entries()
        .iter()
        .enumerate()
        .find_map(|(c, p)| p.leading_term().map(|(m, a)| (c, m, a)))
}

fn make_monic(v: &PolyVector) -> PolyVector {
    match leading_term(v) {
        Some((_, _, c)) if !c.is_one() => {
            let inv = Rational::one() / c;
            PolyVector::from_entries(
                v.nvars(),
                v.entries().iter().map(|p| p.scale(&inv)).collect(),
            )
        }
        _ => v.clone(),
    }
}

/// `v + c * m * g`, componentwise from `from` on (earlier components of `g` are zero).
fn add_multiple(v: &mut PolyVector, c: &Rational, m: &Monomial, g: &PolyVector, from: usize) {
    for k in from..v.len() {
        if !g[k].is_zero() {
            v[k] = v[k].add_scaled_term(c, m, &g[k]);
        }
    }
}

/// Reduced Gröbner basis of a submodule of `A^rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    nvars: usize,
    rank: usize,
    order: MonomialOrder,
    elements: Vec<PolyVector>,
    leads: Vec<(usize, Monomial)>,
}

impl GroebnerBasis {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn elements(&self) -> &[PolyVector] {
        &self.elements
    }

    pub fn leading_monomials(&self) -> &[(usize, Monomial)] {
        &self.leads
    }

    pub fn is_zero_module(&self) -> bool {
        self.elements.is_empty()
    }

    fn divisor_of(&self, c: usize, m: &Monomial) -> Option<usize> {
        self.leads
            .iter()
            .position(|(lc, lm)| *lc == c && lm.divides(m))
    }

    /// Full normal form of `v` with respect to the basis.
    pub fn reduce(&self, v: &PolyVector) -> PolyVector {
        reduce_with(v, &self.elements, &self.leads, None)
    }

    pub fn contains(&self, v: &PolyVector) -> bool {
        self.reduce(v).is_zero()
    }
}

/// Reduces `v` by monic `basis` with leading monomials `leads`, skipping index `skip`.
fn reduce_with(
    v: &PolyVector,
    basis: &[PolyVector],
    leads: &[(usize, Monomial)],
    skip: Option<usize>,
) -> PolyVector {
    let nvars = v.nvars();
    let mut work = v.clone();
    let mut rem = PolyVector::zero(nvars, v.len());
    for c in 0..v.len() {
        loop {
            let Some((m, a)) = work[c].leading_term().cloned() else {
                break;
            };
            let div = leads
                .iter()
                .enumerate()
                .find(|(i, (lc, lm))| Some(*i) != skip && *lc == c && lm.divides(&m));
            match div {
                Some((i, (_, lm))) => {
                    let q = lm.quotient_of(&m).expect("divides");
                    add_multiple(&mut work, &(-a), &q, &basis[i], c);
                }
                None => {
                    rem[c].push_trailing(m, a);
                    work[c] = work[c].without_leading();
                }
            }
        }
    }
    rem
}

fn check_shapes(generators: &[PolyVector], rank: usize, nvars: usize) -> Result<()> {
    for g in generators {
        if g.len() != rank || g.nvars() != nvars {
            return Err(Error::shape(format!(
                "generator of length {} over {} variables in A^{} over {} variables",
                g.len(),
                g.nvars(),
                rank,
                nvars
            )));
        }
    }
    Ok(())
}

/// Buchberger's algorithm with a pair queue ordered by the lcm of leading terms.
///
/// The result is the unique reduced basis, sorted by decreasing leading term.
pub fn buchberger_basis(
    generators: &[PolyVector],
    rank: usize,
    nvars: usize,
    order: MonomialOrder,
) -> Result<GroebnerBasis> {
    check_shapes(generators, rank, nvars)?;
    let mut basis: Vec<PolyVector> = Vec::new();
    let mut leads: Vec<(usize, Monomial)> = Vec::new();
    // (lcm component, lcm monomial, i, j); BTreeSet gives a deterministic queue.
    let mut pairs: BTreeSet<PairKey> = BTreeSet::new();

    let insert = |v: PolyVector,
                      basis: &mut Vec<PolyVector>,
                      leads: &mut Vec<(usize, Monomial)>,
                      pairs: &mut BTreeSet<PairKey>| {
        let v = make_monic(&v);
        let (c, m, _) = leading_term(&v).expect("nonzero");
        let m = m.clone();
        let j = basis.len();
        for (i, (lc, lm)) in leads.iter().enumerate() {
            if *lc == c {
                pairs.insert(PairKey {
                    comp: c,
                    lcm: lm.lcm(&m),
                    i,
                    j,
                });
            }
        }
        basis.push(v);
        leads.push((c, m));
    };

    for g in generators {
        let r = reduce_with(g, &basis, &leads, None);
        if !r.is_zero() {
            insert(r, &mut basis, &mut leads, &mut pairs);
        }
    }

    while let Some(key) = pairs.pop_first() {
        let (i, j) = (key.i, key.j);
        if chain_criterion(&key, &leads, &pairs) {
            continue;
        }
        let qi = leads[i].1.quotient_of(&key.lcm).expect("lcm");
        let qj = leads[j].1.quotient_of(&key.lcm).expect("lcm");
        let mut s = PolyVector::zero(nvars, rank);
        add_multiple(&mut s, &Rational::one(), &qi, &basis[i], 0);
        add_multiple(&mut s, &(-Rational::one()), &qj, &basis[j], 0);
        let r = reduce_with(&s, &basis, &leads, None);
        if !r.is_zero() {
            insert(r, &mut basis, &mut leads, &mut pairs);
        }
    }

    Ok(interreduce(basis, leads, rank, nvars, order))
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct PairKey {
    comp: usize,
    lcm: Monomial,
    i: usize,
    j: usize,
}

impl Ord for PairKey {
    fn cmp(&self, other: &Self) -> Ordering {
        // smallest module lcm first
        MonomialOrder
            .compare((self.comp, &self.lcm), (other.comp, &other.lcm))
            .then(self.i.cmp(&other.i))
            .then(self.j.cmp(&other.j))
    }
}

impl PartialOrd for PairKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Buchberger's chain criterion: the pair `(i, j)` can be skipped if some
/// `k` has a leading monomial dividing `lcm(i, j)` in the same component and
/// neither `(i, k)` nor `(j, k)` is still waiting in the queue.
fn chain_criterion(key: &PairKey, leads: &[(usize, Monomial)], pending: &BTreeSet<PairKey>) -> bool {
    let waiting = |a: usize, b: usize| {
        let (a, b) = (a.min(b), a.max(b));
        let lcm = leads[a].1.lcm(&leads[b].1);
        pending.contains(&PairKey {
            comp: key.comp,
            lcm,
            i: a,
            j: b,
        })
    };
    leads.iter().enumerate().any(|(k, (lc, lm))| {
        k != key.i
            && k != key.j
            && *lc == key.comp
            && lm.divides(&key.lcm)
            && leads[key.i].1.lcm(lm) != key.lcm
            && leads[key.j].1.lcm(lm) != key.lcm
            && !waiting(key.i, k)
            && !waiting(key.j, k)
    })
}

fn interreduce(
    basis: Vec<PolyVector>,
    leads: Vec<(usize, Monomial)>,
    rank: usize,
    nvars: usize,
    order: MonomialOrder,
) -> GroebnerBasis {
    // drop elements whose leading term is divisible by another's
    let mut keep: Vec<usize> = Vec::new();
    for i in 0..basis.len() {
        let redundant = (0..basis.len()).any(|j| {
            j != i
                && leads[j].0 == leads[i].0
                && leads[j].1.divides(&leads[i].1)
                && (leads[j].1 != leads[i].1 || j < i)
        });
        if !redundant {
            keep.push(i);
        }
    }
    let mut elems: Vec<PolyVector> = keep.iter().map(|&i| basis[i].clone()).collect();
    let lds: Vec<(usize, Monomial)> = keep.iter().map(|&i| leads[i].clone()).collect();
    for i in 0..elems.len() {
        let (c, m) = &lds[i];
        // reduce everything below the leading term
        let mut tail = elems[i].clone();
        tail[*c] = tail[*c].without_leading();
        let r = reduce_with(&tail, &elems, &lds, Some(i));
        let mut v = r;
        v[*c] = &v[*c] + &Poly::term(m.clone(), Rational::one());
        elems[i] = v;
    }
    let mut pairs: Vec<(PolyVector, (usize, Monomial))> = elems.into_iter().zip(lds).collect();
    pairs.sort_by(|a, b| order.compare((b.1 .0, &b.1 .1), (a.1 .0, &a.1 .1)));
    let (elements, leads) = pairs.into_iter().unzip();
    GroebnerBasis {
        nvars,
        rank,
        order,
        elements,
        leads,
    }
}

/// Normal form of `e` with respect to `gb`.
pub fn normal_form(e: &PolyVector, gb: &GroebnerBasis) -> Result<PolyVector> {
    if e.len() != gb.rank || e.nvars() != gb.nvars {
        return Err(Error::shape("vector does not live in the basis' ambient module"));
    }
    Ok(gb.reduce(e))
}

impl GroebnerBasis {
    /// Index of a basis element whose leading term divides `m * e_c`.
    pub fn find_divisor(&self, c: usize, m: &Monomial) -> Option<usize> {
        self.divisor_of(c, m)
    }
}
