use crate::error::{Error, Result};
use crate::ring::{Poly, PolyMatrix};

/// Bounded complex `A^{r_D} -> ... -> A^{r_1} -> A^{r_0}` of free modules.
///
/// `diffs[i - 1]` is `d_i : A^{r_i} -> A^{r_{i-1}}`. Degrees above the top
/// are zero, and `d_0` is the zero map to the zero module.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedComplex {
    nvars: usize,
    ranks: Vec<usize>,
    diffs: Vec<PolyMatrix>,
}

impl GradedComplex {
    pub fn new(nvars: usize, ranks: Vec<usize>, diffs: Vec<PolyMatrix>) -> Result<Self> {
        let ranks = if ranks.is_empty() { vec![0] } else { ranks };
        if diffs.len() + 1 != ranks.len() {
            return Err(Error::shape(format!(
                "{} ranks need {} differentials, got {}",
                ranks.len(),
                ranks.len() - 1,
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            let i = k + 1;
            if d.rows() != ranks[i - 1] || d.cols() != ranks[i] || d.nvars() != nvars {
                return Err(Error::shape(format!(
                    "d{i} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    ranks[i - 1],
                    ranks[i]
                )));
            }
        }
        Ok(GradedComplex { nvars, ranks, diffs })
    }

    pub fn zero(nvars: usize) -> Self {
        GradedComplex {
            nvars,
            ranks: vec![0],
            diffs: Vec::new(),
        }
    }

    /// `S(n)`: a single copy of `A` in degree `n`.
    pub fn sphere(nvars: usize, n: usize) -> Self {
        let mut ranks = vec![0; n + 1];
        ranks[n] = 1;
        Self::with_zero_differentials(nvars, ranks)
    }

    /// `D(n)`: `A` in degrees `n` and `n - 1` joined by the identity, `n >= 1`.
    pub fn disc(nvars: usize, n: usize) -> Self {
        assert!(n >= 1, "discs start at D(1)");
        let mut c = Self::with_zero_differentials(nvars, {
            let mut r = vec![0; n + 1];
            r[n] = 1;
            r[n - 1] = 1;
            r
        });
        c.diffs[n - 1] = PolyMatrix::identity(nvars, 1);
        c
    }

    pub fn with_zero_differentials(nvars: usize, ranks: Vec<usize>) -> Self {
        let ranks = if ranks.is_empty() { vec![0] } else { ranks };
        let diffs = (1..ranks.len())
            .map(|i| PolyMatrix::zero(nvars, ranks[i - 1], ranks[i]))
            .collect();
        GradedComplex { nvars, ranks, diffs }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, i: usize) -> usize {
        self.ranks.get(i).copied().unwrap_or(0)
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }

    /// `d_i`, with the correct zero shape outside the stored range.
    pub fn differential(&self, i: usize) -> PolyMatrix {
        if i >= 1 && i <= self.diffs.len() {
            self.diffs[i - 1].clone()
        } else {
            let rows = if i == 0 { 0 } else { self.rank(i - 1) };
            PolyMatrix::zero(self.nvars, rows, self.rank(i))
        }
    }

    /// Borrowed `d_i` for `1 <= i <= top`.
    pub fn d(&self, i: usize) -> Option<&PolyMatrix> {
        if i >= 1 {
            self.diffs.get(i - 1)
        } else {
            None
        }
    }

    pub fn differentials(&self) -> &[PolyMatrix] {
        &self.diffs
    }

    /// Same complex with zero modules appended up to degree `top`.
    pub fn extended_to(&self, top: usize) -> GradedComplex {
        let mut c = self.clone();
        while c.top_degree() < top {
            let r = *c.ranks.last().unwrap();
            c.ranks.push(0);
            c.diffs.push(PolyMatrix::zero(self.nvars, r, 0));
        }
        c
    }

    /// Drops trailing zero modules (keeps degree 0).
    pub fn trimmed(&self) -> GradedComplex {
        let mut c = self.clone();
        while c.ranks.len() > 1 && *c.ranks.last().unwrap() == 0 {
            c.ranks.pop();
            c.diffs.pop();
        }
        c
    }

    /// Brutal truncation: keeps degrees `0..=top`.
    pub fn truncated(&self, top: usize) -> GradedComplex {
        let mut c = self.extended_to(top);
        c.ranks.truncate(top + 1);
        c.diffs.truncate(top);
        c
    }

    pub fn direct_sum(&self, other: &GradedComplex) -> GradedComplex {
        let top = self.top_degree().max(other.top_degree());
        let a = self.extended_to(top);
        let b = other.extended_to(top);
        let ranks = (0..=top).map(|i| a.rank(i) + b.rank(i)).collect();
        let diffs = (1..=top)
            .map(|i| a.diffs[i - 1].block_diagonal(&b.diffs[i - 1]))
            .collect();
        GradedComplex {
            nvars: self.nvars,
            ranks,
            diffs,
        }
    }

    pub(crate) fn set_differential(&mut self, i: usize, d: PolyMatrix) {
        debug_assert_eq!((d.rows(), d.cols()), (self.rank(i - 1), self.rank(i)));
        self.diffs[i - 1] = d;
    }
}

/// Outcome of checking `d_{i-1} d_i = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validity {
    Valid,
    /// `d_{degree - 1} * d_degree` has `value` at `(row, col)`.
    Invalid {
        degree: usize,
        row: usize,
        col: usize,
        value: Poly,
    },
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }
}

pub fn validate_complex(c: &GradedComplex) -> Validity {
    for i in 2..=c.top_degree() {
        let dd = c.diffs[i - 2].compose(&c.diffs[i - 1]);
        if let Some((row, col)) = dd.first_nonzero() {
            return Validity::Invalid {
                degree: i,
                row,
                col,
                value: dd[(row, col)].clone(),
            };
        }
    }
    Validity::Valid
}

/// A degreewise map of complexes; `components[i]` is `f_i : A^{r_i} -> A^{r'_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainMap {
    source: GradedComplex,
    target: GradedComplex,
    components: Vec<PolyMatrix>,
}

impl ChainMap {
    /// Checks shapes only; use [`ChainMap::check`] for the commutation identities.
    pub fn new(source: GradedComplex, target: GradedComplex, components: Vec<PolyMatrix>) -> Result<Self> {
        let top = source.top_degree().max(target.top_degree());
        let mut comps = components;
        if comps.len() > top + 1 {
            return Err(Error::shape("more components than degrees"));
        }
        for i in comps.len()..=top {
            comps.push(PolyMatrix::zero(source.nvars(), target.rank(i), source.rank(i)));
        }
        for (i, f) in comps.iter().enumerate() {
            if f.rows() != target.rank(i) || f.cols() != source.rank(i) {
                return Err(Error::shape(format!(
                    "component f{i} is {}x{}, expected {}x{}",
                    f.rows(),
                    f.cols(),
                    target.rank(i),
                    source.rank(i)
                )));
            }
        }
        Ok(ChainMap {
            source,
            target,
            components: comps,
        })
    }

    pub fn identity(c: &GradedComplex) -> Self {
        let comps = (0..=c.top_degree())
            .map(|i| PolyMatrix::identity(c.nvars(), c.rank(i)))
            .collect();
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            components: comps,
        }
    }

    pub fn zero(source: &GradedComplex, target: &GradedComplex) -> Self {
        ChainMap::new(source.clone(), target.clone(), Vec::new()).expect("zero map shapes")
    }

    pub fn source(&self) -> &GradedComplex {
        &self.source
    }

    pub fn target(&self) -> &GradedComplex {
        &self.target
    }

    pub fn nvars(&self) -> usize {
        self.source.nvars()
    }

    /// Highest degree with a stored component.
    pub fn top_degree(&self) -> usize {
        self.components.len() - 1
    }

    pub fn component(&self, i: usize) -> PolyMatrix {
        match self.components.get(i) {
            Some(f) => f.clone(),
            None => PolyMatrix::zero(self.nvars(), self.target.rank(i), self.source.rank(i)),
        }
    }

    pub fn components(&self) -> &[PolyMatrix] {
        &self.components
    }

    /// First degree where `d' f_i != f_{i-1} d`, with the offending entry.
    pub fn check(&self) -> std::result::Result<(), (usize, usize, usize)> {
        for i in 1..=self.top_degree() {
            let lhs = self.target.differential(i).compose(&self.components[i]);
            let rhs = self.components[i - 1].compose(&self.source.differential(i));
            if let Some((r, c)) = lhs.first_difference(&rhs) {
                return Err((i, r, c));
            }
        }
        Ok(())
    }

    pub fn is_chain_map(&self) -> bool {
        self.check().is_ok()
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ChainMap) -> Result<ChainMap> {
        if first.target != self.source {
            return Err(Error::shape("composing maps whose endpoints differ"));
        }
        let top = first.source.top_degree().max(self.target.top_degree());
        let comps = (0..=top)
            .map(|i| self.component(i).compose(&first.component(i)))
            .collect();
        ChainMap::new(first.source.clone(), self.target.clone(), comps)
    }

    fn zip(&self, other: &ChainMap, f: impl Fn(&PolyMatrix, &PolyMatrix) -> PolyMatrix) -> Result<ChainMap> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::shape("maps between different complexes"));
        }
        let comps = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| f(a, b))
            .collect();
        ChainMap::new(self.source.clone(), self.target.clone(), comps)
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        self.zip(other, PolyMatrix::add)
    }

    pub fn sub(&self, other: &ChainMap) -> Result<ChainMap> {
        self.zip(other, PolyMatrix::sub)
    }

    pub fn neg(&self) -> ChainMap {
        ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            components: self.components.iter().map(PolyMatrix::neg).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(PolyMatrix::is_zero)
    }

    /// The same components viewed between complexes that agree with the old
    /// endpoints in every degree that carries a nonzero rank.
    pub fn reframed(&self, source: &GradedComplex, target: &GradedComplex) -> Result<ChainMap> {
        let top = source.top_degree().max(target.top_degree());
        let comps = (0..=top).map(|i| self.component(i)).collect();
        ChainMap::new(source.clone(), target.clone(), comps)
    }
}

/// An object of `Mod/T_A`: a complex with `ρ : A^{r_0} -> T_A = A^n` and `ρ d_1 = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AnchoredComplex {
    complex: GradedComplex,
    anchor: PolyMatrix,
}

impl AnchoredComplex {
    /// Checks shapes and the chain condition `ρ d_1 = 0`.
    pub fn new(complex: GradedComplex, anchor: PolyMatrix) -> Result<Self> {
        let n = complex.nvars();
        if anchor.rows() != n || anchor.cols() != complex.rank(0) {
            return Err(Error::shape(format!(
                "anchor is {}x{}, expected {}x{}",
                anchor.rows(),
                anchor.cols(),
                n,
                complex.rank(0)
            )));
        }
        let a = AnchoredComplex { complex, anchor };
        if let Some((r, c)) = a.anchor_defect() {
            return Err(Error::invalid(format!(
                "anchor does not vanish on boundaries: (rho d1)[{r}, {c}] != 0"
            )));
        }
        Ok(a)
    }

    /// The complex with zero anchor.
    pub fn unanchored(complex: GradedComplex) -> Self {
        let anchor = PolyMatrix::zero(complex.nvars(), complex.nvars(), complex.rank(0));
        AnchoredComplex { complex, anchor }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::unanchored(GradedComplex::zero(nvars))
    }

    pub fn complex(&self) -> &GradedComplex {
        &self.complex
    }

    pub fn anchor(&self) -> &PolyMatrix {
        &self.anchor
    }

    pub fn nvars(&self) -> usize {
        self.complex.nvars()
    }

    pub fn anchor_defect(&self) -> Option<(usize, usize)> {
        self.anchor.compose(&self.complex.differential(1)).first_nonzero()
    }

    /// Whether `f : self -> other` commutes with the anchors.
    pub fn anchors_commute(&self, other: &AnchoredComplex, f: &ChainMap) -> bool {
        other.anchor.compose(&f.component(0)) == self.anchor
    }

    pub fn direct_sum(&self, other: &AnchoredComplex) -> AnchoredComplex {
        AnchoredComplex {
            complex: self.complex.direct_sum(&other.complex),
            anchor: self.anchor.hstack(&other.anchor),
        }
    }

    pub(crate) fn from_parts_unchecked(complex: GradedComplex, anchor: PolyMatrix) -> Self {
        AnchoredComplex { complex, anchor }
    }
}
