use crate::dgmod::{exactness_certificate, mapping_cone, AnchoredComplex, ChainMap, ExactnessCertificate, GradedComplex};
use crate::error::{Error, Result};
use crate::groebner::ColumnSolver;
use crate::ring::{PolyMatrix, PolyVector};

/// A morphism of `Mod/T_A`: a chain map commuting with the anchors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnchoredMap {
    source: AnchoredComplex,
    target: AnchoredComplex,
    map: ChainMap,
}

impl AnchoredMap {
    pub fn new(source: AnchoredComplex, target: AnchoredComplex, map: ChainMap) -> Result<Self> {
        if map.source() != source.complex() || map.target() != target.complex() {
            return Err(Error::shape("chain map endpoints differ from the anchored complexes"));
        }
        if let Err((i, r, c)) = map.check() {
            return Err(Error::invalid(format!("not a chain map: degree {i} entry ({r}, {c})")));
        }
        if !source.anchors_commute(&target, &map) {
            return Err(Error::invalid("map does not commute with the anchors"));
        }
        Ok(AnchoredMap { source, target, map })
    }

    pub fn identity(x: &AnchoredComplex) -> Self {
        AnchoredMap {
            source: x.clone(),
            target: x.clone(),
            map: ChainMap::identity(x.complex()),
        }
    }

    /// The unique map out of the zero object.
    pub fn from_zero(x: &AnchoredComplex) -> Self {
        let z = AnchoredComplex::zero(x.nvars());
        AnchoredMap {
            map: ChainMap::zero(z.complex(), x.complex()),
            source: z,
            target: x.clone(),
        }
    }

    pub fn source(&self) -> &AnchoredComplex {
        &self.source
    }

    pub fn target(&self) -> &AnchoredComplex {
        &self.target
    }

    pub fn map(&self) -> &ChainMap {
        &self.map
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &AnchoredMap) -> Result<AnchoredMap> {
        if first.target != self.source {
            return Err(Error::shape("composing anchored maps with mismatched endpoints"));
        }
        Ok(AnchoredMap {
            source: first.source.clone(),
            target: self.target.clone(),
            map: self.map.compose(&first.map)?,
        })
    }
}

/// The tangent module `T_A = A^n` as a complex concentrated in degree 0
/// with the identity anchor. Maps into a foliation are maps into this with
/// anchor values in the foliation.
pub fn tangent_complex(nvars: usize) -> AnchoredComplex {
    AnchoredComplex::new(
        GradedComplex::with_zero_differentials(nvars, vec![nvars]),
        PolyMatrix::identity(nvars, nvars),
    )
    .expect("identity anchor")
}

/// What a replacement maps onto.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    Complex(AnchoredComplex),
    /// A submodule `F ⊂ T_A` given by generating vector fields (columns).
    Foliation(PolyMatrix),
}

impl Target {
    pub fn nvars(&self) -> usize {
        match self {
            Target::Complex(c) => c.nvars(),
            Target::Foliation(g) => g.nvars(),
        }
    }

    /// The free complex maps are taken into.
    pub fn ambient(&self) -> AnchoredComplex {
        match self {
            Target::Complex(c) => c.clone(),
            Target::Foliation(g) => tangent_complex(g.nvars()),
        }
    }

    /// Degree-0 elements of the ambient that must be hit.
    pub(crate) fn degree0_targets(&self) -> Vec<PolyVector> {
        match self {
            Target::Complex(c) => (0..c.complex().rank(0))
                .map(|k| PolyVector::unit(c.nvars(), c.complex().rank(0), k))
                .collect(),
            Target::Foliation(g) => g.columns(),
        }
    }

    /// Lowest cone degree that has to be exact. For a foliation the cone
    /// against `T_A` keeps `T_A / F` in degree 0, which is not a defect.
    pub(crate) fn cone_start(&self) -> usize {
        match self {
            Target::Complex(_) => 0,
            Target::Foliation(_) => 1,
        }
    }
}

/// Verdicts for `p : Z -> Y` against the model structure, up to a degree bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub bound: usize,
    /// Surjective in every positive degree.
    pub fibration: bool,
    /// Surjective onto the degree-0 target (all of `Y_0`, or the foliation).
    pub surjective_in_degree0: bool,
    /// For foliation targets: every anchor value lies in the foliation.
    pub image_contained: bool,
    pub weak_equivalence: bool,
    pub trivial_fibration: bool,
    /// First target element missed, as `(degree, element)`.
    pub unhit: Option<(usize, PolyVector)>,
    /// Exactness of the cone in the checked degrees.
    pub cone: ExactnessCertificate,
}

fn first_unhit(p: &PolyMatrix, targets: &[PolyVector]) -> Result<Option<PolyVector>> {
    if targets.is_empty() {
        return Ok(None);
    }
    let solver = ColumnSolver::new(p)?;
    for t in targets {
        if !solver.contains(t)? {
            return Ok(Some(t.clone()));
        }
    }
    Ok(None)
}

/// Classifies `p` (a map into `target.ambient()`) up to `bound`.
pub fn classify_onto(p: &AnchoredMap, target: &Target, bound: usize) -> Result<Classification> {
    let y = target.ambient();
    if p.target() != &y {
        return Err(Error::shape("map does not land in the target's ambient complex"));
    }
    let n = y.nvars();
    let yc = y.complex();
    let mut unhit = None;
    let mut fibration = true;
    for i in 1..=yc.top_degree() {
        let basis: Vec<PolyVector> = (0..yc.rank(i)).map(|k| PolyVector::unit(n, yc.rank(i), k)).collect();
        if let Some(t) = first_unhit(&p.map().component(i), &basis)? {
            fibration = false;
            unhit.get_or_insert((i, t));
            break;
        }
    }
    let p0 = p.map().component(0);
    let miss0 = first_unhit(&p0, &target.degree0_targets())?;
    let surjective_in_degree0 = miss0.is_none();
    if let Some(t) = miss0 {
        unhit.get_or_insert((0, t));
    }
    let image_contained = match target {
        Target::Complex(_) => true,
        Target::Foliation(g) => first_unhit(g, &p0.columns())?.is_none(),
    };
    let cone = exactness_certificate(&mapping_cone(p.map()), target.cone_start()..=bound + 1)?;
    let weak_equivalence = cone.is_exact() && image_contained && (target.cone_start() == 0 || surjective_in_degree0);
    Ok(Classification {
        bound,
        fibration,
        surjective_in_degree0,
        image_contained,
        weak_equivalence,
        trivial_fibration: weak_equivalence && fibration && surjective_in_degree0,
        unhit,
        cone,
    })
}

/// Classification of a morphism between anchored complexes.
pub fn classify_morphism(p: &AnchoredMap, bound: usize) -> Result<Classification> {
    classify_onto(p, &Target::Complex(p.target().clone()), bound)
}
