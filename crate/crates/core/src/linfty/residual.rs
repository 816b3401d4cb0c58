use crate::error::{Error, Result};
use crate::ring::{apply_derivation, lie_bracket, Poly, VectorField};

use super::algebroid::{evaluate_bracket, field_to_element, LInftyAlgebroid};
use super::element::GradedElement;
use super::signs::{koszul_sign, unshuffles};

/// The arity-`k` Jacobiator
/// `Σ_{i+j=k} (-1)^{ij} Σ_{σ ∈ S(i,j)} χ(σ, v) [[v_σ(1..i)]_i, v_σ(i+1), ..., v_σ(k)]_{j+1}`.
///
/// Trailing arguments start at `σ(i+1)`. Brackets above the algebroid's
/// maximal arity count as zero.
pub fn jacobi_residual(l: &LInftyAlgebroid, inputs: &[GradedElement]) -> Result<GradedElement> {
    let k = inputs.len();
    let mut degrees = Vec::with_capacity(k);
    for v in inputs {
        match v.degree(l.basis()) {
            Some(d) => degrees.push(d),
            None if v.is_zero() => return Ok(GradedElement::zero()),
            None => return Err(Error::invalid("Jacobi residual needs homogeneous inputs")),
        }
    }
    let kmax = l.max_arity();
    let mut out = GradedElement::zero();
    for i in 1..=k {
        let j = k - i;
        if i > kmax || j + 1 > kmax {
            continue;
        }
        let outer_sign: i8 = if (i * j) % 2 == 1 { -1 } else { 1 };
        for sigma in unshuffles(i, j) {
            let chi = koszul_sign(&sigma, &degrees);
            let inner_args: Vec<GradedElement> = sigma[..i].iter().map(|&s| inputs[s].clone()).collect();
            let inner = evaluate_bracket(l, i, &inner_args)?;
            if inner.is_zero() {
                continue;
            }
            let mut args = vec![inner];
            args.extend(sigma[i..].iter().map(|&s| inputs[s].clone()));
            let term = evaluate_bracket(l, j + 1, &args)?;
            out = out.add(&term.scale_int(outer_sign * chi));
        }
    }
    Ok(out)
}

/// `[v0, a v1]_2 - a[v0, v1]_2 - ρ(v0)(a) v1`.
pub fn anchor_compat_residual(
    l: &LInftyAlgebroid,
    v0: &GradedElement,
    v1: &GradedElement,
    a: &Poly,
) -> Result<GradedElement> {
    let lhs = evaluate_bracket(l, 2, &[v0.clone(), v1.scale(a)])?;
    let base = evaluate_bracket(l, 2, &[v0.clone(), v1.clone()])?.scale(a);
    let corr = v1.scale(&apply_derivation(&l.anchor_of(v0), a)?);
    Ok(lhs.sub(&base).sub(&corr))
}

/// `[v0, ..., a v_k]_{k+1} - a[v0, ..., v_k]_{k+1}` for arity `k + 1 != 2`.
pub fn anchor_compat_residual_higher(l: &LInftyAlgebroid, inputs: &[GradedElement], a: &Poly) -> Result<GradedElement> {
    let k = inputs.len();
    if k == 2 {
        return anchor_compat_residual(l, &inputs[0], &inputs[1], a);
    }
    let mut scaled = inputs.to_vec();
    if let Some(last) = scaled.last_mut() {
        *last = last.scale(a);
    }
    let lhs = evaluate_bracket(l, k, &scaled)?;
    let rhs = evaluate_bracket(l, k, inputs)?.scale(a);
    Ok(lhs.sub(&rhs))
}

/// `ρ([v0, v1]_2) - [ρ v0, ρ v1]`. Together with `ρ ∘ ℓ1 = 0` this is what
/// makes the anchor a strict morphism to `T_A`; with a table-driven binary
/// bracket the Leibniz residual alone cannot see a wrong anchor.
pub fn anchor_morphism_residual(l: &LInftyAlgebroid, v0: &GradedElement, v1: &GradedElement) -> Result<VectorField> {
    let b = evaluate_bracket(l, 2, &[v0.clone(), v1.clone()])?;
    let lhs = l.anchor_of(&b);
    let rhs = lie_bracket(&l.anchor_of(v0), &l.anchor_of(v1))?;
    Ok(lhs.sub(&rhs))
}

/// Sorted generator tuples of arity `k` (repetition allowed) with input
/// degree sum at most `max_degree`, skipping tuples that vanish by antisymmetry.
pub fn generator_tuples(l: &LInftyAlgebroid, k: usize, max_degree: usize) -> Vec<Vec<usize>> {
    let b = l.basis();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(
        start: usize,
        k: usize,
        budget: usize,
        b: &super::element::GradedBasis,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for g in start..b.len() {
            let d = b.degree(g);
            if d > budget {
                continue;
            }
            // an even generator may not repeat
            if cur.last() == Some(&g) && d % 2 == 0 {
                continue;
            }
            cur.push(g);
            rec(g, k, budget - d, b, cur, out);
            cur.pop();
        }
    }
    rec(0, k, max_degree, b, &mut cur, &mut out);
    out
}

/// First failing residual, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResidualFailure {
    Jacobi { tuple: Vec<usize>, residual: GradedElement },
    AnchorChain { generator: usize, residual: VectorField },
    AnchorMorphism { pair: (usize, usize), residual: VectorField },
}

/// Exhaustive residual sweep over generator tuples within `(max_arity, max_degree)`:
/// Jacobi identities for arities `1..=max_arity`, `ρ ∘ ℓ1 = 0`, and the
/// anchor as a morphism on degree-0 pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualReport {
    pub checked: usize,
    pub failure: Option<ResidualFailure>,
}

impl ResidualReport {
    pub fn passes(&self) -> bool {
        self.failure.is_none()
    }
}

pub fn check_residuals(l: &LInftyAlgebroid, max_arity: usize, max_degree: usize) -> Result<ResidualReport> {
    let mut checked = 0;
    let n = l.basis().len();
    for g in 0..n {
        if l.basis().degree(g) == 1 && l.max_arity() >= 1 {
            checked += 1;
            let d = evaluate_bracket(l, 1, &[l.generator(g)])?;
            let r = l.anchor_of(&d);
            if !r.is_zero() {
                return Ok(ResidualReport {
                    checked,
                    failure: Some(ResidualFailure::AnchorChain { generator: g, residual: r }),
                });
            }
        }
    }
    let deg0 = l.basis().in_degree(0);
    if l.max_arity() >= 2 {
        for (p, &a) in deg0.iter().enumerate() {
            for &b in &deg0[p + 1..] {
                checked += 1;
                let r = anchor_morphism_residual(l, &l.generator(a), &l.generator(b))?;
                if !r.is_zero() {
                    return Ok(ResidualReport {
                        checked,
                        failure: Some(ResidualFailure::AnchorMorphism { pair: (a, b), residual: r }),
                    });
                }
            }
        }
    }
    for k in 1..=max_arity {
        for t in generator_tuples(l, k, max_degree) {
            checked += 1;
            let inputs: Vec<GradedElement> = t.iter().map(|&g| l.generator(g)).collect();
            let r = jacobi_residual(l, &inputs)?;
            if !r.is_zero() {
                return Ok(ResidualReport {
                    checked,
                    failure: Some(ResidualFailure::Jacobi { tuple: t, residual: r }),
                });
            }
        }
    }
    Ok(ResidualReport { checked, failure: None })
}

/// A degree-0 `A`-linear map given by the images of the source generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictMorphism {
    pub images: Vec<GradedElement>,
}

impl StrictMorphism {
    pub fn identity(l: &LInftyAlgebroid) -> Self {
        StrictMorphism {
            images: (0..l.basis().len()).map(|i| l.generator(i)).collect(),
        }
    }

    /// The anchor, read as a map into the tangent model.
    pub fn anchor_map(l: &LInftyAlgebroid) -> Self {
        StrictMorphism {
            images: l.anchor().iter().map(field_to_element).collect(),
        }
    }

    pub fn apply(&self, e: &GradedElement) -> GradedElement {
        let mut out = GradedElement::zero();
        for (i, c) in e.terms() {
            out = out.add(&self.images[i].scale(c));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismFailure {
    Degree { generator: usize },
    Anchor { generator: usize },
    Bracket { tuple: Vec<usize>, lhs: GradedElement, rhs: GradedElement },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismCertificate {
    pub checked: usize,
    pub failure: Option<MorphismFailure>,
}

impl MorphismCertificate {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks `φ [v_1..v_k]_k = [φ v_1..φ v_k]_k` on generator tuples within
/// bounds, degree preservation, and `ρ' ∘ φ = ρ`.
pub fn check_strict_morphism(
    phi: &StrictMorphism,
    l: &LInftyAlgebroid,
    target: &LInftyAlgebroid,
    max_arity: usize,
    max_degree: usize,
) -> Result<MorphismCertificate> {
    if phi.images.len() != l.basis().len() {
        return Err(Error::shape("morphism needs one image per source generator"));
    }
    let mut checked = 0;
    for (g, img) in phi.images.iter().enumerate() {
        checked += 1;
        if !img.is_zero() && img.degree(target.basis()) != Some(l.basis().degree(g)) {
            return Ok(MorphismCertificate {
                checked,
                failure: Some(MorphismFailure::Degree { generator: g }),
            });
        }
        if target.anchor_of(img) != l.anchor()[g] {
            return Ok(MorphismCertificate {
                checked,
                failure: Some(MorphismFailure::Anchor { generator: g }),
            });
        }
    }
    for k in 1..=max_arity.min(l.max_arity()) {
        for t in generator_tuples(l, k, max_degree) {
            checked += 1;
            let inputs: Vec<GradedElement> = t.iter().map(|&g| l.generator(g)).collect();
            let lhs = phi.apply(&evaluate_bracket(l, k, &inputs)?);
            let rhs = if k <= target.max_arity() {
                let imgs: Vec<GradedElement> = t.iter().map(|&g| phi.images[g].clone()).collect();
                evaluate_bracket(target, k, &imgs)?
            } else {
                GradedElement::zero()
            };
            if lhs != rhs {
                return Ok(MorphismCertificate {
                    checked,
                    failure: Some(MorphismFailure::Bracket { tuple: t, lhs, rhs }),
                });
            }
        }
    }
    Ok(MorphismCertificate { checked, failure: None })
}
