//! Witness formatting for negative certificates.

use semimodel_core::foliation::{LrReplacement, ReplacementComparison, Resolution, UniversalStructure};
use semimodel_core::linfty::{GradedBasis, ResidualFailure};
use semimodel_core::modelcat::Classification;
use semimodel_core::ring::PolyVector;

pub fn vector(v: &PolyVector, vars: &[String]) -> String {
    let parts: Vec<String> = v.entries().iter().map(|p| p.display_with(vars).to_string()).collect();
    format!("({})", parts.join(", "))
}

/// `None` when the classification is a certified surjective quasi-isomorphism.
pub fn classification(c: &Classification, vars: &[String]) -> Option<String> {
    if !c.image_contained {
        return Some("the anchor leaves the foliation".into());
    }
    if let Some((d, v)) = &c.unhit {
        return Some(format!("{} in degree {d} is not hit", vector(v, vars)));
    }
    if let Some(h) = c.cone.first_failure() {
        let w = h.witnesses.first().map_or_else(String::new, |v| format!(": {}", vector(v, vars)));
        return Some(format!("mapping cone has homology in degree {}{w}", h.degree));
    }
    if !c.trivial_fibration {
        return Some("not a trivial fibration".into());
    }
    None
}

pub fn residual(f: &ResidualFailure, basis: &GradedBasis, vars: &[String]) -> String {
    match f {
        ResidualFailure::Jacobi { tuple, residual } => {
            let names: Vec<&str> = tuple.iter().map(|&g| basis.name(g)).collect();
            format!(
                "Jacobi residual on ({}) is {}",
                names.join(", "),
                residual.display_with(basis, vars)
            )
        }
        ResidualFailure::AnchorChain { generator, residual } => format!(
            "rho([{}]) = {} is not zero",
            basis.name(*generator),
            residual.display_with(vars)
        ),
        ResidualFailure::AnchorMorphism { pair, residual } => format!(
            "rho([{}, {}]) - [rho({}), rho({})] = {}",
            basis.name(pair.0),
            basis.name(pair.1),
            basis.name(pair.0),
            basis.name(pair.1),
            residual.display_with(vars)
        ),
    }
}

pub fn resolution(r: &Resolution, vars: &[String]) -> Option<String> {
    classification(&r.certificate, vars)
}

pub fn universal(u: &UniversalStructure, vars: &[String]) -> Option<String> {
    if let Some(w) = resolution(&u.resolution, vars) {
        return Some(format!("underlying complex: {w}"));
    }
    u.report
        .failure
        .as_ref()
        .map(|f| residual(f, u.algebroid.basis(), vars))
}

pub fn replacement(r: &LrReplacement, vars: &[String]) -> Option<String> {
    classification(&r.certificate, vars)
}

pub fn comparison(c: &ReplacementComparison) -> Option<String> {
    let checks = [
        (c.phi.is_chain_map(), "phi is not a chain map"),
        (c.psi.is_chain_map(), "psi is not a chain map"),
        (c.phi_second.is_chain_map(), "phi' is not a chain map"),
        (c.phi_quasi_iso.holds, "phi is not a quasi-isomorphism"),
        (c.psi_quasi_iso.holds, "psi is not a quasi-isomorphism"),
        (verified(&c.round_trip_1), "no homotopy psi.phi ~ id"),
        (verified(&c.round_trip_2), "no homotopy phi.psi ~ id"),
        (verified(&c.lifts_agree), "no homotopy phi ~ phi'"),
    ];
    checks.iter().find(|(ok, _)| !ok).map(|(_, m)| m.to_string())
}

pub fn verified(h: &Option<semimodel_core::dgmod::ChainHomotopy>) -> bool {
    h.as_ref().is_some_and(|h| h.verify())
}

pub fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
