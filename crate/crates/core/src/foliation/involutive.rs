use crate::error::{Error, Result};
use crate::groebner::ColumnSolver;
use crate::ring::{lie_bracket, PolyMatrix, PolyVector, VectorField};

/// Outcome of bracket-closure testing for a list of vector fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutivityCertificate {
    /// `((i, j), c)` with `[g_i, g_j] = Σ c_k g_k`, for every pair checked.
    pub coefficients: Vec<((usize, usize), PolyVector)>,
    /// The first pair whose bracket leaves the span, with that bracket.
    pub failure: Option<((usize, usize), VectorField)>,
}

impl InvolutivityCertificate {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }

    pub fn structure(&self, i: usize, j: usize) -> Option<&PolyVector> {
        self.coefficients.iter().find(|(p, _)| *p == (i, j)).map(|(_, c)| c)
    }
}

pub(crate) fn generator_matrix(nvars: usize, gens: &[VectorField]) -> PolyMatrix {
    let cols: Vec<PolyVector> = gens.iter().map(|g| g.components().clone()).collect();
    PolyMatrix::from_columns(nvars, nvars, &cols)
}

/// Solves `[g_i, g_j] = Σ c_k g_k` for every pair `i < j`.
pub fn check_involutive(nvars: usize, gens: &[VectorField]) -> Result<InvolutivityCertificate> {
    if gens.iter().any(|g| g.nvars() != nvars) {
        return Err(Error::shape("generators over different rings"));
    }
    let mut coefficients = Vec::new();
    if gens.is_empty() {
        return Ok(InvolutivityCertificate { coefficients, failure: None });
    }
    let solver = ColumnSolver::new(&generator_matrix(nvars, gens))?;
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let b = lie_bracket(&gens[i], &gens[j])?;
            match solver.solve(b.components())? {
                Some(c) => coefficients.push(((i, j), c)),
                None => {
                    return Ok(InvolutivityCertificate {
                        coefficients,
                        failure: Some(((i, j), b)),
                    })
                }
            }
        }
    }
    Ok(InvolutivityCertificate { coefficients, failure: None })
}

/// A finitely generated, bracket-closed module of polynomial vector fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Foliation {
    nvars: usize,
    names: Vec<String>,
    generators: Vec<VectorField>,
    certificate: InvolutivityCertificate,
}

impl Foliation {
    /// Fails with the offending pair when the generators are not involutive.
    pub fn new(nvars: usize, names: Vec<String>, generators: Vec<VectorField>) -> Result<Self> {
        if names.len() != generators.len() {
            return Err(Error::shape("one name per generator"));
        }
        let certificate = check_involutive(nvars, &generators)?;
        if let Some(((i, j), _)) = &certificate.failure {
            return Err(Error::invalid(format!(
                "not involutive: [{}, {}] is outside the span",
                names[*i], names[*j]
            )));
        }
        Ok(Foliation {
            nvars,
            names,
            generators,
            certificate,
        })
    }

    /// Generators named `v1, v2, ...`.
    pub fn from_fields(nvars: usize, generators: Vec<VectorField>) -> Result<Self> {
        let names = (1..=generators.len()).map(|i| format!("v{i}")).collect();
        Foliation::new(nvars, names, generators)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generators(&self) -> &[VectorField] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn certificate(&self) -> &InvolutivityCertificate {
        &self.certificate
    }

    /// `n x g`, column `k` the components of generator `k`.
    pub fn matrix(&self) -> PolyMatrix {
        generator_matrix(self.nvars, &self.generators)
    }

    pub fn contains(&self, v: &VectorField) -> Result<bool> {
        if self.generators.is_empty() {
            return Ok(v.is_zero());
        }
        ColumnSolver::new(&self.matrix())?.contains(v.components())
    }

    pub fn target(&self) -> crate::modelcat::Target {
        crate::modelcat::Target::Foliation(self.matrix())
    }
}
