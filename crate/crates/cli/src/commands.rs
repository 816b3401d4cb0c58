use std::path::PathBuf;

use semimodel_core::error::{Error, Result};
use semimodel_core::foliation::{
    build_universal_structure, certify_cells, cofibrant_replacement_linfty, compare_replacements, free_resolution,
    verify_resolution, verify_universal, Foliation,
};
use semimodel_core::linfty::{GradedBasis, GradedElement};
use semimodel_core::modelcat::{cofibrant_replacement, replace_target};

use crate::report;
use crate::session::{parse_session, write_item, Item, Session};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    /// Involutivity of each foliation, validity of each complex.
    Check,
    /// Free resolution by iterated syzygies.
    Resolve,
    /// Universal L-infinity structure on the resolution.
    Universal,
    /// Cofibrant replacement by free algebroid cells (or dg cells with --dg).
    Replace,
    /// Lifts and homotopies between two replacements.
    Compare,
    /// Re-run every certificate on the artifacts in the input.
    Verify,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Resolution length; defaults to the number of variables.
    pub length: Option<usize>,
    pub degree: usize,
    pub weight: usize,
    pub max_arity: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            length: None,
            degree: 2,
            weight: 2,
            max_arity: 3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SessionConfig {
    pub command: Command,
    pub input: PathBuf,
    pub out: Option<PathBuf>,
    pub bounds: Bounds,
    /// Restrict to one foliation.
    pub name: Option<String>,
    /// `replace` in anchored complexes instead of algebroids.
    pub dg: bool,
    pub verbose: bool,
}

impl SessionConfig {
    pub fn new(command: Command, input: impl Into<PathBuf>) -> Self {
        SessionConfig {
            command,
            input: input.into(),
            out: None,
            bounds: Bounds::default(),
            name: None,
            dg: false,
            verbose: false,
        }
    }
}

/// Report text plus the verdict. `witness` is the first negative certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub report: String,
    pub witness: Option<String>,
}

impl Outcome {
    pub fn positive(&self) -> bool {
        self.witness.is_none()
    }
}

struct Report<'a> {
    vars: &'a [String],
    out: String,
    witness: Option<String>,
}

impl Report<'_> {
    fn note(&mut self, line: impl AsRef<str>) {
        self.out.push_str("# ");
        self.out.push_str(line.as_ref());
        self.out.push('\n');
    }

    fn item(&mut self, item: &Item) {
        self.out.push('\n');
        self.out.push_str(&write_item(item, self.vars));
    }

    /// Records a verdict line; the first negative one becomes the witness.
    fn verdict(&mut self, what: &str, failure: Option<String>) {
        match failure {
            None => self.note(format!("{what}: positive")),
            Some(w) => {
                self.note(format!("{what}: NEGATIVE: {w}"));
                if self.witness.is_none() {
                    self.witness = Some(format!("{what}: {w}"));
                }
            }
        }
    }
}

fn check_bounds(b: &Bounds) -> Result<()> {
    if b.degree == 0 || b.max_arity == 0 || b.length == Some(0) {
        return Err(Error::Invalid("bounds must be positive".into()));
    }
    Ok(())
}

pub fn run_command(cfg: &SessionConfig) -> Result<Outcome> {
    let text = std::fs::read_to_string(&cfg.input)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", cfg.input.display())))?;
    run_on_text(cfg, &text)
}

pub fn run_on_text(cfg: &SessionConfig, text: &str) -> Result<Outcome> {
    check_bounds(&cfg.bounds)?;
    let session = parse_session(text)?;
    let vars = session.vars.clone();
    let mut r = Report {
        vars: &vars,
        out: String::new(),
        witness: None,
    };
    let b = &cfg.bounds;
    let length = b.length.unwrap_or(vars.len());
    let head = match cfg.command {
        Command::Check => "check".to_string(),
        Command::Resolve => format!("resolve --length {length}"),
        Command::Universal => format!(
            "universal --length {length} --max-arity {} --bound-degree {}",
            b.max_arity, b.degree
        ),
        Command::Replace if cfg.dg => format!("replace --dg --bound-degree {}", b.degree),
        Command::Replace => format!("replace --bound-weight {} --bound-degree {}", b.weight, b.degree),
        Command::Compare => format!(
            "compare --length {length} --bound-weight {} --bound-degree {}",
            b.weight, b.degree
        ),
        Command::Verify => "verify".to_string(),
    };
    r.note(format!("semimodel {head}"));
    r.out.push_str(&session.write_ring());
    let targets: Vec<(&str, &Foliation)> = match &cfg.name {
        Some(n) => match session.foliation(n) {
            Some(f) => vec![(n.as_str(), f)],
            None => return Err(Error::Invalid(format!("no foliation named '{n}'"))),
        },
        None => session.foliations().collect(),
    };
    // inputs are echoed so every report is itself a session
    let echo = |r: &mut Report<'_>, all: bool| {
        for item in &session.items {
            if all || matches!(item, Item::Foliation { .. } | Item::Complex { .. }) {
                r.item(item);
            }
        }
    };
    match cfg.command {
        Command::Check => {
            echo(&mut r, false);
            r.out.push('\n');
            check(&mut r, &session, &targets, cfg.verbose);
        }
        Command::Resolve => {
            echo(&mut r, false);
            for (name, f) in &targets {
                let res = free_resolution(f, length)?;
                r.item(&Item::Resolution {
                    of: name.to_string(),
                    length,
                    complex: res.complex.clone(),
                });
                r.note(format!("ranks {:?}", res.ranks()));
                r.verdict(&format!("resolution of {name}"), report::resolution(&res, &vars));
            }
        }
        Command::Universal => {
            echo(&mut r, false);
            for (name, f) in &targets {
                let res = free_resolution(f, length)?;
                let u = build_universal_structure(&res, f, b.max_arity, b.degree)?;
                r.item(&Item::Universal {
                    of: name.to_string(),
                    length,
                    arity: b.max_arity,
                    degree: b.degree,
                    algebroid: u.algebroid.clone(),
                });
                r.note(format!("ranks {:?}", res.ranks()));
                r.note(format!("residuals checked: {}", u.report.checked));
                r.verdict(&format!("universal structure on {name}"), report::universal(&u, &vars));
            }
        }
        Command::Replace => {
            echo(&mut r, false);
            replace(&mut r, &session, &targets, cfg)?;
        }
        Command::Compare => {
            echo(&mut r, false);
            compare(&mut r, &targets, cfg)?;
        }
        Command::Verify => {
            echo(&mut r, true);
            r.out.push('\n');
            verify(&mut r, &session)?;
        }
    }
    Ok(Outcome {
        report: r.out,
        witness: r.witness,
    })
}

fn check(r: &mut Report<'_>, session: &Session, targets: &[(&str, &Foliation)], verbose: bool) {
    for (name, f) in targets {
        // parsing already refused non-involutive input
        r.verdict(
            &format!("{name} is involutive ({} generators)", f.len()),
            f.certificate().failure.as_ref().map(|((i, j), _)| format!("pair {i}, {j}")),
        );
        if verbose {
            let basis = GradedBasis::new(f.names().iter().map(|n| (n.clone(), 0)).collect()).expect("distinct names");
            for ((i, j), c) in &f.certificate().coefficients {
                let e = GradedElement::from_terms(c.entries().iter().cloned().enumerate());
                let rhs = e.display_with(&basis, r.vars);
                r.note(format!("  [{}, {}] = {rhs}", f.names()[*i], f.names()[*j]));
            }
        }
    }
    for (name, c) in session.complexes() {
        r.note(format!("complex {name}: ranks {:?}", c.complex().ranks()));
        r.verdict(&format!("{name} satisfies d.d = 0 and rho.d = 0"), None);
    }
}

fn replace(r: &mut Report<'_>, session: &Session, targets: &[(&str, &Foliation)], cfg: &SessionConfig) -> Result<()> {
    let b = &cfg.bounds;
    for (name, f) in targets {
        if cfg.dg {
            let q = replace_target(&f.target(), b.degree)?;
            r.item(&Item::Resolution {
                of: name.to_string(),
                length: b.degree + 1,
                complex: q.result().clone(),
            });
            r.note(format!("cells attached: {}, rounds: {}", q.cellular.attachments().len(), q.rounds));
            r.verdict(&format!("dg replacement of {name}"), report::classification(&q.certificate, r.vars));
        } else {
            let q = cofibrant_replacement_linfty(f, b.weight, b.degree)?;
            r.item(&Item::Replacement {
                of: name.to_string(),
                weight: b.weight,
                degree: b.degree,
                cells: q.cells.clone(),
            });
            r.note(format!(
                "rounds: {}, truncation ranks {:?}",
                q.rounds,
                q.complex().complex().ranks()
            ));
            r.verdict(&format!("replacement of {name}"), report::replacement(&q, r.vars));
        }
    }
    if cfg.dg && cfg.name.is_none() {
        for (name, x) in session.complexes() {
            let q = cofibrant_replacement(x, b.degree)?;
            r.item(&Item::Complex {
                name: format!("Q_{name}"),
                value: q.result().clone(),
            });
            r.verdict(&format!("dg replacement of {name}"), report::classification(&q.certificate, r.vars));
        }
    }
    Ok(())
}

fn same_span(f: &Foliation, g: &Foliation) -> Result<bool> {
    for v in f.generators() {
        if !g.contains(v)? {
            return Ok(false);
        }
    }
    for v in g.generators() {
        if !f.contains(v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn compare(r: &mut Report<'_>, targets: &[(&str, &Foliation)], cfg: &SessionConfig) -> Result<()> {
    let b = &cfg.bounds;
    let length = b.length.unwrap_or(r.vars.len()).max(b.degree + 1);
    let (label, q1, q2) = match targets {
        [] => return Err(Error::Invalid("compare needs a foliation".into())),
        [(name, f)] => {
            let lr = cofibrant_replacement_linfty(f, b.weight, b.degree)?;
            r.note(format!("Q1: free algebroid cells on {name}, unit pivots cancelled"));
            r.note(format!("Q2: syzygy resolution of {name}"));
            let q1 = lr.reduced_factorization(f)?;
            let q2 = free_resolution(f, length)?.as_factorization(f)?;
            (format!("replacements of {name}"), q1, q2)
        }
        [(n1, f1), (n2, f2), ..] => {
            if !same_span(f1, f2)? {
                return Err(Error::Invalid(format!("{n1} and {n2} span different foliations")));
            }
            r.note(format!("Q1: syzygy resolution of {n1}"));
            r.note(format!("Q2: syzygy resolution of {n2}"));
            let q1 = free_resolution(f1, length)?.as_factorization(f1)?;
            let q2 = free_resolution(f2, length)?.as_factorization(f2)?;
            (format!("resolutions of {n1} and {n2}"), q1, q2)
        }
    };
    r.note(format!("Q1 ranks {:?}", q1.result().complex().ranks()));
    r.note(format!("Q2 ranks {:?}", q2.result().complex().ranks()));
    let c = compare_replacements(&q1, &q2)?;
    r.note(format!("bound: {}", c.bound));
    r.note(format!("phi quasi-isomorphism: {}", report::yes(c.phi_quasi_iso.holds)));
    r.note(format!("psi quasi-isomorphism: {}", report::yes(c.psi_quasi_iso.holds)));
    r.note(format!("psi.phi ~ id: {}", report::yes(report::verified(&c.round_trip_1))));
    r.note(format!("phi.psi ~ id: {}", report::yes(report::verified(&c.round_trip_2))));
    r.note(format!("phi ~ phi': {}", report::yes(report::verified(&c.lifts_agree))));
    r.verdict(&format!("comparison of {label}"), report::comparison(&c));
    Ok(())
}

fn verify(r: &mut Report<'_>, session: &Session) -> Result<()> {
    let mut artifacts = 0;
    for item in &session.items {
        let of_f = |of: &str| session.foliation(of).expect("checked while parsing");
        match item {
            Item::Resolution { of, length, complex } => {
                let res = verify_resolution(of_f(of), complex, *length)?;
                r.verdict(&format!("resolution of {of}"), report::resolution(&res, r.vars));
            }
            Item::Universal {
                of,
                length,
                arity,
                degree,
                algebroid,
            } => {
                let u = verify_universal(of_f(of), algebroid, *length, *arity, *degree)?;
                r.note(format!("residuals checked: {}", u.report.checked));
                r.verdict(&format!("universal structure on {of}"), report::universal(&u, r.vars));
            }
            Item::Replacement {
                of,
                weight,
                degree,
                cells,
            } => {
                let q = certify_cells(of_f(of), cells.clone(), *weight, *degree)?;
                r.verdict(&format!("replacement of {of}"), report::replacement(&q, r.vars));
            }
            _ => continue,
        }
        artifacts += 1;
    }
    r.note(format!("artifacts verified: {artifacts}"));
    Ok(())
}
