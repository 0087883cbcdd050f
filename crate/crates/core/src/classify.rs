//! Regular, sci/gci classification with certificates or obstructions,
//! Gorenstein shift and Poincaré duality checks.

use num_integer::Integer;
use thiserror::Error;

use crate::cohomology::{
    cohomology_dims, hurewicz_solve, pairing_rank, verify_refusal, CohomologyError, CohomologyTable, Functional,
    SolveOutcome,
};
use crate::gca::{decomposable_basis, GcaError, Generator, Poly};
use crate::model::{ModelError, SullivanAlgebra};
use crate::series::{growth_degree, loop_homology_series, GrowthReport, SeriesError};

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Gca(#[from] GcaError),
}

/// One processed generator of the standard-form walk.
#[derive(Debug, Clone, PartialEq)]
pub enum SciStep {
    /// A top odd generator moved to the fibre.
    StripOdd { generator: String, codegree: u32 },
    /// `x` replaced by the cocycle `x + shift`, then moved to the base.
    /// The shift is zero when `x` was already a cocycle.
    StripEven { generator: String, codegree: u32, shift: Poly },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SciCertificate {
    pub steps: Vec<SciStep>,
    pub base: Vec<Generator>,
    pub fibre: Vec<Generator>,
    pub codimension: usize,
    /// The input after every recorded change of variables; `d(V^even) = 0`.
    pub normal_form: SullivanAlgebra,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HurewiczObstruction {
    pub generator: String,
    pub codegree: u32,
    pub differential: Poly,
    /// Vanishes on `d` of every decomposable of the generator's codegree but
    /// not on `differential`.
    pub refusal: Functional,
}

impl HurewiczObstruction {
    pub fn verify(&self, input: &SullivanAlgebra) -> bool {
        let (Ok(dx), Ok(weights)) = (
            self.differential.transport(input.universe()),
            self.refusal.weights.transport(input.universe()),
        ) else {
            return false;
        };
        let phi = Functional {
            codegree: self.refusal.codegree,
            weights,
        };
        let domain = decomposable_basis(self.codegree, input.universe());
        verify_refusal(input, &domain, &dx, &phi)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SciOutcome {
    Certificate(SciCertificate),
    Obstruction(HurewiczObstruction),
}

impl SciOutcome {
    pub fn certificate(&self) -> Option<&SciCertificate> {
        match self {
            SciOutcome::Certificate(c) => Some(c),
            SciOutcome::Obstruction(_) => None,
        }
    }

    pub fn obstruction(&self) -> Option<&HurewiczObstruction> {
        match self {
            SciOutcome::Certificate(_) => None,
            SciOutcome::Obstruction(o) => Some(o),
        }
    }
}

/// True iff there are no odd generators.
pub fn classify_regular(a: &SullivanAlgebra) -> bool {
    a.odd_count() == 0
}

/// Walks generators from the top codegree down, stripping odd ones and
/// making even ones cocycles by Hurewicz witnesses.
pub fn sci_standard_form(a: &SullivanAlgebra) -> Result<SciOutcome, ClassifyError> {
    let mut current = a.clone();
    let mut normal = a.clone();
    let mut steps = Vec::new();
    let mut base = Vec::new();
    let mut fibre = Vec::new();
    while !current.generators().is_empty() {
        let s = current.top_codegree();
        let tops: Vec<Generator> = current
            .generators()
            .iter()
            .filter(|g| g.codegree() == s)
            .cloned()
            .collect();
        for g in tops {
            let x = g.name();
            if g.is_odd() {
                current = current.drop_odd(x)?;
                steps.push(SciStep::StripOdd {
                    generator: x.to_string(),
                    codegree: s,
                });
                fibre.push(g);
                continue;
            }
            match hurewicz_solve(&current, x)? {
                SolveOutcome::Witness(shift) => {
                    if !shift.is_zero() {
                        current = current.change_of_variables(x, &shift)?.0;
                        normal = normal.change_of_variables(x, &shift)?.0;
                    }
                    current = current.quotient_even_cocycle(x)?;
                    steps.push(SciStep::StripEven {
                        generator: x.to_string(),
                        codegree: s,
                        shift: shift.transport(a.universe())?,
                    });
                    base.push(g);
                }
                SolveOutcome::Refusal(phi) => {
                    return Ok(SciOutcome::Obstruction(HurewiczObstruction {
                        generator: x.to_string(),
                        codegree: s,
                        differential: a.d(x)?.clone(),
                        refusal: Functional {
                            codegree: phi.codegree,
                            weights: phi.weights.transport(a.universe())?,
                        },
                    }));
                }
            }
        }
    }
    assert!(normal.even_cocycle_only(), "standard form left an even generator with nonzero differential");
    Ok(SciOutcome::Certificate(SciCertificate {
        codimension: fibre.len(),
        steps,
        base,
        fibre,
        normal_form: normal,
    }))
}

/// Re-applies the recorded changes of variables to `a` and checks the
/// normal form and cohomology dimensions up to `bound`.
pub fn replay_sci(a: &SullivanAlgebra, cert: &SciCertificate, bound: u32) -> Result<bool, ClassifyError> {
    let mut b = a.clone();
    for step in &cert.steps {
        if let SciStep::StripEven { generator, shift, .. } = step {
            if !shift.is_zero() {
                b = b.change_of_variables(generator, shift)?.0;
            }
        }
    }
    Ok(b == cert.normal_form
        && b.validate().is_valid()
        && b.even_cocycle_only()
        && cert.codimension == b.odd_count()
        && cohomology_dims(&b, bound) == cohomology_dims(a, bound))
}

#[derive(Debug, Clone, PartialEq)]
pub struct GciReport {
    pub gci: bool,
    pub g_codimension: Option<usize>,
    pub growth: Option<GrowthReport>,
    pub reasoning: String,
}

/// Loop-series window long enough to see the growth of a finite-V model.
pub fn loop_growth_window(a: &SullivanAlgebra) -> u32 {
    let mut period = 1u32;
    let mut odd_degree_sum = 0u32;
    for g in a.generators() {
        let n = g.codegree() - 1;
        if n % 2 == 0 {
            period = period.lcm(&n);
        } else {
            odd_degree_sum += n;
        }
    }
    let k = a.odd_count() as u32;
    3 * (k * period + odd_degree_sum).max(period) + 3
}

pub fn loop_growth(a: &SullivanAlgebra) -> Result<GrowthReport, SeriesError> {
    growth_degree(&loop_homology_series(a, loop_growth_window(a)))
}

pub fn gci_report(a: &SullivanAlgebra, outcome: &SciOutcome) -> GciReport {
    match outcome {
        SciOutcome::Certificate(cert) => {
            let growth = loop_growth(a).ok();
            let agrees = growth
                .as_ref()
                .is_some_and(|g| g.growth_degree + 1 == cert.codimension as i64);
            let reasoning = if agrees {
                format!(
                    "sci of codimension {}; loop homology growth degree {} agrees",
                    cert.codimension,
                    cert.codimension as i64 - 1
                )
            } else {
                format!(
                    "sci of codimension {}; loop homology growth not confirmed in the window",
                    cert.codimension
                )
            };
            GciReport {
                gci: true,
                g_codimension: Some(cert.codimension),
                growth,
                reasoning,
            }
        }
        SciOutcome::Obstruction(o) => GciReport {
            gci: false,
            g_codimension: None,
            growth: loop_growth(a).ok(),
            reasoning: format!(
                "not sci (Hurewicz obstruction at {}), hence not gci for a finite-dimensional model",
                o.generator
            ),
        },
    }
}

/// `Σ_base (|v| - 1) - Σ_fibre |x|`.
pub fn gorenstein_shift(cert: &SciCertificate) -> i64 {
    let base: i64 = cert.base.iter().map(|g| g.codegree() as i64 - 1).sum();
    let fibre: i64 = cert.fibre.iter().map(|g| g.codegree() as i64).sum();
    base - fibre
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PdVerdict {
    Holds,
    Fails(String),
    Inconclusive(String),
}

/// Poincaré duality of formal dimension `n` on a cohomology table.
pub fn pd_check(table: &CohomologyTable, n: u32) -> Result<PdVerdict, ClassifyError> {
    let max = table.max_codegree();
    if max <= n {
        return Ok(PdVerdict::Inconclusive(format!(
            "table ends at codegree {max}, no room to see vanishing above {n}"
        )));
    }
    if let Some(k) = (n + 1..=max).find(|&k| table.dim(k) != 0) {
        return Ok(PdVerdict::Inconclusive(format!(
            "cohomology is nonzero in codegree {k} above {n}"
        )));
    }
    if table.dim(n) != 1 {
        return Ok(PdVerdict::Fails(format!("dim H^{n} = {}", table.dim(n))));
    }
    for k in 0..=n {
        if table.dim(k) != table.dim(n - k) {
            return Ok(PdVerdict::Fails(format!(
                "dim H^{k} = {} but dim H^{} = {}",
                table.dim(k),
                n - k,
                table.dim(n - k)
            )));
        }
        let rank = pairing_rank(table, k, n)?;
        if rank != table.dim(k) {
            return Ok(PdVerdict::Fails(format!(
                "pairing H^{k} x H^{} has rank {rank} < {}",
                n - k,
                table.dim(k)
            )));
        }
    }
    Ok(PdVerdict::Holds)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationReport {
    pub regular: bool,
    pub sci: bool,
    pub gci: bool,
    /// Equivalent to sci.
    pub eci: bool,
    /// Pure and sci.
    pub zci: bool,
    pub pure: bool,
    pub even_cocycle_only: bool,
    /// Cohomology vanishes in the top window of the bound; not a proof.
    pub elliptic_heuristic: bool,
    /// Certified either way by the standard-form walk.
    pub noetherian: bool,
    pub codimension: Option<usize>,
    pub growth: Option<GrowthReport>,
    pub gorenstein_shift: Option<i64>,
    pub outcome: SciOutcome,
    pub gci_reasoning: String,
}

pub fn classify(a: &SullivanAlgebra, bound: u32) -> Result<ClassificationReport, ClassifyError> {
    let outcome = sci_standard_form(a)?;
    let gci = gci_report(a, &outcome);
    let sci = outcome.certificate().is_some();
    let dims = cohomology_dims(a, bound);
    let width = a.top_codegree().max(1) as usize;
    let elliptic_heuristic = dims.len() > width && dims[dims.len() - width..].iter().all(|&d| d == 0);
    let pure = a.is_pure();
    Ok(ClassificationReport {
        regular: classify_regular(a),
        sci,
        gci: gci.gci,
        eci: sci,
        zci: sci && pure,
        pure,
        even_cocycle_only: a.even_cocycle_only(),
        elliptic_heuristic,
        noetherian: sci,
        codimension: outcome.certificate().map(|c| c.codimension),
        growth: gci.growth,
        gorenstein_shift: outcome.certificate().map(gorenstein_shift),
        outcome,
        gci_reasoning: gci.reasoning,
    })
}
