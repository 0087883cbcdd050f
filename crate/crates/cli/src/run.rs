//! Command orchestration: model text in, [`Report`] out.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use sullivan_core::classify::{
    classify, replay_sci, sci_standard_form, HurewiczObstruction, SciCertificate, SciOutcome, SciStep,
};
use sullivan_core::cohomology::{cohomology, presentation};
use sullivan_core::random::{random_homogeneous, random_model, ModelShape};
use sullivan_core::series::{
    functional_check, growth_degree, hilbert_series, hochschild_series_prediction, loop_homology_series,
    rational_fit, DualityVerdict, LaurentPoly, RationalSeriesForm, SeriesError,
};
use sullivan_core::unravel::{nci_unravel, verify_certificate, NciMove};
use sullivan_core::{Generator, SullivanAlgebra};
use thiserror::Error;

use crate::parse::{parse_model, ParseError};
use crate::report::{digest, form_value, rational_function_value, series_value, Report, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Cohomology,
    Hilbert,
    Presentation,
    Classify,
    StandardForm,
    Unravel,
    LoopHomology,
    Duality,
    HochschildPredict,
    Verify,
}

impl Command {
    pub const ALL: [Command; 10] = [
        Command::Cohomology,
        Command::Hilbert,
        Command::Presentation,
        Command::Classify,
        Command::StandardForm,
        Command::Unravel,
        Command::LoopHomology,
        Command::Duality,
        Command::HochschildPredict,
        Command::Verify,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Cohomology => "cohomology",
            Command::Hilbert => "hilbert",
            Command::Presentation => "presentation",
            Command::Classify => "classify",
            Command::StandardForm => "standard-form",
            Command::Unravel => "unravel",
            Command::LoopHomology => "loop-homology",
            Command::Duality => "duality",
            Command::HochschildPredict => "hochschild-predict",
            Command::Verify => "verify",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown command {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Denominator {
    /// Base codegrees of the standard form when it exists, else the even
    /// generator codegrees.
    Auto,
    List(Vec<u32>),
}

impl FromStr for Denominator {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "auto" {
            return Ok(Denominator::Auto);
        }
        s.split(',')
            .map(|p| match p.trim().parse::<u32>() {
                Ok(d) if d > 0 => Ok(d),
                _ => Err(format!("invalid denominator degree {p:?}")),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Denominator::List)
    }
}

impl fmt::Display for Denominator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Denominator::Auto => f.write_str("auto"),
            Denominator::List(ds) => {
                let parts: Vec<String> = ds.iter().map(u32::to_string).collect();
                f.write_str(&parts.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Options {
    pub max_codegree: u32,
    pub max_degree: u32,
    pub denominator: Denominator,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_codegree: 24,
            max_degree: 24,
            denominator: Denominator::Auto,
            seed: 0,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

fn internal(e: impl fmt::Display) -> CliError {
    CliError::Internal(e.to_string())
}

struct Out {
    status: Status,
    results: serde_json::Map<String, Value>,
    warnings: Vec<String>,
}

impl Out {
    fn new() -> Self {
        Out {
            status: Status::Ok,
            results: serde_json::Map::new(),
            warnings: Vec::new(),
        }
    }

    fn set(&mut self, key: &str, v: Value) {
        self.results.insert(key.to_string(), v);
    }

    fn summary(&mut self, s: impl Into<String>) {
        self.set("summary", Value::String(s.into()));
    }

    /// Keeps the most severe status seen.
    fn demote(&mut self, s: Status) {
        let rank = |s: Status| match s {
            Status::Ok => 0,
            Status::Inconclusive => 1,
            Status::Refusal => 2,
            Status::Failed => 3,
        };
        if rank(s) > rank(self.status) {
            self.status = s;
        }
    }
}

pub fn run(command: Command, text: &str, opts: &Options) -> Result<Report, CliError> {
    let model = parse_model(text)?;
    let a = &model.algebra;
    let mut out = Out::new();
    match command {
        Command::Cohomology => run_cohomology(a, opts, &mut out),
        Command::Hilbert => run_hilbert(a, opts, &mut out)?,
        Command::Presentation => run_presentation(a, opts, &mut out)?,
        Command::Classify => run_classify(a, opts, &mut out)?,
        Command::StandardForm => run_standard_form(a, opts, &mut out)?,
        Command::Unravel => run_unravel(a, &mut out),
        Command::LoopHomology => run_loop(a, opts, &mut out),
        Command::Duality => run_duality(a, opts, &mut out)?,
        Command::HochschildPredict => run_hochschild(a, opts, &mut out)?,
        Command::Verify => run_verify(a, opts, &mut out)?,
    }
    let mut parameters = BTreeMap::new();
    parameters.insert("algebra".to_string(), json!(model.name));
    parameters.insert("max_codegree".to_string(), json!(opts.max_codegree));
    parameters.insert("max_degree".to_string(), json!(opts.max_degree));
    parameters.insert("denominator".to_string(), json!(opts.denominator.to_string()));
    parameters.insert("seed".to_string(), json!(opts.seed));
    Ok(Report {
        command: command.name().to_string(),
        input_digest: digest(text),
        status: out.status,
        parameters,
        results: Value::Object(out.results),
        warnings: out.warnings,
    })
}

fn gens_value(gens: &[Generator]) -> Value {
    Value::Array(gens.iter().map(|g| json!({ "name": g.name(), "codegree": g.codegree() })).collect())
}

fn dims_text(dims: &[usize]) -> String {
    dims.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn run_cohomology(a: &SullivanAlgebra, opts: &Options, out: &mut Out) {
    let table = cohomology(a, opts.max_codegree);
    let dims = table.dims();
    let mut classes = serde_json::Map::new();
    for n in 0..=opts.max_codegree {
        let reps = table.representatives(n);
        if !reps.is_empty() {
            classes.insert(n.to_string(), Value::Array(reps.iter().map(|p| json!(p.to_string())).collect()));
        }
    }
    out.summary(format!("dims 0..{}: {}", opts.max_codegree, dims_text(&dims)));
    out.set("dims", json!(dims));
    out.set("representatives", Value::Object(classes));
    out.set("hilbert_series", series_value(&hilbert_series(&table)));
    out.warnings.push(format!("truncated at codegree {}", opts.max_codegree));
}

fn auto_denominators(a: &SullivanAlgebra) -> Result<Vec<u32>, CliError> {
    Ok(match sci_standard_form(a).map_err(internal)? {
        SciOutcome::Certificate(c) => c.base.iter().map(Generator::codegree).collect(),
        SciOutcome::Obstruction(_) => a.even_generators().map(Generator::codegree).collect(),
    })
}

fn denominators(a: &SullivanAlgebra, opts: &Options) -> Result<Vec<u32>, CliError> {
    match &opts.denominator {
        Denominator::Auto => auto_denominators(a),
        Denominator::List(ds) => Ok(ds.clone()),
    }
}

fn series_failure(out: &mut Out, what: &str, e: &SeriesError) {
    let status = match e {
        SeriesError::Refused(_) => Status::Refusal,
        _ => Status::Inconclusive,
    };
    out.demote(status);
    out.warnings.push(format!("{what}: {e}"));
}

/// Fits the Hilbert series of `H^*(a)` over the chosen denominators.
fn hilbert_fit(a: &SullivanAlgebra, opts: &Options, out: &mut Out) -> Result<Option<RationalSeriesForm>, CliError> {
    let table = cohomology(a, opts.max_codegree);
    let series = hilbert_series(&table);
    let ds = denominators(a, opts)?;
    out.set("hilbert_series", series_value(&series));
    out.set("denominator_degrees", json!(ds));
    match rational_fit(&series, &ds) {
        Ok(form) => {
            out.set("closed_form", form_value(&form));
            out.set("pole_order", json!(form.pole_order_at_one()));
            Ok(Some(form))
        }
        Err(e) => {
            series_failure(out, "rational fit", &e);
            Ok(None)
        }
    }
}

fn run_hilbert(a: &SullivanAlgebra, opts: &Options, out: &mut Out) -> Result<(), CliError> {
    match hilbert_fit(a, opts, out)? {
        Some(form) => out.summary(format!("p(t) = {form}")),
        None => out.summary("no closed form in the window"),
    }
    Ok(())
}

fn run_presentation(a: &SullivanAlgebra, opts: &Options, out: &mut Out) -> Result<(), CliError> {
    let table = cohomology(a, opts.max_codegree);
    let p = presentation(&table, opts.max_codegree).map_err(internal)?;
    let gens: Vec<Value> = p
        .generators
        .iter()
        .map(|g| json!({ "name": g.name, "codegree": g.codegree, "representative": g.representative.to_string() }))
        .collect();
    let rels: Vec<Value> = p
        .relations
        .iter()
        .map(|r| json!({ "codegree": r.codegree, "relation": r.poly.to_string(), "implicit": r.implicit }))
        .collect();
    let names: Vec<String> = p.generators.iter().map(|g| format!("{}_{}", g.name, g.codegree)).collect();
    let explicit: Vec<String> = p.explicit_relations().map(|r| r.poly.to_string()).collect();
    out.summary(format!(
        "generators {}; relations {}; {}",
        names.join(", "),
        if explicit.is_empty() { "none".to_string() } else { explicit.join(", ") },
        if p.stable { "stable" } else { "unstable" }
    ));
    out.set("generators", Value::Array(gens));
    out.set("relations", Value::Array(rels));
    out.set("stable", json!(p.stable));
    out.set("window", json!(p.window));
    out.warnings.push(format!(
        "stability is a heuristic: no new generators or relations in the top {} codegrees below {}",
        p.window, p.max_codegree
    ));
    if !p.stable {
        out.warnings.push("presentation is unstable in the window".to_string());
    }
    Ok(())
}

fn certificate_value(cert: &SciCertificate) -> Value {
    let steps: Vec<Value> = cert
        .steps
        .iter()
        .map(|s| match s {
            SciStep::StripOdd { generator, codegree } => {
                json!({ "move": "strip_odd", "generator": generator, "codegree": codegree })
            }
            SciStep::StripEven { generator, codegree, shift } => json!({
                "move": "strip_even",
                "generator": generator,
                "codegree": codegree,
                "shift": shift.to_string(),
            }),
        })
        .collect();
    json!({
        "kind": "sci_certificate",
        "steps": steps,
        "base": gens_value(&cert.base),
        "fibre": gens_value(&cert.fibre),
        "codimension": cert.codimension,
        "normal_form": cert.normal_form.describe(),
    })
}

fn obstruction_value(o: &HurewiczObstruction, a: &SullivanAlgebra) -> Value {
    json!({
        "kind": "hurewicz_obstruction",
        "generator": o.generator,
        "codegree": o.codegree,
        "differential": o.differential.to_string(),
        "refusal": { "codegree": o.refusal.codegree, "weights": o.refusal.weights.to_string() },
        "verified": o.verify(a),
    })
}

fn obstruction_summary(o: &HurewiczObstruction) -> String {
    format!("not sci; obstruction at {} (d{}={})", o.generator, o.generator, o.differential)
}

fn run_classify(a: &SullivanAlgebra, opts: &Options, out: &mut Out) -> Result<(), CliError> {
    let r = classify(a, opts.max_codegree).map_err(internal)?;
    let labels = json!({
        "regular": r.regular,
        "sci": r.sci,
        "gci": r.gci,
        "eci": r.eci,
        "zci": r.zci,
        "pure": r.pure,
        "even_cocycle_only": r.even_cocycle_only,
        "noetherian": r.noetherian,
        "elliptic_heuristic": r.elliptic_heuristic,
    });
    out.set("labels", labels);
    out.set("codimension", json!(r.codimension));
    out.set("gorenstein_shift", json!(r.gorenstein_shift));
    out.set(
        "loop_growth_degree",
        r.growth.as_ref().map_or(Value::Null, |g| json!(g.growth_degree)),
    );
    out.set("gci_reasoning", json!(r.gci_reasoning));
    out.warnings.push(format!(
        "elliptic label is a heuristic: cohomology vanishing in the top window below codegree {}",
        opts.max_codegree
    ));
    match &r.outcome {
        SciOutcome::Certificate(cert) => {
            out.summary(format!(
                "sci of codimension {}; base {}; fibre {}",
                cert.codimension,
                names(&cert.base),
                names(&cert.fibre)
            ));
            out.set("outcome", certificate_value(cert));
        }
        SciOutcome::Obstruction(o) => {
            out.summary(obstruction_summary(o));
            out.set("outcome", obstruction_value(o, a));
            out.demote(Status::Refusal);
        }
    }
    if r.growth.is_none() {
        out.warnings.push("loop growth not detected in the window".to_string());
    }
    Ok(())
}

fn names(gens: &[Generator]) -> String {
    let parts: Vec<&str> = gens.iter().map(Generator::name).collect();
    format!("{{{}}}", parts.join(", "))
}

fn run_standard_form(a: &SullivanAlgebra, opts: &Options, out: &mut Out) -> Result<(), CliError> {
    match sci_standard_form(a).map_err(internal)? {
        SciOutcome::Certificate(cert) => {
            let replayed = replay_sci(a, &cert, opts.max_codegree).map_err(internal)?;
            out.summary(format!(
                "standard form: base {}, fibre {}, codimension {}",
                names(&cert.base),
                names(&cert.fibre),
                cert.codimension
            ));
            out.set("certificate", certificate_value(&cert));
            out.set("replayed", json!(replayed));
            if !replayed {
                out.demote(Status::Failed);
            }
        }
        SciOutcome::Obstruction(o) => {
            out.summary(obstruction_summary(&o));
            out.set("obstruction", obstruction_value(&o, a));
            out.demote(Status::Refusal);
        }
    }
    Ok(())
}

fn move_value(m: &NciMove) -> Value {
    match m {
        NciMove::AdjoinOdd { name, codegree, differential } => json!({
            "move": "adjoin_odd", "name": name, "codegree": codegree, "differential": differential.to_string(),
        }),
        NciMove::QuotientEven { name, codegree } => {
            json!({ "move": "quotient_even", "name": name, "codegree": codegree })
        }
        NciMove::DropOdd { name, codegree } => json!({ "move": "drop_odd", "name": name, "codegree": codegree }),
        NciMove::ChangeOfVariables { name, codegree, shift } => json!({
            "move": "change_of_variables", "name": name, "codegree": codegree, "shift": shift.to_string(),
        }),
    }
}

fn run_unravel(a: &SullivanAlgebra, out: &mut Out) {
    match nci_unravel(a) {
        Ok(cert) => {
            let check = verify_certificate(a, &cert);
            out.summary(format!(
                "nci certificate of length bound {} with final codimension {}",
                cert.length_bound, cert.final_codimension
            ));
            out.set("moves", Value::Array(cert.moves.iter().map(move_value).collect()));
            out.set("length_bound", json!(cert.length_bound));
            out.set("final_codimension", json!(cert.final_codimension));
            out.set("final_algebra", json!(cert.final_algebra.describe()));
            out.set("verified", json!(check.is_valid()));
            if !check.is_valid() {
                out.warnings.push(format!("certificate replay failed: {check:?}"));
                out.demote(Status::Failed);
            }
        }
        Err(e) => {
            out.summary("unravelling did not finish");
            out.warnings.push(e.to_string());
            out.demote(Status::Inconclusive);
        }
    }
}

fn run_loop(a: &SullivanAlgebra, opts: &Options, out: &mut Out) {
    let series = loop_homology_series(a, opts.max_degree);
    out.set("series", series_value(&series));
    out.set("odd_generators", json!(a.odd_count()));
    match growth_degree(&series) {
        Ok(g) => {
            out.summary(format!(
                "growth degree {} (period {}, power {}); dim V^odd - 1 = {}",
                g.growth_degree,
                g.period,
                g.power,
                a.odd_count() as i64 - 1
            ));
            out.set(
                "growth",
                json!({ "degree": g.growth_degree, "period": g.period, "power": g.power, "numerator": crate::report::poly_triples(&g.numerator) }),
            );
        }
        Err(e) => {
            out.summary("growth not detected in the window");
            series_failure(out, "growth", &e);
        }
    }
}

fn run_duality(a: &SullivanAlgebra, opts: &Options, out: &mut Out) -> Result<(), CliError> {
    let Some(form) = hilbert_fit(a, opts, out)? else {
        out.summary("no closed form in the window; duality not checked");
        return Ok(());
    };
    let verdict = functional_check(&form);
    out.set("r", json!(verdict.r()));
    match &verdict {
        DualityVerdict::Gorenstein { r, a: shift } => {
            out.summary(format!("Gorenstein: defect 0, r={r}, a={shift}"));
            out.set("verdict", json!({ "kind": "gorenstein", "defect": 0, "r": r, "a": shift }));
        }
        DualityVerdict::DefectOne { r, a: shift, delta, printed_form_holds } => {
            let reflected = delta.reflect();
            let sign = if (r - 1) % 2 == 0 { 1 } else { -1 };
            let twist = LaurentPoly::from_ints(&[(r - 1 - shift, sign)]);
            let holds = reflected == delta.mul_poly(&twist);
            out.summary(format!("defect 1, r={r}, a={shift}, delta={delta}"));
            out.set(
                "verdict",
                json!({
                    "kind": "defect_one",
                    "defect": 1,
                    "r": r,
                    "a": shift,
                    "delta": rational_function_value(delta),
                    "delta_reflection": format!("delta(1/t) = {} delta(t)", twist),
                    "delta_reflection_holds": holds,
                    "t_pow_a_form_holds": printed_form_holds,
                }),
            );
            if !printed_form_holds {
                out.warnings.push(format!(
                    "delta satisfies the reflection with t^{} but not with t^{}",
                    r - 1 - shift,
                    r - 1 + shift
                ));
            }
            if !holds {
                out.demote(Status::Failed);
            }
        }
        DualityVerdict::NoDuality { r, scanned } => {
            out.summary(format!("no functional equation of defect at most 1 (r={r})"));
            out.set("verdict", json!({ "kind": "none", "r": r, "scanned": [scanned.0, scanned.1] }));
            out.demote(Status::Refusal);
        }
    }
    Ok(())
}

fn run_hochschild(a: &SullivanAlgebra, opts: &Options, out: &mut Out) -> Result<(), CliError> {
    let cert = match sci_standard_form(a).map_err(internal)? {
        SciOutcome::Certificate(c) => c,
        SciOutcome::Obstruction(o) => {
            out.summary(obstruction_summary(&o));
            out.set("obstruction", obstruction_value(&o, a));
            out.demote(Status::Refusal);
            return Ok(());
        }
    };
    let Some(px) = hilbert_fit(a, opts, out)? else {
        out.summary("no closed form for p_X in the window");
        return Ok(());
    };
    let spheres: Vec<u32> = cert.fibre.iter().map(Generator::codegree).collect();
    match hochschild_series_prediction(&px, &spheres) {
        Ok(pred) => {
            out.summary(format!("HH series = {pred}"));
            out.set("sphere_codegrees", json!(spheres));
            out.set("prediction", form_value(&pred));
            out.set("prediction_series", series_value(&pred.expand(opts.max_degree as i64)));
        }
        Err(e) => {
            out.summary("prediction not available");
            series_failure(out, "prediction", &e);
        }
    }
    Ok(())
}

/// Randomized identities on seeded models; returns the number of failures.
fn self_tests(seed: u64, cases: usize) -> (usize, Vec<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for case in 0..cases {
        let a = random_model(&mut rng, ModelShape::default());
        let x = random_homogeneous(&mut rng, a.universe(), (case % 7) as u32 + 2, 3);
        let y = random_homogeneous(&mut rng, a.universe(), (case % 5) as u32 + 2, 3);
        let d = |p| a.extend_differential(p).expect("same universe");
        if !a.validate().is_valid() {
            failures.push(format!("case {case}: generated model invalid"));
        }
        let dx = d(&x);
        if !d(&dx).is_zero() {
            failures.push(format!("case {case}: d^2 != 0"));
        }
        let sign = if x.is_odd() { -1 } else { 1 };
        let rhs = &(&dx * &y) + &(&x * &d(&y)).scale(&sullivan_core::gca::rat(sign));
        if d(&(&x * &y)) != rhs {
            failures.push(format!("case {case}: Leibniz rule"));
        }
        match (sci_standard_form(&a), sci_standard_form(&a)) {
            (Ok(p), Ok(q)) if p == q => match &p {
                SciOutcome::Certificate(c) => {
                    if !replay_sci(&a, c, 12).unwrap_or(false) {
                        failures.push(format!("case {case}: standard form does not replay"));
                    }
                }
                SciOutcome::Obstruction(o) => {
                    if !o.verify(&a) {
                        failures.push(format!("case {case}: obstruction does not verify"));
                    }
                }
            },
            _ => failures.push(format!("case {case}: standard form not deterministic")),
        }
    }
    (cases, failures)
}

pub const SELF_TEST_CASES: usize = 64;

fn run_verify(a: &SullivanAlgebra, opts: &Options, out: &mut Out) -> Result<(), CliError> {
    let report = a.validate();
    out.set(
        "validation",
        json!({
            "d_squared_zero": report.d_squared_zero,
            "minimal": report.minimal,
            "simply_connected": report.simply_connected,
            "pure": report.pure,
            "even_cocycle_only": report.even_cocycle_only,
        }),
    );
    let mut checks = Vec::new();
    match sci_standard_form(a).map_err(internal)? {
        SciOutcome::Certificate(c) => {
            let ok = replay_sci(a, &c, opts.max_codegree).map_err(internal)?;
            checks.push(json!({ "kind": "sci_replay", "holds": ok }));
        }
        SciOutcome::Obstruction(o) => {
            checks.push(json!({ "kind": "obstruction_refusal", "holds": o.verify(a) }));
        }
    }
    match nci_unravel(a) {
        Ok(cert) => {
            let ok = verify_certificate(a, &cert).is_valid();
            checks.push(json!({ "kind": "nci_replay", "holds": ok }));
        }
        Err(e) => out.warnings.push(format!("unravelling did not finish: {e}")),
    }
    let (cases, failures) = self_tests(opts.seed, SELF_TEST_CASES);
    let all_hold = report.is_valid()
        && checks.iter().all(|c| c["holds"] == json!(true))
        && failures.is_empty();
    out.summary(if all_hold {
        format!("all checks hold ({} certificate checks, {cases} randomized cases)", checks.len())
    } else {
        "some checks failed".to_string()
    });
    out.set("certificate_checks", Value::Array(checks));
    out.set("self_tests", json!({ "seed": opts.seed, "cases": cases, "failures": failures }));
    if !all_hold {
        out.demote(Status::Failed);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const NON_NOETHERIAN: &str = "algebra X\ngen v 2\ngen x 3\ngen w 4\nd w = v*x\n";
    const SQUARES: &str = "algebra S\ngen u 2\ngen v 2\ngen y 3\ngen z 3\nd y = u^2\nd z = u*v\n";

    #[test]
    fn command_names_round_trip() {
        for c in Command::ALL {
            assert_eq!(c.name().parse::<Command>().unwrap(), c);
        }
        assert!("frobnicate".parse::<Command>().is_err());
    }

    #[test]
    fn denominator_flag() {
        assert_eq!("auto".parse::<Denominator>().unwrap(), Denominator::Auto);
        assert_eq!("2,4".parse::<Denominator>().unwrap(), Denominator::List(vec![2, 4]));
        assert!("2,0".parse::<Denominator>().is_err());
        assert!("x".parse::<Denominator>().is_err());
    }

    #[test]
    fn classify_refuses_with_an_obstruction() {
        let r = run(Command::Classify, NON_NOETHERIAN, &Options::default()).unwrap();
        assert_eq!(r.status, Status::Refusal);
        assert_eq!(r.results["summary"], "not sci; obstruction at w (dw=v*x)");
        assert_eq!(r.results["outcome"]["verified"], true);
    }

    #[test]
    fn duality_on_the_squares_fibration() {
        let opts = Options { max_codegree: 30, ..Options::default() };
        let r = run(Command::Duality, SQUARES, &opts).unwrap();
        assert_eq!(r.status, Status::Ok);
        let v = &r.results["verdict"];
        assert_eq!(v["defect"], 1);
        assert_eq!(v["r"], 1);
        assert_eq!(v["a"], -4);
        assert_eq!(v["delta"]["numerator"], json!([[-2, 1, 1]]));
        assert_eq!(v["delta_reflection_holds"], true);
    }

    #[test]
    fn input_errors_are_distinct() {
        let err = run(Command::Cohomology, "algebra X\ngen v 2\ngen w 3\nd w = v\n", &Options::default()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn hochschild_prediction_divides_by_sphere_factors() {
        let r = run(Command::HochschildPredict, SQUARES, &Options::default()).unwrap();
        assert_eq!(r.status, Status::Ok);
        assert_eq!(r.results["sphere_codegrees"], json!([3, 3]));
        assert_eq!(r.results["prediction"]["denominator_degrees"], json!([2, 2, 2, 2]));
    }

    #[test]
    fn verify_passes_on_a_valid_model() {
        let r = run(Command::Verify, SQUARES, &Options { seed: 5, ..Options::default() }).unwrap();
        assert_eq!(r.status, Status::Ok, "{:?}", r.results);
    }
}
