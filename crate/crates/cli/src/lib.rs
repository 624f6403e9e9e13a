//! Pipeline driver behind the `hyperpic` binary.
//!
//! [`run`] turns a [`RunConfig`] into a [`Document`]; [`emit`] renders it as
//! text or JSON. Exit codes: 0 certified, 1 certified negative,
//! 2 inconclusive, 3 input error.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use hyperpic_core::cech::{hypersurface_o_cohomology_dims, truncated_cohomology_dim};
use hyperpic_core::ideals::{check_hypotheses, Check, GroebnerConfig, HypothesisReport};
use hyperpic_core::obstruction::{
    deformation_report, functional_monomial, k3_kernel, obstruction_certificate, Deformation,
    PicReport, ReportOptions, Scenario, Verdict, GENERATOR_FORMULA,
};
use hyperpic_core::poly::rational_string;
use hyperpic_core::tangent::{is_cocycle_mod_euler, generating_field, tangency_check, truncated_h_tangent};
use hyperpic_core::{cech::CechIndex, Error, HomogeneousPoly, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Check,
    Cohomology,
    Obstruct,
    K3,
    Report,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Check => "check",
            Mode::Cohomology => "cohomology",
            Mode::Obstruct => "obstruct",
            Mode::K3 => "k3",
            Mode::Report => "report",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Deformation used by report mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ReportScenario {
    /// The generating deformation of the hypersurface.
    Generator,
    /// The trivial deformation of the hypersurface.
    Zero,
    /// `Pⁿ` with the trivial extension by `O(twist)` shifted `shift` degrees.
    TrivialExtension,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Certified,
    Negative,
    Inconclusive,
    InputError,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Certified => 0,
            Outcome::Negative => 1,
            Outcome::Inconclusive => 2,
            Outcome::InputError => 3,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub n: Option<usize>,
    pub poly: Option<String>,
    pub mode: Mode,
    pub m: i64,
    pub bound: Option<usize>,
    pub format: Format,
    pub step_cap: usize,
    pub assume_pic_z: bool,
    pub scenario: ReportScenario,
    /// Rational multiple of the generator, e.g. `3/2`.
    pub scale: Option<String>,
    pub twist: i64,
    pub shift: usize,
    pub timings: bool,
}

impl RunConfig {
    pub fn new(mode: Mode) -> Self {
        RunConfig {
            n: None,
            poly: None,
            mode,
            m: 1,
            bound: None,
            format: Format::Text,
            step_cap: GroebnerConfig::default().step_cap,
            assume_pic_z: false,
            scenario: ReportScenario::Generator,
            scale: None,
            twist: -3,
            shift: 1,
            timings: false,
        }
    }

    pub fn bound(&self) -> usize {
        self.bound.unwrap_or(match self.mode {
            Mode::K3 => 4,
            _ => 2,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDoc {
    pub n: usize,
    pub polynomial: Option<String>,
    pub degree: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesesDoc {
    pub degree_ok: bool,
    pub cover_ok: bool,
    /// `null` when Buchberger hit its step cap.
    pub smooth_ok: Option<bool>,
    pub n_ok: bool,
    pub notes: Vec<String>,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedDoc {
    pub dim: usize,
    pub stabilized: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyDoc {
    pub bound: usize,
    /// `h^q(O_X)` from the closed form.
    pub structure_sheaf: BTreeMap<usize, u64>,
    /// `h^q(O_X)` from the truncated Čech complex.
    pub structure_sheaf_truncated: BTreeMap<usize, TruncatedDoc>,
    /// `h^q(T_X)` from the truncated double complex.
    pub tangent_truncated: BTreeMap<usize, TruncatedDoc>,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionDoc {
    pub m: i64,
    pub functional_value: String,
    pub reference_value: String,
    pub verdict: String,
    pub generator_formula: String,
    pub generator_tangent: bool,
    pub generator_cocycle_mod_euler: bool,
    pub functional_monomial: String,
    pub top_entry: String,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct K3Doc {
    pub h1: usize,
    pub kernel: usize,
    pub rank: usize,
    pub bound: usize,
    pub stabilized: bool,
    pub complete: bool,
    pub pairing_values: Vec<String>,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PremiseDoc {
    pub statement: String,
    pub status: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub mode: Mode,
    pub outcome: Outcome,
    pub exit_code: i32,
    pub input: Option<InputDoc>,
    pub hypotheses: Option<HypothesesDoc>,
    pub cohomology: Option<CohomologyDoc>,
    pub obstruction: Option<ObstructionDoc>,
    pub k3: Option<K3Doc>,
    pub pic_conclusion: Option<String>,
    pub premises: Vec<PremiseDoc>,
    pub messages: Vec<String>,
    /// Empty unless timings were requested, so documents stay reproducible.
    pub timings_ms: BTreeMap<String, u64>,
}

impl Document {
    fn new(mode: Mode) -> Self {
        Document {
            mode,
            outcome: Outcome::Certified,
            exit_code: 0,
            input: None,
            hypotheses: None,
            cohomology: None,
            obstruction: None,
            k3: None,
            pic_conclusion: None,
            premises: Vec::new(),
            messages: Vec::new(),
            timings_ms: BTreeMap::new(),
        }
    }

    /// A document carrying only an input error.
    pub fn input_error(mode: Mode, message: impl Into<String>) -> Self {
        let mut doc = Document::new(mode);
        doc.finish(Outcome::InputError, Some(message.into()));
        doc
    }

    fn finish(&mut self, outcome: Outcome, message: Option<String>) {
        self.outcome = outcome;
        self.exit_code = outcome.exit_code();
        self.messages.extend(message);
    }
}

struct Clock {
    enabled: bool,
    laps: BTreeMap<String, u64>,
}

impl Clock {
    fn time<T>(&mut self, label: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        if self.enabled {
            self.laps
                .insert(label.to_string(), start.elapsed().as_millis() as u64);
        }
        out
    }
}

/// Stops the pipeline with a finished document.
struct Halt(Outcome, String);

impl From<Error> for Halt {
    fn from(e: Error) -> Self {
        let outcome = match e {
            Error::Syntax { .. }
            | Error::VariableOutOfRange { .. }
            | Error::RingMismatch { .. }
            | Error::NotHomogeneous
            | Error::InvalidInput(_)
            | Error::Inadmissible { .. } => Outcome::InputError,
            Error::CoverViolated | Error::WrongDegree { .. } | Error::Hypothesis(_) => {
                Outcome::Negative
            }
            Error::ResourceLimit { .. } | Error::Inconsistent(_) => Outcome::Inconclusive,
        };
        Halt(outcome, e.to_string())
    }
}

/// Runs the pipeline selected by `config.mode`.
pub fn run(config: &RunConfig) -> Document {
    let mut doc = Document::new(config.mode);
    let mut clock = Clock {
        enabled: config.timings,
        laps: BTreeMap::new(),
    };
    let result = pipeline(config, &mut doc, &mut clock);
    match result {
        Ok(outcome) => doc.finish(outcome, None),
        Err(Halt(outcome, message)) => doc.finish(outcome, Some(message)),
    }
    doc.timings_ms = clock.laps;
    doc
}

fn pipeline(config: &RunConfig, doc: &mut Document, clock: &mut Clock) -> Result<Outcome, Halt> {
    let Some(n) = config.n else {
        return Err(Halt(Outcome::InputError, "--n is required".into()));
    };
    let groebner = GroebnerConfig {
        step_cap: config.step_cap,
        ..GroebnerConfig::default()
    };
    if config.mode == Mode::Report && !config.assume_pic_z {
        return Err(Halt(
            Outcome::InputError,
            "report mode needs --assume-pic-z to accept Pic = Z for the truncation".into(),
        ));
    }
    if config.mode == Mode::Report && config.scenario == ReportScenario::TrivialExtension {
        doc.input = Some(InputDoc {
            n,
            polynomial: None,
            degree: None,
        });
        let scenario = Scenario::TrivialExtension {
            n,
            twist: config.twist,
            shift: config.shift,
        };
        let report = clock.time("report", || {
            deformation_report(
                &scenario,
                &ReportOptions {
                    assume_pic_z: true,
                    groebner,
                },
            )
        })?;
        return Ok(record_report(doc, &report));
    }

    let Some(text) = config.poly.as_deref() else {
        return Err(Halt(
            Outcome::InputError,
            "a polynomial is required (--poly or --poly-file)".into(),
        ));
    };
    let f = HomogeneousPoly::parse(text, n)?;
    doc.input = Some(InputDoc {
        n,
        polynomial: Some(f.as_poly().to_string()),
        degree: Some(f.degree()),
    });
    let hyp = clock.time("hypotheses", || check_hypotheses(&f, n, &groebner));
    doc.hypotheses = Some(hypotheses_doc(&hyp, &f));
    match hyp.smooth_ok {
        _ if hyp.any_failed() => {
            return Err(Halt(Outcome::Negative, first_failure(&hyp)));
        }
        Check::Inconclusive(ref why) => {
            return Err(Halt(Outcome::Inconclusive, format!("smoothness undecided: {why}")));
        }
        _ => {}
    }

    match config.mode {
        Mode::Check => Ok(Outcome::Certified),
        Mode::Cohomology => cohomology(&f, config.bound(), doc, clock),
        Mode::Obstruct => {
            if n < 4 {
                return Err(Halt(
                    Outcome::Negative,
                    format!("the obstruction certificate needs n ≥ 4, got n = {n}; use --mode k3 for quartic surfaces"),
                ));
            }
            let (ob, verdict) = clock.time("obstruction", || obstruction_doc(&f, config.m))?;
            doc.obstruction = Some(ob);
            Ok(match verdict {
                Verdict::NonzeroClass => Outcome::Certified,
                Verdict::ZeroClass => Outcome::Negative,
                Verdict::Inconclusive => Outcome::Inconclusive,
            })
        }
        Mode::K3 => {
            let k = clock.time("k3", || k3_kernel(&f, config.bound()))?;
            let conclusive = k.conclusive();
            doc.k3 = Some(K3Doc {
                h1: k.h1,
                kernel: k.kernel,
                rank: k.rank,
                bound: k.bound,
                stabilized: k.stabilized,
                complete: k.complete,
                pairing_values: k.pairing_values.iter().map(rational_string).collect(),
                provenance: format!(
                    "truncated double complex of O -> O(1)^4 -> O(4) at bounds {} and {}; tangent cocycles paired with O(1)",
                    k.bound,
                    k.bound + 1
                ),
            });
            Ok(if conclusive {
                Outcome::Certified
            } else {
                Outcome::Inconclusive
            })
        }
        Mode::Report => {
            let deformation = match (config.scenario, config.scale.as_deref()) {
                (ReportScenario::Zero, _) => Deformation::Zero,
                (_, None) => Deformation::Generator,
                (_, Some(s)) => {
                    let c = Rational::from_str(s.trim()).map_err(|_| {
                        Halt(Outcome::InputError, format!("--scale: not a rational number: {s}"))
                    })?;
                    if c == Rational::from_integer(0.into()) {
                        Deformation::Zero
                    } else {
                        Deformation::Scaled(c)
                    }
                }
            };
            if deformation != Deformation::Zero {
                let (ob, _) = clock.time("obstruction", || obstruction_doc(&f, 1))?;
                doc.obstruction = Some(ob);
            }
            let report = clock.time("report", || {
                deformation_report(
                    &Scenario::Hypersurface { f: f.clone(), deformation },
                    &ReportOptions {
                        assume_pic_z: true,
                        groebner,
                    },
                )
            })?;
            Ok(record_report(doc, &report))
        }
    }
}

fn first_failure(h: &HypothesisReport) -> String {
    match h.require() {
        Err(e) => e.to_string(),
        Ok(()) => "hypotheses failed".into(),
    }
}

fn hypotheses_doc(h: &HypothesisReport, f: &HomogeneousPoly) -> HypothesesDoc {
    let mut notes = vec![
        format!("deg F = {}, n + 1 = {}", h.degree, h.n + 1),
        format!(
            "F(1,0,...,0) = {}",
            rational_string(&f.leading_x0_coefficient())
        ),
    ];
    if let Check::Inconclusive(why) = &h.smooth_ok {
        notes.push(format!("smoothness undecided: {why}"));
    }
    HypothesesDoc {
        degree_ok: h.degree_ok,
        cover_ok: h.cover_ok,
        smooth_ok: h.smooth_ok.decided(),
        n_ok: h.n_ok,
        notes,
        provenance: "Jacobian criterion via Buchberger (grevlex); cover from the x0^(n+1) coefficient"
            .into(),
    }
}

fn cohomology(
    f: &HomogeneousPoly,
    bound: usize,
    doc: &mut Document,
    clock: &mut Clock,
) -> Result<Outcome, Halt> {
    let n = f.n();
    let closed = hypersurface_o_cohomology_dims(n, f.degree() as u32)?;
    let mut outcome = Outcome::Certified;
    let mut cdoc = CohomologyDoc {
        bound,
        structure_sheaf: closed.iter().map(|(q, d)| (q, d as u64)).collect(),
        structure_sheaf_truncated: BTreeMap::new(),
        tangent_truncated: BTreeMap::new(),
        provenance: format!(
            "closed form h^q(O_P) + h^(q+1)(O_P(-d)); exact ranks of the Čech complexes truncated at bounds {bound} and {}",
            bound + 1
        ),
    };
    clock.time("cohomology", || -> Result<(), Halt> {
        for q in 0..n {
            let t = truncated_cohomology_dim(f, q, bound)?;
            if !t.stabilized {
                outcome = Outcome::Inconclusive;
            } else if t.dim as u128 != closed.get(q) {
                outcome = Outcome::Inconclusive;
                doc.messages.push(format!(
                    "truncated h^{q}(O_X) = {} differs from the closed form {}",
                    t.dim,
                    closed.get(q)
                ));
            }
            cdoc.structure_sheaf_truncated.insert(
                q,
                TruncatedDoc {
                    dim: t.dim,
                    stabilized: t.stabilized,
                },
            );
            let t = truncated_h_tangent(f, q, bound)?;
            if !t.stabilized {
                outcome = Outcome::Inconclusive;
            }
            cdoc.tangent_truncated.insert(
                q,
                TruncatedDoc {
                    dim: t.dim,
                    stabilized: t.stabilized,
                },
            );
        }
        Ok(())
    })?;
    doc.cohomology = Some(cdoc);
    Ok(outcome)
}

fn obstruction_doc(f: &HomogeneousPoly, m: i64) -> Result<(ObstructionDoc, Verdict), Halt> {
    let n = f.n();
    let generator = generating_field(f, n)?;
    let tangent = tangency_check(&generator, f)?;
    let cocycle = is_cocycle_mod_euler(&generator, f)?;
    if !tangent || !cocycle {
        return Err(Halt(
            Outcome::Inconclusive,
            "the generating cochain failed its tangency or cocycle check".into(),
        ));
    }
    let cert = obstruction_certificate(f, n, m)?;
    let doc = ObstructionDoc {
        m,
        functional_value: rational_string(&cert.value),
        reference_value: rational_string(&cert.reference_value),
        verdict: cert.verdict.as_str().into(),
        generator_formula: GENERATOR_FORMULA.into(),
        generator_tangent: tangent,
        generator_cocycle_mod_euler: cocycle,
        functional_monomial: functional_monomial(n),
        top_entry: cert.cochain.entry(&CechIndex::full(n)).to_string(),
        provenance: format!(
            "log pairing of the generating cocycle with α_ij = (x_j/x_i)^(-m), coefficient of {}; linear in m against m = -1",
            functional_monomial(n)
        ),
    };
    Ok((doc, cert.verdict))
}

fn record_report(doc: &mut Document, report: &PicReport) -> Outcome {
    doc.premises = report
        .premises
        .iter()
        .map(|p| PremiseDoc {
            statement: p.statement.clone(),
            status: p.status.as_str().into(),
        })
        .collect();
    doc.pic_conclusion = report.conclusion.map(|g| g.to_string());
    if report.conclusion.is_some() {
        Outcome::Certified
    } else {
        Outcome::Negative
    }
}

pub fn emit(doc: &Document, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("documents always serialize");
            s.push('\n');
            s
        }
        Format::Text => render_text(doc),
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn render_text(doc: &Document) -> String {
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(w, "mode: {}", doc.mode.as_str());
    if let Some(input) = &doc.input {
        match &input.polynomial {
            Some(p) => {
                let _ = writeln!(w, "input: n = {}, F = {p}", input.n);
            }
            None => {
                let _ = writeln!(w, "input: n = {}", input.n);
            }
        }
    }
    if let Some(h) = &doc.hypotheses {
        let smooth = match h.smooth_ok {
            Some(b) => yes(b),
            None => "undecided",
        };
        let _ = writeln!(w, "hypotheses:");
        let _ = writeln!(w, "  degree ok: {}", yes(h.degree_ok));
        let _ = writeln!(w, "  cover ok: {}", yes(h.cover_ok));
        let _ = writeln!(w, "  smooth: {smooth}");
        let _ = writeln!(w, "  n ok: {}", yes(h.n_ok));
        for note in &h.notes {
            let _ = writeln!(w, "  note: {note}");
        }
        let _ = writeln!(w, "  source: {}", h.provenance);
    }
    if let Some(c) = &doc.cohomology {
        let _ = writeln!(w, "cohomology (bound {}):", c.bound);
        for (q, d) in &c.structure_sheaf {
            let t = &c.structure_sheaf_truncated[q];
            let _ = writeln!(
                w,
                "  h^{q}(O_X) = {d} (truncated: {}{})",
                t.dim,
                if t.stabilized { ", stable" } else { ", unstable" }
            );
        }
        for (q, t) in &c.tangent_truncated {
            let _ = writeln!(
                w,
                "  h^{q}(T_X) = {}{}",
                t.dim,
                if t.stabilized { " (stable)" } else { " (unstable)" }
            );
        }
        let _ = writeln!(w, "  source: {}", c.provenance);
    }
    if let Some(o) = &doc.obstruction {
        let _ = writeln!(w, "obstruction of O({}):", o.m);
        let _ = writeln!(
            w,
            "  generator: +-((d0F) d_i - (diF) d_0) over the chart coordinates of each overlap; tangent: {}, cocycle mod Euler: {}",
            yes(o.generator_tangent),
            yes(o.generator_cocycle_mod_euler)
        );
        let _ = writeln!(w, "  paired top entry: {} = -m * {}", o.top_entry, o.generator_formula);
        let _ = writeln!(
            w,
            "  coefficient of {}: {} (m = -1: {})",
            o.functional_monomial, o.functional_value, o.reference_value
        );
        let _ = writeln!(w, "  verdict: {}", o.verdict);
        let _ = writeln!(w, "  source: {}", o.provenance);
    }
    if let Some(k) = &doc.k3 {
        let _ = writeln!(w, "k3 (bound {}):", k.bound);
        let _ = writeln!(
            w,
            "  h^1(T_X) = {}{}",
            k.h1,
            if k.stabilized { " (stable)" } else { " (unstable)" }
        );
        let _ = writeln!(w, "  rank of pairing with O(1) = {}", k.rank);
        let _ = writeln!(w, "  kernel dimension = {}", k.kernel);
        let _ = writeln!(w, "  pairing values: {}", k.pairing_values.join(" "));
        let _ = writeln!(w, "  source: {}", k.provenance);
    }
    if !doc.premises.is_empty() {
        let _ = writeln!(w, "premises:");
        for p in &doc.premises {
            let _ = writeln!(w, "  [{}] {}", p.status, p.statement);
        }
    }
    if let Some(pic) = &doc.pic_conclusion {
        let _ = writeln!(w, "Pic = {pic}");
    }
    for m in &doc.messages {
        let _ = writeln!(w, "message: {m}");
    }
    for (k, v) in &doc.timings_ms {
        let _ = writeln!(w, "time {k}: {v} ms");
    }
    let _ = writeln!(
        w,
        "outcome: {} (exit {})",
        serde_json::to_value(doc.outcome)
            .ok()
            .and_then(|v| v.as_str().map(str::to_string))
            .unwrap_or_default(),
        doc.exit_code
    );
    out
}
