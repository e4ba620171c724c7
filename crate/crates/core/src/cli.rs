//! Command-line front end.
//!
//! Every example in [`HELP_EXAMPLES`] runs as part of the doc tests:
//!
//! ```
//! for line in nsalg::cli::HELP_EXAMPLES.lines() {
//!     let Some(args) = line.trim().strip_prefix("nsalg ") else { continue };
//!     let out = nsalg::cli::run(args.split_whitespace());
//!     assert_eq!(out.code, 0, "`{args}` failed: {}", out.stderr);
//! }
//! ```

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraPair, Representation};
use crate::classify::{classify, CiVerdict, ClassificationReport, Rule};
use crate::error::Error;
use crate::fixtures;
use crate::oracle;
use crate::rat::{parse_list, Rat};
use crate::rectangle::find_rectangles;

pub const HELP_EXAMPLES: &str = "\
Examples:
  nsalg classify -c 16,24 -e 16,24,31,46,44
  nsalg classify -c 22 -e 14,21,22,33 --json
  nsalg classify -c 2,3 -e 4,9 --scale 6
  nsalg apery -c 6 -e 3,5
  nsalg flat -c 9,15,21 -e 5,8,9
  nsalg rectangle -c 12 -e 2,3
  nsalg oracle -c 8 -e 8,9,10,12
  nsalg fixtures --filter flat
";

#[derive(Parser)]
#[command(
    name = "nsalg",
    version,
    about = "Flatness, rectangles and complete-intersection checks for numerical semigroup algebras",
    after_help = HELP_EXAMPLES
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: flatness, rectangles, log matrices and verdict.
    Classify(SpecArgs),
    /// Apéry exponents and minimal monomials.
    Apery(SpecArgs),
    /// Every rectangle formed by the Apéry exponents.
    Rectangle(SpecArgs),
    /// Flatness verdict with a witness when not flat.
    Flat(SpecArgs),
    /// Cross-check the fast paths against brute-force definitions.
    Oracle(SpecArgs),
    /// Run the embedded worked examples.
    Fixtures {
        /// Only run fixtures whose label contains this text.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Classify a line-delimited JSON corpus, one report per line.
    Batch {
        corpus: PathBuf,
        #[arg(long, env = "NSALG_JOBS", default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Args)]
struct SpecArgs {
    /// Coefficient generators, e.g. `2,3` or `3/2,4`.
    #[arg(short = 'c', long, conflicts_with = "input", required_unless_present = "input")]
    coefficient: Option<String>,
    /// Extension generators.
    #[arg(short = 'e', long, conflicts_with = "input", required_unless_present = "input")]
    extension: Option<String>,
    /// Rational `t` with `u = v^t`.
    #[arg(long, default_value = "1", conflicts_with = "input")]
    scale: String,
    #[arg(long, conflicts_with = "input")]
    label: Option<String>,
    /// TOML or JSON file holding an algebra spec.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

/// A rational given either as a string (`"35/2"`) or a bare integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatField {
    Int(i64),
    Text(String),
}

impl RatField {
    fn parse(&self) -> crate::error::Result<Rat> {
        match self {
            RatField::Int(n) => Ok(Rat::integer(*n)),
            RatField::Text(s) => s.parse(),
        }
    }
}

fn default_scale() -> RatField {
    RatField::Text("1".into())
}

/// On-disk description of an algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub coefficient: Vec<RatField>,
    pub extension: Vec<RatField>,
    #[serde(default = "default_scale")]
    pub scale: RatField,
    #[serde(default)]
    pub label: Option<String>,
}

/// A parse or validation failure, with the offending line when known.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecError {
    pub kind: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
}

impl SpecError {
    fn parse(message: String, line: Option<usize>) -> Self {
        SpecError {
            kind: "Parse".into(),
            message,
            line,
        }
    }
}

impl From<Error> for SpecError {
    fn from(e: Error) -> Self {
        SpecError {
            kind: e.kind().into(),
            message: e.to_string(),
            line: None,
        }
    }
}

impl std::fmt::Display for SpecError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl AlgebraSpec {
    pub fn from_json(text: &str) -> Result<Self, SpecError> {
        serde_json::from_str(text).map_err(|e| SpecError::parse(e.to_string(), Some(e.line())))
    }

    pub fn from_toml(text: &str) -> Result<Self, SpecError> {
        toml::from_str(text).map_err(|e| {
            let line = e.span().map(|s| text[..s.start].matches('\n').count() + 1);
            SpecError::parse(e.message().trim().to_string(), line)
        })
    }

    /// Reads a `.toml` file as TOML and anything else as JSON.
    pub fn from_path(path: &Path) -> Result<Self, SpecError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| SpecError::parse(format!("{}: {e}", path.display()), None))?;
        if path.extension().is_some_and(|x| x == "toml") {
            Self::from_toml(&text)
        } else {
            Self::from_json(&text)
        }
    }

    pub fn to_pair(&self) -> Result<AlgebraPair, SpecError> {
        let list = |fields: &[RatField]| fields.iter().map(RatField::parse).collect::<crate::error::Result<Vec<_>>>();
        Ok(AlgebraPair::new(
            &list(&self.coefficient)?,
            &list(&self.extension)?,
            self.scale.parse()?,
        )?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RectangleReport {
    pub sizes: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub det: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nonsingular: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triangular_permutation: Option<Vec<usize>>,
}

/// Machine-readable classification. Exponents are integers on the common
/// scale; divide by `common_scale` to recover the rational exponents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub label: Option<String>,
    pub coefficient: Vec<String>,
    pub extension: Vec<String>,
    pub scale: String,
    pub common_scale: i64,
    pub d: i64,
    pub d_prime: i64,
    pub apery: Vec<i64>,
    pub minimal_monomials: Vec<i64>,
    pub flat: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flat_witness: Option<i64>,
    pub rectangular: bool,
    pub rectangles: Vec<RectangleReport>,
    pub gorenstein_indicator: bool,
    pub ci: CiVerdict,
    pub justification: Vec<Rule>,
}

impl Report {
    pub fn new(label: Option<String>, r: &ClassificationReport) -> Self {
        let strings = |v: &[Rat]| v.iter().map(Rat::to_string).collect();
        Report {
            label,
            coefficient: strings(&r.coefficient),
            extension: strings(&r.extension),
            scale: r.scale.to_string(),
            common_scale: r.common_scale,
            d: r.d,
            d_prime: r.d_prime,
            apery: r.apery.exponents.clone(),
            minimal_monomials: r.minimal_monomials.clone(),
            flat: r.flat.is_flat,
            flat_witness: r.flat.witness.map(|w| w.exponent),
            rectangular: r.is_rectangular(),
            rectangles: r
                .rectangles
                .iter()
                .map(|a| RectangleReport {
                    sizes: a.rectangle.sizes.clone(),
                    matrix: a.matrix.as_ref().map(|m| m.matrix.rows()),
                    t: a.matrix.as_ref().map(|m| m.t.clone()),
                    det: a.matrix.as_ref().map(|m| m.det),
                    nonsingular: a.nonsingular(),
                    triangular_permutation: a.triangular_permutation.clone(),
                })
                .collect(),
            gorenstein_indicator: r.gorenstein_indicator,
            ci: r.ci,
            justification: r.justification.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn invalid(e: &SpecError) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

/// Runs the CLI on `args` (without the program name).
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv = std::iter::once("nsalg".to_string()).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    match cli.command {
        Command::Classify(a) => with_pair(&a, cmd_classify),
        Command::Apery(a) => with_pair(&a, cmd_apery),
        Command::Rectangle(a) => with_pair(&a, cmd_rectangle),
        Command::Flat(a) => with_pair(&a, cmd_flat),
        Command::Oracle(a) => with_pair(&a, cmd_oracle),
        Command::Fixtures { filter, json } => cmd_fixtures(filter.as_deref(), json),
        Command::Batch { corpus, jobs } => cmd_batch(&corpus, jobs),
    }
}

fn spec_from_args(a: &SpecArgs) -> Result<AlgebraSpec, SpecError> {
    if let Some(path) = &a.input {
        return AlgebraSpec::from_path(path);
    }
    let fields = |s: &Option<String>| -> Result<Vec<RatField>, SpecError> {
        let list = parse_list(s.as_deref().unwrap_or_default())?;
        Ok(list.iter().map(|r| RatField::Text(r.to_string())).collect())
    };
    Ok(AlgebraSpec {
        coefficient: fields(&a.coefficient)?,
        extension: fields(&a.extension)?,
        scale: RatField::Text(a.scale.clone()),
        label: a.label.clone(),
    })
}

fn with_pair(a: &SpecArgs, f: fn(&AlgebraSpec, &AlgebraPair, bool) -> Outcome) -> Outcome {
    let spec = match spec_from_args(a) {
        Ok(s) => s,
        Err(e) => return Outcome::invalid(&e),
    };
    match spec.to_pair() {
        Ok(pair) => f(&spec, &pair, a.json),
        Err(e) => Outcome::invalid(&e),
    }
}

fn join(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(", ")
}

fn header(spec: &AlgebraSpec, pair: &AlgebraPair) -> String {
    let gens = |s: &crate::semigroup::NumericalSemigroup| {
        s.given_generators().iter().map(Rat::to_string).collect::<Vec<_>>().join(", ")
    };
    let mut out = String::new();
    if let Some(label) = &spec.label {
        let _ = writeln!(out, "label: {label}");
    }
    let _ = writeln!(
        out,
        "algebra: ⟨{}⟩ over ⟨{}⟩, t = {}",
        gens(pair.extension()),
        gens(pair.coefficient()),
        pair.scale_t()
    );
    let _ = writeln!(
        out,
        "common scale {}: C = ⟨{}⟩, E = ⟨{}⟩, d = {}, d' = {}",
        pair.common_scale(),
        join(pair.coeff_model().minimal_generators()),
        join(pair.ext_model().minimal_generators()),
        pair.d(),
        pair.d_prime()
    );
    out
}

fn rep(r: &Representation) -> String {
    format!("{} + {}", r.coefficient, r.apery)
}

fn cmd_classify(spec: &AlgebraSpec, pair: &AlgebraPair, json: bool) -> Outcome {
    let r = classify(pair);
    if json {
        return Outcome::ok(Report::new(spec.label.clone(), &r).to_json() + "\n");
    }
    let mut out = header(spec, pair);
    let _ = writeln!(out, "apery ({}): {}", r.apery.len(), join(&r.apery.exponents));
    let _ = writeln!(out, "minimal monomials: {}", join(&r.minimal_monomials));
    match &r.flat.witness {
        None => {
            let _ = writeln!(out, "flat: yes ({} = d/d')", r.flat.apery_count);
        }
        Some(w) => {
            let _ = writeln!(
                out,
                "flat: no ({} Apéry, d/d' = {}); {} = {} = {}",
                r.flat.apery_count,
                r.flat.expected_count,
                w.exponent,
                rep(&w.first),
                rep(&w.second)
            );
        }
    }
    let _ = writeln!(out, "rectangles: {}", r.rectangles.len());
    for a in &r.rectangles {
        let shape: Vec<String> = a.rectangle.sizes.iter().map(usize::to_string).collect();
        let _ = write!(out, "  {} on ({})", shape.join("×"), join(&a.rectangle.minimal_monomials));
        match &a.matrix {
            None => {
                let _ = writeln!(out, ", no matrix (not flat)");
            }
            Some(m) => {
                let _ = writeln!(
                    out,
                    ", det {}, {}{}",
                    m.det,
                    if m.is_nonsingular() { "nonsingular" } else { "singular" },
                    match &a.triangular_permutation {
                        Some(p) => format!(", triangular in order {p:?}"),
                        None => String::new(),
                    }
                );
                for line in m.matrix.to_string().lines() {
                    let _ = writeln!(out, "    {line}");
                }
                let _ = writeln!(out, "    t = ({})", join(&m.t));
            }
        }
    }
    let _ = writeln!(
        out,
        "unique maximal Apéry exponent: {}",
        if r.gorenstein_indicator { "yes" } else { "no" }
    );
    let ids: Vec<&str> = r.justification.iter().map(|j| j.id()).collect();
    let _ = writeln!(out, "verdict: {}", r.ci.to_string().to_uppercase());
    let _ = writeln!(out, "rules: {}", ids.join(" "));
    if let Some(reason) = &r.unknown_reason {
        let _ = writeln!(out, "reason: {reason}");
    }
    Outcome::ok(out)
}

fn cmd_apery(spec: &AlgebraSpec, pair: &AlgebraPair, json: bool) -> Outcome {
    let a = pair.apery_set();
    let minimal = pair.minimal_monomials();
    if json {
        let v = serde_json::json!({
            "label": spec.label,
            "common_scale": pair.common_scale(),
            "apery": a.exponents,
            "minimal_monomials": minimal,
            "bound_used": a.bound_used,
        });
        return Outcome::ok(format!("{v}\n"));
    }
    let mut out = header(spec, pair);
    let _ = writeln!(out, "apery ({}): {}", a.len(), join(&a.exponents));
    let _ = writeln!(out, "minimal monomials: {}", join(&minimal));
    Outcome::ok(out)
}

fn cmd_rectangle(spec: &AlgebraSpec, pair: &AlgebraPair, json: bool) -> Outcome {
    let rects = find_rectangles(pair);
    if json {
        let list: Vec<_> = rects
            .iter()
            .map(|r| serde_json::json!({ "sizes": r.sizes, "sides": r.sides() }))
            .collect();
        let v = serde_json::json!({ "label": spec.label, "rectangles": list });
        return Outcome::ok(format!("{v}\n"));
    }
    let mut out = header(spec, pair);
    let _ = writeln!(out, "rectangles: {}", rects.len());
    for r in &rects {
        let sides: Vec<String> = r.sides().iter().map(|s| format!("{{{}}}", join(s))).collect();
        let _ = writeln!(out, "  {}", sides.join(" × "));
    }
    Outcome::ok(out)
}

fn cmd_flat(spec: &AlgebraSpec, pair: &AlgebraPair, json: bool) -> Outcome {
    let v = pair.is_flat();
    let intersection = pair.check_flat_intersection();
    if json {
        let j = serde_json::json!({
            "label": spec.label,
            "flat": v.is_flat,
            "apery_count": v.apery_count,
            "expected_count": v.expected_count,
            "flat_witness": v.witness.map(|w| w.exponent),
            "intersection_condition": intersection,
        });
        return Outcome::ok(format!("{j}\n"));
    }
    let mut out = header(spec, pair);
    let _ = writeln!(
        out,
        "flat: {} ({} Apéry, d/d' = {})",
        if v.is_flat { "yes" } else { "no" },
        v.apery_count,
        v.expected_count
    );
    if let Some(w) = v.witness {
        let _ = writeln!(out, "witness: {} = {} = {}", w.exponent, rep(&w.first), rep(&w.second));
    }
    let _ = writeln!(out, "intersection condition: {}", if intersection { "holds" } else { "fails" });
    Outcome::ok(out)
}

fn cmd_oracle(spec: &AlgebraSpec, pair: &AlgebraPair, json: bool) -> Outcome {
    let mut checks: Vec<(&str, Result<bool, String>)> = Vec::new();
    let bound = oracle::required_bound(pair);
    checks.push((
        "apery",
        oracle::apery_by_definition(pair, bound)
            .map(|a| a == pair.apery_set().exponents)
            .map_err(|e| e.to_string()),
    ));
    checks.push((
        "minimal_monomials",
        Ok(oracle::minimal_monomials_by_definition(pair) == pair.minimal_monomials()),
    ));
    checks.push((
        "flat",
        Ok(oracle::unique_representation_scan(pair).is_none() == pair.is_flat().is_flat),
    ));
    checks.push((
        "rectangles",
        oracle::rectangle_by_exhaustion(pair)
            .map(|r| r == find_rectangles(pair).into_iter().map(|x| x.sizes).collect::<Vec<_>>())
            .map_err(|e| e.to_string()),
    ));
    let agree = checks.iter().all(|(_, r)| matches!(r, Ok(true) | Err(_)));
    let status = |r: &Result<bool, String>| match r {
        Ok(true) => "agree".to_string(),
        Ok(false) => "DISAGREE".to_string(),
        Err(e) => format!("skipped ({e})"),
    };
    let stdout = if json {
        let map: serde_json::Map<String, serde_json::Value> = checks
            .iter()
            .map(|(k, r)| (k.to_string(), serde_json::Value::String(status(r))))
            .collect();
        format!("{}\n", serde_json::json!({ "label": spec.label, "agree": agree, "checks": map }))
    } else {
        let mut out = header(spec, pair);
        for (name, r) in &checks {
            let _ = writeln!(out, "{name}: {}", status(r));
        }
        out
    };
    Outcome {
        code: if agree { 0 } else { 1 },
        stdout,
        stderr: String::new(),
    }
}

fn cmd_fixtures(filter: Option<&str>, json: bool) -> Outcome {
    let results = fixtures::run(filter);
    let failed: Vec<&str> = results.iter().filter(|o| !o.passed).map(|o| o.label.as_str()).collect();
    let stdout = if json {
        serde_json::to_string(&results).expect("outcomes serialize") + "\n"
    } else {
        let mut out = String::new();
        for o in &results {
            let _ = write!(out, "{} {}", if o.passed { "PASS" } else { "FAIL" }, o.label);
            if let Some(d) = &o.detail {
                let _ = write!(out, ": {d}");
            }
            out.push('\n');
        }
        let _ = writeln!(out, "{} passed, {} failed", results.len() - failed.len(), failed.len());
        out
    };
    if failed.is_empty() {
        Outcome::ok(stdout)
    } else {
        Outcome {
            code: 1,
            stdout,
            stderr: format!("failing fixtures: {}\n", failed.join(", ")),
        }
    }
}

/// One output line of a batch run.
pub fn batch_line(line_no: usize, text: &str) -> (String, Option<CiVerdict>) {
    let result = AlgebraSpec::from_json(text)
        .map_err(|e| SpecError { line: Some(line_no), ..e })
        .and_then(|spec| {
            let pair = spec.to_pair().map_err(|e| SpecError { line: Some(line_no), ..e })?;
            Ok(Report::new(spec.label, &classify(&pair)))
        });
    match result {
        Ok(report) => (report.to_json(), Some(report.ci)),
        Err(e) => (serde_json::json!({ "line": line_no, "error": e }).to_string(), None),
    }
}

fn cmd_batch(corpus: &Path, jobs: usize) -> Outcome {
    let text = match std::fs::read_to_string(corpus) {
        Ok(t) => t,
        Err(e) => {
            return Outcome::invalid(&SpecError::parse(format!("{}: {e}", corpus.display()), None));
        }
    };
    let records: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty())
        .collect();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build() {
        Ok(p) => p,
        Err(e) => return Outcome::invalid(&SpecError::parse(e.to_string(), None)),
    };
    let lines: Vec<(String, Option<CiVerdict>)> =
        pool.install(|| records.par_iter().map(|&(n, l)| batch_line(n, l)).collect());
    let mut out = String::new();
    let (mut ci, mut not_ci, mut unknown, mut errors) = (0, 0, 0, 0);
    for (line, verdict) in &lines {
        out.push_str(line);
        out.push('\n');
        match verdict {
            Some(CiVerdict::Ci) => ci += 1,
            Some(CiVerdict::NotCi) => not_ci += 1,
            Some(CiVerdict::Unknown) => unknown += 1,
            None => errors += 1,
        }
    }
    let _ = writeln!(
        out,
        "summary: records={} ci={ci} not_ci={not_ci} unknown={unknown} errors={errors}",
        lines.len()
    );
    Outcome::ok(out)
}
