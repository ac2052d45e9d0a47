//! Batch front end: parse JSON descriptions, run conversions,
//! classifications, admissibilization and the law suites, and emit
//! deterministic line-oriented reports.
//!
//! The report body is a function of the job alone. Timing goes to stderr so
//! repeated runs stay byte-identical on stdout. Exit codes: 0 pass, 1 law
//! failure or violated precondition, 2 parse error, 3 budget exhaustion.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::adm::admissibilize;
use crate::budget::{Budget, BUDGET_ENV};
use crate::butterfly::{from_butterfly, to_butterfly};
use crate::cone::cone;
use crate::corr::compose;
use crate::error::{Error, Result};
use crate::gen::{generate, Bounds};
use crate::json::{
    butterfly_from_str, category_from_str, corr_from_str, quasi_candidate_from_str,
    quasi_from_str, ring_from_str, simplicial_from_str, to_pretty_string, ButterflyDesc,
    CorrDesc, GroupoidDesc, QuasiIdealDesc, SimplicialDesc,
};
use crate::quasi::validate_quasi_ideal;
use crate::simplicial::{q_to_simplicial, simplicial_to_q};
use crate::suite::{all_ok, render_suites, run_suite, suite_budget, SuiteKind};

#[derive(Parser, Debug)]
#[command(
    name = "ringoid",
    about = "Ring groupoids over finite rings: validation, conversion, and law suites",
    version
)]
pub struct Cli {
    /// Search budget, `<search>` or `<carrier>,<search>`; overrides the
    /// RINGOID_BUDGET environment variable.
    #[arg(long, global = true)]
    pub budget: Option<String>,

    /// Write the JSON artifact of the command here instead of inlining it
    /// in the report.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Subcommand, Debug)]
pub enum CliCommand {
    /// Check the algebraic laws of a JSON description and report violations.
    Validate { input: PathBuf },
    /// Convert between quasi-ideal and 1-truncated simplicial descriptions.
    Convert { input: PathBuf },
    /// Build the cone groupoid of a quasi-ideal.
    Cone { input: PathBuf },
    /// Classify a correspondence: plain, equivalence-leg, anamorphism,
    /// weakly-admissible, or admissible.
    Classify { input: PathBuf },
    /// Extract the butterfly of an admissible correspondence, or rebuild
    /// the correspondence of a butterfly.
    Butterfly { input: PathBuf },
    /// Compose two correspondences over a shared middle foot.
    Compose { first: PathBuf, second: PathBuf },
    /// Admissibilize a correspondence whose left leg is a
    /// quasi-isomorphism.
    Adm { input: PathBuf },
    /// Report the homotopy rings of a quasi-ideal.
    Pi { input: PathBuf },
    /// Generate the bundled corpus and run law suites over it.
    Laws {
        /// Corpus seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Which suite to run: ring, quasi, simplicial, cone, corr, cat,
        /// bridge, or all.
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

/// A resolved job: command, inputs, and the effective budget.
#[derive(Debug)]
pub struct JobSpec {
    pub command: CliCommand,
    pub budget: Budget,
    pub out: Option<PathBuf>,
}

/// Outcome of a job. The body is the full stdout report; it never contains
/// timing, so identical jobs render identical bytes.
#[derive(Debug)]
pub struct Report {
    pub pass: bool,
    pub witnesses: Vec<String>,
    pub body: String,
}

/// Maps error kinds to process exit codes.
pub fn exit_code_for(error: &Error) -> u8 {
    match error {
        Error::Malformed { .. } => 2,
        Error::BudgetExceeded(_) => 3,
        _ => 1,
    }
}

/// Resolves flags into a job. The budget precedence is flag, then
/// environment, then a command default: law suites get a wider scratch
/// budget because admissibilizing composites inflates carriers.
pub fn resolve(cli: Cli) -> Result<JobSpec> {
    let budget = match &cli.budget {
        Some(text) => Budget::parse(text)?,
        None if std::env::var(BUDGET_ENV).is_ok() => Budget::from_env()?,
        None => match &cli.command {
            CliCommand::Laws { .. } => suite_budget(),
            _ => Budget::default(),
        },
    };
    Ok(JobSpec { command: cli.command, budget, out: cli.out })
}

/// Runs a job and returns the report together with the exit code.
pub fn run(job: &JobSpec) -> (Report, u8) {
    match execute(job) {
        Ok(report) => {
            debug_assert!(report.pass || !report.witnesses.is_empty());
            let code = if report.pass { 0 } else { 1 };
            (report, code)
        }
        Err(error) => {
            let mut body = String::new();
            let _ = writeln!(body, "error {error}");
            let _ = writeln!(body, "result fail");
            let report =
                Report { pass: false, witnesses: vec![error.to_string()], body };
            (report, exit_code_for(&error))
        }
    }
}

/// Entry point for the binary.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let job = match resolve(cli) {
        Ok(job) => job,
        Err(error) => {
            eprintln!("error: {error}");
            return ExitCode::from(exit_code_for(&error));
        }
    };
    let (report, code) = run(&job);
    print!("{}", report.body);
    eprintln!("elapsed {} ms", started.elapsed().as_millis());
    ExitCode::from(code)
}

/// What a JSON input file describes, sniffed from its top-level keys.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum InputKind {
    Ring,
    Quasi,
    Simplicial,
    Correspondence,
    Butterfly,
    Category,
}

impl InputKind {
    fn name(self) -> &'static str {
        match self {
            InputKind::Ring => "ring",
            InputKind::Quasi => "quasi-ideal",
            InputKind::Simplicial => "simplicial-ring",
            InputKind::Correspondence => "correspondence",
            InputKind::Butterfly => "butterfly",
            InputKind::Category => "category",
        }
    }
}

fn sniff(text: &str) -> Result<InputKind> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| Error::malformed("input json", e.to_string()))?;
    let object = value
        .as_object()
        .ok_or_else(|| Error::malformed("input json", "expected a JSON object"))?;
    let kind = if object.contains_key("K") {
        InputKind::Butterfly
    } else if object.contains_key("R12") {
        InputKind::Correspondence
    } else if object.contains_key("A0") {
        InputKind::Simplicial
    } else if object.contains_key("C") && object.contains_key("I") {
        InputKind::Quasi
    } else if object.contains_key("objects") && object.contains_key("compose") {
        InputKind::Category
    } else if object.contains_key("add") && object.contains_key("mul") {
        InputKind::Ring
    } else {
        return Err(Error::malformed(
            "input json",
            "unrecognized shape; expected a ring, quasi-ideal, simplicial ring, correspondence, butterfly, or category description",
        ));
    };
    Ok(kind)
}

fn read_input(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::malformed("input file", format!("{}: {e}", path.display())))
}

/// Report under construction: collects body lines and witnesses.
struct Lines {
    body: String,
    witnesses: Vec<String>,
}

impl Lines {
    fn new(command: &str) -> Lines {
        let mut lines = Lines { body: String::new(), witnesses: Vec::new() };
        lines.push(&format!("command {command}"));
        lines
    }

    fn push(&mut self, line: &str) {
        self.body.push_str(line);
        self.body.push('\n');
    }

    fn witness(&mut self, line: String) {
        self.push(&line);
        self.witnesses.push(line);
    }

    /// Adds the artifact: inline, or to the out file with a pointer line.
    fn artifact(&mut self, kind: &str, json: String, out: &Option<PathBuf>) -> Result<()> {
        match out {
            Some(path) => {
                fs::write(path, json).map_err(|e| {
                    Error::malformed("output file", format!("{}: {e}", path.display()))
                })?;
                self.push(&format!("artifact {kind} file={}", path.display()));
            }
            None => {
                self.push(&format!("artifact {kind} inline"));
                self.body.push_str(&json);
            }
        }
        Ok(())
    }

    fn finish(mut self, pass: bool) -> Report {
        self.push(&format!("result {}", if pass { "pass" } else { "fail" }));
        Report { pass, witnesses: self.witnesses, body: self.body }
    }
}

fn execute(job: &JobSpec) -> Result<Report> {
    match &job.command {
        CliCommand::Validate { input } => validate_command(input),
        CliCommand::Convert { input } => convert_command(input, &job.out),
        CliCommand::Cone { input } => cone_command(input, &job.out),
        CliCommand::Classify { input } => classify_command(input),
        CliCommand::Butterfly { input } => butterfly_command(input, &job.out),
        CliCommand::Compose { first, second } => compose_command(first, second, &job.out),
        CliCommand::Adm { input } => adm_command(input, &job.budget, &job.out),
        CliCommand::Pi { input } => pi_command(input),
        CliCommand::Laws { seed, suite } => laws_command(*seed, suite, &job.budget),
    }
}

/// Runs a constructor whose validation failures should become report
/// witnesses rather than hard errors.
fn witness_invalid<T>(
    result: Result<T>,
    lines: &mut Lines,
) -> Result<Option<T>> {
    match result {
        Ok(value) => Ok(Some(value)),
        Err(Error::Invalid { context, report }) => {
            for violation in &report.violations {
                lines.witness(format!("violation {context}: {violation}"));
            }
            Ok(None)
        }
        Err(other) => Err(other),
    }
}

fn validate_command(input: &PathBuf) -> Result<Report> {
    let text = read_input(input)?;
    let kind = sniff(&text)?;
    let mut lines = Lines::new("validate");
    lines.push(&format!("kind {}", kind.name()));
    let pass = match kind {
        InputKind::Ring => {
            let ring = witness_invalid(ring_from_str(&text), &mut lines)?;
            if let Some(r) = &ring {
                lines.push(&format!("carrier size={}", r.size()));
            }
            ring.is_some()
        }
        InputKind::Quasi => {
            let built = witness_invalid(quasi_candidate_from_str(&text), &mut lines)?;
            match built {
                Some((module, d)) => {
                    lines.push(&format!(
                        "carriers C={} I={}",
                        module.base().size(),
                        module.size()
                    ));
                    let report = validate_quasi_ideal(&module, &d)?;
                    for violation in &report.violations {
                        lines.witness(format!("violation quasi-ideal: {violation}"));
                    }
                    report.ok()
                }
                None => false,
            }
        }
        InputKind::Simplicial => {
            let built = witness_invalid(simplicial_from_str(&text), &mut lines)?;
            match built {
                Some(t) => {
                    lines.push(&format!(
                        "carriers A0={} A1={}",
                        t.a0().size(),
                        t.a1().size()
                    ));
                    match t.goodness_witness() {
                        None => lines.push("good true"),
                        Some((x, y)) => {
                            lines.push(&format!("good false witness=({x}, {y})"))
                        }
                    }
                    true
                }
                None => false,
            }
        }
        InputKind::Correspondence => {
            let built = witness_invalid(corr_from_str(&text), &mut lines)?;
            match built {
                Some(c) => {
                    lines.push(&format!("class {}", c.classify()));
                    true
                }
                None => false,
            }
        }
        InputKind::Butterfly => {
            let built = witness_invalid(butterfly_from_str(&text), &mut lines)?;
            match built {
                Some(b) => {
                    let report = b.validate();
                    for violation in &report.violations {
                        lines.witness(format!("violation butterfly: {violation}"));
                    }
                    report.ok()
                }
                None => false,
            }
        }
        InputKind::Category => {
            let built = witness_invalid(category_from_str(&text), &mut lines)?;
            if let Some(c) = &built {
                lines.push(&format!(
                    "carriers objects={} morphisms={}",
                    c.n_objects(),
                    c.n_morphisms()
                ));
            }
            built.is_some()
        }
    };
    Ok(lines.finish(pass))
}

fn convert_command(input: &PathBuf, out: &Option<PathBuf>) -> Result<Report> {
    let text = read_input(input)?;
    let kind = sniff(&text)?;
    let mut lines = Lines::new("convert");
    lines.push(&format!("kind {}", kind.name()));
    match kind {
        InputKind::Quasi => {
            let q = quasi_from_str(&text)?;
            let t = q_to_simplicial(&q);
            lines.push(&format!("good {}", t.is_good()));
            lines.artifact(
                "simplicial-ring",
                to_pretty_string(&SimplicialDesc::of_simplicial(&t)),
                out,
            )?;
        }
        InputKind::Simplicial => {
            let t = simplicial_from_str(&text)?;
            let q = simplicial_to_q(&t)?;
            lines.push(&format!(
                "carriers C={} I={}",
                q.ring().size(),
                q.module().size()
            ));
            lines.artifact(
                "quasi-ideal",
                to_pretty_string(&QuasiIdealDesc::of_quasi(&q)),
                out,
            )?;
        }
        other => {
            return Err(Error::malformed(
                "convert input",
                format!(
                    "expected a quasi-ideal or simplicial ring, got a {}",
                    other.name()
                ),
            ));
        }
    }
    Ok(lines.finish(true))
}

fn cone_command(input: &PathBuf, out: &Option<PathBuf>) -> Result<Report> {
    let text = read_input(input)?;
    let q = quasi_from_str(&text)?;
    let g = cone(&q);
    let mut lines = Lines::new("cone");
    lines.push(&format!("objects {}", g.object_ring().size()));
    lines.push(&format!("morphisms {}", g.morphism_ring().size()));
    lines.push(&format!("components {}", g.component_count()));
    let report = g.validate();
    for violation in &report.violations {
        lines.witness(format!("violation groupoid: {violation}"));
    }
    lines.artifact("groupoid", to_pretty_string(&GroupoidDesc::of_groupoid(&g)), out)?;
    Ok(lines.finish(report.ok()))
}

fn classify_command(input: &PathBuf) -> Result<Report> {
    let text = read_input(input)?;
    let c = corr_from_str(&text)?;
    let mut lines = Lines::new("classify");
    lines.push(&format!(
        "left quasi-iso={} surjective={}",
        c.left().is_quasi_iso(),
        c.left().is_surjective_both_degrees()
    ));
    let total = c.r1().module().size() * c.r2().module().size();
    let mut image = c.pair_map();
    image.sort_unstable();
    image.dedup();
    lines.push(&format!(
        "pair-map injective={} surjective={}",
        image.len() == c.apex().module().size(),
        image.len() == total
    ));
    lines.push(&format!("class {}", c.classify()));
    Ok(lines.finish(true))
}

fn butterfly_command(input: &PathBuf, out: &Option<PathBuf>) -> Result<Report> {
    let text = read_input(input)?;
    let kind = sniff(&text)?;
    let mut lines = Lines::new("butterfly");
    lines.push(&format!("kind {}", kind.name()));
    match kind {
        InputKind::Correspondence => {
            let c = corr_from_str(&text)?;
            let b = to_butterfly(&c)?;
            let report = b.validate();
            for violation in &report.violations {
                lines.witness(format!("violation butterfly: {violation}"));
            }
            lines.artifact(
                "butterfly",
                to_pretty_string(&ButterflyDesc::of_butterfly(&b)),
                out,
            )?;
            Ok(lines.finish(report.ok()))
        }
        InputKind::Butterfly => {
            let b = butterfly_from_str(&text)?;
            let c = from_butterfly(&b);
            lines.push(&format!("class {}", c.classify()));
            lines.artifact("correspondence", to_pretty_string(&CorrDesc::of_corr(&c)), out)?;
            Ok(lines.finish(true))
        }
        other => Err(Error::malformed(
            "butterfly input",
            format!("expected a correspondence or butterfly, got a {}", other.name()),
        )),
    }
}

fn compose_command(
    first: &PathBuf,
    second: &PathBuf,
    out: &Option<PathBuf>,
) -> Result<Report> {
    let a = corr_from_str(&read_input(first)?)?;
    let b = corr_from_str(&read_input(second)?)?;
    let composite = compose(&a, &b)?;
    let mut lines = Lines::new("compose");
    lines.push(&format!(
        "apex C={} I={}",
        composite.apex().ring().size(),
        composite.apex().module().size()
    ));
    lines.push(&format!("class {}", composite.classify()));
    lines.artifact(
        "correspondence",
        to_pretty_string(&CorrDesc::of_corr(&composite)),
        out,
    )?;
    Ok(lines.finish(true))
}

fn adm_command(input: &PathBuf, budget: &Budget, out: &Option<PathBuf>) -> Result<Report> {
    let text = read_input(input)?;
    let c = corr_from_str(&text)?;
    let adm = admissibilize(&c, budget)?;
    let mut lines = Lines::new("adm");
    lines.push(&format!("input-class {}", c.classify()));
    lines.push(&format!("class {}", adm.corr.classify()));
    lines.push(&format!(
        "apex C={} I={}",
        adm.corr.apex().ring().size(),
        adm.corr.apex().module().size()
    ));
    lines.artifact(
        "correspondence",
        to_pretty_string(&CorrDesc::of_corr(&adm.corr)),
        out,
    )?;
    Ok(lines.finish(adm.corr.is_admissible()))
}

fn pi_command(input: &PathBuf) -> Result<Report> {
    let text = read_input(input)?;
    let q = quasi_from_str(&text)?;
    let mut lines = Lines::new("pi");
    let (pi0, _) = q.pi0();
    lines.push(&format!("pi0 size={}", pi0.size()));
    lines.push(&format!("pi1 size={}", q.pi1().module.size()));
    Ok(lines.finish(true))
}

fn laws_command(seed: u64, suite: &str, budget: &Budget) -> Result<Report> {
    let kind = SuiteKind::parse(suite)?;
    let bounds = Bounds::standard();
    let mut lines = Lines::new("laws");
    lines.push(&format!("seed {seed}"));
    lines.push(&format!("suite {}", kind.name()));
    lines.push(&format!("bounds carrier={}", bounds.max_carrier));
    lines.push(&format!(
        "budget carrier={} search={}",
        budget.max_carrier, budget.max_search
    ));
    let corpus = generate(seed, &bounds, budget)?;
    for (name, count) in corpus.counts() {
        lines.push(&format!("corpus {name}={count}"));
    }
    let reports = run_suite(kind, &corpus, budget)?;
    let rendered = render_suites(&reports);
    for line in rendered.lines() {
        if line.contains(" fail ") || line.ends_with("result fail") {
            lines.witness(line.to_string());
        } else {
            lines.push(line);
        }
    }
    Ok(lines.finish(all_ok(&reports)))
}
