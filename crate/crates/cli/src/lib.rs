//! Command-line front end: loads a group document, builds a fusion context
//! and renders reports as JSON or text.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use pfusion::corpus::{build_context, CorpusEntry, PSelector};
use pfusion::essentials::{class_representatives, main_essential_collection, EssentialReport};
use pfusion::fusion::{FMorphism, FusionContext, Mode};
use pfusion::group::{ops, GroupTable, SubgroupSet};
use pfusion::input::GroupDocument;
use pfusion::theorems::battery::{self, Check};
use pfusion::theorems::normality::all_verdicts;
use pfusion::theorems::{
    factorize, frobenius_test, resistance_row, verify_chain, FactorizationChain, FrobeniusReport, NormalityVerdict,
};
use pfusion::Caps;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] pfusion::Error),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Usage(String),
    #[error("{failed} of {total} assertions failed")]
    SuiteFailed { failed: usize, total: usize },
}

impl CliError {
    /// 2 for bad input, 3 for a cap overflow, 4 for a theorem violation,
    /// 1 for a failing suite.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(pfusion::Error::SizeLimit { .. }) => 3,
            CliError::Core(pfusion::Error::TheoremViolation(_)) => 4,
            CliError::Core(_) | CliError::Io(_) | CliError::Usage(_) => 2,
            CliError::SuiteFailed { .. } => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "pfusion", version, about = "Fusion systems of finite groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Override a size cap, e.g. `lattice=5000`. Repeatable.
    #[arg(long = "cap-override", value_name = "NAME=VALUE", global = true)]
    pub cap_override: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Strongly closed subgroups, representatives, essentials and normality.
    Analyze(GroupArgs),
    /// Factor a system isomorphism through the base and essentials.
    Factorize(FactorizeArgs),
    /// Normality of P under every criterion.
    Normality(GroupArgs),
    /// p-nilpotency decided globally and locally at subgroups of P.
    Frobenius(GroupArgs),
    /// Run a manifest of instances and assertions.
    VerifySuite(SuiteArgs),
}

/// Subgroup selectors are element indices into the canonical table order.
#[derive(Debug, Clone, Args)]
pub struct GroupArgs {
    /// Group document (JSON).
    #[arg(long, value_name = "FILE")]
    pub group: PathBuf,
    #[arg(long, value_name = "P")]
    pub prime: usize,
    /// Generators of the Sylow subgroup; computed when absent.
    #[arg(long, value_name = "GEN-LIST", value_delimiter = ',')]
    pub sylow: Option<Vec<usize>>,
    /// Generators of P; P = S when absent.
    #[arg(long, value_name = "GEN-LIST", value_delimiter = ',')]
    pub pgroup: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Args)]
pub struct FactorizeArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    /// Generators of the source subgroup.
    #[arg(long, value_name = "GEN-LIST", value_delimiter = ',', required = true)]
    pub source: Vec<usize>,
    /// Generators of the target subgroup.
    #[arg(long, value_name = "GEN-LIST", value_delimiter = ',', required = true)]
    pub target: Vec<usize>,
    /// Element of G inducing the morphism by conjugation.
    #[arg(long, conflicts_with = "index")]
    pub witness: Option<usize>,
    /// Position of the morphism among all isomorphisms source -> target.
    #[arg(long)]
    pub index: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct SuiteArgs {
    /// Suite manifest (JSON).
    pub manifest: PathBuf,
}

// ---- requests -------------------------------------------------------------

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn caps_from(overrides: &[String]) -> CliResult<Caps> {
    let mut caps = Caps::default();
    for o in overrides {
        caps.apply_override(o)?;
    }
    Ok(caps)
}

/// Builds the restricted context on `P` described by the flags.
pub fn load_context(args: &GroupArgs, caps: Caps) -> CliResult<FusionContext> {
    let doc = GroupDocument::from_json(&read(&args.group)?)?;
    context_from_document(&doc, args.prime, args.sylow.as_deref(), args.pgroup.as_deref(), caps)
}

pub fn context_from_document(
    doc: &GroupDocument,
    prime: usize,
    sylow: Option<&[usize]>,
    pgroup: Option<&[usize]>,
    caps: Caps,
) -> CliResult<FusionContext> {
    let g = Arc::new(doc.build(&caps)?);
    let sel = match pgroup {
        Some(gens) => PSelector::Generated(gens.to_vec()),
        None => PSelector::Sylow,
    };
    Ok(build_context(g, prime, sylow, &sel, Mode::Restricted, caps)?)
}

fn subgroup(g: &GroupTable, gens: &[usize]) -> CliResult<SubgroupSet> {
    if let Some(x) = gens.iter().find(|&&x| x >= g.order()) {
        return Err(CliError::Usage(format!("element {x} outside 0..{}", g.order())));
    }
    Ok(ops::generated(g, gens))
}

// ---- reports ----------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct GroupInfo {
    pub hash: String,
    pub order: usize,
}

impl GroupInfo {
    fn of(g: &GroupTable) -> GroupInfo {
        GroupInfo { hash: g.content_hash().to_string(), order: g.order() }
    }
}

#[derive(Debug, Serialize)]
pub struct ContextInfo {
    pub prime: usize,
    pub sylow: SubgroupSet,
    pub p_subgroup: SubgroupSet,
    pub mode: Mode,
}

impl ContextInfo {
    fn of(ctx: &FusionContext) -> ContextInfo {
        ContextInfo {
            prime: ctx.prime(),
            sylow: ctx.s().clone(),
            p_subgroup: ctx.p_sub().clone(),
            mode: ctx.mode(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Representative {
    pub subgroup: SubgroupSet,
    pub order: usize,
    pub class_size: usize,
    pub fully_centralized: bool,
}

#[derive(Debug, Serialize)]
pub struct AnalysisReport {
    pub version: &'static str,
    pub group: GroupInfo,
    pub context: ContextInfo,
    pub strongly_closed: Vec<SubgroupSet>,
    pub representatives: Vec<Representative>,
    pub essentials: Vec<EssentialReport>,
    pub normality: Vec<NormalityVerdict>,
    pub normal: bool,
}

pub fn cmd_analyze(ctx: &FusionContext) -> CliResult<AnalysisReport> {
    let ambient = ctx.with_mode(Mode::Ambient);
    let strongly_closed = ambient.strongly_closed_subgroups()?.as_ref().clone();
    let mut reps = class_representatives(ctx)?;
    if !ctx.base().is_trivial() {
        reps.push(ctx.base().clone());
    }
    let representatives = reps
        .into_iter()
        .map(|q| Representative {
            order: q.order(),
            class_size: ctx.f_conjugacy_class(&q).len(),
            fully_centralized: ctx.is_fully_centralized(&q),
            subgroup: q,
        })
        .collect();
    let essentials = main_essential_collection(ctx)?;
    let normality = all_verdicts(ctx)?;
    let normal = normality.first().is_some_and(|v| v.normal);
    Ok(AnalysisReport {
        version: VERSION,
        group: GroupInfo::of(ctx.g()),
        context: ContextInfo::of(ctx),
        strongly_closed,
        representatives,
        essentials,
        normality,
        normal,
    })
}

#[derive(Debug, Serialize)]
pub struct NormalityReport {
    pub version: &'static str,
    pub group: GroupInfo,
    pub context: ContextInfo,
    pub normality: Vec<NormalityVerdict>,
    pub agree: bool,
}

pub fn cmd_normality(ctx: &FusionContext) -> CliResult<NormalityReport> {
    let normality = all_verdicts(ctx)?;
    let agree = normality.iter().all(|v| v.normal == normality[0].normal);
    Ok(NormalityReport { version: VERSION, group: GroupInfo::of(ctx.g()), context: ContextInfo::of(ctx), normality, agree })
}

#[derive(Debug, Serialize)]
pub struct FrobeniusDocument {
    pub version: &'static str,
    pub group: GroupInfo,
    pub context: ContextInfo,
    pub report: FrobeniusReport,
    pub agree: bool,
}

pub fn cmd_frobenius(ctx: &FusionContext) -> CliResult<FrobeniusDocument> {
    let report = frobenius_test(ctx.g(), ctx.prime(), ctx.p_sub(), ctx.caps())?;
    Ok(FrobeniusDocument {
        version: VERSION,
        group: GroupInfo::of(ctx.g()),
        context: ContextInfo::of(ctx),
        agree: report.agrees(),
        report,
    })
}

/// How to pick the morphism to factor.
#[derive(Clone, Copy, Debug)]
pub enum MorphismSelector {
    Witness(usize),
    Index(usize),
}

#[derive(Debug, Serialize)]
pub struct ChainDocument {
    pub version: &'static str,
    pub group: GroupInfo,
    pub context: ContextInfo,
    pub morphism: FMorphism,
    pub chain: FactorizationChain,
    pub verified: bool,
}

pub fn cmd_factorize(ctx: &FusionContext, source: &[usize], target: &[usize], sel: MorphismSelector) -> CliResult<ChainDocument> {
    let g = ctx.g();
    let q = subgroup(g, source)?;
    let r = subgroup(g, target)?;
    if !q.is_subset(ctx.p_sub()) || !r.is_subset(ctx.p_sub()) {
        return Err(CliError::Usage("source and target must lie in P".into()));
    }
    let isos = ctx.isomorphisms(&q, &r);
    let psi = match sel {
        MorphismSelector::Witness(x) => {
            if x >= g.order() {
                return Err(CliError::Usage(format!("element {x} outside 0..{}", g.order())));
            }
            let c = ctx.conjugation(&q, x);
            isos.iter().find(|m| **m == c).cloned().ok_or_else(|| {
                CliError::Usage(format!("no such morphism: conjugation by {x} does not carry the source onto the target"))
            })?
        }
        MorphismSelector::Index(i) => isos.get(i).cloned().ok_or_else(|| {
            CliError::Usage(if isos.is_empty() {
                "no such morphism: source and target are not fused".to_string()
            } else {
                format!("no such morphism: index {i} but only {} isomorphisms", isos.len())
            })
        })?,
    };
    let chain = factorize(ctx, &psi)?;
    let verified = verify_chain(ctx, &psi, &chain);
    if !verified {
        return Err(pfusion::Error::TheoremViolation("factorization chain failed verification".into()).into());
    }
    Ok(ChainDocument { version: VERSION, group: GroupInfo::of(g), context: ContextInfo::of(ctx), morphism: psi, chain, verified })
}

// ---- suites -----------------------------------------------------------------

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectations {
    pub normal: Option<bool>,
    pub essentials: Option<usize>,
    pub p_nilpotent: Option<bool>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteEntry {
    #[serde(flatten)]
    pub entry: CorpusEntry,
    #[serde(default)]
    pub expect: Expectations,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct SuiteManifest {
    #[serde(default)]
    pub entries: Vec<SuiteEntry>,
    /// Also run the structural lemma battery.
    #[serde(default)]
    pub battery: bool,
}

impl SuiteManifest {
    pub fn from_json(text: &str) -> CliResult<SuiteManifest> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("manifest: {e}")))
    }
}

#[derive(Debug, Serialize)]
pub struct SuiteSummary {
    pub version: &'static str,
    pub assertions: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
}

impl SuiteSummary {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

fn assertion(lemma: &str, instance: &str, passed: bool, detail: Option<String>) -> Check {
    Check { lemma: lemma.to_string(), instance: instance.to_string(), passed, detail }
}

fn entry_checks(e: &SuiteEntry, caps: Caps, battery_on: bool) -> Vec<Check> {
    let name = &e.entry.name;
    let ctx = match e.entry.context(&caps) {
        Ok(ctx) => ctx,
        Err(err) => return vec![assertion("context", name, false, Some(err.to_string()))],
    };
    let mut out = Vec::new();
    match resistance_row(name, &ctx) {
        Ok(row) => {
            let normal = row.verdicts[0].normal;
            let detail = format!("normal={normal} asserted={}", row.asserted);
            out.push(assertion("strong resistance", name, row.passed, Some(detail)));
            if let Some(want) = e.expect.normal {
                out.push(assertion("normality", name, normal == want, Some(format!("expected {want}, got {normal}"))));
            }
        }
        Err(err) => out.push(assertion("strong resistance", name, false, Some(err.to_string()))),
    }
    if let Some(want) = e.expect.essentials {
        let got = main_essential_collection(&ctx).map(|m| m.len());
        let passed = got.as_ref().is_ok_and(|&n| n == want);
        out.push(assertion("essential collection", name, passed, Some(format!("expected {want}, got {got:?}"))));
    }
    match frobenius_test(ctx.g(), ctx.prime(), ctx.p_sub(), ctx.caps()) {
        Ok(rep) => {
            out.push(assertion("frobenius criterion", name, rep.agrees(), None));
            if let Some(want) = e.expect.p_nilpotent {
                let got = rep.p_nilpotent;
                out.push(assertion("p-nilpotency", name, got == want, Some(format!("expected {want}, got {got}"))));
            }
        }
        Err(err) => out.push(assertion("frobenius criterion", name, false, Some(err.to_string()))),
    }
    if battery_on {
        match battery::fusion_checks(name, &ctx) {
            Ok(c) => out.extend(c),
            Err(err) => out.push(assertion("fusion battery", name, false, Some(err.to_string()))),
        }
    }
    out
}

fn battery_checks(caps: Caps) -> Vec<Check> {
    let mut out = Vec::new();
    let mut run = |family: &str, r: pfusion::Result<Vec<Check>>| match r {
        Ok(c) => out.extend(c),
        Err(err) => out.push(assertion(family, "battery", false, Some(err.to_string()))),
    };
    run("counting lemma", battery::counting_lemma_checks(&caps));
    run("counting theorem", battery::counting_theorem_checks(&caps));
    match battery::automorphism_instances(&caps) {
        Ok(inst) => {
            run("coprime action", battery::coprime_action_checks(&inst, &caps));
            run("faithfulness", battery::faithfulness_checks(&inst, &caps));
            run("maximal subgroups", battery::transitive_maximals_checks(&inst, &caps));
            run("power congruence", battery::power_congruence_checks(&inst, &caps));
        }
        Err(err) => run("automorphism instances", Err(err)),
    }
    out
}

pub fn cmd_verify_suite(manifest: &SuiteManifest, caps: Caps) -> SuiteSummary {
    let mut assertions: Vec<Check> = manifest.entries.iter().flat_map(|e| entry_checks(e, caps, manifest.battery)).collect();
    if manifest.battery {
        assertions.extend(battery_checks(caps));
    }
    let passed = assertions.iter().filter(|c| c.passed).count();
    SuiteSummary { version: VERSION, failed: assertions.len() - passed, passed, assertions }
}

// ---- rendering --------------------------------------------------------------

fn set(s: &SubgroupSet) -> String {
    format!("{:?}", s.members())
}

fn verdict_lines(out: &mut String, verdicts: &[NormalityVerdict]) {
    for v in verdicts {
        let _ = writeln!(out, "  {:<24} {}", format!("{:?}", v.method), if v.normal { "normal" } else { "not normal" });
    }
}

fn context_lines(out: &mut String, g: &GroupInfo, c: &ContextInfo) {
    let _ = writeln!(out, "pfusion {VERSION}");
    let _ = writeln!(out, "group: order {} hash {}", g.order, g.hash);
    let _ = writeln!(out, "prime {}, S = {}, P = {}", c.prime, set(&c.sylow), set(&c.p_subgroup));
}

pub trait Render: Serialize {
    fn text(&self) -> String;
}

impl Render for AnalysisReport {
    fn text(&self) -> String {
        let mut out = String::new();
        context_lines(&mut out, &self.group, &self.context);
        let _ = writeln!(out, "strongly closed in S: {}", self.strongly_closed.len());
        for s in &self.strongly_closed {
            let _ = writeln!(out, "  order {:<4} {}", s.order(), set(s));
        }
        let _ = writeln!(out, "class representatives: {}", self.representatives.len());
        for r in &self.representatives {
            let _ = writeln!(out, "  order {:<4} class {:<3} {}", r.order, r.class_size, set(&r.subgroup));
        }
        let _ = writeln!(out, "essentials: {}", self.essentials.len());
        for e in &self.essentials {
            let _ = writeln!(out, "  order {:<4} {}", e.subgroup.order(), set(&e.subgroup));
        }
        let _ = writeln!(out, "normality:");
        verdict_lines(&mut out, &self.normality);
        out
    }
}

impl Render for NormalityReport {
    fn text(&self) -> String {
        let mut out = String::new();
        context_lines(&mut out, &self.group, &self.context);
        verdict_lines(&mut out, &self.normality);
        let _ = writeln!(out, "methods agree: {}", self.agree);
        out
    }
}

impl Render for FrobeniusDocument {
    fn text(&self) -> String {
        let mut out = String::new();
        context_lines(&mut out, &self.group, &self.context);
        let _ = writeln!(out, "p-nilpotent: {}", self.report.p_nilpotent);
        let _ = writeln!(out, "all local normalizers p-nilpotent: {}", self.report.all_local_p_nilpotent);
        if let Some(w) = &self.report.witness {
            let _ = writeln!(out, "witness: {}", set(w));
        }
        out
    }
}

impl Render for ChainDocument {
    fn text(&self) -> String {
        let mut out = String::new();
        context_lines(&mut out, &self.group, &self.context);
        let _ = writeln!(out, "{} -> {} in {} steps", set(&self.chain.source), set(&self.chain.target), self.chain.len());
        for (i, s) in self.chain.steps.iter().enumerate() {
            let _ = writeln!(out, "  {}: via {} : {} -> {}", i + 1, set(&s.subgroup), set(&s.from), set(&s.to));
        }
        let _ = writeln!(out, "verified: {}", self.verified);
        out
    }
}

impl Render for SuiteSummary {
    fn text(&self) -> String {
        let mut out = String::new();
        for c in &self.assertions {
            let _ = write!(out, "{} [{}] {}", if c.passed { "PASS" } else { "FAIL" }, c.lemma, c.instance);
            match &c.detail {
                Some(d) => {
                    let _ = writeln!(out, " ({d})");
                }
                None => out.push('\n'),
            }
        }
        let _ = writeln!(out, "{} passed, {} failed", self.passed, self.failed);
        out
    }
}

pub fn render<R: Render>(report: &R, format: Format) -> CliResult<String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).map_err(|e| CliError::Io(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Text => Ok(report.text()),
    }
}

// ---- driver -----------------------------------------------------------------

/// Runs a parsed command and returns the rendered report. Nothing is
/// written on failure.
pub fn execute(cli: &Cli) -> CliResult<String> {
    let caps = caps_from(&cli.cap_override)?;
    match &cli.command {
        Command::Analyze(a) => render(&cmd_analyze(&load_context(a, caps)?)?, cli.format),
        Command::Normality(a) => render(&cmd_normality(&load_context(a, caps)?)?, cli.format),
        Command::Frobenius(a) => render(&cmd_frobenius(&load_context(a, caps)?)?, cli.format),
        Command::Factorize(f) => {
            let ctx = load_context(&f.group, caps)?;
            let sel = match f.witness {
                Some(x) => MorphismSelector::Witness(x),
                None => MorphismSelector::Index(f.index.unwrap_or(0)),
            };
            render(&cmd_factorize(&ctx, &f.source, &f.target, sel)?, cli.format)
        }
        Command::VerifySuite(s) => {
            let manifest = SuiteManifest::from_json(&read(&s.manifest)?)?;
            let summary = cmd_verify_suite(&manifest, caps);
            let text = render(&summary, cli.format)?;
            if summary.ok() {
                Ok(text)
            } else {
                // the summary is still the useful output
                emit(cli.out.as_deref(), &text)?;
                Err(CliError::SuiteFailed { failed: summary.failed, total: summary.assertions.len() })
            }
        }
    }
}

pub fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Parses arguments, runs, writes output and returns the exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli).and_then(|text| emit(cli.out.as_deref(), &text)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            if let CliError::Core(pfusion::Error::TheoremViolation(_)) = &e {
                eprintln!("diagnostic: {cli:#?}");
            }
            e.exit_code()
        }
    }
}
