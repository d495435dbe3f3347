//! The `gpdefo` command line: argument parsing, input loading and report emission.
//!
//! Every command produces one JSON document. Keys are sorted and all
//! randomness is seeded, so equal inputs give byte-identical output.

use std::path::Path as FsPath;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use gpdefo_core::deformation::{
    classify_defo_ring, extend_lift_adjusting, tangent_space, canonical_selfext_lift, DefoOptions, LiftOrderN, RingTag,
};
use gpdefo_core::homology::{
    default_cutoff, ext1, is_cohen_macaulay, is_gorenstein, is_gorenstein_projective, stable_hom, GorensteinVerdict,
    Verdict,
};
use gpdefo_core::io::{dims_map, parse_algebra, parse_bimodule, parse_field, parse_module, path_words, ModuleSpec};
use gpdefo_core::monomial::{gproj_indecomposables, overlaps, perfect_path_list, perfect_paths, Overlap};
use gpdefo_core::repmod::cyclic_module;
use gpdefo_core::transport::{transport_check, Bimodule};
use gpdefo_core::{fixtures, Algebra, Field, Representation};

pub const EXIT_OK: i32 = 0;
/// A transport comparison ran and the two sides disagree.
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_UNDETERMINED: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] gpdefo_core::Error),
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use gpdefo_core::Error as E;
        match self {
            CliError::Read { .. } | CliError::Usage(_) => EXIT_PARSE,
            CliError::Core(E::Parse(_) | E::DimensionMismatch(_) | E::MalformedRelation(_) | E::RelationViolated(_)) => {
                EXIT_PARSE
            }
            CliError::Core(_) => EXIT_PRECONDITION,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "gpdefo", version, about = "Gorenstein-projective modules and their deformation rings")]
pub struct Cli {
    /// Ground field: `Q` or `Fp:<p>`.
    #[arg(long, global = true)]
    pub field: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Homological search cutoff; defaults to `dim A + 2`.
    #[arg(long, global = true)]
    pub cutoff: Option<usize>,
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,
    #[arg(long, global = true)]
    pub text: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Facts about an algebra.
    Algebra {
        #[command(subcommand)]
        cmd: AlgebraCmd,
    },
    /// Gorenstein-projective classification.
    Gproj {
        #[command(subcommand)]
        cmd: GprojCmd,
    },
    /// Deformation ring of a module.
    Defo {
        #[command(subcommand)]
        cmd: DefoCmd,
    },
    /// Order-by-order lifting of first-order deformations.
    Lift {
        #[command(subcommand)]
        cmd: LiftCmd,
    },
    /// Carry a module across a bimodule and compare deformation rings.
    Transport(TransportArgs),
}

#[derive(Debug, Subcommand)]
pub enum AlgebraCmd {
    Info(AlgebraArgs),
}

#[derive(Debug, Subcommand)]
pub enum GprojCmd {
    Classify(ModuleArgs),
}

#[derive(Debug, Subcommand)]
pub enum DefoCmd {
    Ring(ModuleArgs),
}

#[derive(Debug, Subcommand)]
pub enum LiftCmd {
    Probe {
        #[command(flatten)]
        module: ModuleArgs,
        /// Highest order to attempt.
        #[arg(long, default_value_t = gpdefo_core::deformation::DEFAULT_ORDER_CUTOFF)]
        order: usize,
    },
}

#[derive(Debug, Args)]
pub struct AlgebraArgs {
    /// Fixture name or path to an algebra JSON file.
    pub source: Option<String>,
    #[arg(long, conflicts_with = "source")]
    pub fixture: Option<String>,
}

#[derive(Debug, Args)]
pub struct ModuleArgs {
    #[command(flatten)]
    pub algebra: AlgebraArgs,
    /// Module JSON file, or `builtin:W` for the string module over `gamma`.
    #[arg(long, conflicts_with = "gen")]
    pub module: Option<String>,
    /// Generator of a cyclic module `Ap`, arrow names written right to left.
    #[arg(long, value_delimiter = ',')]
    pub gen: Option<Vec<String>>,
}

#[derive(Debug, Args)]
pub struct TransportArgs {
    /// Bimodule JSON file, or `builtin:regular:<fixture>`.
    #[arg(long)]
    pub bimodule: String,
    #[arg(long, conflicts_with = "gen")]
    pub module: Option<String>,
    #[arg(long, value_delimiter = ',')]
    pub gen: Option<Vec<String>>,
}

/// A finished command: the report and the process exit code.
#[derive(Debug)]
pub struct Outcome {
    pub report: Value,
    pub exit: i32,
}

struct Session {
    field: Option<Field>,
    seed: u64,
    cutoff: Option<usize>,
}

impl Session {
    fn cutoff_for(&self, a: &Algebra) -> usize {
        self.cutoff.unwrap_or_else(|| default_cutoff(a))
    }

    fn provenance(&self, a: &Algebra, report: &mut Value) {
        let obj = report.as_object_mut().expect("reports are objects");
        obj.insert("field".into(), json!(a.field().to_string()));
        obj.insert("seed".into(), json!(self.seed));
        obj.insert("cutoff_used".into(), json!(self.cutoff_for(a)));
    }

    fn defo_options(&self, a: &Algebra, order_cutoff: usize) -> DefoOptions {
        DefoOptions { order_cutoff, homological_cutoff: Some(self.cutoff_for(a)), seed: self.seed }
    }
}

fn read(path: &str) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.into(), source })
}

fn load_algebra(s: &Session, args: &AlgebraArgs) -> CliResult<Arc<Algebra>> {
    let name = args
        .fixture
        .as_deref()
        .or(args.source.as_deref())
        .ok_or_else(|| CliError::Usage("name a fixture or an algebra JSON file".into()))?;
    if let Some(a) = fixtures::by_name(name, s.field.unwrap_or(Field::Rational)) {
        return Ok(a);
    }
    if args.fixture.is_some() || !FsPath::new(name).exists() {
        return Err(CliError::Usage(format!("unknown fixture {name:?}; known: {}", fixtures::NAMES.join(", "))));
    }
    Ok(parse_algebra(&read(name)?, s.field)?)
}

fn load_module(a: &Arc<Algebra>, module: Option<&str>, gen: Option<&[String]>) -> CliResult<Option<Representation>> {
    if let Some(word) = gen {
        let p = a.quiver().path_from_written(word)?;
        return Ok(Some(cyclic_module(a, &p)?));
    }
    match module {
        None => Ok(None),
        Some("builtin:W") => {
            if **a != *fixtures::gamma(a.field()) {
                return Err(CliError::Usage("builtin:W lives over the gamma fixture".into()));
            }
            Ok(Some(fixtures::gamma_string_module(a)))
        }
        Some(path) => Ok(Some(parse_module(&read(path)?, a)?)),
    }
}

fn require_module(m: Option<Representation>) -> CliResult<Representation> {
    m.ok_or_else(|| CliError::Usage("give a module with --module or --gen".into()))
}

fn verdict_exit(v: Verdict) -> i32 {
    if v == Verdict::UnknownAtCutoff { EXIT_UNDETERMINED } else { EXIT_OK }
}

fn algebra_info(s: &Session, args: &AlgebraArgs) -> CliResult<Outcome> {
    let a = load_algebra(s, args)?;
    let cutoff = s.cutoff_for(&a);
    let gor = is_gorenstein(&a, cutoff)?;
    let (verdict, left, right) = match gor {
        GorensteinVerdict::True { left, right } => (Verdict::True, Some(left), Some(right)),
        GorensteinVerdict::UnknownAtCutoff { left, right } => (Verdict::UnknownAtCutoff, left, right),
    };
    let mut report = json!({
        "command": "algebra info",
        "dim": a.dim(),
        "basis": a.display_basis(),
        "nilpotency": a.nilpotency(),
        "monomial": a.is_monomial(),
        "gorenstein": {"verdict": verdict, "injdim_left": left, "injdim_right": right},
    });
    s.provenance(&a, &mut report);
    Ok(Outcome { report, exit: verdict_exit(verdict) })
}

fn overlap_json(a: &Algebra, o: &Overlap) -> Value {
    let q = a.quiver();
    json!({
        "p": q.written_names(&o.p),
        "q": q.written_names(&o.q),
        "x": q.written_names(&o.x),
        "p_prime": q.written_names(&o.p_prime),
        "q_prime": q.written_names(&o.q_prime),
        "strict": o.is_strict(),
    })
}

fn gproj_classify(s: &Session, args: &ModuleArgs) -> CliResult<Outcome> {
    let a = load_algebra(s, &args.algebra)?;
    let cutoff = s.cutoff_for(&a);
    if let Some(m) = load_module(&a, args.module.as_deref(), args.gen.as_deref())? {
        let g = is_gorenstein_projective(&m, cutoff, s.seed)?;
        let cm = is_cohen_macaulay(&m, cutoff)?;
        let mut report = json!({
            "command": "gproj classify",
            "dims": dims_map(&m),
            "gproj": g,
            "cm": cm.verdict,
            "ext1": ext1(&m, &m)?,
            "stable_end_dim": stable_hom(&m, &m)?.dim(),
        });
        s.provenance(&a, &mut report);
        return Ok(Outcome { report, exit: verdict_exit(g.verdict) });
    }
    let cycles = perfect_paths(&a)?;
    let found = overlaps(&a)?;
    let strict = found.iter().filter(|o| o.is_strict()).count();
    let classes = gproj_indecomposables(&a, s.seed)?;
    let q = a.quiver();
    let nonprojective: Vec<Value> = classes
        .nonprojective
        .iter()
        .map(|e| {
            json!({
                "generator": q.written_names(&e.generator),
                "dims": dims_map(&e.module),
                "syzygy_generator": q.written_names(&e.syzygy_generator),
            })
        })
        .collect();
    let mut report = json!({
        "command": "gproj classify",
        "perfect_paths": path_words(&a, &perfect_path_list(&a)?),
        "perfect_cycles": cycles.iter().map(|c| path_words(&a, &c.paths)).collect::<Vec<_>>(),
        "overlaps": found.iter().map(|o| overlap_json(&a, o)).collect::<Vec<_>>(),
        "overlap_readings_differ": strict != found.len(),
        "gproj_nonprojective": nonprojective,
        "projectives": classes.projectives.iter().map(|&v| q.vertices()[v].clone()).collect::<Vec<_>>(),
    });
    s.provenance(&a, &mut report);
    Ok(Outcome { report, exit: EXIT_OK })
}

fn defo_ring(s: &Session, args: &ModuleArgs) -> CliResult<Outcome> {
    let a = load_algebra(s, &args.algebra)?;
    let m = require_module(load_module(&a, args.module.as_deref(), args.gen.as_deref())?)?;
    let r = classify_defo_ring(&m, s.defo_options(&a, gpdefo_core::deformation::DEFAULT_ORDER_CUTOFF))?;
    let exit = if r.ring == RingTag::Undetermined { EXIT_UNDETERMINED } else { EXIT_OK };
    let mut report = serde_json::to_value(&r).expect("report serializes");
    report.as_object_mut().expect("object").insert("command".into(), json!("defo ring"));
    s.provenance(&a, &mut report);
    Ok(Outcome { report, exit })
}

/// Extends `first` one order at a time, recording each attempt until the first failure.
fn ladder(first: &LiftOrderN, order: usize) -> CliResult<(Vec<Value>, Option<usize>)> {
    let mut steps = Vec::new();
    let mut cur = first.clone();
    while cur.order() < order {
        let next_order = cur.order() + 1;
        match extend_lift_adjusting(&cur)? {
            Some(next) => {
                steps.push(json!({"order": next_order, "extends": true}));
                cur = next;
            }
            None => {
                steps.push(json!({"order": next_order, "extends": false}));
                return Ok((steps, Some(next_order)));
            }
        }
    }
    Ok((steps, None))
}

fn lift_probe(s: &Session, args: &ModuleArgs, order: usize) -> CliResult<Outcome> {
    let a = load_algebra(s, &args.algebra)?;
    let m = require_module(load_module(&a, args.module.as_deref(), args.gen.as_deref())?)?;
    let t = tangent_space(&m);
    let mut vectors = Vec::new();
    for (i, rep) in t.representatives.iter().enumerate() {
        let first = LiftOrderN::first_order(&m, rep.clone())?;
        let (steps, obstruction) = ladder(&first, order)?;
        vectors.push(json!({"index": i, "ladder": steps, "obstruction_order": obstruction}));
    }
    let canonical = match canonical_selfext_lift(&m, s.seed) {
        Ok(lift) => {
            let (steps, obstruction) = ladder(&lift, order)?;
            json!({"ladder": steps, "obstruction_order": obstruction})
        }
        Err(gpdefo_core::Error::HypothesisFails(why)) => json!({"unavailable": why}),
        Err(e) => return Err(e.into()),
    };
    let mut report = json!({
        "command": "lift probe",
        "order": order,
        "tangent_dim": t.dim(),
        "tangent_vectors": vectors,
        "canonical": canonical,
    });
    s.provenance(&a, &mut report);
    Ok(Outcome { report, exit: EXIT_OK })
}

fn load_bimodule(s: &Session, spec: &str) -> CliResult<Bimodule> {
    if let Some(name) = spec.strip_prefix("builtin:regular:") {
        let a = fixtures::by_name(name, s.field.unwrap_or(Field::Rational))
            .ok_or_else(|| CliError::Usage(format!("unknown fixture {name:?}")))?;
        return Ok(Bimodule::regular(&a)?);
    }
    Ok(parse_bimodule(&read(spec)?, s.field)?)
}

fn transport(s: &Session, args: &TransportArgs) -> CliResult<Outcome> {
    let x = load_bimodule(s, &args.bimodule)?;
    let a = x.right_algebra().clone();
    let v = require_module(load_module(&a, args.module.as_deref(), args.gen.as_deref())?)?;
    let cutoff = s.cutoff_for(&a);
    let r = transport_check(&x, &v, cutoff, s.defo_options(&a, gpdefo_core::deformation::DEFAULT_ORDER_CUTOFF))?;
    let exit = if r.pass { EXIT_OK } else { EXIT_CHECK_FAILED };
    let mut report = serde_json::to_value(&r).expect("report serializes");
    let obj = report.as_object_mut().expect("object");
    obj.insert("command".into(), json!("transport"));
    obj.insert("verdict".into(), json!(if r.pass { "PASS" } else { "FAIL" }));
    s.provenance(&a, &mut report);
    Ok(Outcome { report, exit })
}

pub fn execute(cli: &Cli) -> CliResult<Outcome> {
    let field = cli.field.as_deref().map(parse_field).transpose()?;
    let s = Session { field, seed: cli.seed, cutoff: cli.cutoff };
    match &cli.command {
        Command::Algebra { cmd: AlgebraCmd::Info(args) } => algebra_info(&s, args),
        Command::Gproj { cmd: GprojCmd::Classify(args) } => gproj_classify(&s, args),
        Command::Defo { cmd: DefoCmd::Ring(args) } => defo_ring(&s, args),
        Command::Lift { cmd: LiftCmd::Probe { module, order } } => lift_probe(&s, module, *order),
        Command::Transport(args) => transport(&s, args),
    }
}

/// `key: value` lines, nested keys joined with dots.
pub fn render_text(v: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(map) => {
                for (k, x) in map {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&key, x, out);
                }
            }
            Value::String(s) => out.push_str(&format!("{prefix}: {s}\n")),
            other => out.push_str(&format!("{prefix}: {other}\n")),
        }
    }
    let mut out = String::new();
    walk("", v, &mut out);
    out
}

pub fn render(cli: &Cli, report: &Value) -> String {
    if cli.text {
        render_text(report)
    } else {
        let mut s = serde_json::to_string_pretty(report).expect("JSON values serialize");
        s.push('\n');
        s
    }
}

/// Module JSON for a module, for writing fixtures.
pub fn module_json(m: &Representation) -> String {
    serde_json::to_string_pretty(&ModuleSpec::from_module(m)).expect("module serializes")
}
