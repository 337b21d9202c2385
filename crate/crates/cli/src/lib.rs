//! Command-line front end. [`run`] parses arguments, runs one analysis on a
//! knowledge-base file and writes a text or JSON report.
//!
//! Exit codes: 0 when the report was computed (for `infer`: entailed),
//! 1 when `infer` finds the goal not entailed, 2 on any error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use sigforget::forget::{forget_kb, project};
use sigforget::inference::{infer, InferenceQuery, Mode, Relation};
use sigforget::lp::{compare_b_sets, compare_inference, infer_lp, minimal_models3};
use sigforget::measures::{measure, measure_all, MeasureResult, SigMeasure};
use sigforget::sat::is_satisfiable;
use sigforget::subsig::{analyze, duality_check, enumerate_mcs, enumerate_mis, mckb, SubsigReport};
use sigforget::{
    display_family, parse_formula, parse_kb, Config, Error, Family, ForgetOp, KnowledgeBase, Parallelism, Signature,
    Strategy,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_ENTAILED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "sigforget", version, about = "Inconsistency-tolerant reasoning by forgetting atoms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classical satisfiability of the whole knowledge base.
    CheckSat(Common),
    /// Forget the given atoms from every formula.
    Forget {
        #[command(flatten)]
        common: Common,
        /// Comma-separated atoms to forget.
        #[arg(long, value_delimiter = ',')]
        atoms: Vec<String>,
    },
    /// Project onto the given atoms.
    Project {
        #[command(flatten)]
        common: Common,
        /// Comma-separated atoms to keep.
        #[arg(long, value_delimiter = ',')]
        keep: Vec<String>,
    },
    /// Minimal inconsistent subsignatures.
    Misig(Common),
    /// Maximal consistent subsignatures.
    Mcsig(Common),
    /// Atoms in no minimal inconsistent subsignature.
    Free(Common),
    /// Minimal inconsistent subsets.
    Mis(Common),
    /// Maximal consistent subsets.
    Mcs(Common),
    /// Projections onto the maximal consistent subsignatures.
    Mckb(Common),
    /// Decide a goal under one of the consequence relations.
    Infer {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = ModeArg::I)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = RelArg::Sig)]
        rel: RelArg,
        #[arg(long)]
        goal: String,
    },
    /// Signature-based inconsistency measures.
    Measure {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = WhichArg::All)]
        which: WhichArg,
    },
    /// Check the hitting-set duality between both families.
    DualityCheck(Common),
    /// Minimal three-valued models.
    LpModels(Common),
    /// Compare three-valued reasoning with occurrence-wise forgetting.
    LpCompare {
        #[command(flatten)]
        common: Common,
        /// Also compare the verdicts on this goal.
        #[arg(long)]
        goal: Option<String>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Knowledge-base file, one formula per line.
    pub kb: PathBuf,
    #[arg(long, value_enum, default_value_t = OpArg::Na)]
    pub op: OpArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    pub format: FormatArg,
    #[arg(long, value_enum, default_value_t = StrategyArg::Duality)]
    pub strategy: StrategyArg,
    /// Signature-size cap for subsignature and three-valued searches.
    #[arg(long)]
    pub max_atoms: Option<usize>,
    /// Cap on forgotten atoms (ve) or occurrences (na) per formula.
    #[arg(long)]
    pub max_expansion: Option<usize>,
    /// Run on one thread.
    #[arg(long)]
    pub sequential: bool,
    /// Include wall time in the report. Reports are otherwise byte-identical
    /// across runs.
    #[arg(long)]
    pub timing: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpArg {
    Ve,
    Na,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormatArg {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum StrategyArg {
    Brute,
    Duality,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    I,
    W,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelArg {
    Sig,
    Subset,
    Lp,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum WhichArg {
    Misig,
    #[value(name = "misig-c")]
    MisigC,
    Mcsig,
    P,
    All,
}

impl From<OpArg> for ForgetOp {
    fn from(op: OpArg) -> ForgetOp {
        match op {
            OpArg::Ve => ForgetOp::Ve,
            OpArg::Na => ForgetOp::Na,
        }
    }
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::I => Mode::Inevitable,
            ModeArg::W => Mode::Weak,
        }
    }
}

impl Common {
    fn config(&self) -> Config {
        let strategy = match self.strategy {
            StrategyArg::Brute => Strategy::BruteForce,
            StrategyArg::Duality => Strategy::Duality,
        };
        let mut cfg = Config { strategy, ..Config::default() };
        if self.sequential {
            cfg.parallelism = Parallelism::Sequential;
        }
        if let Some(n) = self.max_atoms {
            cfg.limits.max_brute_atoms = n;
            cfg.limits.max_enum_atoms = n;
            cfg.limits.max_lp_atoms = n;
        }
        if let Some(n) = self.max_expansion {
            cfg.limits.max_expansion = n;
        }
        cfg
    }
}

/// A computed report: JSON fields plus the text rendering.
struct Report {
    fields: Map<String, Value>,
    text: Vec<String>,
    exit: i32,
}

impl Report {
    fn new(command: &str) -> Report {
        let mut fields = Map::new();
        fields.insert("command".into(), json!(command));
        Report {
            fields,
            text: Vec::new(),
            exit: EXIT_OK,
        }
    }

    fn set(&mut self, key: &str, value: Value) {
        self.fields.insert(key.into(), value);
    }

    fn line(&mut self, line: impl Into<String>) {
        self.text.push(line.into());
    }
}

#[derive(Debug)]
enum Failure {
    Io(String),
    Lib(Error),
    /// Some measures are undefined; the others were computed.
    Measure {
        text: Vec<String>,
        values: Vec<Value>,
        message: String,
    },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Lib(e)
    }
}

fn signature_json(s: &Signature) -> Value {
    json!(s.names())
}

fn family_json(f: &Family) -> Value {
    Value::Array(f.iter().map(signature_json).collect())
}

fn kb_json(kb: &KnowledgeBase) -> Value {
    json!(kb.iter().map(|f| f.to_string()).collect::<Vec<_>>())
}

fn read_kb(common: &Common) -> Result<KnowledgeBase, Failure> {
    let text = std::fs::read_to_string(&common.kb)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", common.kb.display())))?;
    Ok(parse_kb(&text)?)
}

fn parse_atoms(names: &[String]) -> Result<Signature, Failure> {
    let names: Vec<&str> = names.iter().map(|s| s.trim()).filter(|s| !s.is_empty()).collect();
    Ok(Signature::from_names(&names)?)
}

fn with_operator(report: &mut Report, op: Option<ForgetOp>, strategy: &str) {
    report.set("operator", op.map_or(Value::Null, |o| json!(o.name())));
    report.set("strategy", json!(strategy));
}

fn warnings(report: &mut Report, warnings: &[String]) {
    report.set("warnings", json!(warnings));
    for w in warnings {
        report.line(format!("warning: {w}"));
    }
}

fn families(report: &mut Report, analysis: &SubsigReport) {
    with_operator(report, Some(analysis.operator), analysis.strategy.name());
}

fn measure_line(m: &MeasureResult) -> (String, Value) {
    (
        format!("{} {}", m.name, m.decimal()),
        json!({ "name": m.name, "value": m.decimal(), "exact": m.value.to_string() }),
    )
}

fn execute(command: &Command) -> Result<Report, Failure> {
    match command {
        Command::CheckSat(c) => {
            let kb = read_kb(c)?;
            let mut r = Report::new("check-sat");
            with_operator(&mut r, None, "solver");
            let result = is_satisfiable(kb.formulas())?;
            r.set("satisfiable", json!(result.is_sat()));
            match result.witness() {
                Some(w) => {
                    let model: Map<String, Value> = w.iter().map(|(a, v)| (a.to_string(), json!(v))).collect();
                    r.set("model", Value::Object(model));
                    r.line("satisfiable");
                    r.line(format!("model: {w}"));
                }
                None => {
                    r.set("model", Value::Null);
                    r.line("unsatisfiable");
                }
            }
            Ok(r)
        }
        Command::Forget { common: c, atoms } | Command::Project { common: c, keep: atoms } => {
            let kb = read_kb(c)?;
            let cfg = c.config();
            let sig = parse_atoms(atoms)?;
            let op = c.op.into();
            let (name, out) = if matches!(command, Command::Forget { .. }) {
                ("forget", forget_kb(&kb, &sig, op, &cfg)?)
            } else {
                ("project", project(&kb, &sig, op, &cfg)?)
            };
            let mut r = Report::new(name);
            with_operator(&mut r, Some(op), "expansion");
            r.set("atoms", signature_json(&sig));
            r.set("formulas", kb_json(&out));
            for f in out.iter() {
                r.line(f.to_string());
            }
            Ok(r)
        }
        Command::Misig(c) | Command::Mcsig(c) | Command::Free(c) => {
            let kb = read_kb(c)?;
            let analysis = analyze(&kb, c.op.into(), &c.config())?;
            let (name, key, value, text) = match command {
                Command::Misig(_) => ("misig", "misig", family_json(&analysis.misig), display_family(&analysis.misig)),
                Command::Mcsig(_) => ("mcsig", "mcsig", family_json(&analysis.mcsig), display_family(&analysis.mcsig)),
                _ => (
                    "free",
                    "free_atoms",
                    signature_json(&analysis.free_atoms),
                    analysis.free_atoms.to_string(),
                ),
            };
            let mut r = Report::new(name);
            families(&mut r, &analysis);
            r.set(key, value);
            r.line(text);
            warnings(&mut r, &analysis.warnings);
            Ok(r)
        }
        Command::Mis(c) | Command::Mcs(c) => {
            let kb = read_kb(c)?;
            let cfg = c.config();
            let (name, sets) = if matches!(command, Command::Mis(_)) {
                ("mis", enumerate_mis(&kb, &cfg)?)
            } else {
                ("mcs", enumerate_mcs(&kb, &cfg)?)
            };
            let mut r = Report::new(name);
            with_operator(&mut r, None, "subsets");
            r.set("sets", Value::Array(sets.iter().map(kb_json).collect()));
            if sets.is_empty() {
                r.line("[]");
            }
            for s in &sets {
                r.line(s.to_string());
            }
            Ok(r)
        }
        Command::Mckb(c) => {
            let kb = read_kb(c)?;
            let cfg = c.config();
            let op = c.op.into();
            let projected = mckb(&kb, op, &cfg)?;
            let mut r = Report::new("mckb");
            with_operator(&mut r, Some(op), cfg.strategy.name());
            r.set(
                "projections",
                Value::Array(
                    projected
                        .iter()
                        .map(|p| json!({ "signature": signature_json(&p.signature), "formulas": kb_json(&p.kb) }))
                        .collect(),
                ),
            );
            if projected.is_empty() {
                r.line("[]");
            }
            for p in &projected {
                r.line(format!("{}: {}", p.signature, p.kb));
            }
            Ok(r)
        }
        Command::Infer {
            common: c,
            mode,
            rel,
            goal,
        } => {
            let kb = read_kb(c)?;
            let cfg = c.config();
            let goal = parse_formula(goal)?;
            let mut r = Report::new("infer");
            r.set("goal", json!(goal.to_string()));
            let (entailed, vacuous, relation) = match rel {
                RelArg::Lp => {
                    with_operator(&mut r, None, "three-valued");
                    (infer_lp(&kb, &goal, &cfg)?, false, "lp".to_string())
                }
                RelArg::Sig | RelArg::Subset => {
                    let relation = match rel {
                        RelArg::Sig => Relation::Signature {
                            mode: (*mode).into(),
                            op: c.op.into(),
                        },
                        _ => Relation::Subset { mode: (*mode).into() },
                    };
                    match relation {
                        Relation::Signature { op, .. } => with_operator(&mut r, Some(op), cfg.strategy.name()),
                        Relation::Subset { .. } => with_operator(&mut r, None, "subsets"),
                    }
                    let q = InferenceQuery {
                        kb,
                        goal,
                        relation,
                    };
                    let answer = infer(&q, &cfg)?;
                    (answer.entailed, answer.vacuous, relation.to_string())
                }
            };
            r.set("relation", json!(relation));
            r.set("entailed", json!(entailed));
            r.set("vacuous", json!(vacuous));
            r.line(if entailed { "entailed" } else { "not entailed" });
            if vacuous {
                r.line("warning: no maximal consistent part exists; the verdict is vacuous");
            }
            r.exit = if entailed { EXIT_OK } else { EXIT_NOT_ENTAILED };
            Ok(r)
        }
        Command::Measure { common: c, which } => {
            let kb = read_kb(c)?;
            let cfg = c.config();
            let op = c.op.into();
            let results = match which {
                WhichArg::All => measure_all(&kb, op, &cfg)?,
                single => {
                    let m = match single {
                        WhichArg::Misig => SigMeasure::Misig,
                        WhichArg::MisigC => SigMeasure::MisigC,
                        WhichArg::Mcsig => SigMeasure::Mcsig,
                        _ => SigMeasure::P,
                    };
                    vec![measure(&kb, m, op, &cfg)]
                }
            };
            let mut r = Report::new("measure");
            with_operator(&mut r, Some(op), cfg.strategy.name());
            let mut values = Vec::new();
            let mut undefined = Vec::new();
            for m in results {
                match m {
                    Ok(m) => {
                        let (line, value) = measure_line(&m);
                        r.line(line);
                        values.push(value);
                    }
                    Err(e @ Error::UndefinedMeasure(_)) => undefined.push(e.to_string()),
                    Err(e) => return Err(e.into()),
                }
            }
            if !undefined.is_empty() {
                return Err(Failure::Measure {
                    text: r.text,
                    values,
                    message: undefined.join("; "),
                });
            }
            r.set("measures", Value::Array(values));
            Ok(r)
        }
        Command::DualityCheck(c) => {
            let kb = read_kb(c)?;
            let cfg = c.config();
            let op = c.op.into();
            let check = duality_check(&kb, op, &cfg)?;
            let mut r = Report::new("duality-check");
            with_operator(&mut r, Some(op), cfg.strategy.name());
            r.set("misig", family_json(&check.misig));
            r.set("mcsig", family_json(&check.mcsig));
            r.set("mcsig_from_misig", family_json(&check.mcsig_from_misig));
            r.set("misig_from_mcsig", family_json(&check.misig_from_mcsig));
            r.set("holds", json!(check.holds()));
            r.line(format!("misig: {}", display_family(&check.misig)));
            r.line(format!("mcsig: {}", display_family(&check.mcsig)));
            r.line(format!("complements of hitting sets of misig: {}", display_family(&check.mcsig_from_misig)));
            r.line(format!("hitting sets of mcsig complements: {}", display_family(&check.misig_from_mcsig)));
            r.line(if check.holds() { "duality holds" } else { "duality fails" });
            Ok(r)
        }
        Command::LpModels(c) => {
            let kb = read_kb(c)?;
            let cfg = c.config();
            let models = minimal_models3(&kb, &kb.atoms(), &cfg)?;
            let mut r = Report::new("lp-models");
            let strategy = if kb.atoms().len() <= cfg.limits.max_lp_scan_atoms {
                "scan"
            } else {
                "encoding"
            };
            with_operator(&mut r, None, strategy);
            r.set(
                "models",
                Value::Array(
                    models
                        .iter()
                        .map(|v| {
                            Value::Object(v.iter().map(|(a, t)| (a.to_string(), json!(t.to_string()))).collect())
                        })
                        .collect(),
                ),
            );
            for v in &models {
                r.line(v.to_string());
            }
            Ok(r)
        }
        Command::LpCompare { common: c, goal } => {
            let kb = read_kb(c)?;
            let cfg = c.config();
            let cmp = compare_b_sets(&kb, &cfg)?;
            let mut r = Report::new("lp-compare");
            with_operator(&mut r, Some(ForgetOp::Na), cfg.strategy.name());
            r.set("b_sets", family_json(&cmp.b_sets));
            r.set("misig", family_json(&cmp.misig));
            r.set("mcsig_complements", family_json(&cmp.mcsig_complements));
            r.set("misig_hitting_sets", family_json(&cmp.misig_hitting_sets));
            r.set("b_sets_in_misig", json!(cmp.literal_statement_holds()));
            r.set("b_sets_are_mcsig_complements", json!(cmp.matches_complements()));
            r.set("b_sets_are_misig_hitting_sets", json!(cmp.matches_hitting_sets()));
            r.set("discrepancy", cmp.discrepancy().map_or(Value::Null, |d| json!(d)));
            r.line(format!("minimal B-sets: {}", display_family(&cmp.b_sets)));
            r.line(format!("misig: {}", display_family(&cmp.misig)));
            r.line(format!("mcsig complements: {}", display_family(&cmp.mcsig_complements)));
            r.line(format!("minimal hitting sets of misig: {}", display_family(&cmp.misig_hitting_sets)));
            r.line(format!("B-sets within misig: {}", yes_no(cmp.literal_statement_holds())));
            r.line(format!("B-sets equal mcsig complements: {}", yes_no(cmp.matches_complements())));
            r.line(format!("B-sets equal hitting sets: {}", yes_no(cmp.matches_hitting_sets())));
            if let Some(d) = cmp.discrepancy() {
                r.line(format!("discrepancy: {d}"));
            }
            if let Some(goal) = goal {
                let goal = parse_formula(goal)?;
                let inf = compare_inference(&kb, &goal, &cfg)?;
                r.set(
                    "inference",
                    json!({
                        "goal": goal.to_string(),
                        "lp": inf.lp,
                        "na_inevitable": inf.na_inevitable,
                        "goal_projected": inf.goal_projected,
                        "agree": inf.agree(),
                    }),
                );
                r.line(format!("goal {goal}: three-valued {}", inf.lp));
                r.line(format!("goal {goal}: inevitable under na {}", inf.na_inevitable));
                r.line(format!("goal {goal}: inevitable under na, goal projected {}", inf.goal_projected));
                r.line(if inf.agree() { "verdicts agree" } else { "verdicts disagree" });
            }
            Ok(r)
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn common(command: &Command) -> &Common {
    match command {
        Command::CheckSat(c)
        | Command::Misig(c)
        | Command::Mcsig(c)
        | Command::Free(c)
        | Command::Mis(c)
        | Command::Mcs(c)
        | Command::Mckb(c)
        | Command::DualityCheck(c)
        | Command::LpModels(c) => c,
        Command::Forget { common, .. }
        | Command::Project { common, .. }
        | Command::Infer { common, .. }
        | Command::Measure { common, .. }
        | Command::LpCompare { common, .. } => common,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Syntax { .. } | Error::ReservedWord(_) => "parse",
        Error::UndefinedMeasure(_) => "undefined-measure",
        Error::Invariant(_) => "internal",
        Error::NotASubsignature(_) | Error::OccurrenceMismatch { .. } | Error::UnassignedAtom(_) => "input",
        _ => "cap",
    }
}

/// Runs one invocation, writing the report to `out` and diagnostics to
/// `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let c = common(&cli.command);
    let start = Instant::now();
    let result = execute(&cli.command);
    let elapsed = start.elapsed();
    match result {
        Ok(mut report) => {
            if c.timing {
                report.set("wall_time_ms", json!(elapsed.as_secs_f64() * 1e3));
                report.line(format!("wall time: {:.3} ms", elapsed.as_secs_f64() * 1e3));
            }
            let written = match c.format {
                FormatArg::Json => {
                    let text = serde_json::to_string_pretty(&Value::Object(report.fields)).expect("json values");
                    writeln!(out, "{text}")
                }
                FormatArg::Text => report.text.iter().try_for_each(|l| writeln!(out, "{l}")),
            };
            if written.is_err() {
                return EXIT_ERROR;
            }
            report.exit
        }
        Err(failure) => {
            let (kind, message, text, values) = match failure {
                Failure::Io(m) => ("io", m, Vec::new(), Vec::new()),
                Failure::Lib(e) => (error_kind(&e), e.to_string(), Vec::new(), Vec::new()),
                Failure::Measure { text, values, message } => ("undefined-measure", message, text, values),
            };
            match c.format {
                FormatArg::Json => {
                    let mut body = json!({ "error": { "kind": kind, "message": message } });
                    if !values.is_empty() {
                        body["measures"] = Value::Array(values);
                    }
                    let _ = writeln!(out, "{}", serde_json::to_string_pretty(&body).expect("json values"));
                }
                FormatArg::Text => {
                    for l in &text {
                        let _ = writeln!(out, "{l}");
                    }
                }
            }
            let _ = writeln!(err, "error ({kind}): {message}");
            EXIT_ERROR
        }
    }
}
