//! Command-line front end. `run` returns the process exit code: 0 holds or
//! verified, 1 fails or counterexample, 2 usage or input error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::deciders::{decide, graded_unit_regular_elements, Decomposition, Property, PropertyVerdict, Witness};
use crate::error::{Error, Result};
use crate::grading::{graded_jacobson_radical, is_graded_local, GradedRing};
use crate::harness::{
    parse_counterexample, replay, search_counterexample, verify, CorpusSpec, Implication, ReplayOutcome, Report,
    SearchOutcome,
};
use crate::ideal::jacobson_radical;
use crate::spec::{parse_spec, Builder};
use crate::Caps;

#[derive(Debug, Parser)]
#[command(name = "gunc", version, about = "Graded U-nil clean rings: inspect, check, verify, search")]
pub struct Cli {
    #[command(flatten)]
    caps: CapArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct CapArgs {
    /// Largest ring order accepted (default 4096).
    #[arg(long, global = true, requires = "allow_large")]
    max_order: Option<usize>,
    /// Largest ring order for ideal-lattice work (default 512).
    #[arg(long, global = true, requires = "allow_large")]
    max_ideal_order: Option<usize>,
    /// Acknowledge that raised caps can make runs very slow.
    #[arg(long, global = true)]
    allow_large: bool,
}

impl CapArgs {
    fn apply(&self, mut caps: Caps) -> Caps {
        if let Some(n) = self.max_order {
            caps.order = n;
        }
        if let Some(n) = self.max_ideal_order {
            caps.ideal_order = n;
        }
        caps
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print structural facts about a ring.
    Inspect {
        spec: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Decide a property on every homogeneous element.
    Check {
        spec: PathBuf,
        #[arg(long, short)]
        property: Property,
        #[arg(long)]
        emit_witnesses: bool,
        /// Nil-good summands need only be homogeneous, not of the element's degree.
        #[arg(long)]
        strict_literal_nilgood: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run theorem checks over a corpus.
    Verify {
        /// Registry ids, or `all`.
        #[arg(default_value = "all")]
        ids: Vec<String>,
        /// Corpus spec file; the built-in default corpus otherwise.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, env = "GUNC_WORKERS", default_value_t = 1)]
        workers: usize,
        /// Write each counterexample to this directory as a replayable file.
        #[arg(long)]
        counterexamples: Option<PathBuf>,
        /// List per-instance rows even when verifying every theorem.
        #[arg(long)]
        rows: bool,
        #[arg(long)]
        json: bool,
    },
    /// Look for an instance meeting the hypotheses but not the conclusion.
    Search {
        /// For example `re-u-nil-clean => graded-u-nil-clean`.
        #[arg(long, short)]
        query: String,
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Re-run a recorded counterexample.
    Replay {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

/// Parses `args` and runs the command, printing to stdout and stderr.
pub fn run<I, T>(args: I) -> i32
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
    match execute(&cli) {
        Ok((code, out)) => {
            print!("{out}");
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn read(path: &Path) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

fn load_corpus(path: Option<&Path>, seed: Option<u64>, caps: &CapArgs) -> Result<CorpusSpec> {
    let mut spec = match path {
        Some(p) => serde_json::from_str(&read(p)?).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?,
        None => CorpusSpec::default(),
    };
    if let Some(s) = seed {
        spec.seed = s;
    }
    spec.caps = caps.apply(spec.caps);
    Ok(spec)
}

fn execute(cli: &Cli) -> Result<(i32, String)> {
    let caps = cli.caps.apply(Caps::default());
    match &cli.command {
        Command::Inspect { spec, json } => {
            let r = Builder::new(caps).build(&parse_spec(&read(spec)?)?)?;
            Ok((0, inspect(&r, &caps, *json)))
        }
        Command::Check { spec, property, emit_witnesses, strict_literal_nilgood, json } => {
            let start = Instant::now();
            let r = Builder::new(caps).build(&parse_spec(&read(spec)?)?)?;
            let verdict = decide(&r, *property, *strict_literal_nilgood);
            let code = if verdict.holds { 0 } else { 1 };
            let elapsed = start.elapsed().as_millis();
            let out = if *json {
                check_json(&r, spec, &verdict, *emit_witnesses, elapsed)
            } else {
                check_text(&r, &verdict, *emit_witnesses)
            };
            Ok((code, out))
        }
        Command::Verify { ids, corpus, seed, workers, counterexamples, rows, json } => {
            let spec = load_corpus(corpus.as_deref(), *seed, &cli.caps)?;
            let report = verify(ids, &spec, *workers)?;
            if let Some(dir) = counterexamples {
                std::fs::create_dir_all(dir)?;
                for (i, c) in report.counterexamples().enumerate() {
                    let name = format!("{:03}-{}.json", i, c.theorem);
                    std::fs::write(dir.join(name), serde_json::to_string_pretty(c).expect("serializable"))?;
                }
            }
            for t in report.theorems.iter().filter(|t| t.applicable_instances == 0) {
                eprintln!("WARNING: {} has 0 applicable instances", t.id);
            }
            let code = if report.is_clean() { 0 } else { 1 };
            let all = ids.iter().any(|i| i == "all");
            let out = if *json {
                serde_json::to_string_pretty(&report).expect("serializable") + "\n"
            } else {
                verify_text(&report, *rows || !all)
            };
            Ok((code, out))
        }
        Command::Search { query, corpus, seed, json } => {
            let q: Implication = query.parse()?;
            let spec = load_corpus(corpus.as_deref(), *seed, &cli.caps)?;
            let outcome = search_counterexample(&q, &spec)?;
            let code = if matches!(outcome, SearchOutcome::Found { .. }) { 1 } else { 0 };
            let out = if *json {
                serde_json::to_string_pretty(&outcome).expect("serializable") + "\n"
            } else {
                match &outcome {
                    SearchOutcome::Found { instance, spec, scanned } => format!(
                        "counterexample after {scanned} instances: {instance}\n{}\n",
                        spec.to_json_pretty()
                    ),
                    SearchOutcome::Exhausted { scanned, satisfying_hypotheses } => format!(
                        "exhausted: {scanned} instances scanned, {satisfying_hypotheses} met the hypotheses\n"
                    ),
                }
            };
            Ok((code, out))
        }
        Command::Replay { file, json } => {
            let c = parse_counterexample(&read(file)?)?;
            let outcome = replay(&c, &caps)?;
            let code = if outcome == ReplayOutcome::Reproduced { 1 } else { 0 };
            let out = if *json {
                serde_json::to_string_pretty(&outcome).expect("serializable") + "\n"
            } else {
                match &outcome {
                    ReplayOutcome::Reproduced => format!("fail reproduced: {} on {} ({})\n", c.theorem, c.instance, c.case),
                    ReplayOutcome::Stale { now } => format!("stale: {} on {} ({}) now gives {now:?}\n", c.theorem, c.instance, c.case),
                }
            };
            Ok((code, out))
        }
    }
}

fn names(r: &GradedRing, xs: impl IntoIterator<Item = usize>) -> Vec<String> {
    xs.into_iter().map(|x| r.group().name(x).to_string()).collect()
}

fn labels(r: &GradedRing, xs: impl IntoIterator<Item = usize>) -> Vec<String> {
    xs.into_iter().map(|x| r.ring().label(x).to_string()).collect()
}

fn inspect(r: &GradedRing, caps: &Caps, json: bool) -> String {
    let ring = r.ring();
    let group = r.group();
    let sizes: serde_json::Map<String, serde_json::Value> =
        group.elements().map(|g| (group.name(g).to_string(), json!(r.component(g).len()))).collect();
    let gur: serde_json::Map<String, serde_json::Value> = graded_unit_regular_elements(r)
        .iter()
        .enumerate()
        .map(|(g, s)| (group.name(g).to_string(), json!(s.len())))
        .collect();
    let idem_e = r.identity_component().iter().filter(|&x| ring.is_idempotent(x)).count();
    let j = jacobson_radical(ring);
    let jg = graded_jacobson_radical(r, caps);
    let local = is_graded_local(r, caps);
    let doc = json!({
        "order": r.order(),
        "group": names(r, group.elements()),
        "support": names(r, r.support()),
        "component_sizes": sizes,
        "units": ring.units().len(),
        "nilpotents": ring.nilpotents().len(),
        "idempotents_identity_component": idem_e,
        "graded_unit_regular_sizes": gur,
        "jacobson_radical": labels(r, j.iter()),
        "graded_jacobson_radical": jg.as_ref().map(|i| json!(labels(r, i.members.iter()))).unwrap_or_else(|e| json!({"error": e.to_string()})),
        "graded_local": local.as_ref().map(|b| json!(b)).unwrap_or_else(|e| json!({"error": e.to_string()})),
        "degenerate": r.order() == 1,
    });
    if json {
        return serde_json::to_string_pretty(&doc).expect("serializable") + "\n";
    }
    let mut s = String::new();
    if r.order() == 1 {
        s.push_str("notice: degenerate ring (order 1, 0 = 1)\n");
    }
    let show = |v: &serde_json::Value| match v {
        serde_json::Value::Array(a) => {
            let items: Vec<String> = a.iter().map(|x| x.as_str().unwrap_or_default().to_string()).collect();
            format!("{{{}}}", items.join(", "))
        }
        other => other.to_string(),
    };
    let _ = writeln!(s, "order: {}", r.order());
    let _ = writeln!(s, "support: {}", show(&doc["support"]));
    let _ = writeln!(s, "component sizes: {}", doc["component_sizes"]);
    let _ = writeln!(s, "|U| = {}, |N| = {}, |Idem(R_e)| = {}", doc["units"], doc["nilpotents"], idem_e);
    let _ = writeln!(s, "gur sizes: {}", doc["graded_unit_regular_sizes"]);
    let _ = writeln!(s, "J(R) = {}", show(&doc["jacobson_radical"]));
    let _ = writeln!(s, "J^g(R) = {}", show(&doc["graded_jacobson_radical"]));
    let _ = writeln!(s, "graded-local: {}", show(&doc["graded_local"]));
    s
}

fn describe(r: &GradedRing, x: usize) -> String {
    format!("{x} {}", r.ring().label(x))
}

fn witness_line(r: &GradedRing, w: &Witness) -> String {
    let degree = w.degree.map_or_else(|| "-".to_string(), |g| r.group().name(g).to_string());
    let d = |x| describe(r, x);
    let rhs = match w.decomposition {
        Decomposition::UnitRegularPlusNilpotent { f, u, n } => format!("f·u + n with f = {}, u = {}, n = {}", d(f), d(u), d(n)),
        Decomposition::UnitRegularPlusUnit { f, u, v } => format!("f·u + v with f = {}, u = {}, v = {}", d(f), d(u), d(v)),
        Decomposition::UnitPlusNilpotent { u, n } => format!("u + n with u = {}, n = {}", d(u), d(n)),
        Decomposition::Nilpotent => "nilpotent".to_string(),
    };
    format!("  x = {} (degree {degree}) = {rhs}\n", d(w.x))
}

fn check_text(r: &GradedRing, v: &PropertyVerdict, emit: bool) -> String {
    let mut s = String::new();
    let verdict = if v.holds { "holds" } else { "fails" };
    let _ = writeln!(s, "{}: {verdict} ({} elements checked)", v.property, v.stats.checked);
    let _ = writeln!(
        s,
        "|U| = {}, |N| = {}, idempotents = {}, unit regular sizes = {:?}",
        v.stats.units, v.stats.nilpotents, v.stats.idempotents, v.stats.unit_regular
    );
    if let Some(x) = v.counterexample {
        let degree = r.degree(x).map(|g| r.group().name(g).to_string()).unwrap_or_else(|_| "-".into());
        let _ = writeln!(s, "counterexample: {} (degree {degree}) has no decomposition", describe(r, x));
    }
    if emit {
        for w in &v.witnesses {
            s.push_str(&witness_line(r, w));
        }
    }
    s
}

fn check_json(r: &GradedRing, spec: &Path, v: &PropertyVerdict, emit: bool, elapsed_ms: u128) -> String {
    let labelled: Vec<serde_json::Value> = if emit {
        v.witnesses
            .iter()
            .map(|w| {
                let mut o = serde_json::to_value(w).expect("serializable");
                o["label"] = json!(r.ring().label(w.x));
                o
            })
            .collect()
    } else {
        Vec::new()
    };
    let doc = json!({
        "instance": spec.display().to_string(),
        "property": v.property,
        "verdict": if v.holds { "holds" } else { "fails" },
        "witnesses": labelled,
        "counterexample": v.counterexample.map(|x| json!({"element": x, "label": r.ring().label(x)})),
        "stats": v.stats,
        "timings": {"elapsed_ms": elapsed_ms},
    });
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

fn verify_text(report: &Report, rows: bool) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "corpus: {} instances (seed {}), {} skipped",
        report.corpus.instances,
        report.corpus.seed,
        report.corpus.skipped.len()
    );
    for t in &report.theorems {
        let _ = writeln!(
            s,
            "{:<7} applicable {:>4}/{:<4} cases {:>5}  pass {:>5}  inapplicable {:>5}  skipped {:>4}  counterexamples {}",
            t.id,
            t.applicable_instances,
            t.instances_tested,
            t.cases,
            t.passes,
            t.inapplicable,
            t.skipped,
            t.counterexamples.len()
        );
        if rows {
            for r in &t.rows {
                let _ = writeln!(
                    s,
                    "    {:<48} pass {:>3}  fail {:>3}  inapplicable {:>3}  skipped {:>3}",
                    r.instance, r.passes, r.fails, r.inapplicable, r.skipped
                );
            }
        }
        for c in &t.counterexamples {
            if let crate::harness::Outcome::Fail { detail, .. } = &c.outcome {
                let _ = writeln!(s, "    COUNTEREXAMPLE {} [{}]: {detail}", c.instance, c.case);
            }
        }
    }
    let total: usize = report.theorems.iter().map(|t| t.counterexamples.len()).sum();
    let _ = writeln!(s, "{total} counterexamples, {} ms", report.timings.total_ms);
    s
}

/// The machine-readable `inspect` document.
pub fn inspect_ring(r: &GradedRing, caps: &Caps) -> serde_json::Value {
    serde_json::from_str(&inspect(r, caps, true)).expect("inspect emits json")
}
