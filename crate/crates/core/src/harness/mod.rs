//! Corpus generation, the theorem registry, verification reports,
//! counterexample search and replay.

pub mod corpus;
pub mod theorems;

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use corpus::{generate_corpus, Corpus, CorpusSpec, Instance, Member, Recipe, SkippedInstance};
pub use theorems::{theorem, Case, Outcome, Subject, Theorem, REGISTRY};

use crate::deciders::{holds, Property};
use crate::error::{Error, Result};
use crate::grading::is_graded_local;
use crate::spec::{Builder, RingSpecDocument};
use crate::Caps;

pub const REPORT_SCHEMA: &str = "gunc-report/1";
pub const COUNTEREXAMPLE_SCHEMA: &str = "gunc-counterexample/1";

/// A serialized failing case, replayable on its own.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Counterexample {
    pub schema: String,
    pub theorem: String,
    pub instance: String,
    pub case: String,
    pub spec: RingSpecDocument,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceRow {
    pub instance: String,
    pub cases: usize,
    pub passes: usize,
    pub fails: usize,
    pub inapplicable: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremSection {
    pub id: String,
    pub statement: String,
    pub instances_tested: usize,
    /// Instances with at least one case that passed or failed.
    pub applicable_instances: usize,
    pub cases: usize,
    pub passes: usize,
    pub inapplicable: usize,
    pub skipped: usize,
    pub counterexamples: Vec<Counterexample>,
    /// Applicable or skipped instances only.
    pub rows: Vec<InstanceRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub seed: u64,
    pub caps: Caps,
    pub instances: usize,
    pub skipped: Vec<SkippedInstance>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub corpus_ms: u128,
    pub theorems_ms: BTreeMap<String, u128>,
    pub total_ms: u128,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub corpus: CorpusSummary,
    pub theorems: Vec<TheoremSection>,
    pub timings: Timings,
}

impl Report {
    pub fn counterexamples(&self) -> impl Iterator<Item = &Counterexample> {
        self.theorems.iter().flat_map(|t| &t.counterexamples)
    }

    pub fn is_clean(&self) -> bool {
        self.counterexamples().next().is_none()
    }

    /// The machine report without timing fields, for determinism comparisons.
    pub fn without_timings(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("serializable");
        v.as_object_mut().expect("object").remove("timings");
        v
    }
}

/// Resolves `"all"` or a list of registry ids.
pub fn select(ids: &[String]) -> Result<Vec<&'static Theorem>> {
    if ids.is_empty() || ids.iter().any(|i| i == "all") {
        return Ok(REGISTRY.iter().collect());
    }
    ids.iter().map(|i| theorem(i)).collect()
}

fn section(t: &Theorem, subjects: &[Subject], outcomes: Vec<Vec<Case>>) -> TheoremSection {
    let mut s = TheoremSection {
        id: t.id.to_string(),
        statement: t.statement.to_string(),
        instances_tested: subjects.len(),
        applicable_instances: 0,
        cases: 0,
        passes: 0,
        inapplicable: 0,
        skipped: 0,
        counterexamples: Vec::new(),
        rows: Vec::new(),
    };
    for (subject, cases) in subjects.iter().zip(outcomes) {
        let instance = &subject.member.instance;
        let mut row = InstanceRow { instance: instance.id.clone(), cases: cases.len(), passes: 0, fails: 0, inapplicable: 0, skipped: 0 };
        for c in cases {
            match &c.outcome {
                Outcome::Pass => row.passes += 1,
                Outcome::Inapplicable { .. } => row.inapplicable += 1,
                Outcome::Skipped { .. } => row.skipped += 1,
                Outcome::Fail { .. } => {
                    row.fails += 1;
                    s.counterexamples.push(Counterexample {
                        schema: COUNTEREXAMPLE_SCHEMA.to_string(),
                        theorem: t.id.to_string(),
                        instance: instance.id.clone(),
                        case: c.name,
                        spec: instance.spec.clone(),
                        outcome: c.outcome,
                    });
                }
            }
        }
        s.cases += row.cases;
        s.passes += row.passes;
        s.inapplicable += row.inapplicable;
        s.skipped += row.skipped;
        if row.passes + row.fails > 0 {
            s.applicable_instances += 1;
        }
        if row.passes + row.fails + row.skipped > 0 {
            s.rows.push(row);
        }
    }
    s.counterexamples.sort_by_cached_key(|c| (serde_json::to_string(&c.spec).expect("serializable"), c.case.clone()));
    s
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Io(std::io::Error::other(e)))
}

/// Runs the selected theorems over a generated corpus with `workers` threads.
pub fn verify(ids: &[String], spec: &CorpusSpec, workers: usize) -> Result<Report> {
    let theorems = select(ids)?;
    let start = Instant::now();
    pool(workers)?.install(|| {
        let builder = Builder::new(spec.caps);
        let corpus = generate_corpus(spec, &builder)?;
        let mut timings = Timings { corpus_ms: start.elapsed().as_millis(), ..Timings::default() };
        let subjects: Vec<Subject> = corpus.members.iter().map(|m| Subject::new(m, &builder)).collect();
        let mut sections = Vec::new();
        for t in theorems {
            let t0 = Instant::now();
            let outcomes: Vec<Vec<Case>> = subjects.par_iter().map(|s| (t.check)(s)).collect();
            sections.push(section(t, &subjects, outcomes));
            timings.theorems_ms.insert(t.id.to_string(), t0.elapsed().as_millis());
        }
        timings.total_ms = start.elapsed().as_millis();
        Ok(Report {
            schema: REPORT_SCHEMA.to_string(),
            corpus: CorpusSummary {
                seed: spec.seed,
                caps: spec.caps,
                instances: corpus.members.len(),
                skipped: corpus.skipped,
            },
            theorems: sections,
            timings,
        })
    })
}

/// Decider-backed instance predicates for counterexample search.
pub const PREDICATES: [&str; 11] = [
    "graded-u-nil-clean",
    "re-u-nil-clean",
    "u-nil-clean",
    "graded-nil-good",
    "graded-g-clean",
    "g-clean",
    "graded-local",
    "commutative",
    "abelian-idempotents",
    "true",
    "false",
];

fn evaluate(name: &str, member: &Member, caps: &Caps) -> Result<bool> {
    let r = &member.ring;
    Ok(match name {
        "re-u-nil-clean" => {
            let (re, _) = r.identity_component_ring();
            holds(
                &crate::GradedRing::trivial(std::sync::Arc::new(re.clone()), crate::FiniteGroup::trivial()),
                Property::UNilClean,
            )
        }
        "graded-local" => is_graded_local(r, caps)?,
        "commutative" => r.ring().is_commutative(),
        "abelian-idempotents" => {
            r.identity_component().iter().all(|x| !r.ring().is_idempotent(x) || r.ring().is_central(x))
        }
        "true" => true,
        "false" => false,
        other => holds(r, other.parse().map_err(|_| Error::UnknownPredicate(other.to_string()))?),
    })
}

/// `hypotheses ⟹ conclusion` over predicate names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Implication {
    pub hypotheses: Vec<String>,
    pub conclusion: String,
}

impl std::str::FromStr for Implication {
    type Err = Error;

    /// `"a & b => c"`; `⇒` is accepted for `=>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.replace('⇒', "=>");
        let (lhs, rhs) = s
            .split_once("=>")
            .ok_or_else(|| Error::UnknownPredicate(format!("{s} (expected \"hypotheses => conclusion\")")))?;
        let known = |p: &str| -> Result<String> {
            let p = p.trim();
            if PREDICATES.contains(&p) {
                Ok(p.to_string())
            } else {
                Err(Error::UnknownPredicate(p.to_string()))
            }
        };
        let hypotheses = lhs.split('&').filter(|p| !p.trim().is_empty()).map(known).collect::<Result<_>>()?;
        Ok(Self { hypotheses, conclusion: known(rhs)? })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum SearchOutcome {
    Found { instance: String, spec: RingSpecDocument, scanned: usize },
    Exhausted { scanned: usize, satisfying_hypotheses: usize },
}

/// Scans the corpus in generation order for an instance meeting every
/// hypothesis but not the conclusion.
pub fn search_counterexample(query: &Implication, spec: &CorpusSpec) -> Result<SearchOutcome> {
    let builder = Builder::new(spec.caps);
    let corpus = generate_corpus(spec, &builder)?;
    let mut satisfying = 0;
    for (i, m) in corpus.members.iter().enumerate() {
        let mut meets = true;
        for h in &query.hypotheses {
            if !evaluate(h, m, &spec.caps)? {
                meets = false;
                break;
            }
        }
        if !meets {
            continue;
        }
        satisfying += 1;
        if !evaluate(&query.conclusion, m, &spec.caps)? {
            return Ok(SearchOutcome::Found { instance: m.instance.id.clone(), spec: m.instance.spec.clone(), scanned: i + 1 });
        }
    }
    Ok(SearchOutcome::Exhausted { scanned: corpus.members.len(), satisfying_hypotheses: satisfying })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "replay", rename_all = "kebab-case")]
pub enum ReplayOutcome {
    /// The recorded failure occurs again, bit for bit.
    Reproduced,
    /// The case no longer fails as recorded.
    Stale { now: Option<Outcome> },
}

pub fn parse_counterexample(text: &str) -> Result<Counterexample> {
    let c: Counterexample = serde_json::from_str(text).map_err(|e| Error::SchemaMismatch(e.to_string()))?;
    if c.schema != COUNTEREXAMPLE_SCHEMA {
        return Err(Error::SchemaMismatch(format!("expected {COUNTEREXAMPLE_SCHEMA}, found {}", c.schema)));
    }
    Ok(c)
}

/// Rebuilds the instance and re-runs the recorded theorem case.
pub fn replay(c: &Counterexample, caps: &Caps) -> Result<ReplayOutcome> {
    let t = theorem(&c.theorem)?;
    let builder = Builder::new(*caps);
    let leaf_group = match &c.spec.group {
        Some(g) => crate::spec::build_group(g)?,
        None => crate::FiniteGroup::trivial(),
    };
    let member = Member {
        instance: Instance { id: c.instance.clone(), spec: c.spec.clone() },
        ring: builder.build(&c.spec)?,
        leaf_group,
    };
    let now = (t.check)(&Subject::new(&member, &builder)).into_iter().find(|k| k.name == c.case).map(|k| k.outcome);
    Ok(if now.as_ref() == Some(&c.outcome) { ReplayOutcome::Reproduced } else { ReplayOutcome::Stale { now } })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> CorpusSpec {
        CorpusSpec {
            seed: 0,
            caps: Caps::default(),
            recipes: vec![
                Recipe::Zmod { n: vec![2, 4, 6] },
                Recipe::Matrix { bases: vec![2], groups: vec![2], size: 2 },
            ],
        }
    }

    #[test]
    fn empty_corpus_has_no_applicable_instances() {
        let spec = CorpusSpec { seed: 0, caps: Caps::default(), recipes: Vec::new() };
        let report = verify(&["all".into()], &spec, 1).unwrap();
        assert_eq!(report.theorems.len(), 18);
        assert!(report.is_clean());
        assert!(report.theorems.iter().all(|t| t.applicable_instances == 0));
    }

    #[test]
    fn unknown_theorem_is_an_error() {
        assert!(matches!(verify(&["T_X".into()], &tiny(), 1), Err(Error::UnknownTheorem(_))));
    }

    #[test]
    fn reports_are_deterministic() {
        let a = verify(&["all".into()], &tiny(), 1).unwrap();
        let b = verify(&["all".into()], &tiny(), 2).unwrap();
        assert_eq!(a.without_timings(), b.without_timings());
        let main = a.theorems.iter().find(|t| t.id == "T_MAIN").unwrap();
        assert_eq!(main.applicable_instances, 4);
    }

    #[test]
    fn queries_parse() {
        let q: Implication = "re-u-nil-clean ⇒ graded-u-nil-clean".parse().unwrap();
        assert_eq!(q.hypotheses, ["re-u-nil-clean"]);
        assert!(matches!("nope => true".parse::<Implication>(), Err(Error::UnknownPredicate(_))));
        let q: Implication = " => true".parse().unwrap();
        assert!(q.hypotheses.is_empty());
    }

    #[test]
    fn search_tautology_and_falsum() {
        let q: Implication = "graded-u-nil-clean => graded-u-nil-clean".parse().unwrap();
        assert!(matches!(search_counterexample(&q, &tiny()).unwrap(), SearchOutcome::Exhausted { .. }));
        let q: Implication = "false => false".parse().unwrap();
        assert_eq!(
            search_counterexample(&q, &tiny()).unwrap(),
            SearchOutcome::Exhausted { scanned: 7, satisfying_hypotheses: 0 }
        );
        let q: Implication = "true => graded-nil-good".parse().unwrap();
        let SearchOutcome::Found { instance, .. } = search_counterexample(&q, &tiny()).unwrap() else {
            panic!("Z_6 is not nil-good");
        };
        assert_eq!(instance, "Z6");
    }

    #[test]
    fn replay_rejects_bad_files() {
        assert!(matches!(parse_counterexample("{}"), Err(Error::SchemaMismatch(_))));
        assert!(matches!(parse_counterexample("not json"), Err(Error::SchemaMismatch(_))));
    }

    #[test]
    fn replay_detects_stale_records() {
        let c = Counterexample {
            schema: COUNTEREXAMPLE_SCHEMA.into(),
            theorem: "T_P1a".into(),
            instance: "Z4".into(),
            case: "R_e".into(),
            spec: crate::spec::parse_spec(r#"{"ring": {"kind": "zmod", "n": 4}}"#).unwrap(),
            outcome: Outcome::Fail { detail: "made up".into(), element: None, label: None },
        };
        let text = serde_json::to_string(&c).unwrap();
        let back = parse_counterexample(&text).unwrap();
        assert_eq!(replay(&back, &Caps::default()).unwrap(), ReplayOutcome::Stale { now: Some(Outcome::Pass) });
    }
}
