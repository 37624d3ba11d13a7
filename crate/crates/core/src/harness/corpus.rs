//! Deterministic instance generation.

use std::sync::Arc;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::constructions::Sigma;
use crate::error::Result;
use crate::grading::{homogeneous_ideal_lattice, is_graded_nil, is_homogeneous_ideal, GradedRing};
use crate::group::FiniteGroup;
use crate::ideal::Side;
use crate::spec::{build_group, Builder, ElemRef, GroupSpec, RingExpr, RingSpecDocument};
use crate::Caps;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "recipe", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Recipe {
    /// `Z_n`, trivially graded over the trivial group.
    Zmod { n: Vec<usize> },
    /// `Z_n[C_k]` with its `C_k`-grading, for `n^k ≤ max_order`.
    GroupRing { n: Vec<usize>, k: Vec<usize>, max_order: usize },
    /// `M_size(Z_n)(σ)` over `C_k` for every `σ`, `Z_n` trivially graded.
    Matrix { bases: Vec<usize>, groups: Vec<usize>, size: usize },
    /// `T_size(Z_n)(σ)` over `C_k` for every `σ`.
    Triangular { bases: Vec<usize>, groups: Vec<usize>, size: usize },
    /// `R[H]` regraded by `G/H`, for finite `p`-groups `G`, every nontrivial
    /// `H`, and coefficient rings in which `p` is nilpotent.
    PGroupRings { max_order: usize },
    /// `A[G]` for earlier instances `A` with a nontrivial group.
    GroupRingOver { max_order: usize },
    /// `A∝A` for earlier instances.
    Idealization { max_base_order: usize },
    /// `A × B` over pairs of earlier instances on the same group, sampled
    /// with the corpus seed when there are more than `samples`.
    Products { max_order: usize, samples: usize },
    /// `R/I` for every nonzero proper graded-nil two-sided ideal of earlier instances.
    Quotients { max_order: usize },
    /// `tR` for every central idempotent `t ∉ {0, 1}` of the identity component.
    Corners { max_order: usize },
    /// One explicit document.
    Instance { id: String, spec: RingSpecDocument },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusSpec {
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub caps: Caps,
    pub recipes: Vec<Recipe>,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        Self {
            seed: 0,
            caps: Caps::default(),
            recipes: vec![
                Recipe::Zmod { n: (2..=12).collect() },
                Recipe::GroupRing { n: (2..=12).collect(), k: vec![2, 3, 4], max_order: 256 },
                Recipe::Matrix { bases: vec![2, 3, 4], groups: vec![2, 3], size: 2 },
                Recipe::Triangular { bases: vec![2, 3, 4], groups: vec![2, 3], size: 2 },
                Recipe::Triangular { bases: vec![2, 3, 4], groups: vec![2], size: 3 },
                Recipe::PGroupRings { max_order: 1024 },
                Recipe::GroupRingOver { max_order: 256 },
                Recipe::Idealization { max_base_order: 16 },
                Recipe::Products { max_order: 256, samples: 48 },
                Recipe::Quotients { max_order: 256 },
                Recipe::Corners { max_order: 256 },
            ],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub id: String,
    pub spec: RingSpecDocument,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedInstance {
    pub id: String,
    pub reason: String,
}

/// A generated instance with its built ring.
#[derive(Clone, Debug)]
pub struct Member {
    pub instance: Instance,
    pub ring: Arc<GradedRing>,
    /// The group the document's leaves are graded over.
    pub leaf_group: FiniteGroup,
}

#[derive(Debug, Default)]
pub struct Corpus {
    pub members: Vec<Member>,
    pub skipped: Vec<SkippedInstance>,
}

fn cyclic(k: usize) -> Option<GroupSpec> {
    (k > 1).then_some(GroupSpec::Cyclic { order: k })
}

fn zmod(n: usize) -> RingExpr {
    RingExpr::Zmod { n }
}

fn group_label(spec: &Option<GroupSpec>) -> String {
    fn one(g: &GroupSpec) -> String {
        match g {
            GroupSpec::Cyclic { order } => format!("C{order}"),
            GroupSpec::Product { factors } => factors.iter().map(one).collect::<Vec<_>>().join("x"),
            GroupSpec::Table { names, .. } => format!("G{}", names.len()),
        }
    }
    spec.as_ref().map_or_else(|| "1".to_string(), one)
}

struct Generator<'a> {
    builder: &'a Builder,
    corpus: Corpus,
}

impl Generator<'_> {
    fn push(&mut self, id: String, spec: RingSpecDocument) {
        if self.corpus.members.iter().any(|m| m.instance.id == id) {
            return;
        }
        let built = spec
            .group
            .as_ref()
            .map_or_else(|| Ok(FiniteGroup::trivial()), build_group)
            .and_then(|g| Ok((self.builder.build_expr(&spec.ring, &g, "ring")?, g)));
        match built {
            Ok((ring, leaf_group)) => {
                self.corpus.members.push(Member { instance: Instance { id, spec }, ring, leaf_group })
            }
            Err(e) => self.corpus.skipped.push(SkippedInstance { id, reason: e.to_string() }),
        }
    }

    fn run(&mut self, recipe: &Recipe, seed: u64) -> Result<()> {
        match recipe {
            Recipe::Zmod { n } => {
                for &n in n {
                    self.push(format!("Z{n}"), RingSpecDocument::new(None, zmod(n)));
                }
            }
            Recipe::GroupRing { n, k, max_order } => {
                for &k in k {
                    for &n in n {
                        if (n as u128).pow(k as u32) <= *max_order as u128 {
                            let ring = RingExpr::Groupring { over: zmod(n).boxed() };
                            self.push(format!("Z{n}[C{k}]"), RingSpecDocument::new(cyclic(k), ring));
                        }
                    }
                }
            }
            Recipe::Matrix { bases, groups, size } | Recipe::Triangular { bases, groups, size } => {
                let full = matches!(recipe, Recipe::Matrix { .. });
                for &k in groups {
                    let group = FiniteGroup::cyclic(k);
                    for &n in bases {
                        for sigma in Sigma::all(*size, k) {
                            let names: Vec<&str> = sigma.entries().iter().map(|&g| group.name(g)).collect();
                            let refs = Some(names.iter().map(|&s| ElemRef::from(s)).collect());
                            let over = zmod(n).boxed();
                            let (ring, tag) = if full {
                                (RingExpr::Matrix { over, n: None, sigma: refs }, "M")
                            } else {
                                (RingExpr::Triangular { over, n: None, sigma: refs }, "T")
                            };
                            let id = format!("{tag}{size}(Z{n};{})/C{k}", names.join(","));
                            self.push(id, RingSpecDocument::new(cyclic(k), ring));
                        }
                    }
                }
            }
            Recipe::PGroupRings { max_order } => self.p_group_rings(*max_order),
            Recipe::GroupRingOver { max_order } => {
                let pool: Vec<Member> = self.corpus.members.clone();
                for m in pool {
                    let k = m.ring.group().order();
                    if k < 2 || (m.ring.order() as u128).pow(k as u32) > *max_order as u128 {
                        continue;
                    }
                    let ring = RingExpr::Groupring { over: m.instance.spec.ring.clone().boxed() };
                    self.push(format!("({})[G]", m.instance.id), RingSpecDocument::new(m.instance.spec.group.clone(), ring));
                }
            }
            Recipe::Idealization { max_base_order } => {
                let pool: Vec<Member> = self.corpus.members.clone();
                for m in pool.iter().filter(|m| m.ring.order() <= *max_base_order) {
                    let ring = RingExpr::Idealization { over: m.instance.spec.ring.clone().boxed(), copies: None, module: None };
                    self.push(format!("idl({})", m.instance.id), RingSpecDocument::new(m.instance.spec.group.clone(), ring));
                }
            }
            Recipe::Products { max_order, samples } => {
                let pool: Vec<Member> = self.corpus.members.clone();
                let mut pairs = Vec::new();
                for (i, a) in pool.iter().enumerate() {
                    for b in &pool[i..] {
                        if a.instance.spec.group == b.instance.spec.group
                            && a.ring.group() == b.ring.group()
                            && a.ring.order() * b.ring.order() <= *max_order
                        {
                            pairs.push((a, b));
                        }
                    }
                }
                let chosen: Vec<usize> = if pairs.len() > *samples {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let mut idx = sample(&mut rng, pairs.len(), *samples).into_vec();
                    idx.sort_unstable();
                    idx
                } else {
                    (0..pairs.len()).collect()
                };
                for i in chosen {
                    let (a, b) = pairs[i];
                    let ring = RingExpr::Product { factors: vec![a.instance.spec.ring.clone(), b.instance.spec.ring.clone()] };
                    let id = format!("{} x {}", a.instance.id, b.instance.id);
                    self.push(id, RingSpecDocument::new(a.instance.spec.group.clone(), ring));
                }
            }
            Recipe::Quotients { max_order } => {
                let pool: Vec<Member> = self.corpus.members.clone();
                let caps = *self.builder.caps();
                for m in pool.iter().filter(|m| m.ring.order() <= *max_order) {
                    let lattice = match homogeneous_ideal_lattice(&m.ring, Side::TwoSided, &caps) {
                        Ok(l) => l,
                        Err(e) => {
                            self.corpus.skipped.push(SkippedInstance { id: format!("{}/*", m.instance.id), reason: e.to_string() });
                            continue;
                        }
                    };
                    for found in lattice.into_iter().filter(|f| !f.generators.is_empty()) {
                        let ideal = is_homogeneous_ideal(&m.ring, &found.members, Side::TwoSided)?;
                        if !is_graded_nil(&m.ring, &ideal) {
                            continue;
                        }
                        let gens: Vec<String> = found.generators.iter().map(|g| g.to_string()).collect();
                        let ring = RingExpr::Quotient {
                            over: m.instance.spec.ring.clone().boxed(),
                            ideal: found.generators.iter().map(|&g| ElemRef::Index(g)).collect(),
                        };
                        let id = format!("{}/<{}>", m.instance.id, gens.join(","));
                        self.push(id, RingSpecDocument::new(m.instance.spec.group.clone(), ring));
                    }
                }
            }
            Recipe::Corners { max_order } => {
                let pool: Vec<Member> = self.corpus.members.clone();
                for m in pool.iter().filter(|m| m.ring.order() <= *max_order) {
                    for t in central_idempotents(&m.ring).into_iter().filter(|&t| t > 1) {
                        let ring = RingExpr::Corner { over: m.instance.spec.ring.clone().boxed(), t: ElemRef::Index(t) };
                        let id = format!("{}*t{t}", m.instance.id);
                        self.push(id, RingSpecDocument::new(m.instance.spec.group.clone(), ring));
                    }
                }
            }
            Recipe::Instance { id, spec } => self.push(id.clone(), spec.clone()),
        }
        Ok(())
    }

    fn p_group_rings(&mut self, max_order: usize) {
        let c = |k| GroupSpec::Cyclic { order: k };
        let families: [(GroupSpec, &[usize]); 5] = [
            (c(2), &[2, 4, 8]),
            (c(4), &[2, 4, 8]),
            (GroupSpec::Product { factors: vec![c(2), c(2)] }, &[2, 4, 8]),
            (c(3), &[3, 9]),
            (c(9), &[3, 9]),
        ];
        for (spec, bases) in families {
            let Ok(group) = build_group(&spec) else { continue };
            let label = group_label(&Some(spec.clone()));
            let mut coefficient_rings: Vec<(String, RingExpr)> =
                bases.iter().map(|&n| (format!("Z{n}"), zmod(n))).collect();
            // the group ring itself, G-graded
            coefficient_rings.push((format!("Z{}[{label}]", bases[0]), RingExpr::Groupring { over: zmod(bases[0]).boxed() }));
            for (name, over) in coefficient_rings {
                for h in group.subgroups().into_iter().filter(|h| h.len() > 1) {
                    let Ok(base) = self.builder.build_expr(&over, &group, "ring") else { continue };
                    if (base.order() as u128).pow(h.len() as u32) > max_order as u128 {
                        continue;
                    }
                    let names: Vec<&str> = h.iter().map(|&x| group.name(x)).collect();
                    let ring = RingExpr::Subgroupring {
                        over: over.clone().boxed(),
                        subgroup: names.iter().map(|&s| ElemRef::from(s)).collect(),
                        quotient_view: true,
                    };
                    let id = format!("{name}[{{{}}}]/{label}", names.join(","));
                    self.push(id, RingSpecDocument::new(Some(spec.clone()), ring));
                }
            }
        }
    }
}

/// Central idempotents of the identity component, ascending.
pub fn central_idempotents(r: &GradedRing) -> Vec<usize> {
    let ring = r.ring();
    r.identity_component().iter().filter(|&t| ring.is_idempotent(t) && ring.is_central(t)).collect()
}

/// Expands a corpus spec in recipe order. Instances that fail to build are
/// recorded as skipped.
pub fn generate_corpus(spec: &CorpusSpec, builder: &Builder) -> Result<Corpus> {
    let mut generator = Generator { builder, corpus: Corpus::default() };
    for recipe in &spec.recipes {
        generator.run(recipe, spec.seed)?;
    }
    Ok(generator.corpus)
}
