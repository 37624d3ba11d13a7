//! The ring-spec document: a JSON group block plus a construction tree.
//!
//! ```json
//! { "group": { "kind": "cyclic", "order": 2 },
//!   "ring": { "kind": "matrix", "sigma": ["e", "g"], "over": { "kind": "zmod", "n": 2 } } }
//! ```
//!
//! Without a group block the trivial group is used. Group elements are referred
//! to by name (`e`, `g`, `g2`, … for cyclic groups, `a.b` for products) or by
//! index; ring elements by label or index.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::constructions::{
    coarsen_grading, corner_ring, direct_product, group_ring_graded, idealization, matrix_graded, regular_bimodule,
    subgroup_ring_graded, triangular_graded, GradedBimodule, Sigma,
};
use crate::error::{Error, Result};
use crate::grading::{is_homogeneous_ideal, quotient_graded, validate_grading, GradedRing};
use crate::group::FiniteGroup;
use crate::ideal::{ideal_closure, Side};
use crate::ring::FiniteRing;
use crate::Caps;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpecDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
    pub ring: RingExpr,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupSpec {
    Cyclic { order: usize },
    Product { factors: Vec<GroupSpec> },
    Table { names: Vec<String>, table: Vec<Vec<usize>> },
}

/// A group element or ring element, by index or by name.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemRef {
    Index(usize),
    Name(String),
}

impl From<usize> for ElemRef {
    fn from(i: usize) -> Self {
        Self::Index(i)
    }
}

impl From<&str> for ElemRef {
    fn from(s: &str) -> Self {
        Self::Name(s.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub add: Vec<Vec<usize>>,
    pub left: Vec<Vec<usize>>,
    pub right: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<BTreeMap<String, Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum RingExpr {
    Zmod {
        n: usize,
    },
    Table {
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
        /// Component members keyed by group element name; omitted names are `{0}`.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        components: Option<BTreeMap<String, Vec<usize>>>,
    },
    Matrix {
        over: Box<RingExpr>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        sigma: Option<Vec<ElemRef>>,
    },
    Triangular {
        over: Box<RingExpr>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        sigma: Option<Vec<ElemRef>>,
    },
    Groupring {
        over: Box<RingExpr>,
    },
    Subgroupring {
        over: Box<RingExpr>,
        subgroup: Vec<ElemRef>,
        #[serde(default)]
        quotient_view: bool,
    },
    Coarsen {
        over: Box<RingExpr>,
        subgroup: Vec<ElemRef>,
    },
    Product {
        factors: Vec<RingExpr>,
    },
    /// Quotient by the two-sided ideal generated by `ideal`, which must be homogeneous.
    Quotient {
        over: Box<RingExpr>,
        ideal: Vec<ElemRef>,
    },
    Idealization {
        over: Box<RingExpr>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        copies: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        module: Option<ModuleSpec>,
    },
    Corner {
        over: Box<RingExpr>,
        t: ElemRef,
    },
}

impl RingExpr {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Zmod { .. } => "zmod",
            Self::Table { .. } => "table",
            Self::Matrix { .. } => "matrix",
            Self::Triangular { .. } => "triangular",
            Self::Groupring { .. } => "groupring",
            Self::Subgroupring { .. } => "subgroupring",
            Self::Coarsen { .. } => "coarsen",
            Self::Product { .. } => "product",
            Self::Quotient { .. } => "quotient",
            Self::Idealization { .. } => "idealization",
            Self::Corner { .. } => "corner",
        }
    }

    /// The expression this one is built on, if it has exactly one.
    pub fn over(&self) -> Option<&RingExpr> {
        match self {
            Self::Matrix { over, .. }
            | Self::Triangular { over, .. }
            | Self::Groupring { over }
            | Self::Subgroupring { over, .. }
            | Self::Coarsen { over, .. }
            | Self::Quotient { over, .. }
            | Self::Idealization { over, .. }
            | Self::Corner { over, .. } => Some(over),
            _ => None,
        }
    }

    pub fn boxed(self) -> Box<Self> {
        Box::new(self)
    }
}

impl RingSpecDocument {
    pub fn new(group: Option<GroupSpec>, ring: RingExpr) -> Self {
        Self { group, ring }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec documents always serialize")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec documents always serialize")
    }
}

/// Parses a document, mapping serde errors to positioned errors.
pub fn parse_spec(text: &str) -> Result<RingSpecDocument> {
    serde_json::from_str(text).map_err(|e| {
        let (line, column) = (e.line(), e.column());
        let message = e.to_string();
        let message = match message.rfind(" at line ") {
            Some(i) => message[..i].to_string(),
            None => message,
        };
        if message.starts_with("unknown variant") {
            Error::UnknownKind { line, column, message }
        } else {
            Error::Parse { line, column, message }
        }
    })
}

pub fn build_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    match spec {
        GroupSpec::Cyclic { order } => {
            if *order == 0 {
                return Err(Error::InvalidGroup("cyclic group of order 0".into()));
            }
            Ok(FiniteGroup::cyclic(*order))
        }
        GroupSpec::Product { factors } => {
            let mut it = factors.iter();
            let first = it.next().ok_or_else(|| Error::InvalidGroup("empty product".into()))?;
            it.try_fold(build_group(first)?, |acc, f| Ok(FiniteGroup::product(&acc, &build_group(f)?)))
        }
        GroupSpec::Table { names, table } => FiniteGroup::from_table(names.clone(), table.clone()),
    }
}

/// An explicit table description of a group.
pub fn group_table_spec(group: &FiniteGroup) -> GroupSpec {
    GroupSpec::Table { names: group.names().to_vec(), table: group.table() }
}

/// Bit-exact table document for a graded ring.
pub fn to_table_document(r: &GradedRing) -> RingSpecDocument {
    let group = r.group();
    let components = group
        .elements()
        .filter(|&g| r.component(g).len() > 1)
        .map(|g| (group.name(g).to_string(), r.component(g).members().to_vec()))
        .collect();
    RingSpecDocument {
        group: Some(group_table_spec(group)),
        ring: RingExpr::Table {
            add: r.ring().add_table(),
            mul: r.ring().mul_table(),
            labels: Some(r.ring().labels().to_vec()),
            components: Some(components),
        },
    }
}

/// Evaluates documents, sharing sub-results between calls.
pub struct Builder {
    caps: Caps,
    cache: Mutex<HashMap<(String, String), Arc<GradedRing>>>,
}

impl Builder {
    pub fn new(caps: Caps) -> Self {
        Self { caps, cache: Mutex::new(HashMap::new()) }
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    pub fn build(&self, doc: &RingSpecDocument) -> Result<Arc<GradedRing>> {
        let group = match &doc.group {
            Some(g) => build_group(g)?,
            None => FiniteGroup::trivial(),
        };
        self.build_expr(&doc.ring, &group, "ring")
    }

    /// Builds `expr` with leaves graded over `group`.
    pub fn build_expr(&self, expr: &RingExpr, group: &FiniteGroup, path: &str) -> Result<Arc<GradedRing>> {
        let key = (format!("{:?}", group.table()), serde_json::to_string(expr).expect("serializable"));
        if let Some(hit) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(hit.clone());
        }
        let built = Arc::new(self.evaluate(expr, group, path)?);
        self.cache.lock().expect("cache lock").insert(key, built.clone());
        Ok(built)
    }

    fn evaluate(&self, expr: &RingExpr, group: &FiniteGroup, path: &str) -> Result<GradedRing> {
        let caps = &self.caps;
        let sub = |e: &RingExpr| self.build_expr(e, group, &format!("{path}.over"));
        match expr {
            RingExpr::Zmod { n } => {
                if *n > caps.order {
                    return Err(Error::CapExceeded { what: "zmod", order: *n, cap: caps.order });
                }
                Ok(GradedRing::trivial(Arc::new(FiniteRing::zmod(*n)?), group.clone()))
            }
            RingExpr::Table { add, mul, labels, components } => {
                if add.len() > caps.order {
                    return Err(Error::CapExceeded { what: "table ring", order: add.len(), cap: caps.order });
                }
                let ring = Arc::new(FiniteRing::from_tables(add.clone(), mul.clone(), labels.clone())?);
                match components {
                    None => Ok(GradedRing::trivial(ring, group.clone())),
                    Some(map) => {
                        let lists = component_lists(map, group, &format!("{path}.components"))?;
                        validate_grading(ring, group.clone(), lists)
                    }
                }
            }
            RingExpr::Matrix { over, n, sigma } | RingExpr::Triangular { over, n, sigma } => {
                let base = sub(over)?;
                let sigma = resolve_sigma(*n, sigma.as_deref(), base.group(), path)?;
                if matches!(expr, RingExpr::Matrix { .. }) {
                    matrix_graded(&base, &sigma, caps)
                } else {
                    triangular_graded(&base, &sigma, caps)
                }
            }
            RingExpr::Groupring { over } => Ok(group_ring_graded(&*sub(over)?, caps)?.ring),
            RingExpr::Subgroupring { over, subgroup, quotient_view } => {
                let base = sub(over)?;
                let h = resolve_group_elements(subgroup, base.group(), &format!("{path}.subgroup"))?;
                Ok(subgroup_ring_graded(&base, &h, *quotient_view, caps)?.ring)
            }
            RingExpr::Coarsen { over, subgroup } => {
                let base = sub(over)?;
                let h = resolve_group_elements(subgroup, base.group(), &format!("{path}.subgroup"))?;
                if !base.group().is_subgroup(&h) {
                    return Err(Error::NotSubgroup(format!("{h:?}")));
                }
                Ok(coarsen_grading(&base, &h)?.0)
            }
            RingExpr::Product { factors } => {
                let built = factors
                    .iter()
                    .enumerate()
                    .map(|(i, f)| self.build_expr(f, group, &format!("{path}.factors[{i}]")))
                    .collect::<Result<Vec<_>>>()?;
                Ok(direct_product(&built, caps)?.ring)
            }
            RingExpr::Quotient { over, ideal } => {
                let base = sub(over)?;
                let gens = resolve_ring_elements(ideal, base.ring(), &format!("{path}.ideal"))?;
                let members = ideal_closure(base.ring(), &gens, Side::TwoSided);
                let ideal = is_homogeneous_ideal(&base, &members, Side::TwoSided)?;
                Ok(quotient_graded(&base, &ideal)?.target().as_ref().clone())
            }
            RingExpr::Idealization { over, copies, module } => {
                let base = sub(over)?;
                let e = self.bimodule(&base, *copies, module.as_ref(), path)?;
                Ok(idealization(&e, caps)?.ring)
            }
            RingExpr::Corner { over, t } => {
                let base = sub(over)?;
                let t = resolve_ring_elements(std::slice::from_ref(t), base.ring(), &format!("{path}.t"))?[0];
                Ok(corner_ring(&base, t)?.ring)
            }
        }
    }
}

impl Builder {
    /// The bimodule of an idealization node: `A^copies` (one copy by default)
    /// or explicit tables.
    pub fn bimodule(
        &self,
        base: &Arc<GradedRing>,
        copies: Option<usize>,
        module: Option<&ModuleSpec>,
        path: &str,
    ) -> Result<GradedBimodule> {
        match (copies, module) {
            (Some(_), Some(_)) => Err(Error::BadReference {
                path: path.to_string(),
                message: "give either copies or module, not both".into(),
            }),
            (_, Some(m)) => {
                let n = m.add.len();
                let lists = match &m.components {
                    Some(map) => component_lists(map, base.group(), &format!("{path}.module.components"))?,
                    None => {
                        let mut lists = vec![vec![0]; base.group().order()];
                        lists[base.group().identity()] = (0..n).collect();
                        lists
                    }
                };
                GradedBimodule::new(
                    base.clone(),
                    m.add.clone(),
                    m.left.clone(),
                    m.right.clone(),
                    lists,
                    m.labels.clone().unwrap_or_default(),
                )
            }
            (k, None) => regular_bimodule(base, k.unwrap_or(1), &self.caps),
        }
    }
}

/// Parses and builds in one step with a fresh builder.
pub fn load(text: &str, caps: &Caps) -> Result<Arc<GradedRing>> {
    Builder::new(*caps).build(&parse_spec(text)?)
}

pub fn resolve_group_elements(refs: &[ElemRef], group: &FiniteGroup, path: &str) -> Result<Vec<usize>> {
    refs.iter()
        .enumerate()
        .map(|(i, r)| {
            let found = match r {
                ElemRef::Index(k) => (*k < group.order()).then_some(*k),
                ElemRef::Name(s) => group.index_of(s),
            };
            found.ok_or_else(|| Error::BadReference {
                path: format!("{path}[{i}]"),
                message: format!("{r:?} is not an element of the group"),
            })
        })
        .collect()
}

fn resolve_ring_elements(refs: &[ElemRef], ring: &FiniteRing, path: &str) -> Result<Vec<usize>> {
    refs.iter()
        .enumerate()
        .map(|(i, r)| {
            let found = match r {
                ElemRef::Index(k) => (*k < ring.order()).then_some(*k),
                ElemRef::Name(s) => ring.elements().find(|&x| ring.label(x) == s),
            };
            found.ok_or_else(|| Error::BadReference {
                path: format!("{path}[{i}]"),
                message: format!("{r:?} is not an element of the ring"),
            })
        })
        .collect()
}

fn resolve_sigma(n: Option<usize>, sigma: Option<&[ElemRef]>, group: &FiniteGroup, path: &str) -> Result<Sigma> {
    match (n, sigma) {
        (_, Some(s)) => {
            if n.is_some_and(|n| n != s.len()) {
                return Err(Error::BadReference {
                    path: format!("{path}.n"),
                    message: format!("n = {} but sigma has {} entries", n.unwrap_or(0), s.len()),
                });
            }
            Sigma::new(resolve_group_elements(s, group, &format!("{path}.sigma"))?, group.order())
        }
        (Some(n), None) if n > 0 => Ok(Sigma::constant(n, group.identity())),
        _ => Err(Error::BadReference { path: path.to_string(), message: "matrix size needs n or sigma".into() }),
    }
}

fn component_lists(map: &BTreeMap<String, Vec<usize>>, group: &FiniteGroup, path: &str) -> Result<Vec<Vec<usize>>> {
    let mut lists = vec![vec![0]; group.order()];
    for (name, members) in map {
        let g = group.index_of(name).ok_or_else(|| Error::BadReference {
            path: format!("{path}.{name}"),
            message: format!("{name:?} is not an element of the group"),
        })?;
        lists[g] = members.clone();
    }
    Ok(lists)
}
