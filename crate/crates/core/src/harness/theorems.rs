//! The theorem registry: each entry maps one corpus instance to a list of
//! cases, every case a pass, a failure, or inapplicable.

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use super::corpus::{central_idempotents, Member};
use crate::constructions::{
    coarsen_grading, corner_projection, corner_ring, direct_product, group_ring_graded, idealization,
    peirce_glue, subgroup_ring_graded,
};
use crate::deciders::{check_witness, decide, first_failure, Property};
use crate::error::{Error, Result};
use crate::grading::{
    graded_jacobson_radical, homogeneous_ideal_lattice, is_graded_local, is_graded_nil, is_homogeneous_ideal,
    quotient_graded, GradedMap, GradedRing, HomogeneousIdeal,
};
use crate::ideal::Side;
use crate::spec::{resolve_group_elements, Builder, RingExpr};
use crate::FiniteRing;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail {
        detail: String,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        element: Option<usize>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        label: Option<String>,
    },
    /// Hypothesis unmet.
    Inapplicable { reason: String },
    /// Beyond a cap or otherwise not computable.
    Skipped { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case {
    pub name: String,
    #[serde(flatten)]
    pub outcome: Outcome,
}

fn case(name: impl Into<String>, outcome: Outcome) -> Case {
    Case { name: name.into(), outcome }
}

fn inapplicable(name: &str, reason: impl Into<String>) -> Vec<Case> {
    vec![case(name, Outcome::Inapplicable { reason: reason.into() })]
}

fn skipped(name: &str, reason: impl ToString) -> Vec<Case> {
    vec![case(name, Outcome::Skipped { reason: reason.to_string() })]
}

fn fail_at(detail: impl Into<String>, r: &GradedRing, x: usize) -> Outcome {
    Outcome::Fail { detail: detail.into(), element: Some(x), label: Some(r.ring().label(x).to_string()) }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome::Fail { detail: detail.into(), element: None, label: None }
}

/// A corpus instance with lazily computed facts shared by every theorem.
pub struct Subject<'a> {
    pub member: &'a Member,
    builder: &'a Builder,
    unc: OnceLock<Option<usize>>,
    re_unc: OnceLock<Option<usize>>,
    ideals: OnceLock<Result<Vec<HomogeneousIdeal>, String>>,
    jg: OnceLock<Result<HomogeneousIdeal, String>>,
    local: OnceLock<Result<bool, String>>,
    central: OnceLock<Vec<usize>>,
}

impl<'a> Subject<'a> {
    pub fn new(member: &'a Member, builder: &'a Builder) -> Self {
        Self {
            member,
            builder,
            unc: OnceLock::new(),
            re_unc: OnceLock::new(),
            ideals: OnceLock::new(),
            jg: OnceLock::new(),
            local: OnceLock::new(),
            central: OnceLock::new(),
        }
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.member.ring
    }

    fn expr(&self) -> &RingExpr {
        &self.member.instance.spec.ring
    }

    /// The least homogeneous element without a graded U-nil clean decomposition.
    fn unc_failure(&self) -> Option<usize> {
        *self.unc.get_or_init(|| first_failure(self.ring(), Property::GradedUNilClean))
    }

    fn unc(&self) -> bool {
        self.unc_failure().is_none()
    }

    fn re_unc_failure(&self) -> Option<usize> {
        *self.re_unc.get_or_init(|| re_failure(self.ring()))
    }

    /// Nonzero proper homogeneous two-sided ideals.
    fn ideals(&self) -> Result<&[HomogeneousIdeal], &str> {
        self.ideals
            .get_or_init(|| {
                let r = self.ring();
                homogeneous_ideal_lattice(r, Side::TwoSided, self.builder.caps())
                    .and_then(|lattice| {
                        lattice
                            .into_iter()
                            .filter(|f| f.members.len() > 1)
                            .map(|f| is_homogeneous_ideal(r, &f.members, Side::TwoSided))
                            .collect()
                    })
                    .map_err(|e| e.to_string())
            })
            .as_deref()
            .map_err(String::as_str)
    }

    fn graded_nil_ideals(&self) -> Result<Vec<&HomogeneousIdeal>, &str> {
        Ok(self.ideals()?.iter().filter(|i| is_graded_nil(self.ring(), i)).collect())
    }

    fn jg(&self) -> Result<&HomogeneousIdeal, &str> {
        self.jg
            .get_or_init(|| graded_jacobson_radical(self.ring(), self.builder.caps()).map_err(|e| e.to_string()))
            .as_ref()
            .map_err(String::as_str)
    }

    fn graded_local(&self) -> Result<bool, &str> {
        self.local
            .get_or_init(|| is_graded_local(self.ring(), self.builder.caps()).map_err(|e| e.to_string()))
            .as_ref()
            .copied()
            .map_err(String::as_str)
    }

    fn central_idempotents(&self) -> &[usize] {
        self.central.get_or_init(|| central_idempotents(self.ring()))
    }

    fn abelian_idempotents(&self) -> bool {
        let r = self.ring();
        r.identity_component().iter().all(|x| !r.ring().is_idempotent(x) || r.ring().is_central(x))
    }

    fn build(&self, expr: &RingExpr) -> Result<Arc<GradedRing>> {
        self.builder.build_expr(expr, &self.member.leaf_group, "ring")
    }

    /// Degree-preserving maps out of this ring provided by the construction
    /// library, with a name for each.
    fn library_maps(&self) -> Vec<(String, Result<GradedMap>)> {
        let r = self.ring();
        let caps = self.builder.caps();
        let mut maps = Vec::new();
        if let Ok(ideals) = self.ideals() {
            for (i, ideal) in ideals.iter().enumerate() {
                maps.push((format!("quotient #{i} (|I| = {})", ideal.len()), quotient_graded(r, ideal)));
            }
        }
        for &t in self.central_idempotents().iter().filter(|&&t| t > 1) {
            let map = corner_ring(r, t)
                .and_then(|c| corner_projection(r.clone(), t, &c, Arc::new(c.ring.clone())));
            maps.push((format!("corner t = {}", r.ring().label(t)), map));
        }
        match self.expr() {
            RingExpr::Product { factors } => {
                let built: Result<Vec<_>> = factors.iter().map(|f| self.build(f)).collect();
                let product = built.and_then(|b| Ok((direct_product(&b, caps)?, b)));
                for i in 0..factors.len() {
                    let map = match &product {
                        Ok((p, b)) => p.projection(Arc::new(p.ring.clone()), b[i].clone(), i),
                        Err(e) => Err(Error::InvalidRing(e.to_string())),
                    };
                    maps.push((format!("factor projection {i}"), map));
                }
            }
            RingExpr::Idealization { over, copies, module } => {
                let map = self.build(over).and_then(|a| {
                    let e = self.builder.bimodule(&a, *copies, module.as_ref(), "ring")?;
                    let idl = idealization(&e, caps)?;
                    idl.projection(Arc::new(idl.ring.clone()), a)
                });
                maps.push(("idealization projection".into(), map));
            }
            RingExpr::Groupring { over } => {
                let map = self.build(over).and_then(|a| {
                    let gr = group_ring_graded(&a, caps)?;
                    crate::constructions::augmentation(&gr, Arc::new(gr.ring.clone()), a)
                });
                maps.push(("augmentation".into(), map));
            }
            RingExpr::Subgroupring { over, subgroup, quotient_view } => {
                let map = self.build(over).and_then(|a| {
                    let h = resolve_group_elements(subgroup, a.group(), "ring.subgroup")?;
                    let gr = subgroup_ring_graded(&a, &h, *quotient_view, caps)?;
                    let target = if *quotient_view { Arc::new(coarsen_grading(&a, &h)?.0) } else { a };
                    crate::constructions::augmentation(&gr, Arc::new(gr.ring.clone()), target)
                });
                maps.push(("augmentation".into(), map));
            }
            _ => {}
        }
        maps
    }
}

fn re_failure(r: &GradedRing) -> Option<usize> {
    let (re, _) = r.identity_component_ring();
    first_failure(&GradedRing::trivial(Arc::new(re.clone()), crate::FiniteGroup::trivial()), Property::UNilClean)
}

fn ungraded_failure(ring: &FiniteRing) -> Option<usize> {
    first_failure(&GradedRing::trivial(Arc::new(ring.clone()), crate::FiniteGroup::trivial()), Property::UNilClean)
}

fn graded_failure(r: &GradedRing) -> Option<usize> {
    first_failure(r, Property::GradedUNilClean)
}

/// `A ⟺ B` for graded U-nil cleanness of two rings.
fn biconditional(left: (&str, &GradedRing), right: (&str, &GradedRing)) -> Outcome {
    match (graded_failure(left.1), graded_failure(right.1)) {
        (None, None) | (Some(_), Some(_)) => Outcome::Pass,
        (None, Some(x)) => fail_at(
            format!("{} is graded U-nil clean but {} is not: element {x} has no decomposition", left.0, right.0),
            right.1,
            x,
        ),
        (Some(x), None) => fail_at(
            format!("{} is graded U-nil clean but {} is not: element {x} has no decomposition", right.0, left.0),
            left.1,
            x,
        ),
    }
}

/// Registry entry.
pub struct Theorem {
    pub id: &'static str,
    pub statement: &'static str,
    pub check: fn(&Subject) -> Vec<Case>,
}

pub const REGISTRY: [Theorem; 18] = [
    Theorem { id: "T_P1a", statement: "R graded U-nil clean ⟹ R_e U-nil clean", check: t_p1a },
    Theorem { id: "T_P1b", statement: "graded-homomorphic images of a graded U-nil clean ring are graded U-nil clean", check: t_p1b },
    Theorem { id: "T_P4", statement: "products of graded U-nil clean rings are graded U-nil clean", check: t_p4 },
    Theorem { id: "T_P2", statement: "commutative graded U-nil clean ⟹ graded G-clean", check: t_p2 },
    Theorem { id: "T_L2", statement: "graded-nil ideals lie in J^g(R)", check: t_l2 },
    Theorem { id: "T_T1", statement: "I graded-nil: R graded U-nil clean ⟺ R/I graded U-nil clean", check: t_t1 },
    Theorem { id: "T_P3", statement: "R graded U-nil clean, Idem(R_e) ⊆ Z(R) ⟹ J^g(R) graded-nil", check: t_p3 },
    Theorem { id: "T_C1", statement: "Idem(R_e) ⊆ Z(R): R graded U-nil clean ⟺ R/J^g(R) graded U-nil clean", check: t_c1 },
    Theorem { id: "T_T2", statement: "graded-local, R_e U-nil clean ⟹ R graded U-nil clean (PI: automatic (finite))", check: t_t2 },
    Theorem { id: "T_T3", statement: "A graded U-nil clean ⟺ A∝E graded U-nil clean", check: t_t3 },
    Theorem { id: "T_L1", statement: "kernels of degree-preserving homomorphisms are homogeneous ideals", check: t_l1 },
    Theorem { id: "T_T4", statement: "R[G] graded U-nil clean ⟹ R U-nil clean", check: t_t4 },
    Theorem { id: "T_GH", statement: "G a p-group, p nilpotent in R, R G/H-graded U-nil clean ⟹ R[H] G/H-graded U-nil clean", check: t_gh },
    Theorem { id: "T_TN", statement: "G abelian: T_n(R)(σ) graded U-nil clean ⟺ R graded U-nil clean", check: t_tn },
    Theorem { id: "T_L3", statement: "tR and (1−t)R graded U-nil clean ⟹ R graded U-nil clean", check: t_l3 },
    Theorem { id: "T_L4", statement: "f_iR graded U-nil clean for orthogonal central f_i summing to 1 ⟹ R graded U-nil clean", check: t_l4 },
    Theorem { id: "T_MAIN", statement: "R graded U-nil clean ⟹ M_n(R)(σ) graded U-nil clean", check: t_main },
    Theorem { id: "T_R1", statement: "every emitted witness re-validates with coherent degrees", check: t_r1 },
];

pub fn theorem(id: &str) -> Result<&'static Theorem> {
    REGISTRY.iter().find(|t| t.id == id).ok_or_else(|| Error::UnknownTheorem(id.to_string()))
}

const NOT_UNC: &str = "R is not graded U-nil clean";

fn t_p1a(s: &Subject) -> Vec<Case> {
    const NAME: &str = "R_e";
    if !s.unc() {
        return inapplicable(NAME, NOT_UNC);
    }
    let outcome = match s.re_unc_failure() {
        None => Outcome::Pass,
        Some(x) => {
            let (re, _) = s.ring().identity_component_ring();
            Outcome::Fail {
                detail: format!("R_e is not U-nil clean: its element {x} has no decomposition"),
                element: Some(x),
                label: Some(re.label(x).to_string()),
            }
        }
    };
    vec![case(NAME, outcome)]
}

fn t_p1b(s: &Subject) -> Vec<Case> {
    const NAME: &str = "images";
    if !s.unc() {
        return inapplicable(NAME, NOT_UNC);
    }
    let mut cases = Vec::new();
    for (name, map) in s.library_maps() {
        let outcome = match map {
            Err(e) => Outcome::Skipped { reason: e.to_string() },
            Ok(m) if !m.is_graded_homomorphism() || !m.is_surjective() => {
                Outcome::Inapplicable { reason: "not a graded surjection".into() }
            }
            Ok(m) => match graded_failure(m.target()) {
                None => Outcome::Pass,
                Some(x) => fail_at(format!("image under {name} fails at element {x}"), m.target(), x),
            },
        };
        cases.push(case(name, outcome));
    }
    if cases.is_empty() {
        return inapplicable(NAME, "no surjections in the library");
    }
    cases
}

fn t_p4(s: &Subject) -> Vec<Case> {
    const NAME: &str = "product";
    let RingExpr::Product { factors } = s.expr() else {
        return inapplicable(NAME, "not a product");
    };
    let built = match factors.iter().map(|f| s.build(f)).collect::<Result<Vec<_>>>() {
        Ok(b) => b,
        Err(e) => return skipped(NAME, e),
    };
    if let Some(i) = built.iter().position(|f| graded_failure(f).is_some()) {
        return inapplicable(NAME, format!("factor {i} is not graded U-nil clean"));
    }
    let outcome = match s.unc_failure() {
        None => Outcome::Pass,
        Some(x) => fail_at(format!("every factor is graded U-nil clean but element {x} of the product is not"), s.ring(), x),
    };
    vec![case(NAME, outcome)]
}

fn t_p2(s: &Subject) -> Vec<Case> {
    const NAME: &str = "G-clean";
    if !s.ring().ring().is_commutative() {
        return inapplicable(NAME, "R is not commutative");
    }
    if !s.unc() {
        return inapplicable(NAME, NOT_UNC);
    }
    let outcome = match first_failure(s.ring(), Property::GradedGClean) {
        None => Outcome::Pass,
        Some(x) => fail_at(format!("element {x} is not a homogeneous unit plus a graded unit regular element"), s.ring(), x),
    };
    vec![case(NAME, outcome)]
}

fn t_l2(s: &Subject) -> Vec<Case> {
    const NAME: &str = "graded-nil ideals";
    let (ideals, jg) = match (s.graded_nil_ideals(), s.jg()) {
        (Ok(i), Ok(j)) => (i, j),
        (Err(e), _) | (_, Err(e)) => return skipped(NAME, e),
    };
    if ideals.is_empty() {
        return inapplicable(NAME, "no nonzero graded-nil ideal");
    }
    ideals
        .iter()
        .map(|ideal| {
            let name = format!("|I| = {} {:?}", ideal.len(), &ideal.members.members()[..ideal.len().min(4)]);
            let outcome = match ideal.members.iter().find(|&x| !jg.contains(x)) {
                None => Outcome::Pass,
                Some(x) => fail_at(format!("element {x} of a graded-nil ideal is outside J^g"), s.ring(), x),
            };
            case(name, outcome)
        })
        .collect()
}

fn t_t1(s: &Subject) -> Vec<Case> {
    const NAME: &str = "quotients";
    let ideals = match s.graded_nil_ideals() {
        Ok(i) => i,
        Err(e) => return skipped(NAME, e),
    };
    if ideals.is_empty() {
        return inapplicable(NAME, "no nonzero graded-nil ideal");
    }
    ideals
        .iter()
        .map(|ideal| {
            let name = format!("R/I, |I| = {} {:?}", ideal.len(), &ideal.members.members()[..ideal.len().min(4)]);
            let outcome = match quotient_graded(s.ring(), ideal) {
                Err(e) => Outcome::Skipped { reason: e.to_string() },
                Ok(q) => biconditional(("R", s.ring()), ("R/I", q.target())),
            };
            case(name, outcome)
        })
        .collect()
}

fn t_p3(s: &Subject) -> Vec<Case> {
    const NAME: &str = "J^g";
    if !s.abelian_idempotents() {
        return inapplicable(NAME, "Idem(R_e) ⊄ Z(R)");
    }
    if !s.unc() {
        return inapplicable(NAME, NOT_UNC);
    }
    let jg = match s.jg() {
        Ok(j) => j,
        Err(e) => return skipped(NAME, e),
    };
    let outcome = match jg.parts.iter().flat_map(|p| p.iter()).find(|&x| !s.ring().ring().is_nilpotent(x)) {
        None => Outcome::Pass,
        Some(x) => fail_at(format!("homogeneous element {x} of J^g is not nilpotent"), s.ring(), x),
    };
    vec![case(NAME, outcome)]
}

fn t_c1(s: &Subject) -> Vec<Case> {
    const NAME: &str = "R/J^g";
    if !s.abelian_idempotents() {
        return inapplicable(NAME, "Idem(R_e) ⊄ Z(R)");
    }
    let outcome = match s.jg().map_err(str::to_string).and_then(|j| quotient_graded(s.ring(), j).map_err(|e| e.to_string())) {
        Err(e) => Outcome::Skipped { reason: e },
        Ok(q) => biconditional(("R", s.ring()), ("R/J^g", q.target())),
    };
    vec![case(NAME, outcome)]
}

fn t_t2(s: &Subject) -> Vec<Case> {
    const NAME: &str = "graded-local";
    match s.graded_local() {
        Err(e) => return skipped(NAME, e),
        Ok(false) => return inapplicable(NAME, "R is not graded-local"),
        Ok(true) => {}
    }
    if s.re_unc_failure().is_some() {
        return inapplicable(NAME, "R_e is not U-nil clean");
    }
    let outcome = match s.unc_failure() {
        None => Outcome::Pass,
        Some(x) => fail_at(format!("graded-local with R_e U-nil clean, but element {x} has no decomposition"), s.ring(), x),
    };
    vec![case(NAME, outcome)]
}

fn t_t3(s: &Subject) -> Vec<Case> {
    const NAME: &str = "idealization";
    let RingExpr::Idealization { over, .. } = s.expr() else {
        return inapplicable(NAME, "not an idealization");
    };
    match s.build(over) {
        Err(e) => skipped(NAME, e),
        Ok(a) => vec![case(NAME, biconditional(("A", &a), ("A∝E", s.ring())))],
    }
}

fn t_l1(s: &Subject) -> Vec<Case> {
    const NAME: &str = "kernels";
    let mut cases = Vec::new();
    for (name, map) in s.library_maps() {
        let outcome = match map {
            Err(e) => Outcome::Skipped { reason: e.to_string() },
            Ok(m) if !m.is_degree_preserving() => Outcome::Inapplicable { reason: "not degree-preserving".into() },
            Ok(m) => match m.kernel_is_homogeneous() {
                Ok(_) => Outcome::Pass,
                Err(Error::NotHomogeneous(x)) => {
                    fail_at(format!("kernel element {x} has a component outside the kernel"), s.ring(), x)
                }
                Err(e) => fail(format!("kernel is not a homogeneous ideal: {e}")),
            },
        };
        cases.push(case(name, outcome));
    }
    if cases.is_empty() {
        return inapplicable(NAME, "no maps in the library");
    }
    cases
}

fn t_t4(s: &Subject) -> Vec<Case> {
    const NAME: &str = "R[G]";
    let RingExpr::Groupring { over } = s.expr() else {
        return inapplicable(NAME, "not a group ring");
    };
    if !s.unc() {
        return inapplicable(NAME, "R[G] is not graded U-nil clean");
    }
    let base = match s.build(over) {
        Ok(b) => b,
        Err(e) => return skipped(NAME, e),
    };
    let outcome = match ungraded_failure(base.ring()) {
        None => Outcome::Pass,
        Some(x) => fail_at(format!("R[G] is graded U-nil clean but element {x} of R is not U-nil clean"), &base, x),
    };
    vec![case(NAME, outcome)]
}

fn t_gh(s: &Subject) -> Vec<Case> {
    const NAME: &str = "R[H]";
    let RingExpr::Subgroupring { over, subgroup, quotient_view: true } = s.expr() else {
        return inapplicable(NAME, "not a quotient-graded subgroup ring");
    };
    let group = &s.member.leaf_group;
    let Some(p) = group.p_group_prime() else {
        return inapplicable(NAME, "G is not a p-group");
    };
    let base = match s.build(over) {
        Ok(b) => b,
        Err(e) => return skipped(NAME, e),
    };
    let ring = base.ring();
    if !ring.is_nilpotent(ring.integer(p)) {
        return inapplicable(NAME, format!("{p} is not nilpotent in R"));
    }
    let coarse = match resolve_group_elements(subgroup, group, "ring.subgroup").and_then(|h| coarsen_grading(&base, &h)) {
        Ok((c, _)) => c,
        Err(e) => return skipped(NAME, e),
    };
    if graded_failure(&coarse).is_some() {
        return inapplicable(NAME, "R is not G/H-graded U-nil clean");
    }
    let outcome = match s.unc_failure() {
        None => Outcome::Pass,
        Some(x) => fail_at(format!("R is G/H-graded U-nil clean but element {x} of R[H] is not"), s.ring(), x),
    };
    vec![case(NAME, outcome)]
}

fn t_tn(s: &Subject) -> Vec<Case> {
    const NAME: &str = "T_n";
    let RingExpr::Triangular { over, .. } = s.expr() else {
        return inapplicable(NAME, "not a triangular matrix ring");
    };
    if !s.member.leaf_group.is_abelian() {
        return inapplicable(NAME, "G is not abelian");
    }
    match s.build(over) {
        Err(e) => skipped(NAME, e),
        Ok(base) => vec![case(NAME, biconditional(("R", &base), ("T_n(R)(σ)", s.ring())))],
    }
}

/// Graded U-nil cleanness of `tR`, with the failing element if any.
fn corner_failure(r: &GradedRing, t: usize) -> Result<Option<(GradedRing, usize)>> {
    let c = corner_ring(r, t)?;
    Ok(graded_failure(&c.ring).map(|x| (c.ring, x)))
}

fn t_l3(s: &Subject) -> Vec<Case> {
    const NAME: &str = "Peirce";
    let r = s.ring();
    let ring = r.ring();
    let ts: Vec<usize> = s.central_idempotents().iter().copied().filter(|&t| t > 1).collect();
    if ts.is_empty() {
        return inapplicable(NAME, "no central idempotent other than 0 and 1");
    }
    let mut cases = Vec::new();
    for t in ts {
        let name = format!("t = {}", ring.label(t));
        let s_ = ring.sub(ring.one(), t);
        // only one of each pair {t, 1 − t}
        if s_ < t {
            continue;
        }
        let outcome = (|| -> Result<Outcome> {
            peirce_glue(r, t, s.builder.caps())?;
            if corner_failure(r, t)?.is_some() || corner_failure(r, s_)?.is_some() {
                return Ok(Outcome::Inapplicable { reason: "a corner is not graded U-nil clean".into() });
            }
            Ok(match s.unc_failure() {
                None => Outcome::Pass,
                Some(x) => fail_at(format!("tR and (1−t)R are graded U-nil clean but element {x} of R is not"), r, x),
            })
        })();
        let outcome = outcome.unwrap_or_else(|e| fail(format!("Peirce decomposition failed: {e}")));
        cases.push(case(name, outcome));
    }
    cases
}

/// The minimal nonzero central idempotents of `R_e`.
pub fn primitive_central_idempotents(r: &GradedRing, central: &[usize]) -> Vec<usize> {
    let ring = r.ring();
    central
        .iter()
        .copied()
        .filter(|&t| t != 0 && !central.iter().any(|&u| u != 0 && u != t && ring.mul(t, u) == u))
        .collect()
}

fn t_l4(s: &Subject) -> Vec<Case> {
    const NAME: &str = "orthogonal decomposition";
    let r = s.ring();
    let fs = primitive_central_idempotents(r, s.central_idempotents());
    if fs.len() < 2 {
        return inapplicable(NAME, "fewer than two primitive central idempotents");
    }
    let ring = r.ring();
    let sum = fs.iter().fold(0, |acc, &f| ring.add(acc, f));
    let orthogonal = fs.iter().all(|&a| fs.iter().all(|&b| a == b || ring.mul(a, b) == 0));
    if sum != ring.one() || !orthogonal {
        return vec![case(NAME, fail("primitive central idempotents are not a complete orthogonal set"))];
    }
    for &f in &fs {
        match corner_failure(r, f) {
            Err(e) => return skipped(NAME, e),
            Ok(Some(_)) => return inapplicable(NAME, format!("corner at {} is not graded U-nil clean", ring.label(f))),
            Ok(None) => {}
        }
    }
    let outcome = match s.unc_failure() {
        None => Outcome::Pass,
        Some(x) => fail_at(format!("all {} corners are graded U-nil clean but element {x} of R is not", fs.len()), r, x),
    };
    vec![case(format!("k = {}", fs.len()), outcome)]
}

fn t_main(s: &Subject) -> Vec<Case> {
    const NAME: &str = "M_n";
    let RingExpr::Matrix { over, .. } = s.expr() else {
        return inapplicable(NAME, "not a matrix ring");
    };
    let base = match s.build(over) {
        Ok(b) => b,
        Err(e) => return skipped(NAME, e),
    };
    if graded_failure(&base).is_some() {
        return inapplicable(NAME, "R is not graded U-nil clean");
    }
    let outcome = match s.unc_failure() {
        None => Outcome::Pass,
        Some(x) => fail_at(format!("R is graded U-nil clean but element {x} of M_n(R)(σ) is not"), s.ring(), x),
    };
    vec![case(NAME, outcome)]
}

fn t_r1(s: &Subject) -> Vec<Case> {
    let r = s.ring();
    [Property::GradedUNilClean, Property::GradedNilGood, Property::GradedGClean]
        .into_iter()
        .map(|p| {
            let verdict = decide(r, p, false);
            let outcome = if verdict.witnesses.is_empty() {
                Outcome::Inapplicable { reason: format!("{p} fails, no witnesses") }
            } else {
                let bad = verdict.witnesses.iter().find_map(|w| check_witness(r, p, false, w).err().map(|e| (w.x, e)));
                match bad {
                    None => Outcome::Pass,
                    Some((x, e)) => fail_at(format!("witness for {x} does not re-validate: {e}"), r, x),
                }
            };
            case(p.name(), outcome)
        })
        .collect()
}
