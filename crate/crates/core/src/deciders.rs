//! Certificate-producing deciders for unit regular, U-nil clean, G-clean and
//! nil-good properties, graded and ungraded.
//!
//! Every search runs in a fixed order (idempotents, then units, then the
//! remaining summand, each by ascending index), so witnesses are reproducible.
//! Elements are searched in parallel but results are collected in index order.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grading::GradedRing;
use crate::group::FiniteGroup;
use crate::ring::{ElementSet, FiniteRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    UNilClean,
    GClean,
    GradedUNilClean,
    GradedNilGood,
    GradedGClean,
}

impl Property {
    pub const ALL: [Property; 5] =
        [Self::UNilClean, Self::GClean, Self::GradedUNilClean, Self::GradedNilGood, Self::GradedGClean];

    pub fn name(self) -> &'static str {
        match self {
            Self::UNilClean => "u-nil-clean",
            Self::GClean => "g-clean",
            Self::GradedUNilClean => "graded-u-nil-clean",
            Self::GradedNilGood => "graded-nil-good",
            Self::GradedGClean => "graded-g-clean",
        }
    }

    pub fn is_graded(self) -> bool {
        matches!(self, Self::GradedUNilClean | Self::GradedNilGood | Self::GradedGClean)
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| Error::UnknownProperty(s.to_string()))
    }
}

/// How `x` splits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "kebab-case")]
pub enum Decomposition {
    /// `x = f·u + n`
    UnitRegularPlusNilpotent { f: usize, u: usize, n: usize },
    /// `x = f·u + v` with `v` a unit
    UnitRegularPlusUnit { f: usize, u: usize, v: usize },
    /// `x = u + n`
    UnitPlusNilpotent { u: usize, n: usize },
    /// `x` is itself nilpotent
    Nilpotent,
}

/// A certificate for one element. `degree` is `None` for `x = 0` and for
/// ungraded properties.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub x: usize,
    pub degree: Option<usize>,
    #[serde(flatten)]
    pub decomposition: Decomposition,
}

pub type UNilCleanWitness = Witness;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub units: usize,
    pub nilpotents: usize,
    /// Idempotents of the identity component (of the whole ring when ungraded).
    pub idempotents: usize,
    /// `|gur(R)|` per degree, or the single `|ur(R)|` when ungraded.
    pub unit_regular: Vec<usize>,
    pub checked: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyVerdict {
    pub property: Property,
    pub holds: bool,
    pub witnesses: Vec<Witness>,
    pub counterexample: Option<usize>,
    pub stats: Stats,
}

/// `ur(R) = {e·u : e ∈ Idem(R), u ∈ U(R)}`.
pub fn unit_regular_elements(ring: &FiniteRing) -> ElementSet {
    let idem = ring.idempotents();
    let units = ring.units();
    ElementSet::from_members(
        ring.order(),
        idem.iter().flat_map(|e| units.iter().map(move |u| ring.mul(e, u))),
    )
}

/// `gur(R)_g = {e·u : e ∈ Idem(R_e), u ∈ U(R) ∩ R_g}` for every `g`.
pub fn graded_unit_regular_elements(r: &GradedRing) -> Vec<ElementSet> {
    let ctx = Context::new(r, true, false);
    ctx.units_by_degree
        .iter()
        .map(|units| {
            ElementSet::from_members(
                r.order(),
                ctx.idem_e.iter().flat_map(|&e| units.iter().map(move |&u| r.ring().mul(e, u))),
            )
        })
        .collect()
}

/// Per-ring sets shared by every element search.
struct Context<'a> {
    r: &'a GradedRing,
    graded: bool,
    strict_literal: bool,
    idem_e: Vec<usize>,
    units_by_degree: Vec<Vec<usize>>,
    homogeneous_units: Vec<usize>,
}

impl<'a> Context<'a> {
    fn new(r: &'a GradedRing, graded: bool, strict_literal: bool) -> Self {
        let ring = r.ring();
        let idem_e = r.identity_component().iter().filter(|&x| ring.is_idempotent(x)).collect();
        let units_by_degree: Vec<Vec<usize>> =
            r.components().iter().map(|c| c.iter().filter(|&x| ring.is_unit(x)).collect()).collect();
        let mut homogeneous_units: Vec<usize> = units_by_degree.concat();
        homogeneous_units.sort_unstable();
        homogeneous_units.dedup();
        Self { r, graded, strict_literal, idem_e, units_by_degree, homogeneous_units }
    }

    fn ring(&self) -> &FiniteRing {
        self.r.ring()
    }

    /// Degree used for the search, `None` for zero.
    fn degree(&self, x: usize) -> Result<Option<usize>> {
        if x == 0 {
            Ok(None)
        } else {
            self.r.degree(x).map(Some)
        }
    }

    fn reported_degree(&self, d: Option<usize>) -> Option<usize> {
        if self.graded {
            d
        } else {
            None
        }
    }

    fn search(&self, property: Property, x: usize) -> Result<Witness> {
        let ring = self.ring();
        let d = self.degree(x)?;
        let degree = self.reported_degree(d);
        let witness = |decomposition| Witness { x, degree, decomposition };
        let g = d.unwrap_or(self.r.group().identity());
        let units = &self.units_by_degree[g];
        let mut searched = 0;
        match property {
            Property::UNilClean | Property::GradedUNilClean => {
                if x == 0 {
                    return Ok(witness(Decomposition::UnitRegularPlusNilpotent { f: 0, u: ring.one(), n: 0 }));
                }
                for &f in &self.idem_e {
                    for &u in units {
                        searched += 1;
                        let n = ring.sub(x, ring.mul(f, u));
                        if ring.is_nilpotent(n) && self.r.fits_degree(n, g) {
                            return Ok(witness(Decomposition::UnitRegularPlusNilpotent { f, u, n }));
                        }
                    }
                }
                // 0 = 0·1 lies in gur(R) even when R_g has no units.
                if units.is_empty() && ring.is_nilpotent(x) {
                    return Ok(witness(Decomposition::UnitRegularPlusNilpotent { f: 0, u: ring.one(), n: x }));
                }
            }
            Property::GClean | Property::GradedGClean => {
                if x == 0 {
                    let one = ring.one();
                    return Ok(witness(Decomposition::UnitRegularPlusUnit { f: one, u: one, v: ring.neg(one) }));
                }
                for &f in &self.idem_e {
                    for &u in units {
                        searched += 1;
                        let v = ring.sub(x, ring.mul(f, u));
                        if ring.is_unit(v) && self.r.fits_degree(v, g) {
                            return Ok(witness(Decomposition::UnitRegularPlusUnit { f, u, v }));
                        }
                    }
                }
            }
            Property::GradedNilGood => {
                if ring.is_nilpotent(x) {
                    return Ok(witness(Decomposition::Nilpotent));
                }
                let candidates = if self.strict_literal { &self.homogeneous_units } else { units };
                for &u in candidates {
                    searched += 1;
                    let n = ring.sub(x, u);
                    let placed = if self.strict_literal { self.r.is_homogeneous(n) } else { self.r.fits_degree(n, g) };
                    if ring.is_nilpotent(n) && placed {
                        return Ok(witness(Decomposition::UnitPlusNilpotent { u, n }));
                    }
                }
            }
        }
        Err(Error::NotDecomposable { x, searched })
    }

    fn stats(&self, checked: usize) -> Stats {
        let ring = self.ring();
        let unit_regular = if self.graded {
            graded_unit_regular_elements(self.r).iter().map(ElementSet::len).collect()
        } else {
            vec![unit_regular_elements(ring).len()]
        };
        Stats {
            units: ring.units().len(),
            nilpotents: ring.nilpotents().len(),
            idempotents: self.idem_e.len(),
            unit_regular,
            checked,
        }
    }
}

/// Re-validates a witness: arithmetic, memberships and, for graded
/// properties, degree coherence of every nonzero summand.
pub fn check_witness(r: &GradedRing, property: Property, strict_literal: bool, w: &Witness) -> Result<(), String> {
    let ring = r.ring();
    let n = ring.order();
    let in_range = |v: usize| if v < n { Ok(()) } else { Err(format!("{v} is out of range")) };
    in_range(w.x)?;
    let graded = property.is_graded();
    if graded {
        if !r.is_homogeneous(w.x) {
            return Err(format!("{} is not homogeneous", w.x));
        }
        let expected = if w.x == 0 { None } else { r.degree(w.x).ok() };
        if w.degree != expected {
            return Err(format!("degree {:?} recorded for {}, expected {:?}", w.degree, w.x, expected));
        }
    } else if w.degree.is_some() {
        return Err("ungraded witness carries a degree".into());
    }
    let g = w.degree;
    // Nonzero summands must sit in R_deg(x); zero is of every degree.
    let placed = |v: usize| match g {
        Some(g) if graded => v == 0 || r.fits_degree(v, g),
        _ => true,
    };
    let idempotent_ok = |f: usize| ring.is_idempotent(f) && (!graded || r.identity_component().contains(f));
    match w.decomposition {
        Decomposition::UnitRegularPlusNilpotent { f, u, n: m } => {
            for v in [f, u, m] {
                in_range(v)?;
            }
            let fu = ring.mul(f, u);
            if ring.add(fu, m) != w.x {
                return Err(format!("{f}*{u} + {m} != {}", w.x));
            }
            if !idempotent_ok(f) || !ring.is_unit(u) || !ring.is_nilpotent(m) {
                return Err("factor memberships fail".into());
            }
            if graded && fu != 0 && !(g.is_some_and(|g| r.fits_degree(u, g)) && placed(fu)) {
                return Err("unit part is not of the element's degree".into());
            }
            if !placed(m) {
                return Err("nilpotent part is not of the element's degree".into());
            }
        }
        Decomposition::UnitRegularPlusUnit { f, u, v } => {
            for t in [f, u, v] {
                in_range(t)?;
            }
            let fu = ring.mul(f, u);
            if ring.add(fu, v) != w.x {
                return Err(format!("{f}*{u} + {v} != {}", w.x));
            }
            if !idempotent_ok(f) || !ring.is_unit(u) || !ring.is_unit(v) {
                return Err("factor memberships fail".into());
            }
            let g = g.unwrap_or(r.group().identity());
            if graded && !(r.fits_degree(u, g) && r.fits_degree(v, g)) {
                return Err("units are not of the element's degree".into());
            }
        }
        Decomposition::UnitPlusNilpotent { u, n: m } => {
            in_range(u)?;
            in_range(m)?;
            if ring.add(u, m) != w.x || !ring.is_unit(u) || !ring.is_nilpotent(m) {
                return Err(format!("{u} + {m} is not a unit-plus-nilpotent split of {}", w.x));
            }
            let coherent = if strict_literal {
                r.is_homogeneous(u) && r.is_homogeneous(m)
            } else {
                placed(u) && placed(m)
            };
            if !coherent {
                return Err("summands are not homogeneous of the element's degree".into());
            }
        }
        Decomposition::Nilpotent => {
            if !ring.is_nilpotent(w.x) {
                return Err(format!("{} is not nilpotent", w.x));
            }
        }
    }
    Ok(())
}

/// The view a property is decided on: the graded ring itself, or the bare
/// ring over the trivial group.
fn view(r: &GradedRing, property: Property) -> std::borrow::Cow<'_, GradedRing> {
    if property.is_graded() {
        std::borrow::Cow::Borrowed(r)
    } else {
        std::borrow::Cow::Owned(GradedRing::trivial(r.ring_arc().clone(), FiniteGroup::trivial()))
    }
}

/// Decides `property` on every element it quantifies over.
pub fn decide(r: &GradedRing, property: Property, strict_literal: bool) -> PropertyVerdict {
    let v = view(r, property);
    let ctx = Context::new(&v, property.is_graded(), strict_literal);
    let elements: Vec<usize> = v.homogeneous_elements().iter().collect();
    let found: Vec<Option<Witness>> = elements.par_iter().map(|&x| ctx.search(property, x).ok()).collect();
    for w in found.iter().flatten() {
        if let Err(e) = check_witness(&v, property, strict_literal, w) {
            panic!("emitted an invalid witness {w:?}: {e}");
        }
    }
    let counterexample = elements.iter().zip(&found).find(|(_, w)| w.is_none()).map(|(&x, _)| x);
    let holds = counterexample.is_none();
    PropertyVerdict {
        property,
        holds,
        witnesses: if holds { found.into_iter().flatten().collect() } else { Vec::new() },
        counterexample,
        stats: ctx.stats(elements.len()),
    }
}

pub fn is_u_nil_clean(ring: &Arc<FiniteRing>) -> PropertyVerdict {
    decide(&GradedRing::trivial(ring.clone(), FiniteGroup::trivial()), Property::UNilClean, false)
}

pub fn is_g_clean(ring: &Arc<FiniteRing>) -> PropertyVerdict {
    decide(&GradedRing::trivial(ring.clone(), FiniteGroup::trivial()), Property::GClean, false)
}

pub fn is_graded_u_nil_clean(r: &GradedRing) -> PropertyVerdict {
    decide(r, Property::GradedUNilClean, false)
}

/// With `strict_literal`, the unit and nilpotent summands need only be
/// homogeneous, not of the element's degree.
pub fn is_graded_nil_good(r: &GradedRing, strict_literal: bool) -> PropertyVerdict {
    decide(r, Property::GradedNilGood, strict_literal)
}

pub fn is_graded_g_clean(r: &GradedRing) -> PropertyVerdict {
    decide(r, Property::GradedGClean, false)
}

/// The first graded U-nil clean decomposition of a homogeneous `x`.
pub fn witness_for(r: &GradedRing, x: usize) -> Result<Witness> {
    if x >= r.order() {
        return Err(Error::NotHomogeneous(x));
    }
    Context::new(r, true, false).search(Property::GradedUNilClean, x)
}

/// Whether a property holds, without collecting witnesses.
pub fn holds(r: &GradedRing, property: Property) -> bool {
    first_failure(r, property).is_none()
}

/// The least element the property fails on, if any.
pub fn first_failure(r: &GradedRing, property: Property) -> Option<usize> {
    let v = view(r, property);
    let ctx = Context::new(&v, property.is_graded(), false);
    let elements: Vec<usize> = v.homogeneous_elements().iter().collect();
    elements.par_iter().find_first(|&&x| ctx.search(property, x).is_err()).copied()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{matrix_graded, Sigma};

    fn zn(n: usize) -> Arc<FiniteRing> {
        Arc::new(FiniteRing::zmod(n).unwrap())
    }

    fn e3() -> GradedRing {
        let c2 = FiniteGroup::cyclic(2);
        let z2 = GradedRing::trivial(zn(2), c2);
        matrix_graded(&z2, &Sigma::new(vec![0, 1], 2).unwrap(), &Default::default()).unwrap()
    }

    fn by_label(r: &GradedRing, label: &str) -> usize {
        r.ring().elements().find(|&x| r.ring().label(x) == label).unwrap()
    }

    #[test]
    fn unit_regular_examples() {
        assert_eq!(unit_regular_elements(&zn(6)).len(), 6);
        assert_eq!(unit_regular_elements(&zn(4)).members(), &[0, 1, 3]);
        assert_eq!(unit_regular_elements(&zn(5)).len(), 5);
    }

    #[test]
    fn graded_unit_regular_of_e3() {
        let r = e3();
        let gur = graded_unit_regular_elements(&r);
        let mut anti: Vec<&str> = gur[1].iter().map(|x| r.ring().label(x)).collect();
        anti.sort();
        assert_eq!(anti, ["[[0,0],[0,0]]", "[[0,0],[1,0]]", "[[0,1],[0,0]]", "[[0,1],[1,0]]"]);
        assert!(r.identity_component().iter().filter(|&x| r.ring().is_idempotent(x)).all(|x| gur[0].contains(x)));
    }

    #[test]
    fn ungraded_examples() {
        for n in [2, 3, 4, 6, 8, 9, 12] {
            assert!(is_u_nil_clean(&zn(n)).holds, "Z_{n}");
            assert!(is_g_clean(&zn(n)).holds, "Z_{n}");
        }
        let m2 = e3();
        assert!(is_u_nil_clean(m2.ring_arc()).holds);
    }

    #[test]
    fn z2_g_clean_witnesses() {
        let v = is_g_clean(&zn(2));
        assert_eq!(v.witnesses[0].decomposition, Decomposition::UnitRegularPlusUnit { f: 1, u: 1, v: 1 });
        assert_eq!(v.witnesses[1].decomposition, Decomposition::UnitRegularPlusUnit { f: 0, u: 1, v: 1 });
    }

    #[test]
    fn e3_verdicts() {
        let r = e3();
        let v = is_graded_u_nil_clean(&r);
        assert!(v.holds);
        assert_eq!(v.witnesses.len(), 7);
        let nil_good = is_graded_nil_good(&r, false);
        assert!(!nil_good.holds);
        let bad = r.ring().label(nil_good.counterexample.unwrap());
        assert!(bad == "[[1,0],[0,0]]" || bad == "[[0,0],[0,1]]");
        assert!(!is_graded_nil_good(&r, true).holds);
    }

    #[test]
    fn canonical_witnesses() {
        let r = e3();
        let e11 = by_label(&r, "[[1,0],[0,0]]");
        let w = witness_for(&r, e11).unwrap();
        assert_eq!(w.decomposition, Decomposition::UnitRegularPlusNilpotent { f: e11, u: 1, n: 0 });
        let one = witness_for(&r, 1).unwrap();
        assert_eq!(one.decomposition, Decomposition::UnitRegularPlusNilpotent { f: 1, u: 1, n: 0 });
        let z4 = GradedRing::trivial(zn(4), FiniteGroup::trivial());
        let two = witness_for(&z4, 2).unwrap();
        assert_eq!(two.decomposition, Decomposition::UnitRegularPlusNilpotent { f: 0, u: 1, n: 2 });
        let mixed = by_label(&r, "[[1,1],[0,0]]");
        assert!(matches!(witness_for(&r, mixed), Err(Error::NotHomogeneous(_))));
    }

    #[test]
    fn nilpotent_components_use_the_zero_unit_regular() {
        let c3 = FiniteGroup::cyclic(3);
        let r = matrix_graded(&GradedRing::trivial(zn(3), c3), &Sigma::new(vec![0, 1], 3).unwrap(), &Default::default())
            .unwrap();
        let v = is_graded_u_nil_clean(&r);
        assert!(v.holds);
        assert_eq!(v.witnesses.len(), 13);
        for w in v.witnesses.iter().filter(|w| w.degree.is_some_and(|g| g != 0)) {
            assert!(matches!(w.decomposition, Decomposition::UnitRegularPlusNilpotent { f: 0, n, .. } if n == w.x));
        }
    }

    #[test]
    fn trivial_grading_collapses_to_ungraded() {
        for n in 2..=12 {
            let r = GradedRing::trivial(zn(n), FiniteGroup::cyclic(2));
            assert_eq!(is_graded_u_nil_clean(&r).holds, is_u_nil_clean(&zn(n)).holds);
            // Z_n is nil-good exactly when it is local
            let local = (2..=n).filter(|p| n % p == 0 && (2..*p).all(|d| p % d != 0)).count() == 1;
            assert_eq!(is_graded_nil_good(&r, false).holds, local, "Z_{n}");
        }
    }

    #[test]
    fn tampered_witness_is_rejected() {
        let r = e3();
        let mut w = witness_for(&r, 1).unwrap();
        assert!(check_witness(&r, Property::GradedUNilClean, false, &w).is_ok());
        w.decomposition = Decomposition::UnitRegularPlusNilpotent { f: 0, u: 1, n: 1 };
        assert!(check_witness(&r, Property::GradedUNilClean, false, &w).is_err());
        w.degree = Some(1);
        assert!(check_witness(&r, Property::GradedUNilClean, false, &w).is_err());
    }

    #[test]
    fn property_names_round_trip() {
        for p in Property::ALL {
            assert_eq!(p.name().parse::<Property>().unwrap(), p);
        }
        assert!("clean".parse::<Property>().is_err());
    }
}
