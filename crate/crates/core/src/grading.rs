//! Group gradings of finite rings, homogeneous ideals, graded quotients and
//! graded maps.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, GradingViolation, Result};
use crate::group::FiniteGroup;
use crate::ideal::{self, check_ideal, proper_ideal_lattice, FoundIdeal, Side};
use crate::ring::{ElementSet, FiniteRing};
use crate::Caps;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Homog {
    Zero,
    Of(usize),
    Mixed,
}

/// A validated decomposition `R = ⊕ R_g` with materialized homogeneous parts.
#[derive(Clone, Debug)]
pub struct Grading {
    group: FiniteGroup,
    components: Vec<ElementSet>,
    /// `split[x * |G| + g]` is the `g`-part of `x`.
    split: Vec<u16>,
    homog: Vec<Homog>,
}

#[derive(Debug)]
pub struct GradedRing {
    ring: Arc<FiniteRing>,
    grading: Grading,
    identity_component: OnceLock<(FiniteRing, Vec<usize>)>,
}

impl Clone for GradedRing {
    fn clone(&self) -> Self {
        Self { ring: self.ring.clone(), grading: self.grading.clone(), identity_component: OnceLock::new() }
    }
}

impl PartialEq for GradedRing {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && self.grading.group == other.grading.group
            && self.grading.components == other.grading.components
    }
}

/// Validates `components` (indexed by group element) as a grading of `ring`.
/// Every violated axiom is reported.
pub fn validate_grading(ring: Arc<FiniteRing>, group: FiniteGroup, components: Vec<Vec<usize>>) -> Result<GradedRing> {
    let n = ring.order();
    let k = group.order();
    if components.len() != k {
        return Err(Error::InvalidRing(format!(
            "grading lists {} components for a group of order {k}",
            components.len()
        )));
    }
    let mut violations = Vec::new();
    for (g, comp) in components.iter().enumerate() {
        if let Some(&x) = comp.iter().find(|&&x| x >= n) {
            violations.push(GradingViolation::OutOfRange { g, x });
        }
    }
    if !violations.is_empty() {
        return Err(Error::Grading(violations));
    }
    let sets: Vec<ElementSet> = components
        .iter()
        .map(|c| ElementSet::from_members(n, c.iter().copied()))
        .collect();

    for (g, set) in sets.iter().enumerate() {
        let witness = if !set.contains(0) {
            Some(0)
        } else {
            set.iter().find_map(|a| {
                set.iter()
                    .map(|b| ring.add(a, b))
                    .chain([ring.neg(a)])
                    .find(|&s| !set.contains(s))
            })
        };
        if let Some(witness) = witness {
            violations.push(GradingViolation::NotSubgroup { g, witness });
        }
    }

    // Direct sum: the summation map from the product of components must be a
    // bijection onto R. Pigeonhole bounds the enumeration to n + 1 tuples.
    let mut split = vec![0u16; n * k];
    let mut reached = vec![false; n];
    let mut direct_sum_ok = true;
    let mut digits = vec![0usize; k];
    let mut visited = 0usize;
    if sets.iter().all(|s| !s.is_empty()) {
        'tuples: loop {
            let x = (0..k).fold(0, |acc, g| ring.add(acc, sets[g].members()[digits[g]]));
            if reached[x] {
                violations.push(GradingViolation::NotDirectSum { x });
                direct_sum_ok = false;
                break;
            }
            reached[x] = true;
            for g in 0..k {
                split[x * k + g] = sets[g].members()[digits[g]] as u16;
            }
            visited += 1;
            if visited > n {
                break;
            }
            for g in 0..k {
                digits[g] += 1;
                if digits[g] < sets[g].len() {
                    continue 'tuples;
                }
                digits[g] = 0;
            }
            break;
        }
    }
    if direct_sum_ok {
        if let Some(x) = (0..n).find(|&x| !reached[x]) {
            violations.push(GradingViolation::NotDirectSum { x });
        }
    }

    for g in 0..k {
        for h in 0..k {
            let target = &sets[group.mul(g, h)];
            let bad = sets[g]
                .iter()
                .find_map(|a| sets[h].iter().find(|&b| !target.contains(ring.mul(a, b))).map(|b| (a, b)));
            if let Some((a, b)) = bad {
                violations.push(GradingViolation::ClosureViolation { g, h, a, b });
            }
        }
    }
    let e = group.identity();
    if !sets[e].contains(ring.one()) {
        violations.push(GradingViolation::OneNotInIdentity);
    }
    for (g, set) in sets.iter().enumerate() {
        if g == e {
            continue;
        }
        if let Some(x) = set.iter().find(|&x| x != 0 && ring.is_idempotent(x)) {
            violations.push(GradingViolation::IdempotentOffIdentity { x, g });
        }
    }
    if !violations.is_empty() {
        return Err(Error::Grading(violations));
    }

    let homog = (0..n)
        .map(|x| {
            let parts: Vec<usize> = (0..k).filter(|&g| split[x * k + g] != 0).collect();
            match parts.as_slice() {
                [] => Homog::Zero,
                [g] => Homog::Of(*g),
                _ => Homog::Mixed,
            }
        })
        .collect();
    Ok(GradedRing {
        ring,
        grading: Grading { group, components: sets, split, homog },
        identity_component: OnceLock::new(),
    })
}

impl GradedRing {
    /// Everything in the identity component.
    pub fn trivial(ring: Arc<FiniteRing>, group: FiniteGroup) -> Self {
        let n = ring.order();
        let components = group
            .elements()
            .map(|g| if g == group.identity() { (0..n).collect() } else { vec![0] })
            .collect();
        validate_grading(ring, group, components).expect("trivial grading is always valid")
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn ring_arc(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.grading.group
    }

    pub fn order(&self) -> usize {
        self.ring.order()
    }

    pub fn component(&self, g: usize) -> &ElementSet {
        &self.grading.components[g]
    }

    pub fn components(&self) -> &[ElementSet] {
        &self.grading.components
    }

    pub fn identity_component(&self) -> &ElementSet {
        self.component(self.group().identity())
    }

    /// The `g`-part of `x`.
    #[inline]
    pub fn part(&self, x: usize, g: usize) -> usize {
        self.grading.split[x * self.group().order() + g] as usize
    }

    /// The family `{x_g}` of homogeneous parts, indexed by group element.
    pub fn split(&self, x: usize) -> Vec<usize> {
        self.group().elements().map(|g| self.part(x, g)).collect()
    }

    #[inline]
    pub fn is_homogeneous(&self, x: usize) -> bool {
        self.grading.homog[x] != Homog::Mixed
    }

    /// `h(R)`.
    pub fn homogeneous_elements(&self) -> ElementSet {
        ElementSet::from_mask((0..self.order()).map(|x| self.is_homogeneous(x)).collect())
    }

    pub fn degree(&self, x: usize) -> Result<usize> {
        match self.grading.homog[x] {
            Homog::Zero => Err(Error::ZeroHasNoDegree),
            Homog::Of(g) => Ok(g),
            Homog::Mixed => Err(Error::NotHomogeneous(x)),
        }
    }

    /// Degree of a homogeneous element, treating 0 as lying in every component.
    #[inline]
    pub fn fits_degree(&self, x: usize, g: usize) -> bool {
        match self.grading.homog[x] {
            Homog::Zero => true,
            Homog::Of(h) => h == g,
            Homog::Mixed => false,
        }
    }

    pub fn support(&self) -> Vec<usize> {
        self.group().elements().filter(|&g| self.component(g).len() > 1).collect()
    }

    pub fn is_trivially_graded(&self) -> bool {
        self.support().iter().all(|&g| g == self.group().identity())
    }

    /// `R_e` as a standalone ring, with the map from its indices back to `R`.
    pub fn identity_component_ring(&self) -> &(FiniteRing, Vec<usize>) {
        self.identity_component.get_or_init(|| {
            self.ring
                .subring(self.identity_component().members(), self.ring.one())
                .expect("identity component is a unital subring")
        })
    }

    /// The components as plain index lists, for serialization.
    pub fn component_lists(&self) -> Vec<Vec<usize>> {
        self.components().iter().map(|c| c.members().to_vec()).collect()
    }
}

/// A validated homogeneous ideal together with its component parts `I ∩ R_g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousIdeal {
    pub members: ElementSet,
    pub side: Side,
    pub parts: Vec<ElementSet>,
}

impl HomogeneousIdeal {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn is_proper(&self) -> bool {
        !self.members.contains(1) && self.members.universe() > 1
    }
}

/// Validates `members` as an ideal of `side` that splits along the grading.
pub fn is_homogeneous_ideal(r: &GradedRing, members: &ElementSet, side: Side) -> Result<HomogeneousIdeal> {
    check_ideal(r.ring(), members, side).map_err(Error::NotIdeal)?;
    for x in members.iter() {
        if r.group().elements().any(|g| !members.contains(r.part(x, g))) {
            return Err(Error::NotHomogeneous(x));
        }
    }
    let parts = r.components().iter().map(|c| c.intersection(members)).collect();
    Ok(HomogeneousIdeal { members: members.clone(), side, parts })
}

/// Every homogeneous member is nilpotent.
pub fn is_graded_nil(r: &GradedRing, ideal: &HomogeneousIdeal) -> bool {
    ideal.parts.iter().all(|p| p.iter().all(|x| r.ring().is_nilpotent(x)))
}

fn check_cap(what: &'static str, r: &GradedRing, caps: &Caps) -> Result<()> {
    if r.order() > caps.ideal_order {
        return Err(Error::CapExceeded { what, order: r.order(), cap: caps.ideal_order });
    }
    Ok(())
}

/// Proper homogeneous ideals of one side, each the closure of homogeneous generators.
pub fn homogeneous_ideal_lattice(r: &GradedRing, side: Side, caps: &Caps) -> Result<Vec<FoundIdeal>> {
    check_cap("homogeneous ideal lattice", r, caps)?;
    let candidates = r.homogeneous_elements();
    Ok(proper_ideal_lattice(r.ring(), candidates.members(), side))
}

/// Maximal proper homogeneous right ideals, in ascending member order.
pub fn graded_maximal_right_ideals(r: &GradedRing, caps: &Caps) -> Result<Vec<HomogeneousIdeal>> {
    let mut maxes: Vec<HomogeneousIdeal> = homogeneous_ideal_lattice(r, Side::Right, caps)?
        .into_iter()
        .filter(|f| f.maximal)
        .map(|f| is_homogeneous_ideal(r, &f.members, Side::Right))
        .collect::<Result<_>>()?;
    maxes.sort_by(|a, b| a.members.members().cmp(b.members.members()));
    Ok(maxes)
}

/// `J^g(R)`: the intersection of the graded-maximal right ideals, validated as a
/// homogeneous two-sided ideal.
pub fn graded_jacobson_radical(r: &GradedRing, caps: &Caps) -> Result<HomogeneousIdeal> {
    let maxes = graded_maximal_right_ideals(r, caps)?;
    let sets: Vec<ElementSet> = maxes.into_iter().map(|m| m.members).collect();
    let jg = ideal::intersect_all(r.order(), &sets);
    is_homogeneous_ideal(r, &jg, Side::TwoSided)
}

pub fn is_graded_local(r: &GradedRing, caps: &Caps) -> Result<bool> {
    Ok(graded_maximal_right_ideals(r, caps)?.len() == 1)
}

/// `I + Rx = R` for every homogeneous `x ∉ I`.
pub fn left_multiple_criterion(r: &GradedRing, ideal: &ElementSet) -> bool {
    let ring = r.ring();
    r.homogeneous_elements().iter().filter(|&x| !ideal.contains(x)).all(|x| {
        let rx: Vec<usize> = ring.elements().map(|a| ring.mul(a, x)).collect();
        let mut sum = vec![false; ring.order()];
        for i in ideal.iter() {
            for &y in &rx {
                sum[ring.add(i, y)] = true;
            }
        }
        sum.iter().all(|&b| b)
    })
}

/// A ring homomorphism between graded rings over the same group.
#[derive(Clone, Debug)]
pub struct GradedMap {
    source: Arc<GradedRing>,
    target: Arc<GradedRing>,
    table: Vec<usize>,
}

impl GradedMap {
    /// Validates `table` as a unital ring homomorphism.
    pub fn new(source: Arc<GradedRing>, target: Arc<GradedRing>, table: Vec<usize>) -> Result<Self> {
        if source.group() != target.group() {
            return Err(Error::GroupMismatch);
        }
        let (a, b) = (source.ring(), target.ring());
        if table.len() != a.order() || table.iter().any(|&y| y >= b.order()) {
            return Err(Error::NotHomomorphism("table size or range mismatch".into()));
        }
        if table[a.one()] != b.one() {
            return Err(Error::NotHomomorphism("one is not preserved".into()));
        }
        let gens = a.additive_generators();
        for x in a.elements() {
            for &s in gens {
                if table[a.add(x, s)] != b.add(table[x], table[s]) {
                    return Err(Error::NotHomomorphism(format!("not additive at ({x}, {s})")));
                }
            }
        }
        // Both sides are biadditive once the map is additive.
        for &x in gens {
            for &y in gens {
                if table[a.mul(x, y)] != b.mul(table[x], table[y]) {
                    return Err(Error::NotHomomorphism(format!("not multiplicative at ({x}, {y})")));
                }
            }
        }
        Ok(Self { source, target, table })
    }

    pub fn identity(r: Arc<GradedRing>) -> Self {
        let table = (0..r.order()).collect();
        Self { source: r.clone(), target: r, table }
    }

    pub fn source(&self) -> &Arc<GradedRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedRing> {
        &self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `f(h(A)) ⊆ h(B)`.
    pub fn is_graded_homomorphism(&self) -> bool {
        self.source
            .homogeneous_elements()
            .iter()
            .all(|x| self.target.is_homogeneous(self.table[x]))
    }

    /// `f(A_g) ⊆ B_g` for every `g`.
    pub fn is_degree_preserving(&self) -> bool {
        self.source
            .group()
            .elements()
            .all(|g| self.source.component(g).iter().all(|x| self.target.component(g).contains(self.table[x])))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        for &y in &self.table {
            hit[y] = true;
        }
        hit.into_iter().all(|b| b)
    }

    pub fn is_bijective(&self) -> bool {
        self.source.order() == self.target.order() && self.is_surjective()
    }

    pub fn kernel(&self) -> ElementSet {
        ElementSet::from_mask(self.table.iter().map(|&y| y == 0).collect())
    }

    /// The kernel as a homogeneous two-sided ideal. Fails with `NotHomogeneous`
    /// when some member has a part outside the kernel.
    pub fn kernel_is_homogeneous(&self) -> Result<HomogeneousIdeal> {
        is_homogeneous_ideal(&self.source, &self.kernel(), Side::TwoSided)
    }
}

/// `R/I` with components `R_g / (I ∩ R_g)`, and the canonical projection.
pub fn quotient_graded(r: &Arc<GradedRing>, ideal: &HomogeneousIdeal) -> Result<GradedMap> {
    if ideal.side != Side::TwoSided {
        return Err(Error::NotTwoSided);
    }
    if !ideal.is_proper() {
        return Err(Error::NotProper);
    }
    let ring = r.ring();
    let n = ring.order();
    // Coset representatives are least members; cosets are indexed by
    // ascending representative, so 0 and 1 stay at indices 0 and 1.
    let mut coset = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if coset[x] != usize::MAX {
            continue;
        }
        let idx = reps.len();
        reps.push(x);
        for i in ideal.members.iter() {
            coset[ring.add(x, i)] = idx;
        }
    }
    let m = reps.len();
    let labels = reps.iter().map(|&x| format!("[{}]", ring.label(x))).collect();
    let (qring, to_new) = FiniteRing::from_fn(
        m,
        |a, b| coset[ring.add(reps[a], reps[b])],
        |a, b| coset[ring.mul(reps[a], reps[b])],
        labels,
    )?;
    debug_assert!(to_new.iter().enumerate().all(|(i, &j)| i == j));
    let components = r
        .components()
        .iter()
        .map(|c| {
            let mut v: Vec<usize> = c.iter().map(|x| to_new[coset[x]]).collect();
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect();
    let target = Arc::new(validate_grading(Arc::new(qring), r.group().clone(), components)?);
    let table = (0..n).map(|x| to_new[coset[x]]).collect();
    GradedMap::new(r.clone(), target, table)
}
