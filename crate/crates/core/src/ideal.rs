//! One-sided and two-sided ideals: fixpoint closures, lattice search, and the
//! classical Jacobson radical.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::ring::{ElementSet, FiniteRing};
use crate::Caps;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Left,
    Right,
    TwoSided,
}

/// Additive subgroup grown one generator at a time.
struct Span<'a> {
    ring: &'a FiniteRing,
    mask: Vec<bool>,
    members: Vec<usize>,
}

impl<'a> Span<'a> {
    fn zero(ring: &'a FiniteRing) -> Self {
        let mut mask = vec![false; ring.order()];
        mask[0] = true;
        Self { ring, mask, members: vec![0] }
    }

    fn from_subgroup(ring: &'a FiniteRing, set: &ElementSet) -> Self {
        Self { ring, mask: set.mask().to_vec(), members: set.members().to_vec() }
    }

    /// `S := S + ⟨g⟩`. Returns whether the span grew.
    fn insert(&mut self, g: usize) -> bool {
        if self.mask[g] {
            return false;
        }
        let old = self.members.len();
        let mut shift = g;
        while shift != 0 {
            for i in 0..old {
                let z = self.ring.add(self.members[i], shift);
                if !self.mask[z] {
                    self.mask[z] = true;
                    self.members.push(z);
                }
            }
            shift = self.ring.add(shift, g);
        }
        true
    }

    fn into_set(self) -> ElementSet {
        ElementSet::from_mask(self.mask)
    }
}

fn close(mut span: Span<'_>, mut queue: Vec<usize>, side: Side) -> ElementSet {
    let ring = span.ring;
    while let Some(x) = queue.pop() {
        if span.insert(x) {
            // Ring elements are sums of additive generators, so multiplying the
            // span generators by those suffices.
            for &s in ring.additive_generators() {
                match side {
                    Side::Right => queue.push(ring.mul(x, s)),
                    Side::Left => queue.push(ring.mul(s, x)),
                    Side::TwoSided => {
                        queue.push(ring.mul(x, s));
                        queue.push(ring.mul(s, x));
                    }
                }
            }
        }
    }
    span.into_set()
}

/// Smallest ideal of the given side containing `gens`.
pub fn ideal_closure(ring: &FiniteRing, gens: &[usize], side: Side) -> ElementSet {
    close(Span::zero(ring), gens.to_vec(), side)
}

/// Smallest right ideal containing `gens`.
pub fn right_ideal_closure(ring: &FiniteRing, gens: &[usize]) -> ElementSet {
    ideal_closure(ring, gens, Side::Right)
}

/// Closure of `ideal ∪ {x}`, where `ideal` is already an ideal of that side.
pub fn extend_ideal(ring: &FiniteRing, ideal: &ElementSet, x: usize, side: Side) -> ElementSet {
    close(Span::from_subgroup(ring, ideal), vec![x], side)
}

/// Checks the ideal axioms for `members` on the given side. On failure returns a
/// human-readable witness.
pub fn check_ideal(ring: &FiniteRing, members: &ElementSet, side: Side) -> Result<(), String> {
    if !members.contains(0) {
        return Err("does not contain zero".into());
    }
    for a in members.iter() {
        if !members.contains(ring.neg(a)) {
            return Err(format!("not closed under negation at {a}"));
        }
        for b in members.iter() {
            if !members.contains(ring.add(a, b)) {
                return Err(format!("not closed under addition at ({a}, {b})"));
            }
        }
        for r in ring.elements() {
            if matches!(side, Side::Right | Side::TwoSided) && !members.contains(ring.mul(a, r)) {
                return Err(format!("{a}*{r} escapes"));
            }
            if matches!(side, Side::Left | Side::TwoSided) && !members.contains(ring.mul(r, a)) {
                return Err(format!("{r}*{a} escapes"));
            }
        }
    }
    Ok(())
}

/// A proper ideal reached by the lattice search, with the generators that produced it.
#[derive(Clone, Debug)]
pub struct FoundIdeal {
    pub members: ElementSet,
    pub generators: Vec<usize>,
    pub maximal: bool,
}

/// Breadth-first search of the proper ideals of one side that are generated by
/// elements of `candidates`, starting from `{0}`.
///
/// Each ideal is extended by one outside candidate at a time. Candidates in the
/// same coset of the current ideal give the same extension, so one per coset is
/// tried. An ideal with no proper extension is maximal.
pub fn proper_ideal_lattice(ring: &FiniteRing, candidates: &[usize], side: Side) -> Vec<FoundIdeal> {
    let n = ring.order();
    if n <= 1 {
        return Vec::new();
    }
    let one = ring.one();
    let key = |s: &ElementSet| -> Vec<u64> {
        let mut words = vec![0u64; n.div_ceil(64)];
        for m in s.iter() {
            words[m / 64] |= 1 << (m % 64);
        }
        words
    };
    let mut found = vec![FoundIdeal {
        members: ElementSet::from_members(n, [0]),
        generators: Vec::new(),
        maximal: true,
    }];
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    seen.insert(key(&found[0].members));
    let mut i = 0;
    while i < found.len() {
        let current = found[i].members.clone();
        let mut tried = current.mask().to_vec();
        let mut has_extension = false;
        for &x in candidates {
            if tried[x] {
                continue;
            }
            for m in current.iter() {
                tried[ring.add(x, m)] = true;
            }
            let bigger = extend_ideal(ring, &current, x, side);
            if bigger.contains(one) {
                continue;
            }
            has_extension = true;
            if seen.insert(key(&bigger)) {
                let mut generators = found[i].generators.clone();
                generators.push(x);
                found.push(FoundIdeal { members: bigger, generators, maximal: true });
            }
        }
        found[i].maximal = !has_extension;
        i += 1;
    }
    found
}

fn check_cap(what: &'static str, order: usize, cap: usize) -> Result<()> {
    if order > cap {
        return Err(Error::CapExceeded { what, order, cap });
    }
    Ok(())
}

/// All maximal right ideals.
pub fn maximal_right_ideals(ring: &FiniteRing, caps: &Caps) -> Result<Vec<ElementSet>> {
    check_cap("maximal right ideals", ring.order(), caps.ideal_order)?;
    let all: Vec<usize> = ring.elements().collect();
    let mut maxes: Vec<ElementSet> = proper_ideal_lattice(ring, &all, Side::Right)
        .into_iter()
        .filter(|f| f.maximal)
        .map(|f| f.members)
        .collect();
    maxes.sort_by(|a, b| a.members().cmp(b.members()));
    Ok(maxes)
}

/// `J(R) = {x : 1 − xr is a unit for every r}`.
pub fn jacobson_radical(ring: &FiniteRing) -> ElementSet {
    let one = ring.one();
    ElementSet::from_mask(
        ring.elements()
            .map(|x| ring.elements().all(|r| ring.is_unit(ring.sub(one, ring.mul(x, r)))))
            .collect(),
    )
}

/// Intersection of a family of subsets of a ring of the given order; the whole
/// ring for an empty family.
pub fn intersect_all(order: usize, sets: &[ElementSet]) -> ElementSet {
    sets.iter().fold(ElementSet::full(order), |acc, s| acc.intersection(s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zn(n: usize) -> FiniteRing {
        FiniteRing::zmod(n).unwrap()
    }

    fn set(n: usize, v: &[usize]) -> ElementSet {
        ElementSet::from_members(n, v.iter().copied())
    }

    #[test]
    fn closure_examples() {
        let z4 = zn(4);
        assert_eq!(right_ideal_closure(&z4, &[2]), set(4, &[0, 2]));
        assert_eq!(right_ideal_closure(&z4, &[]), set(4, &[0]));
        assert_eq!(right_ideal_closure(&z4, &[1]), ElementSet::full(4));
        let z12 = zn(12);
        assert_eq!(right_ideal_closure(&z12, &[4, 6]), set(12, &[0, 2, 4, 6, 8, 10]));
    }

    #[test]
    fn maximal_ideals_of_cyclic_rings() {
        let caps = Caps::default();
        assert_eq!(maximal_right_ideals(&zn(4), &caps).unwrap(), vec![set(4, &[0, 2])]);
        assert_eq!(
            maximal_right_ideals(&zn(6), &caps).unwrap(),
            vec![set(6, &[0, 2, 4]), set(6, &[0, 3])]
        );
        assert_eq!(maximal_right_ideals(&zn(2), &caps).unwrap(), vec![set(2, &[0])]);
    }

    #[test]
    fn radical_examples() {
        assert_eq!(jacobson_radical(&zn(3)), set(3, &[0]));
        assert_eq!(jacobson_radical(&zn(4)), set(4, &[0, 2]));
        assert_eq!(jacobson_radical(&zn(6)), set(6, &[0]));
        assert_eq!(jacobson_radical(&zn(8)), set(8, &[0, 2, 4, 6]));
    }

    #[test]
    fn radical_matches_maximal_ideal_intersection() {
        let caps = Caps::default();
        for n in 2..=30 {
            let r = zn(n);
            let maxes = maximal_right_ideals(&r, &caps).unwrap();
            assert_eq!(intersect_all(n, &maxes), jacobson_radical(&r), "Z_{n}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        let caps = Caps { order: 4096, ideal_order: 8 };
        assert!(matches!(
            maximal_right_ideals(&zn(9), &caps),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn check_ideal_reports_escape() {
        let z6 = zn(6);
        assert!(check_ideal(&z6, &set(6, &[0, 3]), Side::TwoSided).is_ok());
        assert!(check_ideal(&z6, &set(6, &[0, 1, 5]), Side::Right).is_err());
    }
}
