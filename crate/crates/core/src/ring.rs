//! Finite unital rings stored as addition and multiplication tables.
//!
//! Elements are indices `0..order`. Index 0 is the additive zero and index 1
//! the multiplicative one whenever the ring is nonzero.

use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Largest order representable by the table encoding.
pub const MAX_TABLE_ORDER: usize = u16::MAX as usize + 1;

/// A set of ring elements in canonical (ascending) order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    mask: Vec<bool>,
    members: Vec<usize>,
}

impl ElementSet {
    pub fn from_mask(mask: Vec<bool>) -> Self {
        let members = mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect();
        Self { mask, members }
    }

    pub fn from_members(order: usize, members: impl IntoIterator<Item = usize>) -> Self {
        let mut mask = vec![false; order];
        for m in members {
            mask[m] = true;
        }
        Self::from_mask(mask)
    }

    pub fn empty(order: usize) -> Self {
        Self::from_mask(vec![false; order])
    }

    pub fn full(order: usize) -> Self {
        Self::from_mask(vec![true; order])
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask.get(x).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    /// Size of the ambient ring.
    pub fn universe(&self) -> usize {
        self.mask.len()
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self::from_mask(self.mask.iter().zip(&other.mask).map(|(a, b)| *a && *b).collect())
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.members).finish()
    }
}

#[derive(Debug)]
struct Classes {
    inverse: Vec<Option<u16>>,
    nilpotent: Vec<bool>,
    idempotent: Vec<bool>,
    central: Vec<bool>,
}

pub struct FiniteRing {
    order: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    add_gens: Vec<usize>,
    labels: Vec<String>,
    classes: OnceLock<Classes>,
}

impl Clone for FiniteRing {
    fn clone(&self) -> Self {
        Self {
            order: self.order,
            add: self.add.clone(),
            mul: self.mul.clone(),
            neg: self.neg.clone(),
            add_gens: self.add_gens.clone(),
            labels: self.labels.clone(),
            classes: OnceLock::new(),
        }
    }
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing").field("order", &self.order).finish_non_exhaustive()
    }
}

/// Tables compare equal when the rings are equal as encoded; labels are ignored.
impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.add == other.add && self.mul == other.mul
    }
}

impl Eq for FiniteRing {}

impl FiniteRing {
    /// Builds a ring from operations on a natural index set `0..order`, then
    /// relabels so that zero and one land on indices 0 and 1.
    ///
    /// Returns the ring and the map from natural index to canonical index.
    pub fn from_fn<A, M>(order: usize, add: A, mul: M, labels: Vec<String>) -> Result<(Self, Vec<usize>)>
    where
        A: Fn(usize, usize) -> usize + Sync,
        M: Fn(usize, usize) -> usize + Sync,
    {
        check_table_order(order)?;
        let fill = |op: &(dyn Fn(usize, usize) -> usize + Sync)| -> Vec<usize> {
            let mut table = vec![0usize; order * order];
            table
                .par_chunks_mut(order)
                .enumerate()
                .for_each(|(a, row)| row.iter_mut().enumerate().for_each(|(b, c)| *c = op(a, b)));
            table
        };
        let add_t = fill(&add);
        let mul_t = fill(&mul);
        if let Some(&bad) = add_t.iter().chain(&mul_t).find(|&&v| v >= order) {
            return Err(Error::InvalidRing(format!("operation produced out-of-range index {bad}")));
        }
        let zero = find_identity(&add_t, order)
            .ok_or_else(|| Error::InvalidRing("addition has no neutral element".into()))?;
        let one = find_identity(&mul_t, order)
            .ok_or_else(|| Error::InvalidRing("multiplication has no identity".into()))?;
        let mut perm = Vec::with_capacity(order);
        perm.push(zero);
        if one != zero {
            perm.push(one);
        }
        perm.extend((0..order).filter(|&x| x != zero && x != one));
        let mut to_new = vec![0; order];
        for (new, &old) in perm.iter().enumerate() {
            to_new[old] = new;
        }
        let relabel = |t: &[usize]| -> Vec<u16> {
            let mut out = vec![0u16; order * order];
            out.par_chunks_mut(order).enumerate().for_each(|(i, row)| {
                let oi = perm[i];
                for (j, c) in row.iter_mut().enumerate() {
                    *c = to_new[t[oi * order + perm[j]]] as u16;
                }
            });
            out
        };
        let add_c = relabel(&add_t);
        let mul_c = relabel(&mul_t);
        let labels = if labels.len() == order {
            perm.iter().map(|&old| labels[old].clone()).collect()
        } else {
            (0..order).map(|i| i.to_string()).collect()
        };
        let ring = Self::validated(order, add_c, mul_c, labels)?;
        Ok((ring, to_new))
    }

    /// Accepts explicit tables already in canonical encoding (zero at 0, one at 1).
    pub fn from_tables(add: Vec<Vec<usize>>, mul: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let order = add.len();
        if order == 0 {
            return Err(Error::InvalidRing("empty carrier".into()));
        }
        check_table_order(order)?;
        for (name, t) in [("add", &add), ("mul", &mul)] {
            if t.len() != order || t.iter().any(|r| r.len() != order) {
                return Err(Error::InvalidRing(format!("{name} table must be {order}x{order}")));
            }
            if t.iter().flatten().any(|&v| v >= order) {
                return Err(Error::InvalidRing(format!("{name} table has out-of-range entry")));
            }
        }
        let flat = |t: Vec<Vec<usize>>| t.into_iter().flatten().map(|v| v as u16).collect::<Vec<_>>();
        let labels = match labels {
            Some(l) if l.len() == order => l,
            Some(_) => return Err(Error::InvalidRing("label count differs from order".into())),
            None => (0..order).map(|i| i.to_string()).collect(),
        };
        Self::validated(order, flat(add), flat(mul), labels)
    }

    /// Integers modulo `n`.
    pub fn zmod(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidRing("modulus must be positive".into()));
        }
        let labels = (0..n).map(|i| i.to_string()).collect();
        Ok(Self::from_fn(n, |a, b| (a + b) % n, |a, b| (a * b) % n, labels)?.0)
    }

    fn validated(order: usize, add: Vec<u16>, mul: Vec<u16>, labels: Vec<String>) -> Result<Self> {
        let mut ring = Self {
            order,
            add,
            mul,
            neg: Vec::new(),
            add_gens: Vec::new(),
            labels,
            classes: OnceLock::new(),
        };
        ring.validate()?;
        Ok(ring)
    }

    /// Checks every ring axiom. Associativity and distributivity are checked
    /// against a generating set of the additive group, which is equivalent to
    /// the full triple loop once the additive structure is known to be valid.
    fn validate(&mut self) -> Result<()> {
        let n = self.order;
        let bad = |msg: String| Err(Error::InvalidRing(msg));
        let one = self.one();
        for x in 0..n {
            if self.add(0, x) != x || self.add(x, 0) != x {
                return bad(format!("0 is not additively neutral for {x}"));
            }
            if self.mul(one, x) != x || self.mul(x, one) != x {
                return bad(format!("{one} is not a multiplicative identity for {x}"));
            }
        }
        let mut neg = vec![0u16; n];
        for x in 0..n {
            match (0..n).find(|&y| self.add(x, y) == 0) {
                Some(y) => neg[x] = y as u16,
                None => return bad(format!("{x} has no additive inverse")),
            }
        }
        self.neg = neg;
        for a in 0..n {
            for b in 0..a {
                if self.add(a, b) != self.add(b, a) {
                    return bad(format!("addition not commutative at ({a}, {b})"));
                }
            }
        }
        // Right translations by a generating set must reach every element.
        let gens = additive_generators(n, |a, b| self.add(a, b));
        let violation = (0..n).into_par_iter().find_map_any(|x| {
            for y in 0..n {
                for &s in &gens {
                    if self.add(self.add(x, s), y) != self.add(x, self.add(s, y)) {
                        return Some(format!("addition not associative at ({x}, {s}, {y})"));
                    }
                    if self.mul(x, self.add(y, s)) != self.add(self.mul(x, y), self.mul(x, s)) {
                        return Some(format!("left distributivity fails at ({x}, {y}, {s})"));
                    }
                    if self.mul(self.add(y, s), x) != self.add(self.mul(y, x), self.mul(s, x)) {
                        return Some(format!("right distributivity fails at ({y}, {s}, {x})"));
                    }
                }
            }
            None
        });
        if let Some(msg) = violation {
            return bad(msg);
        }
        let violation = (0..n).into_par_iter().find_map_any(|a| {
            for b in 0..n {
                let ab = self.mul(a, b);
                for &c in &gens {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Some(format!("multiplication not associative at ({a}, {b}, {c})"));
                    }
                }
            }
            None
        });
        if let Some(msg) = violation {
            return bad(msg);
        }
        self.add_gens = gens;
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn zero(&self) -> usize {
        0
    }

    #[inline]
    pub fn one(&self) -> usize {
        if self.order > 1 {
            1
        } else {
            0
        }
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `k·1` for a non-negative integer `k`.
    pub fn integer(&self, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.add(acc, self.one()))
    }

    pub fn pow(&self, x: usize, k: usize) -> usize {
        (0..k).fold(self.one(), |acc, _| self.mul(acc, x))
    }

    /// A set of elements whose right-translation orbit covers the additive group.
    pub fn additive_generators(&self) -> &[usize] {
        &self.add_gens
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn add_table(&self) -> Vec<Vec<usize>> {
        self.add.chunks(self.order.max(1)).map(|r| r.iter().map(|&v| v as usize).collect()).collect()
    }

    pub fn mul_table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order.max(1)).map(|r| r.iter().map(|&v| v as usize).collect()).collect()
    }

    pub fn is_commutative(&self) -> bool {
        let g = &self.add_gens;
        g.iter().all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    fn classes(&self) -> &Classes {
        self.classes.get_or_init(|| {
            let n = self.order;
            let one = self.one();
            let inverse: Vec<Option<u16>> = (0..n)
                .into_par_iter()
                .map(|x| {
                    (0..n)
                        .find(|&y| self.mul(x, y) == one && self.mul(y, x) == one)
                        .map(|y| y as u16)
                })
                .collect();
            // The powers x, x², … are pairwise distinct until they hit 0, so a
            // nilpotent x has index at most |R|; squaring past |R| decides it.
            let mut steps = 0;
            while (1usize << steps) < n {
                steps += 1;
            }
            let nilpotent = (0..n)
                .map(|x| {
                    let mut y = x;
                    for _ in 0..steps {
                        y = self.mul(y, y);
                    }
                    y == 0
                })
                .collect();
            let idempotent = (0..n).map(|x| self.mul(x, x) == x).collect();
            let central = (0..n)
                .map(|x| self.add_gens.iter().all(|&s| self.mul(x, s) == self.mul(s, x)))
                .collect();
            Classes { inverse, nilpotent, idempotent, central }
        })
    }

    pub fn inverse(&self, x: usize) -> Option<usize> {
        self.classes().inverse[x].map(usize::from)
    }

    #[inline]
    pub fn is_unit(&self, x: usize) -> bool {
        self.classes().inverse[x].is_some()
    }

    #[inline]
    pub fn is_nilpotent(&self, x: usize) -> bool {
        self.classes().nilpotent[x]
    }

    #[inline]
    pub fn is_idempotent(&self, x: usize) -> bool {
        self.classes().idempotent[x]
    }

    #[inline]
    pub fn is_central(&self, x: usize) -> bool {
        self.classes().central[x]
    }

    /// `U(R)`.
    pub fn units(&self) -> ElementSet {
        ElementSet::from_mask(self.classes().inverse.iter().map(Option::is_some).collect())
    }

    /// `Idem(R)`.
    pub fn idempotents(&self) -> ElementSet {
        ElementSet::from_mask(self.classes().idempotent.clone())
    }

    /// `N(R)`.
    pub fn nilpotents(&self) -> ElementSet {
        ElementSet::from_mask(self.classes().nilpotent.clone())
    }

    /// `Z(R)`.
    pub fn center(&self) -> ElementSet {
        ElementSet::from_mask(self.classes().central.clone())
    }

    /// The subring on `members` with unity `unity`, canonically relabelled.
    /// Returns the ring and, for each new index, the ambient element.
    pub fn subring(&self, members: &[usize], unity: usize) -> Result<(Self, Vec<usize>)> {
        let mut pos = vec![usize::MAX; self.order];
        for (i, &m) in members.iter().enumerate() {
            pos[m] = i;
        }
        let lookup = |x: usize| -> usize { pos[x] };
        if pos[unity] == usize::MAX || pos[0] == usize::MAX {
            return Err(Error::InvalidRing("subring must contain zero and its unity".into()));
        }
        for &a in members {
            for &b in members {
                if pos[self.add(a, b)] == usize::MAX || pos[self.mul(a, b)] == usize::MAX {
                    return Err(Error::InvalidRing(format!("subset not closed at ({a}, {b})")));
                }
            }
        }
        let labels = members.iter().map(|&m| self.labels[m].clone()).collect();
        let (ring, to_new) = Self::from_fn(
            members.len(),
            |a, b| lookup(self.add(members[a], members[b])),
            |a, b| lookup(self.mul(members[a], members[b])),
            labels,
        )?;
        let mut new_to_old = vec![0; members.len()];
        for (natural, &new) in to_new.iter().enumerate() {
            new_to_old[new] = members[natural];
        }
        Ok((ring, new_to_old))
    }

    /// Searches for a ring isomorphism `self → other` by backtracking over
    /// images of the additive generators.
    pub fn find_isomorphism(&self, other: &FiniteRing) -> Option<Vec<usize>> {
        if self.order != other.order {
            return None;
        }
        let n = self.order;
        let gens = self.add_gens.clone();
        // Each element is reached from the generators by right translations;
        // record a spanning tree so a choice of generator images extends additively.
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut order_of_visit = Vec::with_capacity(n);
        seen[0] = true;
        order_of_visit.push(0);
        let mut i = 0;
        while i < order_of_visit.len() {
            let x = order_of_visit[i];
            for (gi, &s) in gens.iter().enumerate() {
                let y = self.add(x, s);
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some((x, gi));
                    order_of_visit.push(y);
                }
            }
            i += 1;
        }
        let add_order = |r: &FiniteRing, x: usize| {
            let mut k = 1;
            let mut y = x;
            while y != 0 {
                y = r.add(y, x);
                k += 1;
            }
            k
        };
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&s| {
                let o = add_order(self, s);
                (0..n).filter(|&t| add_order(other, t) == o).collect()
            })
            .collect();
        let mut choice = vec![0usize; gens.len()];
        self.iso_search(other, &gens, &candidates, &parent, &order_of_visit, &mut choice, 0)
    }

    #[allow(clippy::too_many_arguments)]
    fn iso_search(
        &self,
        other: &FiniteRing,
        gens: &[usize],
        candidates: &[Vec<usize>],
        parent: &[Option<(usize, usize)>],
        visit: &[usize],
        choice: &mut Vec<usize>,
        depth: usize,
    ) -> Option<Vec<usize>> {
        if depth == gens.len() {
            let n = self.order;
            let mut map = vec![0usize; n];
            for &x in &visit[1..] {
                let (p, gi) = parent[x].expect("visited");
                map[x] = other.add(map[p], choice[gi]);
            }
            let mut hit = vec![false; n];
            for &y in &map {
                if hit[y] {
                    return None;
                }
                hit[y] = true;
            }
            let additive = (0..n).all(|a| gens.iter().all(|&s| map[self.add(a, s)] == other.add(map[a], map[s])));
            let multiplicative = gens
                .iter()
                .all(|&a| gens.iter().all(|&b| map[self.mul(a, b)] == other.mul(map[a], map[b])));
            let unital = map[self.one()] == other.one();
            return (additive && multiplicative && unital).then_some(map);
        }
        for &c in &candidates[depth] {
            choice[depth] = c;
            if let Some(m) = self.iso_search(other, gens, candidates, parent, visit, choice, depth + 1) {
                return Some(m);
            }
        }
        None
    }
}

fn check_table_order(order: usize) -> Result<()> {
    if order == 0 || order > MAX_TABLE_ORDER {
        return Err(Error::CapExceeded { what: "table encoding", order, cap: MAX_TABLE_ORDER });
    }
    Ok(())
}

fn find_identity(table: &[usize], n: usize) -> Option<usize> {
    (0..n).find(|&e| (0..n).all(|x| table[e * n + x] == x && table[x * n + e] == x))
}

/// Greedy generating set: every element is reachable from 0 by right
/// translations by generators. Requires 0 to be neutral.
fn additive_generators(n: usize, add: impl Fn(usize, usize) -> usize) -> Vec<usize> {
    let mut gens: Vec<usize> = Vec::new();
    let mut reached = vec![false; n];
    reached[0] = true;
    let mut count = 1;
    while count < n {
        let next = (0..n).find(|&x| !reached[x]).expect("count < n");
        gens.push(next);
        let mut queue: Vec<usize> = (0..n).filter(|&x| reached[x]).collect();
        while let Some(x) = queue.pop() {
            for &s in &gens {
                let y = add(x, s);
                if !reached[y] {
                    reached[y] = true;
                    count += 1;
                    queue.push(y);
                }
            }
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize], n: usize) -> ElementSet {
        ElementSet::from_members(n, v.iter().copied())
    }

    /// M_2(Z_2) with entries packed as bits a + 2b + 4c + 8d for [[a,b],[c,d]].
    fn m2z2() -> FiniteRing {
        let unpack = |x: usize| [x & 1, (x >> 1) & 1, (x >> 2) & 1, (x >> 3) & 1];
        let pack = |m: [usize; 4]| m[0] | m[1] << 1 | m[2] << 2 | m[3] << 3;
        FiniteRing::from_fn(
            16,
            |x, y| x ^ y,
            move |x, y| {
                let (a, b) = (unpack(x), unpack(y));
                pack([
                    (a[0] * b[0] + a[1] * b[2]) % 2,
                    (a[0] * b[1] + a[1] * b[3]) % 2,
                    (a[2] * b[0] + a[3] * b[2]) % 2,
                    (a[2] * b[1] + a[3] * b[3]) % 2,
                ])
            },
            vec![],
        )
        .unwrap()
        .0
    }

    fn brute_units(r: &FiniteRing) -> Vec<usize> {
        r.elements()
            .filter(|&x| r.elements().any(|y| r.mul(x, y) == 1 && r.mul(y, x) == 1))
            .collect()
    }

    #[test]
    fn zmod_classifiers() {
        let z2 = FiniteRing::zmod(2).unwrap();
        assert_eq!(z2.units(), set(&[1], 2));
        let z4 = FiniteRing::zmod(4).unwrap();
        assert_eq!(z4.units(), set(&[1, 3], 4));
        assert_eq!(z4.nilpotents(), set(&[0, 2], 4));
        let z3 = FiniteRing::zmod(3).unwrap();
        assert_eq!(z3.idempotents(), set(&[0, 1], 3));
        assert_eq!(z3.nilpotents(), set(&[0], 3));
        let z6 = FiniteRing::zmod(6).unwrap();
        assert_eq!(z6.idempotents(), set(&[0, 1, 3, 4], 6));
        assert_eq!(z6.center().len(), 6);
    }

    #[test]
    fn matrix_ring_classifiers() {
        let m = m2z2();
        assert_eq!(m.units().len(), 6);
        assert_eq!(m.units().members(), brute_units(&m).as_slice());
        assert_eq!(m.idempotents().len(), 8);
        assert_eq!(m.nilpotents().len(), 4);
        assert_eq!(m.center().len(), 2);
        assert!(!m.is_commutative());
    }

    #[test]
    fn canonical_encoding() {
        let m = m2z2();
        // identity matrix relabelled to index 1
        assert_eq!(m.mul(1, 1), 1);
        assert!(m.elements().all(|x| m.mul(1, x) == x));
    }

    #[test]
    fn rejects_flipped_multiplication_cell() {
        let z4 = FiniteRing::zmod(4).unwrap();
        let add = z4.add_table();
        for a in 0..4 {
            for b in 0..4 {
                for v in 0..4 {
                    let mut mul = z4.mul_table();
                    if mul[a][b] == v {
                        continue;
                    }
                    mul[a][b] = v;
                    assert!(
                        FiniteRing::from_tables(add.clone(), mul, None).is_err(),
                        "mutation ({a},{b})->{v} accepted"
                    );
                }
            }
        }
    }

    #[test]
    fn rejects_flipped_addition_cell() {
        let z4 = FiniteRing::zmod(4).unwrap();
        let mut add = z4.add_table();
        add[2][3] = 0;
        assert!(FiniteRing::from_tables(add, z4.mul_table(), None).is_err());
    }

    #[test]
    fn isomorphism_search() {
        let z6 = FiniteRing::zmod(6).unwrap();
        let z2 = FiniteRing::zmod(2).unwrap();
        let z3 = FiniteRing::zmod(3).unwrap();
        let prod = FiniteRing::from_fn(
            6,
            |a, b| ((a / 3 + b / 3) % 2) * 3 + (a % 3 + b % 3) % 3,
            |a, b| ((a / 3) * (b / 3) % 2) * 3 + (a % 3) * (b % 3) % 3,
            vec![],
        )
        .unwrap()
        .0;
        assert!(z6.find_isomorphism(&prod).is_some());
        assert!(z6.find_isomorphism(&z2).is_none());
        assert!(FiniteRing::zmod(4).unwrap().find_isomorphism(&m2z2()).is_none());
        assert!(z3.find_isomorphism(&z3).is_some());
    }
}
