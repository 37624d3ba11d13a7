//! Finite groups given by their Cayley tables.
//!
//! Grading groups are small (a handful to a few dozen elements), so every
//! axiom is checked by brute force when a table is accepted.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<usize>,
    identity: usize,
    inv: Vec<usize>,
    names: Vec<String>,
}

impl FiniteGroup {
    /// Validates a multiplication table. Inverses are derived from it.
    pub fn from_table(names: Vec<String>, mul: Vec<Vec<usize>>) -> Result<Self> {
        let order = names.len();
        if order == 0 {
            return Err(Error::InvalidGroup("empty group".into()));
        }
        if mul.len() != order || mul.iter().any(|row| row.len() != order) {
            return Err(Error::InvalidGroup(format!("table must be {order}x{order}")));
        }
        let unique: BTreeSet<&String> = names.iter().collect();
        if unique.len() != order {
            return Err(Error::InvalidGroup("duplicate element names".into()));
        }
        let flat: Vec<usize> = mul.into_iter().flatten().collect();
        if let Some(&bad) = flat.iter().find(|&&v| v >= order) {
            return Err(Error::InvalidGroup(format!("entry {bad} out of range")));
        }
        let at = |a: usize, b: usize| flat[a * order + b];
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inv = vec![0; order];
        for x in 0..order {
            inv[x] = (0..order)
                .find(|&y| at(x, y) == identity && at(y, x) == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {} has no inverse", names[x])))?;
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(Error::InvalidGroup(format!(
                            "not associative at ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        Ok(Self { order, mul: flat, identity, inv, names })
    }

    /// Cyclic group of order `n` with elements named `e`, `g`, `g2`, ….
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group needs positive order");
        let names = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g{k}"),
            })
            .collect();
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(names, mul).expect("cyclic table is a group")
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// Direct product; element `(a, b)` has index `a * |right| + b` and name `a.b`.
    pub fn product(left: &Self, right: &Self) -> Self {
        let m = right.order;
        let n = left.order * m;
        let names = (0..n)
            .map(|i| format!("{}.{}", left.names[i / m], right.names[i % m]))
            .collect();
        let mul = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| left.mul(x / m, y / m) * m + right.mul(x % m, y % m))
                    .collect()
            })
            .collect();
        Self::from_table(names, mul).expect("product of groups is a group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// The prime `p` when the group is a nontrivial `p`-group.
    pub fn p_group_prime(&self) -> Option<usize> {
        let n = self.order;
        if n < 2 {
            return None;
        }
        let p = (2..=n).find(|d| n % d == 0)?;
        let mut m = n;
        while m % p == 0 {
            m /= p;
        }
        (m == 1).then_some(p)
    }

    pub fn is_subgroup(&self, members: &[usize]) -> bool {
        let mut mask = vec![false; self.order];
        for &m in members {
            if m >= self.order {
                return false;
            }
            mask[m] = true;
        }
        mask[self.identity]
            && members.iter().all(|&a| {
                mask[self.inv(a)] && members.iter().all(|&b| mask[self.mul(a, b)])
            })
    }

    pub fn is_normal(&self, members: &[usize]) -> bool {
        let mut mask = vec![false; self.order];
        for &m in members {
            mask[m] = true;
        }
        self.is_subgroup(members)
            && (0..self.order).all(|g| {
                members
                    .iter()
                    .all(|&h| mask[self.mul(self.mul(g, h), self.inv(g))])
            })
    }

    fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut mask = vec![false; self.order];
        mask[self.identity] = true;
        let mut members = vec![self.identity];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &s in gens {
                let y = self.mul(x, s);
                if !mask[y] {
                    mask[y] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        members
    }

    /// All subgroups, each as an ascending index list, in a deterministic order.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let mut seen = BTreeSet::new();
        let mut queue = vec![vec![self.identity]];
        seen.insert(queue[0].clone());
        let mut i = 0;
        while i < queue.len() {
            let current = queue[i].clone();
            for x in 0..self.order {
                if current.binary_search(&x).is_ok() {
                    continue;
                }
                let mut gens = current.clone();
                gens.push(x);
                let bigger = self.closure(&gens);
                if seen.insert(bigger.clone()) {
                    queue.push(bigger);
                }
            }
            i += 1;
        }
        let mut all: Vec<_> = seen.into_iter().collect();
        all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        all
    }

    pub fn normal_subgroups(&self) -> Vec<Vec<usize>> {
        self.subgroups().into_iter().filter(|h| self.is_normal(h)).collect()
    }

    /// Quotient `G/H`. Cosets are ordered by their least member; each coset is
    /// named after that representative. Returns the quotient and the map
    /// sending every element of `G` to its coset index.
    pub fn quotient(&self, normal: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        if !self.is_subgroup(normal) {
            return Err(Error::NotSubgroup(format!("{normal:?}")));
        }
        if !self.is_normal(normal) {
            return Err(Error::NotNormal);
        }
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(g);
            for &h in normal {
                coset_of[self.mul(g, h)] = idx;
            }
        }
        let names = reps.iter().map(|&r| self.names[r].clone()).collect();
        let mul = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| coset_of[self.mul(a, b)]).collect())
            .collect();
        Ok((FiniteGroup::from_table(names, mul)?, coset_of))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_names_and_inverses() {
        let c3 = FiniteGroup::cyclic(3);
        assert_eq!(c3.names(), ["e", "g", "g2"]);
        assert_eq!(c3.inv(1), 2);
        assert_eq!(c3.mul(2, 2), 1);
        assert!(c3.is_abelian());
        assert_eq!(c3.p_group_prime(), Some(3));
    }

    #[test]
    fn klein_four_subgroups() {
        let c2 = FiniteGroup::cyclic(2);
        let v = FiniteGroup::product(&c2, &c2);
        assert_eq!(v.name(3), "g.g");
        // trivial, three of order 2, whole group
        assert_eq!(v.subgroups().len(), 5);
        assert_eq!(v.p_group_prime(), Some(2));
        assert_eq!(FiniteGroup::cyclic(6).p_group_prime(), None);
    }

    #[test]
    fn rejects_non_associative_table() {
        // a Latin square with identity 0 that is not a group
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let names = (0..5).map(|i| i.to_string()).collect();
        assert!(FiniteGroup::from_table(names, t).is_err());
    }

    #[test]
    fn quotient_of_c4_by_c2() {
        let c4 = FiniteGroup::cyclic(4);
        let (q, coset_of) = c4.quotient(&[0, 2]).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(coset_of, vec![0, 1, 0, 1]);
        assert_eq!(q.names(), ["e", "g"]);
    }

    #[test]
    fn s3_has_non_normal_subgroups() {
        // S3 as permutations of {0,1,2}
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [1, 2, 0],
            [2, 0, 1],
            [1, 0, 2],
            [0, 2, 1],
            [2, 1, 0],
        ];
        let compose = |a: &[usize; 3], b: &[usize; 3]| [a[b[0]], a[b[1]], a[b[2]]];
        let mul = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| perms.iter().position(|p| *p == compose(a, b)).unwrap())
                    .collect()
            })
            .collect();
        let names = (0..6).map(|i| format!("s{i}")).collect();
        let s3 = FiniteGroup::from_table(names, mul).unwrap();
        assert!(!s3.is_abelian());
        assert!(s3.is_normal(&[0, 1, 2]));
        assert!(!s3.is_normal(&[0, 3]));
        assert!(matches!(s3.quotient(&[0, 3]), Err(Error::NotNormal)));
        assert_eq!(s3.normal_subgroups().len(), 3);
    }
}
