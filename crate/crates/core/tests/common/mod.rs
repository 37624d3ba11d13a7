//! Brute-force oracles that read only the raw tables and component lists.
//! Nothing here calls a classifier or decider from the library.

#![allow(dead_code)]

use gunc::GradedRing;

/// A graded ring as plain tables.
pub struct Raw {
    pub n: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    /// Members of each component, indexed by group element.
    pub comps: Vec<Vec<usize>>,
    /// Index of the identity element of the grading group.
    pub e: usize,
    pub zero: usize,
    pub one: usize,
    neg: Vec<usize>,
    unit: Vec<bool>,
    nil: Vec<bool>,
    hom: Vec<bool>,
}

impl Raw {
    pub fn new(r: &GradedRing) -> Self {
        let ring = r.ring();
        let add = ring.add_table();
        let mul = ring.mul_table();
        let n = add.len();
        let zero = (0..n).find(|&z| (0..n).all(|x| add[z][x] == x)).expect("additive identity");
        let one = (0..n).find(|&o| (0..n).all(|x| mul[o][x] == x && mul[x][o] == x)).expect("unity");
        let group = r.group();
        let e = (0..group.order()).find(|&g| (0..group.order()).all(|h| group.mul(g, h) == h)).unwrap();
        Self::from_parts(add, mul, r.component_lists(), e, zero, one)
    }

    fn from_parts(add: Vec<Vec<usize>>, mul: Vec<Vec<usize>>, comps: Vec<Vec<usize>>, e: usize, zero: usize, one: usize) -> Self {
        let n = add.len();
        let neg = (0..n).map(|x| (0..n).find(|&y| add[x][y] == zero).unwrap()).collect();
        let unit = (0..n).map(|x| (0..n).any(|y| mul[x][y] == one && mul[y][x] == one)).collect();
        let nil = (0..n)
            .map(|x| {
                let mut p = x;
                for _ in 0..n {
                    if p == zero {
                        return true;
                    }
                    p = mul[p][x];
                }
                p == zero
            })
            .collect();
        let mut hom = vec![false; n];
        for &x in comps.iter().flatten() {
            hom[x] = true;
        }
        Self { n, add, mul, comps, e, zero, one, neg, unit, nil, hom }
    }

    /// Ungraded view: a single component holding everything.
    pub fn ungraded(&self) -> Self {
        Self::from_parts(self.add.clone(), self.mul.clone(), vec![(0..self.n).collect()], 0, self.zero, self.one)
    }

    pub fn neg(&self, x: usize) -> usize {
        self.neg[x]
    }

    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add[x][self.neg(y)]
    }

    /// Has a two-sided inverse, found by scanning.
    pub fn is_unit(&self, x: usize) -> bool {
        self.unit[x]
    }

    /// Some power among `x, x², …, x^n` is zero.
    pub fn is_nilpotent(&self, x: usize) -> bool {
        self.nil[x]
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.mul[x][x] == x
    }

    pub fn in_comp(&self, g: usize, x: usize) -> bool {
        self.comps[g].contains(&x)
    }

    pub fn is_homogeneous(&self, x: usize) -> bool {
        self.hom[x]
    }

    /// Degree of a nonzero homogeneous element.
    pub fn degree(&self, x: usize) -> Option<usize> {
        if x == self.zero {
            return None;
        }
        self.comps.iter().position(|c| c.contains(&x))
    }

    pub fn homogeneous(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.is_homogeneous(x)).collect()
    }

    pub fn idempotents_e(&self) -> Vec<usize> {
        self.comps[self.e].iter().copied().filter(|&x| self.is_idempotent(x)).collect()
    }

    /// `gur(R)` straight from the definition: `f·u` with `f ∈ Idem(R_e)` and
    /// `u` a homogeneous unit.
    pub fn gur(&self) -> Vec<bool> {
        let mut out = vec![false; self.n];
        let units: Vec<usize> = self.homogeneous().into_iter().filter(|&u| self.is_unit(u)).collect();
        for f in self.idempotents_e() {
            for &u in &units {
                out[self.mul[f][u]] = true;
            }
        }
        out
    }

    /// `x = r + n`, `r ∈ gur(R)`, `n` homogeneous nilpotent, with no degree
    /// constraint beyond what homogeneity forces.
    pub fn is_unc_element(&self, x: usize, gur: &[bool]) -> bool {
        (0..self.n).any(|r| gur[r] && {
            let m = self.sub(x, r);
            self.is_homogeneous(m) && self.is_nilpotent(m)
        })
    }

    /// The least homogeneous element that is not graded U-nil clean.
    pub fn unc_failure(&self) -> Option<usize> {
        let gur = self.gur();
        self.homogeneous().into_iter().find(|&x| !self.is_unc_element(x, &gur))
    }

    pub fn is_graded_unc(&self) -> bool {
        self.unc_failure().is_none()
    }

    /// Nilpotent, or a homogeneous unit plus a homogeneous nilpotent, both
    /// of the element's degree.
    pub fn is_nil_good_element(&self, x: usize) -> bool {
        if self.is_nilpotent(x) {
            return true;
        }
        let g = self.degree(x).unwrap_or(self.e);
        self.comps[g].iter().any(|&u| {
            let m = self.sub(x, u);
            self.is_unit(u) && self.is_nilpotent(m) && (m == self.zero || self.in_comp(g, m))
        })
    }

    /// `J(R)` by quasi-regularity: `x ∈ J` iff `1 − r·x` is a unit for every `r`.
    pub fn jacobson(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&x| (0..self.n).all(|r| self.is_unit(self.sub(self.one, self.mul[r][x]))))
            .collect()
    }
}

/// Brute-force ring isomorphism search. Additive generators are taken
/// greedily starting from 1 (which must map to 1); images are chosen one
/// generator at a time, the map is extended additively, and every product
/// already inside the partial domain is checked before going deeper.
pub fn isomorphic(a: &Raw, b: &Raw) -> bool {
    if a.n != b.n {
        return false;
    }
    let add_order = |r: &Raw, x: usize| {
        let (mut k, mut s) = (1, x);
        while s != r.zero {
            s = r.add[s][x];
            k += 1;
        }
        k
    };
    let mut map = vec![usize::MAX; a.n];
    map[a.zero] = b.zero;
    let mut order: Vec<usize> = vec![a.one];
    order.extend((0..a.n).filter(|&x| x != a.one));
    search(a, b, &order, &mut map, &add_order)
}

fn search(a: &Raw, b: &Raw, order: &[usize], map: &mut Vec<usize>, add_order: &dyn Fn(&Raw, usize) -> usize) -> bool {
    let Some(&g) = order.iter().find(|&&x| map[x] == usize::MAX) else {
        return true;
    };
    let used: Vec<bool> = {
        let mut u = vec![false; b.n];
        for &v in map.iter().filter(|&&v| v != usize::MAX) {
            u[v] = true;
        }
        u
    };
    let candidates: Vec<usize> = if g == a.one {
        vec![b.one]
    } else {
        (0..b.n).filter(|&y| !used[y] && add_order(b, y) == add_order(a, g)).collect()
    };
    for c in candidates {
        let saved = map.clone();
        if extend(a, b, map, g, c) && search(a, b, order, map, add_order) {
            return true;
        }
        *map = saved;
    }
    false
}

/// Adds `g ↦ c` and closes the domain under addition, checking that the map
/// stays well defined, injective and multiplicative on the domain.
fn extend(a: &Raw, b: &Raw, map: &mut [usize], g: usize, c: usize) -> bool {
    let mut domain: Vec<usize> = (0..a.n).filter(|&x| map[x] != usize::MAX).collect();
    let mut queue = domain.clone();
    let mut gens = domain.clone();
    gens.push(g);
    if map[g] != usize::MAX {
        return map[g] == c;
    }
    map[g] = c;
    queue.push(g);
    domain.push(g);
    while let Some(x) = queue.pop() {
        for &s in &gens {
            let y = a.add[x][s];
            let v = b.add[map[x]][map[s]];
            if map[y] == usize::MAX {
                map[y] = v;
                queue.push(y);
                domain.push(y);
            } else if map[y] != v {
                return false;
            }
        }
    }
    let mut seen = vec![false; b.n];
    for &x in &domain {
        if seen[map[x]] {
            return false;
        }
        seen[map[x]] = true;
    }
    domain.iter().all(|&x| {
        domain.iter().all(|&y| {
            let p = a.mul[x][y];
            map[p] == usize::MAX || map[p] == b.mul[map[x]][map[y]]
        })
    })
}
