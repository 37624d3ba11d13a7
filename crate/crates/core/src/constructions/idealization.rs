use std::sync::Arc;

use super::{check_order, Radix};
use crate::error::{Error, Result};
use crate::grading::{is_homogeneous_ideal, validate_grading, GradedMap, GradedRing, HomogeneousIdeal};
use crate::ideal::Side;
use crate::ring::{ElementSet, FiniteRing};
use crate::Caps;

/// A graded `(A, A)`-bimodule on a finite abelian group; `0` is the carrier's zero.
#[derive(Clone, Debug)]
pub struct GradedBimodule {
    base: Arc<GradedRing>,
    order: usize,
    add: Vec<usize>,
    left: Vec<usize>,
    right: Vec<usize>,
    components: Vec<ElementSet>,
    labels: Vec<String>,
}

impl GradedBimodule {
    /// Validates the bimodule axioms and grading compatibility exhaustively.
    ///
    /// `left[a][m]` is `a·m` and `right[m][a]` is `m·a`.
    pub fn new(
        base: Arc<GradedRing>,
        add: Vec<Vec<usize>>,
        left: Vec<Vec<usize>>,
        right: Vec<Vec<usize>>,
        components: Vec<Vec<usize>>,
        labels: Vec<String>,
    ) -> Result<Self> {
        let n = add.len();
        let q = base.order();
        let bad = |msg: String| Err(Error::InvalidBimodule(msg));
        if n == 0 || add.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return bad("addition table is not square over the carrier".into());
        }
        if left.len() != q || left.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return bad("left action table has the wrong shape".into());
        }
        if right.len() != n || right.iter().any(|row| row.len() != q || row.iter().any(|&x| x >= n)) {
            return bad("right action table has the wrong shape".into());
        }
        if components.len() != base.group().order() {
            return bad("one component per group element is required".into());
        }
        let flat = |t: Vec<Vec<usize>>| t.into_iter().flatten().collect::<Vec<_>>();
        let labels = if labels.len() == n { labels } else { (0..n).map(|m| m.to_string()).collect() };
        let module = Self {
            components: components.iter().map(|c| ElementSet::from_members(n, c.iter().copied())).collect(),
            base,
            order: n,
            add: flat(add),
            left: flat(left),
            right: flat(right),
            labels,
        };
        module.validate().map(|()| module)
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidBimodule(msg));
        let a = self.base.ring();
        let n = self.order;
        for x in 0..n {
            if self.add(0, x) != x || self.add(x, 0) != x {
                return bad(format!("0 is not neutral for {x}"));
            }
            if !(0..n).any(|y| self.add(x, y) == 0) {
                return bad(format!("{x} has no additive inverse"));
            }
            for y in 0..n {
                if self.add(x, y) != self.add(y, x) {
                    return bad(format!("addition does not commute at ({x}, {y})"));
                }
                for z in 0..n {
                    if self.add(self.add(x, y), z) != self.add(x, self.add(y, z)) {
                        return bad(format!("addition is not associative at ({x}, {y}, {z})"));
                    }
                }
            }
        }
        for m in 0..n {
            if self.act_left(a.one(), m) != m || self.act_right(m, a.one()) != m {
                return bad(format!("1 does not act trivially on {m}"));
            }
            for r in a.elements() {
                for s in a.elements() {
                    if self.act_left(a.add(r, s), m) != self.add(self.act_left(r, m), self.act_left(s, m))
                        || self.act_right(m, a.add(r, s)) != self.add(self.act_right(m, r), self.act_right(m, s))
                    {
                        return bad(format!("action is not additive in the ring argument at ({r}, {s}, {m})"));
                    }
                    if self.act_left(a.mul(r, s), m) != self.act_left(r, self.act_left(s, m))
                        || self.act_right(m, a.mul(r, s)) != self.act_right(self.act_right(m, r), s)
                        || self.act_right(self.act_left(r, m), s) != self.act_left(r, self.act_right(m, s))
                    {
                        return bad(format!("action is not associative at ({r}, {s}, {m})"));
                    }
                }
                for p in 0..n {
                    if self.act_left(r, self.add(m, p)) != self.add(self.act_left(r, m), self.act_left(r, p))
                        || self.act_right(self.add(m, p), r) != self.add(self.act_right(m, r), self.act_right(p, r))
                    {
                        return bad(format!("action is not additive in the module argument at ({r}, {m}, {p})"));
                    }
                }
            }
        }
        let group = self.base.group();
        for (g, comp) in self.components.iter().enumerate() {
            if !comp.contains(0) || comp.iter().any(|x| comp.iter().any(|y| !comp.contains(self.add(x, y)))) {
                return bad(format!("component {} is not a subgroup", group.name(g)));
            }
            for h in group.elements() {
                for r in self.base.component(h).iter() {
                    for m in comp.iter() {
                        if !self.components[group.mul(h, g)].contains(self.act_left(r, m))
                            || !self.components[group.mul(g, h)].contains(self.act_right(m, r))
                        {
                            return bad(format!("degrees are not compatible at ({r}, {m})"));
                        }
                    }
                }
            }
        }
        // Internal direct sum: the summation map from ∏ M_g is a bijection.
        let sizes: u128 = self.components.iter().map(|c| c.len() as u128).product();
        if sizes != n as u128 {
            return bad("components do not form a direct sum".into());
        }
        let mut hit = vec![false; n];
        let mut sums = vec![0usize];
        for comp in &self.components {
            sums = sums.iter().flat_map(|&s| comp.iter().map(move |m| (s, m))).map(|(s, m)| self.add(s, m)).collect();
        }
        for s in sums {
            if std::mem::replace(&mut hit[s], true) {
                return bad(format!("{s} has two decompositions"));
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &Arc<GradedRing> {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x * self.order + y]
    }

    pub fn act_left(&self, r: usize, m: usize) -> usize {
        self.left[r * self.order + m]
    }

    pub fn act_right(&self, m: usize, r: usize) -> usize {
        self.right[m * self.base.order() + r]
    }

    pub fn component(&self, g: usize) -> &ElementSet {
        &self.components[g]
    }

    pub fn label(&self, m: usize) -> &str {
        &self.labels[m]
    }
}

/// `A^k` with componentwise actions and `(A^k)_g = (A_g)^k`.
pub fn regular_bimodule(a: &Arc<GradedRing>, copies: usize, caps: &Caps) -> Result<GradedBimodule> {
    let ring = a.ring();
    let q = ring.order();
    let n = check_order("regular bimodule", (q as u128).checked_pow(copies as u32).unwrap_or(u128::MAX), caps)?;
    let radix = Radix::new(vec![q; copies]);
    let digits = radix.table();
    let lift = |f: &dyn Fn(usize, usize) -> usize, x: &[usize], y: &[usize]| -> usize {
        radix.encode(&x.iter().zip(y).map(|(&p, &q)| f(p, q)).collect::<Vec<_>>())
    };
    let add = (0..n).map(|x| (0..n).map(|y| lift(&|p, q| ring.add(p, q), &digits[x], &digits[y])).collect()).collect();
    let left = ring
        .elements()
        .map(|r| (0..n).map(|m| radix.encode(&digits[m].iter().map(|&c| ring.mul(r, c)).collect::<Vec<_>>())).collect())
        .collect();
    let right = (0..n)
        .map(|m| ring.elements().map(|r| radix.encode(&digits[m].iter().map(|&c| ring.mul(c, r)).collect::<Vec<_>>())).collect())
        .collect();
    let components = a
        .components()
        .iter()
        .map(|c| (0..n).filter(|&m| digits[m].iter().all(|&d| c.contains(d))).collect())
        .collect();
    let labels = digits
        .iter()
        .map(|d| {
            if copies == 1 {
                ring.label(d[0]).to_string()
            } else {
                format!("({})", d.iter().map(|&c| ring.label(c)).collect::<Vec<_>>().join(", "))
            }
        })
        .collect();
    GradedBimodule::new(a.clone(), add, left, right, components, labels)
}

/// `A∝E` with the ideal `0∝E` and the pair `(a, m)` behind each element.
#[derive(Clone, Debug)]
pub struct Idealization {
    pub ring: GradedRing,
    pub zero_ideal: HomogeneousIdeal,
    pub coords: Vec<(usize, usize)>,
}

impl Idealization {
    /// The degree-preserving projection `(a, m) ↦ a`.
    pub fn projection(&self, source: Arc<GradedRing>, base: Arc<GradedRing>) -> Result<GradedMap> {
        GradedMap::new(source, base, self.coords.iter().map(|&(a, _)| a).collect())
    }
}

/// `A∝E` with `(a, e)(b, f) = (ab, af + eb)` and `R_g = A_g ⊕ E_g`.
pub fn idealization(e: &GradedBimodule, caps: &Caps) -> Result<Idealization> {
    let a = e.base();
    let base = a.ring();
    let q = base.order();
    let order = check_order("idealization", q as u128 * e.order() as u128, caps)?;
    let pair = |x: usize| (x % q, x / q);
    let add = |x: usize, y: usize| {
        let ((a1, m1), (a2, m2)) = (pair(x), pair(y));
        base.add(a1, a2) + q * e.add(m1, m2)
    };
    let mul = |x: usize, y: usize| {
        let ((a1, m1), (a2, m2)) = (pair(x), pair(y));
        base.mul(a1, a2) + q * e.add(e.act_left(a1, m2), e.act_right(m1, a2))
    };
    let labels = (0..order)
        .map(|x| {
            let (p, m) = pair(x);
            format!("({}; {})", base.label(p), e.label(m))
        })
        .collect();
    let (ring, to_new) = FiniteRing::from_fn(order, add, mul, labels)?;
    let components = a
        .group()
        .elements()
        .map(|g| {
            let mut v: Vec<usize> = (0..order)
                .filter(|&x| {
                    let (p, m) = pair(x);
                    a.component(g).contains(p) && e.component(g).contains(m)
                })
                .map(|x| to_new[x])
                .collect();
            v.sort_unstable();
            v
        })
        .collect();
    let mut coords = vec![(0, 0); order];
    for (natural, &new) in to_new.iter().enumerate() {
        coords[new] = pair(natural);
    }
    let ring = validate_grading(Arc::new(ring), a.group().clone(), components)?;
    let zero_part = ElementSet::from_members(order, (0..order).filter(|&x| coords[x].0 == 0));
    let zero_ideal = is_homogeneous_ideal(&ring, &zero_part, Side::TwoSided)?;
    let r = ring.ring();
    assert!(
        zero_part.iter().all(|x| zero_part.iter().all(|y| r.mul(x, y) == 0)),
        "(0∝E)² must vanish"
    );
    Ok(Idealization { ring, zero_ideal, coords })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{matrix_graded, Sigma};
    use crate::grading::{is_graded_nil, quotient_graded};
    use crate::group::FiniteGroup;

    fn z(n: usize, g: &FiniteGroup) -> Arc<GradedRing> {
        Arc::new(GradedRing::trivial(Arc::new(FiniteRing::zmod(n).unwrap()), g.clone()))
    }

    #[test]
    fn z2_by_itself_is_dual_numbers() {
        let caps = Caps::default();
        let a = z(2, &FiniteGroup::trivial());
        let i = idealization(&regular_bimodule(&a, 1, &caps).unwrap(), &caps).unwrap();
        let r = i.ring.ring();
        assert_eq!(r.order(), 4);
        assert_eq!(r.nilpotents().len(), 2);
        assert_eq!(r.idempotents().len(), 2);
        assert_eq!(i.zero_ideal.len(), 2);
        assert!(is_graded_nil(&i.ring, &i.zero_ideal));
        assert!(r.find_isomorphism(&FiniteRing::zmod(4).unwrap()).is_none());
    }

    #[test]
    fn zero_module_gives_the_base() {
        let caps = Caps::default();
        let a = z(6, &FiniteGroup::cyclic(2));
        let i = idealization(&regular_bimodule(&a, 0, &caps).unwrap(), &caps).unwrap();
        assert_eq!(i.ring, *a);
    }

    #[test]
    fn quotient_by_zero_ideal_is_the_base() {
        let caps = Caps::default();
        let c2 = FiniteGroup::cyclic(2);
        let a = Arc::new(matrix_graded(&z(2, &c2), &Sigma::new(vec![0, 1], 2).unwrap(), &caps).unwrap());
        let i = idealization(&regular_bimodule(&a, 1, &caps).unwrap(), &caps).unwrap();
        assert_eq!(i.ring.order(), 256);
        assert_eq!(i.ring.component(0).len(), 16);
        let source = Arc::new(i.ring.clone());
        let proj = i.projection(source.clone(), a.clone()).unwrap();
        assert!(proj.is_degree_preserving() && proj.is_surjective());
        let q = quotient_graded(&source, &i.zero_ideal).unwrap();
        assert_eq!(q.target().order(), 16);
        assert!(q.target().ring().find_isomorphism(a.ring()).is_some());
    }

    #[test]
    fn regular_bimodule_sizes() {
        let caps = Caps::default();
        let a = z(2, &FiniteGroup::trivial());
        assert_eq!(regular_bimodule(&a, 0, &caps).unwrap().order(), 1);
        assert_eq!(regular_bimodule(&a, 2, &caps).unwrap().order(), 4);
    }

    #[test]
    fn rejects_bad_action() {
        let a = z(2, &FiniteGroup::trivial());
        let add = vec![vec![0, 1], vec![1, 0]];
        // 1 acting as zero on the left
        let left = vec![vec![0, 0], vec![0, 0]];
        let right = vec![vec![0, 0], vec![1, 0]];
        let err = GradedBimodule::new(a, add, left, right, vec![vec![0, 1]], Vec::new());
        assert!(matches!(err, Err(Error::InvalidBimodule(_))));
    }
}
