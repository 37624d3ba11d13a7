use std::sync::Arc;

use super::{check_order, coarsen_grading, Radix};
use crate::error::{Error, Result};
use crate::grading::{validate_grading, GradedMap, GradedRing};
use crate::group::FiniteGroup;
use crate::ring::FiniteRing;
use crate::Caps;

/// A (sub)group ring `R[H]` together with the coefficient vector of each element.
#[derive(Clone, Debug)]
pub struct GroupRing {
    pub ring: GradedRing,
    /// Members of `H`, in coefficient order.
    pub subgroup: Vec<usize>,
    /// `coeffs[x][i]` is the coefficient of `subgroup[i]` in `x`.
    pub coeffs: Vec<Vec<usize>>,
}

/// `R[G]` graded by `(R[G])_g = ⊕_h R_{gh⁻¹} h`, with the twisted product
/// `(r_g g')(r_h h') = r_g r_h (h⁻¹ g' h h')` extended biadditively.
pub fn group_ring_graded(r: &GradedRing, caps: &Caps) -> Result<GroupRing> {
    let all: Vec<usize> = r.group().elements().collect();
    twisted(r, &all, caps)
}

/// `R[H]` for a normal subgroup `H`, `G`-graded by `(R[H])_g = ⊕_{h∈H} R_{gh⁻¹} h`.
/// With `quotient_view` the result is regraded over `G/H`.
pub fn subgroup_ring_graded(r: &GradedRing, subgroup: &[usize], quotient_view: bool, caps: &Caps) -> Result<GroupRing> {
    let group = r.group();
    if !group.is_subgroup(subgroup) {
        return Err(Error::NotSubgroup(format!("{subgroup:?}")));
    }
    if !group.is_normal(subgroup) {
        return Err(Error::NotNormal);
    }
    let mut h: Vec<usize> = subgroup.to_vec();
    h.sort_unstable();
    let mut built = twisted(r, &h, caps)?;
    if quotient_view {
        built.ring = coarsen_grading(&built.ring, subgroup)?.0;
    }
    Ok(built)
}

fn twisted(r: &GradedRing, subgroup: &[usize], caps: &Caps) -> Result<GroupRing> {
    let group = r.group();
    let base = r.ring();
    let q = base.order();
    let m = subgroup.len();
    let order = check_order("group ring", (q as u128).checked_pow(m as u32).unwrap_or(u128::MAX), caps)?;
    let mut pos = vec![usize::MAX; group.order()];
    for (i, &h) in subgroup.iter().enumerate() {
        pos[h] = i;
    }
    let radix = Radix::new(vec![q; m]);
    let digits = radix.table();
    // Homogeneous parts of each coefficient: (degree, part) with part ≠ 0.
    let parts: Vec<Vec<(usize, usize)>> = base
        .elements()
        .map(|c| group.elements().map(|g| (g, r.part(c, g))).filter(|&(_, p)| p != 0).collect())
        .collect();
    let product_digits = |a: &[usize], b: &[usize]| -> Vec<usize> {
        let mut out = vec![0usize; m];
        for (k, &ck) in a.iter().enumerate() {
            if ck == 0 {
                continue;
            }
            for (l, &dl) in b.iter().enumerate() {
                if dl == 0 {
                    continue;
                }
                for &(_, pg) in &parts[ck] {
                    for &(h, ph) in &parts[dl] {
                        // h⁻¹ g' h h'
                        let t = group.mul(group.mul(group.mul(group.inv(h), subgroup[k]), h), subgroup[l]);
                        let slot = pos[t];
                        out[slot] = base.add(out[slot], base.mul(pg, ph));
                    }
                }
            }
        }
        out
    };
    check_twisted_associativity(r, subgroup, &radix, &product_digits)?;
    let add = |x: usize, y: usize| {
        let d: Vec<usize> = digits[x].iter().zip(&digits[y]).map(|(&a, &b)| base.add(a, b)).collect();
        radix.encode(&d)
    };
    let mul = |x: usize, y: usize| radix.encode(&product_digits(&digits[x], &digits[y]));
    let names = group.names();
    let labels = digits
        .iter()
        .map(|d| {
            let terms: Vec<String> = d
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| format!("{}*{}", base.label(c), names[subgroup[i]]))
                .collect();
            if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join("+")
            }
        })
        .collect();
    let (ring, to_new) = FiniteRing::from_fn(order, add, mul, labels)?;
    let components = group
        .elements()
        .map(|g| {
            let allowed: Vec<usize> = subgroup.iter().map(|&h| group.mul(g, group.inv(h))).collect();
            let mut v: Vec<usize> = (0..order)
                .filter(|&x| digits[x].iter().zip(&allowed).all(|(&c, &a)| r.component(a).contains(c)))
                .map(|x| to_new[x])
                .collect();
            v.sort_unstable();
            v
        })
        .collect();
    let mut coeffs = vec![Vec::new(); order];
    for (natural, &new) in to_new.iter().enumerate() {
        coeffs[new] = digits[natural].clone();
    }
    let ring = validate_grading(Arc::new(ring), group.clone(), components)?;
    Ok(GroupRing { ring, subgroup: subgroup.to_vec(), coeffs })
}

/// Checks associativity on monomials `s·h` where `s` runs over additive
/// generators of each component; all elements are sums of these, and the
/// product is biadditive. Reports the first failing triple in the natural
/// coefficient encoding.
fn check_twisted_associativity(
    r: &GradedRing,
    subgroup: &[usize],
    radix: &Radix,
    product: &dyn Fn(&[usize], &[usize]) -> Vec<usize>,
) -> Result<()> {
    let base = r.ring();
    let m = subgroup.len();
    let mut monomials = Vec::new();
    for comp in r.components() {
        for s in subgroup_generators(base, comp.members()) {
            for k in 0..m {
                let mut d = vec![0usize; m];
                d[k] = s;
                monomials.push(d);
            }
        }
    }
    for a in &monomials {
        for b in &monomials {
            let ab = product(a, b);
            for c in &monomials {
                if product(&ab, c) != product(a, &product(b, c)) {
                    return Err(Error::AssociativityViolation {
                        a: radix.encode(a),
                        b: radix.encode(b),
                        c: radix.encode(c),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Greedy additive generators of a subgroup given by its members.
fn subgroup_generators(ring: &FiniteRing, members: &[usize]) -> Vec<usize> {
    let mut span = vec![false; ring.order()];
    span[0] = true;
    let mut list = vec![0usize];
    let mut gens = Vec::new();
    for &x in members {
        if span[x] {
            continue;
        }
        gens.push(x);
        let old = list.len();
        let mut shift = x;
        while shift != 0 {
            for i in 0..old {
                let z = ring.add(list[i], shift);
                if !span[z] {
                    span[z] = true;
                    list.push(z);
                }
            }
            shift = ring.add(shift, x);
        }
    }
    gens
}

/// The ordinary group ring `R[G]` with `(r g)(s h) = rs (gh)`, ignoring any grading.
pub fn plain_group_ring(base: &FiniteRing, group: &FiniteGroup, caps: &Caps) -> Result<FiniteRing> {
    let q = base.order();
    let m = group.order();
    let order = check_order("group ring", (q as u128).checked_pow(m as u32).unwrap_or(u128::MAX), caps)?;
    let radix = Radix::new(vec![q; m]);
    let digits = radix.table();
    let add = |x: usize, y: usize| {
        let d: Vec<usize> = digits[x].iter().zip(&digits[y]).map(|(&a, &b)| base.add(a, b)).collect();
        radix.encode(&d)
    };
    let mul = |x: usize, y: usize| {
        let mut out = vec![0usize; m];
        for (g, &a) in digits[x].iter().enumerate() {
            for (h, &b) in digits[y].iter().enumerate() {
                let gh = group.mul(g, h);
                out[gh] = base.add(out[gh], base.mul(a, b));
            }
        }
        radix.encode(&out)
    };
    Ok(FiniteRing::from_fn(order, add, mul, Vec::new())?.0)
}

/// The augmentation `Σ r_i h_i ↦ Σ r_i` from `R[H]` onto `R`; both sides must be
/// graded over the same group (typically `G/H`).
pub fn augmentation(group_ring: &GroupRing, source: Arc<GradedRing>, target: Arc<GradedRing>) -> Result<GradedMap> {
    let base = target.ring();
    let table = group_ring
        .coeffs
        .iter()
        .map(|c| c.iter().fold(0, |acc, &x| base.add(acc, x)))
        .collect();
    GradedMap::new(source, target, table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trivially_graded(n: usize, g: &FiniteGroup) -> GradedRing {
        GradedRing::trivial(Arc::new(FiniteRing::zmod(n).unwrap()), g.clone())
    }

    #[test]
    fn z2_over_c2() {
        let c2 = FiniteGroup::cyclic(2);
        let gr = group_ring_graded(&trivially_graded(2, &c2), &Caps::default()).unwrap();
        assert_eq!(gr.ring.order(), 4);
        let labels = |g: usize| -> Vec<&str> { gr.ring.component(g).iter().map(|x| gr.ring.ring().label(x)).collect() };
        assert_eq!(labels(0), ["0", "1*e"]);
        assert_eq!(labels(1), ["0", "1*g"]);
    }

    #[test]
    fn nested_group_ring_components() {
        let c2 = FiniteGroup::cyclic(2);
        let caps = Caps::default();
        let inner = group_ring_graded(&trivially_graded(2, &c2), &caps).unwrap();
        let outer = group_ring_graded(&inner.ring, &caps).unwrap();
        assert_eq!(outer.ring.order(), 16);
        assert!(outer.ring.components().iter().all(|c| c.len() == 4));
    }

    #[test]
    fn trivially_graded_coefficients_give_the_ordinary_group_ring() {
        let caps = Caps::default();
        for (n, k) in [(2, 2), (3, 3), (4, 2), (2, 4)] {
            let g = FiniteGroup::cyclic(k);
            let twisted = group_ring_graded(&trivially_graded(n, &g), &caps).unwrap();
            let plain = plain_group_ring(&FiniteRing::zmod(n).unwrap(), &g, &caps).unwrap();
            assert_eq!(*twisted.ring.ring(), plain, "Z_{n}[C_{k}]");
        }
    }

    #[test]
    fn identity_component_is_the_coefficient_ring() {
        let caps = Caps::default();
        let c2 = FiniteGroup::cyclic(2);
        let inner = group_ring_graded(&trivially_graded(3, &c2), &caps).unwrap();
        let outer = group_ring_graded(&inner.ring, &caps).unwrap();
        let (re, _) = outer.ring.identity_component_ring();
        assert!(re.find_isomorphism(inner.ring.ring()).is_some());
    }

    #[test]
    fn subgroup_rings() {
        let caps = Caps::default();
        let c2 = FiniteGroup::cyclic(2);
        let z4 = trivially_graded(4, &c2);
        let trivial_h = subgroup_ring_graded(&z4, &[0], false, &caps).unwrap();
        assert_eq!(trivial_h.ring.ring(), z4.ring());
        let whole = subgroup_ring_graded(&z4, &[0, 1], true, &caps).unwrap();
        assert_eq!(whole.ring.order(), 16);
        assert_eq!(whole.ring.group().order(), 1);
        let full = subgroup_ring_graded(&z4, &[0, 1], false, &caps).unwrap();
        assert_eq!(full.ring, group_ring_graded(&z4, &caps).unwrap().ring);
    }

    #[test]
    fn augmentation_kernel_has_order_four() {
        let caps = Caps::default();
        let c2 = FiniteGroup::cyclic(2);
        let z4 = trivially_graded(4, &c2);
        let rh = subgroup_ring_graded(&z4, &[0, 1], true, &caps).unwrap();
        let (z4q, _) = coarsen_grading(&z4, &[0, 1]).unwrap();
        let eps = augmentation(&rh, Arc::new(rh.ring.clone()), Arc::new(z4q)).unwrap();
        assert!(eps.is_degree_preserving());
        let k = eps.kernel_is_homogeneous().unwrap();
        assert_eq!(k.len(), 4);
    }

    #[test]
    fn rejects_non_normal_subgroup() {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 2, 0], [2, 0, 1], [1, 0, 2], [0, 2, 1], [2, 1, 0]];
        let compose = |a: &[usize; 3], b: &[usize; 3]| [a[b[0]], a[b[1]], a[b[2]]];
        let mul = perms
            .iter()
            .map(|a| perms.iter().map(|b| perms.iter().position(|p| *p == compose(a, b)).unwrap()).collect())
            .collect();
        let s3 = FiniteGroup::from_table((0..6).map(|i| format!("s{i}")).collect(), mul).unwrap();
        let r = trivially_graded(2, &s3);
        assert!(matches!(subgroup_ring_graded(&r, &[0, 3], false, &Caps::default()), Err(Error::NotNormal)));
        // non-abelian but trivially graded coefficients: the ordinary group ring
        let twisted = group_ring_graded(&r, &Caps::default()).unwrap();
        let plain = plain_group_ring(r.ring(), &s3, &Caps::default()).unwrap();
        assert_eq!(*twisted.ring.ring(), plain);
    }
}
