use std::sync::Arc;

use super::{check_order, Radix};
use crate::error::{Error, Result};
use crate::grading::{validate_grading, GradedRing};
use crate::ring::FiniteRing;
use crate::Caps;

/// A tuple `(g_1, …, g_n)` of grading-group elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sigma(Vec<usize>);

impl Sigma {
    pub fn new(entries: Vec<usize>, group_order: usize) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidRing("sigma must have at least one entry".into()));
        }
        if let Some(&g) = entries.iter().find(|&&g| g >= group_order) {
            return Err(Error::InvalidGroup(format!("sigma entry {g} is not a group element")));
        }
        Ok(Self(entries))
    }

    pub fn constant(n: usize, g: usize) -> Self {
        Self(vec![g; n])
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All tuples of length `n` over a group of the given order, lexicographically.
    pub fn all(n: usize, group_order: usize) -> Vec<Self> {
        let radix = Radix::new(vec![group_order; n]);
        (0..radix.order())
            .map(|x| {
                let mut d = radix.decode(x);
                d.reverse();
                Self(d)
            })
            .collect()
    }
}

/// `M_n(R)(σ)`: entry `(i, j)` of the `λ`-component lies in `R_{g_i λ g_j^{-1}}`.
pub fn matrix_graded(r: &GradedRing, sigma: &Sigma, caps: &Caps) -> Result<GradedRing> {
    let n = sigma.len();
    let positions = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    shifted_matrices(r, sigma, positions, caps, "matrix ring")
}

/// Upper-triangular `T_n(R)(σ)` with the grading induced from `M_n(R)(σ)`.
pub fn triangular_graded(r: &GradedRing, sigma: &Sigma, caps: &Caps) -> Result<GradedRing> {
    let n = sigma.len();
    let positions = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    shifted_matrices(r, sigma, positions, caps, "triangular matrix ring")
}

fn shifted_matrices(
    r: &GradedRing,
    sigma: &Sigma,
    positions: Vec<(usize, usize)>,
    caps: &Caps,
    what: &'static str,
) -> Result<GradedRing> {
    let n = sigma.len();
    let base = r.ring();
    let q = base.order();
    let order = check_order(what, (q as u128).checked_pow(positions.len() as u32).unwrap_or(u128::MAX), caps)?;
    let radix = Radix::new(vec![q; positions.len()]);
    let mut slot = vec![vec![None; n]; n];
    for (k, &(i, j)) in positions.iter().enumerate() {
        slot[i][j] = Some(k);
    }
    let digits = radix.table();
    let entry = |d: &[usize], i: usize, j: usize| slot[i][j].map_or(0, |k| d[k]);
    let add = |x: usize, y: usize| {
        let (a, b) = (&digits[x], &digits[y]);
        let d: Vec<usize> = a.iter().zip(b).map(|(&p, &q)| base.add(p, q)).collect();
        radix.encode(&d)
    };
    let mul = |x: usize, y: usize| {
        let (a, b) = (&digits[x], &digits[y]);
        let d: Vec<usize> = positions
            .iter()
            .map(|&(i, j)| (0..n).fold(0, |acc, k| base.add(acc, base.mul(entry(a, i, k), entry(b, k, j)))))
            .collect();
        radix.encode(&d)
    };
    let labels = digits
        .iter()
        .map(|d| {
            let rows: Vec<String> = (0..n)
                .map(|i| {
                    let cells: Vec<&str> = (0..n).map(|j| base.label(entry(d, i, j))).collect();
                    format!("[{}]", cells.join(","))
                })
                .collect();
            format!("[{}]", rows.join(","))
        })
        .collect();
    let (ring, to_new) = FiniteRing::from_fn(order, add, mul, labels)?;
    let group = r.group();
    let g = sigma.entries();
    let components = group
        .elements()
        .map(|lambda| {
            let allowed: Vec<usize> = positions
                .iter()
                .map(|&(i, j)| group.mul(group.mul(g[i], lambda), group.inv(g[j])))
                .collect();
            let mut v: Vec<usize> = (0..order)
                .filter(|&x| digits[x].iter().zip(&allowed).all(|(&a, &c)| r.component(c).contains(a)))
                .map(|x| to_new[x])
                .collect();
            v.sort_unstable();
            v
        })
        .collect();
    validate_grading(Arc::new(ring), group.clone(), components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    fn trivially_graded(n: usize, g: &FiniteGroup) -> GradedRing {
        GradedRing::trivial(Arc::new(FiniteRing::zmod(n).unwrap()), g.clone())
    }

    fn by_label(r: &GradedRing, label: &str) -> usize {
        r.ring().elements().find(|&x| r.ring().label(x) == label).unwrap()
    }

    #[test]
    fn e3_grading_is_diagonal_plus_antidiagonal() {
        let c2 = FiniteGroup::cyclic(2);
        let m = matrix_graded(&trivially_graded(2, &c2), &Sigma::new(vec![0, 1], 2).unwrap(), &Caps::default())
            .unwrap();
        assert_eq!(m.order(), 16);
        let labels = |g: usize| -> Vec<String> { m.component(g).iter().map(|x| m.ring().label(x).to_string()).collect() };
        let mut e = labels(0);
        e.sort();
        assert_eq!(e, ["[[0,0],[0,0]]", "[[0,0],[0,1]]", "[[1,0],[0,0]]", "[[1,0],[0,1]]"]);
        let mut g = labels(1);
        g.sort();
        assert_eq!(g, ["[[0,0],[0,0]]", "[[0,0],[1,0]]", "[[0,1],[0,0]]", "[[0,1],[1,0]]"]);
        assert_eq!(m.support(), vec![0, 1]);
        assert_eq!(m.homogeneous_elements().len(), 7);
        let swap = by_label(&m, "[[0,1],[1,0]]");
        assert_eq!(m.degree(swap).unwrap(), 1);
        let mixed = by_label(&m, "[[1,1],[1,0]]");
        assert!(m.degree(mixed).is_err());
    }

    #[test]
    fn e1_grading_over_c3() {
        let c3 = FiniteGroup::cyclic(3);
        let m = matrix_graded(&trivially_graded(3, &c3), &Sigma::new(vec![0, 1], 3).unwrap(), &Caps::default())
            .unwrap();
        assert_eq!(m.order(), 81);
        // g_1 λ g_2^{-1} = e requires λ = g for the (1,2) entry
        let upper = by_label(&m, "[[0,1],[0,0]]");
        let lower = by_label(&m, "[[0,0],[2,0]]");
        let diag = by_label(&m, "[[2,0],[0,1]]");
        assert_eq!(m.degree(upper).unwrap(), 1);
        assert_eq!(m.degree(lower).unwrap(), 2);
        assert_eq!(m.degree(diag).unwrap(), 0);
        assert_eq!(m.support(), vec![0, 1, 2]);
        // 9 diagonal, 3 strictly upper, 3 strictly lower, sharing 0
        assert_eq!(m.homogeneous_elements().len(), 13);
    }

    #[test]
    fn constant_sigma_gives_trivial_grading() {
        let c2 = FiniteGroup::cyclic(2);
        let m = matrix_graded(&trivially_graded(2, &c2), &Sigma::constant(2, 1), &Caps::default()).unwrap();
        assert!(m.is_trivially_graded());
    }

    #[test]
    fn triangular_sizes_and_components() {
        let c2 = FiniteGroup::cyclic(2);
        let caps = Caps::default();
        let t = triangular_graded(&trivially_graded(2, &c2), &Sigma::constant(2, 0), &caps).unwrap();
        assert_eq!(t.order(), 8);
        assert!(t.is_trivially_graded());
        let t = triangular_graded(&trivially_graded(2, &c2), &Sigma::new(vec![0, 1], 2).unwrap(), &caps).unwrap();
        assert_eq!(t.component(0).len(), 4);
        assert_eq!(t.component(1).len(), 2);
        let t3 = triangular_graded(&trivially_graded(2, &c2), &Sigma::constant(3, 0), &caps).unwrap();
        assert_eq!(t3.order(), 64);
    }

    #[test]
    fn left_translating_sigma_keeps_components() {
        let c3 = FiniteGroup::cyclic(3);
        let caps = Caps::default();
        let base = trivially_graded(2, &c3);
        for s in Sigma::all(2, 3) {
            let a = matrix_graded(&base, &s, &caps).unwrap();
            for g in 0..3 {
                let shifted = Sigma::new(s.entries().iter().map(|&x| c3.mul(g, x)).collect(), 3).unwrap();
                let b = matrix_graded(&base, &shifted, &caps).unwrap();
                assert_eq!(a.component_lists(), b.component_lists());
            }
        }
    }

    #[test]
    fn cap_exceeded() {
        let c2 = FiniteGroup::cyclic(2);
        let caps = Caps { order: 80, ideal_order: 80 };
        assert!(matches!(
            matrix_graded(&trivially_graded(3, &c2), &Sigma::constant(2, 0), &caps),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn all_sigmas() {
        let all = Sigma::all(2, 3);
        assert_eq!(all.len(), 9);
        assert_eq!(all[1].entries(), &[0, 1]);
    }
}
