//! Builders for graded rings: trivial gradings, products, σ-shifted matrix
//! rings, twisted group rings, coarsening along a normal subgroup,
//! idealization, and corners at central idempotents.
//!
//! Every builder re-validates the grading of its output.

mod group_ring;
mod idealization;
mod matrix;

use std::sync::Arc;

pub use group_ring::{augmentation, group_ring_graded, plain_group_ring, subgroup_ring_graded, GroupRing};
pub use idealization::{idealization, regular_bimodule, GradedBimodule, Idealization};
pub use matrix::{matrix_graded, triangular_graded, Sigma};

use crate::error::{Error, Result};
use crate::grading::{validate_grading, GradedMap, GradedRing};
use crate::group::FiniteGroup;
use crate::ring::FiniteRing;
use crate::Caps;

pub(crate) fn check_order(what: &'static str, order: u128, caps: &Caps) -> Result<usize> {
    if order > caps.order as u128 {
        return Err(Error::CapExceeded { what, order: order.min(usize::MAX as u128) as usize, cap: caps.order });
    }
    Ok(order as usize)
}

/// Mixed-radix coordinates for tuples over a list of bases.
#[derive(Clone, Debug)]
pub(crate) struct Radix {
    bases: Vec<usize>,
    order: usize,
}

impl Radix {
    pub(crate) fn new(bases: Vec<usize>) -> Self {
        let order = bases.iter().product();
        Self { bases, order }
    }

    pub(crate) fn order(&self) -> usize {
        self.order
    }

    pub(crate) fn decode(&self, mut x: usize) -> Vec<usize> {
        self.bases
            .iter()
            .map(|&b| {
                let d = x % b;
                x /= b;
                d
            })
            .collect()
    }

    pub(crate) fn encode(&self, digits: &[usize]) -> usize {
        digits.iter().zip(&self.bases).rev().fold(0, |acc, (&d, &b)| acc * b + d)
    }

    /// Decoded digits of every element.
    pub(crate) fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|x| self.decode(x)).collect()
    }
}

/// Every element in the identity component.
pub fn trivial_graded(ring: Arc<FiniteRing>, group: FiniteGroup) -> GradedRing {
    GradedRing::trivial(ring, group)
}

/// A product ring with the coordinates of each (canonical) element.
#[derive(Clone, Debug)]
pub struct Product {
    pub ring: GradedRing,
    pub coords: Vec<Vec<usize>>,
}

impl Product {
    /// The degree-preserving projection onto factor `i`.
    pub fn projection(&self, source: Arc<GradedRing>, factor: Arc<GradedRing>, i: usize) -> Result<GradedMap> {
        GradedMap::new(source, factor, self.coords.iter().map(|c| c[i]).collect())
    }
}

/// `∏ R_i` with `g`-component `∏ (R_i)_g`.
pub fn direct_product(factors: &[Arc<GradedRing>], caps: &Caps) -> Result<Product> {
    let first = factors.first().ok_or_else(|| Error::InvalidRing("empty product".into()))?;
    let group = first.group().clone();
    if factors.iter().any(|f| *f.group() != group) {
        return Err(Error::GroupMismatch);
    }
    let total: u128 = factors.iter().map(|f| f.order() as u128).product();
    check_order("direct product", total, caps)?;
    let radix = Radix::new(factors.iter().map(|f| f.order()).collect());
    let digits = radix.table();
    let op = |x: usize, y: usize, mul: bool| {
        let d: Vec<usize> = factors
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let (a, b) = (digits[x][i], digits[y][i]);
                if mul {
                    f.ring().mul(a, b)
                } else {
                    f.ring().add(a, b)
                }
            })
            .collect();
        radix.encode(&d)
    };
    let labels = digits
        .iter()
        .map(|d| {
            let parts: Vec<&str> = d.iter().zip(factors).map(|(&x, f)| f.ring().label(x)).collect();
            format!("({})", parts.join(", "))
        })
        .collect();
    let (ring, to_new) = FiniteRing::from_fn(radix.order(), |x, y| op(x, y, false), |x, y| op(x, y, true), labels)?;
    let components = group
        .elements()
        .map(|g| {
            let mut v: Vec<usize> = (0..radix.order())
                .filter(|&x| factors.iter().enumerate().all(|(i, f)| f.component(g).contains(digits[x][i])))
                .map(|x| to_new[x])
                .collect();
            v.sort_unstable();
            v
        })
        .collect();
    let mut coords = vec![Vec::new(); radix.order()];
    for (natural, &new) in to_new.iter().enumerate() {
        coords[new] = digits[natural].clone();
    }
    let ring = validate_grading(Arc::new(ring), group, components)?;
    Ok(Product { ring, coords })
}

/// The same ring regraded by `G/H`: component `C` is `⊕_{x∈C} R_x`.
/// Returns the coarsened ring and the coset map `G → G/H`.
pub fn coarsen_grading(r: &GradedRing, normal: &[usize]) -> Result<(GradedRing, Vec<usize>)> {
    let (quotient, coset_of) = r.group().quotient(normal)?;
    let k = r.group().order();
    let components = quotient
        .elements()
        .map(|c| {
            r.ring()
                .elements()
                .filter(|&x| (0..k).all(|g| r.part(x, g) == 0 || coset_of[g] == c))
                .collect()
        })
        .collect();
    Ok((validate_grading(r.ring_arc().clone(), quotient, components)?, coset_of))
}

/// A corner `tR` with the ambient element behind each of its indices.
#[derive(Clone, Debug)]
pub struct Corner {
    pub ring: GradedRing,
    pub ambient: Vec<usize>,
}

impl Corner {
    pub fn is_degenerate(&self) -> bool {
        self.ring.order() == 1
    }
}

fn check_central_idempotent(r: &GradedRing, t: usize) -> Result<()> {
    if t >= r.order() || !r.identity_component().contains(t) || !r.ring().is_idempotent(t) {
        return Err(Error::NotIdempotent(t));
    }
    if !r.ring().is_central(t) {
        return Err(Error::NotCentralIdempotent(t));
    }
    Ok(())
}

/// `tR` with unity `t` and components `tR_g`, for a central idempotent `t ∈ R_e`.
pub fn corner_ring(r: &GradedRing, t: usize) -> Result<Corner> {
    check_central_idempotent(r, t)?;
    let ring = r.ring();
    let mut members: Vec<usize> = ring.elements().map(|x| ring.mul(t, x)).collect();
    members.sort_unstable();
    members.dedup();
    let (sub, ambient) = ring.subring(&members, t)?;
    let mut pos = vec![usize::MAX; ring.order()];
    for (i, &a) in ambient.iter().enumerate() {
        pos[a] = i;
    }
    let components = r
        .components()
        .iter()
        .map(|c| {
            let mut v: Vec<usize> = c.iter().map(|x| pos[ring.mul(t, x)]).collect();
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect();
    let ring = validate_grading(Arc::new(sub), r.group().clone(), components)?;
    Ok(Corner { ring, ambient })
}

/// The surjection `x ↦ tx` onto a corner.
pub fn corner_projection(r: Arc<GradedRing>, t: usize, corner: &Corner, target: Arc<GradedRing>) -> Result<GradedMap> {
    let mut pos = vec![usize::MAX; r.order()];
    for (i, &a) in corner.ambient.iter().enumerate() {
        pos[a] = i;
    }
    let table = r.ring().elements().map(|x| pos[r.ring().mul(t, x)]).collect();
    GradedMap::new(r, target, table)
}

/// The map `tR × (1−t)R → R`, `(a, b) ↦ a + b`, verified to be a graded
/// isomorphism.
pub fn peirce_glue(r: &Arc<GradedRing>, t: usize, caps: &Caps) -> Result<GradedMap> {
    let ring = r.ring();
    let s = ring.sub(ring.one(), t);
    let left = corner_ring(r, t)?;
    let right = corner_ring(r, s)?;
    let prod = direct_product(&[Arc::new(left.ring.clone()), Arc::new(right.ring.clone())], caps)?;
    let table = prod
        .coords
        .iter()
        .map(|c| ring.add(left.ambient[c[0]], right.ambient[c[1]]))
        .collect();
    let map = GradedMap::new(Arc::new(prod.ring), r.clone(), table)?;
    if !map.is_bijective() || !map.is_degree_preserving() {
        return Err(Error::NotHomomorphism("Peirce map is not a graded isomorphism".into()));
    }
    Ok(map)
}
