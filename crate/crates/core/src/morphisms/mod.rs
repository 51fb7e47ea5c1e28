//! Homomorphisms, automorphisms and isomorphism tests.
//!
//! Every [`AutomorphismMap`] is certified multiplicative on all `n²` pairs at
//! construction; the searches in [`search`] only ever hand out certified maps.

mod iso;
mod search;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::group::{lcm, FiniteGroup, Subgroup};

pub use iso::{
    canonical_group, identify_allowed, identify_fingerprint, identify_minimal_nonabelian, IsoClass, ALLOWED,
    SL23_FINGERPRINT, Z4_SQUARED_FINGERPRINT,
};
pub use search::{
    all_order3_fpf, automorphism_group, find_order3_fpf, find_order3_fpf_with_budget, isomorphic_bruteforce, minimal_generators, AutSearch,
    DEFAULT_AUT_ORDER_LIMIT, DEFAULT_FPF_ORDER_LIMIT, ISO_ORDER_LIMIT,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MorphError {
    #[error("generator list does not generate the source group")]
    NotGenerating,
    #[error("{gens} generators but {images} images")]
    LengthMismatch { gens: usize, images: usize },
    #[error("element index {0} out of range")]
    BadIndex(usize),
    #[error("map is not multiplicative: f({a}·{b}) != f({a})·f({b})")]
    NotMultiplicative { a: usize, b: usize },
    #[error("map is not bijective: {a} and {b} have the same image")]
    NotBijective { a: usize, b: usize },
    #[error("map does not fix the identity")]
    IdentityNotFixed,
    #[error("automorphism belongs to a different group")]
    WrongGroup,
    #[error("search budget exhausted after {explored} nodes ({found} maps found so far)")]
    BudgetExceeded { explored: usize, found: usize },
    #[error("group of order {order} exceeds the limit {limit} for this operation")]
    SizeCeiling { order: usize, limit: usize },
    #[error("operation requires a 2-group, got order {0}")]
    NotTwoGroup(usize),
}

/// A homomorphism between two table groups, given by the image of every element.
#[derive(Clone, Debug)]
pub struct Homomorphism {
    source: FiniteGroup,
    target: FiniteGroup,
    images: Vec<u32>,
}

impl Homomorphism {
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn is_bijective(&self) -> bool {
        self.duplicate_image().is_none() && self.source.order() == self.target.order()
    }

    fn duplicate_image(&self) -> Option<(usize, usize)> {
        let mut pre = vec![usize::MAX; self.target.order()];
        for (x, &y) in self.images.iter().enumerate() {
            if pre[y as usize] != usize::MAX {
                return Some((pre[y as usize], x));
            }
            pre[y as usize] = x;
        }
        None
    }

    /// Turns an endomorphism into an automorphism if it is bijective.
    pub fn into_automorphism(self) -> Result<AutomorphismMap, MorphError> {
        if !self.source.table_eq(&self.target) {
            return Err(MorphError::WrongGroup);
        }
        if let Some((a, b)) = self.duplicate_image() {
            return Err(MorphError::NotBijective { a, b });
        }
        let order = perm_order(&self.images);
        Ok(AutomorphismMap { group: self.source, perm: Arc::new(self.images), order })
    }
}

/// Breadth-first word tree over `gens`: for every element its BFS parent and
/// the generator used to reach it, plus the BFS visiting order.
pub(crate) struct WordTree {
    pub(crate) order: Vec<u32>,
    pub(crate) parent: Vec<(u32, u32)>,
}

pub(crate) fn word_tree(g: &FiniteGroup, gens: &[usize]) -> Option<Arc<WordTree>> {
    g.cached_words(gens, || {
        let n = g.order();
        let mut parent = vec![(u32::MAX, u32::MAX); n];
        parent[0] = (0, u32::MAX);
        let mut order = vec![0u32];
        let mut i = 0;
        while i < order.len() {
            let x = order[i] as usize;
            for (k, &s) in gens.iter().enumerate() {
                let y = g.mul(x, s);
                if parent[y].0 == u32::MAX {
                    parent[y] = (x as u32, k as u32);
                    order.push(y as u32);
                }
            }
            i += 1;
        }
        (order.len() == n).then_some(WordTree { order, parent })
    })
}

/// Extends a map on generators to all of `g` along breadth-first words and
/// verifies multiplicativity on every pair.
pub fn hom_from_images(
    g: &FiniteGroup,
    gens: &[usize],
    h: &FiniteGroup,
    images: &[usize],
) -> Result<Homomorphism, MorphError> {
    if gens.len() != images.len() {
        return Err(MorphError::LengthMismatch { gens: gens.len(), images: images.len() });
    }
    if let Some(&bad) = gens.iter().find(|&&x| x >= g.order()) {
        return Err(MorphError::BadIndex(bad));
    }
    if let Some(&bad) = images.iter().find(|&&x| x >= h.order()) {
        return Err(MorphError::BadIndex(bad));
    }
    let tree = word_tree(g, gens).ok_or(MorphError::NotGenerating)?;
    let mut img = vec![0u32; g.order()];
    for &x in &tree.order[1..] {
        let (p, k) = tree.parent[x as usize];
        img[x as usize] = h.mul(img[p as usize] as usize, images[k as usize]) as u32;
    }
    for a in 0..g.order() {
        let fa = img[a] as usize;
        let row = g.row(a);
        let hrow = h.row(fa);
        for b in 0..g.order() {
            if img[row[b] as usize] != hrow[img[b] as usize] {
                return Err(MorphError::NotMultiplicative { a, b });
            }
        }
    }
    Ok(Homomorphism { source: g.clone(), target: h.clone(), images: img })
}

/// Convenience: [`hom_from_images`] on `g → g` followed by a bijectivity check.
pub fn automorphism_from_images(g: &FiniteGroup, gens: &[usize], images: &[usize]) -> Result<AutomorphismMap, MorphError> {
    hom_from_images(g, gens, g, images)?.into_automorphism()
}

/// An automorphism of a specific group, as a permutation of element indices.
#[derive(Clone)]
pub struct AutomorphismMap {
    group: FiniteGroup,
    perm: Arc<Vec<u32>>,
    order: usize,
}

impl fmt::Debug for AutomorphismMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AutomorphismMap")
            .field("group_order", &self.group.order())
            .field("order", &self.order)
            .finish()
    }
}

impl PartialEq for AutomorphismMap {
    fn eq(&self, other: &Self) -> bool {
        self.perm == other.perm
    }
}

impl Eq for AutomorphismMap {}

impl AutomorphismMap {
    /// Certifies `perm` as an automorphism of `group`.
    pub fn new(group: &FiniteGroup, perm: Vec<usize>) -> Result<Self, MorphError> {
        let n = group.order();
        if perm.len() != n {
            return Err(MorphError::LengthMismatch { gens: n, images: perm.len() });
        }
        if let Some(&bad) = perm.iter().find(|&&x| x >= n) {
            return Err(MorphError::BadIndex(bad));
        }
        if perm[0] != 0 {
            return Err(MorphError::IdentityNotFixed);
        }
        let images: Vec<u32> = perm.iter().map(|&x| x as u32).collect();
        let hom = Homomorphism { source: group.clone(), target: group.clone(), images };
        if let Some((a, b)) = hom.duplicate_image() {
            return Err(MorphError::NotBijective { a, b });
        }
        for a in 0..n {
            let fa = perm[a];
            for b in 0..n {
                if perm[group.mul(a, b)] != group.mul(fa, perm[b]) {
                    return Err(MorphError::NotMultiplicative { a, b });
                }
            }
        }
        hom.into_automorphism()
    }

    pub fn identity(group: &FiniteGroup) -> Self {
        AutomorphismMap { group: group.clone(), perm: Arc::new((0..group.order() as u32).collect()), order: 1 }
    }

    /// Inner automorphism `x ↦ t⁻¹xt`.
    pub fn inner(group: &FiniteGroup, t: usize) -> Self {
        let perm: Vec<u32> = (0..group.order()).map(|x| group.conj(x, t) as u32).collect();
        let order = perm_order(&perm);
        AutomorphismMap { group: group.clone(), perm: Arc::new(perm), order }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.perm[x] as usize
    }

    pub fn perm(&self) -> &[u32] {
        &self.perm
    }

    /// Multiplicative order.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_identity(&self) -> bool {
        self.order == 1
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &AutomorphismMap) -> AutomorphismMap {
        let perm: Vec<u32> = self.perm.iter().map(|&x| other.perm[x as usize]).collect();
        let order = perm_order(&perm);
        AutomorphismMap { group: self.group.clone(), perm: Arc::new(perm), order }
    }

    pub fn inverse(&self) -> AutomorphismMap {
        let mut perm = vec![0u32; self.perm.len()];
        for (x, &y) in self.perm.iter().enumerate() {
            perm[y as usize] = x as u32;
        }
        AutomorphismMap { group: self.group.clone(), perm: Arc::new(perm), order: self.order }
    }

    pub fn pow(&self, k: usize) -> AutomorphismMap {
        (0..k % self.order).fold(AutomorphismMap::identity(&self.group), |acc, _| acc.then(self))
    }

    /// Fixed points; always a subgroup.
    pub fn fix(&self) -> Subgroup {
        let members = (0..self.perm.len()).filter(|&x| self.apply(x) == x).collect();
        self.group.subgroup_unchecked(members)
    }

    pub fn is_fixed_point_free(&self) -> bool {
        (1..self.perm.len()).all(|x| self.apply(x) != x)
    }

    /// `x ↦ x⁻¹`, which is an automorphism exactly when the group is abelian.
    pub fn inversion(group: &FiniteGroup) -> Result<Self, MorphError> {
        Self::new(group, (0..group.order()).map(|x| group.inv(x)).collect())
    }
}

fn perm_order(perm: &[u32]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut order = 1;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x] as usize;
            len += 1;
        }
        order = lcm(order, len);
    }
    order
}

/// Result of [`verify_frobenius`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusReport {
    pub frobenius: bool,
    /// Whether `φ^m` is the identity at all.
    pub order_divides: bool,
    /// `(i, x)`: `φ^i` fixes the non-identity element `x` (first witness per `i`).
    pub offending: Vec<(usize, usize)>,
}

/// True iff every `φ^i`, `0 < i < m`, is fixed-point-free, i.e. `K ⋊ ⟨φ⟩` is a
/// Frobenius group with kernel `K`.
pub fn verify_frobenius(k: &FiniteGroup, phi: &AutomorphismMap, m: usize) -> FrobeniusReport {
    assert!(phi.group().table_eq(k), "automorphism of a different group");
    let order_divides = m > 0 && m.is_multiple_of(phi.order());
    let mut offending = Vec::new();
    let mut power = phi.clone();
    for i in 1..m {
        if let Some(x) = (1..k.order()).find(|&x| power.apply(x) == x) {
            offending.push((i, x));
        }
        power = power.then(phi);
    }
    FrobeniusReport { frobenius: order_divides && offending.is_empty() && m > 1, order_divides, offending }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{builtin, cyclic, elem_abelian};

    #[test]
    fn z4_inversion() {
        let z4 = cyclic(4).unwrap();
        let inv = automorphism_from_images(&z4, &[1], &[3]).unwrap();
        assert_eq!(inv.order(), 2);
        assert_eq!(inv.fix().len(), 2);
        let r = verify_frobenius(&z4, &inv, 2);
        assert!(!r.frobenius);
        assert_eq!(r.offending, vec![(1, 2)]);
    }

    #[test]
    fn z4_squaring_is_not_bijective() {
        let z4 = cyclic(4).unwrap();
        let hom = hom_from_images(&z4, &[1], &z4, &[2]).unwrap();
        assert!(!hom.is_bijective());
        assert!(matches!(hom.into_automorphism(), Err(MorphError::NotBijective { .. })));
    }

    #[test]
    fn quaternion_swap() {
        let q8 = builtin("Q8").unwrap();
        let (i, j) = (q8.gens()[0], q8.gens()[1]);
        let swap = automorphism_from_images(&q8, &[i, j], &[j, i]).unwrap();
        assert_eq!(swap.apply(i), j);
        assert!(!swap.is_identity());
    }

    #[test]
    fn rejects_non_generating_and_non_hom() {
        let z4 = cyclic(4).unwrap();
        assert_eq!(hom_from_images(&z4, &[2], &z4, &[2]).unwrap_err(), MorphError::NotGenerating);
        let z3 = cyclic(3).unwrap();
        assert!(matches!(hom_from_images(&z4, &[1], &z3, &[1]), Err(MorphError::NotMultiplicative { .. })));
        assert!(matches!(AutomorphismMap::new(&z4, vec![0, 2, 1, 3]), Err(MorphError::NotMultiplicative { .. })));
    }

    #[test]
    fn frobenius_on_klein_four() {
        let v = elem_abelian(2, 2).unwrap();
        let phi = automorphism_from_images(&v, &[2, 1], &[1, 3]).unwrap();
        assert_eq!(phi.order(), 3);
        assert!(verify_frobenius(&v, &phi, 3).frobenius);
        assert_eq!(AutomorphismMap::identity(&v).fix().len(), 4);
        let inv = phi.inverse();
        assert!(phi.then(&inv).is_identity());
        assert_eq!(phi.pow(3), AutomorphismMap::identity(&v));
    }
}
