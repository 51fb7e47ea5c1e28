use std::collections::BTreeSet;

use super::{FiniteGroup, Fingerprint, OrderProfile};

/// A subgroup of a [`FiniteGroup`], stored as a sorted index set.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: FiniteGroup,
    members: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members && self.parent.order() == other.parent.order()
    }
}

impl Eq for Subgroup {}

/// Result of a capped closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Closure {
    Within(Subgroup),
    Exceeded,
}

impl Closure {
    pub fn subgroup(self) -> Option<Subgroup> {
        match self {
            Closure::Within(h) => Some(h),
            Closure::Exceeded => None,
        }
    }
}

/// Grows `members` (with membership mask `inside`) to the closure of the
/// current members together with `new_gen`, given that `members` is already
/// closed under every element of `gens` other than the last.
///
/// Returns `false` if the size would exceed `cap`.
pub(crate) fn extend_closure(
    n: usize,
    table: &[u32],
    inside: &mut [bool],
    members: &mut Vec<usize>,
    gens: &[usize],
    new_gen: usize,
    cap: Option<usize>,
) -> bool {
    let old = members.len();
    let push = |x: usize, inside: &mut [bool], members: &mut Vec<usize>| -> bool {
        if !inside[x] {
            inside[x] = true;
            members.push(x);
            if let Some(c) = cap {
                if members.len() > c {
                    return false;
                }
            }
        }
        true
    };
    for i in 0..old {
        let x = table[members[i] * n + new_gen] as usize;
        if !push(x, inside, members) {
            return false;
        }
    }
    let mut i = old;
    while i < members.len() {
        let m = members[i];
        for &g in gens {
            let x = table[m * n + g] as usize;
            if !push(x, inside, members) {
                return false;
            }
        }
        i += 1;
    }
    true
}

impl FiniteGroup {
    /// Smallest subgroup containing `seed`.
    pub fn closure(&self, seed: &[usize]) -> Subgroup {
        match self.closure_capped(seed, None) {
            Closure::Within(h) => h,
            Closure::Exceeded => unreachable!(),
        }
    }

    /// Like [`closure`](Self::closure) but gives up once more than `cap` elements are found.
    pub fn closure_capped(&self, seed: &[usize], cap: Option<usize>) -> Closure {
        let n = self.order();
        let mut inside = vec![false; n];
        inside[0] = true;
        let mut members = vec![0usize];
        let mut gens: Vec<usize> = Vec::new();
        for &s in seed {
            assert!(s < n, "element index {s} out of range");
            if inside[s] {
                continue;
            }
            gens.push(s);
            if !extend_closure(n, self.raw_table(), &mut inside, &mut members, &gens, s, cap) {
                return Closure::Exceeded;
            }
        }
        members.sort_unstable();
        Closure::Within(Subgroup { parent: self.clone(), members })
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { parent: self.clone(), members: (0..self.order()).collect() }
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup { parent: self.clone(), members: vec![0] }
    }

    /// Wraps a set already known to be a subgroup; checked in debug builds.
    pub(crate) fn subgroup_unchecked(&self, mut members: Vec<usize>) -> Subgroup {
        members.sort_unstable();
        members.dedup();
        let h = Subgroup { parent: self.clone(), members };
        debug_assert!(h.is_closed());
        h
    }

    /// Interprets `members` as a subgroup if it is one.
    pub fn subgroup_from_set(&self, members: &[usize]) -> Option<Subgroup> {
        let mut m = members.to_vec();
        m.sort_unstable();
        m.dedup();
        if m.first() != Some(&0) {
            return None;
        }
        let h = Subgroup { parent: self.clone(), members: m };
        h.is_closed().then_some(h)
    }
}

impl Subgroup {
    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    /// A small generating set, chosen greedily in index order.
    pub fn generators(&self) -> Vec<usize> {
        super::structure::generating_subset(&self.parent, self)
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.parent.order()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.parent.order()];
        for &x in &self.members {
            m[x] = true;
        }
        m
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        let members = self.members.iter().copied().filter(|&x| other.contains(x)).collect();
        Subgroup { parent: self.parent.clone(), members }
    }

    /// The subgroup generated by both.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let seed: Vec<usize> = self.members.iter().chain(other.members.iter()).copied().collect();
        self.parent.closure(&seed)
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.parent;
        self.members.iter().enumerate().all(|(i, &a)| self.members[i + 1..].iter().all(|&b| g.commutes(a, b)))
    }

    /// Closed under multiplication and inversion.
    pub fn is_closed(&self) -> bool {
        let g = &self.parent;
        let mask = self.mask();
        self.members.iter().all(|&a| mask[g.inv(a)] && self.members.iter().all(|&b| mask[g.mul(a, b)]))
    }

    pub fn is_normal(&self) -> bool {
        let g = &self.parent;
        let mask = self.mask();
        g.gens().iter().all(|&t| self.members.iter().all(|&a| mask[g.conj(a, t)]))
    }

    /// Conjugate subgroup `t⁻¹Ht`.
    pub fn conjugate(&self, t: usize) -> Subgroup {
        let g = &self.parent;
        let mut members: Vec<usize> = self.members.iter().map(|&a| g.conj(a, t)).collect();
        members.sort_unstable();
        Subgroup { parent: g.clone(), members }
    }

    pub fn exponent(&self) -> usize {
        self.members.iter().map(|&a| self.parent.elem_order(a)).fold(1, super::lcm)
    }

    pub fn order_profile(&self) -> OrderProfile {
        let mut p = OrderProfile::new();
        for &a in &self.members {
            *p.entry(self.parent.elem_order(a)).or_default() += 1;
        }
        p
    }

    pub fn fingerprint(&self) -> Fingerprint {
        Fingerprint { order: self.len(), abelian: self.is_abelian(), profile: self.order_profile() }
    }

    pub fn is_elementary_abelian(&self) -> bool {
        let orders: BTreeSet<usize> = self.members.iter().map(|&a| self.parent.elem_order(a)).collect();
        let prime = orders.iter().copied().find(|&o| o > 1);
        self.is_abelian() && orders.iter().all(|&o| o == 1 || Some(o) == prime) && prime.is_none_or(super::is_prime)
    }

    /// Maps a subgroup of [`to_group`](Self::to_group) back into the parent.
    pub fn lift(&self, inner: &Subgroup) -> Subgroup {
        assert_eq!(inner.parent.order(), self.members.len(), "subgroup of a different group");
        self.parent.subgroup_unchecked(inner.members.iter().map(|&i| self.members[i]).collect())
    }

    /// The subgroup as a standalone group. Element `i` of the result is
    /// `members()[i]` of the parent.
    pub fn to_group(&self) -> FiniteGroup {
        let n = self.members.len();
        let g = &self.parent;
        let mut index = vec![u32::MAX; g.order()];
        for (i, &a) in self.members.iter().enumerate() {
            index[a] = i as u32;
        }
        let mut table = vec![0u32; n * n];
        for (i, &a) in self.members.iter().enumerate() {
            for (j, &b) in self.members.iter().enumerate() {
                table[i * n + j] = index[g.mul(a, b)];
            }
        }
        let mut h = FiniteGroup::from_raw(n, table);
        if let Some(labels) = g.labels() {
            h = h.with_labels(self.members.iter().map(|&a| labels[a].clone()).collect());
        }
        h
    }
}
