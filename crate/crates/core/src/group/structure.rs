use std::collections::BTreeSet;

use super::{p_part, FiniteGroup, GroupError, Subgroup};

/// Outcome of [`FiniteGroup::nilpotency_class`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NilpotencyClass {
    Class(usize),
    NotNilpotent,
}

/// The three subgroups compared by [`FiniteGroup::is_special_2group`].
#[derive(Clone, Debug)]
pub struct SpecialReport {
    pub special: bool,
    pub elementary_abelian: bool,
    pub derived: Subgroup,
    pub frattini: Subgroup,
    pub center: Subgroup,
}

impl FiniteGroup {
    pub fn center(&self) -> Subgroup {
        self.warn_if_large("center");
        let members = (0..self.order()).filter(|&z| self.gens().iter().all(|&g| self.commutes(z, g))).collect();
        self.subgroup_unchecked(members)
    }

    /// Elements commuting with every element of `set`.
    pub fn centralizer(&self, set: &[usize]) -> Subgroup {
        let members = (0..self.order()).filter(|&z| set.iter().all(|&s| self.commutes(z, s))).collect();
        self.subgroup_unchecked(members)
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let mask = h.mask();
        // normalizing a generating set of h suffices
        let hg = generating_subset(self, h);
        let members = (0..self.order())
            .filter(|&g| hg.iter().all(|&a| mask[self.conj(a, g)]))
            .collect();
        self.subgroup_unchecked(members)
    }

    /// Subgroup generated by the commutators `[a,b]` with `a` in `a_set`, `b` in `b_set`.
    pub fn commutator_subgroup(&self, a_set: &Subgroup, b_set: &Subgroup) -> Subgroup {
        let mut comms = BTreeSet::new();
        for &a in a_set.members() {
            for &b in b_set.members() {
                comms.insert(self.comm(a, b));
            }
        }
        let seed: Vec<usize> = comms.into_iter().collect();
        let h = self.closure(&seed);
        // [A,B] is normalized by A and B; close under conjugation to be safe for arbitrary inputs
        self.normal_closure(&h)
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        self.warn_if_large("derived_subgroup");
        let mut comms = BTreeSet::new();
        for a in 0..self.order() {
            for b in a + 1..self.order() {
                comms.insert(self.comm(a, b));
            }
        }
        let seed: Vec<usize> = comms.into_iter().collect();
        self.closure(&seed)
    }

    /// Smallest normal subgroup containing `h`.
    pub fn normal_closure(&self, h: &Subgroup) -> Subgroup {
        let mut cur = h.clone();
        loop {
            let mut seed: Vec<usize> = cur.members().to_vec();
            for &a in &generating_subset(self, &cur) {
                for &g in self.gens() {
                    seed.push(self.conj(a, g));
                }
            }
            let next = self.closure(&seed);
            if next.len() == cur.len() {
                return cur;
            }
            cur = next;
        }
    }

    /// Subgroup generated by the identity and all involutions.
    pub fn omega1(&self) -> Subgroup {
        self.closure(&self.involutions())
    }

    /// `Φ(G) = G′G^p` for a `p`-group.
    pub fn frattini_pgroup(&self) -> Result<Subgroup, GroupError> {
        let n = self.order();
        if n == 1 {
            return Ok(self.trivial());
        }
        let (p, _) = self.prime_power().ok_or(GroupError::NotPGroup(n))?;
        let mut seed: Vec<usize> = self.derived_subgroup().members().to_vec();
        seed.extend((0..n).map(|g| self.pow(g, p)));
        seed.sort_unstable();
        seed.dedup();
        Ok(self.closure(&seed))
    }

    /// Elements of `p`-power order.
    pub fn p_elements(&self, p: usize) -> Vec<usize> {
        (0..self.order())
            .filter(|&g| g == 0 || super::prime_power(self.elem_order(g)).is_some_and(|(q, _)| q == p))
            .collect()
    }

    /// A Sylow `p`-subgroup, found by climbing normalizers and always
    /// enlarging by the smallest eligible element index.
    pub fn sylow(&self, p: usize) -> Subgroup {
        let target = p_part(self.order(), p);
        let pel = self.p_elements(p);
        let mut cur = self.trivial();
        while cur.len() < target {
            let norm = self.normalizer(&cur);
            let x = pel
                .iter()
                .copied()
                .find(|&x| norm.contains(x) && !cur.contains(x))
                .expect("a p-element of N(P) outside P exists while P is not Sylow");
            let mut seed = cur.members().to_vec();
            seed.push(x);
            cur = self.closure(&seed);
        }
        cur
    }

    /// Largest normal `p`-subgroup: the intersection of all Sylow `p`-conjugates.
    pub fn o_p(&self, p: usize) -> Subgroup {
        let s = self.sylow(p);
        let norm = self.normalizer(&s);
        let mut cur = s.clone();
        let mut seen_cosets = vec![false; self.order()];
        for g in 0..self.order() {
            if seen_cosets[g] {
                continue;
            }
            // mark the right coset N g
            for &h in norm.members() {
                seen_cosets[self.mul(h, g)] = true;
            }
            cur = cur.intersect(&s.conjugate(g));
            if cur.is_trivial() {
                break;
            }
        }
        cur
    }

    pub fn lower_central_series(&self) -> Vec<Subgroup> {
        let mut series = vec![self.whole()];
        let whole = self.whole();
        loop {
            let last = series.last().unwrap();
            let next = self.commutator_subgroup(last, &whole);
            if next.len() == last.len() {
                break;
            }
            let done = next.is_trivial();
            series.push(next);
            if done {
                break;
            }
        }
        series
    }

    pub fn nilpotency_class(&self) -> NilpotencyClass {
        let series = self.lower_central_series();
        if series.last().unwrap().is_trivial() {
            NilpotencyClass::Class(series.len() - 1)
        } else {
            NilpotencyClass::NotNilpotent
        }
    }

    /// Elementary abelian, or `G′ = Φ(G) = Z(G)` elementary abelian. Requires a 2-group.
    pub fn is_special_2group(&self) -> Result<SpecialReport, GroupError> {
        let n = self.order();
        if n != 1 && self.prime_power().map(|(p, _)| p) != Some(2) {
            return Err(GroupError::NotPGroup(n));
        }
        let derived = self.derived_subgroup();
        let frattini = self.frattini_pgroup()?;
        let center = self.center();
        let elementary_abelian = self.whole().is_elementary_abelian() || n == 1;
        let special = elementary_abelian
            || (derived == frattini && frattini == center && center.is_elementary_abelian());
        Ok(SpecialReport { special, elementary_abelian, derived, frattini, center })
    }

    /// Conjugacy-class size of every element.
    pub fn class_sizes(&self) -> Vec<usize> {
        let n = self.order();
        let mut size = vec![0usize; n];
        let mut seen = vec![false; n];
        for a in 0..n {
            if seen[a] {
                continue;
            }
            let class: BTreeSet<usize> = (0..n).map(|g| self.conj(a, g)).collect();
            for &c in &class {
                seen[c] = true;
                size[c] = class.len();
            }
        }
        size
    }
}

/// A small generating set of `h` (greedy over its members).
pub(crate) fn generating_subset(g: &FiniteGroup, h: &Subgroup) -> Vec<usize> {
    let n = g.order();
    let mut inside = vec![false; n];
    inside[0] = true;
    let mut members = vec![0usize];
    let mut gens = Vec::new();
    for &x in h.members() {
        if members.len() == h.len() {
            break;
        }
        if inside[x] {
            continue;
        }
        gens.push(x);
        super::subgroup::extend_closure(n, g.raw_table(), &mut inside, &mut members, &gens, x, None);
    }
    gens
}
