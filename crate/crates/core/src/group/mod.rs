//! Finite groups stored as Cayley tables.
//!
//! A [`FiniteGroup`] is an immutable, cheaply clonable handle on a validated
//! multiplication table. Element `0` is always the identity. Inverses, element
//! orders and a generating list are cached at construction.

mod structure;
mod subgroup;

use std::any::Any;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use structure::{SpecialReport, NilpotencyClass};
pub use subgroup::{Closure, Subgroup};

/// Largest group the engine accepts.
pub const MAX_ORDER: usize = 32_768;

/// Structure operations log a warning above this order.
pub const WARN_ORDER: usize = 4_096;

/// Full associativity is checked on all triples up to this order.
pub const FULL_ASSOC_LIMIT: usize = 512;

/// Number of sampled triples above [`FULL_ASSOC_LIMIT`].
pub const ASSOC_SAMPLES: usize = 10_000;

/// Default seed for every randomized internal check.
pub const DEFAULT_SEED: u64 = 0xC4_71E9;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("order {0} is not a prime power")]
    NotPGroup(usize),
    #[error("group of order {0} exceeds the size ceiling {1}")]
    SizeCeiling(usize, usize),
}

#[derive(Clone)]
struct GroupData {
    n: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    ord: Vec<u32>,
    gens: Vec<usize>,
    labels: Option<Vec<String>>,
    meta: Vec<(String, String)>,
    words: WordCache,
}

/// Per-group cache of breadth-first word trees, keyed by generator list.
#[derive(Default)]
struct WordCache(Mutex<HashMap<Vec<usize>, Arc<dyn Any + Send + Sync>>>);

impl Clone for WordCache {
    fn clone(&self) -> Self {
        WordCache::default()
    }
}

/// An immutable finite group on the element indices `0..n`.
#[derive(Clone)]
pub struct FiniteGroup(Arc<GroupData>);

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order())
            .field("gens", &self.0.gens)
            .field("meta", &self.0.meta)
            .finish()
    }
}

/// Multiset of element orders.
pub type OrderProfile = BTreeMap<usize, usize>;

impl FiniteGroup {
    /// Validates an arbitrary table and builds a group from it.
    ///
    /// The identity is relocated to index 0 by swapping it with whatever
    /// element sits there; associativity is checked on every triple for
    /// `n <= 512` and on a fixed-seed sample above that.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        Self::from_table_seeded(rows, DEFAULT_SEED)
    }

    pub fn from_table_seeded(rows: &[Vec<usize>], seed: u64) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::NotAGroup("empty table".into()));
        }
        if n > MAX_ORDER {
            return Err(GroupError::SizeCeiling(n, MAX_ORDER));
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotAGroup(format!("row {r} has {} entries, expected {n}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= n) {
                return Err(GroupError::NotAGroup(format!("row {r} contains index {bad} >= {n}")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|b| rows[e][b] == b && rows[b][e] == b))
            .ok_or_else(|| GroupError::NotAGroup("no two-sided identity".into()))?;
        // swap labels 0 and identity
        let relabel = |x: usize| {
            if x == identity {
                0
            } else if x == 0 {
                identity
            } else {
                x
            }
        };
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[relabel(a) * n + relabel(b)] = relabel(rows[a][b]) as u32;
            }
        }
        let mut seen = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                let v = table[a * n + b] as usize;
                if seen[v] == a {
                    return Err(GroupError::NotAGroup(format!("row {a} repeats entry {v}")));
                }
                seen[v] = a;
            }
        }
        seen.fill(usize::MAX);
        for b in 0..n {
            for a in 0..n {
                let v = table[a * n + b] as usize;
                if seen[v] == b {
                    return Err(GroupError::NotAGroup(format!("column {b} repeats entry {v}")));
                }
                seen[v] = b;
            }
        }
        let mul = |a: usize, b: usize| table[a * n + b] as usize;
        if n <= FULL_ASSOC_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = mul(a, b);
                    for c in 0..n {
                        if mul(ab, c) != mul(a, mul(b, c)) {
                            return Err(GroupError::NotAGroup(format!("({a}*{b})*{c} != {a}*({b}*{c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..ASSOC_SAMPLES {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                    return Err(GroupError::NotAGroup(format!("({a}*{b})*{c} != {a}*({b}*{c})")));
                }
            }
        }
        Ok(Self::from_raw(n, table))
    }

    /// Builds a group from a table that is associative by construction.
    ///
    /// Only the cheap checks run (identity at 0, inverses exist). Used by the
    /// structural constructors.
    pub(crate) fn from_raw(n: usize, table: Vec<u32>) -> Self {
        debug_assert_eq!(table.len(), n * n);
        debug_assert!((0..n).all(|b| table[b] as usize == b && table[b * n] as usize == b));
        let mut inv = vec![u32::MAX; n];
        for a in 0..n {
            let row = &table[a * n..(a + 1) * n];
            let b = row.iter().position(|&v| v == 0).expect("every element has an inverse");
            inv[a] = b as u32;
        }
        let mut ord = vec![0u32; n];
        for a in 0..n {
            let mut k = 1u32;
            let mut x = a;
            while x != 0 {
                x = table[x * n + a] as usize;
                k += 1;
            }
            ord[a] = k;
        }
        let mut data = GroupData {
            n,
            table,
            inv,
            ord,
            gens: Vec::new(),
            labels: None,
            meta: Vec::new(),
            words: WordCache::default(),
        };
        data.gens = greedy_generators(&data);
        FiniteGroup(Arc::new(data))
    }

    pub(crate) fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order());
        Arc::make_mut(&mut self.0).labels = Some(labels);
        self
    }

    /// Replaces the distinguished generator list. Panics if `gens` does not generate.
    pub(crate) fn with_gens(mut self, gens: Vec<usize>) -> Self {
        assert_eq!(self.closure(&gens).len(), self.order(), "generator list does not generate");
        Arc::make_mut(&mut self.0).gens = gens;
        self
    }

    /// Attaches (or replaces) a metadata entry, serialized as a `# key: value` line.
    pub fn with_meta(mut self, key: &str, value: &str) -> Self {
        let data = Arc::make_mut(&mut self.0);
        if let Some(slot) = data.meta.iter_mut().find(|(k, _)| k == key) {
            slot.1 = value.to_string();
        } else {
            data.meta.push((key.to_string(), value.to_string()));
        }
        self
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.0.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.0.table[a * self.0.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.0.inv[a] as usize
    }

    /// Order of the element `a`.
    #[inline]
    pub fn elem_order(&self, a: usize) -> usize {
        self.0.ord[a] as usize
    }

    /// Row `a` of the multiplication table.
    pub fn row(&self, a: usize) -> &[u32] {
        let n = self.0.n;
        &self.0.table[a * n..(a + 1) * n]
    }

    pub fn gens(&self) -> &[usize] {
        &self.0.gens
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.0.labels.as_deref()
    }

    pub fn label(&self, a: usize) -> String {
        match &self.0.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn meta(&self) -> &[(String, String)] {
        &self.0.meta
    }

    pub fn meta_value(&self, key: &str) -> Option<&str> {
        self.0.meta.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// Recipe string recorded by the recipe evaluator, if any.
    pub fn recipe(&self) -> Option<&str> {
        self.meta_value("recipe")
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        let k = k % self.elem_order(a);
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    /// Commutator `[a,b] = a⁻¹b⁻¹ab`.
    pub fn comm(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    /// Conjugate `a^g = g⁻¹ag`.
    pub fn conj(&self, a: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), a), g)
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.gens();
        g.iter().enumerate().all(|(i, &a)| g[i + 1..].iter().all(|&b| self.commutes(a, b)))
    }

    pub fn involutions(&self) -> Vec<usize> {
        (0..self.order()).filter(|&a| self.elem_order(a) == 2).collect()
    }

    pub fn order_profile(&self) -> OrderProfile {
        let mut p = OrderProfile::new();
        for a in 0..self.order() {
            *p.entry(self.elem_order(a)).or_default() += 1;
        }
        p
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        (0..self.order()).map(|a| self.elem_order(a)).fold(1, lcm)
    }

    /// The `(order, abelian, order profile)` triple used to tell small groups apart.
    pub fn fingerprint(&self) -> Fingerprint {
        Fingerprint {
            order: self.order(),
            abelian: self.is_abelian(),
            profile: self.order_profile(),
        }
    }

    /// Checks every structural invariant; used by tests and by the loaders.
    pub fn validate(&self) -> Result<(), GroupError> {
        let n = self.order();
        let rows: Vec<Vec<usize>> = (0..n).map(|a| self.row(a).iter().map(|&v| v as usize).collect()).collect();
        let again = Self::from_table(&rows)?;
        if again.0.table != self.0.table {
            return Err(GroupError::NotAGroup("identity is not at index 0".into()));
        }
        if self.closure(self.gens()).len() != n {
            return Err(GroupError::NotAGroup("generator list does not generate".into()));
        }
        Ok(())
    }

    /// Returns the cached value for `gens`, building (and caching) it on first use.
    pub(crate) fn cached_words<T: Send + Sync + 'static>(
        &self,
        gens: &[usize],
        build: impl FnOnce() -> Option<T>,
    ) -> Option<Arc<T>> {
        if let Some(hit) = self.0.words.0.lock().unwrap().get(gens) {
            return hit.clone().downcast::<T>().ok();
        }
        let value = Arc::new(build()?);
        self.0.words.0.lock().unwrap().insert(gens.to_vec(), value.clone());
        Some(value)
    }

    pub(crate) fn table_eq(&self, other: &FiniteGroup) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.table == other.0.table
    }

    pub(crate) fn raw_table(&self) -> &[u32] {
        &self.0.table
    }

    /// Prime power decomposition `(p, k)` with `n = p^k`, if `n > 1` is a prime power.
    pub fn prime_power(&self) -> Option<(usize, u32)> {
        prime_power(self.order())
    }

    pub(crate) fn warn_if_large(&self, op: &str) {
        if self.order() > WARN_ORDER {
            log::warn!("{op} on a group of order {} (above {WARN_ORDER})", self.order());
        }
    }
}

/// Order, commutativity and element-order census of a group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub order: usize,
    pub abelian: bool,
    pub profile: OrderProfile,
}

impl Fingerprint {
    pub fn new(order: usize, abelian: bool, profile: &[(usize, usize)]) -> Self {
        Fingerprint { order, abelian, profile: profile.iter().copied().collect() }
    }
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {{", self.order, if self.abelian { "ab" } else { "non-ab" })?;
        for (i, (o, c)) in self.profile.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{o}:{c}")?;
        }
        write!(f, "}})")
    }
}

fn greedy_generators(d: &GroupData) -> Vec<usize> {
    let n = d.n;
    let mut inside = vec![false; n];
    inside[0] = true;
    let mut members = vec![0usize];
    let mut gens = Vec::new();
    // prefer high-order elements so that the list stays short
    let mut order: Vec<usize> = (1..n).collect();
    order.sort_by(|&a, &b| d.ord[b].cmp(&d.ord[a]).then(a.cmp(&b)));
    for g in order {
        if members.len() == n {
            break;
        }
        if inside[g] {
            continue;
        }
        gens.push(g);
        subgroup::extend_closure(n, &d.table, &mut inside, &mut members, &gens, g, None);
    }
    gens
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

pub fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

pub fn prime_power(n: usize) -> Option<(usize, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d)).unwrap();
    let mut m = n;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

/// Largest power of `p` dividing `n`.
pub fn p_part(n: usize, p: usize) -> usize {
    let mut m = n;
    let mut part = 1;
    while m.is_multiple_of(p) {
        m /= p;
        part *= p;
    }
    part
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> Vec<Vec<usize>> {
        (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
    }

    #[test]
    fn trivial_table() {
        let g = FiniteGroup::from_table(&[vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.exponent(), 1);
        assert!(g.gens().is_empty());
    }

    #[test]
    fn z4_profile() {
        let g = FiniteGroup::from_table(&z(4)).unwrap();
        let p: Vec<_> = g.order_profile().into_iter().collect();
        assert_eq!(p, vec![(1, 1), (2, 1), (4, 2)]);
    }

    #[test]
    fn relabels_identity() {
        // the only group of order 2, written with the identity at index 1
        let g = FiniteGroup::from_table(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.mul(1, 1), 0);
        assert_eq!(g.elem_order(1), 2);
    }

    #[test]
    fn rejects_non_groups() {
        // constant rows
        assert!(FiniteGroup::from_table(&[vec![0, 0], vec![0, 0]]).is_err());
        // no identity
        assert!(FiniteGroup::from_table(&[vec![1, 0], vec![1, 0]]).is_err());
        // Latin square with identity that is not associative (order 5 loop)
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_table(&loop5).unwrap_err();
        assert!(matches!(err, GroupError::NotAGroup(_)), "{err}");
        assert!(FiniteGroup::from_table(&[vec![0, 2], vec![1, 0]]).is_err());
    }

    #[test]
    fn number_theory_helpers() {
        assert_eq!(prime_power(64), Some((2, 6)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(p_part(3072, 2), 1024);
        assert_eq!(p_part(3072, 3), 3);
        assert!(is_prime(3) && !is_prime(9) && !is_prime(1));
    }
}
