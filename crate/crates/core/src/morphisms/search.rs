//! Backtracking over generator images.
//!
//! A [`PartialHom`] holds a map defined on the subgroup generated by the
//! generators placed so far. Placing a new generator grows the domain by a
//! breadth-first walk that checks `f(x·g) = f(x)·f(g)` along every edge, so a
//! relation violated by the partial assignment is caught as soon as both of
//! its sides are defined.

use crate::group::FiniteGroup;

use super::{AutomorphismMap, MorphError};

const NONE: u32 = u32::MAX;

/// Default order limit for [`automorphism_group`].
pub const DEFAULT_AUT_ORDER_LIMIT: usize = 256;
/// Default order limit for [`find_order3_fpf`].
pub const DEFAULT_FPF_ORDER_LIMIT: usize = 2048;
/// Order limit for [`isomorphic_bruteforce`].
pub const ISO_ORDER_LIMIT: usize = 64;

#[derive(Clone, Copy, Default)]
struct Hooks {
    /// Reject `x ↦ x` for `x ≠ 1` (source and target are the same group).
    fixed_point_free: bool,
    /// Enforce `x·φ(x)·φ²(x) = 1`, `[x, φ(x)] = 1` and `φ³ = 1` on every
    /// chain that is fully defined.
    order3: bool,
}

struct PartialHom<'a> {
    src: &'a FiniteGroup,
    dst: &'a FiniteGroup,
    img: Vec<u32>,
    pre: Vec<u32>,
    domain: Vec<u32>,
    gens: Vec<(u32, u32)>,
    hooks: Hooks,
    explored: usize,
}

#[derive(Clone, Copy)]
struct Mark {
    domain: usize,
    gens: usize,
}

impl<'a> PartialHom<'a> {
    fn new(src: &'a FiniteGroup, dst: &'a FiniteGroup, hooks: Hooks) -> Self {
        let mut img = vec![NONE; src.order()];
        let mut pre = vec![NONE; dst.order()];
        img[0] = 0;
        pre[0] = 0;
        PartialHom { src, dst, img, pre, domain: vec![0], gens: Vec::new(), hooks, explored: 0 }
    }

    fn mark(&self) -> Mark {
        Mark { domain: self.domain.len(), gens: self.gens.len() }
    }

    fn rollback(&mut self, mark: Mark) {
        for &t in &self.domain[mark.domain..] {
            let ti = self.img[t as usize];
            self.pre[ti as usize] = NONE;
            self.img[t as usize] = NONE;
        }
        self.domain.truncate(mark.domain);
        self.gens.truncate(mark.gens);
    }

    fn image(&self, x: usize) -> Option<usize> {
        let v = self.img[x];
        (v != NONE).then_some(v as usize)
    }

    fn preimage(&self, y: usize) -> Option<usize> {
        let v = self.pre[y];
        (v != NONE).then_some(v as usize)
    }

    fn is_total(&self) -> bool {
        self.domain.len() == self.src.order()
    }

    /// `a → b → c (→ d)`: checks whatever part of the order-3 conditions is defined.
    fn chain_ok(&self, a: usize) -> bool {
        let Some(b) = self.image(a) else { return true };
        let Some(c) = self.image(b) else { return true };
        let g = self.src;
        if g.mul(g.mul(a, b), c) != 0 || !g.commutes(a, b) {
            return false;
        }
        match self.image(c) {
            Some(d) => d == a,
            None => true,
        }
    }

    fn assign(&mut self, t: usize, ti: usize) -> bool {
        if let Some(cur) = self.image(t) {
            return cur == ti;
        }
        if self.pre[ti] != NONE {
            return false;
        }
        self.img[t] = ti as u32;
        self.pre[ti] = t as u32;
        self.domain.push(t as u32);
        if self.hooks.fixed_point_free && t == ti {
            return false;
        }
        if self.hooks.order3 {
            if !self.chain_ok(t) {
                return false;
            }
            if let Some(p) = self.preimage(t) {
                if !self.chain_ok(p) {
                    return false;
                }
                if let Some(q) = self.preimage(p) {
                    if !self.chain_ok(q) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Adds the generator `x ↦ y` and closes the domain. On `false` the
    /// caller must roll back to a mark taken before the call.
    fn extend(&mut self, x: usize, y: usize) -> bool {
        self.explored += 1;
        if let Some(cur) = self.image(x) {
            return cur == y;
        }
        self.gens.push((x as u32, y as u32));
        let (src, dst) = (self.src, self.dst);
        let old = self.domain.len();
        for i in 0..old {
            let d = self.domain[i] as usize;
            let di = self.img[d] as usize;
            if !self.assign(src.mul(d, x), dst.mul(di, y)) {
                return false;
            }
        }
        let mut i = old;
        while i < self.domain.len() {
            let d = self.domain[i] as usize;
            let di = self.img[d] as usize;
            for k in 0..self.gens.len() {
                let (g, gi) = self.gens[k];
                if !self.assign(src.mul(d, g as usize), dst.mul(di, gi as usize)) {
                    return false;
                }
            }
            i += 1;
        }
        true
    }

    fn images(&self) -> Vec<usize> {
        self.img.iter().map(|&v| v as usize).collect()
    }
}

/// Generators to place in the search: a lift of a basis of `G/Φ(G)` for
/// `p`-groups (Burnside basis theorem), the group's own list otherwise.
pub fn minimal_generators(g: &FiniteGroup) -> Vec<usize> {
    if g.order() == 1 {
        return Vec::new();
    }
    if g.prime_power().is_none() {
        return g.gens().to_vec();
    }
    let phi = g.frattini_pgroup().expect("prime-power order");
    let mut chosen: Vec<usize> = Vec::new();
    let mut span = phi.clone();
    // prefer elements of large order, then small index
    let mut cands: Vec<usize> = (1..g.order()).collect();
    cands.sort_by_key(|&x| (std::cmp::Reverse(g.elem_order(x)), x));
    for x in cands {
        if span.is_whole() {
            break;
        }
        if span.contains(x) {
            continue;
        }
        chosen.push(x);
        let mut seed = phi.members().to_vec();
        seed.extend(&chosen);
        span = g.closure(&seed);
    }
    chosen
}

/// Options for [`automorphism_group`].
#[derive(Clone, Copy, Debug)]
pub struct AutSearch {
    /// Maximum number of generator placements before giving up.
    pub budget: usize,
    pub max_order: usize,
}

impl Default for AutSearch {
    fn default() -> Self {
        AutSearch { budget: 5_000_000, max_order: DEFAULT_AUT_ORDER_LIMIT }
    }
}

enum Flow {
    Continue,
    Stop,
}

struct Budget {
    limit: usize,
}

/// Depth-first enumeration of all extensions; candidates for a generator
/// come from `cands` in increasing index order.
fn enumerate(
    ph: &mut PartialHom<'_>,
    gens: &[usize],
    cands: &dyn Fn(&PartialHom<'_>, usize) -> Vec<usize>,
    forced: &dyn Fn(&PartialHom<'_>, usize, usize) -> Option<(usize, usize)>,
    budget: &Budget,
    leaf: &mut dyn FnMut(&PartialHom<'_>) -> Flow,
) -> Result<Flow, usize> {
    if ph.explored > budget.limit {
        return Err(ph.explored);
    }
    let Some(&x) = gens.iter().find(|&&x| ph.image(x).is_none()) else {
        debug_assert!(ph.is_total());
        return Ok(leaf(ph));
    };
    for y in cands(ph, x) {
        let mark = ph.mark();
        let mut ok = ph.extend(x, y);
        if ok {
            if let Some((u, v)) = forced(ph, x, y) {
                ok = ph.extend(u, v);
            }
        }
        if ok {
            if let Flow::Stop = enumerate(ph, gens, cands, forced, budget, leaf)? {
                ph.rollback(mark);
                return Ok(Flow::Stop);
            }
        }
        ph.rollback(mark);
    }
    Ok(Flow::Continue)
}

/// All automorphisms, in lexicographic order of generator-image tuples.
///
/// Candidates must preserve element order and (for `|G| > 32`) conjugacy
/// class size.
pub fn automorphism_group(g: &FiniteGroup, opts: AutSearch) -> Result<Vec<AutomorphismMap>, MorphError> {
    if g.order() > opts.max_order {
        return Err(MorphError::SizeCeiling { order: g.order(), limit: opts.max_order });
    }
    let gens = minimal_generators(g);
    let class = (g.order() > 32).then(|| g.class_sizes());
    let cands = |ph: &PartialHom<'_>, x: usize| -> Vec<usize> {
        (1..g.order())
            .filter(|&y| {
                ph.pre[y] == NONE
                    && g.elem_order(y) == g.elem_order(x)
                    && class.as_ref().is_none_or(|c| c[x] == c[y])
            })
            .collect()
    };
    let mut found = Vec::new();
    let mut ph = PartialHom::new(g, g, Hooks::default());
    let res = enumerate(&mut ph, &gens, &cands, &|_, _, _| None, &Budget { limit: opts.budget }, &mut |ph| {
        found.push(ph.images());
        Flow::Continue
    });
    if let Err(explored) = res {
        return Err(MorphError::BudgetExceeded { explored, found: found.len() });
    }
    found.into_iter().map(|perm| AutomorphismMap::new(g, perm)).collect()
}

fn fpf_search(
    g: &FiniteGroup,
    budget: usize,
    stop_at_first: bool,
) -> Result<Vec<AutomorphismMap>, MorphError> {
    if g.order() > DEFAULT_FPF_ORDER_LIMIT {
        return Err(MorphError::SizeCeiling { order: g.order(), limit: DEFAULT_FPF_ORDER_LIMIT });
    }
    if g.order() == 1 || g.prime_power().map(|(p, _)| p) != Some(2) {
        return Err(MorphError::NotTwoGroup(g.order()));
    }
    let gens = minimal_generators(g);
    let cands = |ph: &PartialHom<'_>, x: usize| -> Vec<usize> {
        (1..g.order())
            .filter(|&y| y != x && ph.pre[y] == NONE && g.elem_order(y) == g.elem_order(x) && g.commutes(x, y))
            .collect()
    };
    // φ(x) = y forces φ(y) = φ²(x) = (x·y)⁻¹
    let forced = |_: &PartialHom<'_>, x: usize, y: usize| Some((y, g.inv(g.mul(x, y))));
    let hooks = Hooks { fixed_point_free: true, order3: true };
    let mut ph = PartialHom::new(g, g, hooks);
    let mut found = Vec::new();
    let res = enumerate(&mut ph, &gens, &cands, &forced, &Budget { limit: budget }, &mut |ph| {
        found.push(ph.images());
        if stop_at_first {
            Flow::Stop
        } else {
            Flow::Continue
        }
    });
    if let Err(explored) = res {
        return Err(MorphError::BudgetExceeded { explored, found: found.len() });
    }
    found
        .into_iter()
        .map(|perm| {
            let phi = AutomorphismMap::new(g, perm)?;
            assert!(phi.order() == 3 && phi.is_fixed_point_free(), "search produced a non-fpf map");
            Ok(phi)
        })
        .collect()
}

/// First fixed-point-free automorphism of order 3 of a 2-group, in the
/// deterministic search order; `None` once the search space is exhausted.
pub fn find_order3_fpf(g: &FiniteGroup) -> Result<Option<AutomorphismMap>, MorphError> {
    find_order3_fpf_with_budget(g, 50_000_000)
}

pub fn find_order3_fpf_with_budget(g: &FiniteGroup, budget: usize) -> Result<Option<AutomorphismMap>, MorphError> {
    Ok(fpf_search(g, budget, true)?.into_iter().next())
}

/// Every fixed-point-free automorphism of order 3.
pub fn all_order3_fpf(g: &FiniteGroup, budget: usize) -> Result<Vec<AutomorphismMap>, MorphError> {
    fpf_search(g, budget, false)
}

/// Exact isomorphism test by backtracking, for groups of order at most 64.
pub fn isomorphic_bruteforce(g: &FiniteGroup, h: &FiniteGroup) -> Result<bool, MorphError> {
    for x in [g, h] {
        if x.order() > ISO_ORDER_LIMIT {
            return Err(MorphError::SizeCeiling { order: x.order(), limit: ISO_ORDER_LIMIT });
        }
    }
    if g.order() != h.order() || g.order_profile() != h.order_profile() || g.is_abelian() != h.is_abelian() {
        return Ok(false);
    }
    let gens = minimal_generators(g);
    let cands = |ph: &PartialHom<'_>, x: usize| -> Vec<usize> {
        (1..h.order()).filter(|&y| ph.pre[y] == NONE && h.elem_order(y) == g.elem_order(x)).collect()
    };
    let mut ph = PartialHom::new(g, h, Hooks::default());
    let mut found = false;
    enumerate(&mut ph, &gens, &cands, &|_, _, _| None, &Budget { limit: usize::MAX }, &mut |_| {
        found = true;
        Flow::Stop
    })
    .expect("unbounded budget");
    Ok(found)
}
