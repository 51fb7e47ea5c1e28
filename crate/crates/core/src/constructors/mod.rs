//! Group constructors: generic combinators, the class-2 central-type
//! builder, GF(2^k)-based unitary Sylow subgroups and the four families of
//! non-nilpotent groups with property (P).
//!
//! Index conventions (relied upon by serialization and by tests):
//! - `cyclic(n)`: element `k` is `g^k`.
//! - `dihedral(n)`: order `2n`; element `e·n + k` is `s^e r^k`.
//! - `elem_abelian(p,k)` and `direct_product`: lexicographic pairing, the
//!   left factor is the most significant digit.
//! - `dicyclic(A)`: `(a, ε)` sits at `ε·|A| + a`.
//! - `semidirect_product(K, α, m)`: `(k, i)` sits at `i·|K| + k`, so the
//!   kernel occupies the first `|K|` indices.

mod builtin;
mod ct;
mod families;
pub mod gf2k;
mod su3;

use std::collections::HashMap;

use thiserror::Error;

use crate::group::{FiniteGroup, GroupError, MAX_ORDER};
use crate::morphisms::{AutomorphismMap, MorphError};

pub use builtin::{builtin, remark_action, u_group, u_group_phi, u_presentation, w_group, BUILTIN_NAMES};
pub use ct::CTPresentation;
pub use families::{
    family_a, family_b, family_c, family_d, family_d_core, frobenius_kernel, h64_fpf, CoreName, KernelName,
};
pub use su3::{su3_sylow2, su3_sylow2_with, Su3Sylow};

#[derive(Debug, Error)]
pub enum BuildError {
    #[error("order {0} exceeds the size ceiling {MAX_ORDER}")]
    SizeCeiling(usize),
    #[error("bad argument: {0}")]
    BadArgument(String),
    #[error("group is not abelian")]
    NotAbelian,
    #[error("expected exactly one involution, found {0}")]
    NoUniqueInvolution(usize),
    #[error("map is not an automorphism: {0}")]
    NotAutomorphism(#[from] MorphError),
    #[error("automorphism has order {order}, which does not divide {m}")]
    OrderMismatch { order: usize, m: usize },
    #[error("permutation closure exceeds {MAX_ORDER} elements")]
    ClosureTooLarge,
    #[error("bad presentation data: {0}")]
    BadData(String),
    #[error("unknown builtin group {0:?}")]
    UnknownName(String),
    #[error("U is not a 3-group of exponent 3: {0}")]
    BadUGroup(String),
    #[error("action violates the family constraints: {0}")]
    BadAction(String),
    #[error("unknown Frobenius kernel {0:?}")]
    UnknownKernel(String),
    #[error("no fixed-point-free automorphism of order 3 found on {0}")]
    NoFpfFound(String),
    #[error("unknown family-(d) core {0:?}")]
    UnknownCore(String),
    #[error("fixed points of z differ from Z(U) = Ω1(U): {0}")]
    FixedPointMismatch(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

fn check_size(n: usize) -> Result<(), BuildError> {
    if n > MAX_ORDER {
        Err(BuildError::SizeCeiling(n))
    } else {
        Ok(())
    }
}

fn checked_mul(a: usize, b: usize) -> Result<usize, BuildError> {
    let n = a.checked_mul(b).ok_or(BuildError::SizeCeiling(usize::MAX))?;
    check_size(n)?;
    Ok(n)
}

pub fn cyclic(n: usize) -> Result<FiniteGroup, BuildError> {
    if n == 0 {
        return Err(BuildError::BadArgument("cyclic(0)".into()));
    }
    check_size(n)?;
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = ((a + b) % n) as u32;
        }
    }
    let g = FiniteGroup::from_raw(n, table);
    Ok(if n > 1 { g.with_gens(vec![1]) } else { g })
}

/// Dihedral group of order `2n` (symmetries of the regular `n`-gon).
pub fn dihedral(n: usize) -> Result<FiniteGroup, BuildError> {
    if n == 0 {
        return Err(BuildError::BadArgument("dihedral(0)".into()));
    }
    let order = checked_mul(2, n)?;
    let mut table = vec![0u32; order * order];
    for x in 0..order {
        let (e1, k1) = (x / n, x % n);
        for y in 0..order {
            let (e2, k2) = (y / n, y % n);
            // s^e1 r^k1 s^e2 r^k2 = s^(e1+e2) r^((-1)^e2 k1 + k2)
            let k = if e2 == 0 { k1 + k2 } else { n - k1 + k2 };
            table[x * order + y] = (((e1 + e2) % 2) * n + k % n) as u32;
        }
    }
    let g = FiniteGroup::from_raw(order, table);
    Ok(if n > 1 { g.with_gens(vec![1, n]) } else { g })
}

/// Elementary abelian group of order `p^k`.
pub fn elem_abelian(p: usize, k: usize) -> Result<FiniteGroup, BuildError> {
    if !crate::group::is_prime(p) {
        return Err(BuildError::BadArgument(format!("{p} is not prime")));
    }
    direct_power(&cyclic(p)?, k)
}

pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup, BuildError> {
    let (na, nb) = (a.order(), b.order());
    let n = checked_mul(na, nb)?;
    let mut table = vec![0u32; n * n];
    for x in 0..n {
        let (xa, xb) = (x / nb, x % nb);
        for y in 0..n {
            let (ya, yb) = (y / nb, y % nb);
            table[x * n + y] = (a.mul(xa, ya) * nb + b.mul(xb, yb)) as u32;
        }
    }
    let gens: Vec<usize> = a.gens().iter().map(|&g| g * nb).chain(b.gens().iter().copied()).collect();
    let mut g = FiniteGroup::from_raw(n, table);
    if !gens.is_empty() {
        g = g.with_gens(gens);
    }
    if let (Some(la), Some(lb)) = (a.labels(), b.labels()) {
        g = g.with_labels((0..n).map(|x| format!("({},{})", la[x / nb], lb[x % nb])).collect());
    }
    Ok(g)
}

/// `k`-fold direct power, expanded left to right: `g^3 = (g × g) × g`.
pub fn direct_power(g: &FiniteGroup, k: usize) -> Result<FiniteGroup, BuildError> {
    let mut acc = cyclic(1)?;
    for i in 0..k {
        acc = if i == 0 { g.clone() } else { direct_product(&acc, g)? };
    }
    Ok(acc)
}

/// Closure of the given permutations; `gens[i][x]` is the image of point `x`.
///
/// Products compose left to right: `(p·q)(x) = q(p(x))`.
pub fn perm_group(gens: &[Vec<usize>]) -> Result<FiniteGroup, BuildError> {
    let degree = gens.iter().map(Vec::len).max().unwrap_or(0);
    let mut padded = Vec::with_capacity(gens.len());
    for (i, p) in gens.iter().enumerate() {
        let mut q: Vec<usize> = p.clone();
        q.extend(p.len()..degree);
        let mut seen = vec![false; degree];
        for &x in &q {
            if x >= degree || seen[x] {
                return Err(BuildError::BadArgument(format!("generator {i} is not a permutation")));
            }
            seen[x] = true;
        }
        padded.push(q);
    }
    let id: Vec<usize> = (0..degree).collect();
    let mut elems = vec![id.clone()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
    let mut i = 0;
    while i < elems.len() {
        for g in &padded {
            let prod: Vec<usize> = elems[i].iter().map(|&x| g[x]).collect();
            if !index.contains_key(&prod) {
                if elems.len() == MAX_ORDER {
                    return Err(BuildError::ClosureTooLarge);
                }
                index.insert(prod.clone(), elems.len());
                elems.push(prod);
            }
        }
        i += 1;
    }
    let n = elems.len();
    let mut table = vec![0u32; n * n];
    let mut buf = vec![0usize; degree];
    for (a, pa) in elems.iter().enumerate() {
        for (b, pb) in elems.iter().enumerate() {
            for (slot, &x) in buf.iter_mut().zip(pa.iter()) {
                *slot = pb[x];
            }
            table[a * n + b] = index[&buf] as u32;
        }
    }
    let gen_idx: Vec<usize> = padded.iter().map(|g| index[g]).filter(|&x| x != 0).collect();
    let mut g = FiniteGroup::from_raw(n, table);
    if !gen_idx.is_empty() {
        g = g.with_gens(gen_idx);
    }
    Ok(g)
}

/// Generalized dicyclic group `Dic(A)` for abelian `A` with a unique involution `t`.
pub fn dicyclic(a: &FiniteGroup) -> Result<FiniteGroup, BuildError> {
    if !a.is_abelian() {
        return Err(BuildError::NotAbelian);
    }
    let invols = a.involutions();
    if invols.len() != 1 {
        return Err(BuildError::NoUniqueInvolution(invols.len()));
    }
    let t = invols[0];
    let m = a.order();
    let n = checked_mul(2, m)?;
    let mut table = vec![0u32; n * n];
    for x in 0..n {
        let (xa, xe) = (x % m, x / m);
        for y in 0..n {
            let (ya, ye) = (y % m, y / m);
            let (prod, e) = match (xe, ye) {
                (0, 0) => (a.mul(xa, ya), 0),
                (0, 1) => (a.mul(xa, ya), 1),
                (1, 0) => (a.mul(xa, a.inv(ya)), 1),
                _ => (a.mul(a.mul(xa, a.inv(ya)), t), 0),
            };
            table[x * n + y] = (e * m + prod) as u32;
        }
    }
    let gens: Vec<usize> = a.gens().iter().copied().chain(std::iter::once(m)).collect();
    Ok(FiniteGroup::from_raw(n, table).with_gens(gens))
}

/// `K ⋊ ⟨z⟩` with `z` of order `m` acting as `alpha`: `(k,i)(l,j) = (k·α^i(l), i+j)`.
pub fn semidirect_product(k: &FiniteGroup, alpha: &AutomorphismMap, m: usize) -> Result<FiniteGroup, BuildError> {
    if m == 0 {
        return Err(BuildError::BadArgument("semidirect product with m = 0".into()));
    }
    if alpha.group().order() != k.order() || !alpha.group().table_eq(k) {
        return Err(BuildError::NotAutomorphism(MorphError::WrongGroup));
    }
    if !m.is_multiple_of(alpha.order()) {
        return Err(BuildError::OrderMismatch { order: alpha.order(), m });
    }
    let nk = k.order();
    let n = checked_mul(nk, m)?;
    let mut powers: Vec<Vec<u32>> = vec![(0..nk as u32).collect()];
    for i in 1..m {
        let prev = &powers[i - 1];
        powers.push(prev.iter().map(|&x| alpha.apply(x as usize) as u32).collect());
    }
    let mut table = vec![0u32; n * n];
    for x in 0..n {
        let (xi, xk) = (x / nk, x % nk);
        let act = &powers[xi];
        for y in 0..n {
            let (yi, yk) = (y / nk, y % nk);
            let prod = k.mul(xk, act[yk] as usize);
            table[x * n + y] = (((xi + yi) % m) * nk + prod) as u32;
        }
    }
    let mut gens: Vec<usize> = k.gens().to_vec();
    if m > 1 {
        gens.push(nk);
    }
    let mut g = FiniteGroup::from_raw(n, table);
    if !gens.is_empty() {
        g = g.with_gens(gens);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphisms::isomorphic_bruteforce;

    fn profile(g: &FiniteGroup) -> Vec<(usize, usize)> {
        g.order_profile().into_iter().collect()
    }

    #[test]
    fn cyclic_and_dihedral() {
        assert_eq!(cyclic(1).unwrap().order(), 1);
        assert!(cyclic(0).is_err());
        let d6 = dihedral(3).unwrap();
        assert_eq!(d6.order(), 6);
        assert!(!d6.is_abelian());
        assert_eq!(profile(&d6), vec![(1, 1), (2, 3), (3, 2)]);
        assert_eq!(profile(&dihedral(4).unwrap()), vec![(1, 1), (2, 5), (4, 2)]);
        d6.validate().unwrap();
        dihedral(6).unwrap().validate().unwrap();
    }

    #[test]
    fn coprime_product_is_cyclic() {
        let g = direct_product(&cyclic(2).unwrap(), &cyclic(3).unwrap()).unwrap();
        assert!(g.is_abelian());
        assert_eq!(g.order_profile(), cyclic(6).unwrap().order_profile());
        assert!(isomorphic_bruteforce(&g, &cyclic(6).unwrap()).unwrap());
    }

    #[test]
    fn permutation_closures() {
        let c3 = perm_group(&[vec![1, 2, 0]]).unwrap();
        assert_eq!(c3.order(), 3);
        let a4 = perm_group(&[vec![1, 0, 3, 2], vec![1, 2, 0, 3]]).unwrap();
        assert_eq!(profile(&a4), vec![(1, 1), (2, 3), (3, 8)]);
        let s4 = perm_group(&[vec![1, 0, 2, 3], vec![1, 2, 3, 0]]).unwrap();
        assert_eq!(s4.order(), 24);
        s4.validate().unwrap();
        assert!(perm_group(&[vec![0, 0, 1]]).is_err());
    }

    #[test]
    fn dicyclic_groups() {
        let q8 = dicyclic(&cyclic(4).unwrap()).unwrap();
        assert_eq!(profile(&q8), vec![(1, 1), (2, 1), (4, 6)]);
        q8.validate().unwrap();
        let dic12 = dicyclic(&cyclic(6).unwrap()).unwrap();
        assert_eq!(profile(&dic12), vec![(1, 1), (2, 1), (3, 2), (4, 6), (6, 2)]);
        assert!(matches!(dicyclic(&elem_abelian(2, 2).unwrap()), Err(BuildError::NoUniqueInvolution(3))));
        assert!(matches!(dicyclic(&dihedral(3).unwrap()), Err(BuildError::NotAbelian)));
    }

    #[test]
    fn semidirect_products() {
        let v = elem_abelian(2, 2).unwrap();
        // a = 2 (digits 1,0), b = 1 (digits 0,1): a -> b -> ab
        let alpha = crate::morphisms::hom_from_images(&v, &[2, 1], &v, &[1, 3])
            .unwrap()
            .into_automorphism()
            .unwrap();
        let a4 = semidirect_product(&v, &alpha, 3).unwrap();
        assert_eq!(profile(&a4), vec![(1, 1), (2, 3), (3, 8)]);
        a4.validate().unwrap();

        let z3 = cyclic(3).unwrap();
        let inv = AutomorphismMap::new(&z3, vec![0, 2, 1]).unwrap();
        let d6 = semidirect_product(&z3, &inv, 2).unwrap();
        assert!(isomorphic_bruteforce(&d6, &dihedral(3).unwrap()).unwrap());

        let id = AutomorphismMap::identity(&v);
        let g = semidirect_product(&v, &id, 2).unwrap();
        let h = direct_product(&v, &cyclic(2).unwrap()).unwrap();
        assert!(isomorphic_bruteforce(&g, &h).unwrap());

        assert!(matches!(semidirect_product(&z3, &inv, 3), Err(BuildError::OrderMismatch { .. })));
    }

    #[test]
    fn ceiling() {
        assert!(matches!(cyclic(MAX_ORDER + 1), Err(BuildError::SizeCeiling(_))));
        let big = cyclic(200).unwrap();
        assert!(matches!(direct_product(&big, &big), Err(BuildError::SizeCeiling(_))));
    }
}
