use std::collections::HashSet;

use rayon::prelude::*;

use crate::group::{Closure, FiniteGroup, Subgroup};
use crate::morphisms::{identify_minimal_nonabelian, IsoClass};

use super::AnalysisError;

pub const MINIMAL_NONABELIAN_LIMIT: usize = 4096;

/// Every proper subgroup of `h` abelian.
///
/// For a 2-generated `p`-group the maximal subgroups are the `p + 1`
/// subgroups `⟨Φ(h), u⟩` over the lines `u` of `h/Φ(h)`. Otherwise every
/// proper subgroup is a union of 2-generated proper subgroups, so it suffices
/// that each pair generating a proper subgroup commutes.
fn is_minimal_nonabelian(h: &Subgroup, x: usize, y: usize) -> bool {
    let g = h.parent();
    if h.is_abelian() {
        return false;
    }
    if let Some((p, _)) = crate::group::prime_power(h.len()) {
        let hg = h.to_group();
        let phi = h.lift(&hg.frattini_pgroup().expect("prime-power order"));
        if h.len() / phi.len() != p * p {
            // not 2-generated modulo Φ: cannot happen for h = ⟨x, y⟩
            return false;
        }
        let mut lines = vec![x];
        let mut yk = y;
        for _ in 0..p {
            lines.push(yk);
            yk = g.mul(yk, x);
        }
        // y, yx, yx², ... cover the remaining p lines
        return lines.into_iter().all(|u| {
            let mut seed = phi.members().to_vec();
            seed.push(u);
            g.closure(&seed).is_abelian()
        });
    }
    let m = h.members();
    for (i, &u) in m.iter().enumerate() {
        for &v in &m[i + 1..] {
            if !g.commutes(u, v) && g.closure(&[u, v]).len() != h.len() {
                return false;
            }
        }
    }
    true
}

/// All minimal non-abelian subgroups, each tagged `Q8`, `H16`, `H32` or `Other`,
/// sorted by member set.
pub fn minimal_nonabelian_subgroups(g: &FiniteGroup) -> Result<Vec<(Subgroup, IsoClass)>, AnalysisError> {
    let n = g.order();
    if n > MINIMAL_NONABELIAN_LIMIT {
        return Err(AnalysisError::SizeCeiling {
            op: "minimal_nonabelian_subgroups",
            order: n,
            limit: MINIMAL_NONABELIAN_LIMIT,
        });
    }
    // every minimal non-abelian group is generated by two non-commuting elements
    let per_x: Vec<Vec<(Vec<usize>, usize, usize)>> = (0..n)
        .into_par_iter()
        .map(|x| {
            let mut local = HashSet::new();
            let mut out = Vec::new();
            for y in x + 1..n {
                if g.commutes(x, y) {
                    continue;
                }
                let h = g.closure(&[x, y]);
                if local.insert(h.members().to_vec()) {
                    out.push((h.members().to_vec(), x, y));
                }
            }
            out
        })
        .collect();
    let mut seen = HashSet::new();
    let mut candidates = Vec::new();
    for (members, x, y) in per_x.into_iter().flatten() {
        if seen.insert(members.clone()) {
            candidates.push((members, x, y));
        }
    }
    let mut found: Vec<(Subgroup, IsoClass)> = candidates
        .into_par_iter()
        .filter_map(|(members, x, y)| {
            let h = g.subgroup_from_set(&members).expect("closure is a subgroup");
            is_minimal_nonabelian(&h, x, y).then(|| {
                let tag = identify_minimal_nonabelian(&h.fingerprint());
                (h, tag)
            })
        })
        .collect();
    found.sort_by(|a, b| a.0.members().cmp(b.0.members()));
    Ok(found)
}

/// `true` iff no two elements of order 4 generate a copy of `Q8`. Complete,
/// because `Q8` is generated by any two of its non-commuting elements of order 4.
pub fn no_q8_check(k: &FiniteGroup) -> bool {
    let q8 = IsoClass::Q8.fingerprint().expect("Q8 has a fingerprint");
    let fours: Vec<usize> = (0..k.order()).filter(|&x| k.elem_order(x) == 4).collect();
    !fours.par_iter().enumerate().any(|(i, &x)| {
        fours[i + 1..].iter().any(|&y| {
            !k.commutes(x, y)
                && k.mul(x, x) == k.mul(y, y)
                && matches!(k.closure_capped(&[x, y], Some(8)), Closure::Within(h) if &h.fingerprint() == q8)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{builtin, dihedral, elem_abelian};

    #[test]
    fn quaternion_is_its_own_minimal_subgroup() {
        let q8 = builtin("Q8").unwrap();
        let found = minimal_nonabelian_subgroups(&q8).unwrap();
        assert_eq!(found.len(), 1);
        assert!(found[0].0.is_whole());
        assert_eq!(found[0].1, IsoClass::Q8);
    }

    #[test]
    fn abelian_has_none() {
        assert!(minimal_nonabelian_subgroups(&elem_abelian(2, 3).unwrap()).unwrap().is_empty());
    }

    #[test]
    fn non_p_groups_use_the_pair_criterion() {
        // S3 is minimal non-abelian; in S4 the copies of S3 and D8 are not all minimal
        let s3 = dihedral(3).unwrap();
        let found = minimal_nonabelian_subgroups(&s3).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].1, IsoClass::Other);
        let s4 = builtin("S4").unwrap();
        let found = minimal_nonabelian_subgroups(&s4).unwrap();
        // four copies of S3, three of D8, and A4
        let orders: Vec<usize> = found.iter().map(|(h, _)| h.len()).collect();
        assert_eq!(orders.iter().filter(|&&o| o == 6).count(), 4);
        assert_eq!(orders.iter().filter(|&&o| o == 8).count(), 3);
        assert_eq!(orders.iter().filter(|&&o| o == 12).count(), 1);
    }

    #[test]
    fn q8_detection() {
        assert!(!no_q8_check(&builtin("Q8").unwrap()));
        assert!(no_q8_check(&dihedral(4).unwrap()));
        assert!(!no_q8_check(&builtin("U(2)").unwrap()));
        assert!(no_q8_check(&builtin("H16").unwrap()));
    }
}
