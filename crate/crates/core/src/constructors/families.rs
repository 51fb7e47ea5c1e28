//! The four families of non-nilpotent groups with property (P).

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::group::FiniteGroup;
use crate::morphisms::{automorphism_from_images, find_order3_fpf, verify_frobenius, AutomorphismMap};

use super::builtin::{builtin, presentation, remark_action, u_group_phi};
use super::su3::su3_sylow2;
use super::{cyclic, dicyclic, direct_product, elem_abelian, semidirect_product, BuildError};

/// `Dic(Z3^m × Z2) × Z2^n`, of order `4·3^m·2^n`.
pub fn family_a(m: usize, n: usize) -> Result<FiniteGroup, BuildError> {
    if m == 0 {
        return Err(BuildError::BadArgument("family (a) needs m >= 1".into()));
    }
    let a = direct_product(&elem_abelian(3, m)?, &cyclic(2)?)?;
    let dic = dicyclic(&a)?;
    if n == 0 {
        return Ok(dic);
    }
    direct_product(&dic, &elem_abelian(2, n)?)
}

/// `(U × V) ⋊ ⟨z⟩` with `V = (Z2²)^n_blocks`. On each block `z` acts by
/// `a ↦ b ↦ ab`; on `U` it acts by `u_aut` (identity when `None`).
///
/// The kernel `U × V` occupies the first `|U|·|V|` indices, the pair `(u, v)`
/// sitting at `u·|V| + v`, and `z` is the next index.
pub fn family_b(u: &FiniteGroup, u_aut: Option<&AutomorphismMap>, n_blocks: usize) -> Result<FiniteGroup, BuildError> {
    if n_blocks == 0 {
        return Err(BuildError::BadArgument("family (b) needs at least one block".into()));
    }
    if u.order() > 1 && (u.prime_power().map(|(p, _)| p) != Some(3) || u.exponent() != 3) {
        return Err(BuildError::BadUGroup(format!("order {} exponent {}", u.order(), u.exponent())));
    }
    let identity = AutomorphismMap::identity(u);
    let u_aut = u_aut.unwrap_or(&identity);
    if !u_aut.group().table_eq(u) {
        return Err(BuildError::BadAction("automorphism of U belongs to another group".into()));
    }
    if 3 % u_aut.order() != 0 {
        return Err(BuildError::BadAction(format!("automorphism of U has order {}", u_aut.order())));
    }
    let v = elem_abelian(2, 2 * n_blocks)?;
    let kernel = direct_product(u, &v)?;
    let nv = v.order();
    let bits = 2 * n_blocks;
    // digit 2i is the a-coordinate of block i, digit 2i+1 its b-coordinate;
    // the leftmost digit is the most significant bit of the index
    let act_v = |x: usize| -> usize {
        let mut out = 0;
        for i in 0..n_blocks {
            let a = (x >> (bits - 1 - 2 * i)) & 1;
            let b = (x >> (bits - 2 - 2 * i)) & 1;
            out |= b << (bits - 1 - 2 * i);
            out |= (a ^ b) << (bits - 2 - 2 * i);
        }
        out
    };
    let perm: Vec<usize> = (0..kernel.order()).map(|x| u_aut.apply(x / nv) * nv + act_v(x % nv)).collect();
    let z = AutomorphismMap::new(&kernel, perm)?;
    let g = semidirect_product(&kernel, &z, 3)?;
    let zi = kernel.order();
    let uz: Vec<usize> = (0..u.order()).map(|x| x * nv).chain(std::iter::once(zi)).collect();
    let uz = g.closure(&uz);
    if uz.exponent() != 3 {
        return Err(BuildError::BadAction(format!("<U, z> has exponent {}", uz.exponent())));
    }
    for i in 0..n_blocks {
        let a = 1 << (bits - 1 - 2 * i);
        let b = 1 << (bits - 2 - 2 * i);
        let block = g.closure(&[a, b, zi]);
        if block.fingerprint() != builtin("A4")?.fingerprint() {
            return Err(BuildError::BadAction(format!("<V_{}, z> is not A4", i + 1)));
        }
    }
    Ok(g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KernelName {
    H64,
    K256,
    K1024,
}

impl FromStr for KernelName {
    type Err = BuildError;
    fn from_str(s: &str) -> Result<Self, BuildError> {
        match s.trim() {
            "H64" => Ok(KernelName::H64),
            "K256" => Ok(KernelName::K256),
            "K1024" => Ok(KernelName::K1024),
            other => Err(BuildError::UnknownKernel(other.to_string())),
        }
    }
}

impl fmt::Display for KernelName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KernelName::H64 => "H64",
            KernelName::K256 => "K256",
            KernelName::K1024 => "K1024",
        })
    }
}

/// Images of the generators `a, b, c, d` of `H64` under the first
/// fixed-point-free automorphism of order 3 found by [`find_order3_fpf`].
/// Regenerate with `icayley fpf "builtin(H64)"` if the presentation or the
/// search order ever changes; [`h64_fpf`] falls back to the search when the
/// table no longer certifies.
const H64_FPF_IMAGES: [usize; 4] = [51, 32, 13, 8];

/// `H64` with an order-3 fixed-point-free automorphism.
pub fn h64_fpf() -> Result<(FiniteGroup, AutomorphismMap), BuildError> {
    static CACHE: OnceLock<(FiniteGroup, AutomorphismMap)> = OnceLock::new();
    if let Some(hit) = CACHE.get() {
        return Ok(hit.clone());
    }
    let ct = presentation("H64")?;
    let k = ct.compile()?;
    let gens: Vec<usize> = (0..4).map(|i| ct.x(i)).collect();
    let cached = automorphism_from_images(&k, &gens, &H64_FPF_IMAGES)
        .ok()
        .filter(|z| z.order() == 3 && z.is_fixed_point_free());
    let z = match cached {
        Some(z) => z,
        None => {
            log::info!("cached H64 automorphism rejected; searching");
            find_order3_fpf(&k)?.ok_or_else(|| BuildError::NoFpfFound("H64".into()))?
        }
    };
    Ok(CACHE.get_or_init(|| (k, z)).clone())
}

/// The kernel with its order-3 fixed-point-free automorphism.
pub fn frobenius_kernel(kernel: KernelName) -> Result<(FiniteGroup, AutomorphismMap), BuildError> {
    match kernel {
        KernelName::H64 => h64_fpf(),
        KernelName::K256 => remark_action("K256"),
        KernelName::K1024 => remark_action("K1024"),
    }
}

/// The Frobenius group `K ⋊ ⟨z⟩` of order `3|K|`.
pub fn family_c(kernel: KernelName) -> Result<FiniteGroup, BuildError> {
    let (k, z) = frobenius_kernel(kernel)?;
    if !verify_frobenius(&k, &z, 3).frobenius {
        return Err(BuildError::NoFpfFound(kernel.to_string()));
    }
    semidirect_product(&k, &z, 3)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoreName {
    U(usize),
    Su3(usize),
}

impl FromStr for CoreName {
    type Err = BuildError;
    fn from_str(s: &str) -> Result<Self, BuildError> {
        let s = s.trim();
        let bad = || BuildError::UnknownCore(s.to_string());
        let (head, rest) = s.split_once('(').ok_or_else(bad)?;
        let n: usize = rest.strip_suffix(')').ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
        match head.trim() {
            "U" => Ok(CoreName::U(n)),
            "SU3" => Ok(CoreName::Su3(n)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for CoreName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoreName::U(n) => write!(f, "U({n})"),
            CoreName::Su3(n) => write!(f, "SU3({n})"),
        }
    }
}

/// The special 2-group `U` of the core with its order-3 automorphism.
pub fn family_d_core(core: CoreName) -> Result<(FiniteGroup, AutomorphismMap), BuildError> {
    match core {
        CoreName::U(n) => u_group_phi(n),
        CoreName::Su3(n) => {
            let s = su3_sylow2(n)?;
            Ok((s.group, s.z))
        }
    }
}

/// `(U ⋊ ⟨z⟩) × Z2^m`.
pub fn family_d(core: CoreName, m: usize) -> Result<FiniteGroup, BuildError> {
    let (u, z) = family_d_core(core)?;
    let fix = z.fix();
    let centre = u.center();
    if fix != centre || u.omega1() != centre {
        return Err(BuildError::FixedPointMismatch(format!(
            "|fix(z)| = {}, |Z(U)| = {}, |Ω1(U)| = {}",
            fix.len(),
            centre.len(),
            u.omega1().len()
        )));
    }
    let g = semidirect_product(&u, &z, 3)?;
    if m == 0 {
        return Ok(g);
    }
    direct_product(&g, &elem_abelian(2, m)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphisms::SL23_FINGERPRINT;

    #[test]
    fn family_a_orders() {
        assert_eq!(family_a(1, 0).unwrap().order(), 12);
        assert_eq!(family_a(1, 1).unwrap().order(), 24);
        assert_eq!(family_a(2, 0).unwrap().order(), 36);
        assert_eq!(family_a(1, 0).unwrap().involutions().len(), 1);
    }

    #[test]
    fn family_b_small_cases() {
        let a4 = family_b(&cyclic(1).unwrap(), None, 1).unwrap();
        assert_eq!(a4.fingerprint(), builtin("A4").unwrap().fingerprint());
        assert_eq!(family_b(&cyclic(3).unwrap(), None, 1).unwrap().order(), 36);
        let h = family_b(&builtin("Heis27").unwrap(), None, 1).unwrap();
        assert_eq!(h.order(), 324);
        assert!(!h.sylow(3).is_abelian());
        assert!(matches!(family_b(&cyclic(9).unwrap(), None, 1), Err(BuildError::BadUGroup(_))));
        assert!(matches!(family_b(&cyclic(2).unwrap(), None, 1), Err(BuildError::BadUGroup(_))));
    }

    #[test]
    fn family_c_h64() {
        let g = family_c(KernelName::H64).unwrap();
        assert_eq!(g.order(), 192);
        let (_, z) = h64_fpf().unwrap();
        assert_eq!(z.order(), 3);
        assert!(z.is_fixed_point_free());
        // the in-source table is the first map in search order
        let k = builtin("H64").unwrap();
        let found = find_order3_fpf(&k).unwrap().unwrap();
        assert_eq!(found.perm(), z.perm());
    }

    #[test]
    fn family_d_small() {
        let g = family_d(CoreName::U(1), 0).unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(g.fingerprint(), *SL23_FINGERPRINT);
        assert_eq!(family_d(CoreName::U(2), 0).unwrap().order(), 384);
        assert_eq!(family_d(CoreName::U(1), 2).unwrap().order(), 96);
    }

    #[test]
    fn names_parse() {
        assert_eq!("U(2)".parse::<CoreName>().unwrap(), CoreName::U(2));
        assert_eq!("SU3(1)".parse::<CoreName>().unwrap(), CoreName::Su3(1));
        assert!("V(1)".parse::<CoreName>().is_err());
        assert_eq!("K256".parse::<KernelName>().unwrap(), KernelName::K256);
        assert!("K512".parse::<KernelName>().is_err());
    }
}
