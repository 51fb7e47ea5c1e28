use std::collections::HashMap;

use crate::group::FiniteGroup;
use crate::morphisms::AutomorphismMap;

use super::gf2k::Gf2k;
use super::BuildError;

/// Sylow 2-subgroup of SU(3, q), `q = 2^(2n+1)`, with its diagonal automorphism.
#[derive(Clone, Debug)]
pub struct Su3Sylow {
    pub group: FiniteGroup,
    /// Conjugation by `Diag(λ, 1, λ)`, `λ` a primitive cube root of unity.
    pub z: AutomorphismMap,
    pub field: Gf2k,
    /// Field coordinates `(a, b)` of every element.
    pub coords: Vec<(u32, u32)>,
}

/// Builds the group for `n = 1` (order 512). Larger `n` needs [`su3_sylow2_with`].
pub fn su3_sylow2(n: usize) -> Result<Su3Sylow, BuildError> {
    su3_sylow2_with(n, false)
}

/// `allow_large` lifts the default restriction to `n = 1`; `n = 2` has order 2^15.
pub fn su3_sylow2_with(n: usize, allow_large: bool) -> Result<Su3Sylow, BuildError> {
    if n == 0 {
        return Err(BuildError::BadArgument("su3(n) needs n >= 1".into()));
    }
    let order = 1usize.checked_shl((6 * n + 3) as u32).unwrap_or(usize::MAX);
    if (n > 1 && !allow_large) || n > 2 {
        return Err(BuildError::SizeCeiling(order));
    }
    let e = (2 * n + 1) as u32; // q = 2^e
    let field = Gf2k::new(2 * e)?;
    let bar = |x: u32| field.frobenius(x, e);
    let size = field.size() as u32;
    // elements are the pairs (a, b) with a·ā = b + b̄, in lexicographic order
    let mut coords = Vec::with_capacity(order);
    for a in 0..size {
        let norm = field.mul(a, bar(a));
        for b in 0..size {
            if b ^ bar(b) == norm {
                coords.push((a, b));
            }
        }
    }
    debug_assert_eq!(coords.len(), order);
    let index: HashMap<(u32, u32), usize> = coords.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let nn = coords.len();
    let bars: Vec<u32> = (0..size).map(bar).collect();
    let mut table = vec![0u32; nn * nn];
    for (x, &(a, b)) in coords.iter().enumerate() {
        for (y, &(c, d)) in coords.iter().enumerate() {
            let prod = (a ^ c, b ^ d ^ field.mul(a, bars[c as usize]));
            table[x * nn + y] = index[&prod] as u32;
        }
    }
    let group = FiniteGroup::from_raw(nn, table)
        .with_meta("field", &format!("GF(2^{}) modulus={:#x}", field.degree(), field.modulus()));
    let lambda = (2..size)
        .find(|&l| field.pow(l, 3) == 1)
        .expect("GF(q^2) contains the cube roots of unity");
    let lambda_inv = field.inv(lambda).unwrap();
    // Diag(λ,1,λ)⁻¹ · M · Diag(λ,1,λ) scales a by λ⁻¹ and fixes b
    let perm: Vec<usize> = coords.iter().map(|&(a, b)| index[&(field.mul(lambda_inv, a), b)]).collect();
    let z = AutomorphismMap::new(&group, perm)?;
    Ok(Su3Sylow { group, z, field, coords })
}
