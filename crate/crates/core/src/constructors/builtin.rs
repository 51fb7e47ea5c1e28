//! Named groups. The 2-groups are transcribed from their presentations into
//! [`CTPresentation`] data; generator `x_i` of the presentation is element
//! [`CTPresentation::x`]`(i)` of the compiled group.

use crate::group::FiniteGroup;
use crate::morphisms::{automorphism_from_images, AutomorphismMap};

use super::{cyclic, dihedral, direct_power, perm_group, semidirect_product, BuildError, CTPresentation};

/// Names accepted by [`builtin`] without a parameter.
pub const BUILTIN_NAMES: &[&str] =
    &["Q8", "H16", "H32", "H32star", "H64", "K256", "K1024", "Heis27", "A4", "S4", "D8", "D12"];

/// Builds a named group. Parameterised names are written `U(n)` and `W(m)`.
pub fn builtin(name: &str) -> Result<FiniteGroup, BuildError> {
    let name = name.trim();
    if let Some(arg) = parse_call(name, "U") {
        return u_group(arg?);
    }
    if let Some(arg) = parse_call(name, "W") {
        return w_group(arg?);
    }
    let g = match name {
        "Q8" => presentation("Q8")?.compile()?,
        "H16" | "H32" | "H32star" | "H64" | "K256" | "K1024" | "Heis27" => presentation(name)?.compile()?,
        "A4" => perm_group(&[vec![1, 0, 3, 2], vec![1, 2, 0, 3]])?,
        "S4" => perm_group(&[vec![1, 0, 2, 3], vec![1, 2, 3, 0]])?,
        "D8" => dihedral(4)?,
        "D12" => dihedral(6)?,
        _ => return Err(BuildError::UnknownName(name.to_string())),
    };
    Ok(g)
}

fn parse_call(name: &str, head: &str) -> Option<Result<usize, BuildError>> {
    let rest = name.strip_prefix(head)?.trim_start();
    let inner = rest.strip_prefix('(')?.strip_suffix(')')?;
    Some(inner.trim().parse().map_err(|_| BuildError::UnknownName(name.to_string())))
}

/// Central-type data for the fixed-size 2-groups and `Heis27`.
pub(crate) fn presentation(name: &str) -> Result<CTPresentation, BuildError> {
    let ct = match name {
        // i² = j² = t, [i, j] = t
        "Q8" => {
            let mut ct = CTPresentation::new(2, 2, 1).with_names(&["i", "j", "t"]);
            ct.set_power(0, &[1]).set_power(1, &[1]).set_comm(0, 1, &[1]);
            ct
        }
        // a⁴ = b⁴ = 1, a^b = a⁻¹
        "H16" => {
            let mut ct = CTPresentation::new(2, 2, 2).with_names(&["a", "b", "a2", "b2"]);
            ct.set_power(0, &[1, 0]).set_power(1, &[0, 1]).set_comm(0, 1, &[1, 0]);
            ct
        }
        // a⁴ = b⁴ = c² = 1, [a, b] = c central
        "H32" => {
            let mut ct = CTPresentation::new(2, 2, 3).with_names(&["a", "b", "a2", "b2", "c"]);
            ct.set_power(0, &[1, 0, 0]).set_power(1, &[0, 1, 0]).set_comm(0, 1, &[0, 0, 1]);
            ct
        }
        // c² = a², [a, b] = 1, a^c = a⁻¹b², b^c = b⁻¹
        "H32star" => {
            let mut ct = CTPresentation::new(2, 3, 2).with_names(&["a", "b", "c", "a2", "b2"]);
            ct.set_power(0, &[1, 0]).set_power(1, &[0, 1]).set_power(2, &[1, 0]);
            ct.set_comm(0, 2, &[1, 1]).set_comm(1, 2, &[0, 1]);
            ct
        }
        // c² = a²b², d² = a², a^c = a⁻¹, b^c = a²b⁻¹, a^d = a⁻¹b², b^d = b⁻¹,
        // [a, b] = [c, d] = 1
        "H64" => {
            let mut ct = CTPresentation::new(2, 4, 2).with_names(&["a", "b", "c", "d", "a2", "b2"]);
            ct.set_power(0, &[1, 0]).set_power(1, &[0, 1]).set_power(2, &[1, 1]).set_power(3, &[1, 0]);
            ct.set_comm(0, 2, &[1, 0]).set_comm(1, 2, &[1, 1]);
            ct.set_comm(0, 3, &[1, 1]).set_comm(1, 3, &[0, 1]);
            ct
        }
        // a^b = a³, c^d = c³, [a, c] = [b, d] = 1, [a, d] = [b, c] = a²c²
        "K256" => {
            let mut ct = CTPresentation::new(2, 4, 4).with_names(&["a", "b", "c", "d", "a2", "b2", "c2", "d2"]);
            for i in 0..4 {
                let e = ct.unit(i);
                ct.set_power(i, &e);
            }
            ct.set_comm(0, 1, &[1, 0, 0, 0]).set_comm(2, 3, &[0, 0, 1, 0]);
            ct.set_comm(0, 3, &[1, 0, 1, 0]).set_comm(1, 2, &[1, 0, 1, 0]);
            ct
        }
        // [a, b] = u, [c, d] = v, [a, c] = [b, d] = 1, [a, d] = [b, c] = uv,
        // with u and v central
        "K1024" => {
            let mut ct = CTPresentation::new(2, 4, 6)
                .with_names(&["a", "b", "c", "d", "a2", "b2", "c2", "d2", "u", "v"]);
            for i in 0..4 {
                let e = ct.unit(i);
                ct.set_power(i, &e);
            }
            ct.set_comm(0, 1, &[0, 0, 0, 0, 1, 0]).set_comm(2, 3, &[0, 0, 0, 0, 0, 1]);
            ct.set_comm(0, 3, &[0, 0, 0, 0, 1, 1]).set_comm(1, 2, &[0, 0, 0, 0, 1, 1]);
            ct
        }
        "Heis27" => {
            let mut ct = CTPresentation::new(3, 2, 1).with_names(&["x", "y", "z"]);
            ct.set_comm(0, 1, &[1]);
            ct
        }
        _ => return Err(BuildError::UnknownName(name.to_string())),
    };
    Ok(ct)
}

/// The kernel named `K256` or `K1024` with its order-3 action
/// `a ↦ c, c ↦ (ac)⁻¹, b ↦ d, d ↦ (bd)⁻¹`.
pub fn remark_action(kernel: &str) -> Result<(FiniteGroup, AutomorphismMap), BuildError> {
    if kernel != "K256" && kernel != "K1024" {
        return Err(BuildError::UnknownKernel(kernel.to_string()));
    }
    let ct = presentation(kernel)?;
    let k = ct.compile()?;
    let [a, b, c, d] = [0, 1, 2, 3].map(|i| ct.x(i));
    let ac_inv = k.inv(k.mul(a, c));
    let bd_inv = k.inv(k.mul(b, d));
    let z = automorphism_from_images(&k, &[a, b, c, d], &[c, d, ac_inv, bd_inv])?;
    Ok((k, z))
}

pub fn u_presentation(n: usize) -> Result<CTPresentation, BuildError> {
    if n == 0 {
        return Err(BuildError::BadArgument("U(n) needs n >= 1".into()));
    }
    // 4n - 1 generators of order 2 on top of 2n of order 4
    if 4 * n - 1 > 15 {
        return Err(BuildError::SizeCeiling(1usize.checked_shl((4 * n - 1) as u32).unwrap_or(usize::MAX)));
    }
    // non-central a_1, b_1, a_2, b_2, ...; central a_1², ..., a_n², c_1, ..., c_{n-1}
    let s = 2 * n - 1;
    let mut names: Vec<String> = Vec::new();
    for i in 1..=n {
        names.push(format!("a{i}"));
        names.push(format!("b{i}"));
    }
    for i in 1..=n {
        names.push(format!("a{i}^2"));
    }
    for j in 1..n {
        names.push(format!("c{j}"));
    }
    let mut ct = CTPresentation::new(2, 2 * n, s);
    ct.names = Some(names);
    let a = |i: usize| 2 * i;
    let b = |i: usize| 2 * i + 1;
    for i in 0..n {
        let sq = ct.unit(i);
        ct.set_power(a(i), &sq).set_power(b(i), &sq).set_comm(a(i), b(i), &sq);
    }
    for i in 0..n.saturating_sub(1) {
        let c = ct.unit(n + i);
        // [a_i, b_{i+1}] = [a_{i+1}, b_i] = c_i
        ct.set_comm(a(i), b(i + 1), &c).set_comm(a(i + 1), b(i), &c);
    }
    Ok(ct)
}

/// The special 2-group `U(n)` of order `2^(4n-1)`.
pub fn u_group(n: usize) -> Result<FiniteGroup, BuildError> {
    u_presentation(n)?.compile()
}

/// `U(n)` together with `φ: a_i ↦ b_i, b_i ↦ b_i a_i⁻¹`, which has order 3 and
/// fixes exactly the centre.
pub fn u_group_phi(n: usize) -> Result<(FiniteGroup, AutomorphismMap), BuildError> {
    let ct = u_presentation(n)?;
    let g = ct.compile()?;
    let mut gens = Vec::with_capacity(2 * n);
    let mut images = Vec::with_capacity(2 * n);
    for i in 0..n {
        let (a, b) = (ct.x(2 * i), ct.x(2 * i + 1));
        gens.extend([a, b]);
        images.extend([b, g.mul(b, g.inv(a))]);
    }
    let phi = automorphism_from_images(&g, &gens, &images)?;
    Ok((g, phi))
}

/// `Z4^m ⋊ ⟨z⟩` with `z` of order 4 inverting every element of `Z4^m`.
pub fn w_group(m: usize) -> Result<FiniteGroup, BuildError> {
    if m < 2 {
        return Err(BuildError::BadArgument("W(m) needs m >= 2".into()));
    }
    let w = direct_power(&cyclic(4)?, m)?;
    let inv = AutomorphismMap::inversion(&w)?;
    semidirect_product(&w, &inv, 4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphisms::{isomorphic_bruteforce, verify_frobenius};

    #[test]
    fn orders() {
        let expect = [
            ("Q8", 8),
            ("H16", 16),
            ("H32", 32),
            ("H32star", 32),
            ("H64", 64),
            ("K256", 256),
            ("K1024", 1024),
            ("Heis27", 27),
            ("A4", 12),
            ("S4", 24),
            ("D8", 8),
            ("D12", 12),
            ("U(1)", 8),
            ("U(2)", 128),
            ("W(2)", 64),
        ];
        for (name, n) in expect {
            let g = builtin(name).unwrap();
            assert_eq!(g.order(), n, "{name}");
        }
        assert!(matches!(builtin("H128"), Err(BuildError::UnknownName(_))));
        assert!(builtin("U(x)").is_err());
        assert!(builtin("W(1)").is_err());
    }

    #[test]
    fn h64_is_special_with_centre_of_order_4() {
        let g = builtin("H64").unwrap();
        let rep = g.is_special_2group().unwrap();
        assert!(rep.special);
        assert_eq!(g.center().len(), 4);
        assert_eq!(g.exponent(), 4);
    }

    #[test]
    fn k1024_centre_is_omega1() {
        let g = builtin("K1024").unwrap();
        let z = g.center();
        assert_eq!(z.len(), 64);
        assert_eq!(g.omega1(), z);
    }

    #[test]
    fn remark_actions_are_frobenius() {
        for name in ["K256", "K1024"] {
            let (k, z) = remark_action(name).unwrap();
            assert_eq!(z.order(), 3, "{name}");
            assert!(verify_frobenius(&k, &z, 3).frobenius, "{name}");
        }
        let ct = presentation("K1024").unwrap();
        let (_, z) = remark_action("K1024").unwrap();
        let (u, v) = (ct.z(4), ct.z(5));
        assert_eq!(z.apply(u), v);
        assert_eq!(z.apply(v), ct.index_of(&[0; 4], &[0, 0, 0, 0, 1, 1]));
    }

    #[test]
    fn u1_is_quaternion() {
        let u1 = u_group(1).unwrap();
        assert!(isomorphic_bruteforce(&u1, &builtin("Q8").unwrap()).unwrap());
    }

    #[test]
    fn u_phi_fixes_the_centre() {
        for n in 1..=2 {
            let (g, phi) = u_group_phi(n).unwrap();
            assert_eq!(phi.order(), 3);
            assert_eq!(phi.fix(), g.center());
            assert_eq!(g.center().len(), 1 << (2 * n - 1));
        }
    }

    #[test]
    fn w_group_inverts() {
        let g = w_group(2).unwrap();
        let z = 16;
        for w in 0..16 {
            assert_eq!(g.conj(w, z), g.inv(w));
        }
        assert_eq!(g.elem_order(z), 4);
    }
}
