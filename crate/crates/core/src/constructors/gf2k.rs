//! Arithmetic in GF(2^k), elements as bitmasks of polynomials of degree `< k`.

use super::BuildError;

/// The finite field GF(2^k) for `1 <= k <= 16`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gf2k {
    k: u32,
    modulus: u32,
}

/// Pinned moduli; element indexing of everything built on top depends on them.
const FIXED_MODULI: &[(u32, u32)] = &[
    // x^6 + x^4 + x^3 + x + 1
    (6, 0b101_1011),
];

impl Gf2k {
    /// Field with the pinned modulus for `k` if there is one, else the
    /// numerically smallest irreducible polynomial of degree `k`.
    pub fn new(k: u32) -> Result<Self, BuildError> {
        if !(1..=16).contains(&k) {
            return Err(BuildError::BadArgument(format!("GF(2^{k}) is out of range")));
        }
        let modulus = match FIXED_MODULI.iter().find(|(d, _)| *d == k) {
            Some(&(_, m)) => m,
            None => ((1u32 << k)..(1u32 << (k + 1)))
                .find(|&m| is_irreducible(m))
                .expect("irreducible polynomials exist in every degree"),
        };
        Self::with_modulus(k, modulus)
    }

    pub fn with_modulus(k: u32, modulus: u32) -> Result<Self, BuildError> {
        if degree(modulus) != Some(k) {
            return Err(BuildError::BadArgument(format!("modulus {modulus:#x} does not have degree {k}")));
        }
        if !is_irreducible(modulus) {
            return Err(BuildError::BadArgument(format!("modulus {modulus:#x} is reducible")));
        }
        Ok(Gf2k { k, modulus })
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn size(&self) -> usize {
        1 << self.k
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        a ^ b
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        poly_mod(clmul(a, b), self.modulus)
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.pow(a, (1u64 << self.k) - 2))
    }

    /// `a^(2^times)`.
    pub fn frobenius(&self, a: u32, times: u32) -> u32 {
        (0..times).fold(a, |x, _| self.mul(x, x))
    }
}

fn degree(p: u32) -> Option<u32> {
    (p != 0).then(|| 31 - p.leading_zeros())
}

/// Carry-less product of two polynomials.
fn clmul(a: u32, b: u32) -> u64 {
    let mut acc = 0u64;
    for i in 0..32 {
        if (b >> i) & 1 == 1 {
            acc ^= (a as u64) << i;
        }
    }
    acc
}

fn poly_mod(mut a: u64, m: u32) -> u32 {
    let dm = degree(m).unwrap();
    while a != 0 {
        let da = 63 - a.leading_zeros();
        if da < dm {
            break;
        }
        a ^= (m as u64) << (da - dm);
    }
    a as u32
}

/// Irreducibility by trial division over every polynomial of degree `1..=deg/2`.
pub fn is_irreducible(p: u32) -> bool {
    let Some(d) = degree(p) else { return false };
    if d == 0 {
        return false;
    }
    (2u32..(1u32 << (d / 2 + 1))).all(|q| poly_mod(p as u64, q) != 0)
}
