//! Exact integrality of 3-valent Cayley graphs.
//!
//! A 3-regular graph has all its eigenvalues in `[-3, 3]`, and eigenspaces of
//! distinct eigenvalues are independent. So `Σ_{k=-3..3} nullity(A - kI) ≤ n`
//! with equality exactly when every eigenvalue is an integer. Nullities are
//! computed over the rationals by fraction-free elimination.

mod nullity;

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::group::FiniteGroup;

pub use nullity::{bareiss_rank, integer_nullity};

/// Default order limit for the spectral routines.
pub const SPECTRAL_CEILING: usize = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpectraError {
    #[error("group of order {order} exceeds the spectral ceiling {limit}")]
    SizeCeiling { order: usize, limit: usize },
    #[error("{0:?} is not a valid 3-element connection set")]
    BadConnectionSet(Vec<usize>),
}

/// An inverse-closed 3-subset of `G \ {1}`, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConnectionSet {
    elems: [usize; 3],
}

impl ConnectionSet {
    pub fn new(g: &FiniteGroup, elems: [usize; 3]) -> Result<Self, SpectraError> {
        let mut e = elems;
        e.sort_unstable();
        let bad = || SpectraError::BadConnectionSet(elems.to_vec());
        if e[0] == 0 || e[0] == e[1] || e[1] == e[2] || e[2] >= g.order() {
            return Err(bad());
        }
        if e.iter().any(|&x| !e.contains(&g.inv(x))) {
            return Err(bad());
        }
        Ok(ConnectionSet { elems: e })
    }

    pub fn elems(&self) -> [usize; 3] {
        self.elems
    }
}

impl fmt::Display for ConnectionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.elems;
        write!(f, "{a},{b},{c}")
    }
}

/// All connection sets in lexicographic order: three involutions, or an
/// involution together with a pair `{g, g⁻¹}` with `o(g) > 2`.
pub fn enumerate_3_subsets(g: &FiniteGroup) -> Vec<ConnectionSet> {
    let invols = g.involutions();
    let pairs: Vec<usize> = (1..g.order()).filter(|&x| g.elem_order(x) > 2 && x < g.inv(x)).collect();
    let mut out = Vec::new();
    for (i, &a) in invols.iter().enumerate() {
        for (j, &b) in invols.iter().enumerate().skip(i + 1) {
            for &c in &invols[j + 1..] {
                out.push(ConnectionSet { elems: [a, b, c] });
            }
        }
    }
    for &t in &invols {
        for &x in &pairs {
            let mut e = [t, x, g.inv(x)];
            e.sort_unstable();
            out.push(ConnectionSet { elems: e });
        }
    }
    out.sort();
    out
}

/// `A[g][h] = 1` iff `h·g⁻¹ ∈ X`, i.e. the edges are `{g, xg}`.
pub fn cayley_adjacency(g: &FiniteGroup, x: &ConnectionSet) -> Vec<Vec<i64>> {
    let n = g.order();
    let mut a = vec![vec![0i64; n]; n];
    for (v, row) in a.iter_mut().enumerate() {
        for &s in &x.elems {
            row[g.mul(s, v)] = 1;
        }
    }
    a
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumReport {
    pub n: usize,
    pub x: ConnectionSet,
    /// `mult[k + 3]` is the multiplicity of eigenvalue `k`.
    pub mult: [usize; 7],
    pub nullity_sum: usize,
    pub integral: bool,
}

impl SpectrumReport {
    pub fn multiplicity(&self, k: i64) -> usize {
        assert!((-3..=3).contains(&k));
        self.mult[(k + 3) as usize]
    }
}

impl fmt::Display for SpectrumReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.mult.iter().map(|m| m.to_string()).collect();
        write!(f, "spectrum n={} X={} m[-3..3]={} integral={}", self.n, self.x, m.join(","), self.integral)
    }
}

fn check_ceiling(g: &FiniteGroup, ceiling: usize) -> Result<(), SpectraError> {
    if g.order() > ceiling {
        return Err(SpectraError::SizeCeiling { order: g.order(), limit: ceiling });
    }
    Ok(())
}

/// Eigenvalue multiplicities of `Cay(G, X)` for `k = -3..3`, exactly.
pub fn integral_spectrum_3valent(g: &FiniteGroup, x: &ConnectionSet) -> Result<SpectrumReport, SpectraError> {
    integral_spectrum_with_ceiling(g, x, SPECTRAL_CEILING)
}

pub fn integral_spectrum_with_ceiling(
    g: &FiniteGroup,
    x: &ConnectionSet,
    ceiling: usize,
) -> Result<SpectrumReport, SpectraError> {
    check_ceiling(g, ceiling)?;
    let n = g.order();
    let a = cayley_adjacency(g, x);
    let mut mult = [0usize; 7];
    for (slot, k) in mult.iter_mut().zip(-3i64..=3) {
        let mut m = a.clone();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] -= k;
        }
        *slot = integer_nullity(&m);
    }
    let nullity_sum: usize = mult.iter().sum();
    debug_assert!(nullity_sum <= n);
    Ok(SpectrumReport { n, x: x.clone(), mult, nullity_sum, integral: nullity_sum == n })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralVerdict {
    pub member: bool,
    pub sets: usize,
    /// Connection sets actually diagonalised after merging conjugates.
    pub distinct_sets: usize,
    /// The first non-integral connection set in enumeration order.
    pub witness: Option<SpectrumReport>,
}

impl fmt::Display for SpectralVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a3-spectral member={} sets={} distinct={}", self.member, self.sets, self.distinct_sets)?;
        if let Some(w) = &self.witness {
            write!(f, " witness: {w}")?;
        }
        Ok(())
    }
}

/// Smallest conjugate `t⁻¹Xt` of `X`; conjugate connection sets give
/// isomorphic Cayley graphs.
fn conjugation_key(g: &FiniteGroup, x: &ConnectionSet) -> [usize; 3] {
    (0..g.order())
        .map(|t| {
            let mut e = x.elems.map(|s| g.conj(s, t));
            e.sort_unstable();
            e
        })
        .min()
        .expect("group is non-empty")
}

/// Membership in A3 by checking every 3-valent Cayley graph.
pub fn in_a3_spectral(g: &FiniteGroup) -> Result<SpectralVerdict, SpectraError> {
    in_a3_spectral_with_ceiling(g, SPECTRAL_CEILING)
}

pub fn in_a3_spectral_with_ceiling(g: &FiniteGroup, ceiling: usize) -> Result<SpectralVerdict, SpectraError> {
    check_ceiling(g, ceiling)?;
    let sets = enumerate_3_subsets(g);
    let keys: Vec<[usize; 3]> = sets.par_iter().map(|x| conjugation_key(g, x)).collect();
    let mut reps: Vec<[usize; 3]> = Vec::new();
    let mut index: HashMap<[usize; 3], usize> = HashMap::new();
    for k in &keys {
        index.entry(*k).or_insert_with(|| {
            reps.push(*k);
            reps.len() - 1
        });
    }
    let reports: Vec<SpectrumReport> = reps
        .par_iter()
        .map(|&e| integral_spectrum_with_ceiling(g, &ConnectionSet { elems: e }, ceiling))
        .collect::<Result<_, _>>()?;
    let witness = sets.iter().zip(&keys).find_map(|(x, k)| {
        let r = &reports[index[k]];
        (!r.integral).then(|| SpectrumReport { x: x.clone(), ..r.clone() })
    });
    Ok(SpectralVerdict {
        member: !sets.is_empty() && witness.is_none(),
        sets: sets.len(),
        distinct_sets: reps.len(),
        witness,
    })
}

/// Multiplicities of the integers `-3..3` among the eigenvalues of the
/// circulant `Cay(Z_n, X)`, from `λ_j = Σ_{s∈X} cos(2πjs/n)` in floating
/// point. A cross-check only; the exact path is authoritative.
pub fn circulant_multiplicities(n: usize, x: &[usize]) -> [usize; 7] {
    let mut mult = [0usize; 7];
    for j in 0..n {
        let lambda: f64 = x
            .iter()
            .map(|&s| (2.0 * std::f64::consts::PI * (j * s % n) as f64 / n as f64).cos())
            .sum();
        let k = lambda.round();
        if (lambda - k).abs() < 1e-9 && (-3.0..=3.0).contains(&k) {
            mult[(k as i64 + 3) as usize] += 1;
        }
    }
    mult
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{builtin, cyclic, dihedral, elem_abelian};

    #[test]
    fn subset_counts() {
        assert_eq!(enumerate_3_subsets(&elem_abelian(2, 2).unwrap()).len(), 1);
        assert_eq!(enumerate_3_subsets(&dihedral(3).unwrap()).len(), 4);
        assert!(enumerate_3_subsets(&cyclic(3).unwrap()).is_empty());
        let q8 = builtin("Q8").unwrap();
        assert_eq!(enumerate_3_subsets(&q8).len(), 3);
    }

    #[test]
    fn adjacency_is_regular_and_symmetric() {
        let z6 = cyclic(6).unwrap();
        let x = ConnectionSet::new(&z6, [3, 1, 5]).unwrap();
        let a = cayley_adjacency(&z6, &x);
        for i in 0..6 {
            assert_eq!(a[i].iter().sum::<i64>(), 3);
            for j in 0..6 {
                assert_eq!(a[i][j], a[j][i]);
                // K_{3,3}: edges exactly between the two parity classes
                assert_eq!(a[i][j], ((i + j) % 2) as i64);
            }
        }
    }

    #[test]
    fn rejects_bad_sets() {
        let z8 = cyclic(8).unwrap();
        assert!(ConnectionSet::new(&z8, [0, 1, 7]).is_err());
        assert!(ConnectionSet::new(&z8, [4, 1, 6]).is_err());
        assert!(ConnectionSet::new(&z8, [4, 4, 1]).is_err());
    }

    #[test]
    fn spot_spectra() {
        let v = elem_abelian(2, 2).unwrap();
        let r = integral_spectrum_3valent(&v, &ConnectionSet::new(&v, [1, 2, 3]).unwrap()).unwrap();
        assert_eq!(r.mult, [0, 0, 3, 0, 0, 0, 1]);
        assert!(r.integral);

        let d6 = dihedral(3).unwrap();
        let r = integral_spectrum_3valent(&d6, &ConnectionSet::new(&d6, [3, 4, 5]).unwrap()).unwrap();
        assert_eq!(r.mult, [1, 0, 0, 4, 0, 0, 1]);

        let z8 = cyclic(8).unwrap();
        let r = integral_spectrum_3valent(&z8, &ConnectionSet::new(&z8, [1, 7, 4]).unwrap()).unwrap();
        assert!(!r.integral);
        assert!(r.nullity_sum < 8);
        assert_eq!(r.to_string(), "spectrum n=8 X=1,4,7 m[-3..3]=0,0,1,0,2,0,1 integral=false");
    }

    #[test]
    fn a3_spectral_small() {
        assert!(in_a3_spectral(&dihedral(3).unwrap()).unwrap().member);
        let v = in_a3_spectral(&cyclic(8).unwrap()).unwrap();
        assert!(!v.member);
        assert_eq!(v.witness.unwrap().x.elems(), [1, 4, 7]);
        assert!(in_a3_spectral(&builtin("Q8").unwrap()).unwrap().member);
        assert!(!in_a3_spectral(&cyclic(3).unwrap()).unwrap().member);
        let big = cyclic(300).unwrap();
        assert!(matches!(in_a3_spectral(&big), Err(SpectraError::SizeCeiling { .. })));
    }

    #[test]
    fn circulant_formula_agrees() {
        for n in [4usize, 6, 8, 10, 12, 16] {
            let z = cyclic(n).unwrap();
            for x in enumerate_3_subsets(&z) {
                let exact = integral_spectrum_3valent(&z, &x).unwrap();
                assert_eq!(circulant_multiplicities(n, &x.elems()), exact.mult, "n={n} X={x}");
            }
        }
    }

    #[test]
    fn trace_identities_when_integral() {
        let g = builtin("A4").unwrap();
        for x in enumerate_3_subsets(&g) {
            let r = integral_spectrum_3valent(&g, &x).unwrap();
            if r.integral {
                let trace: i64 = (-3i64..=3).map(|k| k * r.multiplicity(k) as i64).sum();
                let walks: i64 = (-3i64..=3).map(|k| k * k * r.multiplicity(k) as i64).sum();
                assert_eq!(trace, 0);
                assert_eq!(walks, 3 * g.order() as i64);
            }
        }
    }
}
