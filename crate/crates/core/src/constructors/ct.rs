use crate::group::{is_prime, FiniteGroup, MAX_ORDER};

use super::BuildError;

/// Class-2 "central-type" presentation of a `p`-group.
///
/// Generators `x_1..x_m` (non-central) and `z_1..z_s` (central, order `p`),
/// with `x_i^p = z^{sq[i]}` and `x_j·x_i = x_i·x_j·z^{comm[i][j]}` for `i < j`.
/// Every element has the unique normal form `x^e z^v` with `e ∈ (Z_p)^m`,
/// `v ∈ (Z_p)^s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CTPresentation {
    pub p: usize,
    pub m: usize,
    pub s: usize,
    /// `m` vectors of length `s`.
    pub sq: Vec<Vec<u32>>,
    /// `comm[i][j]` (only `i < j` is read), each a vector of length `s`.
    pub comm: Vec<Vec<Vec<u32>>>,
    /// Optional names for the `m + s` generators, used for element labels.
    pub names: Option<Vec<String>>,
}

impl CTPresentation {
    /// A presentation with all powers and commutators trivial.
    pub fn new(p: usize, m: usize, s: usize) -> Self {
        CTPresentation {
            p,
            m,
            s,
            sq: vec![vec![0; s]; m],
            comm: vec![vec![vec![0; s]; m]; m],
            names: None,
        }
    }

    /// Sets `x_i^p` (0-based `i`) to `z^vector`.
    pub fn set_power(&mut self, i: usize, v: &[u32]) -> &mut Self {
        self.sq[i] = v.to_vec();
        self
    }

    /// Sets the commutator vector for the pair `i < j` (0-based).
    pub fn set_comm(&mut self, i: usize, j: usize, v: &[u32]) -> &mut Self {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        self.comm[i][j] = v.to_vec();
        self
    }

    pub fn with_names(mut self, names: &[&str]) -> Self {
        self.names = Some(names.iter().map(|s| s.to_string()).collect());
        self
    }

    /// Unit vector `e_k` of length `s`.
    pub fn unit(&self, k: usize) -> Vec<u32> {
        let mut v = vec![0; self.s];
        v[k] = 1;
        v
    }

    pub fn order(&self) -> Option<usize> {
        self.p.checked_pow((self.m + self.s) as u32)
    }

    pub fn validate(&self) -> Result<(), BuildError> {
        if !is_prime(self.p) {
            return Err(BuildError::BadData(format!("p = {} is not prime", self.p)));
        }
        if self.sq.len() != self.m {
            return Err(BuildError::BadData(format!("{} power vectors for m = {}", self.sq.len(), self.m)));
        }
        let p = self.p as u32;
        for (i, v) in self.sq.iter().enumerate() {
            if v.len() != self.s || v.iter().any(|&d| d >= p) {
                return Err(BuildError::BadData(format!("power vector {} has wrong length or digit", i + 1)));
            }
        }
        if self.comm.len() != self.m || self.comm.iter().any(|row| row.len() != self.m) {
            return Err(BuildError::BadData("commutator array is not m × m".into()));
        }
        for i in 0..self.m {
            for j in i + 1..self.m {
                let v = &self.comm[i][j];
                if v.len() != self.s || v.iter().any(|&d| d >= p) {
                    return Err(BuildError::BadData(format!("commutator vector ({}, {}) malformed", i + 1, j + 1)));
                }
            }
        }
        if let Some(names) = &self.names {
            if names.len() != self.m + self.s {
                return Err(BuildError::BadData("names must cover all m + s generators".into()));
            }
        }
        match self.order() {
            Some(n) if n <= MAX_ORDER => Ok(()),
            Some(n) => Err(BuildError::SizeCeiling(n)),
            None => Err(BuildError::SizeCeiling(usize::MAX)),
        }
    }

    /// Index of the normal form `x^e z^v` (lexicographic on `(e, v)`).
    pub fn index_of(&self, e: &[u32], v: &[u32]) -> usize {
        let p = self.p;
        let ei = e.iter().fold(0usize, |acc, &d| acc * p + d as usize);
        let vi = v.iter().fold(0usize, |acc, &d| acc * p + d as usize);
        ei * p.pow(self.s as u32) + vi
    }

    /// Index of the non-central generator `x_i` (0-based).
    pub fn x(&self, i: usize) -> usize {
        let mut e = vec![0; self.m];
        e[i] = 1;
        self.index_of(&e, &vec![0; self.s])
    }

    /// Index of the central generator `z_k` (0-based).
    pub fn z(&self, k: usize) -> usize {
        self.index_of(&vec![0; self.m], &self.unit(k))
    }

    /// Compiles the presentation into a multiplication table.
    ///
    /// `(e,v)·(f,w) = (e+f, v + w + Σ_{i<j} e_j f_i comm[i][j] + Σ_i carry_i sq[i])`
    /// with `carry_i = ⌊(e_i+f_i)/p⌋`. The correction is a 2-cocycle, so the
    /// product is associative for any data.
    pub fn compile(&self) -> Result<FiniteGroup, BuildError> {
        self.validate()?;
        let p = self.p;
        let (m, s) = (self.m, self.s);
        let ne = p.pow(m as u32);
        let nv = p.pow(s as u32);
        let n = ne * nv;
        let digits = |mut x: usize, len: usize| -> Vec<u32> {
            let mut d = vec![0u32; len];
            for slot in d.iter_mut().rev() {
                *slot = (x % p) as u32;
                x /= p;
            }
            d
        };
        let e_digits: Vec<Vec<u32>> = (0..ne).map(|x| digits(x, m)).collect();
        let v_digits: Vec<Vec<u32>> = (0..nv).map(|x| digits(x, s)).collect();
        let encode_v = |d: &[u32]| d.iter().fold(0usize, |acc, &x| acc * p + x as usize);
        let add_v = |a: usize, b: usize| -> usize {
            if p == 2 {
                a ^ b
            } else {
                let (da, db) = (&v_digits[a], &v_digits[b]);
                da.iter().zip(db).fold(0usize, |acc, (&x, &y)| acc * p + ((x + y) as usize % p))
            }
        };
        // correction and sum of the e-parts, precomputed on (Z_p)^m × (Z_p)^m
        let mut corr = vec![0usize; ne * ne];
        let mut esum = vec![0usize; ne * ne];
        for a in 0..ne {
            let e = &e_digits[a];
            for b in 0..ne {
                let f = &e_digits[b];
                let mut acc = vec![0u32; s];
                for i in 0..m {
                    if f[i] == 0 {
                        continue;
                    }
                    for j in i + 1..m {
                        let c = e[j] * f[i];
                        if c != 0 {
                            for (slot, &d) in acc.iter_mut().zip(&self.comm[i][j]) {
                                *slot = (*slot + c * d) % p as u32;
                            }
                        }
                    }
                }
                let mut sum = vec![0u32; m];
                for i in 0..m {
                    let t = e[i] + f[i];
                    sum[i] = t % p as u32;
                    if t >= p as u32 {
                        for (slot, &d) in acc.iter_mut().zip(&self.sq[i]) {
                            *slot = (*slot + d) % p as u32;
                        }
                    }
                }
                corr[a * ne + b] = encode_v(&acc);
                esum[a * ne + b] = sum.iter().fold(0usize, |acc, &x| acc * p + x as usize);
            }
        }
        let mut table = vec![0u32; n * n];
        for x in 0..n {
            let (xe, xv) = (x / nv, x % nv);
            for y in 0..n {
                let (ye, yv) = (y / nv, y % nv);
                let k = xe * ne + ye;
                let v = add_v(add_v(xv, yv), corr[k]);
                table[x * n + y] = (esum[k] * nv + v) as u32;
            }
        }
        let mut g = FiniteGroup::from_raw(n, table);
        let mut gens: Vec<usize> = (0..m).map(|i| self.x(i)).collect();
        for k in 0..s {
            let zk = self.z(k);
            if !g.closure(&gens).contains(zk) {
                gens.push(zk);
            }
        }
        if !gens.is_empty() {
            g = g.with_gens(gens);
        }
        if let Some(names) = &self.names {
            let labels = (0..n)
                .map(|x| {
                    let mut parts = Vec::new();
                    for (i, &d) in e_digits[x / nv].iter().enumerate() {
                        match d {
                            0 => {}
                            1 => parts.push(names[i].clone()),
                            _ => parts.push(format!("{}^{d}", names[i])),
                        }
                    }
                    for (k, &d) in v_digits[x % nv].iter().enumerate() {
                        match d {
                            0 => {}
                            1 => parts.push(names[m + k].clone()),
                            _ => parts.push(format!("{}^{d}", names[m + k])),
                        }
                    }
                    if parts.is_empty() {
                        "1".to_string()
                    } else {
                        parts.join(".")
                    }
                })
                .collect();
            g = g.with_labels(labels);
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{cyclic, dicyclic};
    use crate::morphisms::isomorphic_bruteforce;

    #[test]
    fn quaternion_from_ct() {
        let mut ct = CTPresentation::new(2, 2, 1);
        ct.set_power(0, &[1]).set_power(1, &[1]).set_comm(0, 1, &[1]);
        let q = ct.compile().unwrap();
        q.validate().unwrap();
        let prof: Vec<_> = q.order_profile().into_iter().collect();
        assert_eq!(prof, vec![(1, 1), (2, 1), (4, 6)]);
        let dic = dicyclic(&cyclic(4).unwrap()).unwrap();
        assert_eq!(q.fingerprint(), dic.fingerprint());
        assert!(isomorphic_bruteforce(&q, &dic).unwrap());
    }

    #[test]
    fn heisenberg_mod_3() {
        let mut ct = CTPresentation::new(3, 2, 1);
        ct.set_comm(0, 1, &[1]);
        let g = ct.compile().unwrap();
        g.validate().unwrap();
        assert_eq!(g.order(), 27);
        assert_eq!(g.exponent(), 3);
        assert!(!g.is_abelian());
        assert!(g.center().contains(ct.z(0)));
    }

    #[test]
    fn bad_data() {
        let ct = CTPresentation::new(4, 1, 1);
        assert!(matches!(ct.compile(), Err(BuildError::BadData(_))));
        let mut ct = CTPresentation::new(2, 2, 1);
        ct.sq[0] = vec![1, 0];
        assert!(matches!(ct.compile(), Err(BuildError::BadData(_))));
        let ct = CTPresentation::new(2, 10, 10);
        assert!(matches!(ct.compile(), Err(BuildError::SizeCeiling(_))));
    }

    #[test]
    fn labels_follow_names() {
        let mut ct = CTPresentation::new(2, 2, 1).with_names(&["i", "j", "t"]);
        ct.set_power(0, &[1]).set_power(1, &[1]).set_comm(0, 1, &[1]);
        let q = ct.compile().unwrap();
        assert_eq!(q.label(0), "1");
        assert_eq!(q.label(ct.x(0)), "i");
        assert_eq!(q.label(q.mul(ct.x(0), ct.x(1))), "i.j");
        assert_eq!(q.mul(ct.x(0), ct.x(0)), ct.z(0));
    }
}
