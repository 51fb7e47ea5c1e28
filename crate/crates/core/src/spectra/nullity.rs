use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Rank over `Q` by fraction-free Gaussian elimination.
///
/// After each pivot step every entry of the trailing block is a minor of the
/// input, so the division by the previous pivot is exact. Zero columns are
/// skipped, which keeps that property for rank-deficient matrices.
pub fn bareiss_rank(m: &[Vec<i64>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let v = pivot * &row[j] - &lead * &pivot_row[j];
                debug_assert!((&v % &prev).is_zero());
                row[j] = v / &prev;
            }
        }
        prev = pivot.clone();
        r += 1;
    }
    r
}

/// Connected components of the graph on indices with `i ~ j` whenever
/// `m[i][j]` or `m[j][i]` is non-zero.
fn components(m: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let n = m.len();
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut k = 0;
        while k < members.len() {
            let i = members[k];
            k += 1;
            for j in 0..n {
                if comp[j] == usize::MAX && (m[i][j] != 0 || m[j][i] != 0) {
                    comp[j] = id;
                    members.push(j);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Nullity over `Q` of a square integer matrix.
///
/// The matrix is split into the diagonal blocks given by the connected
/// components of its non-zero pattern and each block is eliminated on its own.
pub fn integer_nullity(m: &[Vec<i64>]) -> usize {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "integer_nullity needs a square matrix");
    components(m)
        .into_iter()
        .map(|c| {
            let block: Vec<Vec<i64>> = c.iter().map(|&i| c.iter().map(|&j| m[i][j]).collect()).collect();
            c.len() - bareiss_rank(&block)
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rank_mod_p(m: &[Vec<i64>], p: i64) -> usize {
        let mut a: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|v| v.rem_euclid(p)).collect()).collect();
        let (rows, cols) = (a.len(), a.first().map_or(0, Vec::len));
        let inv = |x: i64| {
            let (mut b, mut e, mut acc) = (x, p - 2, 1i64);
            while e > 0 {
                if e & 1 == 1 {
                    acc = acc * b % p;
                }
                b = b * b % p;
                e >>= 1;
            }
            acc
        };
        let mut r = 0;
        for c in 0..cols {
            let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
            a.swap(r, piv);
            let s = inv(a[r][c]);
            for i in 0..rows {
                if i != r && a[i][c] != 0 {
                    let f = a[i][c] * s % p;
                    for j in 0..cols {
                        a[i][j] = (a[i][j] - f * a[r][j]).rem_euclid(p);
                    }
                }
            }
            r += 1;
        }
        r
    }

    #[test]
    fn known_ranks() {
        assert_eq!(bareiss_rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(bareiss_rank(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(bareiss_rank(&[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]), 2);
        assert_eq!(integer_nullity(&[vec![2, 0], vec![0, 0]]), 1);
        // K4 minus 3I has the all-ones vector in its kernel
        let k4: Vec<Vec<i64>> = (0..4).map(|i| (0..4).map(|j| if i == j { -3 } else { 1 }).collect()).collect();
        assert_eq!(integer_nullity(&k4), 1);
    }

    #[test]
    fn block_splitting_matches_whole_matrix() {
        let m = vec![vec![1, 1, 0, 0], vec![1, 1, 0, 0], vec![0, 0, 2, 0], vec![0, 0, 0, 0]];
        assert_eq!(integer_nullity(&m), 4 - bareiss_rank(&m));
        assert_eq!(integer_nullity(&m), 2);
    }

    proptest! {
        #[test]
        fn rank_agrees_with_large_prime(entries in proptest::collection::vec(-3i64..=3, 36), zero_rows in 0usize..4) {
            let mut m: Vec<Vec<i64>> = entries.chunks(6).map(<[i64]>::to_vec).collect();
            // force some dependency
            for k in 0..zero_rows {
                let combo: Vec<i64> = (0..6).map(|j| m[0][j] * (k as i64 + 1) - m[1][j]).collect();
                m[5 - k] = combo;
            }
            prop_assert_eq!(bareiss_rank(&m), rank_mod_p(&m, 1_000_000_007));
            prop_assert_eq!(integer_nullity(&m), 6 - bareiss_rank(&m));
        }
    }
}
