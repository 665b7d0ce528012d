//! Shared helpers for the integration tests: independent oracles implemented
//! with plain rational Gaussian elimination and subset enumeration, used to
//! cross-check the library's optimized code paths.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use matroidal::degeneracy::is_k_degenerate;
use matroidal::{LinearMatroid, RankOracle, Subset};

/// Rank of the selected points computed by textbook Gaussian elimination over
/// `BigRational`, sharing no code with the library's Bareiss path.
pub fn gaussian_rank(m: &LinearMatroid, s: Subset) -> usize {
    let mut rows: Vec<Vec<BigRational>> = s
        .iter()
        .map(|i| {
            m.point(i)
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect()
        })
        .collect();
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let lead = rows[rank][col].clone();
        for r in rank + 1..rows.len() {
            if !rows[r][col].is_zero() {
                let factor = &rows[r][col] / &lead;
                for c in col..cols {
                    let delta = &factor * &rows[rank][c];
                    rows[r][c] = &rows[r][c] - delta;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Largest k-degenerate subset of the ground set found by scanning every
/// subset in descending size, tie-broken by canonical (numeric) order.
pub fn brute_force_largest_degenerate(m: &dyn RankOracle, k: usize) -> Subset {
    let n = m.size();
    let mut best = Subset::EMPTY;
    for bits in 0..(1u64 << n) {
        let s = Subset::from_bits(bits);
        if s.len() > best.len() && is_k_degenerate(m, s, k).unwrap().is_some() {
            best = s;
        }
    }
    best
}

/// Whether the ground set is the direct sum of two lines: a partition into
/// two rank-2 sets that are skew (checked by plain enumeration over lines).
pub fn is_direct_sum_of_two_lines(m: &dyn RankOracle) -> bool {
    let ground = m.ground();
    if m.full_rank() != 4 {
        return false;
    }
    let n = m.size();
    for bits in 0..(1u64 << n) {
        let a = Subset::from_bits(bits);
        let b = ground.minus(a);
        if !a.is_empty()
            && !b.is_empty()
            && m.rank(a) == 2
            && m.rank(b) == 2
        {
            return true;
        }
    }
    false
}

/// Two 3-point lines placed in complementary coordinate pairs; rank 4.
pub fn two_disjoint_lines() -> LinearMatroid {
    LinearMatroid::from_int_rows(&[
        vec![1, 0, 0, 0],
        vec![0, 1, 0, 0],
        vec![1, 1, 0, 0],
        vec![0, 0, 1, 0],
        vec![0, 0, 0, 1],
        vec![0, 0, 1, 1],
    ])
    .unwrap()
}

/// Canonical form of an integer vector up to scaling: divided by the gcd with
/// the first nonzero entry made positive; None for the zero vector.
pub fn canonical_column(v: &[i64]) -> Option<Vec<BigInt>> {
    let ints: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
    matroidal::linear::canonical_direction(&ints)
}
