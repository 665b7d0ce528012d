//! Enumeration of flats by rank, hyperplanes and lines, and exact incidence
//! statistics.
//!
//! Rank-`j` flats are found as closures of independent `j`-subsets with a
//! global bitset dedup, which is output-polynomial at the desk scales this
//! crate targets (n up to ~25, rank up to ~6). Flat lists are materialized
//! and canonically sorted.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::matroid::{is_simple, simplify, Flat, RankOracle};
use crate::subset::Subset;
use crate::{Error, Result};

/// The complete duplicate-free list of rank-`j` flats, canonically sorted.
pub fn enumerate_flats(m: &dyn RankOracle, j: usize) -> Result<Vec<Flat>> {
    if j > m.full_rank() {
        return Err(Error::InvalidInput(format!(
            "flat rank {j} exceeds the matroid rank {}",
            m.full_rank()
        )));
    }
    Ok(enumerate_flats_within(m, m.ground(), j))
}

/// Rank-`j` flats of the restriction `M|scope`, as subsets of `scope`,
/// canonically sorted. Ranks agree with ranks in `M`.
pub fn enumerate_flats_within(m: &dyn RankOracle, scope: Subset, j: usize) -> Vec<Flat> {
    let mut out: BTreeSet<Subset> = BTreeSet::new();
    let mut stack = Subset::EMPTY;
    collect_closures(m, scope, j, 0, &mut stack, &mut out);
    out.into_iter()
        .map(|members| {
            let f = Flat { members, rank: j };
            debug_assert_eq!(m.rank(f.members), j);
            debug_assert_eq!(m.closure(f.members).intersect(scope), f.members);
            f
        })
        .collect()
}

/// DFS over independent subsets of `scope`, recording `cl(S) ∩ scope` once
/// `|S| = target`.
fn collect_closures(
    m: &dyn RankOracle,
    scope: Subset,
    target: usize,
    from: usize,
    stack: &mut Subset,
    out: &mut BTreeSet<Subset>,
) {
    let size = stack.len();
    if size == target {
        out.insert(m.closure(*stack).intersect(scope));
        return;
    }
    for e in scope.iter() {
        if e < from || stack.contains(e) {
            continue;
        }
        let grown = stack.with(e);
        if m.rank(grown) == size + 1 {
            *stack = grown;
            collect_closures(m, scope, target, e + 1, stack, out);
            *stack = stack.without(e);
        }
    }
}

/// Flats of rank `r(M) - 1`.
pub fn hyperplanes(m: &dyn RankOracle) -> Result<Vec<Flat>> {
    let r = m.full_rank();
    if r < 1 {
        return Err(Error::InvalidInput("hyperplanes need rank >= 1".into()));
    }
    enumerate_flats(m, r - 1)
}

/// Rank-2 flats.
pub fn lines(m: &dyn RankOracle) -> Result<Vec<Flat>> {
    if m.full_rank() < 2 {
        return Err(Error::InvalidInput("lines need rank >= 2".into()));
    }
    enumerate_flats(m, 2)
}

/// Exact rational mean of hyperplane sizes.
pub fn average_hyperplane_size(m: &dyn RankOracle) -> Result<BigRational> {
    let hs = hyperplanes(m)?;
    if hs.is_empty() {
        return Err(Error::Undefined("matroid has no hyperplanes".into()));
    }
    let total: usize = hs.iter().map(|h| h.members.len()).sum();
    Ok(BigRational::new(BigInt::from(total), BigInt::from(hs.len())))
}

/// `Σ_{H ∈ H(M)} (|H| - k)`.
pub fn aggregate_excess(m: &dyn RankOracle, k: usize) -> Result<i64> {
    let hs = hyperplanes(m)?;
    if hs.is_empty() {
        return Err(Error::Undefined("matroid has no hyperplanes".into()));
    }
    Ok(hs.iter().map(|h| h.members.len() as i64 - k as i64).sum())
}

/// Exhaustively computed counting quantities for one matroid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceStats {
    pub n: usize,
    pub rank: usize,
    pub line_count: usize,
    pub max_lines_through_point: usize,
    pub largest_line: usize,
    pub largest_hyperplane: usize,
    pub hyperplane_count: usize,
    pub sum_hyperplane_sizes: usize,
}

/// Fills every field by exhaustive enumeration. Requires rank >= 3. When the
/// matroid has parallel elements the statistics are taken over its
/// simplification.
pub fn incidence_stats(m: &dyn RankOracle) -> Result<IncidenceStats> {
    if m.full_rank() < 3 {
        return Err(Error::InvalidInput("incidence statistics need rank >= 3".into()));
    }
    if !is_simple(m) {
        // simplify wants an owning handle; go through a table-backed shim
        let forwarded: std::sync::Arc<dyn RankOracle> =
            std::sync::Arc::new(OwnedShim { size: m.size(), ranks: precompute(m) });
        let s = simplify(forwarded);
        return incidence_stats(&*s.matroid);
    }
    let n = m.size();
    let rank = m.full_rank();
    let ls = lines(m)?;
    let hs = hyperplanes(m)?;
    let max_lines_through_point = (0..n)
        .map(|e| ls.iter().filter(|l| l.members.contains(e)).count())
        .max()
        .unwrap_or(0);
    Ok(IncidenceStats {
        n,
        rank,
        line_count: ls.len(),
        max_lines_through_point,
        largest_line: ls.iter().map(|l| l.members.len()).max().unwrap_or(0),
        largest_hyperplane: hs.iter().map(|h| h.members.len()).max().unwrap_or(0),
        hyperplane_count: hs.len(),
        sum_hyperplane_sizes: hs.iter().map(|h| h.members.len()).sum(),
    })
}

/// Table-backed oracle used to hand a borrowed oracle to `simplify`.
struct OwnedShim {
    size: usize,
    ranks: std::collections::HashMap<u64, usize>,
}

impl RankOracle for OwnedShim {
    fn size(&self) -> usize {
        self.size
    }
    fn rank(&self, s: Subset) -> usize {
        self.ranks[&s.bits()]
    }
}

fn precompute(m: &dyn RankOracle) -> std::collections::HashMap<u64, usize> {
    // only called for non-simple inputs, which stay tiny in practice
    assert!(m.size() <= 24, "incidence statistics on non-simple inputs are capped at 24 elements");
    let mut table = std::collections::HashMap::new();
    for bits in 0..(1u64 << m.size()) {
        let s = Subset::from_bits(bits);
        table.insert(bits, m.rank(s));
    }
    table
}
