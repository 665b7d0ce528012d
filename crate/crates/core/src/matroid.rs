//! The rank-oracle abstraction and elementary matroid operations: closure,
//! skewness, minors, and simplification.
//!
//! Every matroid in this crate is presented through [`RankOracle`]. Concrete
//! oracles ([`crate::LinearMatroid`], minors, principal truncations) are
//! immutable after construction and safe to share across threads; internal
//! memo tables are guarded, so results are deterministic regardless of the
//! calling pattern.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::subset::Subset;
use crate::{Error, Result};

pub trait RankOracle: Send + Sync {
    /// Ground-set size `n`; elements are `0..n-1`.
    fn size(&self) -> usize;

    /// Matroid rank of `s`. Panics if `s` contains an index `>= size()`.
    fn rank(&self, s: Subset) -> usize;

    fn ground(&self) -> Subset {
        Subset::full(self.size())
    }

    fn full_rank(&self) -> usize {
        self.rank(self.ground())
    }

    /// `cl(s) = {e : r(s + e) = r(s)}`; always a flat.
    fn closure(&self, s: Subset) -> Subset {
        let r = self.rank(s);
        let mut cl = s;
        for e in self.ground().minus(s).iter() {
            if self.rank(s.with(e)) == r {
                cl = cl.with(e);
            }
        }
        cl
    }

    /// True iff `r(x ∪ y) = r(x) + r(y)`.
    fn is_skew(&self, x: Subset, y: Subset) -> bool {
        self.rank(x.union(y)) == self.rank(x) + self.rank(y)
    }
}

impl<T: RankOracle + ?Sized> RankOracle for Arc<T> {
    fn size(&self) -> usize {
        (**self).size()
    }
    fn rank(&self, s: Subset) -> usize {
        (**self).rank(s)
    }
}

/// Checks that every member of `s` indexes into the ground set of `m`.
pub fn check_subset(m: &dyn RankOracle, s: Subset) -> Result<()> {
    if !s.is_subset_of(m.ground()) {
        let index = s.minus(m.ground()).first().unwrap();
        return Err(Error::IndexOutOfRange { index, size: m.size() });
    }
    Ok(())
}

/// Closure computed inside the restriction `M|scope`: `cl_M(s) ∩ scope`.
pub fn closure_within(m: &dyn RankOracle, scope: Subset, s: Subset) -> Subset {
    debug_assert!(s.is_subset_of(scope));
    m.closure(s).intersect(scope)
}

/// True iff `m` has no loops and no parallel pairs.
pub fn is_simple(m: &dyn RankOracle) -> bool {
    let n = m.size();
    for e in 0..n {
        if m.rank(Subset::singleton(e)) != 1 {
            return false;
        }
    }
    for e in 0..n {
        for f in (e + 1)..n {
            if m.rank(Subset::singleton(e).with(f)) != 2 {
                return false;
            }
        }
    }
    true
}

/// A minor `M / contract \ delete`, reindexed onto `0..m-1`.
pub struct Minor {
    base: Arc<dyn RankOracle>,
    /// New index -> old index, increasing.
    kept: Vec<usize>,
    contract: Subset,
    contract_rank: usize,
}

impl Minor {
    /// Old-index view of the retained elements, in new-index order.
    pub fn kept_elements(&self) -> &[usize] {
        &self.kept
    }

    /// Maps a subset of the minor back to old indices.
    pub fn to_base(&self, s: Subset) -> Subset {
        Subset::from_indices(s.iter().map(|i| self.kept[i]))
    }

    /// Maps a subset of old indices into the minor; elements outside the
    /// retained set are dropped.
    pub fn from_base(&self, s: Subset) -> Subset {
        Subset::from_indices(
            self.kept
                .iter()
                .enumerate()
                .filter(|(_, &old)| s.contains(old))
                .map(|(new, _)| new),
        )
    }
}

impl RankOracle for Minor {
    fn size(&self) -> usize {
        self.kept.len()
    }

    fn rank(&self, s: Subset) -> usize {
        assert!(s.is_subset_of(self.ground()));
        self.base.rank(self.to_base(s).union(self.contract)) - self.contract_rank
    }
}

/// `minor(M, delete, contract)`: ground set `E \ (delete ∪ contract)` with
/// `r'(X) = r(X ∪ contract) - r(contract)`. The restriction `M|S` is
/// `minor(M, E \ S, ∅)`.
pub fn minor(base: Arc<dyn RankOracle>, delete: Subset, contract: Subset) -> Result<Minor> {
    check_subset(&*base, delete)?;
    check_subset(&*base, contract)?;
    if !delete.is_disjoint(contract) {
        return Err(Error::InvalidInput(format!(
            "delete and contract sets overlap on {{{}}}",
            delete.intersect(contract)
        )));
    }
    let kept = base.ground().minus(delete.union(contract)).indices();
    let contract_rank = base.rank(contract);
    Ok(Minor { base, kept, contract, contract_rank })
}

/// Result of [`simplify`]: loops deleted and each parallel class reduced to
/// its lowest-index representative.
pub struct Simplification {
    pub matroid: Arc<Minor>,
    /// Old index -> old index of its representative (`None` for loops).
    pub representative_of: Vec<Option<usize>>,
    /// New index -> old index.
    pub kept: Vec<usize>,
}

impl Simplification {
    pub fn to_base(&self, s: Subset) -> Subset {
        self.matroid.to_base(s)
    }

    /// New index of the representative standing for old element `e`.
    pub fn new_index_of(&self, e: usize) -> Option<usize> {
        let rep = self.representative_of[e]?;
        self.kept.iter().position(|&old| old == rep)
    }
}

pub fn simplify(base: Arc<dyn RankOracle>) -> Simplification {
    let n = base.size();
    let mut representative_of: Vec<Option<usize>> = vec![None; n];
    let mut reps: Vec<usize> = Vec::new();
    for e in 0..n {
        if base.rank(Subset::singleton(e)) == 0 {
            continue; // loop
        }
        let mut found = None;
        for &r in &reps {
            if base.rank(Subset::singleton(r).with(e)) == 1 {
                found = Some(r);
                break;
            }
        }
        match found {
            Some(r) => representative_of[e] = Some(r),
            None => {
                representative_of[e] = Some(e);
                reps.push(e);
            }
        }
    }
    let keep = Subset::from_indices(reps.iter().copied());
    let delete = base.ground().minus(keep);
    let m = minor(base, delete, Subset::EMPTY).expect("disjoint by construction");
    let kept = m.kept_elements().to_vec();
    Simplification { matroid: Arc::new(m), representative_of, kept }
}

/// A flat together with its rank. Emitted by the enumerators in
/// [`crate::flats`]; `closure(members) = members` always holds.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Flat {
    pub members: Subset,
    pub rank: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::LinearMatroid;

    fn three_points_on_a_line() -> Arc<LinearMatroid> {
        Arc::new(LinearMatroid::from_int_rows(&[vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap())
    }

    #[test]
    fn closure_of_spanning_set_is_ground() {
        let m = three_points_on_a_line();
        assert_eq!(m.closure(m.ground()), m.ground());
        assert_eq!(m.closure(Subset::from_indices([0, 1])), m.ground());
    }

    #[test]
    fn empty_set_is_skew_to_anything() {
        let m = three_points_on_a_line();
        assert!(m.is_skew(Subset::EMPTY, m.ground()));
        assert!(m.is_skew(Subset::EMPTY, Subset::EMPTY));
    }

    #[test]
    fn identity_minor_preserves_ranks() {
        let m = three_points_on_a_line();
        let id = minor(m.clone(), Subset::EMPTY, Subset::EMPTY).unwrap();
        for bits in 0..8u64 {
            let s = Subset::from_bits(bits);
            assert_eq!(id.rank(s), m.rank(s));
        }
    }

    #[test]
    fn minor_rejects_overlap() {
        let m = three_points_on_a_line();
        let s = Subset::singleton(1);
        assert!(minor(m, s, s).is_err());
    }

    #[test]
    fn contraction_drops_rank_by_one() {
        let m = three_points_on_a_line();
        let c = minor(m, Subset::EMPTY, Subset::singleton(0)).unwrap();
        assert_eq!(c.size(), 2);
        assert_eq!(c.full_rank(), 1);
    }

    #[test]
    fn simplify_merges_scalar_multiples() {
        let m: Arc<dyn RankOracle> = Arc::new(
            LinearMatroid::from_int_rows(&[vec![1, 0], vec![2, 0], vec![0, 1]]).unwrap(),
        );
        let s = simplify(m);
        assert_eq!(s.kept, vec![0, 2]);
        assert_eq!(s.representative_of, vec![Some(0), Some(0), Some(2)]);
        assert_eq!(s.matroid.full_rank(), 2);
    }

    #[test]
    fn simplify_is_identity_on_simple_matroids() {
        let m = three_points_on_a_line();
        let s = simplify(m.clone());
        assert_eq!(s.kept, vec![0, 1, 2]);
        for e in 0..3 {
            assert_eq!(s.representative_of[e], Some(e));
        }
    }
}
