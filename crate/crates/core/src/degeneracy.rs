//! k-degeneracy: certificate search, largest degenerate subsets, and optimal
//! stratifications.
//!
//! A set `X` is k-degenerate when `M|X` either has rank at most one, or is
//! covered by pairwise-skew flats of rank at least two whose ranks-minus-one
//! sum to at most `k - 1`. The k = 1 case is honored literally: only the
//! empty set is 1-degenerate.
//!
//! Searches consider flats of the restriction `M|X` (closures taken inside
//! the restriction) and break all ties by canonical subset order, so results
//! are deterministic.

use serde::{Deserialize, Serialize};

use crate::flats::enumerate_flats_within;
use crate::matroid::{check_subset, Flat, RankOracle};
use crate::subset::Subset;
use crate::{Error, Result};

/// Pairwise-skew flats with rank budget `Σ (rank - 1) <= k - 1` covering the
/// certified set. An empty flat list certifies a set of rank at most one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegeneracyCertificate {
    pub k: usize,
    pub flats: Vec<Subset>,
}

/// Independent verifier for a certificate, used by tests and by the suite
/// runner; deliberately shares no code with the searchers.
pub fn verify_certificate(
    m: &dyn RankOracle,
    x: Subset,
    cert: &DegeneracyCertificate,
) -> std::result::Result<(), String> {
    if cert.flats.is_empty() {
        return match cert.k {
            0 => Err("k must be at least 1".into()),
            1 if x.is_empty() => Ok(()),
            1 => Err("only the empty set is 1-degenerate".into()),
            _ if m.rank(x) <= 1 => Ok(()),
            _ => Err(format!("empty certificate but r({x}) > 1")),
        };
    }
    if cert.k < 2 {
        return Err(format!("k = {} cannot carry covering flats", cert.k));
    }
    let mut budget = 0usize;
    let mut union = Subset::EMPTY;
    for (i, &f) in cert.flats.iter().enumerate() {
        if !f.is_subset_of(x) {
            return Err(format!("flat {i} is not contained in the certified set"));
        }
        let r = m.rank(f);
        if r < 2 {
            return Err(format!("flat {i} has rank {r} < 2"));
        }
        if m.closure(f).intersect(x) != f {
            return Err(format!("flat {i} is not a flat of the restriction"));
        }
        for (j, &g) in cert.flats.iter().enumerate().skip(i + 1) {
            if !m.is_skew(f, g) {
                return Err(format!("flats {i} and {j} are not skew"));
            }
        }
        budget += r - 1;
        union = union.union(f);
    }
    if budget > cert.k - 1 {
        return Err(format!("rank budget {budget} exceeds k - 1 = {}", cert.k - 1));
    }
    if union != x {
        return Err(format!("flats cover {{{union}}} but the certified set is {{{x}}}"));
    }
    Ok(())
}

/// Flats of `M|scope` of each rank in `2..=max_rank`, canonically sorted.
fn cover_candidates(m: &dyn RankOracle, scope: Subset, max_rank: usize) -> Vec<Flat> {
    let top = max_rank.min(m.rank(scope));
    let mut cands: Vec<Flat> = Vec::new();
    for j in 2..=top {
        cands.extend(enumerate_flats_within(m, scope, j));
    }
    cands.sort_by_key(|f| f.members);
    cands
}

/// Depth-first certificate search. Returns the first certificate found under
/// the canonical tie-break order, or `None`.
pub fn is_k_degenerate(
    m: &dyn RankOracle,
    x: Subset,
    k: usize,
) -> Result<Option<DegeneracyCertificate>> {
    check_subset(m, x)?;
    if k < 1 {
        return Err(Error::InvalidInput("degeneracy index k must be at least 1".into()));
    }
    if k == 1 {
        return Ok(x.is_empty().then(|| DegeneracyCertificate { k, flats: vec![] }));
    }
    if m.rank(x) <= 1 {
        return Ok(Some(DegeneracyCertificate { k, flats: vec![] }));
    }
    let cands = cover_candidates(m, x, k);
    let mut chosen: Vec<Flat> = Vec::new();
    let found = cover_search(m, x, &cands, k - 1, Subset::EMPTY, &mut chosen);
    Ok(found.then(|| DegeneracyCertificate {
        k,
        flats: chosen.iter().map(|f| f.members).collect(),
    }))
}

/// Covers the lowest-index uncovered element at every level; candidates are
/// tried in canonical order.
fn cover_search(
    m: &dyn RankOracle,
    x: Subset,
    cands: &[Flat],
    budget: usize,
    covered: Subset,
    chosen: &mut Vec<Flat>,
) -> bool {
    let uncovered = x.minus(covered);
    let Some(e) = uncovered.first() else { return true };
    for f in cands {
        let cost = f.rank - 1;
        if !f.members.contains(e) || cost > budget {
            continue;
        }
        if chosen.iter().any(|g| !m.is_skew(g.members, f.members)) {
            continue;
        }
        chosen.push(*f);
        if cover_search(m, x, cands, budget - cost, covered.union(f.members), chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// A maximum-cardinality `Z ⊆ Y` with `M|Z` k-degenerate, with its
/// certificate. Ties in cardinality are broken by canonical subset order.
pub fn largest_k_degenerate_subset(
    m: &dyn RankOracle,
    y: Subset,
    k: usize,
) -> Result<(Subset, DegeneracyCertificate)> {
    check_subset(m, y)?;
    if k < 1 {
        return Err(Error::InvalidInput("degeneracy index k must be at least 1".into()));
    }
    if k == 1 {
        return Ok((Subset::EMPTY, DegeneracyCertificate { k, flats: vec![] }));
    }
    // rank <= 1 fallback: loops plus the largest parallel class in Y
    let mut best = rank_at_most_one_fallback(m, y);
    let mut best_flats: Vec<Flat> = Vec::new();

    let mut cands = cover_candidates(m, y, k);
    // large flats first so the branch-and-bound prunes early
    cands.sort_by(|a, b| b.members.len().cmp(&a.members.len()).then(a.members.cmp(&b.members)));
    let mut chosen: Vec<Flat> = Vec::new();
    branch_and_bound(m, &cands, 0, k - 1, Subset::EMPTY, &mut chosen, &mut best, &mut best_flats);
    let cert = DegeneracyCertificate { k, flats: best_flats.iter().map(|f| f.members).collect() };
    debug_assert!(verify_certificate(m, best, &cert).is_ok());
    Ok((best, cert))
}

fn rank_at_most_one_fallback(m: &dyn RankOracle, y: Subset) -> Subset {
    let loops = Subset::from_indices(y.iter().filter(|&e| m.rank(Subset::singleton(e)) == 0));
    let mut best = loops;
    for e in y.iter() {
        if loops.contains(e) {
            continue;
        }
        let class = Subset::from_indices(
            y.iter().filter(|&f| m.rank(Subset::singleton(e).with(f)) <= 1),
        );
        let cand = class.union(loops);
        if cand.len() > best.len() || (cand.len() == best.len() && cand < best) {
            best = cand;
        }
    }
    best
}

#[allow(clippy::too_many_arguments)]
fn branch_and_bound(
    m: &dyn RankOracle,
    cands: &[Flat],
    from: usize,
    budget: usize,
    union: Subset,
    chosen: &mut Vec<Flat>,
    best: &mut Subset,
    best_flats: &mut Vec<Flat>,
) {
    if union.len() > best.len() || (union.len() == best.len() && union < *best) {
        *best = union;
        *best_flats = chosen.clone();
    }
    if budget == 0 || from >= cands.len() {
        return;
    }
    // with budget b at most b more flats fit; they add at most the b largest
    // remaining sizes (cands[from..] is sorted by descending size)
    let bound: usize = cands[from..].iter().take(budget).map(|f| f.members.len()).sum();
    if union.len() + bound <= best.len() {
        return;
    }
    for i in from..cands.len() {
        let f = cands[i];
        let cost = f.rank - 1;
        if cost > budget {
            continue;
        }
        if f.members.is_subset_of(union) {
            continue;
        }
        if chosen.iter().any(|g| !m.is_skew(g.members, f.members)) {
            continue;
        }
        chosen.push(f);
        branch_and_bound(m, cands, i + 1, budget - cost, union.union(f.members), chosen, best, best_flats);
        chosen.pop();
    }
}

/// Nested layers `X_2 ⊆ ... ⊆ X_k`, each a largest i-degenerate subset of the
/// layer above, with per-layer certificates.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Stratification {
    pub k: usize,
    /// `[X_2, ..., X_k]` in ascending order of the degeneracy index.
    pub layers: Vec<Subset>,
    pub certificates: Vec<DegeneracyCertificate>,
}

impl Stratification {
    /// `X_i` for `i` in `2..=k`.
    pub fn layer(&self, i: usize) -> Subset {
        self.layers[i - 2]
    }
}

/// Computes `X_k` as a largest k-degenerate subset of the ground set, then
/// `X_{k-1}` within `X_k`, and so on down to `X_2`.
pub fn optimal_stratification(m: &dyn RankOracle, k: usize) -> Result<Stratification> {
    if k < 2 {
        return Err(Error::InvalidInput("stratification needs k >= 2".into()));
    }
    let mut layers_desc: Vec<(Subset, DegeneracyCertificate)> = Vec::new();
    let mut scope = m.ground();
    for i in (2..=k).rev() {
        let (layer, cert) = largest_k_degenerate_subset(m, scope, i)?;
        scope = layer;
        layers_desc.push((layer, cert));
    }
    layers_desc.reverse();
    let (layers, certificates) = layers_desc.into_iter().unzip();
    Ok(Stratification { k, layers, certificates })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::LinearMatroid;

    fn two_lines() -> LinearMatroid {
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

    #[test]
    fn only_empty_set_is_1_degenerate() {
        let m = two_lines();
        assert!(is_k_degenerate(&m, Subset::EMPTY, 1).unwrap().is_some());
        assert!(is_k_degenerate(&m, Subset::singleton(0), 1).unwrap().is_none());
    }

    #[test]
    fn rank_two_sets_are_2_degenerate() {
        let m = two_lines();
        let line = Subset::from_indices([0, 1, 2]);
        let cert = is_k_degenerate(&m, line, 2).unwrap().unwrap();
        verify_certificate(&m, line, &cert).unwrap();
        assert!(is_k_degenerate(&m, m.ground(), 2).unwrap().is_none());
    }

    #[test]
    fn direct_sum_of_two_lines_is_3_degenerate() {
        let m = two_lines();
        let cert = is_k_degenerate(&m, m.ground(), 3).unwrap().unwrap();
        verify_certificate(&m, m.ground(), &cert).unwrap();
        assert_eq!(cert.flats, vec![Subset::from_indices([0, 1, 2]), Subset::from_indices([3, 4, 5])]);
    }

    #[test]
    fn degeneracy_is_monotone_in_k() {
        let m = two_lines();
        for k in 3..6 {
            assert!(is_k_degenerate(&m, m.ground(), k).unwrap().is_some(), "k = {k}");
        }
    }

    #[test]
    fn largest_2_degenerate_subset_is_the_longer_line() {
        // a 3-point line plus a 4-point line in disjoint coordinates
        let m = LinearMatroid::from_int_rows(&[
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![1, 1, 0, 0],
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 1],
            vec![0, 0, 1, 1],
            vec![0, 0, 1, 2],
        ])
        .unwrap();
        let (z, cert) = largest_k_degenerate_subset(&m, m.ground(), 2).unwrap();
        assert_eq!(z, Subset::from_indices([3, 4, 5, 6]));
        verify_certificate(&m, z, &cert).unwrap();
    }

    #[test]
    fn whole_set_when_rank_at_most_k() {
        let m = two_lines();
        let (z, _) = largest_k_degenerate_subset(&m, m.ground(), 4).unwrap();
        assert_eq!(z, m.ground());
    }

    #[test]
    fn stratification_of_two_lines() {
        let m = two_lines();
        let s = optimal_stratification(&m, 3).unwrap();
        assert_eq!(s.layer(3), m.ground());
        // X_2 is the lowest-canonical 3-point line
        assert_eq!(s.layer(2), Subset::from_indices([0, 1, 2]));
        for (layer, cert) in s.layers.iter().zip(&s.certificates) {
            verify_certificate(&m, *layer, cert).unwrap();
        }
    }

    #[test]
    fn certificates_verify_against_tampering() {
        let m = two_lines();
        let good = DegeneracyCertificate {
            k: 3,
            flats: vec![Subset::from_indices([0, 1, 2]), Subset::from_indices([3, 4, 5])],
        };
        verify_certificate(&m, m.ground(), &good).unwrap();
        let bad_budget = DegeneracyCertificate { k: 2, flats: good.flats.clone() };
        assert!(verify_certificate(&m, m.ground(), &bad_budget).is_err());
        let bad_cover = DegeneracyCertificate { k: 3, flats: vec![good.flats[0]] };
        assert!(verify_certificate(&m, m.ground(), &bad_cover).is_err());
    }

    #[test]
    fn rejects_k_zero() {
        let m = two_lines();
        assert!(is_k_degenerate(&m, m.ground(), 0).is_err());
        assert!(largest_k_degenerate_subset(&m, m.ground(), 0).is_err());
        assert!(optimal_stratification(&m, 1).is_err());
    }
}
