//! Principal truncation as rank-oracle decorators: 1-fold, k-fold, complete,
//! and chained, plus mechanical verification of their structural properties.
//!
//! Truncations are represented symbolically, never by coordinates: a free
//! extension needs a generic point, and genericity over the rationals is only
//! checkable probabilistically, while the decorator is exact by construction.
//! A randomized coordinate realization exists solely as a cross-check.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::degeneracy::optimal_stratification;
use crate::flats::{enumerate_flats, hyperplanes};
use crate::linear::LinearMatroid;
use crate::matroid::{check_subset, minor, RankOracle};
use crate::subset::Subset;
use crate::{Error, Result};

/// The 1-fold principal truncation of a flat-generating set `F`:
/// `r_N(X) = r_M(X) - 1` when `F ⊆ cl_M(X)`, else `r_M(X)`.
pub struct PrincipalTruncation {
    base: Arc<dyn RankOracle>,
    flat: Subset,
    memo: RwLock<HashMap<u64, usize>>,
}

impl PrincipalTruncation {
    pub fn flat(&self) -> Subset {
        self.flat
    }
}

impl RankOracle for PrincipalTruncation {
    fn size(&self) -> usize {
        self.base.size()
    }

    fn rank(&self, s: Subset) -> usize {
        assert!(s.is_subset_of(self.ground()));
        if let Some(&r) = self.memo.read().unwrap().get(&s.bits()) {
            return r;
        }
        let rb = self.base.rank(s);
        // F ⊆ cl(X)  ⟺  r(X ∪ F) = r(X)
        let r = if self.base.rank(s.union(self.flat)) == rb { rb - 1 } else { rb };
        self.memo.write().unwrap().insert(s.bits(), r);
        r
    }
}

pub fn principal_truncation(
    base: Arc<dyn RankOracle>,
    flat: Subset,
) -> Result<Arc<PrincipalTruncation>> {
    check_subset(&*base, flat)?;
    let r = base.rank(flat);
    if r < 2 {
        return Err(Error::InvalidInput(format!(
            "principal truncation needs a set of rank >= 2, got rank {r}"
        )));
    }
    Ok(Arc::new(PrincipalTruncation { base, flat, memo: RwLock::new(HashMap::new()) }))
}

/// Iterates the 1-fold truncation `folds` times; `1 <= folds <= r_M(F) - 1`.
pub fn k_fold_truncation(
    base: Arc<dyn RankOracle>,
    flat: Subset,
    folds: usize,
) -> Result<Arc<dyn RankOracle>> {
    check_subset(&*base, flat)?;
    let r = base.rank(flat);
    if folds < 1 || folds > r.saturating_sub(1) {
        return Err(Error::InvalidInput(format!(
            "fold count {folds} outside 1..={} for a rank-{r} set",
            r.saturating_sub(1)
        )));
    }
    let mut m: Arc<dyn RankOracle> = base;
    for _ in 0..folds {
        m = principal_truncation(m, flat)?;
    }
    Ok(m)
}

/// The complete principal truncation: `r_M(F) - 1` folds, making `cl(F)` a
/// point.
pub fn complete_truncation(base: Arc<dyn RankOracle>, flat: Subset) -> Result<Arc<dyn RankOracle>> {
    let r = base.rank(flat);
    k_fold_truncation(base, flat, r.saturating_sub(1))
}

/// Applies complete truncations of pairwise-disjoint sets in order.
pub fn chain_truncation(
    base: Arc<dyn RankOracle>,
    flats: &[Subset],
) -> Result<Arc<dyn RankOracle>> {
    for (i, &f) in flats.iter().enumerate() {
        for (j, &g) in flats.iter().enumerate().skip(i + 1) {
            if !f.is_disjoint(g) {
                return Err(Error::InvalidInput(format!(
                    "chained flats {i} and {j} overlap on {{{}}}",
                    f.intersect(g)
                )));
            }
        }
    }
    let mut m: Arc<dyn RankOracle> = base;
    for &f in flats {
        m = complete_truncation(m, f)?;
    }
    Ok(m)
}

/// Pass/fail verification outcome with counterexample witnesses.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub passed: bool,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn new() -> CheckReport {
        CheckReport { passed: true, cases: 0, failures: Vec::new() }
    }

    pub fn case(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.passed = false;
            if self.failures.len() < 32 {
                self.failures.push(witness());
            }
        }
    }
}

impl Default for CheckReport {
    fn default() -> Self {
        Self::new()
    }
}

/// Checks the structural properties of 1-fold and complete truncation by
/// enumeration, plus the closure implication on `samples` random subsets:
/// flats of the truncation are flats of the base; flats of the complete
/// truncation not containing `F` keep their rank and are skew to `F`; every
/// hyperplane of the base not containing `F` contains a hyperplane of the
/// complete truncation disjoint from `F`.
pub fn verify_truncation_properties(
    m: Arc<dyn RankOracle>,
    f: Subset,
    samples: usize,
    seed: u64,
) -> Result<CheckReport> {
    let rf = m.rank(f);
    let rm = m.full_rank();
    if rf < 2 || rf + 2 > rm {
        return Err(Error::InvalidInput(format!(
            "need 2 <= r(F) <= r(M) - 2, got r(F) = {rf}, r(M) = {rm}"
        )));
    }
    let one_fold: Arc<dyn RankOracle> = principal_truncation(m.clone(), f)?;
    let complete = complete_truncation(m.clone(), f)?;
    let mut report = CheckReport::new();

    // flats of the truncations are flats of the base
    for trunc in [&one_fold, &complete] {
        for j in 0..=trunc.full_rank() {
            for flat in enumerate_flats(&**trunc, j)? {
                let h = flat.members;
                report.case(m.closure(h) == h, || format!("flat {{{h}}} of the truncation is not a flat of the base"));
            }
        }
    }

    // flats of the complete truncation avoiding F: same rank, skew to F
    for j in 0..=complete.full_rank() {
        for flat in enumerate_flats(&*complete, j)? {
            let h = flat.members;
            if f.is_subset_of(h) {
                continue;
            }
            report.case(
                m.rank(h) == j && m.is_skew(h, f),
                || format!("flat {{{h}}} avoiding F changed rank or is not skew to F"),
            );
        }
    }

    // hyperplanes of the base avoiding F contain a truncated hyperplane
    let trunc_hyps = hyperplanes(&*complete)?;
    for h in hyperplanes(&*m)? {
        if f.is_subset_of(h.members) {
            continue;
        }
        let found = trunc_hyps
            .iter()
            .any(|x| x.members.is_subset_of(h.members) && x.members.is_disjoint(f));
        report.case(found, || {
            format!("hyperplane {{{}}} avoiding F contains no truncated hyperplane disjoint from F", h.members)
        });
    }

    // closure implication on random subsets: F ⊄ cl_N(X) ⟹ F ⊄ cl_M(X)
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ground = m.ground();
    for _ in 0..samples {
        let x = Subset::from_bits(rng.random::<u64>()).intersect(ground);
        for trunc in [&one_fold, &complete] {
            let in_trunc = trunc.rank(x.union(f)) == trunc.rank(x);
            let in_base = m.rank(x.union(f)) == m.rank(x);
            report.case(in_trunc || !in_base, || {
                format!("F ⊄ cl_N({{{x}}}) but F ⊆ cl_M({{{x}}})")
            });
        }
    }
    Ok(report)
}

/// For every flat `H` of the fully chained truncation, checks
/// `r_M(H) = r_chain(H) + Σ_{i : F_i ⊆ H} (r_{M_i}(F_i) - 1)`.
pub fn verify_rank_formula(m: Arc<dyn RankOracle>, chain_flats: &[Subset]) -> Result<CheckReport> {
    let mut stages: Vec<Arc<dyn RankOracle>> = vec![m.clone()];
    for &f in chain_flats {
        let cur = stages.last().unwrap().clone();
        let r = cur.rank(f);
        if r < 2 {
            return Err(Error::InvalidInput(format!(
                "chained set {{{f}}} has rank {r} < 2 at its stage"
            )));
        }
        stages.push(complete_truncation(cur, f)?);
    }
    let step_drop: Vec<usize> = chain_flats
        .iter()
        .enumerate()
        .map(|(i, &f)| stages[i].rank(f) - 1)
        .collect();
    let last = stages.last().unwrap();
    let mut report = CheckReport::new();
    for j in 0..=last.full_rank() {
        for flat in enumerate_flats(&**last, j)? {
            let h = flat.members;
            let correction: usize = chain_flats
                .iter()
                .zip(&step_drop)
                .filter(|(&f, _)| f.is_subset_of(h))
                .map(|(_, &d)| d)
                .sum();
            report.case(m.rank(h) == j + correction, || {
                format!("flat {{{h}}}: base rank {} != {} + {}", m.rank(h), j, correction)
            });
        }
    }
    Ok(report)
}

/// Exact hyperplane identity for the complete truncation of a line `L`:
/// the hyperplanes of `M ÷ L` are precisely the hyperplanes of `M`
/// containing `L` together with the flats of rank `r(M) - 2` skew to `L`.
pub fn line_truncation_hyperplane_identity(
    m: Arc<dyn RankOracle>,
    line: Subset,
) -> Result<CheckReport> {
    if m.rank(line) != 2 || m.closure(line) != line {
        return Err(Error::InvalidInput(format!("{{{line}}} is not a line")));
    }
    let rm = m.full_rank();
    if rm < 4 {
        return Err(Error::InvalidInput("the identity needs rank >= 4".into()));
    }
    let trunc = complete_truncation(m.clone(), line)?;
    let lhs: BTreeSet<Subset> = hyperplanes(&*trunc)?.into_iter().map(|h| h.members).collect();
    let mut rhs: BTreeSet<Subset> = hyperplanes(&*m)?
        .into_iter()
        .map(|h| h.members)
        .filter(|h| line.is_subset_of(*h))
        .collect();
    for flat in enumerate_flats(&*m, rm - 2)? {
        if m.is_skew(flat.members, line) {
            rhs.insert(flat.members);
        }
    }
    let mut report = CheckReport::new();
    for h in lhs.difference(&rhs) {
        report.case(false, || format!("truncated hyperplane {{{h}}} missing on the right side"));
    }
    for h in rhs.difference(&lhs) {
        report.case(false, || format!("{{{h}}} expected as a truncated hyperplane but absent"));
    }
    report.case(lhs == rhs, || "hyperplane sets differ".into());
    Ok(report)
}

/// Comparison of a stratification against the one recomputed from scratch in
/// the truncated-and-deleted matroid.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StratificationShiftReport {
    pub hypotheses_met: bool,
    pub passed: bool,
    pub failures: Vec<String>,
}

/// For layer index `i`: requires `X_i` to be a rank-`i` flat and
/// `|X_{i-1}| + 1 < |X_i| / k`; then recomputes the optimal
/// `(k + 1 - i)`-stratification of `(M ÷ X_i) \ X_i` and compares layer
/// cardinalities with the shifted layers `X_{i+1} \ X_i, ..., X_k \ X_i`.
pub fn verify_truncation_stratification(
    m: Arc<dyn RankOracle>,
    strat: &crate::degeneracy::Stratification,
    i: usize,
) -> Result<StratificationShiftReport> {
    let k = strat.k;
    if !(2..=k.saturating_sub(1)).contains(&i) {
        return Err(Error::InvalidInput(format!("layer index {i} outside 2..={}", k - 1)));
    }
    let xi = strat.layer(i);
    let prev_size = if i == 2 { 0 } else { strat.layer(i - 1).len() };
    let is_flat = m.closure(xi) == xi && m.rank(xi) == i;
    // |X_{i-1}| + 1 < |X_i| / k, compared exactly as (|X_{i-1}| + 1) * k < |X_i|
    let size_ok = (prev_size + 1) * k < xi.len();
    if !is_flat || !size_ok {
        return Ok(StratificationShiftReport {
            hypotheses_met: false,
            passed: false,
            failures: vec![format!(
                "hypotheses not met: rank-{i} flat = {is_flat}, size condition = {size_ok}"
            )],
        });
    }
    let trunc = complete_truncation(m, xi)?;
    let deleted = minor(trunc, xi, Subset::EMPTY)?;
    let recomputed = optimal_stratification(&deleted, k + 1 - i)?;
    let mut failures = Vec::new();
    for j in 2..=(k + 1 - i) {
        let expected = strat.layer(i + j - 1).minus(xi).len();
        let got = recomputed.layer(j).len();
        if expected != got {
            failures.push(format!(
                "layer {j}: recomputed size {got} but shifted layer has size {expected}"
            ));
        }
    }
    Ok(StratificationShiftReport { hypotheses_met: true, passed: failures.is_empty(), failures })
}

/// Randomized coordinate cross-check for a 1-fold truncation: adjoin a random
/// rational point of the span of `F` (integer coefficients in
/// `[-1000, 1000]`), contract it, and compare ranks of `samples` random
/// subsets with the decorator. A mismatch redraws (the point may be
/// non-generic) up to 5 times before failing.
pub fn truncation_realization_cross_check(
    m: &Arc<LinearMatroid>,
    f: Subset,
    samples: usize,
    seed: u64,
) -> Result<CheckReport> {
    check_subset(&**m, f)?;
    if m.rank(f) < 2 {
        return Err(Error::InvalidInput("cross-check needs a set of rank >= 2".into()));
    }
    let decorator = principal_truncation(m.clone() as Arc<dyn RankOracle>, f)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CheckReport::new();
    'attempt: for attempt in 0..5 {
        let mut point = vec![BigInt::zero(); m.dim()];
        for i in f.iter() {
            let c = BigInt::from(rng.random_range(-1000i64..=1000));
            for (p, v) in point.iter_mut().zip(m.point(i)) {
                *p += &c * v;
            }
        }
        if point.iter().all(|x| x.is_zero()) {
            continue;
        }
        let mut rows: Vec<Vec<num_rational::BigRational>> = m
            .points()
            .iter()
            .map(|col| col.iter().map(|x| num_rational::BigRational::from(x.clone())).collect())
            .collect();
        rows.push(point.into_iter().map(num_rational::BigRational::from).collect());
        let extended = Arc::new(LinearMatroid::from_rational_rows(rows)?);
        let n = m.size();
        let contracted = minor(extended, Subset::EMPTY, Subset::singleton(n))?;
        let mut sample_rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e3779b97f4a7c15);
        let ground = m.ground();
        for _ in 0..samples {
            let x = Subset::from_bits(sample_rng.random::<u64>()).intersect(ground);
            if contracted.rank(x) != decorator.rank(x) {
                if attempt + 1 < 5 {
                    continue 'attempt; // likely a non-generic draw
                }
                report.case(false, || format!("rank mismatch on {{{x}}} after 5 draws"));
                return Ok(report);
            }
        }
        report.case(true, String::new);
        return Ok(report);
    }
    report.case(false, || "could not draw a nonzero point in the span".into());
    Ok(report)
}
