//! Red/blue 2-colorings: the (C1)-(C3) certification checks, the chained
//! (D1)-(D3) degeneracy test for colored matroids, monochromatic-blue
//! hyperplane counting, the skew-flat lemma checker, and the two recoloring
//! reductions (contraction and line truncation).

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::degeneracy::{is_k_degenerate, verify_certificate, DegeneracyCertificate};
use crate::flats::{enumerate_flats, enumerate_flats_within, hyperplanes};
use crate::matroid::{check_subset, is_simple, minor, simplify, Minor, RankOracle};
use crate::subset::Subset;
use crate::truncation::{complete_truncation, principal_truncation};
use crate::{Error, Result};

/// A partition of the ground set into red and blue elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub red: Subset,
    pub blue: Subset,
}

impl Coloring {
    pub fn new(red: Subset, blue: Subset, n: usize) -> Result<Coloring> {
        if !red.is_disjoint(blue) {
            return Err(Error::InvalidInput(format!(
                "red and blue overlap on {{{}}}",
                red.intersect(blue)
            )));
        }
        if red.union(blue) != Subset::full(n) {
            return Err(Error::InvalidInput(format!(
                "coloring must partition 0..{n}, but {{{}}} is uncolored",
                Subset::full(n).minus(red.union(blue))
            )));
        }
        Ok(Coloring { red, blue })
    }

    pub fn all_blue(n: usize) -> Coloring {
        Coloring { red: Subset::EMPTY, blue: Subset::full(n) }
    }

    /// Parses the `.col` format: `R`/`B` lines carrying whitespace-separated
    /// element indices, `#` comments. The lines must partition `0..n-1`.
    pub fn parse(text: &str, n: usize) -> Result<Coloring> {
        let mut red = Subset::EMPTY;
        let mut blue = Subset::EMPTY;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let tag = tokens.next().unwrap();
            let target = match tag {
                "R" => &mut red,
                "B" => &mut blue,
                other => {
                    return Err(Error::Parse(format!(
                        "line {}: expected R or B, found {other:?}",
                        lineno + 1
                    )))
                }
            };
            for tok in tokens {
                let i: usize = tok.parse().map_err(|_| {
                    Error::Parse(format!("line {}: bad element index {tok:?}", lineno + 1))
                })?;
                if i >= n {
                    return Err(Error::IndexOutOfRange { index: i, size: n });
                }
                *target = target.with(i);
            }
        }
        Coloring::new(red, blue, n)
    }

    pub fn write(&self) -> String {
        let list = |s: Subset| {
            s.iter().map(|i| format!(" {i}")).collect::<String>()
        };
        format!("R{}\nB{}\n", list(self.red), list(self.blue))
    }
}

/// Outcome of the (C1)-(C3) checks, with witnesses: the first hyperplane
/// missing red when C2 fails, the first uncovered blue line when C3 fails,
/// and one skew flat per blue line when C3 holds.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConditionReport {
    pub k: usize,
    pub c1: bool,
    pub c2: bool,
    pub c2_witness: Option<Subset>,
    pub c3: bool,
    pub c3_witness_line: Option<Subset>,
    /// line of M|B -> rank-(k-1) flat skew to it and disjoint from red
    pub c3_flats: Vec<(Subset, Subset)>,
}

impl ConditionReport {
    pub fn all_pass(&self) -> bool {
        self.c1 && self.c2 && self.c3
    }
}

/// Checks, for a simple rank-(k+1) matroid:
/// (C1) `r(B) >= 2`; (C2) every hyperplane meets `R`; (C3) every line of
/// `M|B` has a rank-(k-1) flat of `M` skew to it and disjoint from `R`.
pub fn check_conditions(m: &dyn RankOracle, col: &Coloring, k: usize) -> Result<ConditionReport> {
    require_colored_instance(m, col, k)?;
    let c1 = m.rank(col.blue) >= 2;

    let mut c2 = true;
    let mut c2_witness = None;
    for h in hyperplanes(m)? {
        if h.members.is_disjoint(col.red) {
            c2 = false;
            c2_witness = Some(h.members);
            break;
        }
    }

    // one enumeration of the rank-(k-1) flats, reused across all blue lines
    let skew_pool = enumerate_flats(m, k - 1)?;
    let mut c3 = true;
    let mut c3_witness_line = None;
    let mut c3_flats = Vec::new();
    for line in enumerate_flats_within(m, col.blue, 2) {
        let found = skew_pool
            .iter()
            .find(|f| f.members.is_disjoint(col.red) && m.is_skew(f.members, line.members));
        match found {
            Some(f) => c3_flats.push((line.members, f.members)),
            None => {
                c3 = false;
                c3_witness_line = Some(line.members);
                c3_flats.clear();
                break;
            }
        }
    }
    Ok(ConditionReport { k, c1, c2, c2_witness, c3, c3_witness_line, c3_flats })
}

fn require_colored_instance(m: &dyn RankOracle, col: &Coloring, k: usize) -> Result<()> {
    if col.red.union(col.blue) != m.ground() || !col.red.is_disjoint(col.blue) {
        return Err(Error::InvalidInput("coloring does not partition the ground set".into()));
    }
    if m.full_rank() != k + 1 {
        return Err(Error::InvalidInput(format!(
            "expected rank {} for k = {k}, got rank {}",
            k + 1,
            m.full_rank()
        )));
    }
    if !is_simple(m) {
        return Err(Error::InvalidInput("the matroid must be simple".into()));
    }
    Ok(())
}

/// Witness that a colored instance is chain-degenerate: either the blue set
/// itself is k-degenerate, or an ordered sequence of disjoint blue subsets
/// whose chained complete truncation leaves no hyperplane avoiding
/// `R ∪ F_1 ∪ ... ∪ F_t`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum KLDegeneracyCertificate {
    DegenerateBlue(DegeneracyCertificate),
    Chain(Vec<Subset>),
}

/// Searches for a chain-degeneracy witness. The chain search restricts each
/// `F_j` to closure-maximal blue subsets (flats generated within the
/// remaining blue elements, intersected back with them): the truncation
/// depends only on the closure, and enlarging within it only helps the
/// hyperplane condition. Candidates are tried rank-ascending, then in
/// canonical subset order; the first witness found is returned.
pub fn is_kl_degenerate(
    m: &Arc<dyn RankOracle>,
    col: &Coloring,
    k: usize,
) -> Result<Option<KLDegeneracyCertificate>> {
    require_colored_instance(&**m, col, k)?;
    if let Some(cert) = is_k_degenerate(&**m, col.blue, k)? {
        return Ok(Some(KLDegeneracyCertificate::DegenerateBlue(cert)));
    }
    let mut chain = Vec::new();
    if chain_search(m, col.red, col.blue, k.saturating_sub(2), &mut chain)? {
        return Ok(Some(KLDegeneracyCertificate::Chain(chain)));
    }
    Ok(None)
}

fn chain_search(
    cur: &Arc<dyn RankOracle>,
    covered: Subset,
    remaining_blue: Subset,
    depth_left: usize,
    chain: &mut Vec<Subset>,
) -> Result<bool> {
    if hyperplanes(&**cur)?.iter().all(|h| !h.members.is_disjoint(covered)) {
        return Ok(true);
    }
    if depth_left == 0 || cur.full_rank() < 4 {
        return Ok(false);
    }
    for rank in 2..=(cur.full_rank() - 2) {
        for f in enumerate_flats_within(&**cur, remaining_blue, rank) {
            let fm = f.members;
            chain.push(fm);
            let next = complete_truncation(cur.clone(), fm)?;
            if chain_search(&next, covered.union(fm), remaining_blue.minus(fm), depth_left - 1, chain)? {
                return Ok(true);
            }
            chain.pop();
        }
    }
    Ok(false)
}

/// Exact verifier for a chain-degeneracy certificate, sharing no code with
/// the search. Accepts arbitrary disjoint blue subsets, not only
/// closure-maximal ones.
pub fn verify_kl_certificate(
    m: &Arc<dyn RankOracle>,
    col: &Coloring,
    k: usize,
    cert: &KLDegeneracyCertificate,
) -> std::result::Result<(), String> {
    if require_colored_instance(&**m, col, k).is_err() {
        return Err("not a simple rank-(k+1) colored instance".into());
    }
    match cert {
        KLDegeneracyCertificate::DegenerateBlue(c) => {
            if c.k != k {
                return Err(format!("certificate index {} but k = {k}", c.k));
            }
            verify_certificate(&**m, col.blue, c)
        }
        KLDegeneracyCertificate::Chain(flats) => {
            if flats.len() + 2 > k {
                return Err(format!("chain length {} exceeds k - 2 = {}", flats.len(), k - 2));
            }
            let mut used = Subset::EMPTY;
            let mut cur: Arc<dyn RankOracle> = m.clone();
            for (j, &f) in flats.iter().enumerate() {
                if !f.is_subset_of(col.blue) {
                    return Err(format!("chain set {j} is not blue"));
                }
                if !f.is_disjoint(used) {
                    return Err(format!("chain set {j} reuses elements"));
                }
                used = used.union(f);
                let r = cur.rank(f);
                if r < 2 || r + 2 > cur.full_rank() {
                    return Err(format!(
                        "chain set {j} has rank {r} outside 2..={} at its stage",
                        cur.full_rank().saturating_sub(2)
                    ));
                }
                cur = complete_truncation(cur, f).map_err(|e| e.to_string())?;
            }
            let covered = col.red.union(used);
            for h in hyperplanes(&*cur).map_err(|e| e.to_string())? {
                if h.members.is_disjoint(covered) {
                    return Err(format!(
                        "hyperplane {{{}}} of the chained truncation avoids R and the chain",
                        h.members
                    ));
                }
            }
            Ok(())
        }
    }
}

/// `|{H ∈ hyperplanes(M) : H ∩ R = ∅}|`.
pub fn count_monochromatic_blue_hyperplanes(m: &dyn RankOracle, col: &Coloring) -> Result<usize> {
    Ok(hyperplanes(m)?.iter().filter(|h| h.members.is_disjoint(col.red)).count())
}

/// Outcome of the skew-flat lemma check on one line.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SkewFlatLemmaReport {
    /// Every hyperplane of the input meets red (the lemma's hypothesis).
    pub hypotheses_met: bool,
    /// A monochromatic-blue rank-(k-1) flat skew to the line exists.
    pub blue_skew_flat_exists: bool,
    pub passed: bool,
    pub failure: Option<String>,
}

/// Both branches of the skew-flat lemma for a line `L` of a simple
/// rank-(k+1) matroid in which every hyperplane meets red: if a
/// monochromatic-blue rank-(k-1) flat skew to `L` exists then `|L| <= |R|`;
/// otherwise every hyperplane of the principal truncation of `L` meets red.
pub fn check_skew_flat_lemma(
    m: &Arc<dyn RankOracle>,
    col: &Coloring,
    line: Subset,
) -> Result<SkewFlatLemmaReport> {
    if m.rank(line) != 2 || m.closure(line) != line {
        return Err(Error::InvalidInput(format!("{{{line}}} is not a line")));
    }
    let k = m.full_rank() - 1;
    if hyperplanes(&**m)?.iter().any(|h| h.members.is_disjoint(col.red)) {
        return Ok(SkewFlatLemmaReport {
            hypotheses_met: false,
            blue_skew_flat_exists: false,
            passed: false,
            failure: Some("a hyperplane of the input avoids red".into()),
        });
    }
    let blue_skew = enumerate_flats(&**m, k - 1)?
        .into_iter()
        .find(|f| f.members.is_disjoint(col.red) && m.is_skew(f.members, line));
    let (passed, failure) = if blue_skew.is_some() {
        if line.len() <= col.red.len() {
            (true, None)
        } else {
            (false, Some(format!("|L| = {} > |R| = {}", line.len(), col.red.len())))
        }
    } else {
        let trunc = principal_truncation(m.clone(), line)?;
        match hyperplanes(&*trunc)?.iter().find(|h| h.members.is_disjoint(col.red)) {
            None => (true, None),
            Some(h) => (
                false,
                Some(format!("truncated hyperplane {{{}}} avoids red", h.members)),
            ),
        }
    };
    Ok(SkewFlatLemmaReport {
        hypotheses_met: true,
        blue_skew_flat_exists: blue_skew.is_some(),
        passed,
        failure,
    })
}

/// A simplified reduced matroid with the induced coloring and the map back
/// to the input's element indices.
pub struct ReducedColoring {
    pub matroid: Arc<Minor>,
    pub coloring: Coloring,
    /// new index -> index in the input matroid
    pub kept: Vec<usize>,
}

/// Contracts a blue element and simplifies; the representative of a parallel
/// class is red exactly when the line of the input through the contracted
/// element and that class meets red.
pub fn contract_recolor(
    m: &Arc<dyn RankOracle>,
    col: &Coloring,
    e: usize,
) -> Result<ReducedColoring> {
    check_subset(&**m, Subset::singleton(e))?;
    if !col.blue.contains(e) {
        return Err(Error::InvalidInput(format!("element {e} is not blue")));
    }
    let contracted = minor(m.clone(), Subset::EMPTY, Subset::singleton(e))?;
    let contracted_kept = contracted.kept_elements().to_vec();
    let s = simplify(Arc::new(contracted));
    let kept: Vec<usize> = s.kept.iter().map(|&i| contracted_kept[i]).collect();
    let mut red = Subset::EMPTY;
    for (new, &old) in kept.iter().enumerate() {
        let class_line = m.closure(Subset::from_indices([e, old]));
        if !class_line.is_disjoint(col.red) {
            red = red.with(new);
        }
    }
    let n = kept.len();
    Ok(ReducedColoring {
        matroid: s.matroid,
        coloring: Coloring { red, blue: Subset::full(n).minus(red) },
        kept,
    })
}

/// Principally truncates a line and simplifies; the point standing for the
/// collapsed line is red exactly when the line meets red, all other elements
/// keep their colors.
pub fn truncate_line_recolor(
    m: &Arc<dyn RankOracle>,
    col: &Coloring,
    line: Subset,
) -> Result<ReducedColoring> {
    if m.rank(line) != 2 || m.closure(line) != line {
        return Err(Error::InvalidInput(format!("{{{line}}} is not a line")));
    }
    let trunc: Arc<dyn RankOracle> = principal_truncation(m.clone(), line)?;
    let s = simplify(trunc);
    let kept = s.kept.clone();
    let mut red = Subset::EMPTY;
    for (new, &old) in kept.iter().enumerate() {
        let is_red = if line.contains(old) {
            !line.is_disjoint(col.red)
        } else {
            col.red.contains(old)
        };
        if is_red {
            red = red.with(new);
        }
    }
    let n = kept.len();
    Ok(ReducedColoring {
        matroid: s.matroid,
        coloring: Coloring { red, blue: Subset::full(n).minus(red) },
        kept,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::LinearMatroid;

    fn two_lines_arc() -> Arc<dyn RankOracle> {
        Arc::new(
            LinearMatroid::from_int_rows(&[
                vec![1, 0, 0, 0],
                vec![0, 1, 0, 0],
                vec![1, 1, 0, 0],
                vec![0, 0, 1, 0],
                vec![0, 0, 0, 1],
                vec![0, 0, 1, 1],
            ])
            .unwrap(),
        )
    }

    /// Two disjoint 3-point lines plus one point spanning with either line.
    fn two_lines_plus_generic() -> Arc<dyn RankOracle> {
        Arc::new(
            LinearMatroid::from_int_rows(&[
                vec![1, 0, 0, 0],
                vec![0, 1, 0, 0],
                vec![1, 1, 0, 0],
                vec![0, 0, 1, 0],
                vec![0, 0, 0, 1],
                vec![0, 0, 1, 1],
                vec![1, 2, 4, 8],
            ])
            .unwrap(),
        )
    }

    #[test]
    fn coloring_roundtrip_and_validation() {
        let c = Coloring::parse("# comment\nR 0 2\nB 1 3\n", 4).unwrap();
        assert_eq!(c.red, Subset::from_indices([0, 2]));
        assert_eq!(Coloring::parse(&c.write(), 4).unwrap(), c);
        assert!(Coloring::parse("R 0 1\nB 1\n", 2).is_err()); // overlap
        assert!(Coloring::parse("R 0\nB 1\n", 3).is_err()); // 2 uncolored
        assert!(Coloring::parse("R 5\nB 0\n", 2).is_err()); // out of range
        let empty_red = Coloring::parse("R\nB 0 1\n", 2).unwrap();
        assert!(empty_red.red.is_empty());
    }

    #[test]
    fn conditions_on_two_lines() {
        let m = two_lines_arc();
        // red = one point per line hits every hyperplane
        let col = Coloring::new(
            Subset::from_indices([0, 3]),
            Subset::from_indices([1, 2, 4, 5]),
            6,
        )
        .unwrap();
        let rep = check_conditions(&*m, &col, 3).unwrap();
        assert!(rep.c1);
        assert!(rep.c2, "{:?}", rep.c2_witness);
        // every rank-2 flat inside the opposite line is the whole line, which
        // contains a red point, so no blue line has a red-free skew flat
        assert!(!rep.c3);
        assert!(rep.c3_witness_line.is_some());
        assert!(!rep.all_pass());
    }

    #[test]
    fn skew_flats_exist_with_a_generic_point() {
        let m = two_lines_plus_generic();
        // red = one point per line; the generic point gives red-free skew flats
        let col = Coloring::new(
            Subset::from_indices([0, 3]),
            Subset::from_indices([1, 2, 4, 5, 6]),
            7,
        )
        .unwrap();
        let rep = check_conditions(&*m, &col, 3).unwrap();
        assert!(rep.c1);
        // C2 fails here (the generic point spans red-free planes), but every
        // blue line now has a red-free skew flat through the generic point
        assert!(rep.c3, "{rep:?}");
        assert_eq!(rep.c3_flats.len(), 10);
        // independently re-verify each recorded skew-flat witness
        for (line, flat) in &rep.c3_flats {
            assert_eq!(m.rank(*flat), 2);
            assert_eq!(m.closure(*flat), *flat);
            assert!(flat.intersect(col.red).is_empty());
            assert!(m.is_skew(*line, *flat));
        }
    }

    #[test]
    fn c2_fails_without_red() {
        let m = two_lines_arc();
        let col = Coloring::all_blue(6);
        let rep = check_conditions(&*m, &col, 3).unwrap();
        assert!(!rep.c2);
        assert!(rep.c2_witness.is_some());
        assert_eq!(count_monochromatic_blue_hyperplanes(&*m, &col).unwrap(), 6);
    }

    #[test]
    fn rank_mismatch_rejected() {
        let m = two_lines_arc();
        assert!(check_conditions(&*m, &Coloring::all_blue(6), 2).is_err());
    }

    #[test]
    fn kl_search_exhausts_on_two_lines_plus_generic() {
        // blue is not 3-degenerate (two lines exhaust the budget and the
        // free point stays uncovered), and every chain attempt leaves a
        // generic cross pair as a truncated hyperplane avoiding red
        let m = two_lines_plus_generic();
        let col = Coloring::all_blue(7);
        assert!(is_k_degenerate(&*m, col.blue, 3).unwrap().is_none());
        assert!(is_kl_degenerate(&m, &col, 3).unwrap().is_none());
    }

    #[test]
    fn manual_chain_certificate_verifies() {
        // R = {3}: a hyperplane {0,1,2,4} avoids red, so the empty chain is
        // invalid, but after truncating the first line every hyperplane
        // either contains it or is the second line, which holds 3
        let m = two_lines_arc();
        let col = Coloring::new(
            Subset::singleton(3),
            Subset::from_indices([0, 1, 2, 4, 5]),
            6,
        )
        .unwrap();
        assert!(verify_kl_certificate(&m, &col, 3, &KLDegeneracyCertificate::Chain(vec![])).is_err());
        let chain = KLDegeneracyCertificate::Chain(vec![Subset::from_indices([0, 1, 2])]);
        verify_kl_certificate(&m, &col, 3, &chain).unwrap();
        // the searcher prefers the blue-degeneracy marker on this instance
        let found = is_kl_degenerate(&m, &col, 3).unwrap().unwrap();
        assert!(matches!(found, KLDegeneracyCertificate::DegenerateBlue(_)));
    }

    #[test]
    fn kl_degenerate_blue_marker() {
        let m = two_lines_arc();
        let col = Coloring::new(
            Subset::from_indices([0, 3]),
            Subset::from_indices([1, 2, 4, 5]),
            6,
        )
        .unwrap();
        let cert = is_kl_degenerate(&m, &col, 3).unwrap().expect("blue is 3-degenerate");
        assert!(matches!(cert, KLDegeneracyCertificate::DegenerateBlue(_)));
        verify_kl_certificate(&m, &col, 3, &cert).unwrap();
    }

    #[test]
    fn empty_chain_certificate_is_exactly_c2() {
        let m = two_lines_arc();
        let good = Coloring::new(
            Subset::from_indices([0, 3]),
            Subset::from_indices([1, 2, 4, 5]),
            6,
        )
        .unwrap();
        assert!(verify_kl_certificate(&m, &good, 3, &KLDegeneracyCertificate::Chain(vec![])).is_ok());
        let bad = Coloring::new(
            Subset::from_indices([0, 1]),
            Subset::from_indices([2, 3, 4, 5]),
            6,
        )
        .unwrap();
        assert!(verify_kl_certificate(&m, &bad, 3, &KLDegeneracyCertificate::Chain(vec![])).is_err());
    }

    #[test]
    fn truncate_line_recolor_collapses_the_line() {
        let m = two_lines_arc();
        let col = Coloring::new(
            Subset::from_indices([1]),
            Subset::from_indices([0, 2, 3, 4, 5]),
            6,
        )
        .unwrap();
        let line = Subset::from_indices([0, 1, 2]);
        let red = truncate_line_recolor(&m, &col, line).unwrap();
        assert_eq!(red.matroid.size(), 4);
        assert_eq!(red.kept, vec![0, 3, 4, 5]);
        // the collapsed line contains the red element 1, so its point is red
        assert!(red.coloring.red.contains(0));
        assert_eq!(red.coloring.red.len(), 1);
        assert_eq!(red.matroid.full_rank(), 3);
    }

    #[test]
    fn contract_recolor_inherits_red_through_lines() {
        let m = two_lines_arc();
        let col = Coloring::new(
            Subset::from_indices([1]),
            Subset::from_indices([0, 2, 3, 4, 5]),
            6,
        )
        .unwrap();
        let red = contract_recolor(&m, &col, 0).unwrap();
        // contracting 0 makes 1 and 2 parallel; their class line {0,1,2}
        // meets red, so the representative is red
        assert_eq!(red.matroid.size(), 4);
        assert_eq!(red.kept, vec![1, 3, 4, 5]);
        assert_eq!(red.coloring.red, Subset::singleton(0));
    }

    #[test]
    fn contract_recolor_no_red_stays_blue() {
        let m = two_lines_arc();
        let red = contract_recolor(&m, &Coloring::all_blue(6), 0).unwrap();
        assert!(red.coloring.red.is_empty());
    }

    #[test]
    fn skew_flat_lemma_guard_path() {
        let m = two_lines_arc();
        let rep = check_skew_flat_lemma(&m, &Coloring::all_blue(6), Subset::from_indices([0, 1, 2]))
            .unwrap();
        assert!(!rep.hypotheses_met);
    }

    #[test]
    fn skew_flat_lemma_truncation_branch() {
        let m = two_lines_arc();
        // red on the second line only: every hyperplane contains a full line,
        // and the planes containing the first line all meet {3}? no — use a
        // red element on each line so the hypothesis holds
        let col = Coloring::new(
            Subset::from_indices([0, 3]),
            Subset::from_indices([1, 2, 4, 5]),
            6,
        )
        .unwrap();
        let line = Subset::from_indices([0, 1, 2]);
        let rep = check_skew_flat_lemma(&m, &col, line).unwrap();
        assert!(rep.hypotheses_met);
        // the only rank-2 flat skew to the line is the other line, which
        // meets red, so the truncation branch applies
        assert!(!rep.blue_skew_flat_exists);
        assert!(rep.passed, "{:?}", rep.failure);
    }
}
