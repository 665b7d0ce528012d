//! Property suites behind the `verify` CLI command: each suite runs a batch
//! of seeded checks and reports pass/fail with counterexample witnesses.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::analysis::{check_aggregate_inequality, find_line_cover, verify_cover};
use crate::coloring::{
    check_conditions, is_kl_degenerate, verify_kl_certificate, Coloring, KLDegeneracyCertificate,
};
use crate::constructions::{
    fig1_configuration, graphic_construction, line_adjoined_construction,
    parallel_copies_construction, random_instance,
};
use crate::degeneracy::{is_k_degenerate, largest_k_degenerate_subset, verify_certificate};
use crate::flats::{enumerate_flats, hyperplanes};
use crate::matroid::RankOracle;
use crate::subset::Subset;
use crate::truncation::{
    principal_truncation, truncation_realization_cross_check, verify_truncation_properties,
    CheckReport,
};
use crate::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn from_check(name: &str, check: CheckReport) -> SuiteReport {
        SuiteReport { name: name.into(), passed: check.passed, cases: check.cases, failures: check.failures }
    }
}

pub const SUITE_NAMES: &[&str] = &[
    "core",
    "flats",
    "degeneracy",
    "truncation",
    "coloring",
    "constructions",
    "analysis",
];

/// Runs one named suite, or all of them for `"all"`.
pub fn run_suites(area: &str, seed: u64, trials: usize) -> Result<Vec<SuiteReport>> {
    let areas: Vec<&str> = if area == "all" { SUITE_NAMES.to_vec() } else { vec![area] };
    areas
        .into_iter()
        .map(|a| match a {
            "core" => suite_core(seed, trials),
            "flats" => suite_flats(seed, trials),
            "degeneracy" => suite_degeneracy(seed, trials),
            "truncation" => suite_truncation(seed, trials),
            "coloring" => suite_coloring(seed, trials),
            "constructions" => suite_constructions(),
            "analysis" => suite_analysis(seed, trials),
            other => Err(Error::InvalidInput(format!("unknown suite {other:?}"))),
        })
        .collect()
}

fn sample_instances(seed: u64, trials: usize) -> Result<Vec<Arc<dyn RankOracle>>> {
    let mut out: Vec<Arc<dyn RankOracle>> = Vec::new();
    for i in 0..trials.max(1) {
        let rank = 3 + (i % 2);
        let n = 7 + (i % 3);
        out.push(Arc::new(random_instance(n, rank, seed.wrapping_add(i as u64), 20)?));
    }
    Ok(out)
}

fn random_subset(rng: &mut ChaCha8Rng, ground: Subset) -> Subset {
    Subset::from_bits(rng.random::<u64>()).intersect(ground)
}

/// Rank axioms, closure laws, and skewness on sampled subsets.
fn suite_core(seed: u64, trials: usize) -> Result<SuiteReport> {
    let mut check = CheckReport::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for m in sample_instances(seed, trials)? {
        let ground = m.ground();
        for _ in 0..50 {
            let x = random_subset(&mut rng, ground);
            let y = random_subset(&mut rng, ground);
            let rx = m.rank(x);
            let ry = m.rank(y);
            check.case(rx <= x.len(), || format!("r({{{x}}}) > |X|"));
            check.case(
                m.rank(x.union(y)) + m.rank(x.intersect(y)) <= rx + ry,
                || format!("submodularity fails on {{{x}}}, {{{y}}}"),
            );
            if x.is_subset_of(y) {
                check.case(rx <= ry, || format!("monotonicity fails on {{{x}}} ⊆ {{{y}}}"));
            }
            if let Some(e) = ground.minus(x).first() {
                check.case(m.rank(x.with(e)) <= rx + 1, || format!("unit increase fails on {{{x}}}"));
            }
            let cl = m.closure(x);
            check.case(m.rank(cl) == rx, || format!("closure changes rank of {{{x}}}"));
            check.case(m.closure(cl) == cl, || format!("closure not idempotent on {{{x}}}"));
        }
    }
    Ok(SuiteReport::from_check("core", check))
}

/// Flat enumeration agrees with the closures of all subsets.
fn suite_flats(seed: u64, trials: usize) -> Result<SuiteReport> {
    let mut check = CheckReport::new();
    for m in sample_instances(seed, trials)? {
        if m.size() > 10 {
            continue;
        }
        for j in 0..=m.full_rank() {
            let fast: Vec<Subset> = enumerate_flats(&*m, j)?.into_iter().map(|f| f.members).collect();
            let mut slow: BTreeSet<Subset> = BTreeSet::new();
            for bits in 0..(1u64 << m.size()) {
                let s = Subset::from_bits(bits);
                if m.rank(s) == j {
                    let cl = m.closure(s);
                    if m.rank(cl) == j {
                        slow.insert(cl);
                    }
                }
            }
            let slow: Vec<Subset> = slow.into_iter().collect();
            check.case(fast == slow, || format!("flat lists differ at rank {j}"));
        }
    }
    Ok(SuiteReport::from_check("flats", check))
}

/// Certificates verify and reported maxima are maximal.
fn suite_degeneracy(seed: u64, trials: usize) -> Result<SuiteReport> {
    let mut check = CheckReport::new();
    for m in sample_instances(seed, trials)? {
        for k in 2..=m.full_rank() {
            let (best, cert) = largest_k_degenerate_subset(&*m, m.ground(), k)?;
            check.case(
                verify_certificate(&*m, best, &cert).is_ok(),
                || format!("certificate rejected for k = {k}"),
            );
            if m.size() <= 9 {
                // nothing strictly larger may pass the membership test
                for bits in 0..(1u64 << m.size()) {
                    let s = Subset::from_bits(bits);
                    if s.len() > best.len() && is_k_degenerate(&*m, s, k)?.is_some() {
                        check.case(false, || format!("{{{s}}} beats the reported maximum at k = {k}"));
                    }
                }
                check.cases += 1;
            }
        }
    }
    Ok(SuiteReport::from_check("degeneracy", check))
}

/// Structural truncation properties, decorator submodularity, and the
/// coordinate realization cross-check.
fn suite_truncation(seed: u64, trials: usize) -> Result<SuiteReport> {
    let mut check = CheckReport::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xABCD);
    for i in 0..trials.max(1) {
        let base = Arc::new(random_instance(8, 4, seed.wrapping_add(1000 + i as u64), 20)?);
        let m: Arc<dyn RankOracle> = base.clone();
        // a rank-2 flat with 2 <= r(F) <= r(M) - 2
        let f = enumerate_flats(&*m, 2)?[0].members;
        let report = verify_truncation_properties(m.clone(), f, 100, seed)?;
        check.case(report.passed, || format!("truncation properties fail: {:?}", report.failures));
        let cross = truncation_realization_cross_check(&base, f, 200, seed.wrapping_add(i as u64))?;
        check.case(cross.passed, || format!("realization cross-check fails: {:?}", cross.failures));
        let t = principal_truncation(m.clone(), f)?;
        for _ in 0..50 {
            let x = random_subset(&mut rng, t.ground());
            let y = random_subset(&mut rng, t.ground());
            check.case(
                t.rank(x.union(y)) + t.rank(x.intersect(y)) <= t.rank(x) + t.rank(y),
                || format!("decorator submodularity fails on {{{x}}}, {{{y}}}"),
            );
        }
    }
    Ok(SuiteReport::from_check("truncation", check))
}

/// Witness validity, the empty-chain/C2 equivalence, and the two-red
/// impossibility.
fn suite_coloring(seed: u64, trials: usize) -> Result<SuiteReport> {
    let mut check = CheckReport::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5EED);
    for m in sample_instances(seed, trials)? {
        let n = m.size();
        let k = m.full_rank() - 1;
        if k < 2 {
            continue;
        }
        // every coloring with two red points fails one of the conditions
        for a in 0..n {
            for b in (a + 1)..n {
                let red = Subset::from_indices([a, b]);
                let col = Coloring { red, blue: m.ground().minus(red) };
                let rep = check_conditions(&*m, &col, k)?;
                check.case(!rep.all_pass(), || format!("conditions pass with red {{{red}}}"));
            }
        }
        // random colorings: witnesses verify; empty chain iff C2
        for _ in 0..10 {
            let red = random_subset(&mut rng, m.ground());
            let col = Coloring { red, blue: m.ground().minus(red) };
            let rep = check_conditions(&*m, &col, k)?;
            for (line, flat) in &rep.c3_flats {
                check.case(
                    m.rank(*flat) == k - 1
                        && flat.is_disjoint(red)
                        && m.is_skew(*line, *flat),
                    || format!("invalid witness flat {{{flat}}} for line {{{line}}}"),
                );
            }
            let empty_chain_ok =
                verify_kl_certificate(&m, &col, k, &KLDegeneracyCertificate::Chain(vec![])).is_ok();
            check.case(empty_chain_ok == rep.c2, || format!("empty chain vs C2 mismatch, red {{{red}}}"));
            if let Some(cert) = is_kl_degenerate(&m, &col, k)? {
                check.case(
                    verify_kl_certificate(&m, &col, k, &cert).is_ok(),
                    || format!("search produced a rejected certificate, red {{{red}}}"),
                );
            }
        }
    }
    Ok(SuiteReport::from_check("coloring", check))
}

/// The generated families pass their condition checks with the right sizes.
fn suite_constructions() -> Result<SuiteReport> {
    let mut check = CheckReport::new();
    let fig1 = fig1_configuration();
    let rep = check_conditions(&fig1.matroid, &fig1.coloring, 2)?;
    check.case(rep.all_pass() && fig1.coloring.blue.len() == 4, || "triangle instance fails".into());
    for k in 2..=4 {
        let inst = graphic_construction(k)?;
        let rep = check_conditions(&inst.matroid, &inst.coloring, k)?;
        let expect = (k + 2) * (k + 1) / 2 - 2;
        check.case(
            rep.all_pass() && inst.coloring.blue.len() == expect,
            || format!("graphic family fails at k = {k}"),
        );
    }
    for (k, t) in [(3, 3), (3, 4), (4, 3)] {
        let inst = parallel_copies_construction(k, t)?;
        let rep = check_conditions(&inst.matroid, &inst.coloring, k)?;
        check.case(rep.all_pass(), || format!("parallel family fails at k = {k}, t = {t}"));
    }
    let (adjoined, lines) = line_adjoined_construction(&fig1, 2)?;
    check.case(adjoined.full_rank() == 6 && adjoined.size() == 10, || "adjoined shape wrong".into());
    for h in hyperplanes(&adjoined)? {
        check.case(
            lines.iter().any(|l| l.is_subset_of(h.members)),
            || format!("hyperplane {{{}}} avoids the adjoined lines", h.members),
        );
    }
    Ok(SuiteReport::from_check("constructions", check))
}

/// Aggregate inequality and cover certification on random instances.
fn suite_analysis(seed: u64, trials: usize) -> Result<SuiteReport> {
    let mut check = CheckReport::new();
    for i in 0..trials.max(1) {
        let m = random_instance(9, 4, seed.wrapping_add(2000 + i as u64), 30)?;
        let rep = check_aggregate_inequality(&m, 3)?;
        if rep.hypotheses_met {
            check.case(rep.passed, || format!("aggregate bound fails: lhs {} rhs {}", rep.lhs, rep.rhs));
        }
        if let Some(cover) = find_line_cover(&m, 2)? {
            check.case(verify_cover(&m, &cover).is_ok(), || "cover fails verification".into());
        } else {
            check.case(true, String::new);
        }
    }
    Ok(SuiteReport::from_check("analysis", check))
}
