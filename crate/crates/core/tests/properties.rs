//! Property-based invariants: rank axioms against an independent Gaussian
//! elimination oracle, closure laws, minors, truncation rank arithmetic, and
//! format round-trips, all over randomly generated integer configurations.

mod common;

use std::sync::Arc;

use proptest::prelude::*;

use matroidal::coloring::Coloring;
use matroidal::degeneracy::{is_k_degenerate, verify_certificate};
use matroidal::matroid::{minor, simplify};
use matroidal::rational::{format_rational, parse_rational};
use matroidal::truncation::principal_truncation;
use matroidal::{LinearMatroid, RankOracle, Subset};

/// A small integer configuration: 4 to 7 points in dimension 3 or 4 with
/// entries in -9..=9, rejecting the all-zero corner cases.
fn small_matroid() -> impl Strategy<Value = LinearMatroid> {
    (4usize..=7, 3usize..=4)
        .prop_flat_map(|(n, d)| {
            proptest::collection::vec(proptest::collection::vec(-9i64..=9, d), n)
        })
        .prop_filter_map("needs a nonzero configuration", |rows| {
            if rows.iter().all(|r| r.iter().all(|&x| x == 0)) {
                return None;
            }
            LinearMatroid::from_int_rows(&rows).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rank_matches_gaussian_elimination(m in small_matroid(), bits in any::<u64>()) {
        let s = Subset::from_bits(bits).intersect(m.ground());
        prop_assert_eq!(m.rank(s), common::gaussian_rank(&m, s));
    }

    #[test]
    fn rank_axioms(m in small_matroid(), a in any::<u64>(), b in any::<u64>()) {
        let x = Subset::from_bits(a).intersect(m.ground());
        let y = Subset::from_bits(b).intersect(m.ground());
        // bounds and monotonicity
        prop_assert!(m.rank(x) <= x.len());
        if x.is_subset_of(y) {
            prop_assert!(m.rank(x) <= m.rank(y));
        }
        // submodularity
        prop_assert!(
            m.rank(x.union(y)) + m.rank(x.intersect(y)) <= m.rank(x) + m.rank(y)
        );
        // unit increase
        for e in m.ground().minus(x).iter() {
            let up = m.rank(x.with(e));
            prop_assert!(up == m.rank(x) || up == m.rank(x) + 1);
        }
    }

    #[test]
    fn closure_laws(m in small_matroid(), bits in any::<u64>()) {
        let x = Subset::from_bits(bits).intersect(m.ground());
        let cl = m.closure(x);
        prop_assert!(x.is_subset_of(cl));
        prop_assert_eq!(m.rank(cl), m.rank(x));
        prop_assert_eq!(m.closure(cl), cl);
    }

    #[test]
    fn contraction_rank_identity(m in small_matroid(), a in any::<u64>(), b in any::<u64>()) {
        let arc: Arc<dyn RankOracle> = Arc::new(m);
        let c = Subset::from_bits(a).intersect(arc.ground());
        let mi = minor(arc.clone(), Subset::EMPTY, c).unwrap();
        let x_base = Subset::from_bits(b).intersect(arc.ground()).minus(c);
        let x = mi.from_base(x_base);
        prop_assert_eq!(
            mi.rank(x),
            arc.rank(x_base.union(c)) - arc.rank(c)
        );
    }

    #[test]
    fn simplification_preserves_rank(m in small_matroid(), bits in any::<u64>()) {
        let arc: Arc<dyn RankOracle> = Arc::new(m);
        let s = simplify(arc.clone());
        prop_assert_eq!(s.matroid.full_rank(), arc.full_rank());
        let x = Subset::from_bits(bits).intersect(s.matroid.ground());
        prop_assert_eq!(s.matroid.rank(x), arc.rank(s.to_base(x)));
    }

    #[test]
    fn truncation_rank_rule(m in small_matroid(), fbits in any::<u64>(), xbits in any::<u64>()) {
        let arc: Arc<dyn RankOracle> = Arc::new(m);
        let f = arc.closure(Subset::from_bits(fbits).intersect(arc.ground()));
        prop_assume!(arc.rank(f) >= 2);
        let t = principal_truncation(arc.clone(), f).unwrap();
        let x = Subset::from_bits(xbits).intersect(arc.ground());
        let r = arc.rank(x);
        let expected = if r >= 1 && arc.rank(x.union(f)) == r { r - 1 } else { r };
        prop_assert_eq!(t.rank(x), expected);
        prop_assert_eq!(t.full_rank(), arc.full_rank() - 1);
    }

    #[test]
    fn degeneracy_certificates_verify(m in small_matroid(), bits in any::<u64>(), k in 2usize..=4) {
        let x = Subset::from_bits(bits).intersect(m.ground());
        if let Some(cert) = is_k_degenerate(&m, x, k).unwrap() {
            prop_assert!(verify_certificate(&m, x, &cert).is_ok());
        }
    }

    #[test]
    fn subset_display_roundtrip(bits in any::<u64>()) {
        let s = Subset::from_bits(bits);
        prop_assert_eq!(Subset::parse(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn coloring_roundtrip(red in 0u64..(1 << 8)) {
        let n = 8;
        let red = Subset::from_bits(red);
        let col = Coloring::new(red, Subset::full(n).minus(red), n).unwrap();
        prop_assert_eq!(Coloring::parse(&col.write(), n).unwrap(), col);
    }

    #[test]
    fn rational_roundtrip(p in -10000i64..10000, q in 1i64..10000) {
        let r = num_rational::BigRational::new(p.into(), q.into());
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn flats_within_scope_are_closed(m in small_matroid(), bits in any::<u64>()) {
        let scope = Subset::from_bits(bits).intersect(m.ground());
        for j in 1..=m.rank(scope) {
            for f in matroidal::flats::enumerate_flats_within(&m, scope, j) {
                prop_assert_eq!(m.rank(f.members), j);
                prop_assert_eq!(
                    m.closure(f.members).intersect(scope),
                    f.members
                );
            }
        }
    }
}

// a non-proptest sanity pass tying the independent oracle to a pinned value
#[test]
fn gaussian_oracle_sanity() {
    let m = common::two_disjoint_lines();
    assert_eq!(common::gaussian_rank(&m, m.ground()), 4);
    assert_eq!(common::gaussian_rank(&m, Subset::from_indices([0, 1, 2])), 2);
    assert_eq!(common::gaussian_rank(&m, Subset::EMPTY), 0);
}
