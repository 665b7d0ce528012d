//! Exact-coordinate generators for the colored lower-bound families, a
//! seeded random instance source, and the planar direction-count helper.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coloring::{check_conditions, Coloring};
use crate::linear::LinearMatroid;
use crate::matroid::RankOracle;
use crate::subset::Subset;
use crate::{Error, Result};

/// A matroid with a coloring and the degeneracy index it is built for.
pub struct ColoredInstance {
    pub matroid: LinearMatroid,
    pub coloring: Coloring,
    pub claimed_k: usize,
    pub provenance: String,
}

fn rat(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

fn rat2(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The 7-point planar configuration: a triangle with its centroid in blue
/// and the three edge midpoints in red. No line is monochromatic blue; every
/// blue line has a red-free point off it. Witnesses 4 blue points against 3
/// red at k = 2.
pub fn fig1_configuration() -> ColoredInstance {
    // homogeneous (x, y, 1); blue: vertices and centroid, red: midpoints
    let pts: Vec<(BigRational, BigRational)> = vec![
        (rat(0), rat(0)),
        (rat(6), rat(0)),
        (rat(3), rat(6)),
        (rat(3), rat(2)),
        (rat(3), rat(0)),
        (rat2(3, 2), rat(3)),
        (rat2(9, 2), rat(3)),
    ];
    let rows: Vec<Vec<BigRational>> =
        pts.into_iter().map(|(x, y)| vec![x, y, BigRational::one()]).collect();
    let matroid = LinearMatroid::from_rational_rows(rows).expect("fixed simple configuration");
    ColoredInstance {
        matroid,
        coloring: Coloring {
            red: Subset::from_indices([4, 5, 6]),
            blue: Subset::from_indices([0, 1, 2, 3]),
        },
        claimed_k: 2,
        provenance: "triangle-centroid-midpoints".into(),
    }
}

/// The graphic lower-bound family for 3 red points: the cycle matroid of the
/// complete graph on k+2 vertices plus one extra point. Edge {i,j} with
/// j <= k+1 maps to e_i - e_j, edge {i, k+2} to e_i; the red points are the
/// edges {1,2} and {3,4} and the extra vector (1,1,-1,-1,0,...). Blue count
/// is C(k+2,2) - 2.
pub fn graphic_construction(k: usize) -> Result<ColoredInstance> {
    if k < 2 {
        return Err(Error::InvalidInput(format!("graphic construction needs k >= 2, got {k}")));
    }
    let dim = k + 1;
    let vertices = k + 2;
    let edge_vec = |i: usize, j: usize| -> Vec<i64> {
        // 1-based vertices, i < j
        let mut v = vec![0i64; dim];
        v[i - 1] = 1;
        if j < vertices {
            v[j - 1] = -1;
        }
        v
    };
    let mut blue_rows = Vec::new();
    for i in 1..=vertices {
        for j in (i + 1)..=vertices {
            if (i, j) == (1, 2) || (i, j) == (3, 4) {
                continue;
            }
            blue_rows.push(edge_vec(i, j));
        }
    }
    let blue_count = blue_rows.len();
    let mut rows = blue_rows;
    rows.push(edge_vec(1, 2));
    rows.push(edge_vec(3, 4));
    let mut r3 = vec![0i64; dim];
    r3[0] = 1;
    r3[1] = 1;
    r3[2] = -1;
    if dim > 3 {
        r3[3] = -1;
    }
    rows.push(r3);
    let matroid = LinearMatroid::from_int_rows(&rows)?;
    let n = matroid.size();
    Ok(ColoredInstance {
        matroid,
        coloring: Coloring {
            blue: Subset::full(blue_count),
            red: Subset::full(n).minus(Subset::full(blue_count)),
        },
        claimed_k: k,
        provenance: format!("complete-graph-plus-point k={k}"),
    })
}

/// Planar rational seed sets with few directions, used by
/// [`parallel_copies_construction`].
fn planar_seed(t: usize) -> (Vec<(BigRational, BigRational)>, usize, bool) {
    // returns (seed, direction count, whether the even-t bonus applies)
    match t {
        4 => {
            let s = vec![
                (rat(0), rat(0)),
                (rat(2), rat(0)),
                (rat(2), rat(2)),
                (rat(0), rat(2)),
                (rat(1), rat(1)),
            ];
            (s, 4, true)
        }
        6 => {
            let s = vec![
                (rat(2), rat(0)),
                (rat(1), rat(1)),
                (rat(-1), rat(1)),
                (rat(-2), rat(0)),
                (rat(-1), rat(-1)),
                (rat(1), rat(-1)),
                (rat(0), rat(0)),
            ];
            (s, 6, true)
        }
        _ => {
            // near-pencil: t-1 collinear points plus an apex
            let mut s: Vec<(BigRational, BigRational)> =
                (0..t - 1).map(|i| (rat(i as i64), rat(0))).collect();
            s.push((rat(0), rat(1)));
            (s, t, false)
        }
    }
}

/// Number of distinct directions among all point pairs, exactly.
pub fn direction_count(points: &[(BigRational, BigRational)]) -> Result<usize> {
    if points.len() < 2 {
        return Err(Error::InvalidInput("direction count needs at least 2 points".into()));
    }
    let mut dirs: BTreeSet<Option<BigRational>> = BTreeSet::new();
    for (i, p) in points.iter().enumerate() {
        for q in points.iter().skip(i + 1) {
            let dx = &q.0 - &p.0;
            let dy = &q.1 - &p.1;
            if dx.is_zero() && dy.is_zero() {
                return Err(Error::InvalidInput(format!("duplicate point at index {i}")));
            }
            // slope, with vertical kept distinct
            dirs.insert(if dx.is_zero() { None } else { Some(dy / dx) });
        }
    }
    Ok(dirs.len())
}

/// The parallel-copies lower-bound family: k-1 lifted copies of a planar
/// seed with few directions in blue, the seed's directions at infinity in
/// red. Rank k+1 in dimension k+2. Odd t uses the near-pencil seed (|S| = t,
/// t directions); t in {4, 6} use the square-plus-center and
/// hexagon-plus-center seeds (|S| = t+1); other even t fall back to the
/// near-pencil with |S| = t, which certifies only the odd-style bound, as
/// recorded in the provenance.
pub fn parallel_copies_construction(k: usize, t: usize) -> Result<ColoredInstance> {
    if k < 3 || t < 3 {
        return Err(Error::InvalidInput(format!(
            "parallel copies need k >= 3 and t >= 3, got k = {k}, t = {t}"
        )));
    }
    let (seed, expected_dirs, bonus) = planar_seed(t);
    debug_assert_eq!(direction_count(&seed).unwrap(), expected_dirs);
    let dim = k + 2;
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for copy in 0..(k - 1) {
        for (a, b) in &seed {
            let mut v = vec![BigRational::zero(); dim];
            v[0] = BigRational::one();
            v[1] = a.clone();
            v[2] = b.clone();
            v[3 + copy] = BigRational::one();
            rows.push(v);
        }
    }
    let blue_count = rows.len();
    // deduplicated directions at infinity
    let mut dirs: BTreeSet<(BigInt, BigInt)> = BTreeSet::new();
    for (i, p) in seed.iter().enumerate() {
        for q in seed.iter().skip(i + 1) {
            let dx = &q.0 - &p.0;
            let dy = &q.1 - &p.1;
            dirs.insert(primitive_direction(dx, dy));
        }
    }
    for (dx, dy) in dirs {
        let mut v = vec![BigRational::zero(); dim];
        v[1] = BigRational::from(dx);
        v[2] = BigRational::from(dy);
        rows.push(v);
    }
    let matroid = LinearMatroid::from_rational_rows(rows)?;
    let n = matroid.size();
    let bound_note = if bonus { "even-bonus" } else { "plain" };
    Ok(ColoredInstance {
        matroid,
        coloring: Coloring {
            blue: Subset::full(blue_count),
            red: Subset::full(n).minus(Subset::full(blue_count)),
        },
        claimed_k: k,
        provenance: format!("parallel-copies k={k} t={t} seed={} bound={bound_note}", seed_name(t)),
    })
}

fn seed_name(t: usize) -> &'static str {
    match t {
        4 => "square-plus-center",
        6 => "hexagon-plus-center",
        _ => "near-pencil",
    }
}

fn primitive_direction(dx: BigRational, dy: BigRational) -> (BigInt, BigInt) {
    // clear denominators, reduce, and fix the sign of the leading entry
    let a = dx.numer() * dy.denom();
    let b = dy.numer() * dx.denom();
    let g = num_integer::gcd(a.clone(), b.clone());
    let (mut a, mut b) = if g.is_zero() { (a, b) } else { (a / &g, b / &g) };
    let flip = a.is_negative() || (a.is_zero() && b.is_negative());
    if flip {
        a = -a;
        b = -b;
    }
    (a, b)
}

/// Replaces each red point of the base with an m-point line in a fresh
/// coordinate direction. Output order: the blue points of the base first,
/// then the m points of each adjoined line (the original red point is the
/// line's first point). Returns the matroid together with the adjoined
/// lines; the rank grows by the number of red points.
pub fn line_adjoined_construction(
    base: &ColoredInstance,
    m: usize,
) -> Result<(LinearMatroid, Vec<Subset>)> {
    if m < 2 {
        return Err(Error::InvalidInput(format!("adjoined lines need m >= 2, got {m}")));
    }
    let report = check_conditions(&base.matroid, &base.coloring, base.claimed_k)?;
    if !report.all_pass() {
        return Err(Error::InvalidInput(
            "the base instance does not satisfy the coloring conditions".into(),
        ));
    }
    let d = base.matroid.dim();
    let reds: Vec<usize> = base.coloring.red.indices();
    let new_dim = d + reds.len();
    let pad = |v: &[BigInt]| -> Vec<BigRational> {
        let mut out: Vec<BigRational> =
            v.iter().map(|x| BigRational::from(x.clone())).collect();
        out.resize(new_dim, BigRational::zero());
        out
    };
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for b in base.coloring.blue.iter() {
        rows.push(pad(base.matroid.point(b)));
    }
    let mut lines = Vec::new();
    for (i, &r) in reds.iter().enumerate() {
        let start = rows.len();
        for lambda in 0..m {
            let mut v = pad(base.matroid.point(r));
            v[d + i] = rat(lambda as i64);
            rows.push(v);
        }
        lines.push(Subset::from_indices(start..start + m));
    }
    let matroid = LinearMatroid::from_rational_rows(rows)?;
    Ok((matroid, lines))
}

/// Seeded generator of simple spanning integer-coordinate instances; the
/// same arguments always produce the same matrix. Gives up after 10^4
/// rejected draws.
pub fn random_instance(
    n: usize,
    rank: usize,
    seed: u64,
    coordinate_bound: i64,
) -> Result<LinearMatroid> {
    if rank > n {
        return Err(Error::InvalidInput(format!("rank {rank} exceeds n = {n}")));
    }
    if coordinate_bound < 1 {
        return Err(Error::InvalidInput("coordinate bound must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..10_000 {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| {
                (0..rank)
                    .map(|_| rng.random_range(-coordinate_bound..=coordinate_bound))
                    .collect()
            })
            .collect();
        let Ok(m) = LinearMatroid::from_int_rows(&rows) else {
            continue; // a zero column
        };
        if m.full_rank() == rank && crate::matroid::is_simple(&m) {
            return Ok(m);
        }
    }
    Err(Error::InvalidInput(format!(
        "no simple spanning instance found for n = {n}, rank = {rank}, seed = {seed}"
    )))
}
