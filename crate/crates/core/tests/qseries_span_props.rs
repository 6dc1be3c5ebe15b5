use proptest::prelude::*;
use tripletorb_core::qseries::{dtheta, p_hat, q_hat, theta};
use tripletorb_core::span::{exact_rank, CoeffMatrix};
use tripletorb_core::{int, rat, BigRat, QExpansion, TauVector};

fn small_rat() -> impl Strategy<Value = BigRat> {
    (-20i64..20, 1i64..7).prop_map(|(n, d)| rat(n, d))
}

fn qexp() -> impl Strategy<Value = QExpansion> {
    (
        1u64..13,
        prop::collection::vec((0i64..120, small_rat()), 0..12),
    )
        .prop_map(|(g, terms)| {
            let mut s = QExpansion::zero(g, &int(10));
            for (k, c) in terms {
                s.add_term(&rat(k, g as i64), c).unwrap();
            }
            s
        })
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..7, 1usize..8)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..4, c), r))
}

fn to_rat(rows: &[Vec<i64>]) -> Vec<Vec<BigRat>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| int(x)).collect())
        .collect()
}

fn rank_of(rows: Vec<Vec<BigRat>>) -> usize {
    exact_rank(&CoeffMatrix::from_rows(rows).unwrap())
}

/// Rank by plain rational Gauss-Jordan, as an independent reference.
fn reference_rank(mut rows: Vec<Vec<BigRat>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != int(0)) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i][c] != int(0) {
                let f = &rows[i][c] / &rows[r][c];
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn grain_round_trip(s in qexp(), f in 1u64..6) {
        let fine = s.refine(s.grain() * f).unwrap();
        prop_assert_eq!(fine.coarsen().refine(s.grain()).unwrap(), s.coarsen().refine(s.grain()).unwrap());
        prop_assert_eq!(fine.to_pairs(), s.to_pairs());
    }

    #[test]
    fn unified_sum_commutes(a in qexp(), b in qexp()) {
        let ab = a.add(&b);
        let ba = b.add(&a);
        prop_assert_eq!(ab.to_pairs(), ba.to_pairs());
        prop_assert_eq!(ab.sub(&b).to_pairs(), a.truncate(&ab.cutoff()).to_pairs());
    }

    #[test]
    fn theta_symmetries(l in -30i64..30, k in 1u32..10) {
        let n = int(25);
        let kk = 2 * i64::from(k);
        prop_assert_eq!(theta(l + kk, k, &n), theta(l, k, &n));
        prop_assert_eq!(theta(-l, k, &n), theta(l, k, &n));
        prop_assert_eq!(dtheta(l + kk, k, &n), dtheta(l, k, &n));
        prop_assert_eq!(dtheta(-l, k, &n), dtheta(l, k, &n).scale(&int(-1)));
        prop_assert_eq!(p_hat(l, k, &n).sub(&q_hat(l, k, &n)), theta(l, k, &n));
    }

    #[test]
    fn truncation_is_monotone(l in -10i64..10, k in 1u32..8, n1 in 1i64..30, n2 in 1i64..30) {
        let (lo, hi) = (n1.min(n2), n1.max(n2));
        let big = theta(l, k, &int(hi));
        prop_assert_eq!(big.truncate(&int(lo)), theta(l, k, &int(lo)));
        let d = dtheta(l, k, &int(hi));
        prop_assert_eq!(d.truncate(&int(lo)), dtheta(l, k, &int(lo)));
        prop_assert!(theta(l, k, &int(lo)).len() <= big.len());
    }

    #[test]
    fn rank_matches_reference(m in matrix()) {
        let r = rank_of(to_rat(&m));
        prop_assert_eq!(r, reference_rank(to_rat(&m)));
        prop_assert!(r <= m.len().min(m[0].len()));
    }

    #[test]
    fn rank_invariant_under_row_scaling(m in matrix(), scales in prop::collection::vec(small_rat(), 7)) {
        let base = rank_of(to_rat(&m));
        let scaled: Vec<Vec<BigRat>> = to_rat(&m)
            .into_iter()
            .zip(&scales)
            .map(|(row, s)| {
                let s = if *s == int(0) { int(1) } else { s.clone() };
                row.into_iter().map(|x| x * &s).collect()
            })
            .collect();
        prop_assert_eq!(rank_of(scaled), base);
    }

    #[test]
    fn rank_invariant_under_permutation(m in matrix(), seed in any::<u64>()) {
        let base = rank_of(to_rat(&m));
        let mut rows = to_rat(&m);
        let n = rows.len();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            rows.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(rank_of(rows), base);
    }

    #[test]
    fn duplicated_rows_add_no_rank(m in matrix(), c in small_rat()) {
        let mut rows = to_rat(&m);
        let extra: Vec<BigRat> = rows[0].iter().map(|x| x * &c).collect();
        let base = rank_of(rows.clone());
        rows.push(extra);
        prop_assert_eq!(rank_of(rows), base);
    }

    #[test]
    fn tau_vectors_flatten_independently(l in 1i64..6, k in 2u32..6) {
        let n = int(30);
        let a = TauVector::plain(dtheta(l, k, &n));
        let b = TauVector::tau_times(dtheta(l, k, &n));
        let rank = exact_rank(&CoeffMatrix::from_vectors(&[a.clone(), b.clone(), a.add(&b)]).unwrap());
        let expected = if dtheta(l, k, &n).is_zero() { 0 } else { 2 };
        prop_assert_eq!(rank, expected);
    }
}
