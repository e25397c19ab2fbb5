mod common;

use std::cmp::Ordering;

use common::{lex_cmp, lv};
use num_bigint::BigInt;
use pclosure::lexgroup::{AffineExp, ConvexIndex, LexVec};
use proptest::prelude::*;

fn coords(rank: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..=6, rank)
}

fn triple() -> impl Strategy<Value = (Vec<i64>, Vec<i64>, Vec<i64>)> {
    (1usize..=4).prop_flat_map(|r| (coords(r), coords(r), coords(r)))
}

fn positive(rank: usize) -> impl Strategy<Value = Vec<i64>> {
    coords(rank)
        .prop_filter("nonzero", |c| c.iter().any(|&x| x != 0))
        .prop_map(|c| {
            if lex_cmp(&c, &vec![0; c.len()]) == Ordering::Less {
                c.iter().map(|x| -x).collect()
            } else {
                c
            }
        })
}

proptest! {
    #[test]
    fn order_is_total_and_matches_plain_lex((a, b, _) in triple()) {
        let (x, y) = (lv(&a), lv(&b));
        let outcomes = [x < y, x == y, x > y];
        prop_assert_eq!(outcomes.iter().filter(|&&o| o).count(), 1);
        prop_assert_eq!(x.cmp(&y), lex_cmp(&a, &b));
    }

    #[test]
    fn order_is_transitive((a, b, c) in triple()) {
        let (x, y, z) = (lv(&a), lv(&b), lv(&c));
        if x <= y && y <= z {
            prop_assert!(x <= z);
        }
        if x < y && y < z {
            prop_assert!(x < z);
        }
    }

    #[test]
    fn translation_preserves_order((a, b, c) in triple()) {
        let (x, y, eta) = (lv(&a), lv(&b), lv(&c));
        prop_assert_eq!(x.cmp(&y), (&x + &eta).cmp(&(&y + &eta)));
    }

    #[test]
    fn convex_subgroups_are_closed_and_convex((a, b, _) in triple(), j in 0usize..=4) {
        let rank = a.len();
        let j = ConvexIndex(j.min(rank));
        let (x, y) = (lv(&a), lv(&b));
        if j.contains(&x) && j.contains(&y) {
            prop_assert!(j.contains(&(&x + &y)));
            prop_assert!(j.contains(&-&x));
        }
        // 0 ≤ y ≤ x ∈ Δ_j forces y ∈ Δ_j
        let zero = LexVec::zero(rank);
        if j.contains(&x) && zero <= y && y <= x {
            prop_assert!(j.contains(&y));
        }
        // Δ_j is exactly the vectors vanishing on the first j coordinates
        prop_assert_eq!(j.contains(&x), a[..j.0].iter().all(|&c| c == 0));
    }

    #[test]
    fn affine_solve_inverts_eval(
        (base, step) in (1usize..=4).prop_flat_map(|r| (coords(r), positive(r))),
        start in 0u64..5,
        n in 0u64..40,
    ) {
        let f = AffineExp::new(lv(&base), lv(&step), start).unwrap();
        let n = start + n;
        let gamma = f.eval(n).unwrap();
        prop_assert_eq!(f.solve(&gamma), Some(n));
        // strictly between two consecutive values nothing solves
        let off = &gamma + &LexVec::unit(base.len(), base.len());
        if off < f.eval(n + 1).unwrap() {
            prop_assert_eq!(f.solve(&off), None);
        }
    }

    #[test]
    fn first_exceeding_is_least((base, step, g) in (1usize..=3).prop_flat_map(|r| (coords(r), positive(r), coords(r))), start in 0u64..4) {
        let f = AffineExp::new(lv(&base), lv(&step), start).unwrap();
        let gamma = lv(&g);
        match f.first_exceeding(&gamma) {
            Some(n) => {
                prop_assert!(f.eval(n).unwrap() > gamma);
                if n > start {
                    prop_assert!(f.eval(n - 1).unwrap() <= gamma);
                }
            }
            None => {
                for n in start..start + 60 {
                    prop_assert!(f.eval(n).unwrap() <= gamma);
                }
            }
        }
    }

    #[test]
    fn scaling_is_repeated_addition(a in coords(3), k in 0i64..6) {
        let x = lv(&a);
        let sum = (0..k).fold(LexVec::zero(3), |acc, _| &acc + &x);
        prop_assert_eq!(x.scale(&BigInt::from(k)), sum);
    }
}
