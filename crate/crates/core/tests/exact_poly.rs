use std::collections::HashMap;

use monodimer::poly::{det_fraction_free, det_lu, nth_root_poly, parse_poly, MPoly, PolyMatrix};
use monodimer::Error;
use num_bigint::BigInt;
use proptest::prelude::*;

const VARS: [&str; 3] = ["x", "y", "z"];

fn poly() -> impl Strategy<Value = MPoly> {
    proptest::collection::vec((-5i64..=5, 0u32..3, 0u32..3, 0u32..3), 0..5).prop_map(|terms| {
        MPoly::from_terms(
            terms
                .into_iter()
                .map(|(c, a, b, d)| (c, vec![(VARS[0], a), (VARS[1], b), (VARS[2], d)])),
        )
    })
}

fn int_point(v: [i64; 3]) -> HashMap<String, BigInt> {
    VARS.iter().map(|s| s.to_string()).zip(v.iter().map(|&k| BigInt::from(k))).collect()
}

/// Determinant of an integer matrix by the permutation expansion.
fn leibniz(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = 0;
    fn rec(k: usize, perm: &mut Vec<usize>, m: &[Vec<i64>], sign: i64, total: &mut i64) {
        let n = perm.len();
        if k == n {
            *total += sign * (0..n).map(|i| m[i][perm[i]]).product::<i64>();
            return;
        }
        for j in k..n {
            perm.swap(k, j);
            rec(k + 1, perm, m, if j == k { sign } else { -sign }, total);
            perm.swap(k, j);
        }
    }
    rec(0, &mut perm, m, 1, &mut total);
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(p.add(&q), q.add(&p));
        prop_assert_eq!(p.mul(&q), q.mul(&p));
        prop_assert_eq!(p.add(&q).add(&r), p.add(&q.add(&r)));
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
        prop_assert!(p.sub(&p).is_zero());
        prop_assert_eq!(p.mul(&MPoly::one()), p.clone());
        prop_assert!(p.mul(&MPoly::zero()).is_zero());
    }

    #[test]
    fn evaluation_is_a_homomorphism(p in poly(), q in poly(), v in proptest::array::uniform3(-4i64..=4)) {
        let pt = int_point(v);
        let (ep, eq) = (p.eval_int(&pt).unwrap(), q.eval_int(&pt).unwrap());
        prop_assert_eq!(p.mul(&q).eval_int(&pt).unwrap(), &ep * &eq);
        prop_assert_eq!(p.add(&q).eval_int(&pt).unwrap(), ep + eq);
    }

    #[test]
    fn display_parses_back(p in poly()) {
        prop_assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn json_round_trip(p in poly()) {
        prop_assert_eq!(MPoly::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn roots_of_powers(p in poly(), r in 1u32..=4) {
        prop_assume!(!p.is_zero());
        let q = nth_root_poly(&p.pow(r).unwrap(), r).unwrap();
        if r % 2 == 0 {
            prop_assert!(q == p || q == p.neg());
            prop_assert!(q.leading().unwrap().1 > &BigInt::from(0));
        } else {
            prop_assert_eq!(q, p);
        }
    }

    #[test]
    fn exact_division_recovers_factor(p in poly(), q in poly()) {
        prop_assume!(!q.is_zero());
        prop_assert_eq!(p.mul(&q).exact_div(&q).unwrap(), p);
    }

    #[test]
    fn fraction_free_matches_leibniz(
        n in 1usize..=5,
        entries in proptest::collection::vec(-6i64..=6, 25),
    ) {
        let m: Vec<Vec<i64>> = (0..n).map(|i| entries[i * n..(i + 1) * n].to_vec()).collect();
        let pm = PolyMatrix::from_rows(
            m.iter().map(|row| row.iter().map(|&c| MPoly::constant(c)).collect()).collect(),
        ).unwrap();
        let want = leibniz(&m);
        prop_assert_eq!(det_fraction_free(&pm), MPoly::constant(want));
        let f: Vec<Vec<f64>> = m.iter().map(|r| r.iter().map(|&c| c as f64).collect()).collect();
        prop_assert!((det_lu(f) - want as f64).abs() < 1e-6 * (1.0 + want.abs() as f64));
    }

    #[test]
    fn symbolic_determinant_evaluates_like_numeric(
        n in 1usize..=4,
        entries in proptest::collection::vec(poly(), 16),
        v in proptest::array::uniform3(-3i64..=3),
    ) {
        let rows: Vec<Vec<MPoly>> = (0..n).map(|i| entries[i * n..(i + 1) * n].to_vec()).collect();
        let pt = int_point(v);
        let ints: Vec<Vec<i64>> = rows
            .iter()
            .map(|r| r.iter().map(|p| i64::try_from(p.eval_int(&pt).unwrap()).unwrap()).collect())
            .collect();
        let det = det_fraction_free(&PolyMatrix::from_rows(rows).unwrap());
        prop_assert_eq!(det.eval_int(&pt).unwrap(), BigInt::from(leibniz(&ints)));
    }
}

#[test]
fn inexact_division_is_reported() {
    let p = parse_poly("x^2 + 1").unwrap();
    let q = parse_poly("x + 1").unwrap();
    assert_eq!(p.exact_div(&q).unwrap_err(), Error::InexactDivision);
}

#[test]
fn non_powers_have_no_root() {
    assert!(nth_root_poly(&parse_poly("x^2 + 2*x + 2").unwrap(), 2).is_none());
    assert!(nth_root_poly(&parse_poly("-x^2").unwrap(), 2).is_none());
    assert_eq!(
        nth_root_poly(&parse_poly("-8*x^3").unwrap(), 3).unwrap(),
        parse_poly("-2*x").unwrap()
    );
}

#[test]
fn parse_errors() {
    for bad in ["", "x +", "(x", "x^", "2 3", "x^-1", "$"] {
        assert!(parse_poly(bad).is_err(), "{bad:?} parsed");
    }
}

#[test]
fn big_coefficients_stay_exact() {
    let p = parse_poly("x + 12345678901234567890").unwrap();
    let cube = p.pow(3).unwrap();
    assert_eq!(nth_root_poly(&cube, 3).unwrap(), p);
    let mut pt = HashMap::new();
    pt.insert("x".to_string(), BigInt::from(0));
    let c: BigInt = "12345678901234567890".parse().unwrap();
    assert_eq!(cube.eval_int(&pt).unwrap(), &c * &c * &c);
}
