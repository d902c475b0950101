use proptest::prelude::*;
use uhecke::doubling::{theta_parameters, SatakeParams};
use uhecke::exactalg::{LPoly, RFunc};
use uhecke::satake::*;
use uhecke::Sign;

fn lp(s: &str) -> LPoly {
    s.parse().unwrap()
}

/// Dominant exponent vectors (weakly decreasing, nonnegative) of length
/// `m` and total degree at most `deg`.
fn dominant_vectors(m: usize, deg: i32) -> Vec<Vec<i32>> {
    fn go(m: usize, left: i32, cap: i32, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for e in (0..=cap.min(left)).rev() {
            cur.push(e);
            go(m, left - e, e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, deg, deg, &mut Vec::new(), &mut out);
    out
}

fn spaces() -> Vec<HermitianSpaceDesc> {
    let mut v = Vec::new();
    for d in 0..=3 {
        for sign in Sign::both() {
            if let Ok(h) = HermitianSpaceDesc::new(d, sign) {
                v.push(h);
            }
        }
    }
    v
}

#[test]
fn symmetrize_examples() {
    let s = symmetrize(&lp("T1"), 1).unwrap();
    assert_eq!(s.poly(), &lp("T1 + T1^-1"));
    assert_eq!(symmetrize(&LPoly::one(), 0).unwrap().poly(), &LPoly::one());
    let s = symmetrize(&lp("T1 T2"), 2).unwrap();
    assert_eq!(s.poly(), &lp("T1 T2 + T1^-1 T2 + T1 T2^-1 + T1^-1 T2^-1"));
}

#[test]
fn theta_map_examples() {
    let orb1 = SymLaurent::orbit_sum(1, &[1]).unwrap();
    let orb2 = SymLaurent::orbit_sum(2, &[1, 0]).unwrap();
    let plus1 = HermitianSpaceDesc::new(1, Sign::Plus).unwrap();
    let minus1 = HermitianSpaceDesc::new(1, Sign::Minus).unwrap();
    let plus2 = HermitianSpaceDesc::new(2, Sign::Plus).unwrap();
    let minus2 = HermitianSpaceDesc::new(2, Sign::Minus).unwrap();

    assert_eq!(theta_left(&orb1, &plus1, 1).unwrap(), orb1);
    assert_eq!(theta_left(&orb2, &plus1, 2).unwrap().poly(), &lp("T1 + T1^-1 + q + q^-1"));
    let c = theta_left(&orb1, &minus1, 1).unwrap();
    assert_eq!((c.rank(), c.poly()), (0, &lp("q + q^-1")));

    // s = m leaves G unchanged
    assert_eq!(theta_right(&orb1, &plus1, 3).unwrap(), orb1);
    assert_eq!(theta_right(&orb2, &plus2, 1).unwrap().poly(), &lp("q + q^-1 + T1 + T1^-1"));
    assert_eq!(theta_right(&orb1, &minus2, 0).unwrap().poly(), &lp("q^3 + q^-3"));
    assert!(theta_left(&orb1, &plus1, 2).is_err());
}

#[test]
fn ideal_membership_examples() {
    let plus1 = HermitianSpaceDesc::new(1, Sign::Plus).unwrap();
    let f = SymLaurent::orbit_sum(1, &[1]).unwrap();
    let mut diag = TensorElement::new();
    diag.push(f.clone(), SymLaurent::one(1));
    diag.push(SymLaurent::one(1).scale(&LPoly::int(-1)), f.clone());
    assert!(ideal_member(&diag, &plus1, 1).unwrap());

    let mut single = TensorElement::new();
    single.push(f.clone(), SymLaurent::one(1));
    assert!(!ideal_member(&single, &plus1, 1).unwrap());
    assert_eq!(single.image(&plus1, 1).unwrap(), f);

    assert!(ideal_member(&TensorElement::new(), &plus1, 1).unwrap());
}

#[test]
fn eval_examples() {
    let f = SymLaurent::orbit_sum(1, &[1]).unwrap();
    let q = RFunc::q_pow(1, 1);
    assert_eq!(eval_params(&f, std::slice::from_ref(&q)).unwrap(), &q + &RFunc::q_pow(1, -1));
    assert!(eval_params(&SymLaurent::one(2), &[q.clone(), RFunc::var("u2")]).unwrap().is_one());

    // r = 2, ε = −, d = 2, σ = (½)
    let v = HermitianSpaceDesc::new(2, Sign::Minus).unwrap();
    let sigma = SatakeParams::from_twice_sigma(&[1]);
    let big = SymLaurent::orbit_sum(2, &[1, 0]).unwrap();
    let lhs = eval_params(&theta_left(&big, &v, 2).unwrap(), &sigma.u).unwrap();
    let pair = theta_parameters(2, &v, &sigma).unwrap();
    let rhs = eval_params(&big, &pair.left.u).unwrap();
    assert_eq!(lhs, rhs);
    // the left parameters are (q^{-1}, q) here: F(q^{-1}, q) = 2(q + q^{-1})
    assert_eq!(rhs, RFunc::from_poly(lp("2 q + 2 q^-1")));
}

#[test]
fn readings_agree_on_orbit_sums() {
    for r in 1..=3usize {
        for v in spaces() {
            let s = v.witt_index();
            for e in dominant_vectors(r, 4) {
                let f = SymLaurent::orbit_sum(r, &e).unwrap();
                let d = theta_left_with(&f, &v, r, Reading::Default).unwrap();
                assert_eq!(theta_left_with(&f, &v, r, Reading::Upper).unwrap(), d, "left r={r} {v:?} {e:?}");
                assert_eq!(theta_left_with(&f, &v, r, Reading::Lower).unwrap(), d, "left r={r} {v:?} {e:?}");
            }
            for e in dominant_vectors(s, 4) {
                let g = SymLaurent::orbit_sum(s, &e).unwrap();
                let d = theta_right_with(&g, &v, r, Reading::Default).unwrap();
                assert_eq!(theta_right_with(&g, &v, r, Reading::Upper).unwrap(), d, "right r={r} {v:?} {e:?}");
                assert_eq!(theta_right_with(&g, &v, r, Reading::Lower).unwrap(), d, "right r={r} {v:?} {e:?}");
            }
        }
    }
}

/// Random combination of orbit sums of degree ≤ 4 with small coefficients.
fn random_sym(m: usize, picks: &[(usize, i64)]) -> SymLaurent {
    let basis = dominant_vectors(m, 4);
    let mut acc = SymLaurent::zero(m);
    for &(i, c) in picks {
        let term = SymLaurent::orbit_sum(m, &basis[i % basis.len()]).unwrap().scale(&LPoly::int(c));
        acc = acc.add(&term).unwrap();
    }
    acc
}

fn sigma_for(m: usize, ks: &[i32], symbolic: bool) -> SatakeParams {
    if symbolic {
        SatakeParams::symbolic(m)
    } else {
        SatakeParams::from_twice_sigma(&ks[..m])
    }
}

fn arb_case() -> impl Strategy<Value = (usize, usize, Sign, Vec<(usize, i64)>, Vec<i32>, bool)> {
    (
        1usize..=3,
        1usize..=3,
        prop_oneof![Just(Sign::Plus), Just(Sign::Minus)],
        prop::collection::vec((0usize..64, -3i64..=3), 1..4),
        prop::collection::vec(-4i32..=4, 3),
        any::<bool>(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parameter_maps_are_compatible((r, d, sign, picks, ks, symbolic) in arb_case()) {
        let v = HermitianSpaceDesc::new(d, sign).unwrap();
        let (s, m) = (v.witt_index(), v.m(r));
        let sigma = sigma_for(m, &ks, symbolic);
        let pair = theta_parameters(r, &v, &sigma).unwrap();

        let f = random_sym(r, &picks);
        let lhs = eval_params(&theta_left(&f, &v, r).unwrap(), &sigma.u).unwrap();
        prop_assert_eq!(lhs, eval_params(&f, &pair.left.u).unwrap());

        let g = random_sym(s, &picks);
        let lhs = eval_params(&theta_right(&g, &v, r).unwrap(), &sigma.u).unwrap();
        prop_assert_eq!(lhs, eval_params(&g, &pair.right.u).unwrap());
    }

    #[test]
    fn constructed_witnesses_lie_in_the_ideal((r, d, sign, picks, _ks, _sym) in arb_case()) {
        let v = HermitianSpaceDesc::new(d, sign).unwrap();
        let (s, m) = (v.witt_index(), v.m(r));
        // pick one side freely and solve for the other
        let (f, g) = if m == r {
            let g = random_sym(s, &picks);
            (theta_right(&g, &v, r).unwrap(), g)
        } else {
            let f = random_sym(r, &picks);
            (f.clone(), theta_left(&f, &v, r).unwrap())
        };
        prop_assert_eq!(theta_left(&f, &v, r).unwrap(), theta_right(&g, &v, r).unwrap());
        let mut t = TensorElement::new();
        t.push(f.clone(), SymLaurent::one(s));
        t.push(SymLaurent::one(r).scale(&LPoly::int(-1)), g);
        prop_assert!(ideal_member(&t, &v, r).unwrap());

        // F ⊗ 1 alone is a member only when Θ⃖F vanishes
        let mut single = TensorElement::new();
        single.push(f.clone(), SymLaurent::one(s));
        prop_assert_eq!(ideal_member(&single, &v, r).unwrap(), theta_left(&f, &v, r).unwrap().is_zero());
    }
}

#[test]
fn diagonal_ideal_for_split_spaces() {
    // ε = +, d = r: Θ⃖ and Θ⃗ are both the identity on invariants
    for r in 1..=3usize {
        let v = HermitianSpaceDesc::new(r, Sign::Plus).unwrap();
        for e in dominant_vectors(r, 3) {
            let f = SymLaurent::orbit_sum(r, &e).unwrap();
            let mut t = TensorElement::new();
            t.push(f.clone(), SymLaurent::one(r));
            t.push(SymLaurent::one(r).scale(&LPoly::int(-1)), f.clone());
            assert!(ideal_member(&t, &v, r).unwrap());
            let mut lone = TensorElement::new();
            lone.push(f.clone(), SymLaurent::one(r));
            assert!(!ideal_member(&lone, &v, r).unwrap(), "r={r} {e:?}");
        }
    }
}

#[test]
fn json_lists_orbit_representatives() {
    let f = SymLaurent::orbit_sum(2, &[1, 0]).unwrap().scale(&lp("q"));
    let j = f.to_json();
    let arr = j.as_array().unwrap();
    assert_eq!(arr.len(), 1);
    assert_eq!(arr[0]["orbit_representative"], serde_json::json!([1, 0]));
    assert_eq!(arr[0]["coefficient"], "q");
}
