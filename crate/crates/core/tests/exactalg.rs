use std::collections::HashMap;

use num::Zero;
use proptest::prelude::*;
use uhecke::exactalg::*;
use uhecke::Error;

fn p(s: &str) -> LPoly {
    s.parse().unwrap()
}

fn f(s: &str) -> RFunc {
    s.parse().unwrap()
}

#[test]
fn lpoly_examples() {
    assert_eq!(&p("q + 1") * &p("q - 1"), p("q^2 - 1"));
    assert!((&p("X^2") * &p("X^-2")).is_one());
    assert_eq!(&p("1 - q X^2") * &p("1 + q X^2"), p("1 - q^2 X^4"));
    let err = lpoly_arith(&p("q"), &p("X"), ArithOp::Add).unwrap_err();
    assert!(matches!(err, Error::Alignment { .. }));
    assert_eq!(lpoly_arith(&p("q"), &p("q + 2"), ArithOp::Mul).unwrap(), p("q^2 + 2 q"));
}

#[test]
fn canonical_text_examples() {
    assert_eq!(f("1/(1 - q^-1 X^2)").to_string(), "1/(1 - q^-1 X^2)");
    assert_eq!(p("-q X^2").to_string(), "-q X^2");
    assert_eq!(p("3/2 q^-1").to_string(), "3/2 q^-1");
    assert_eq!(LPoly::zero().to_string(), "0");
}

#[test]
fn rfunc_eq_examples() {
    assert!(rfunc_eq(&f("1/(1 - q X^2)"), &f("(1 + q X^2)/(1 - q^2 X^4)")));
    assert!(!rfunc_eq(&f("q"), &f("1/(q)")));
    // ζ_F(2s+2)/ζ_F(2s) with q^{-2s} = X²
    let zf = |k: i32| RFunc::from_poly(one_minus(1, -k, 2)).inv().unwrap();
    assert!(rfunc_eq(&f("(1 - X^2)/(1 - q^-2 X^2)"), &(&zf(2) / &zf(0))));
}

#[test]
fn substitution_examples() {
    let inv_x = RFunc::var("X").inv().unwrap();
    assert_eq!(f("1 - q X^2").subst1("X", &inv_x).unwrap(), f("1 - q X^-2"));

    let l = &f("1 - q X^2") / &(&f("1 - u1 X^2") * &f("1 - u1^-1 X^2"));
    let at_half = l.subst1("u1", &RFunc::var("q")).unwrap();
    assert_eq!(at_half, f("1/(1 - q^-1 X^2)"));

    // b₂ at s ↦ −s, against a rebuild from the inverted factors
    let b2 = &f("1/(1 + q^-1 X^2)") * &f("1/(1 - q^-2 X^2)");
    let want = &f("1/(1 + q^-1 X^-2)") * &f("1/(1 - q^-2 X^-2)");
    assert_eq!(b2.subst1("X", &inv_x).unwrap(), want);

    // a vanishing denominator is reported
    let pole = f("1/(1 - q X)").subst1("X", &f("q^-1"));
    assert!(matches!(pole, Err(Error::Pole(_))));
}

#[test]
fn kernel_examples() {
    let one = RFunc::one();
    let q = RFunc::var("q");
    // x·T_{w1} + x = 0 on span(T_e, T_{w1})
    let rows = vec![vec![one.clone(), q.clone()], vec![one.clone(), q.clone()]];
    let k = solve_kernel(&rows).unwrap();
    assert_eq!(k.len(), 1);
    assert_eq!(&k[0][1] / &k[0][0], -&q.inv().unwrap());
    let id = vec![vec![one.clone(), RFunc::zero()], vec![RFunc::zero(), one]];
    assert!(solve_kernel(&id).unwrap().is_empty());
    assert_eq!(solve_kernel(&[vec![RFunc::zero(); 3]]).unwrap().len(), 3);
}

#[test]
fn cyclotomic_relations() {
    for n in [3u32, 5, 9, 25] {
        let z = CycScalar::zeta(n, 1);
        assert!(z.pow(n).is_one());
        let pr = CycScalar::check_conductor(n).unwrap();
        let step = n / pr;
        // Σ_k ζ_p^k = 0 with ζ_p = ζ_n^{n/p}
        let mut acc = CycScalar::zero(n);
        for k in 0..pr {
            acc = &acc + &CycScalar::zeta(n, (k * step) as i64);
        }
        assert!(acc.is_zero());
        assert_eq!(&z * &z.conj(), CycScalar::one(n));
    }
    assert!(CycScalar::check_conductor(15).is_err());
    assert!(CycScalar::check_conductor(4).is_err());
}

// random Laurent polynomials in q, X, u1 with small coefficients
fn arb_lpoly() -> impl Strategy<Value = LPoly> {
    prop::collection::vec((-3i64..=3, -2i32..=2, -2i32..=2, -1i32..=1), 1..4).prop_map(|ts| {
        let mut acc = LPoly::zero();
        for (c, a, b, u) in ts {
            acc = &acc
                + &LPoly::monomial(Rat::from_integer(c.into()), &[("q", a), ("X", b), ("u1", u)]);
        }
        acc
    })
}

fn arb_nonzero() -> impl Strategy<Value = LPoly> {
    arb_lpoly().prop_filter("nonzero", |p| !p.is_zero())
}

fn arb_rfunc() -> impl Strategy<Value = RFunc> {
    (arb_lpoly(), arb_nonzero()).prop_map(|(n, d)| RFunc::new(n, d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rfunc_eq_is_an_equivalence(a in arb_rfunc(), m in arb_nonzero(), k in arb_nonzero()) {
        // b and c are other representatives of a's class
        let b = RFunc::new(a.num() * &m, a.den() * &m).unwrap();
        let c = RFunc::new(b.num() * &k, b.den() * &k).unwrap();
        prop_assert!(rfunc_eq(&a, &a));
        prop_assert_eq!(rfunc_eq(&a, &b), rfunc_eq(&b, &a));
        prop_assert!(rfunc_eq(&a, &b) && rfunc_eq(&b, &c) && rfunc_eq(&a, &c));
    }

    #[test]
    fn rfunc_eq_matches_cross_multiplication(a in arb_rfunc(), b in arb_rfunc()) {
        let cross = a.num() * b.den() == b.num() * a.den();
        prop_assert_eq!(rfunc_eq(&a, &b), cross);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn lpoly_distributes(a in arb_lpoly(), b in arb_lpoly(), c in arb_lpoly()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn rfunc_field_laws(a in arb_rfunc(), b in arb_rfunc(), c in arb_rfunc()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn text_round_trip(a in arb_rfunc()) {
        let back: RFunc = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn exact_div_recovers_factor(a in arb_nonzero(), b in arb_nonzero()) {
        let prod = &a * &b;
        prop_assert_eq!(prod.exact_div(&b), Some(a));
    }

    #[test]
    fn kernel_vectors_annihilate_rows(
        entries in prop::collection::vec(prop::collection::vec(-2i64..=2, 4), 1..4),
        qe in prop::collection::vec(-1i32..=1, 16),
    ) {
        // rows over ℚ(q): integer · q^e entries
        let rows: Vec<Vec<RFunc>> = entries
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, &c)| RFunc::q_pow(c, qe[(4 * i + j) % 16]))
                    .collect()
            })
            .collect();
        let kernel = solve_kernel(&rows).unwrap();
        for v in &kernel {
            for row in &rows {
                let mut acc = RFunc::zero();
                for (x, y) in row.iter().zip(v) {
                    acc = &acc + &(x * y);
                }
                prop_assert!(acc.is_zero());
            }
        }
        prop_assert!(kernel.len() >= 4 - rows.len());
    }

    #[test]
    fn substitution_is_a_homomorphism(a in arb_rfunc(), b in arb_rfunc()) {
        let mut assign = HashMap::new();
        assign.insert("u1".to_string(), RFunc::var("q"));
        let sa = a.substitute(&assign);
        let sb = b.substitute(&assign);
        if let (Ok(sa), Ok(sb)) = (sa, sb) {
            if let Ok(sum) = (&a + &b).substitute(&assign) {
                prop_assert_eq!(sum, &sa + &sb);
            }
            if let Ok(prod) = (&a * &b).substitute(&assign) {
                prop_assert_eq!(prod, &sa * &sb);
            }
        }
    }

    #[test]
    fn cyclotomic_field_laws(xs in prop::collection::vec(-3i64..=3, 9), ys in prop::collection::vec(-3i64..=3, 9)) {
        let a = CycScalar::from_group_ring(9, &xs);
        let b = CycScalar::from_group_ring(9, &ys);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(a.galois(2).galois(5), a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
            prop_assert!(a.norm() != Rat::zero());
        }
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
    }
}

#[test]
fn factored_cancels_before_expansion() {
    let a = one_minus(1, -1, 2);
    let mut x = Factored::factor(&a, 3);
    x.push(&a, -3);
    assert!(x.to_rfunc().is_one());
    assert_eq!(x.multiplicity(&a), 0);
}
