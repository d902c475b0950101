use num::One;
use proptest::prelude::*;
use uhecke::exactalg::{CycScalar, Rat};
use uhecke::weilrep::*;
use uhecke::Sign;

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// Fourier transform by the textbook double loop over `CycScalar::zeta`.
fn naive_fourier(f: &QuotientFunction, l: &ResidueHermitianLattice) -> Vec<CycScalar> {
    let n = l.p() * l.p();
    let norm = Rat::new(1.into(), num::BigInt::from(l.p()).pow(l.window_log() / 2));
    (0..l.window_size())
        .map(|i| {
            let x = l.coords(i);
            let mut acc = CycScalar::zero(n);
            for j in 0..l.window_size() {
                if f.get(j).is_zero() {
                    continue;
                }
                let y = l.coords(j);
                // tr(x ȳ) by hand: coordinates ϖ^{-1}(a + bδ)
                let nr = l.field().nonresidue() as i64;
                let mut t = 0i64;
                for ((&(a, b), &(c, d)), &v) in x.iter().zip(&y).zip(l.valuations()) {
                    t += 2 * (l.p() as i64).pow(v) * (a * c - nr * b * d);
                }
                acc = &acc + &(f.get(j) * &CycScalar::zeta(n, t));
            }
            acc.scale(&norm)
        })
        .collect()
}

#[test]
fn window_shapes() {
    let l = ResidueHermitianLattice::new(3, 1, Sign::Minus).unwrap();
    assert_eq!(l.window_size(), 729);
    assert_eq!(l.dual_index(), 9);
    assert!(l.is_hermitian());
    assert!(l.check_window().is_ok());
    let plus = ResidueHermitianLattice::new(3, 1, Sign::Plus).unwrap();
    assert_eq!(plus.window_size(), 6561);
    assert_eq!(plus.dual_index(), 1);
    for i in [0usize, 1, 100, 728] {
        assert_eq!(l.index_of(&l.coords(i)), i);
    }
    assert!(ResidueHermitianLattice::with_valuations(3, Sign::Plus, vec![0, 1]).is_err());
    assert!(ResidueHermitianLattice::new(4, 1, Sign::Minus).is_err());
    assert!(ResidueHermitianLattice::new(3, 3, Sign::Minus).is_err());
}

#[test]
fn fourier_of_lattice_indicator_matches_naive_sum() {
    let l = ResidueHermitianLattice::new(3, 1, Sign::Minus).unwrap();
    let f = QuotientFunction::lattice_indicator(&l);
    let fast = finite_fourier(&f, &l);
    assert_eq!(fast.values(), naive_fourier(&f, &l).as_slice());
    let want = QuotientFunction::dual_indicator(&l).scale(&rat(1, 3));
    assert_eq!(fast, want);
}

#[test]
fn fourier_of_delta_is_constant() {
    for sign in Sign::both() {
        let l = ResidueHermitianLattice::new(3, 1, sign).unwrap();
        let hat = finite_fourier(&QuotientFunction::delta0(&l), &l);
        let size = l.window_size() as i64;
        let c = if size == 729 { rat(1, 27) } else { rat(1, 81) };
        assert_eq!(&c * &c * Rat::from_integer(size.into()), Rat::one());
        assert!(hat.values().iter().all(|v| v == &CycScalar::from_rat(9, c.clone())));
    }
}

fn arb_function() -> impl Strategy<Value = Vec<(usize, i64, i64)>> {
    prop::collection::vec((0usize..729, -3i64..=3, -2i64..=2), 1..6)
}

fn build(l: &ResidueHermitianLattice, spec: &[(usize, i64, i64)]) -> QuotientFunction {
    let mut f = QuotientFunction::zero(l);
    for &(i, c, z) in spec {
        let v = &CycScalar::from_rat(9, Rat::from_integer(c.into())) + &CycScalar::zeta(9, z);
        let cur = f.get(i).clone();
        f.set(i, &cur + &v);
    }
    f
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn double_fourier_is_reflection(spec in arb_function()) {
        let l = ResidueHermitianLattice::new(3, 1, Sign::Minus).unwrap();
        let f = build(&l, &spec);
        let twice = finite_fourier(&finite_fourier(&f, &l), &l);
        prop_assert_eq!(twice, f.reflect(&l));
    }

    #[test]
    fn fourier_is_unitary(a in arb_function(), b in arb_function()) {
        let l = ResidueHermitianLattice::new(3, 1, Sign::Minus).unwrap();
        let (f, g) = (build(&l, &a), build(&l, &b));
        let (fh, gh) = (finite_fourier(&f, &l), finite_fourier(&g, &l));
        prop_assert_eq!(fh.inner(&gh), f.inner(&g));
    }
}

#[test]
fn generator_lemma_minus() {
    for p in [3, 5] {
        let out = verify_generator_lemma(p, 1, Sign::Minus).unwrap();
        for c in &out.checks {
            assert!(c.pass, "p = {p}: {} failed at {:?}", c.name, c.counterexample);
        }
        assert_eq!(out.expected_eigenvalue, -1);
    }
}

#[test]
fn generator_lemma_plus_eigenvalue_q() {
    let out = verify_generator_lemma(3, 1, Sign::Plus).unwrap();
    assert!(out.pass(), "{:?}", out.checks);
    assert_eq!(out.expected_eigenvalue, 3);
}

#[test]
fn generator_lemma_report_json() {
    let r = generator_lemma_report(3, 1, Sign::Minus).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["check"], "generator_lemma");
    assert_eq!(v["pass"], true);
    assert_eq!(v["params"]["p"], 3);
    assert!(v["calibration"].is_null());
    assert!(v.get("counterexample").is_none());
}

#[test]
fn unitary_group_orders() {
    for (p, g, b) in [(3u32, 96usize, 24usize), (5, 720, 120)] {
        let f = ResidueField::new(p).unwrap();
        let grp = UnitaryGroup::new(&f);
        assert_eq!(grp.order(), g);
        assert_eq!(grp.borel().len(), b);
        for x in grp.elements() {
            grp.bruhat(x).unwrap();
        }
    }
}

#[test]
fn finite_model_p3() {
    let model = calibrate_finite_weil(3).unwrap();
    let cal = model.calibration();
    assert_eq!(cal.candidates.len(), 4);
    assert!(cal.candidates.iter().any(|c| c.homomorphism));
    assert_eq!((cal.chi, cal.gamma), (TwistCharacter::Trivial, 1));

    let check = model.check_all_pairs();
    assert_eq!(check.pairs, 96 * 96);
    assert!(check.violated.is_none());

    let f = model.group().field().clone();
    let one = [[Fp2::ONE, Fp2::ZERO], [Fp2::ZERO, Fp2::ONE]];
    assert_eq!(model.omega_of(&one), Some(&ZMat::identity(3, 9)));
    // ω(n(b)) diagonal with ψ(b·x x̄)
    for b in 0..3u32 {
        let op = model.omega_of(&model.group().n(b)).unwrap();
        for x in f.elements() {
            for y in f.elements() {
                let (i, j) = (f.index(x), f.index(y));
                let want = if i == j {
                    CycScalar::zeta(3, (b * f.norm(x)) as i64)
                } else {
                    CycScalar::zero(3)
                };
                assert_eq!(op.entry(i, j), want);
            }
        }
    }

    let borel = borel_invariants(&model);
    assert_eq!(borel.dimension, 1);
    assert!(borel.spanned_by_delta0);
    assert!(borel.eigenvalue_is_minus_one);
    assert_eq!(borel.eigenvalue, "-1");
    assert!(borel.full_group_sum_zero);
    assert!(borel.pass());
}

#[test]
fn finite_model_p5() {
    let model = calibrate_finite_weil(5).unwrap();
    assert!(model.check_generators().violated.is_none());
    let sampled = model.check_sampled_pairs(SAMPLED_PAIRS, DEFAULT_SEED);
    assert_eq!(sampled.pairs, 10_000);
    assert!(sampled.violated.is_none());
    let borel = borel_invariants(&model);
    assert_eq!((borel.group_order, borel.borel_order), (720, 120));
    assert!(borel.pass(), "{borel:?}");
}

#[test]
fn finite_report_json() {
    let r = finite_weil_report(3, DEFAULT_SEED).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["check"], "finite_weil");
    assert_eq!(v["pass"], true);
    assert_eq!(v["calibration"]["chi"], "trivial");
    assert_eq!(v["calibration"]["gamma"], "1");
    assert!(calibrate_finite_weil(7).is_err());
}

#[test]
fn moment_matrix_is_hermitian() {
    let f = ResidueField::new(5).unwrap();
    let xs = [f.elem(1, 2), f.elem(3, 0), f.elem(4, 4)];
    let t = moment_matrix(&f, &xs);
    for i in 0..3 {
        assert_eq!(t[i][i].b, 0);
        for j in 0..3 {
            assert_eq!(t[i][j], f.conj(t[j][i]));
        }
    }
}

#[test]
fn zero_function_transforms_to_zero() {
    let l = ResidueHermitianLattice::new(3, 1, Sign::Minus).unwrap();
    let z = QuotientFunction::zero(&l);
    assert!(finite_fourier(&z, &l).values().iter().all(|v| v.is_zero()));
}
