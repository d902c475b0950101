use uhecke::verify::*;

fn run(suite: Suite, rmax: usize) -> Report {
    let mut b = Bounds::for_suite(suite);
    b.rmax = rmax;
    run_suite(suite, &b).unwrap()
}

fn assert_all_pass(r: &Report) {
    for c in &r.checks {
        assert!(c.pass, "{}: {} vs {} ({})", c.id, c.lhs, c.rhs, c.notes);
    }
    assert_eq!(r.summary.failed, 0);
    assert_eq!(r.summary.total, r.checks.len());
}

#[test]
fn hecke_core_small() {
    let r = run(Suite::HeckeCore, 2);
    assert_all_pass(&r);
    assert_eq!(r.get("hecke.eigenspace.r2.minus").unwrap().lhs, "1");
    assert_eq!(r.get("hecke.multiplicativity.r2.plus").unwrap().lhs, "64/64");
    let e = r.get("hecke.idempotent.r1.minus").unwrap();
    assert!(!e.notes.is_empty());
}

#[test]
fn satake_core() {
    let r = run(Suite::SatakeCore, 3);
    assert_all_pass(&r);
    assert!(r.matching("satake.witnesses.").count() >= 9);
}

#[test]
fn zeta_identities_flag_the_printed_display() {
    let r = run(Suite::ZetaIdentities, 3);
    assert_all_pass(&r);
    let flag = r.get("zeta.rank_one.printed_display_flag").unwrap();
    assert!(flag.notes.contains("(1 - q^-1 X^2)"));
    assert_ne!(flag.lhs, flag.rhs);
    let v = r.get("zeta.rank_one.value").unwrap();
    assert_eq!(v.lhs, v.rhs);
}

#[test]
fn intertwining_and_theta() {
    assert_all_pass(&run(Suite::Intertwining, 2));
    let t = run(Suite::ThetaMaps, 3);
    assert_all_pass(&t);
    assert_eq!(t.get("theta.minus_d_eq_r.r3").unwrap().lhs, "25/25");
    assert_eq!(t.get("theta.vanishing_order.r3.d1.minus").unwrap().lhs, "1");
}

#[test]
fn weil_finite_p3() {
    let r = run(Suite::WeilFinite, 1);
    assert_all_pass(&r);
    assert_eq!(r.get("weil.finite.p3.borel_eigenvalue").unwrap().lhs, "-1");
    assert_eq!(r.get("weil.finite.p3.calibration").unwrap().lhs, "chi=trivial gamma=1");
}

#[test]
fn reports_are_deterministic() {
    let a = serde_json::to_string(&run(Suite::SatakeCore, 2)).unwrap();
    let b = serde_json::to_string(&run(Suite::SatakeCore, 2)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn bounds_are_checked() {
    let mut b = Bounds::for_suite(Suite::ZetaIdentities);
    b.rmax = 99;
    assert!(run_suite(Suite::ZetaIdentities, &b).is_err());
}
