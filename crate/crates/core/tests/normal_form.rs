use gckit::cartan::{KForm, OneForm};
use gckit::exact::{parse_polynomial, random_polynomial, Polynomial};
use gckit::linear::RandomGc;
use gckit::normal_form::{
    extend_bfield, extension_identities, ftc_identity, round_trip, round_trip_fixture, step3_bfield,
    step3_postconditions, Fiber, FlowIdentity, LeafFamilyB, ProductChart,
};
use gckit::GcError;

fn poly(chart: &ProductChart, s: &str) -> Polynomial {
    parse_polynomial(s, chart.vars()).unwrap()
}

fn family(chart: &ProductChart, rows: [&[&str]; 2]) -> LeafFamilyB {
    let cross = rows.iter().map(|r| r.iter().map(|s| poly(chart, s)).collect()).collect();
    LeafFamilyB::new(chart, cross).unwrap()
}

#[test]
fn constant_family_has_no_fiber_block() {
    let chart = ProductChart::new(2);
    let b = extend_bfield(&chart, &family(&chart, [&["1", "-2"], &["3/2", "0"]]));
    assert_eq!(b.get(&[0, 2]), poly(&chart, "1"));
    assert_eq!(b.get(&[1, 2]), poly(&chart, "3/2"));
    assert!(b.get(&[2, 3]).is_zero());
    let ids = extension_identities(&chart, &b);
    assert!(ids.holds());
}

#[test]
fn linear_and_quadratic_families_satisfy_each_identity() {
    let families: [(usize, [&[&str]; 2]); 3] = [
        (2, [&["r2", "r1"], &["2*r1 - r2", "0"]]),
        (3, [&["r2*r3", "r1^2", "r3 - r1*r2"], &["r3^2", "r1*r3", "r2^2 + 1"]]),
        (2, [&["r1*r2", "-r1^2 + 5*r2"], &["r2^2", "r1"]]),
    ];
    for (d, rows) in families {
        let chart = ProductChart::new(d);
        let b = extend_bfield(&chart, &family(&chart, rows));
        let ids = extension_identities(&chart, &b);
        for k in 0..4 {
            assert!(ids.identity_holds(k), "identity with {k} fiber fields: {:?}", ids.by_fiber_count[k]);
        }
        assert!(ids.leaf_restriction_vanishes && ids.slice_restriction_vanishes && ids.closed);
    }
    // a linear family produces a nonzero fiber block away from the slice
    let chart = ProductChart::new(2);
    let b = extend_bfield(&chart, &family(&chart, [&["r2", "r1"], &["2*r1 - r2", "0"]]));
    assert_eq!(b.get(&[2, 3]), poly(&chart, "q"));
}

#[test]
fn breaking_the_fiber_block_breaks_the_mixed_identity() {
    let chart = ProductChart::new(2);
    let b = extend_bfield(&chart, &family(&chart, [&["r2", "r1"], &["r1", "0"]]));
    let broken = b.add(&KForm::elementary(&poly(&chart, "p"), 4, &[2, 3]));
    let ids = extension_identities(&chart, &broken);
    assert!(!ids.identity_holds(2));
    assert!(!ids.closed);
}

#[test]
fn ftc_residuals_vanish() {
    let chart = ProductChart::new(2);
    let constant = KForm::elementary(&poly(&chart, "7"), 4, &[1, 3]);
    let b_squared = KForm::elementary(&poly(&chart, "q^2"), 4, &[0, 1]);
    for tau in [constant, b_squared] {
        for which in [FlowIdentity::AlongXp, FlowIdentity::AlongXq] {
            assert!(ftc_identity(&chart, &tau, which).unwrap().is_zero());
        }
    }
    let mut rng = RandomGc::rng(41);
    for _ in 0..20 {
        let mut tau = KForm::zero(chart.vars(), 4, 2);
        for i in 0..4 {
            for j in i + 1..4 {
                tau = tau.add(&KForm::elementary(&random_polynomial(&mut rng, chart.vars(), 4, 3), 4, &[i, j]));
            }
        }
        for which in [FlowIdentity::AlongXp, FlowIdentity::AlongXq] {
            assert!(ftc_identity(&chart, &tau, which).unwrap().is_zero());
        }
    }
    let one_form = KForm::elementary(&poly(&chart, "p*q*r1"), 4, &[2]);
    assert!(ftc_identity(&chart, &one_form, FlowIdentity::AlongXq).unwrap().is_zero());
}

#[test]
fn ftc_rejects_parameters() {
    let chart = ProductChart::new(1);
    let tau = KForm::elementary(&poly(&chart, "s"), 3, &[0, 1]);
    assert!(matches!(ftc_identity(&chart, &tau, FlowIdentity::AlongXp), Err(GcError::Precondition(_))));
}

#[test]
fn step3_for_a_fiber_exact_xi_q() {
    let chart = ProductChart::new(2);
    let z = OneForm::zero(chart.vars(), 4);
    // ξ_q = p·d(r₁²)
    let xi_q = OneForm::exact(&poly(&chart, "r1^2"), 4).mul_fn(&poly(&chart, "p"));
    let out = step3_bfield(&chart, &z, &xi_q).unwrap();
    assert!(out.report.holds() && out.report.routes_agree());
    assert_eq!(out.b, KForm::elementary(&poly(&chart, "2*p*r1"), 4, &[0, 2]));
}

#[test]
fn step3_rejects_broken_relations() {
    let chart = ProductChart::new(1);
    let z = OneForm::zero(chart.vars(), 3);
    // ξ_q = q dr₁ violates 𝓛_{X_p}ξ_q = ι_{X_q}dξ_p
    let xi_q = OneForm::basis(chart.vars(), 3, 2).mul_fn(&poly(&chart, "q"));
    match step3_bfield(&chart, &z, &xi_q) {
        Err(GcError::Constraint { identity, .. }) => assert_eq!(identity, "L_Xp(xi_q) = i_Xq(dxi_p)"),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn postconditions_detect_a_wrong_b() {
    let fx = round_trip_fixture(Fiber::Complex);
    let (_, xi_p) = fx.transformed.hamiltonian_pair(&poly(&fx.chart, "p"));
    let (_, xi_q) = fx.transformed.hamiltonian_pair(&poly(&fx.chart, "q"));
    let wrong = fx.b0.add(&KForm::elementary(&poly(&fx.chart, "p"), 4, &[2, 3]));
    let report = step3_postconditions(&fx.chart, &xi_p, &xi_q, &wrong);
    assert!(!report.holds());
    assert!(!report.closed.is_zero() && !report.closed_via_flows);
}

#[test]
fn round_trip_with_complex_fiber() {
    let fx = round_trip_fixture(Fiber::Complex);
    assert!(fx.b0.d().is_zero());
    let r = round_trip(&fx).unwrap();
    assert!(r.step3.report.holds(), "{:?}", r.step3.report);
    assert!(r.step3.report.routes_agree());
    assert_eq!(r.step3.b, fx.b0);
    assert!(r.restores_product && r.restored_poisson_matches && r.restored_integrable);
    assert!(r.epsilon_residual.is_none());
    assert!(r.holds());
}

#[test]
fn round_trip_with_symplectic_fiber_reconstructs_epsilon() {
    let fx = round_trip_fixture(Fiber::Symplectic);
    let r = round_trip(&fx).unwrap();
    assert!(r.holds(), "{:?}", r.step3.report);
    assert!(r.epsilon_residual.as_ref().unwrap().is_zero());
}
