mod common;

use autodirichlet::autoseq::Bit;
use autodirichlet::exactnum::lemma4_coefficient;
use autodirichlet::identities::*;
use autodirichlet::realkernel::BigReal;
use common::real;

const P: u32 = 256;
const N: u64 = 20_000;

fn names(ids: &[&str]) -> Vec<String> {
    ids.iter().map(|s| s.to_string()).collect()
}

#[test]
fn reports_recheck() {
    let reports = [
        verify_lemma1(2, P).unwrap(),
        verify_delta_relation(&real(2.5), N, P).unwrap(),
        verify_split_exact(3, 64).unwrap(),
        verify_catalan(128).unwrap(),
        verify_euler_even(3, P).unwrap(),
        verify_polygamma(2, P).unwrap(),
    ];
    for r in &reports {
        assert!(r.pass, "{r:?}");
        assert!(r.recheck());
        assert_eq!(r.residual, r.lhs.mid().sub_exact(r.rhs.mid()).abs());
        assert_eq!(r.tolerance, r.lhs.rad().add_exact(r.rhs.rad()));
    }
    assert_eq!(reports[0].param("k"), Some("2"));
    assert_eq!(reports[1].param("s"), Some("2.5"));
    assert_eq!(reports[1].param("N"), Some("20000"));
}

#[test]
fn invalid_parameters_are_rejected() {
    assert!(verify_lemma1(0, P).is_err());
    assert!(verify_split_exact(1, 4).is_err());
    assert!(verify_delta_relation(&real(1.0), N, P).is_err());
    assert!(verify_toth(&real(3.0), 0, P).is_err());
}

#[test]
fn lemma4_and_corollary_agree() {
    for k in 1..=4 {
        let l = verify_lemma4(k, N, P).unwrap();
        let c = verify_corollary(k, N, P).unwrap();
        assert!(l.pass && c.pass, "k={k}");
        let from_lemma = l.lhs.neg().div_int(lemma4_coefficient(k).unwrap()).unwrap();
        assert!(from_lemma.intersects(&c.lhs), "k={k}");
        assert!(from_lemma.intersects(&c.rhs), "k={k}");
    }
}

#[test]
fn theorem1_residual_splits_into_lemma4_and_toth() {
    let slop = BigReal::pow2(-200);
    for k in 1..=2u32 {
        let s = 2 * k + 1;
        let t1 = verify_theorem1(k, N, P).unwrap();
        let l4 = verify_lemma4(k, N, P).unwrap();
        let toth = verify_toth(&BigReal::from_int(s), N, P).unwrap();
        let bound = l4
            .residual
            .add_exact(&toth.residual.mul_2exp(-(s as i64)))
            .add_exact(&slop);
        assert!(t1.residual <= bound, "k={k}");
    }
}

#[test]
fn doubling_terms_tightens_tolerance() {
    let s = real(2.5);
    type Check = Box<dyn Fn(u64) -> VerificationReport>;
    let checks: Vec<(&str, Check)> = vec![
        (
            "delta",
            Box::new(|n| verify_delta_relation(&real(2.5), n, P).unwrap()),
        ),
        ("lemma4", Box::new(|n| verify_lemma4(1, n, P).unwrap())),
        (
            "corollary",
            Box::new(|n| verify_corollary(1, n, P).unwrap()),
        ),
        ("toth", Box::new(|n| verify_toth(&real(2.5), n, P).unwrap())),
        ("theorem1", Box::new(|n| verify_theorem1(1, n, P).unwrap())),
        (
            "ac_ratio",
            Box::new(|n| verify_allouche_cohen_ratio(&real(2.5), n, P).unwrap()),
        ),
    ];
    for (id, f) in checks {
        let a = f(N);
        let b = f(2 * N);
        assert!(a.pass && b.pass, "{id}");
        assert!(b.tolerance < a.tolerance, "{id}");
    }
    // the recursion's tolerance is dominated by its allowance; its direct side still refines
    let a = verify_allouche_cohen_recursion(&s, 20, 8_192, P).unwrap();
    let b = verify_allouche_cohen_recursion(&s, 20, 16_384, P).unwrap();
    assert!(b.lhs.rad() < a.lhs.rad());
    assert!(a.lhs.intersects(&b.lhs));
}

#[test]
fn recursion_reports_its_allowance() {
    let r = verify_allouche_cohen_recursion(&real(3.0), 30, 100_000, P).unwrap();
    assert!(r.pass);
    assert_eq!(r.param("K"), Some("30"));
    assert!(r.param("allowance").is_some());
    let control = verify_allouche_cohen_recursion(&real(3.0), 0, 100_000, P).unwrap();
    assert!(!control.pass);
}

#[test]
fn negative_controls_fail() {
    for b0 in [Bit::ZERO, Bit::ONE] {
        assert!(!verify_corollary_literal(1, b0, N, P).unwrap().pass);
    }
    assert!(!verify_plouffe_zeta7_alt(P).unwrap().pass);
    assert!(!verify_ramanujan_truncated(1, P).unwrap().pass);
    assert!(verify_plouffe_zeta7(P).unwrap().pass);
    assert!(verify_ramanujan_zeta3(P).unwrap().pass);
}

#[test]
fn suite_selection_and_ordering() {
    assert!(CONTROL_IDENTITIES
        .iter()
        .all(|c| !ALL_IDENTITIES.contains(c)));
    assert_eq!(
        run_suite(&[], &Grid::default()).unwrap_err(),
        IdentityError::EmptySelection
    );
    assert!(matches!(
        run_suite(&names(&["lemma1", "bogus"]), &Grid::default()),
        Err(IdentityError::UnknownIdentity(_))
    ));

    let grid = Grid {
        ks: vec![1, 2],
        ss: vec![real(2.0), real(2.5), real(3.0)],
        terms: Some(4_096),
        prec: 128,
        depth: 10,
    };
    let reports = run_suite(&names(&["split_exact", "euler_even", "lemma1"]), &grid).unwrap();
    let ids: Vec<&str> = reports.iter().map(|r| r.identity_id.as_str()).collect();
    // split_exact uses the integer s values only
    let mut expect = vec!["euler_even", "euler_even", "lemma1", "lemma1"];
    expect.extend(std::iter::repeat_n("split_exact", 2 * SPLIT_SIZES.len()));
    assert_eq!(ids, expect);
    assert!(reports.iter().all(|r| r.pass));

    let controls = run_suite(&names(&["corollary_literal", "plouffe_zeta7_alt"]), &grid).unwrap();
    assert_eq!(controls.len(), 2 * 2 + 1);
    assert!(controls.iter().all(|r| !r.pass));
}
