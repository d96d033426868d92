mod common;

use autodirichlet::exactnum::Rational;
use autodirichlet::realkernel::*;
use common::*;
use num_bigint::BigInt;
use proptest::prelude::*;

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

#[test]
fn containment_stress_ten_thousand() {
    containment_stress(20_240_601, 10_000).unwrap();
}

#[test]
fn deterministic_across_thread_counts() {
    thread_determinism().unwrap();
}

#[test]
fn pi_matches_reference_within_a_few_ulps() {
    for p in [16u32, 53, 64, 128, 256, 512] {
        let v = pi(p);
        assert!(v.intersects(&reference(PI_DIGITS, 400)), "prec {p}");
        if p >= 53 {
            assert!(
                v.rad() <= &BigReal::pow2(1 - p as i64).mul_2exp(2),
                "prec {p}"
            );
        }
    }
    let cube = pi(64).powi(3).unwrap();
    assert!(cube.intersects(&reference("31.006276680299820175", 64)));
}

#[test]
fn power_real_examples() {
    let two = Bracket::from_int(2, 128);
    assert!(power_real(&two, &real(3.0))
        .unwrap()
        .contains_rational(&rat(8, 1)));
    let four = Bracket::from_int(4, 128);
    assert!(power_real(&four, &real(-2.5))
        .unwrap()
        .contains_rational(&rat(1, 32)));
    let e = exp(&Bracket::one(128)).unwrap();
    assert!(power_real(&e, &real(1.0)).unwrap().intersects(&e));
    // general exp/ln route
    let v = power_real(&two, &real(0.3)).unwrap();
    assert!((v.to_f64() - 2f64.powf(0.3)).abs() < 1e-15);
}

#[test]
fn elementary_examples() {
    assert!(exp(&Bracket::zero(64))
        .unwrap()
        .contains_rational(&rat(1, 1)));
    assert!(cosh(&Bracket::zero(64))
        .unwrap()
        .contains_rational(&rat(1, 1)));
    let v = exp(&pi(128).mul_2exp(1)).unwrap();
    assert!(v.lower().to_rational() > dec("535.49165"));
    assert!(v.upper().to_rational() < dec("535.49166"));
    let l = ln(&Bracket::from_int(2, 256)).unwrap();
    assert!(l.intersects(&ln2(256)));
}

#[test]
fn generalized_binomial_examples() {
    assert!(generalized_binomial(&real(3.0), 2, 64).contains_rational(&rat(6, 1)));
    assert!(generalized_binomial(&real(2.5), 1, 64).contains_rational(&rat(5, 2)));
    // 2.5 · 3.5 · 4.5 / 6
    assert!(generalized_binomial(&real(2.5), 3, 64).contains_rational(&rat(105, 16)));
}

#[test]
fn bracket_sum_examples() {
    let z = bracket_sum(&[], &Bracket::zero(64));
    assert!(z.is_exact() && z.mid().is_zero());
    let s = bracket_sum(
        &[Bracket::from_int(1, 64), Bracket::from_int(2, 64)],
        &Bracket::zero(64),
    );
    assert!(s.contains_rational(&rat(3, 1)));
    assert!(s.is_exact());

    let n = 1_000_000u64;
    let terms: Vec<Bracket> = (1..=n)
        .map(|k| Bracket::from_int(k, 128).sqr().recip().unwrap())
        .collect();
    // Σ_{k>N} 1/k² lies in [0, 1/N]
    let half = Bracket::from_ratio(&BigInt::from(1), &BigInt::from(2 * n), 128);
    let tail = half.add_error(half.mid());
    let total = bracket_sum(&terms, &tail);
    let target = pi(128).sqr().div_int(6).unwrap();
    assert!(total.intersects(&target));
}

#[test]
fn precision_monotonicity() {
    let mut last: Option<BigReal> = None;
    for p in [64u32, 128, 256, 512] {
        let v = exp(&Bracket::from_int(3, p).sqrt().unwrap()).unwrap();
        if let Some(prev) = &last {
            assert!(v.rad() <= prev, "radius grew at {p} bits");
        }
        last = Some(v.rad().clone());
    }
}

proptest! {
    #[test]
    fn rational_ops_enclose_exact_results(
        a in -1_000_000i64..1_000_000, b in 1i64..1_000_000,
        c in -1_000_000i64..1_000_000, d in 1i64..1_000_000,
        prec in 24u32..300,
    ) {
        let x = rat(a, b);
        let y = rat(c, d);
        let bx = Bracket::from_rational(&x, prec);
        let by = Bracket::from_rational(&y, prec);
        prop_assert!(bx.add(&by).contains_rational(&(&x + &y)));
        prop_assert!(bx.sub(&by).contains_rational(&(&x - &y)));
        prop_assert!(bx.mul(&by).contains_rational(&(&x * &y)));
        if c != 0 {
            prop_assert!(bx.div(&by).unwrap().contains_rational(&(&x / &y)));
        }
    }

    #[test]
    fn higher_precision_refines(v in 1u32..10_000, s_num in -400i64..400) {
        let s = BigReal::from_parts(BigInt::from(s_num), -5);
        let lo = power_real(&Bracket::from_int(v, 64), &s).unwrap();
        let hi = power_real(&Bracket::from_int(v, 256), &s).unwrap();
        prop_assert!(lo.intersects(&hi));
        prop_assert!(hi.rad() <= lo.rad());
    }
}
