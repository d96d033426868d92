#![allow(dead_code)]

use autodirichlet::autoseq::{CoefficientStream, StreamKind};
use autodirichlet::exactnum::{binomial, Rational};
use autodirichlet::realkernel::{exp, indexed_sum, ln, pi, power_real, BigReal, Bracket, Round};
use autodirichlet::zetalib::{dirichlet_series, hurwitz_zeta, tight_target_eps};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const PI_DIGITS: &str = "3.14159265358979323846264338327950288419716939937510582097494459230781640628620899862803482534211706798214808651";
pub const ZETA3_DIGITS: &str = "1.202056903159594285399738161511449990764986292340498881792271555341838205786313090186455873609335258";
pub const CATALAN_PREFIX: &str = "0.915965594177219015";

/// Exact value of a plain decimal literal.
pub fn dec(s: &str) -> Rational {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    let digits: BigInt = format!("{int}{frac}").parse().expect("decimal digits");
    let v = Rational::new(digits, BigInt::from(10).pow(frac.len() as u32));
    if neg {
        -v
    } else {
        v
    }
}

/// A truncated decimal constant as a bracket wide enough for the
/// truncation and one more digit.
pub fn reference(s: &str, prec: u32) -> Bracket {
    let frac = s.split_once('.').map_or(0, |(_, f)| f.len()) as u32;
    let rad = Rational::new(BigInt::one(), BigInt::from(10).pow(frac - 1));
    let rad = BigReal::from_rational(&rad, 64, Round::Ceil).0;
    Bracket::from_rational(&dec(s), prec).add_error(&rad)
}

pub fn real(v: f64) -> BigReal {
    BigReal::from_f64(v).unwrap()
}

/// Catalan's constant from
/// `C = (π/8) ln(2+√3) + (3/8) Σ_{n≥0} 1/((2n+1)² C(2n,n))`,
/// with no zeta function involved. The `n`-th term is below `4^{-n}`.
pub fn catalan_oracle(prec: u32) -> Bracket {
    let m = prec as u64 / 2 + 8;
    let mut sum = Rational::zero();
    for n in 0..m {
        let odd = BigInt::from(2 * n + 1);
        sum += Rational::new(BigInt::one(), &odd * &odd * binomial(2 * n, n));
    }
    let tail = Rational::new(
        BigInt::from(4),
        BigInt::from(3) * (BigInt::one() << (2 * m) as usize),
    );
    let tail = BigReal::from_rational(&tail, 64, Round::Ceil).0;
    let series = Bracket::from_rational(&sum, prec)
        .add_error(&tail)
        .mul_rational(&Rational::new(3.into(), 8.into()));
    let root3 = Bracket::from_int(3, prec).sqrt().unwrap();
    let log = ln(&Bracket::from_int(2, prec).add(&root3)).unwrap();
    pi(prec).mul(&log).mul_2exp(-3).add(&series)
}

fn random_dyadic(rng: &mut ChaCha8Rng, mant_bits: u32, exp_lo: i64, exp_hi: i64) -> BigReal {
    let m: i64 = rng.gen_range(-(1i64 << mant_bits)..(1i64 << mant_bits));
    BigReal::from_parts(BigInt::from(m), rng.gen_range(exp_lo..exp_hi))
}

/// Random bracket together with a random exact point inside it.
fn random_bracket(rng: &mut ChaCha8Rng, prec: u32, exp_lo: i64, exp_hi: i64) -> (Bracket, BigReal) {
    let mid = random_dyadic(rng, 52, exp_lo, exp_hi);
    let rad = if rng.gen_bool(0.2) {
        BigReal::zero()
    } else {
        let e = mid.msb().unwrap_or(exp_lo) - rng.gen_range(4..60);
        BigReal::from_parts(BigInt::from(rng.gen_range(1u32..u32::MAX)), e - 32)
    };
    let j: i64 = rng.gen_range(-8..=8);
    let point = mid.add_exact(&rad.mul_2exp(-3).mul_exact(&BigReal::from_int(j)));
    (Bracket::new(mid, rad, prec), point)
}

fn positive(b: &Bracket, x: &BigReal) -> (Bracket, BigReal) {
    let (b, x) = if b.mid().is_negative() {
        (b.neg(), x.neg())
    } else {
        (b.clone(), x.clone())
    };
    let shift = b.rad().mul_2exp(1).add_exact(&BigReal::pow2(-20));
    (
        b.add(&Bracket::exact(shift.clone(), b.prec())),
        x.add_exact(&shift),
    )
}

/// Randomised containment check of the bracket operations.
///
/// Arithmetic results are compared against exact rationals; transcendental
/// results against a point evaluation at four times the precision.
pub fn containment_stress(seed: u64, trials: usize) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let precs = [53u32, 64, 128, 256];
    for t in 0..trials {
        let p = precs[rng.gen_range(0..precs.len())];
        let (a, x) = random_bracket(&mut rng, p, -40, 20);
        let (b, y) = random_bracket(&mut rng, p, -40, 20);
        let fail = |op: &str| Err(format!("trial {t}: {op} lost containment at {p} bits"));

        if !a.add(&b).contains(&x.add_exact(&y)) {
            return fail("add");
        }
        if !a.sub(&b).contains(&x.sub_exact(&y)) {
            return fail("sub");
        }
        if !a.mul(&b).contains(&x.mul_exact(&y)) {
            return fail("mul");
        }
        if !b.contains_zero() {
            let q = x.to_rational() / y.to_rational();
            if !a.div(&b).unwrap().contains_rational(&q) {
                return fail("div");
            }
        }

        let (pa, px) = positive(&a, &x);
        let r = pa.sqrt().unwrap();
        let lo = r.lower();
        let hi = r.upper();
        if (lo.is_positive() && lo.mul_exact(&lo) > px) || hi.mul_exact(&hi) < px {
            return fail("sqrt");
        }

        let wide = 4 * p;
        let (e, ex) = random_bracket(&mut rng, p, -60, -48);
        let want = exp(&Bracket::exact(ex, wide)).unwrap();
        if !exp(&e).unwrap().intersects(&want) {
            return fail("exp");
        }
        let want = ln(&Bracket::exact(px.clone(), wide)).unwrap();
        if !ln(&pa).unwrap().intersects(&want) {
            return fail("ln");
        }
        let s = BigReal::from_parts(BigInt::from(rng.gen_range(-320i64..320)), -6);
        let (c, cx) = random_bracket(&mut rng, p, -52, -46);
        let (pb, pbx) = positive(&c, &cx);
        let want = power_real(&Bracket::exact(pbx, wide), &s).unwrap();
        if !power_real(&pb, &s).unwrap().intersects(&want) {
            return fail("power_real");
        }
    }
    Ok(())
}

fn determinism_workload() -> Vec<Bracket> {
    let squares = indexed_sum(1, 200_000, 128, |n| {
        Some(Bracket::from_int(n, 128).sqr().recip().unwrap())
    });
    let stream = CoefficientStream::new(StreamKind::Theorem1 { k: 1 }).unwrap();
    let t1 = dirichlet_series(&stream, &BigReal::from_int(3), 100_000, 128).unwrap();
    let quarter = Rational::new(3.into(), 4.into());
    let h = hurwitz_zeta(&real(2.5), &quarter, 192, &tight_target_eps(192)).unwrap();
    vec![squares, t1.value, h.value]
}

/// Bit-identical results on one and on four worker threads.
pub fn thread_determinism() -> Result<(), String> {
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(determinism_workload)
    };
    let one = run(1);
    let four = run(4);
    if one == four {
        Ok(())
    } else {
        Err("results differ between 1 and 4 threads".into())
    }
}
