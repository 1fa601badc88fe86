mod common;

use std::collections::BTreeMap;

use common::oracles::{bernoulli_oracle, stirling_oracle};
use common::small_rat;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toric_gw::algebra::{rat, ratio, Poly, Rat, Scalar};
use toric_gw::asympt::{
    bernoulli, check_total_derivative, gamma_hat_series, gamma_stationary_coefficients, gamma_vs_stationary_phase,
    gaussian_moment, stationary_phase, stationary_phase_branch, PhaseData, XSeries,
};
use toric_gw::Error;

fn sc(r: Rat) -> Scalar {
    Scalar::from_rat(r)
}

fn consts(v: &[Rat], complete: bool) -> XSeries {
    XSeries::from_scalars(v.iter().cloned().map(sc).collect(), complete)
}

fn nonzero_rat(rng: &mut impl Rng) -> Rat {
    loop {
        let r = small_rat(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

#[test]
fn gaussian_moments() {
    assert!(gaussian_moment(1, &Scalar::one()).is_zero());
    assert_eq!(gaussian_moment(2, &Scalar::one()), Scalar::one());
    assert_eq!(gaussian_moment(4, &Scalar::one()), Scalar::from_int(3));
    assert_eq!(gaussian_moment(0, &Scalar::s()), Scalar::s());
    assert_eq!(gaussian_moment(6, &Scalar::s()), Scalar::s().pow(7).scale(&rat(15)));
}

#[test]
fn pure_gaussian_and_small_examples() {
    let flat = PhaseData::new(Scalar::one(), vec![], true);
    let e = stationary_phase(&flat, &XSeries::one(), 4).unwrap();
    assert_eq!(e.coeffs.len(), 1);
    assert_eq!(e.a(0), Scalar::one());

    let (al, be) = (ratio(2, 3), ratio(-1, 5));
    let ph = PhaseData::new(Scalar::one(), vec![sc(al.clone()), sc(be.clone())], true);
    let e = stationary_phase(&ph, &XSeries::one(), 1).unwrap();
    assert_eq!(e.a(1), sc(ratio(15, 2) * &al * &al + rat(3) * &be));

    let amp = consts(&[rat(4), rat(0), ratio(7, 3)], true);
    let e = stationary_phase(&flat, &amp, 3).unwrap();
    assert_eq!(e.a(0), Scalar::from_int(4));
    assert_eq!(e.a(1), sc(ratio(7, 3)));
    assert!(e.a(2).is_zero());
}

/// `A_1 = s a_2 + 3 s^2 a_1 c_3 + a_0 (3 s^2 c_4 + 15 s^3 c_3^2 / 2)` for
/// `sigma^2 = s`.
#[test]
fn first_correction_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let a: Vec<Rat> = (0..3).map(|_| small_rat(&mut rng)).collect();
        let (c3, c4) = (small_rat(&mut rng), small_rat(&mut rng));
        let ph = PhaseData::new(Scalar::s(), vec![sc(c3.clone()), sc(c4.clone())], true);
        let e = stationary_phase(&ph, &consts(&a, true), 1).unwrap();
        let s = Scalar::s();
        let expect = s
            .scale(&a[2])
            .add_ref(&s.pow(2).scale(&(rat(3) * &a[1] * &c3)))
            .add_ref(&s.pow(2).scale(&(rat(3) * &a[0] * &c4)))
            .add_ref(&s.pow(3).scale(&(ratio(15, 2) * &a[0] * &c3 * &c3)));
        assert_eq!(e.a(1), expect);
        assert_eq!(e.a(0), sc(a[0].clone()));
    }
}

#[test]
fn branch_independence() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..20 {
        let higher: Vec<Scalar> = (0..4).map(|_| sc(small_rat(&mut rng))).collect();
        let ph = PhaseData::new(sc(nonzero_rat(&mut rng)), higher, true);
        let amp = consts(&(0..4).map(|_| small_rat(&mut rng)).collect::<Vec<_>>(), true);
        let plus = stationary_phase_branch(&ph, &amp, 3, 1).unwrap();
        let minus = stationary_phase_branch(&ph, &amp, 3, -1).unwrap();
        assert_eq!(plus.coeffs, minus.coeffs);
    }
}

#[test]
fn degenerate_and_truncated_inputs() {
    let ph = PhaseData::new(Scalar::zero(), vec![], true);
    assert!(matches!(stationary_phase(&ph, &XSeries::one(), 1), Err(Error::Degenerate(_))));
    let ph = PhaseData::new(Scalar::one(), vec![Scalar::one()], false);
    assert!(matches!(stationary_phase(&ph, &XSeries::one(), 2), Err(Error::Unsupported(_))));
    let flat = PhaseData::new(Scalar::one(), vec![], true);
    let short = consts(&[rat(1), rat(1)], false);
    assert!(matches!(stationary_phase(&flat, &short, 2), Err(Error::Unsupported(_))));
}

#[test]
fn total_derivatives_have_trivial_asymptotics() {
    let flat = PhaseData::new(Scalar::one(), vec![], true);
    assert!(check_total_derivative(&flat, &XSeries::one(), &XSeries::one(), 4).unwrap());
    assert!(!stationary_phase(&flat, &XSeries::one(), 4).unwrap().is_zero());

    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..50 {
        let higher: Vec<Scalar> = (0..rng.gen_range(0..4)).map(|_| sc(small_rat(&mut rng))).collect();
        let ph = PhaseData::new(sc(nonzero_rat(&mut rng)), higher, true);
        let a = consts(&(0..rng.gen_range(1..5)).map(|_| small_rat(&mut rng)).collect::<Vec<_>>(), true);
        let v = if rng.gen_bool(0.5) {
            XSeries::monomial(Scalar::one(), 1, 0)
        } else {
            consts(&(0..3).map(|_| small_rat(&mut rng)).collect::<Vec<_>>(), true)
        };
        assert!(check_total_derivative(&ph, &a, &v, 4).unwrap());
    }
}

/// The family `f = -x^2/2 + eps x^3`, with `eps` the parameter `s`.
fn cubic_family() -> PhaseData {
    PhaseData::new(Scalar::one(), vec![Scalar::s()], true)
}

#[test]
fn differentiating_the_asymptotics() {
    let ph = cubic_family();
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..5 {
        let a = consts(&(0..3).map(|_| small_rat(&mut rng)).collect::<Vec<_>>(), true);
        let lhs = stationary_phase(&ph, &a, 4).unwrap();
        let da = a.mul(&XSeries::monomial(Scalar::one(), 3, -1));
        let rhs = stationary_phase(&ph, &da, 4).unwrap();
        for k in 0..=4 {
            assert_eq!(lhs.a(k).derivative(), rhs.a(k), "z^{k}");
        }
    }
}

fn poly_coeff(x: &Scalar, k: usize) -> Rat {
    assert!(x.denom().is_one(), "polynomial in eps expected");
    x.numer().coeff(k)
}

/// At `eps = z mu` the cubic term moves into the amplitude as
/// `exp(mu x^3)`, here with `mu = s`.
#[test]
fn parameter_proportional_to_z() {
    let n = 3;
    let param = stationary_phase(&cubic_family(), &XSeries::one(), n).unwrap();
    let len = 2 * n as usize + 4;
    let mut fold = vec![Scalar::zero(); len];
    let mut f = Rat::one();
    for m in 0..len.div_ceil(3) {
        if m > 0 {
            f *= rat(m as i64);
        }
        if 3 * m < len {
            fold[3 * m] = Scalar::s().pow(m as u32).scale(&f.recip());
        }
    }
    let flat = PhaseData::new(Scalar::one(), vec![], true);
    let folded = stationary_phase(&flat, &XSeries::from_scalars(fold, false), n).unwrap();
    for m in 0..=n {
        let mut c = Poly::zero();
        for k in 0..=m {
            let e = (m - k) as usize;
            c = c.add(&Poly::monomial(poly_coeff(&param.a(k), e), e));
        }
        assert_eq!(folded.a(m), Scalar::from_poly(c), "z^{m}");
    }
}

#[test]
fn bernoulli_numbers() {
    assert_eq!(bernoulli(0), rat(1));
    assert_eq!(bernoulli(2), ratio(1, 6));
    assert_eq!(bernoulli(4), ratio(-1, 30));
    for m in (2..=16).step_by(2) {
        assert_eq!(bernoulli(m), bernoulli_oracle(m), "B_{m}");
    }
    for m in (3..=15).step_by(2) {
        assert!(bernoulli(m).is_zero());
    }
}

#[test]
fn gamma_hat_coefficients() {
    assert_eq!(gamma_hat_series(0).coeffs, vec![rat(1)]);
    assert_eq!(gamma_hat_series(1).coeffs, vec![rat(1), ratio(1, 12)]);
    assert_eq!(
        gamma_hat_series(3).coeffs,
        vec![rat(1), ratio(1, 12), ratio(1, 288), ratio(-139, 51840)]
    );
    assert_eq!(gamma_hat_series(3).to_string(), "1 + 1/12*u + 1/288*u^2 - 139/51840*u^3");
    let oracle = stirling_oracle(6);
    assert_eq!(oracle[1], ratio(1, 12));
    assert_eq!(gamma_hat_series(6).coeffs, oracle);
}

#[test]
fn gamma_from_stationary_phase() {
    let sp = gamma_stationary_coefficients(1).unwrap();
    assert_eq!(sp[1], sc(ratio(1, 12)));
    for n in 0..=4 {
        assert!(gamma_vs_stationary_phase(n).unwrap(), "order {n}");
    }
}

#[test]
fn laurent_amplitudes() {
    // a = 1/z * x^2 contributes A_0 = 1 and nothing at z^{-1}
    let flat = PhaseData::new(Scalar::one(), vec![], true);
    let a = XSeries::monomial(Scalar::one(), 2, -1);
    let e = stationary_phase(&flat, &a, 2).unwrap();
    let expect: BTreeMap<i64, Scalar> = [(0, Scalar::one())].into_iter().collect();
    assert_eq!(e.coeffs, expect);
}
