//! Exact operator identities as reusable randomized checks, shared by the
//! `identities` test target and the acceptance runner.

#![allow(dead_code)]

use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use qlh_core::laurent::LaurentSeries;
use qlh_core::structure::{associated_polys, mops_from_recurrence};
use qlh_core::{
    frac, int, moments_from_recurrence, MomentForm, Poly, QParam, RecurrencePair, Scalar,
};

fn scalar() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=6).prop_map(|(n, d)| frac(n, d))
}

fn nonzero() -> impl Strategy<Value = Scalar> {
    scalar().prop_filter("nonzero", |s| !s.is_zero())
}

fn qparam() -> impl Strategy<Value = QParam> {
    scalar().prop_filter_map("q excluded", |s| QParam::new(s).ok())
}

fn poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(scalar(), 0..=max_deg + 1).prop_map(Poly::new)
}

const N: usize = 12;

fn form() -> impl Strategy<Value = MomentForm> {
    prop::collection::vec(scalar(), N + 1).prop_map(|v| MomentForm::new(v).unwrap())
}

fn unit_form() -> impl Strategy<Value = MomentForm> {
    (nonzero(), prop::collection::vec(scalar(), N)).prop_map(|(u0, rest)| {
        let mut v = vec![u0];
        v.extend(rest);
        MomentForm::new(v).unwrap()
    })
}

fn regular_pair() -> impl Strategy<Value = RecurrencePair> {
    (
        prop::collection::vec(scalar(), 8),
        prop::collection::vec(nonzero(), 8),
    )
        .prop_map(|(b, g)| RecurrencePair::new(b, g).unwrap())
}

/// Difference over the common provable range is zero, and that range is
/// not vacuous.
fn series_agree(a: &LaurentSeries, b: &LaurentSeries, depth: i64) -> bool {
    let d = a.sub(b).unwrap();
    d.floor().is_none_or(|f| f <= depth) && d.is_zero()
}

fn trunc(u: &MomentForm, n: usize) -> MomentForm {
    u.truncate(n).unwrap()
}

pub fn field_axioms(cases: u32) -> Result<(), String> {
    run(cases, (scalar(), scalar(), scalar()), |(a, b, c)| {
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        if !a.is_zero() {
            prop_assert_eq!(&a * a.recip(), Scalar::one());
        }
        Ok(())
    })
}

// (x-c)((x-c)^{-1}u) = u and (x-c)^{-1}((x-c)u) = u - (u)_0 delta_c
pub fn divided_form_identities(cases: u32) -> Result<(), String> {
    run(cases, (form(), scalar()), |(u, c)| {
        let lin = Poly::linear_root(&c);
        prop_assert_eq!(u.div_xc(&c).mul_poly(&lin).unwrap(), u.clone());
        let lhs = u.mul_poly(&lin).unwrap().div_xc(&c);
        let rhs = trunc(&u, N)
            .sub(&MomentForm::dirac(&c, N).scale(&u.moments()[0]))
            .unwrap();
        prop_assert_eq!(lhs, rhs);
        Ok(())
    })
}

// u theta_0 f has leading term a_n (u)_0 x^{n-1}
pub fn theta0_leading_term(cases: u32) -> Result<(), String> {
    run(cases, (form(), poly(6)), |(u, f)| {
        let g = u.theta0_product(&f).unwrap();
        match f.degree() {
            Some(n) if n >= 1 => {
                prop_assert!(g.degree().is_none_or(|d| d < n));
                prop_assert_eq!(g.coeff(n - 1), f.lead() * &u.moments()[0]);
            }
            _ => prop_assert!(g.is_zero()),
        }
        Ok(())
    })
}

// u theta_0 (fg) = g (u theta_0 f) + (f u) theta_0 g
pub fn theta0_product_rule(cases: u32) -> Result<(), String> {
    run(cases, (form(), poly(3), poly(3)), |(u, f, g)| {
        let lhs = u.theta0_product(&(&f * &g)).unwrap();
        let fu = u.mul_poly(&f).unwrap();
        let rhs = &g * u.theta0_product(&f).unwrap() + fu.theta0_product(&g).unwrap();
        prop_assert_eq!(lhs, rhs);
        Ok(())
    })
}

// u theta_0 (f P_{k+1}) = f P_k^(1) whenever k + 1 >= deg f
pub fn theta0_against_orthogonal(cases: u32) -> Result<(), String> {
    run(cases, (regular_pair(), poly(3), 2usize..6), |(r, f, k)| {
        let u = moments_from_recurrence(&r, 14).unwrap();
        let m = mops_from_recurrence(&r, 7).unwrap();
        let a = associated_polys(&m, &u).unwrap();
        prop_assume!(f.degree().is_none_or(|d| k + 1 >= d));
        let lhs = u.theta0_product(&(&f * &m.polys[k + 1])).unwrap();
        prop_assert_eq!(lhs, &f * &a.polys[k]);
        Ok(())
    })
}

// theta_b - theta_c = (b-c) theta_b theta_c, and the thetas commute
pub fn theta_composition(cases: u32) -> Result<(), String> {
    run(cases, (poly(6), scalar(), scalar()), |(f, b, c)| {
        let lhs = f.theta(&b) - f.theta(&c);
        let rhs = f.theta(&c).theta(&b).scale(&(&b - &c));
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(f.theta(&c).theta(&b), f.theta(&b).theta(&c));
        Ok(())
    })
}

// h_a(g u) = (h_{1/a} g)(h_a u), h_a(uv) = (h_a u)(h_a v), h_a(x^{-1}u) = a x^{-1} h_a u
pub fn dilation_laws(cases: u32) -> Result<(), String> {
    run(
        cases,
        (form(), form(), poly(3), nonzero()),
        |(u, v, g, a)| {
            let ai = a.recip();
            prop_assert_eq!(
                u.mul_poly(&g).unwrap().ha(&a).unwrap(),
                trunc(&u.ha(&a).unwrap(), N)
                    .mul_poly(&g.ha(&ai).unwrap())
                    .unwrap()
            );
            prop_assert_eq!(
                u.cauchy(&v).unwrap().ha(&a).unwrap(),
                u.ha(&a).unwrap().cauchy(&v.ha(&a).unwrap()).unwrap()
            );
            prop_assert_eq!(
                u.div_x().ha(&a).unwrap(),
                u.ha(&a).unwrap().div_x().scale(&a)
            );
            Ok(())
        },
    )
}

// polynomials: h_{1/q} H_q = H_{1/q}, H_q h_{1/q} = q^{-1} H_{1/q}
pub fn dilation_derivative_polys(cases: u32) -> Result<(), String> {
    run(cases, (poly(7), qparam()), |(f, q)| {
        let qi = q.inv();
        prop_assert_eq!(f.hq(&q).ha(qi.value()).unwrap(), f.hq(&qi));
        prop_assert_eq!(
            f.ha(qi.value()).unwrap().hq(&q),
            f.hq(&qi).scale(qi.value())
        );
        Ok(())
    })
}

// forms: h_{1/q} H_q = q^{-1} H_{1/q}, H_q h_{1/q} = H_{1/q}
pub fn dilation_derivative_forms(cases: u32) -> Result<(), String> {
    run(cases, (form(), qparam()), |(u, q)| {
        let qi = q.inv();
        prop_assert_eq!(
            u.hq(&q).ha(qi.value()).unwrap(),
            u.hq(&qi).scale(qi.value())
        );
        prop_assert_eq!(u.ha(qi.value()).unwrap().hq(&q), u.hq(&qi));
        Ok(())
    })
}

// H_q(fg) = (h_q f)(H_q g) + g (H_q f)
pub fn leibniz(cases: u32) -> Result<(), String> {
    run(cases, (poly(4), poly(4), qparam()), |(f, g, q)| {
        let lhs = (&f * &g).hq(&q);
        let rhs = f.ha(q.value()).unwrap() * g.hq(&q) + &g * f.hq(&q);
        prop_assert_eq!(lhs, rhs);
        Ok(())
    })
}

// H_q(g u) = (h_{1/q} g) H_q u + q^{-1} (H_{1/q} g) u
pub fn form_product_rule(cases: u32) -> Result<(), String> {
    run(cases, (form(), poly(3), qparam()), |(u, g, q)| {
        let qi = q.inv();
        let lhs = u.mul_poly(&g).unwrap().hq(&q);
        let n = lhs.order();
        let a = trunc(&u.hq(&q), N)
            .mul_poly(&g.ha(qi.value()).unwrap())
            .unwrap();
        let b = u.mul_poly(&g.hq(&qi)).unwrap().scale(qi.value());
        let rhs = trunc(&a, n).add(&trunc(&b, n)).unwrap();
        prop_assert_eq!(lhs, rhs);
        Ok(())
    })
}

// H_{1/q}(u theta_0 f) = q (H_q u) theta_0 (h_{1/q} f) + u theta_0 H_{1/q} f
pub fn theta0_derivative(cases: u32) -> Result<(), String> {
    run(cases, (form(), poly(6), qparam()), |(u, f, q)| {
        let qi = q.inv();
        let lhs = u.theta0_product(&f).unwrap().hq(&qi);
        let rhs = u
            .hq(&q)
            .theta0_product(&f.ha(qi.value()).unwrap())
            .unwrap()
            .scale(q.value())
            + u.theta0_product(&f.hq(&qi)).unwrap();
        prop_assert_eq!(lhs, rhs);
        Ok(())
    })
}

// S(f u) = f S(u) + u theta_0 f
pub fn stieltjes_polynomial_multiple(cases: u32) -> Result<(), String> {
    run(cases, (form(), poly(4)), |(u, f)| {
        let lhs = LaurentSeries::stieltjes(&u.mul_poly(&f).unwrap());
        let rhs = LaurentSeries::stieltjes(&u)
            .mul_poly(&f)
            .unwrap()
            .add(&LaurentSeries::from_poly(&u.theta0_product(&f).unwrap()))
            .unwrap();
        prop_assert!(series_agree(&lhs, &rhs, -(N as i64) + 4));
        Ok(())
    })
}

// S(uv) = -z S(u) S(v)
pub fn stieltjes_product(cases: u32) -> Result<(), String> {
    run(cases, (form(), form()), |(u, v)| {
        let lhs = LaurentSeries::stieltjes(&u.cauchy(&v).unwrap());
        let rhs = LaurentSeries::stieltjes(&u)
            .mul(&LaurentSeries::stieltjes(&v))
            .unwrap()
            .mul_poly(&Poly::x().scale(&int(-1)))
            .unwrap();
        prop_assert!(series_agree(&lhs, &rhs, -(N as i64)));
        Ok(())
    })
}

// S(x^{-n} u) = z^{-n} S(u), S(u^{-1}) = z^{-2} S(u)^{-1}
pub fn stieltjes_division_and_inverse(cases: u32) -> Result<(), String> {
    run(cases, (unit_form(), 1usize..4), |(u, n)| {
        let mut w = u.clone();
        for _ in 0..n {
            w = w.div_x();
        }
        let zn = LaurentSeries::monomial(-(n as i64), Scalar::one());
        let rhs = LaurentSeries::stieltjes(&u).mul(&zn).unwrap();
        let lhs = LaurentSeries::stieltjes(&w);
        prop_assert!(series_agree(&lhs, &rhs, -(N as i64)));

        let lhs = LaurentSeries::stieltjes(&u.inverse().unwrap());
        let rhs = LaurentSeries::stieltjes(&u)
            .reciprocal(-100)
            .unwrap()
            .mul(&LaurentSeries::monomial(-2, Scalar::one()))
            .unwrap();
        prop_assert!(series_agree(&lhs, &rhs, -(N as i64)));
        Ok(())
    })
}

// S(H_q u) = q^{-1} H_{1/q} S(u), h_{1/q} S(u) = q S(h_q u)
pub fn stieltjes_q_operators(cases: u32) -> Result<(), String> {
    run(cases, (form(), qparam()), |(u, q)| {
        let qi = q.inv();
        let lhs = LaurentSeries::stieltjes(&u.hq(&q));
        let rhs = LaurentSeries::stieltjes(&u).hq(&qi).scale(qi.value());
        prop_assert!(series_agree(&lhs, &rhs, -(N as i64)));
        let lhs = LaurentSeries::stieltjes(&u).ha(qi.value()).unwrap();
        let rhs = LaurentSeries::stieltjes(&u.ha(q.value()).unwrap()).scale(q.value());
        prop_assert!(series_agree(&lhs, &rhs, -(N as i64)));
        Ok(())
    })
}

pub fn cauchy_commutes_and_inverse_involutes(cases: u32) -> Result<(), String> {
    run(cases, (unit_form(), form()), |(u, v)| {
        prop_assert_eq!(u.cauchy(&v).unwrap(), v.cauchy(&u).unwrap());
        let inv = u.inverse().unwrap();
        prop_assert_eq!(inv.inverse().unwrap(), u.clone());
        prop_assert_eq!(
            u.cauchy(&inv).unwrap(),
            MomentForm::dirac(&Scalar::zero(), N)
        );
        Ok(())
    })
}

pub fn divrem_round_trip(cases: u32) -> Result<(), String> {
    run(cases, (poly(7), poly(4)), |(f, g)| {
        prop_assume!(!g.is_zero());
        let (q, r) = f.divrem(&g).unwrap();
        prop_assert_eq!(&q * &g + &r, f);
        prop_assert!(r.degree().is_none_or(|d| d < g.degree().unwrap()));
        Ok(())
    })
}

pub fn recurrence_round_trip(cases: u32) -> Result<(), String> {
    run(cases, (regular_pair(),), |(r,)| {
        let u = moments_from_recurrence(&r, 15).unwrap();
        let back = qlh_core::recurrence_from_moments(&u).unwrap();
        prop_assert_eq!(&back.betas[..], &r.betas[..8]);
        prop_assert_eq!(&back.gammas[..7], &r.gammas[..7]);
        // Hankel determinants are products of r_k = gamma_1 ... gamma_k
        let mut h = Scalar::one();
        let mut rk = Scalar::one();
        for n in 0..=7 {
            if n >= 1 {
                rk *= &r.gammas[n - 1];
            }
            h *= &rk;
            prop_assert_eq!(u.hankel(n).unwrap(), h.clone());
        }
        Ok(())
    })
}

pub fn rational_roots_are_exact(cases: u32) -> Result<(), String> {
    run(
        cases,
        (prop::collection::vec(scalar(), 0..5), poly(2)),
        |(roots, extra)| {
            let mut f = Poly::one();
            for r in &roots {
                f = f * Poly::linear_root(r);
            }
            prop_assume!(!extra.is_zero());
            let f = f * &extra;
            let found = f.rational_roots();
            for (c, m) in &found {
                let mut g = f.clone();
                for _ in 0..*m {
                    prop_assert!(g.eval(c).is_zero());
                    g = g.theta(c);
                }
                prop_assert!(!g.eval(c).is_zero());
            }
            for r in &roots {
                prop_assert!(found.iter().any(|(c, _)| c == r));
            }
            prop_assert!(found.windows(2).all(|w| w[0].0 < w[1].0));
            Ok(())
        },
    )
}

fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    let mut runner =
        TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

type Check = fn(u32) -> Result<(), String>;

/// Every identity check with its name.
pub const ALL: &[(&str, Check)] = &[
    ("field_axioms", field_axioms),
    ("divided_form_identities", divided_form_identities),
    ("theta0_leading_term", theta0_leading_term),
    ("theta0_product_rule", theta0_product_rule),
    ("theta0_against_orthogonal", theta0_against_orthogonal),
    ("theta_composition", theta_composition),
    ("dilation_laws", dilation_laws),
    ("dilation_derivative_polys", dilation_derivative_polys),
    ("dilation_derivative_forms", dilation_derivative_forms),
    ("leibniz", leibniz),
    ("form_product_rule", form_product_rule),
    ("theta0_derivative", theta0_derivative),
    (
        "stieltjes_polynomial_multiple",
        stieltjes_polynomial_multiple,
    ),
    ("stieltjes_product", stieltjes_product),
    (
        "stieltjes_division_and_inverse",
        stieltjes_division_and_inverse,
    ),
    ("stieltjes_q_operators", stieltjes_q_operators),
    (
        "cauchy_commutes_and_inverse_involutes",
        cauchy_commutes_and_inverse_involutes,
    ),
    ("divrem_round_trip", divrem_round_trip),
    ("recurrence_round_trip", recurrence_round_trip),
    ("rational_roots_are_exact", rational_roots_are_exact),
];
