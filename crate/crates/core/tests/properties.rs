use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, Zero};
use proptest::prelude::*;
use trigcert::approx::{LaurentPoly, Var};
use trigcert::exact::{rat, Interval, PiExpr, PiPoly, Sign};
use trigcert::prover::{prove_less, prove_poly_positive, BoundCert, Expr, ProveOptions, Status};

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-30i64..=30, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn pi_expr() -> impl Strategy<Value = PiExpr> {
    prop::collection::vec((-3i32..=3, small_rational()), 0..4).prop_map(PiExpr::from_terms)
}

fn exact_sign(r: &BigRational) -> Sign {
    if r.is_zero() {
        Sign::Zero
    } else if r.is_positive() {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn pi_expressions_form_a_commutative_ring(a in pi_expr(), b in pi_expr(), c in pi_expr()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &PiExpr::one(), a.clone());
        prop_assert_eq!(-(-a.clone()), a);
    }

    #[test]
    fn exact_sign_agrees_with_the_enclosure(a in pi_expr()) {
        let s = a.sign();
        if let Some(r) = a.as_rational() {
            prop_assert_eq!(s, exact_sign(&r));
        }
        if let Some(from_iv) = Sign::of_interval(&a.enclose()) {
            prop_assert_eq!(s, from_iv);
        }
        prop_assert_eq!((-a.clone()).sign(), s.flip());
        prop_assert!(a.enclose().contains(a.approx()));
    }

    #[test]
    fn interval_arithmetic_contains_the_exact_result(a in small_rational(), b in small_rational()) {
        let (ia, ib) = (Interval::from_rational(&a), Interval::from_rational(&b));
        prop_assert!(ia.contains_rational(&a));
        prop_assert!((ia + ib).contains_rational(&(&a + &b)));
        prop_assert!((ia - ib).contains_rational(&(&a - &b)));
        prop_assert!((ia * ib).contains_rational(&(&a * &b)));
        prop_assert!((-ia).contains_rational(&-a.clone()));
        prop_assert!(ia.sqr().contains_rational(&(&a * &a)));
        prop_assert!(ia.powi(5).contains_rational(&(&a * &a * &a * &a * &a)));
        if !b.is_zero() {
            prop_assert!((ia / ib).contains_rational(&(&a / &b)));
        }
    }

    #[test]
    fn hull_and_split_keep_every_point(a in small_rational(), b in small_rational(), t in 0u32..=16) {
        let iv = Interval::from_rational(&a).hull(&Interval::from_rational(&b));
        let (lo, hi) = if a <= b { (&a, &b) } else { (&b, &a) };
        let x = lo + (hi - lo) * rat(t as i64, 16);
        let (left, right) = iv.split();
        prop_assert!(iv.contains_rational(&x));
        prop_assert!(left.contains_rational(&x) || right.contains_rational(&x));
    }
}

fn poly_from(coeffs: &[BigRational]) -> (PiPoly, LaurentPoly) {
    let p = PiPoly::new(coeffs.iter().cloned().map(PiExpr::rational).collect());
    (p.clone(), LaurentPoly::poly(Var::X, p))
}

fn exact_value(p: &PiPoly, x: &BigRational) -> BigRational {
    p.eval_exact(&PiExpr::rational(x.clone())).as_rational().expect("rational polynomial at a rational point")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn verdicts_on_random_polynomials_are_sound(
        coeffs in prop::collection::vec((-8i64..=8, 1i64..=4).prop_map(|(n, d)| rat(n, d)), 1..5),
    ) {
        let (p, lp) = poly_from(&coeffs);
        let opts = ProveOptions { max_depth: 24, ..ProveOptions::default() };
        let cert = prove_poly_positive(&lp, PiExpr::zero(), PiExpr::one(), &opts).unwrap();
        match cert.status {
            Status::Verified => {
                for i in 1..1000 {
                    let x = rat(i, 1000);
                    prop_assert!(exact_value(&p, &x).is_positive(), "{} at {}", p, x);
                }
            }
            Status::Refuted => {
                let w = cert.witness.expect("refutation carries a witness");
                prop_assert!(w.point > 0.0 && w.point < 1.0);
                let x = BigRational::from_f64(w.point).unwrap();
                prop_assert!(!exact_value(&p, &x).is_positive(), "{} at {}", p, w.point);
            }
            Status::Undecided => {}
        }
    }

    #[test]
    fn a_larger_depth_budget_keeps_a_decided_verdict(
        coeffs in prop::collection::vec((-8i64..=8, 1i64..=4).prop_map(|(n, d)| rat(n, d)), 1..5),
        shallow in 1u32..8,
    ) {
        let (_, lp) = poly_from(&coeffs);
        let at = |d: u32| {
            let opts = ProveOptions { max_depth: d, ..ProveOptions::default() };
            prove_poly_positive(&lp, PiExpr::zero(), PiExpr::one(), &opts).unwrap().status
        };
        let first = at(shallow);
        if first != Status::Undecided {
            prop_assert_eq!(at(shallow + 12), first);
        }
    }
}

fn sinc_bound(opts: &ProveOptions) -> BoundCert {
    let lhs = Expr::parse("T6L(sinc)", Var::X).unwrap();
    let rhs = Expr::parse("sinc", Var::X).unwrap();
    prove_less(lhs, rhs, PiExpr::zero(), PiExpr::half_pi(), opts).unwrap()
}

#[test]
fn certificates_do_not_depend_on_the_thread_count() {
    let opts = ProveOptions { record_leaves: true, ..ProveOptions::default() };
    let parallel = sinc_bound(&opts);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let serial = pool.install(|| sinc_bound(&opts));
    assert!(parallel.is_verified());
    assert_eq!(parallel, serial);
}
