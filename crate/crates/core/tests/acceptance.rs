//! Exit criteria. Each test prints one PASS/FAIL line and then asserts it.

use std::time::{Duration, Instant};

use num_rational::BigRational;
use trigcert::approx::{catalog, FunctionId, LaurentPoly, Var};
use trigcert::exact::{parse_constant, rat, Interval, PiExpr, Sign};
use trigcert::prover::{
    becker_stark_mixed, enclose_at, mixed_trig_sign, prove_less, prove_poly_positive, BoundCert, ClaimedSign, Expr,
    ProveOptions, Status, MAX_TRUNCATION_DEGREE,
};
use trigcert::series::{becker_stark_C, psi_coeff_conjecture, psi_coeff_product, steckin_alpha};
use trigcert::suite::{find_crossing, run_all, RunConfig};

fn verdict(n: u32, what: &str, pass: bool, detail: &str) {
    println!("{} criterion {n:>2}: {what} ({detail})", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {n} failed: {what}: {detail}");
}

fn c(s: &str) -> PiExpr {
    parse_constant(s).unwrap()
}

fn b(name: &str) -> Expr {
    Expr::Bound(catalog::named(name).unwrap())
}

fn f(id: FunctionId) -> Expr {
    Expr::function(id)
}

fn less(lhs: Expr, rhs: Expr, lo: &str, hi: &str) -> BoundCert {
    prove_less(lhs, rhs, c(lo), c(hi), &ProveOptions::default()).unwrap()
}

fn less_in(lhs: Expr, rhs: Expr, var: Var, lo: &str, hi: &str) -> BoundCert {
    let claim = trigcert::prover::Claim::new(lhs, rhs, c(lo), c(hi)).in_var(var);
    trigcert::prover::prove_claim(&claim, &ProveOptions::default()).unwrap()
}

/// `Σ c·π^e` from `(e, numerator, denominator)` triples.
fn pi_sum(terms: &[(i32, i64, i64)]) -> PiExpr {
    PiExpr::from_terms(terms.iter().map(|&(e, n, d)| (e, rat(n, d))))
}

fn summary(certs: &[BoundCert]) -> String {
    certs
        .iter()
        .filter(|c| !c.is_verified())
        .map(|c| format!("{} is {}", c.claim, c.status))
        .collect::<Vec<_>>()
        .join("; ")
}

#[test]
fn criterion_01_psi_coefficients() {
    let start = Instant::now();
    let printed = [
        pi_sum(&[(0, 8, 1)]),
        pi_sum(&[(-1, 8, 1)]),
        pi_sum(&[(-2, 16, 1), (0, -8, 3)]),
        pi_sum(&[(-3, 32, 1), (-1, -8, 3)]),
        pi_sum(&[(-4, 64, 1), (-2, -16, 3), (0, -8, 45)]),
        pi_sum(&[(-5, 128, 1), (-3, -32, 3), (-1, -8, 45)]),
    ];
    let mismatches: Vec<usize> =
        (0..6).filter(|&m| psi_coeff_product(m) != printed[m] || psi_coeff_conjecture(m) != printed[m]).collect();
    let elapsed = start.elapsed();
    verdict(
        1,
        "psi coefficients 0..5 equal the closed forms, both routes",
        mismatches.is_empty() && elapsed < Duration::from_secs(1),
        &format!("mismatches {mismatches:?}, {elapsed:?}"),
    );
}

#[test]
fn criterion_02_product_equals_closed_form() {
    let start = Instant::now();
    let mismatches: Vec<usize> = (0..=40).filter(|&m| psi_coeff_product(m) != psi_coeff_conjecture(m)).collect();
    let elapsed = start.elapsed();
    verdict(
        2,
        "psi product and closed form agree for m <= 40",
        mismatches.is_empty() && elapsed < Duration::from_secs(10),
        &format!("mismatches {mismatches:?}, {elapsed:?}"),
    );
}

#[test]
fn criterion_03_sinc_truncation_chain() {
    let start = Instant::now();
    // the chain for (k1, k2) is the conjunction of lower link k1 and upper link k2
    let mut certs = Vec::new();
    for k in 1..=3 {
        certs.push(less(b(&format!("T{}L(sinc)", 4 * k - 2)), f(FunctionId::Sinc), "0", "pi/2"));
        certs.push(less(f(FunctionId::Sinc), b(&format!("T{}U(sinc)", 4 * k)), "0", "pi/2"));
    }
    let elapsed = start.elapsed();
    let depth = certs.iter().map(|c| c.max_depth).max().unwrap();
    // the gap closes at 0, so the left end must be settled by the series with a positive δ
    let ladder = certs.iter().all(|c| {
        let e = &c.endpoints[0];
        e.status == Status::Verified && e.order.is_some_and(|o| o > 0) && e.delta > 0.0
    });
    let ok = certs.iter().all(BoundCert::is_verified) && depth <= 30 && ladder && elapsed < Duration::from_secs(10);
    verdict(
        3,
        "T(4k1-2)L < sinc < T(4k2)U on (0, pi/2), k1, k2 in 1..3",
        ok,
        &format!(
            "{} certificates, max depth {depth}, endpoint ladder {ladder}, {elapsed:?} {}",
            certs.len(),
            summary(&certs)
        ),
    );
}

#[test]
fn criterion_04_polynomial_obligations() {
    let mut ok = true;
    let mut detail = Vec::new();
    for p in ["(1/120 + 8/pi^5)*x^4 - x^6/5040", "(-16/pi^4 + 40/pi^5)*x^4 - 5/(2*pi) + 1"] {
        let start = Instant::now();
        let poly = LaurentPoly::parse(p, Var::X).unwrap();
        let cert = prove_poly_positive(&poly, c("0"), c("pi/2"), &ProveOptions::default()).unwrap();
        let elapsed = start.elapsed();
        ok &= cert.is_verified() && elapsed < Duration::from_secs(1);
        detail.push(format!("{p}: {} in {elapsed:?}", cert.status));
    }
    verdict(4, "both polynomial obligations are positive on (0, pi/2)", ok, &detail.join("; "));
}

#[test]
fn criterion_05_steckin_remainder_chains_and_limit() {
    let sf = || f(FunctionId::SteckinF);
    let t = Var::T;
    let certs = vec![
        less_in(b("Q1"), b("F1L"), t, "0", "pi/2"),
        less_in(b("F1L"), sf(), t, "0", "pi/2"),
        less_in(sf(), b("F1U"), t, "0", "pi/2"),
        less_in(b("F1L"), b("F3L"), t, "0", "pi/2"),
        less_in(b("F3L"), sf(), t, "0", "pi/2"),
        less_in(sf(), b("F3U"), t, "0", "pi/2"),
        less_in(b("F3U"), b("F1U"), t, "0", "pi/2"),
    ];
    let chains = certs.iter().all(BoundCert::is_verified);
    let same = catalog::named("F1U").unwrap().body == catalog::named("R1").unwrap().body;
    let residual = enclose_at(&sf(), Var::T, 1e-5).unwrap() - c("2/pi").enclose();
    let limit = residual.mag() < 1e-9;
    verdict(
        5,
        "Q1 < F1L < f < F1U = R1, F1L < F3L < f < F3U < F1U, |f(pi/2 - 1e-5) - 2/pi| < 1e-9",
        chains && same && limit,
        &format!(
            "chains {chains}{}, F1U == R1 {same}, residual at 1e-5 in {residual}",
            if chains { String::new() } else { format!(" ({})", summary(&certs)) }
        ),
    );
}

#[test]
fn criterion_06_steckin_series_partial_sums() {
    let mut certs = Vec::new();
    for l in 1..=3 {
        certs.push(less(b(&format!("T{}L(f)", 2 * l)), f(FunctionId::SteckinF), "0", "1"));
        certs.push(less(f(FunctionId::SteckinF), b(&format!("T{}U(f)", 2 * l - 1)), "0", "1"));
    }
    let lower = catalog::named("T2L(f)").unwrap();
    let upper = catalog::named("T1U(f)").unwrap();
    let a1 = pi_sum(&[(0, 1, 1), (-2, -4, 1)]);
    let a2 = pi_sum(&[(-3, -8, 1)]);
    let coeffs = lower.degree() == 2
        && lower.coeff(0).is_zero()
        && lower.coeff(1) == a1
        && lower.coeff(2) == a2
        && upper.degree() == 1
        && upper.coeff(0).is_zero()
        && upper.coeff(1) == a1;
    let ok = certs.iter().all(BoundCert::is_verified) && coeffs;
    verdict(
        6,
        "T(2l)L(f) < f < T(2l-1)U(f) on (0, 1) for l = 1..3, l = 1 coefficients exact",
        ok,
        &format!("coefficients {coeffs} {}", summary(&certs)),
    );
}

#[test]
fn criterion_07_mixed_trig_obligations() {
    let start = Instant::now();
    let mut certs = Vec::new();
    for (name, sign) in [("T4L(psi)", ClaimedSign::Positive), ("T5U(psi)", ClaimedSign::Negative)] {
        let e = becker_stark_mixed(&catalog::named(name).unwrap().body.poly);
        certs.push(mixed_trig_sign(&e, c("0"), c("pi/2"), sign, &ProveOptions::default()).unwrap());
    }
    let elapsed = start.elapsed();
    let ok =
        certs.iter().all(BoundCert::is_verified) && MAX_TRUNCATION_DEGREE <= 19 && elapsed < Duration::from_secs(30);
    verdict(
        7,
        "mixed-trig f > 0 and g < 0 on (0, pi/2)",
        ok,
        &format!("truncation cap {MAX_TRUNCATION_DEGREE}, {elapsed:?} {}", summary(&certs)),
    );
}

#[test]
fn criterion_08_becker_stark_upper_and_two_point_lower() {
    let phi = || f(FunctionId::BeckerStarkPhi);
    let certs = [less(phi(), b("T3U(phi)"), "0", "1.371"), less(b("WD2(phi,1.371)"), phi(), "0", "1.371")];
    verdict(
        8,
        "phi < T3U(phi) and WD2(phi, 1.371) < phi on (0, 1.371)",
        certs.iter().all(BoundCert::is_verified),
        &summary(&certs),
    );
}

fn abs(e: &PiExpr) -> PiExpr {
    if e.sign() == Sign::Negative {
        -e
    } else {
        e.clone()
    }
}

#[test]
fn criterion_09_sign_ledger() {
    let alpha: Vec<PiExpr> = (1..=200).map(steckin_alpha).collect();
    let parity = alpha.iter().enumerate().all(|(i, a)| {
        let k = i + 1;
        a.sign() == if k % 2 == 0 { Sign::Negative } else { Sign::Positive }
    });
    let decreasing = alpha.windows(2).all(|w| (&abs(&w[0]) - &abs(&w[1])).sign() == Sign::Positive);
    let c_negative = (2..=100).all(|k| becker_stark_C(k).sign() == Sign::Negative);
    let c1 = becker_stark_C(1);
    let exception = c1 == PiExpr::monomial(BigRational::from_integer(1.into()), 2) && c1.sign() == Sign::Positive;
    println!("note: C_1 = {c1} > 0 is the exception to the negative sign pattern");
    verdict(
        9,
        "alpha parity and decay for k <= 200, C_k < 0 for 2 <= k <= 100, C_1 = pi^2 > 0",
        parity && decreasing && c_negative && exception,
        &format!("parity {parity}, decreasing {decreasing}, C_k negative {c_negative}, C_1 exception {exception}"),
    );
}

#[test]
fn criterion_10_crossing_brackets() {
    let hp = std::f64::consts::FRAC_PI_2;
    let psi = || f(FunctionId::Psi);
    let phi = || f(FunctionId::BeckerStarkPhi);
    let cases = [
        ("S5L < psi", b("S5L"), psi(), Var::T, 0.373),
        ("psi < S5U", psi(), b("S5U"), Var::T, 0.301),
        ("phi < S6U", phi(), b("S6U"), Var::X, 1.371),
    ];
    let mut ok = true;
    let mut detail = Vec::new();
    for (name, lhs, rhs, var, printed) in cases {
        let brackets = find_crossing(&lhs, &rhs, var, (0.0, hp), 1000, 1e-6).unwrap();
        let in_x: Vec<(f64, f64)> =
            brackets.iter().map(|b| if var == Var::T { (hp - b.hi, hp - b.lo) } else { (b.lo, b.hi) }).collect();
        let hit = in_x.iter().any(|&(lo, hi)| lo <= printed + 1e-3 && hi >= printed - 1e-3);
        ok &= hit;
        detail.push(format!("{name}: brackets {in_x:?} vs {printed}"));
    }
    verdict(10, "sign-change brackets within 0.001 of 0.373, 0.301 and 1.371", ok, &detail.join("; "));
}

#[test]
fn criterion_11_report_is_deterministic() {
    let cfg = RunConfig::default();
    let first = run_all(None, &cfg).unwrap().to_json();
    let second = run_all(None, &cfg).unwrap().to_json();
    verdict(
        11,
        "two full suite runs give byte-identical JSON",
        first == second && !first.is_empty(),
        &format!("{} bytes", first.len()),
    );
}

#[test]
fn interval_sanity_for_the_limit_check() {
    // the limit check above compares against an enclosure of 2/π
    let two_over_pi = c("2/pi").enclose();
    assert!(two_over_pi.contains(0.636_619_772_367_581_3));
    assert!(two_over_pi.width() < 1e-15);
    assert_eq!(Interval::point(1.0).mag(), 1.0);
}
