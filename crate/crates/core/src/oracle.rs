//! Independent brute-force verifiers for every closed-form fast path: Pell
//! solutions by direct scan, torsion counts by literal enumeration, the
//! valuation identity by factorization, and grid sweeps over rank-function
//! profiles. None of these call the fast path they check.

use crate::crf::CrfTriple;
use crate::exact::{half_minus, half_plus, perfect_square, QuadVal, Rat};
use crate::lattice;
use crate::pell::{self};
use crate::semihomog;
use crate::thresholds;
use num::{BigInt, Integer, One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

/// Default enumeration budget, in group elements.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("enumeration needs {needed} group elements, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
}

/// All positive solutions of `x^2 - n y^2 = 1` with `y <= y_max`, found by
/// scanning `y` and testing `1 + n y^2` for squareness. Increasing in `y`.
pub fn pell_brute(n: u64, y_max: u64) -> Vec<(BigInt, BigInt)> {
    let mut out = Vec::new();
    let fits_u128 = (n as u128)
        .checked_mul((y_max as u128).checked_mul(y_max as u128).unwrap_or(u128::MAX))
        .is_some();
    if fits_u128 {
        for y in 1..=y_max {
            let v = 1 + (n as u128) * (y as u128) * (y as u128);
            let s = v.isqrt();
            if s * s == v {
                out.push((BigInt::from(s), BigInt::from(y)));
            }
        }
    } else {
        let nb = BigInt::from(n);
        for y in 1..=y_max {
            let yb = BigInt::from(y);
            let v = BigInt::one() + &nb * &yb * &yb;
            if let Some(s) = perfect_square(&v) {
                out.push((s, yb));
            }
        }
    }
    out
}

/// Literally counts the elements of `Z/a ⊕ Z/(a d)` killed by `b`, by a
/// full nested scan. The closed form under test never enters.
pub fn torsion_enumerate(a: u64, b: u64, d: u64, budget: u64) -> Result<u64, OracleError> {
    let ad = (a as u128) * (d as u128);
    let needed = (a as u128) * ad;
    if needed > budget as u128 {
        return Err(OracleError::BudgetExceeded { needed, budget });
    }
    let ad = ad as u64;
    let mut count = 0u64;
    for i in 0..a {
        for j in 0..ad {
            if (b as u128 * i as u128) % a as u128 == 0
                && (b as u128 * j as u128) % ad as u128 == 0
            {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Trial-division factorization, smallest primes first.
pub fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    assert!(n.is_positive());
    let mut m = n.clone();
    let mut out = Vec::new();
    let mut f = BigInt::from(2);
    while &(&f * &f) <= &m {
        if m.is_multiple_of(&f) {
            let mut e = 0u32;
            while m.is_multiple_of(&f) {
                m /= &f;
                e += 1;
            }
            out.push((f.clone(), e));
        }
        f += if f == BigInt::from(2) { 1 } else { 2 };
    }
    if !m.is_one() {
        out.push((m, 1));
    }
    out
}

fn p_adic_valuation(n: &BigInt, p: &BigInt) -> u32 {
    let mut m = n.clone();
    let mut v = 0;
    while !m.is_zero() && m.is_multiple_of(p) {
        m /= p;
        v += 1;
    }
    v
}

/// Checks `v_p(gcd((x0±1)/2, y0)) + v_p(gcd((x0±1)/2, d y0)) =
/// v_p((x0±1)/2)` for every prime `p` and both signs. `d` must be nonsquare.
pub fn valuation_check(d: u64) -> bool {
    let sol = pell::fundamental_solution(4 * d).expect("valuation_check needs nonsquare d");
    let dy0 = BigInt::from(d) * &sol.y;
    for half in [half_plus(&sol.x), half_minus(&sol.x)] {
        if half.is_one() {
            continue; // no prime divisors: vacuous
        }
        let a_gcd = half.gcd(&sol.y);
        let b_gcd = half.gcd(&dy0);
        for (p, e) in factorize(&half) {
            if p_adic_valuation(&a_gcd, &p) + p_adic_valuation(&b_gcd, &p) != e {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ViolationKind {
    AlternatingSum,
    Negative { component: usize },
    Monotonicity,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepViolation {
    #[serde(with = "crate::exact::rat_string")]
    pub x: Rat,
    pub kind: ViolationKind,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub points: u64,
    pub violations: Vec<SweepViolation>,
}

impl SweepReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluates a profile triple on the rational grid `0, step, 2·step, ...`
/// up to `x_max` and records every failure of the alternating-sum identity,
/// non-negativity, or `h^0` monotonicity. Violations are report entries,
/// not errors.
pub fn crf_consistency_sweep(triple: &CrfTriple, step: &Rat, x_max: &Rat) -> SweepReport {
    assert!(step.is_positive(), "grid step must be positive");
    let mut report = SweepReport {
        points: 0,
        violations: Vec::new(),
    };
    let mut x = Rat::zero();
    let mut prev_h0: Option<Rat> = None;
    while &x <= x_max {
        let h0 = triple.h0.eval(&x).expect("grid point in domain");
        let h1 = triple.h1.eval(&x).expect("grid point in domain");
        let h2 = triple.h2.eval(&x).expect("grid point in domain");
        let chi = triple.chi.eval_rat(&x);
        report.points += 1;
        if &h0 - &h1 + &h2 != chi {
            report.violations.push(SweepViolation {
                x: x.clone(),
                kind: ViolationKind::AlternatingSum,
                detail: format!("h0 - h1 + h2 = {} but chi = {}", &h0 - &h1 + &h2, chi),
            });
        }
        for (component, value) in [(0usize, &h0), (1, &h1), (2, &h2)] {
            if value.is_negative() {
                report.violations.push(SweepViolation {
                    x: x.clone(),
                    kind: ViolationKind::Negative { component },
                    detail: format!("h{component} = {value}"),
                });
            }
        }
        if let Some(prev) = &prev_h0 {
            if &h0 < prev {
                report.violations.push(SweepViolation {
                    x: x.clone(),
                    kind: ViolationKind::Monotonicity,
                    detail: format!("h0 dropped from {prev} to {h0}"),
                });
            }
        }
        prev_h0 = Some(h0);
        x += step;
    }
    report
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

fn report(name: &str, pass: bool, detail: String) -> CheckReport {
    CheckReport {
        check: name.to_string(),
        pass,
        detail,
    }
}

fn nonsquare_up_to(limit: u64) -> impl Iterator<Item = u64> {
    (2..=limit).filter(|d| perfect_square(&BigInt::from(*d)).is_none())
}

/// Runs the full oracle suite against the fast paths: one report per check.
/// `budget` caps enumeration sizes (group elements, brute-force scan range).
pub fn run_verification(d_max: u64, budget: u64) -> Vec<CheckReport> {
    let mut out = Vec::new();

    // Pell solver against the brute-force scan. Fundamental solutions can
    // exceed any feasible scan range, so equality is checked where the
    // minimal y fits the budget and emptiness-below-budget elsewhere.
    {
        use num::ToPrimitive;
        let y_cap = (budget / 10).clamp(10_000, 1_000_000);
        let mut fail = String::new();
        let mut full = 0u64;
        let mut capped = 0u64;
        for d in nonsquare_up_to(d_max) {
            let sol = pell::fundamental_solution(4 * d).unwrap();
            match sol.y.to_u64() {
                Some(y0) if y0 <= y_cap => {
                    full += 1;
                    let brute = pell_brute(4 * d, y0);
                    if brute.first() != Some(&(sol.x.clone(), sol.y.clone())) {
                        fail = format!("d = {d}: brute-force minimum differs");
                        break;
                    }
                }
                _ => {
                    capped += 1;
                    if !pell_brute(4 * d, y_cap).is_empty() {
                        fail = format!("d = {d}: a solution below the scan cap exists");
                        break;
                    }
                }
            }
        }
        let pinned = [(2u64, 3i64, 1i64), (3, 7, 2), (5, 9, 2), (6, 5, 1), (7, 127, 24)];
        for (d, x, y) in pinned {
            if d > d_max {
                continue;
            }
            let sol = pell::fundamental_solution(4 * d).unwrap();
            if (sol.x, sol.y) != (BigInt::from(x), BigInt::from(y)) {
                fail = format!("pinned fundamental solution mismatch at d = {d}");
            }
        }
        out.push(report(
            "pell-vs-brute",
            fail.is_empty(),
            if fail.is_empty() {
                format!("{full} full scans, {capped} capped scans (cap {y_cap})")
            } else {
                fail
            },
        ));
    }

    // Pell structural identities.
    {
        let mut fail = String::new();
        for d in nonsquare_up_to(d_max) {
            let sol = pell::fundamental_solution(4 * d).unwrap();
            let ok = sol.verify()
                && sol.x.is_odd()
                && half_minus(&sol.x) * (half_plus(&sol.x)) == BigInt::from(d) * &sol.y * &sol.y;
            if !ok {
                fail = format!("identity failure at d = {d}");
                break;
            }
        }
        out.push(report(
            "pell-identities",
            fail.is_empty(),
            if fail.is_empty() {
                format!("x0 odd and (x0-1)/2·(x0+1)/2 = d·y0^2 for d <= {d_max}")
            } else {
                fail
            },
        ));
    }

    // Torsion closed form against literal enumeration.
    {
        let mut fail = String::new();
        'outer: for d in 1..=10u64 {
            for a in 1..=12u64 {
                for b in 1..=12u64 {
                    let fast =
                        semihomog::torsion_count_u_raw(&BigInt::from(a), &BigInt::from(b), d)
                            .unwrap();
                    match torsion_enumerate(a, b, d, budget) {
                        Ok(slow) => {
                            if fast != BigInt::from(slow) {
                                fail = format!("(a,b,d) = ({a},{b},{d}): {fast} vs {slow}");
                                break 'outer;
                            }
                        }
                        Err(e) => {
                            fail = format!("(a,b,d) = ({a},{b},{d}): {e}");
                            break 'outer;
                        }
                    }
                }
            }
        }
        out.push(report(
            "torsion-vs-enumeration",
            fail.is_empty(),
            if fail.is_empty() {
                "a, b <= 12, d <= 10".to_string()
            } else {
                fail
            },
        ));
    }

    // Valuation identity behind the torsion count.
    {
        let limit = d_max.min(100);
        let bad: Vec<u64> = nonsquare_up_to(limit).filter(|d| !valuation_check(*d)).collect();
        out.push(report(
            "valuation-claim",
            bad.is_empty(),
            if bad.is_empty() {
                format!("all nonsquare d <= {limit}")
            } else {
                format!("failing d: {bad:?}")
            },
        ));
    }

    // Chern vectors of the resolving bundles.
    {
        let limit = d_max.min(100);
        let mut fail = String::new();
        for d in nonsquare_up_to(limit) {
            let sol = pell::fundamental_solution(4 * d).unwrap();
            let half_plus = half_plus(&sol.x);
            let half_minus = half_minus(&sol.x);
            let v_f = semihomog::chern_vector_raw(&sol.y, &half_plus, d).unwrap();
            let v_e = semihomog::chern_vector_raw(&sol.y, &half_minus, d).unwrap();
            let ok = v_f.rank == half_plus
                && v_f.ch2 == Rat::from_integer(half_minus.clone())
                && v_e.rank == half_minus
                && v_e.ch2 == Rat::from_integer(half_plus.clone())
                && &v_f.rank - &v_e.rank == BigInt::one()
                && v_f.c1[0] == v_e.c1[0]
                && &v_e.ch2 - &v_f.ch2 == Rat::one();
            if !ok {
                fail = format!("vector mismatch at d = {d}");
                break;
            }
            let gram = [[2 * d as i64, 0], [0, -2]];
            let mut e_neg = v_e.clone();
            let mut f_neg = v_f.clone();
            e_neg.c1[0] = -e_neg.c1[0].clone();
            f_neg.c1[0] = -f_neg.c1[0].clone();
            if semihomog::hom_euler(&e_neg, &f_neg, &gram) != BigInt::one() {
                fail = format!("hom Euler characteristic != 1 at d = {d}");
                break;
            }
        }
        out.push(report(
            "chern-vectors",
            fail.is_empty(),
            if fail.is_empty() {
                format!("lemma vectors and χ(E^∨⊗F) = 1 for nonsquare d <= {limit}")
            } else {
                fail
            },
        ));
    }

    // Family closed forms against the principal threshold.
    {
        let mut fail = String::new();
        let mut hits = 0;
        for d in 2..=500u64 {
            for m in thresholds::family_matches(d) {
                hits += 1;
                if QuadVal::from_rat(m.beta.clone()) != thresholds::beta_principal(d).unwrap() {
                    fail = format!("family {:?} disagrees at d = {d}", m.kind);
                }
            }
        }
        out.push(report(
            "family-formulas",
            fail.is_empty(),
            if fail.is_empty() {
                format!("{hits} family matches for d <= 500")
            } else {
                fail
            },
        ));
    }

    // Rank-function profiles: identity sweeps plus fault-injection.
    {
        let mut fail = String::new();
        for d in [2u64, 3, 5, 6, 7, 10] {
            let t = crate::crf::crf_ideal_l(d).unwrap();
            let sweep = crf_consistency_sweep(&t, &Rat::new(1.into(), 50.into()), &Rat::from_integer(2.into()));
            if !sweep.pass() {
                fail = format!("ideal_l sweep failed at d = {d}");
                break;
            }
        }
        if fail.is_empty() {
            let pair = thresholds::PolarizedPair::new(4, 12, 34).unwrap();
            let t = crate::crf::crf_ideal_n(&pair).unwrap();
            let sweep = crf_consistency_sweep(&t, &Rat::new(1.into(), 100.into()), &Rat::one());
            if !sweep.pass() {
                fail = "ideal_n sweep failed for (4,12,34)".to_string();
            } else {
                // a corrupted piece must be detected
                let mut corrupted = t.clone();
                corrupted.h0 = corrupted.h0.corrupted_constant(2, &Rat::one());
                let sweep = crf_consistency_sweep(&corrupted, &Rat::new(1.into(), 10.into()), &Rat::one());
                if sweep.pass() {
                    fail = "fault injection escaped the sweep".to_string();
                }
            }
        }
        out.push(report(
            "crf-sweeps",
            fail.is_empty(),
            if fail.is_empty() {
                "identity sweeps pass; injected faults are caught".to_string()
            } else {
                fail
            },
        ));
    }

    // Threshold invariants.
    {
        let mut fail = String::new();
        for d in nonsquare_up_to(d_max) {
            let beta = thresholds::beta_principal(d).unwrap();
            let beta0 = thresholds::beta0_principal(d).unwrap();
            let product = (&beta * &beta0).as_rat().cloned();
            if product != Some(Rat::new(BigInt::one(), BigInt::from(d))) {
                fail = format!("β·β⁰ != 1/d at d = {d}");
                break;
            }
            let inv_root = QuadVal::new(
                Rat::zero(),
                Rat::new(BigInt::one(), BigInt::from(d)),
                BigInt::from(d),
            );
            if !(beta0 < inv_root && inv_root < beta) {
                fail = format!("β⁰ < 1/sqrt(d) < β fails at d = {d}");
                break;
            }
        }
        if fail.is_empty() {
            for (dd, bound) in [(2u64, 40u64), (3, 60)] {
                for hit in lattice::search_irrational(dd, bound, true).unwrap() {
                    let pair = thresholds::PolarizedPair::new(hit.l_sq, hit.ln, hit.n_sq).unwrap();
                    let disc = pair.disc();
                    let product = (&hit.result.beta * &hit.result.beta0).as_rat().cloned();
                    if product != Some(Rat::new(BigInt::from(2), BigInt::from(hit.n_sq)))
                        || hit.result.rational != perfect_square(&disc).is_some()
                    {
                        fail = format!("pair invariant fails at ({}, {}, {})", hit.l_sq, hit.ln, hit.n_sq);
                    }
                }
            }
        }
        out.push(report(
            "threshold-invariants",
            fail.is_empty(),
            if fail.is_empty() {
                "β·β⁰ products, bracketing, and rationality flags".to_string()
            } else {
                fail
            },
        ));
    }

    // Split-surface closed form against the pair formula.
    {
        let mut fail = String::new();
        'product: for a in 1..=20u64 {
            for b in 1..=20u64 {
                let closed = thresholds::product_surface_beta(a, b);
                if b <= 2 * a && a <= 2 * b {
                    let pair = thresholds::PolarizedPair::new(4, 2 * (a + b), 4 * a * b).unwrap();
                    let via = thresholds::beta_pair(&pair).unwrap();
                    if via.beta.as_rat() != Some(&closed) {
                        fail = format!("(a,b) = ({a},{b})");
                        break 'product;
                    }
                }
            }
        }
        out.push(report(
            "product-surface",
            fail.is_empty(),
            if fail.is_empty() {
                "closed form matches the pair formula on the overlap, a,b <= 20".to_string()
            } else {
                fail
            },
        ));
    }

    // Destabilization candidates and the gcd decomposition.
    {
        let mut fail = String::new();
        if !lattice::destab_candidates(2).unwrap().is_empty() {
            fail = "d = 2 must have no candidates".to_string();
        }
        for d in [3u64, 5, 6] {
            let list = lattice::destab_candidates(d).unwrap();
            if !(list.len() == 1 && list[0].trivial) {
                fail = format!("d = {d} must have exactly the trivial candidate");
            }
        }
        let d7 = lattice::destab_candidates(7).unwrap();
        if !d7.iter().any(|c| c.r == 29 && c.lh == 154) {
            fail = "d = 7 must contain the (29, 154) witness".to_string();
        }
        if fail.is_empty() {
            for d in nonsquare_up_to(d_max.min(200)) {
                if lattice::trivial_solution_decomposition(d).is_err() {
                    fail = format!("decomposition failed at d = {d}");
                    break;
                }
            }
        }
        out.push(report(
            "destabilization",
            fail.is_empty(),
            if fail.is_empty() {
                "candidate tables for d = 2,3,5,6,7; decompositions to d <= 200".to_string()
            } else {
                fail
            },
        ));
    }

    // The (1,17) lattice certificate.
    {
        let cert = lattice::realize_corollary_lattice();
        let expected = QuadVal::new(Rat::new(6.into(), 17.into()), Rat::new((-1).into(), 17.into()), BigInt::from(2));
        let pass = cert.ns_gram == [[2, 0], [0, -4]]
            && (cert.l_sq, cert.ln, cert.n_sq) == (4, 12, 34)
            && cert.basis_det.abs() == 1
            && cert.threshold.beta == expected
            && !cert.threshold.rational;
        out.push(report(
            "corollary-lattice",
            pass,
            "gram [[2,0],[0,-4]], data (4,12,34), unimodular basis, irrational threshold".to_string(),
        ));
    }

    // The subadditivity counterexample.
    {
        let rep = thresholds::subadditivity_check(2, 3, -4).unwrap();
        let pass = rep.sum.as_rat() == Some(&Rat::from_integer(8.into()))
            && rep.total_inv.as_rat() == Some(&Rat::from_integer(6.into()))
            && !rep.subadditive;
        out.push(report(
            "subadditivity-counterexample",
            pass,
            format!("{} + {} vs {}", rep.beta1_inv, rep.beta2_inv, rep.total_inv),
        ));
    }

    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crf::crf_ideal_l;
    use crate::exact::{big, rat};

    #[test]
    fn pell_brute_examples() {
        assert_eq!(
            pell_brute(8, 10),
            vec![(big(3), big(1)), (big(17), big(6))]
        );
        assert_eq!(pell_brute(12, 2), vec![(big(7), big(2))]);
        assert!(pell_brute(8, 0).is_empty());
    }

    #[test]
    fn torsion_enumeration_examples() {
        // elements of Z/2 ⊕ Z/6 killed by 4
        assert_eq!(torsion_enumerate(2, 4, 3, DEFAULT_BUDGET).unwrap(), 4);
        assert_eq!(torsion_enumerate(1, 1, 7, DEFAULT_BUDGET).unwrap(), 1);
        // (y0, (x0+1)/2) for d = 3
        assert_eq!(torsion_enumerate(2, 4, 3, DEFAULT_BUDGET).unwrap(), 4);
        assert!(matches!(
            torsion_enumerate(1000, 2, 1000, 1000),
            Err(OracleError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn valuation_check_examples() {
        assert!(valuation_check(3));
        assert!(valuation_check(2));
        for d in nonsquare_up_to(100) {
            assert!(valuation_check(d), "d = {d}");
        }
    }

    #[test]
    fn factorize_small() {
        assert_eq!(factorize(&big(12)), vec![(big(2), 2), (big(3), 1)]);
        assert_eq!(factorize(&big(97)), vec![(big(97), 1)]);
    }

    #[test]
    fn sweep_clean_and_corrupted() {
        let t = crf_ideal_l(3).unwrap();
        let clean = crf_consistency_sweep(&t, &rat(1, 50), &rat(2, 1));
        assert!(clean.pass(), "violations: {:?}", clean.violations);
        let mut corrupted = t.clone();
        corrupted.h0 = corrupted.h0.corrupted_constant(1, &Rat::one());
        let dirty = crf_consistency_sweep(&corrupted, &rat(1, 50), &rat(2, 1));
        assert!(!dirty.pass());
        assert!(dirty
            .violations
            .iter()
            .any(|v| v.kind == ViolationKind::AlternatingSum));
    }

    #[test]
    fn verification_suite_passes() {
        let reports = run_verification(30, 200_000);
        for r in &reports {
            assert!(r.pass, "{}: {}", r.check, r.detail);
        }
        assert!(reports.len() >= 10);
    }
}
