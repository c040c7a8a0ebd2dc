//! Basepoint-freeness thresholds `β(X,n)` and `β⁰(X,n)` of a polarized
//! abelian surface of type `(1,d)`.
//!
//! For nonsquare `d` the principal thresholds are `2y0/(x0-1)` and
//! `2y0/(x0+1)` in terms of the fundamental solution of `x^2 - 4d y^2 = 1`;
//! a second polarization `n` scales them by the quadratic-irrational factor
//! `((l·n) ∓ sqrt((l·n)^2 - (l^2)(n^2)))/(n^2)`, valid under the hypothesis
//! `x0^2 (n^2) >= 2 y0^2 (l·n)^2`. Everything here is exact; the rationality
//! of a threshold is decided by the squarefree normal form, never numerically.

use crate::exact::{perfect_square, QuadVal, Rat};
use crate::pell::{fundamental_solution, nth_solution, pell_for_type, PellError, PellSolution, TypePellData};
use crate::semihomog::{torsion_count_u_raw, Slope};
use num::{BigInt, One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PairError {
    #[error("{which} must be positive")]
    NonPositive { which: &'static str },
    #[error("self-intersection {which} = {value} must be even")]
    OddSelfIntersection { which: &'static str, value: u64 },
    #[error("Hodge index violated: (l·n)^2 = {ln_sq} < (l^2)(n^2) = {product}")]
    HodgeViolation { ln_sq: u128, product: u128 },
    #[error(transparent)]
    Pell(#[from] PellError),
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ThresholdError {
    #[error("hypothesis x0^2 (n^2) >= 2 y0^2 (l·n)^2 fails by {deficit}")]
    HypothesisFailed {
        deficit: BigInt,
        /// For the symmetric-split comparison: the smallest multiplier that
        /// satisfies the hypothesis.
        minimal_m: Option<u64>,
    },
    #[error("d = {d} is a perfect square; only the proportional case n = l is defined")]
    PerfectSquareType { d: u64 },
    #[error("nu = {nu} must be a rational above 1/sqrt({d})")]
    NuTooSmall { nu: Rat, d: u64 },
    #[error("curve class must have negative even self-intersection, got {c_sq}")]
    InvalidCurveClass { c_sq: i64 },
    #[error(transparent)]
    Pair(#[from] PairError),
}

/// Intersection data of two ample classes `l`, `n` with the Pell data of
/// `l` attached. `l` has type `(1,d)` with `l^2 = 2d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarizedPair {
    l_sq: u64,
    ln: u64,
    n_sq: u64,
    pell: TypePellData,
}

impl PolarizedPair {
    pub fn new(l_sq: u64, ln: u64, n_sq: u64) -> Result<Self, PairError> {
        for (which, v) in [("(l^2)", l_sq), ("(l·n)", ln), ("(n^2)", n_sq)] {
            if v == 0 {
                return Err(PairError::NonPositive { which });
            }
        }
        for (which, v) in [("(l^2)", l_sq), ("(n^2)", n_sq)] {
            if v % 2 != 0 {
                return Err(PairError::OddSelfIntersection { which, value: v });
            }
        }
        let ln_sq = (ln as u128) * (ln as u128);
        let product = (l_sq as u128) * (n_sq as u128);
        if ln_sq < product {
            return Err(PairError::HodgeViolation { ln_sq, product });
        }
        let pell = pell_for_type(l_sq / 2)?;
        Ok(PolarizedPair {
            l_sq,
            ln,
            n_sq,
            pell,
        })
    }

    /// The pair `(l, l)`.
    pub fn principal(d: u64) -> Result<Self, PairError> {
        Self::new(2 * d, 2 * d, 2 * d)
    }

    pub fn l_sq(&self) -> u64 {
        self.l_sq
    }

    pub fn ln(&self) -> u64 {
        self.ln
    }

    pub fn n_sq(&self) -> u64 {
        self.n_sq
    }

    pub fn d(&self) -> u64 {
        self.l_sq / 2
    }

    pub fn pell(&self) -> &TypePellData {
        &self.pell
    }

    /// `(l·n)^2 - (l^2)(n^2) >= 0`.
    pub fn disc(&self) -> BigInt {
        BigInt::from(self.ln) * BigInt::from(self.ln)
            - BigInt::from(self.l_sq) * BigInt::from(self.n_sq)
    }

    pub fn is_proportional(&self) -> bool {
        self.disc().is_zero()
    }

    pub fn is_principal(&self) -> bool {
        self.l_sq == self.ln && self.ln == self.n_sq
    }

    /// `x0^2 (n^2) - 2 y0^2 (l·n)^2`; `None` on the square branch.
    pub fn hypothesis_margin(&self) -> Option<BigInt> {
        let sol = self.pell.pell()?;
        Some(
            &sol.x * &sol.x * BigInt::from(self.n_sq)
                - BigInt::from(2) * &sol.y * &sol.y * BigInt::from(self.ln) * BigInt::from(self.ln),
        )
    }
}

/// The thresholds of a pair, with the exact hypothesis margin and the
/// (never selected) second-minimal Pell candidate for reference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdResult {
    pub beta: QuadVal,
    pub beta0: QuadVal,
    pub rational: bool,
    /// `x0^2 (n^2) - 2 y0^2 (l·n)^2`; `None` on the perfect-square branch.
    pub hypothesis_margin: Option<BigInt>,
    /// The scaling of the second-minimal solution, `2y1/(x1-1) ·
    /// ((l·n) - sqrt(disc))/(n^2)`. Reported for reference only; the
    /// threshold always comes from the fundamental solution.
    pub second_candidate: Option<QuadVal>,
}

impl Serialize for ThresholdResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ThresholdResult", 5)?;
        st.serialize_field("beta", &self.beta)?;
        st.serialize_field("beta0", &self.beta0)?;
        st.serialize_field("rational", &self.rational)?;
        st.serialize_field(
            "hypothesis_margin",
            &self.hypothesis_margin.as_ref().map(|m| m.to_string()),
        )?;
        st.serialize_field("second_candidate", &self.second_candidate)?;
        st.end()
    }
}

fn rat_of(n: &BigInt) -> Rat {
    Rat::from_integer(n.clone())
}

/// `2y/(x-1)` for a Pell solution.
fn principal_from_solution(sol: &PellSolution) -> Rat {
    Rat::new(BigInt::from(2) * &sol.y, &sol.x - 1)
}

/// `β(X,l)`: `2y0/(x0-1)` for nonsquare `d`, `1/sqrt(d)` (rational) for
/// square `d`.
pub fn beta_principal(d: u64) -> Result<QuadVal, PellError> {
    Ok(match pell_for_type(d)? {
        TypePellData::Square(m) => m.beta(),
        TypePellData::Pell(sol) => QuadVal::from_rat(principal_from_solution(&sol)),
    })
}

/// `β⁰(X,l)`: `2y0/(x0+1)` for nonsquare `d`; on the square branch the
/// product identity `β·β⁰ = 1/d` forces `1/sqrt(d)` as well.
pub fn beta0_principal(d: u64) -> Result<QuadVal, PellError> {
    Ok(match pell_for_type(d)? {
        TypePellData::Square(m) => m.beta(),
        TypePellData::Pell(sol) => {
            QuadVal::from_rat(Rat::new(BigInt::from(2) * &sol.y, &sol.x + 1))
        }
    })
}

/// One evaluand of the lower-bound supremum: `(1 + r(ν)) / (d ν r(ν))`,
/// where `r(ν)` is the rank of the semihomogeneous bundle of slope `ν`
/// with respect to the dual polarization (also of type `(1,d)`).
/// Admissible `ν` are rationals strictly above `1/sqrt(d)`.
pub fn lower_bound_at(d: u64, nu: &Rat) -> Result<Rat, ThresholdError> {
    match pell_for_type(d).map_err(PairError::from)? {
        TypePellData::Square(_) => return Err(ThresholdError::PerfectSquareType { d }),
        TypePellData::Pell(_) => {}
    }
    // ν > 1/sqrt(d)  ⇔  d·a^2 > b^2 for ν = a/b > 0
    let admissible = nu.is_positive()
        && BigInt::from(d) * nu.numer() * nu.numer() > nu.denom() * nu.denom();
    if !admissible {
        return Err(ThresholdError::NuTooSmall { nu: nu.clone(), d });
    }
    let slope = Slope::from_rat(nu);
    let u = torsion_count_u_raw(slope.a(), slope.b(), d).expect("nonzero ν");
    let rank = Rat::new(slope.b() * slope.b(), u);
    Ok((Rat::one() + &rank) / (rat_of(&BigInt::from(d)) * nu * rank))
}

fn scaled_threshold(factor: &Rat, ln: u64, n_sq: u64, disc: &BigInt, plus: bool) -> QuadVal {
    let n_sq_rat = rat_of(&BigInt::from(n_sq));
    let p = factor * rat_of(&BigInt::from(ln)) / &n_sq_rat;
    let q = factor / n_sq_rat;
    QuadVal::new(p, if plus { q } else { -q }, disc.clone())
}

/// `β(X,n)` and `β⁰(X,n)` under the hypothesis
/// `x0^2 (n^2) >= 2 y0^2 (l·n)^2`.
pub fn beta_pair(pair: &PolarizedPair) -> Result<ThresholdResult, ThresholdError> {
    match pair.pell() {
        TypePellData::Square(marker) => {
            if pair.is_principal() {
                let beta = marker.beta();
                Ok(ThresholdResult {
                    beta0: beta.clone(),
                    beta,
                    rational: true,
                    hypothesis_margin: None,
                    second_candidate: None,
                })
            } else {
                Err(ThresholdError::PerfectSquareType { d: pair.d() })
            }
        }
        TypePellData::Pell(sol) => {
            let margin = pair.hypothesis_margin().expect("pell branch");
            if margin.is_negative() {
                return Err(ThresholdError::HypothesisFailed {
                    deficit: -margin,
                    minimal_m: None,
                });
            }
            let disc = pair.disc();
            let lam_minus = principal_from_solution(sol);
            let lam_plus = Rat::new(BigInt::from(2) * &sol.y, &sol.x + 1);
            let beta = scaled_threshold(&lam_minus, pair.ln(), pair.n_sq(), &disc, false);
            let beta0 = scaled_threshold(&lam_plus, pair.ln(), pair.n_sq(), &disc, true);
            let second = nth_solution(sol, 2);
            let second_candidate = scaled_threshold(
                &principal_from_solution(&second),
                pair.ln(),
                pair.n_sq(),
                &disc,
                false,
            );
            let rational = beta.is_rational();
            debug_assert_eq!(rational, perfect_square(&disc).is_some());
            Ok(ThresholdResult {
                beta,
                beta0,
                rational,
                hypothesis_margin: Some(margin),
                second_candidate: Some(second_candidate),
            })
        }
    }
}

/// `β(X,n)^{-1} = (x0-1)/(2y0) · ((l·n) + sqrt(disc))/(l^2)`, exact.
pub fn beta_inverse(pair: &PolarizedPair) -> Result<QuadVal, ThresholdError> {
    match pair.pell() {
        TypePellData::Square(marker) => {
            if pair.is_principal() {
                Ok(marker.beta().recip())
            } else {
                Err(ThresholdError::PerfectSquareType { d: pair.d() })
            }
        }
        TypePellData::Pell(sol) => {
            let margin = pair.hypothesis_margin().expect("pell branch");
            if margin.is_negative() {
                return Err(ThresholdError::HypothesisFailed {
                    deficit: -margin,
                    minimal_m: None,
                });
            }
            let factor = Rat::new(&sol.x - 1, BigInt::from(2) * &sol.y);
            let l_sq_rat = rat_of(&BigInt::from(pair.l_sq()));
            let p = &factor * rat_of(&BigInt::from(pair.ln())) / &l_sq_rat;
            let q = factor / l_sq_rat;
            Ok(QuadVal::new(p, q, pair.disc()))
        }
    }
}

/// Comparison report for the inverse-threshold splitting
/// `n1 = m·l + c`, `n2 = m·l - c` with `l·c = 0` and `c^2 < 0`.
#[derive(Debug, Clone, Serialize)]
pub struct SubadditivityReport {
    pub d: u64,
    pub m: u64,
    pub c_sq: i64,
    /// Smallest multiplier for which both summands satisfy the hypothesis.
    pub minimal_m: u64,
    /// Intersection data (l^2, l·n1, n1^2) shared by both summands.
    pub summand_pair: (u64, u64, u64),
    pub beta1_inv: QuadVal,
    pub beta2_inv: QuadVal,
    pub sum: QuadVal,
    pub total_inv: QuadVal,
    /// True iff `β(n1)^{-1} + β(n2)^{-1} <= β(n1+n2)^{-1}`.
    pub subadditive: bool,
}

/// Evaluates both sides of the inverse-threshold comparison for the split
/// `(m·l + c, m·l - c)`.
pub fn subadditivity_check(
    d: u64,
    m: u64,
    c_sq: i64,
) -> Result<SubadditivityReport, ThresholdError> {
    if c_sq >= 0 || c_sq % 2 != 0 {
        return Err(ThresholdError::InvalidCurveClass { c_sq });
    }
    let sol = match pell_for_type(d).map_err(PairError::from)? {
        TypePellData::Pell(s) => s,
        TypePellData::Square(_) => return Err(ThresholdError::PerfectSquareType { d }),
    };
    let abs_c = BigInt::from(c_sq.unsigned_abs());
    // Hypothesis for n = m·l ± c: 2d·m^2 >= x0^2 |c^2| (using x0^2 - 4dy0^2 = 1).
    let needed = &sol.x * &sol.x * &abs_c;
    let two_d = BigInt::from(2 * d);
    let mut m_min = (&needed / &two_d).sqrt();
    while &two_d * &m_min * &m_min < needed {
        m_min += 1;
    }
    while m_min > BigInt::one() && &two_d * (&m_min - 1) * (&m_min - 1) >= needed {
        m_min -= 1;
    }
    use num::ToPrimitive;
    let minimal_m = m_min.to_u64().expect("minimal multiplier fits u64");
    if m < minimal_m {
        let mb = BigInt::from(m);
        let deficit = &needed - two_d * &mb * &mb;
        return Err(ThresholdError::HypothesisFailed {
            deficit,
            minimal_m: Some(minimal_m),
        });
    }
    let n_sq = 2 * d * m * m - c_sq.unsigned_abs();
    let ln = 2 * d * m;
    let summand = PolarizedPair::new(2 * d, ln, n_sq)?;
    let beta1_inv = beta_inverse(&summand)?;
    let beta2_inv = beta1_inv.clone();
    let total = PolarizedPair::new(2 * d, 4 * d * m, 8 * d * m * m)?;
    let total_inv = beta_inverse(&total)?;
    let sum = &beta1_inv + &beta2_inv;
    let subadditive = sum.cmp(&total_inv) != Ordering::Greater;
    Ok(SubadditivityReport {
        d,
        m,
        c_sq,
        minimal_m,
        summand_pair: (2 * d, ln, n_sq),
        beta1_inv,
        beta2_inv,
        sum,
        total_inv,
        subadditive,
    })
}

/// The parametric families with closed-form fundamental solutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FamilyKind {
    /// `d = m^2 + k`, `k | m`: `β = 1/m`.
    SquarePlusK,
    /// `d = m^2 - k`, `k | m`: `β = m/d`.
    SquareMinusK,
    /// `d = m^2 + m + k`, `(4k-1) | (2m+1)`: `β = 2/(2m+1)`.
    SquarePlusMPlusK,
    /// `d = m^2 - m - k`, `(4k+1) | (2m-1)`: `β = (2m-1)/(2d)`.
    SquareMinusMMinusK,
}

impl FamilyKind {
    pub fn tag(&self) -> &'static str {
        match self {
            FamilyKind::SquarePlusK => "m2+k",
            FamilyKind::SquareMinusK => "m2-k",
            FamilyKind::SquarePlusMPlusK => "m2+m+k",
            FamilyKind::SquareMinusMMinusK => "m2-m-k",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyMatch {
    pub kind: FamilyKind,
    pub m: u64,
    pub k: u64,
    #[serde(with = "crate::exact::rat_string")]
    pub beta: Rat,
    pub pell: PellSolution,
}

/// All family patterns matching `d`, each with its predicted fundamental
/// solution verified against the continued-fraction solver.
pub fn family_matches(d: u64) -> Vec<FamilyMatch> {
    let db = BigInt::from(d);
    if d < 2 || perfect_square(&db).is_some() {
        return Vec::new();
    }
    let fund = fundamental_solution(4 * d).expect("nonsquare d");
    let mut out = Vec::new();
    let mut push = |kind: FamilyKind, m: u64, k: u64, x: BigInt, y: BigInt, beta: Rat| {
        let claimed = PellSolution {
            x,
            y,
            index: 1,
            n: 4 * d,
        };
        assert!(claimed.verify(), "family {kind:?} (m={m}, k={k}) for d={d}");
        assert_eq!(
            (&claimed.x, &claimed.y),
            (&fund.x, &fund.y),
            "family {kind:?} (m={m}, k={k}) must give the minimal solution for d={d}"
        );
        assert_eq!(beta, principal_from_solution(&fund));
        out.push(FamilyMatch {
            kind,
            m,
            k,
            beta,
            pell: claimed,
        });
    };
    let root = (d as f64).sqrt() as u64 + 2;
    for m in 1..=root {
        let m_sq = m * m;
        // d = m^2 + k with k | m
        if d > m_sq {
            let k = d - m_sq;
            if k <= m && m % k == 0 {
                push(
                    FamilyKind::SquarePlusK,
                    m,
                    k,
                    BigInt::from(2 * m_sq / k + 1),
                    BigInt::from(m / k),
                    Rat::new(BigInt::one(), BigInt::from(m)),
                );
            }
        }
        // d = m^2 - k with k | m
        if m_sq > d {
            let k = m_sq - d;
            if k >= 1 && k <= m && m % k == 0 {
                push(
                    FamilyKind::SquareMinusK,
                    m,
                    k,
                    BigInt::from(2 * m_sq / k - 1),
                    BigInt::from(m / k),
                    Rat::new(BigInt::from(m), BigInt::from(d)),
                );
            }
        }
        // d = m^2 + m + k with (4k - 1) | (2m + 1), s = (2m+1)/(4k-1)
        if d > m_sq + m {
            let k = d - m_sq - m;
            if 4 * k - 1 <= 2 * m + 1 && (2 * m + 1) % (4 * k - 1) == 0 {
                let s = (2 * m + 1) / (4 * k - 1);
                push(
                    FamilyKind::SquarePlusMPlusK,
                    m,
                    k,
                    BigInt::from(2 * (2 * m + 1) * s + 1),
                    BigInt::from(2 * s),
                    Rat::new(BigInt::from(2u64), BigInt::from(2 * m + 1)),
                );
            }
        }
        // d = m^2 - m - k with (4k + 1) | (2m - 1), s = (2m-1)/(4k+1)
        if m_sq > m && m_sq - m > d {
            let k = m_sq - m - d;
            if 4 * k + 1 <= 2 * m - 1 && (2 * m - 1) % (4 * k + 1) == 0 {
                let s = (2 * m - 1) / (4 * k + 1);
                push(
                    FamilyKind::SquareMinusMMinusK,
                    m,
                    k,
                    BigInt::from(2 * (2 * m - 1) * s - 1),
                    BigInt::from(2 * s),
                    Rat::new(BigInt::from(2 * m - 1), BigInt::from(2 * d)),
                );
            }
        }
    }
    out
}

/// The first family match, after asserting that all matching patterns
/// predict the same threshold.
pub fn family_beta(d: u64) -> Option<FamilyMatch> {
    let matches = family_matches(d);
    if let Some(first) = matches.first() {
        for other in &matches[1..] {
            assert_eq!(other.beta, first.beta, "family patterns disagree for d={d}");
        }
    }
    matches.into_iter().next()
}

/// `β(X,n)` for the split abelian surface with `NS = Z[C1] ⊕ Z[C2]`,
/// `(C1·C2) = 2`, and `n = a C1 + b C2`:
/// `1/(2a)`, `1/b`, `1/a`, `1/(2b)` on the four regimes of `a/b`.
pub fn product_surface_beta(a: u64, b: u64) -> Rat {
    assert!(a >= 1 && b >= 1);
    let value = if 2 * a <= b {
        Rat::new(BigInt::one(), BigInt::from(2 * a))
    } else if a <= b {
        Rat::new(BigInt::one(), BigInt::from(b))
    } else if a <= 2 * b {
        Rat::new(BigInt::one(), BigInt::from(a))
    } else {
        Rat::new(BigInt::one(), BigInt::from(2 * b))
    };
    // In the overlap regime b/2 <= a <= 2b the pair formula applies with
    // l = C1 + C2; cross-check against it.
    if b <= 2 * a && a <= 2 * b {
        let pair = PolarizedPair::new(4, 2 * (a + b), 4 * a * b).expect("valid split pair");
        let via_pair = beta_pair(&pair).expect("hypothesis holds on the overlap regime");
        assert_eq!(
            via_pair.beta.as_rat(),
            Some(&value),
            "split-surface regime value must match the pair formula (a={a}, b={b})"
        );
    }
    value
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{big, rat, rat_int};

    #[test]
    fn pair_validation() {
        assert!(PolarizedPair::new(4, 12, 34).is_ok());
        assert!(matches!(
            PolarizedPair::new(4, 3, 34),
            Err(PairError::HodgeViolation { .. })
        ));
        assert!(matches!(
            PolarizedPair::new(3, 12, 34),
            Err(PairError::OddSelfIntersection { .. })
        ));
        assert!(matches!(
            PolarizedPair::new(4, 0, 34),
            Err(PairError::NonPositive { .. })
        ));
    }

    #[test]
    fn beta_principal_values() {
        assert_eq!(beta_principal(3).unwrap().as_rat(), Some(&rat(2, 3)));
        assert_eq!(beta_principal(9).unwrap().as_rat(), Some(&rat(1, 3)));
        assert_eq!(beta_principal(7).unwrap().as_rat(), Some(&rat(8, 21)));
        assert_eq!(beta0_principal(3).unwrap().as_rat(), Some(&rat(1, 2)));
        assert_eq!(beta0_principal(2).unwrap().as_rat(), Some(&rat(1, 2)));
    }

    #[test]
    fn lower_bound_values() {
        assert_eq!(lower_bound_at(3, &rat(2, 3)).unwrap(), rat(2, 3));
        assert_eq!(lower_bound_at(2, &rat_int(1)).unwrap(), rat_int(1));
        assert_eq!(lower_bound_at(3, &rat_int(1)).unwrap(), rat(2, 3));
        assert!(matches!(
            lower_bound_at(3, &rat(1, 2)),
            Err(ThresholdError::NuTooSmall { .. })
        ));
        // 1/sqrt(3) < 3/5 admissible: 3·9 = 27 > 25
        assert!(lower_bound_at(3, &rat(3, 5)).is_ok());
        // exactly-at-threshold rejected for square-free d with square ratio:
        // d=2, ν=5/7: 2·25=50 > 49 admissible
        assert!(lower_bound_at(2, &rat(5, 7)).is_ok());
        assert!(matches!(
            lower_bound_at(2, &rat(7, 10)),
            Err(ThresholdError::NuTooSmall { .. })
        ));
    }

    #[test]
    fn lower_bound_never_exceeds_beta() {
        for d in [2u64, 3, 5, 6, 7, 10] {
            let beta = beta_principal(d).unwrap();
            for (a, b) in [(1i64, 1i64), (2, 3), (3, 4), (5, 6), (7, 9), (2, 1)] {
                let nu = rat(a, b);
                if let Ok(bound) = lower_bound_at(d, &nu) {
                    assert!(
                        QuadVal::from_rat(bound.clone()) <= beta,
                        "d={d}, ν={nu}: bound {bound} exceeds β"
                    );
                }
            }
        }
    }

    #[test]
    fn beta_pair_corollary() {
        let pair = PolarizedPair::new(4, 12, 34).unwrap();
        let res = beta_pair(&pair).unwrap();
        assert_eq!(res.beta, QuadVal::new(rat(6, 17), rat(-1, 17), big(2)));
        assert_eq!(res.beta0, QuadVal::new(rat(6, 34), rat(1, 34), big(2)));
        assert!(!res.rational);
        assert_eq!(res.hypothesis_margin, Some(big(18)));
    }

    #[test]
    fn beta_pair_principal_reduction() {
        for d in [2u64, 3, 5, 6, 7, 11] {
            let pair = PolarizedPair::principal(d).unwrap();
            let res = beta_pair(&pair).unwrap();
            assert_eq!(res.beta, beta_principal(d).unwrap(), "d = {d}");
            assert_eq!(res.beta0, beta0_principal(d).unwrap(), "d = {d}");
            assert!(res.rational);
        }
    }

    #[test]
    fn beta_pair_hypothesis_failure() {
        let pair = PolarizedPair::new(4, 12, 20).unwrap();
        match beta_pair(&pair) {
            Err(ThresholdError::HypothesisFailed { deficit, .. }) => {
                assert_eq!(deficit, big(108));
            }
            other => panic!("expected hypothesis failure, got {other:?}"),
        }
    }

    #[test]
    fn beta_pair_square_branch() {
        let pair = PolarizedPair::principal(4).unwrap();
        let res = beta_pair(&pair).unwrap();
        assert_eq!(res.beta.as_rat(), Some(&rat(1, 2)));
        assert_eq!(res.beta0.as_rat(), Some(&rat(1, 2)));
        // any non-principal pair on the square branch is refused
        let pair = PolarizedPair::new(8, 16, 16).unwrap();
        assert!(matches!(
            beta_pair(&pair),
            Err(ThresholdError::PerfectSquareType { d: 4 })
        ));
    }

    #[test]
    fn beta_pair_split_surface_point() {
        let pair = PolarizedPair::new(4, 10, 24).unwrap();
        let res = beta_pair(&pair).unwrap();
        assert_eq!(res.beta.as_rat(), Some(&rat(1, 3)));
        assert!(res.rational);
    }

    #[test]
    fn beta_inverse_examples() {
        let pair = PolarizedPair::new(4, 12, 34).unwrap();
        let inv = beta_inverse(&pair).unwrap();
        // (12 + sqrt 8)/4 = 3 + (1/2) sqrt 2
        assert_eq!(inv, QuadVal::new(rat(12, 4), rat(1, 4), big(8)));
        let beta = beta_pair(&pair).unwrap().beta;
        assert_eq!(&beta * &inv, QuadVal::one());
        let principal = PolarizedPair::principal(2).unwrap();
        assert_eq!(beta_inverse(&principal).unwrap().as_rat(), Some(&rat_int(1)));
        // d=2, n = 3l + c with c^2 = -4: pair (4, 12, 32), inverse = 4
        let pair = PolarizedPair::new(4, 12, 32).unwrap();
        assert_eq!(beta_inverse(&pair).unwrap().as_rat(), Some(&rat_int(4)));
    }

    #[test]
    fn subadditivity_counterexample() {
        let report = subadditivity_check(2, 3, -4).unwrap();
        assert_eq!(report.summand_pair, (4, 12, 32));
        assert_eq!(report.beta1_inv.as_rat(), Some(&rat_int(4)));
        assert_eq!(report.sum.as_rat(), Some(&rat_int(8)));
        assert_eq!(report.total_inv.as_rat(), Some(&rat_int(6)));
        assert!(!report.subadditive);
        assert_eq!(report.minimal_m, 3);
    }

    #[test]
    fn subadditivity_errors() {
        assert!(matches!(
            subadditivity_check(2, 3, 0),
            Err(ThresholdError::InvalidCurveClass { c_sq: 0 })
        ));
        assert!(matches!(
            subadditivity_check(2, 3, -3),
            Err(ThresholdError::InvalidCurveClass { .. })
        ));
        match subadditivity_check(2, 2, -4) {
            Err(ThresholdError::HypothesisFailed {
                minimal_m: Some(m), ..
            }) => assert_eq!(m, 3),
            other => panic!("expected hypothesis failure with threshold m, got {other:?}"),
        }
    }

    #[test]
    fn family_examples() {
        // d = 5 = 2^2 + 1: β = 1/2, minimal solution (9, 2)
        let m5 = family_beta(5).unwrap();
        assert_eq!(m5.kind, FamilyKind::SquarePlusK);
        assert_eq!((m5.m, m5.k), (2, 1));
        assert_eq!(m5.beta, rat(1, 2));
        assert_eq!((m5.pell.x, m5.pell.y), (big(9), big(2)));
        // d = 3 matches both m^2-k and m^2+m+k with the same β
        let all = family_matches(3);
        assert_eq!(all.len(), 2);
        assert!(all.iter().all(|f| f.beta == rat(2, 3)));
        assert!(all.iter().any(|f| f.kind == FamilyKind::SquareMinusK));
        assert!(all.iter().any(|f| f.kind == FamilyKind::SquarePlusMPlusK));
        // d = 7 matches nothing
        assert!(family_beta(7).is_none());
        assert_eq!(beta_principal(7).unwrap().as_rat(), Some(&rat(8, 21)));
    }

    #[test]
    fn family_agrees_with_principal_up_to_500() {
        let mut hits = 0;
        for d in 2u64..=500 {
            for m in family_matches(d) {
                assert_eq!(
                    QuadVal::from_rat(m.beta.clone()),
                    beta_principal(d).unwrap(),
                    "family {:?} for d = {d}",
                    m.kind
                );
                hits += 1;
            }
        }
        assert!(hits > 100, "family sweep looks too sparse: {hits}");
    }

    #[test]
    fn product_surface_values() {
        assert_eq!(product_surface_beta(1, 1), rat_int(1));
        assert_eq!(product_surface_beta(3, 1), rat(1, 2));
        assert_eq!(product_surface_beta(2, 3), rat(1, 3));
        assert_eq!(product_surface_beta(1, 7), rat(1, 2));
        // boundary continuity at a = b/2, a = b, a = 2b
        for t in 1u64..=6 {
            assert_eq!(product_surface_beta(t, 2 * t), rat(1, 2 * t as i64));
            assert_eq!(product_surface_beta(t, t), Rat::new(big(1), big(t as i64)));
            assert_eq!(product_surface_beta(2 * t, t), rat(1, 2 * t as i64));
        }
    }

    #[test]
    fn product_of_thresholds_invariant() {
        for (l2, ln, n2) in [(4u64, 12u64, 34u64), (4, 12, 32), (6, 6, 6), (4, 10, 24)] {
            let pair = PolarizedPair::new(l2, ln, n2).unwrap();
            let res = beta_pair(&pair).unwrap();
            let product = &res.beta * &res.beta0;
            assert_eq!(
                product.as_rat(),
                Some(&Rat::new(big(2), BigInt::from(n2))),
                "β·β⁰ = 2/(n^2) fails for ({l2},{ln},{n2})"
            );
        }
    }

    #[test]
    fn principal_threshold_brackets_inverse_root() {
        for d in 2u64..=200 {
            if perfect_square(&BigInt::from(d)).is_some() {
                continue;
            }
            let beta = beta_principal(d).unwrap();
            let beta0 = beta0_principal(d).unwrap();
            let inv_root = QuadVal::new(Rat::zero(), Rat::new(big(1), BigInt::from(d)), BigInt::from(d));
            assert!(beta0 < inv_root, "β⁰ < 1/sqrt(d) fails for d = {d}");
            assert!(inv_root < beta, "1/sqrt(d) < β fails for d = {d}");
        }
    }
}
