//! Piecewise-quadratic cohomological rank functions: the `h^0/h^1/h^2`
//! profiles of the ideal sheaf of a point and of twisted semihomogeneous
//! bundles, with exact quadratic-irrational breakpoints.
//!
//! Pieces live on closed intervals sharing their endpoints; the continuity
//! invariant (adjacent pieces agree exactly at every breakpoint) resolves
//! which side a breakpoint evaluation uses.

use crate::exact::{half_plus, QuadVal, Rat};
use crate::pell::{pell_for_type, TypePellData};
use crate::semihomog::{roots_for_triple, SemihomogError};
use crate::thresholds::PolarizedPair;
use num::{BigInt, One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum CrfError {
    #[error("d = {0} is a perfect square; the closed-form profile needs Pell data")]
    PerfectSquare(u64),
    #[error("hypothesis x0^2 (n^2) >= 2 y0^2 (l·n)^2 fails by {deficit}")]
    HypothesisFailed { deficit: BigInt },
    #[error("evaluation point {x} lies below the domain floor {floor}")]
    BelowDomain { x: QuadVal, floor: QuadVal },
    #[error("expected {expected} pieces for {breakpoints} breakpoints, got {actual}")]
    PieceCountMismatch {
        breakpoints: usize,
        expected: usize,
        actual: usize,
    },
    #[error("breakpoints must be strictly increasing and above the domain floor")]
    UnsortedBreakpoints,
    #[error("adjacent pieces disagree at breakpoint {index}")]
    Discontinuity { index: usize },
    #[error("piece {index} takes a negative value on its interval")]
    NegativePiece { index: usize },
    #[error("component profiles must share breakpoints and domain floor")]
    MisalignedProfiles,
    #[error("h0 - h1 + h2 differs from the Hilbert polynomial on piece {index}")]
    EulerMismatch { index: usize },
    #[error(transparent)]
    Semihomog(#[from] SemihomogError),
}

/// Quadratic polynomial `c2 x^2 + c1 x + c0` with exact rational
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadPoly {
    #[serde(with = "crate::exact::rat_string")]
    pub c2: Rat,
    #[serde(with = "crate::exact::rat_string")]
    pub c1: Rat,
    #[serde(with = "crate::exact::rat_string")]
    pub c0: Rat,
}

impl QuadPoly {
    pub fn new(c2: Rat, c1: Rat, c0: Rat) -> Self {
        QuadPoly { c2, c1, c0 }
    }

    pub fn zero() -> Self {
        QuadPoly::new(Rat::zero(), Rat::zero(), Rat::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.c2.is_zero() && self.c1.is_zero() && self.c0.is_zero()
    }

    pub fn neg(&self) -> Self {
        QuadPoly::new(-&self.c2, -&self.c1, -&self.c0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        QuadPoly::new(&self.c2 - &other.c2, &self.c1 - &other.c1, &self.c0 - &other.c0)
    }

    pub fn add(&self, other: &Self) -> Self {
        QuadPoly::new(&self.c2 + &other.c2, &self.c1 + &other.c1, &self.c0 + &other.c0)
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        (&self.c2 * x + &self.c1) * x + &self.c0
    }

    pub fn eval_quad(&self, x: &QuadVal) -> QuadVal {
        let cx = x.scale(&self.c2).add_rat(&self.c1);
        (&cx * x).add_rat(&self.c0)
    }
}

/// A cohomological rank function: finitely many quadratic pieces separated
/// by exact breakpoints, defined on `[domain_floor, ∞)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PiecewiseQuad {
    domain_floor: QuadVal,
    breakpoints: Vec<QuadVal>,
    pieces: Vec<QuadPoly>,
}

impl PiecewiseQuad {
    pub fn new(
        domain_floor: QuadVal,
        breakpoints: Vec<QuadVal>,
        pieces: Vec<QuadPoly>,
    ) -> Result<Self, CrfError> {
        if pieces.len() != breakpoints.len() + 1 {
            return Err(CrfError::PieceCountMismatch {
                breakpoints: breakpoints.len(),
                expected: breakpoints.len() + 1,
                actual: pieces.len(),
            });
        }
        for (i, bp) in breakpoints.iter().enumerate() {
            let lower = if i == 0 {
                &domain_floor
            } else {
                &breakpoints[i - 1]
            };
            if bp <= lower {
                return Err(CrfError::UnsortedBreakpoints);
            }
        }
        for (i, bp) in breakpoints.iter().enumerate() {
            if pieces[i].eval_quad(bp) != pieces[i + 1].eval_quad(bp) {
                return Err(CrfError::Discontinuity { index: i });
            }
        }
        let f = PiecewiseQuad {
            domain_floor,
            breakpoints,
            pieces,
        };
        for i in 0..f.pieces.len() {
            if !f.piece_nonnegative(i) {
                return Err(CrfError::NegativePiece { index: i });
            }
        }
        Ok(f)
    }

    fn piece_nonnegative(&self, i: usize) -> bool {
        let piece = &self.pieces[i];
        let lo = if i == 0 {
            &self.domain_floor
        } else {
            &self.breakpoints[i - 1]
        };
        let hi = self.breakpoints.get(i);
        if piece.eval_quad(lo).sign() == std::cmp::Ordering::Less {
            return false;
        }
        match hi {
            Some(hi) => {
                if piece.eval_quad(hi).sign() == std::cmp::Ordering::Less {
                    return false;
                }
            }
            None => {
                // closure at infinity
                if piece.c2.is_negative() {
                    return false;
                }
                if piece.c2.is_zero() && piece.c1.is_negative() {
                    return false;
                }
            }
        }
        if piece.c2.is_positive() {
            let vertex = QuadVal::from_rat(-&piece.c1 / (&piece.c2 + &piece.c2));
            let inside = &vertex > lo && hi.map_or(true, |h| &vertex < h);
            if inside && piece.eval_quad(&vertex).sign() == std::cmp::Ordering::Less {
                return false;
            }
        }
        true
    }

    pub fn domain_floor(&self) -> &QuadVal {
        &self.domain_floor
    }

    pub fn breakpoints(&self) -> &[QuadVal] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[QuadPoly] {
        &self.pieces
    }

    fn piece_index(&self, x: &QuadVal) -> Result<usize, CrfError> {
        if x < &self.domain_floor {
            return Err(CrfError::BelowDomain {
                x: x.clone(),
                floor: self.domain_floor.clone(),
            });
        }
        Ok(self.breakpoints.iter().filter(|bp| *bp < x).count())
    }

    /// Exact evaluation at a rational point. Breakpoints may be evaluated
    /// on either side; continuity guarantees agreement.
    pub fn eval(&self, x: &Rat) -> Result<Rat, CrfError> {
        let qx = QuadVal::from_rat(x.clone());
        let idx = self.piece_index(&qx)?;
        Ok(self.pieces[idx].eval_rat(x))
    }

    /// Exact evaluation at a quadratic-irrational point.
    pub fn eval_quad(&self, x: &QuadVal) -> Result<QuadVal, CrfError> {
        let idx = self.piece_index(x)?;
        Ok(self.pieces[idx].eval_quad(x))
    }

    /// Subtracts a polynomial from every piece, revalidating the result.
    pub fn sub_poly(&self, p: &QuadPoly) -> Result<PiecewiseQuad, CrfError> {
        PiecewiseQuad::new(
            self.domain_floor.clone(),
            self.breakpoints.clone(),
            self.pieces.iter().map(|piece| piece.sub(p)).collect(),
        )
    }

    /// Supremum of the leading identically-zero region, when there is one
    /// and the function is not identically zero.
    pub fn zero_prefix_supremum(&self) -> Option<&QuadVal> {
        let lead = self.pieces.iter().take_while(|p| p.is_zero()).count();
        if lead == 0 || lead == self.pieces.len() {
            None
        } else {
            Some(&self.breakpoints[lead - 1])
        }
    }

    /// Infimum of the trailing identically-zero region, when there is one
    /// and the function is not identically zero.
    pub fn zero_suffix_infimum(&self) -> Option<&QuadVal> {
        let trail = self.pieces.iter().rev().take_while(|p| p.is_zero()).count();
        if trail == 0 || trail == self.pieces.len() {
            None
        } else {
            Some(&self.breakpoints[self.breakpoints.len() - trail])
        }
    }

    /// Fault-injection entry point for oracle tests: shifts one piece's
    /// constant term *without* revalidating the profile invariants.
    pub fn corrupted_constant(&self, piece: usize, delta: &Rat) -> PiecewiseQuad {
        let mut out = self.clone();
        out.pieces[piece].c0 = &out.pieces[piece].c0 + delta;
        out
    }
}

/// `h^0`, `h^1`, `h^2` profiles of one sheaf, with the Hilbert polynomial
/// they alternate to.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrfTriple {
    pub h0: PiecewiseQuad,
    pub h1: PiecewiseQuad,
    pub h2: PiecewiseQuad,
    pub chi: QuadPoly,
}

impl CrfTriple {
    pub fn new(
        h0: PiecewiseQuad,
        h1: PiecewiseQuad,
        h2: PiecewiseQuad,
        chi: QuadPoly,
    ) -> Result<Self, CrfError> {
        if h0.breakpoints != h1.breakpoints
            || h1.breakpoints != h2.breakpoints
            || h0.domain_floor != h1.domain_floor
            || h1.domain_floor != h2.domain_floor
        {
            return Err(CrfError::MisalignedProfiles);
        }
        for i in 0..h0.pieces.len() {
            let alternating = h0.pieces[i].sub(&h1.pieces[i]).add(&h2.pieces[i]);
            if alternating != chi {
                return Err(CrfError::EulerMismatch { index: i });
            }
        }
        Ok(CrfTriple { h0, h1, h2, chi })
    }
}

fn pell_or_square(d: u64) -> Result<crate::pell::PellSolution, CrfError> {
    match pell_for_type(d).map_err(|_| CrfError::PerfectSquare(d))? {
        TypePellData::Pell(sol) => Ok(sol),
        TypePellData::Square(_) => Err(CrfError::PerfectSquare(d)),
    }
}

/// Profiles of the ideal sheaf of a point with respect to `l` itself, for
/// nonsquare `d`: three pieces with rational breakpoints `2y0/(x0+1)` and
/// `2y0/(x0-1)`, Hilbert polynomial `d x^2 - 1`, and `h^2 = 0` on `x >= 0`.
pub fn crf_ideal_l(d: u64) -> Result<CrfTriple, CrfError> {
    let sol = pell_or_square(d)?;
    let two_y = BigInt::from(2) * &sol.y;
    let b0 = QuadVal::from_rat(Rat::new(two_y.clone(), &sol.x + 1));
    let b1 = QuadVal::from_rat(Rat::new(two_y, &sol.x - 1));
    let d_rat = Rat::from_integer(BigInt::from(d));
    let chi = QuadPoly::new(d_rat.clone(), Rat::zero(), -Rat::one());
    let middle = QuadPoly::new(
        &d_rat * Rat::new(&sol.x + 1, BigInt::from(2)),
        -(Rat::from_integer(BigInt::from(2 * d)) * Rat::from_integer(sol.y.clone())),
        Rat::new(&sol.x - 1, BigInt::from(2)),
    );
    let floor = QuadVal::zero();
    let breakpoints = vec![b0, b1];
    let h0 = PiecewiseQuad::new(
        floor.clone(),
        breakpoints.clone(),
        vec![QuadPoly::zero(), middle, chi.clone()],
    )?;
    let h1 = h0.sub_poly(&chi)?;
    let h2 = PiecewiseQuad::new(
        floor,
        breakpoints,
        vec![QuadPoly::zero(), QuadPoly::zero(), QuadPoly::zero()],
    )?;
    CrfTriple::new(h0, h1, h2, chi)
}

/// Hilbert polynomial of `G = E_{-λl}` with respect to `n`:
/// `(r/2)((n^2)x^2 - 2λ(l·n)x + λ^2(l^2))`.
fn chi_semihomog(lam_abs: &Rat, pair: &PolarizedPair, rank: &BigInt) -> QuadPoly {
    let half_rank = Rat::new(rank.clone(), BigInt::from(2));
    QuadPoly::new(
        &half_rank * Rat::from_integer(BigInt::from(pair.n_sq())),
        -(Rat::from_integer(BigInt::from(2)) * &half_rank * lam_abs
            * Rat::from_integer(BigInt::from(pair.ln()))),
        half_rank * lam_abs * lam_abs * Rat::from_integer(BigInt::from(pair.l_sq())),
    )
}

/// Profiles of `G = E_{-λl}` with respect to `n`, on
/// `[-(2λ(l·n))/(n^2), ∞)` by default.
pub fn crf_semihomog(
    lam_abs: &Rat,
    pair: &PolarizedPair,
    rank: &BigInt,
) -> Result<CrfTriple, CrfError> {
    let floor = QuadVal::from_rat(
        -(Rat::from_integer(BigInt::from(2)) * lam_abs * Rat::from_integer(BigInt::from(pair.ln()))
            / Rat::from_integer(BigInt::from(pair.n_sq()))),
    );
    crf_semihomog_with_floor(lam_abs, pair, rank, floor)
}

/// As [`crf_semihomog`], clamped at a caller-chosen floor below `s_-`.
pub fn crf_semihomog_with_floor(
    lam_abs: &Rat,
    pair: &PolarizedPair,
    rank: &BigInt,
    floor: QuadVal,
) -> Result<CrfTriple, CrfError> {
    let (s_minus, s_plus) = roots_for_triple(lam_abs, pair.l_sq(), pair.ln(), pair.n_sq())?;
    let chi = chi_semihomog(lam_abs, pair, rank);
    let zero = QuadPoly::zero();
    let (breakpoints, h0_pieces, h1_pieces, h2_pieces) = if s_minus == s_plus {
        // double root: empty middle region, two pieces
        (
            vec![s_minus],
            vec![zero.clone(), chi.clone()],
            vec![zero.clone(), zero.clone()],
            vec![chi.clone(), zero.clone()],
        )
    } else {
        (
            vec![s_minus, s_plus],
            vec![zero.clone(), zero.clone(), chi.clone()],
            vec![zero.clone(), chi.neg(), zero.clone()],
            vec![chi.clone(), zero.clone(), zero.clone()],
        )
    };
    let h0 = PiecewiseQuad::new(floor.clone(), breakpoints.clone(), h0_pieces)?;
    let h1 = PiecewiseQuad::new(floor.clone(), breakpoints.clone(), h1_pieces)?;
    let h2 = PiecewiseQuad::new(floor, breakpoints, h2_pieces)?;
    CrfTriple::new(h0, h1, h2, chi)
}

/// Profiles of the ideal sheaf of a point with respect to `n`, under the
/// hypothesis `x0^2 (n^2) >= 2 y0^2 (l·n)^2` (equivalently
/// `s_+(F,n) <= s_-(E,n)` for the two resolving bundles).
pub fn crf_ideal_n(pair: &PolarizedPair) -> Result<CrfTriple, CrfError> {
    let sol = pell_or_square(pair.d())?;
    let margin = pair.hypothesis_margin().expect("pell branch");
    if margin.is_negative() {
        return Err(CrfError::HypothesisFailed { deficit: -margin });
    }
    let lam_e = Rat::new(BigInt::from(2) * &sol.y, &sol.x - 1);
    let lam_f = Rat::new(BigInt::from(2) * &sol.y, &sol.x + 1);
    let rank_f = half_plus(&sol.x);
    let (_, s_plus_f) = roots_for_triple(&lam_f, pair.l_sq(), pair.ln(), pair.n_sq())?;
    let (s_minus_e, _) = roots_for_triple(&lam_e, pair.l_sq(), pair.ln(), pair.n_sq())?;
    let chi_f = chi_semihomog(&lam_f, pair, &rank_f);
    let chi_ideal = QuadPoly::new(
        Rat::new(BigInt::from(pair.n_sq()), BigInt::from(2)),
        Rat::zero(),
        -Rat::one(),
    );
    let floor = QuadVal::zero();
    let zero = QuadPoly::zero();
    let (breakpoints, h0_pieces) = if s_plus_f == s_minus_e {
        // boundary case of the hypothesis: the middle region is empty
        (
            vec![s_plus_f],
            vec![zero.clone(), chi_ideal.clone()],
        )
    } else {
        (
            vec![s_plus_f, s_minus_e],
            vec![zero.clone(), chi_f, chi_ideal.clone()],
        )
    };
    let h0 = PiecewiseQuad::new(floor.clone(), breakpoints.clone(), h0_pieces)?;
    let h1 = h0.sub_poly(&chi_ideal)?;
    let h2 = PiecewiseQuad::new(
        floor,
        breakpoints.clone(),
        vec![QuadPoly::zero(); breakpoints.len() + 1],
    )?;
    CrfTriple::new(h0, h1, h2, chi_ideal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{big, rat, rat_int};
    use crate::thresholds::{beta_pair, PolarizedPair};

    #[test]
    fn ideal_l_profile_d3() {
        let t = crf_ideal_l(3).unwrap();
        assert_eq!(
            t.h0.breakpoints(),
            &[QuadVal::from_rat(rat(1, 2)), QuadVal::from_rat(rat(2, 3))]
        );
        // both sides of the shared breakpoint evaluate to 1/3
        assert_eq!(t.h0.pieces()[1].eval_rat(&rat(2, 3)), rat(1, 3));
        assert_eq!(t.h0.pieces()[2].eval_rat(&rat(2, 3)), rat(1, 3));
        // left breakpoint value is 0
        assert_eq!(t.h0.eval(&rat(1, 2)).unwrap(), Rat::zero());
        // outside piece at x = 1
        assert_eq!(t.h0.eval(&rat_int(1)).unwrap(), rat_int(2));
        // ideal sheaf of a point: h0(0) = 0, h1(0) = 1
        assert_eq!(t.h0.eval(&Rat::zero()).unwrap(), Rat::zero());
        assert_eq!(t.h1.eval(&Rat::zero()).unwrap(), Rat::one());
    }

    #[test]
    fn ideal_l_rejects_squares() {
        assert_eq!(crf_ideal_l(9), Err(CrfError::PerfectSquare(9)));
    }

    #[test]
    fn semihomog_profiles() {
        let pair = PolarizedPair::new(4, 12, 34).unwrap();
        // λ = 1, rank 1 (d = 2): h1 positive strictly between the roots
        let t = crf_semihomog(&rat_int(1), &pair, &big(1)).unwrap();
        let mid = rat(6, 17);
        let h1_mid = t.h1.eval(&mid).unwrap();
        assert_eq!(h1_mid, rat(2, 17));
        assert!(h1_mid.is_positive());
        assert_eq!(t.h0.eval(&mid).unwrap(), Rat::zero());
        // λ = 1/2, rank 2: s+ = (6 + sqrt 2)/34 and h0(1) = 23
        let t = crf_semihomog(&rat(1, 2), &pair, &big(2)).unwrap();
        assert_eq!(
            t.h0.breakpoints()[1],
            QuadVal::new(rat(6, 34), rat(1, 34), big(2))
        );
        assert_eq!(t.h0.eval(&rat_int(1)).unwrap(), rat_int(23));
    }

    #[test]
    fn semihomog_double_root() {
        let pair = PolarizedPair::new(4, 4, 4).unwrap();
        let t = crf_semihomog(&rat_int(1), &pair, &big(1)).unwrap();
        assert_eq!(t.h0.breakpoints().len(), 1);
        assert_eq!(t.h0.breakpoints()[0], QuadVal::one());
        // h1 is identically zero
        assert!(t.h1.pieces().iter().all(|p| p.is_zero()));
        for x in [rat(1, 2), rat_int(1), rat(3, 2)] {
            assert_eq!(t.h1.eval(&x).unwrap(), Rat::zero());
        }
    }

    #[test]
    fn ideal_n_corollary_pair() {
        let pair = PolarizedPair::new(4, 12, 34).unwrap();
        let t = crf_ideal_n(&pair).unwrap();
        assert_eq!(
            t.h0.breakpoints(),
            &[
                QuadVal::new(rat(6, 34), rat(1, 34), big(2)),
                QuadVal::new(rat(6, 17), rat(-1, 17), big(2)),
            ]
        );
        // outer piece at x = 1: (n^2)/2 - 1 = 16
        assert_eq!(t.h0.eval(&rat_int(1)).unwrap(), rat_int(16));
        // h0 = h1 + ((n^2)/2 x^2 - 1) at any rational point
        let x = rat(6, 17);
        let h0 = t.h0.eval(&x).unwrap();
        let h1 = t.h1.eval(&x).unwrap();
        assert_eq!(h0, h1 + (rat_int(17) * &x * &x - Rat::one()));
    }

    #[test]
    fn ideal_n_thresholds_match_profiles() {
        for (l2, ln, n2) in [(4u64, 12u64, 34u64), (4, 10, 24), (6, 6, 6), (4, 12, 32)] {
            let pair = PolarizedPair::new(l2, ln, n2).unwrap();
            let t = crf_ideal_n(&pair).unwrap();
            let res = beta_pair(&pair).unwrap();
            assert_eq!(
                t.h1.zero_suffix_infimum(),
                Some(&res.beta),
                "β from the h1 profile, pair ({l2},{ln},{n2})"
            );
            assert_eq!(
                t.h0.zero_prefix_supremum(),
                Some(&res.beta0),
                "β⁰ from the h0 profile, pair ({l2},{ln},{n2})"
            );
        }
    }

    #[test]
    fn ideal_n_specializes_to_ideal_l() {
        for d in [2u64, 3, 5, 6, 7, 11, 13] {
            let pair = PolarizedPair::principal(d).unwrap();
            let general = crf_ideal_n(&pair).unwrap();
            let direct = crf_ideal_l(d).unwrap();
            assert_eq!(general, direct, "d = {d}");
        }
    }

    #[test]
    fn ideal_n_hypothesis_failure() {
        let pair = PolarizedPair::new(4, 12, 20).unwrap();
        assert_eq!(
            crf_ideal_n(&pair),
            Err(CrfError::HypothesisFailed { deficit: big(108) })
        );
    }

    #[test]
    fn ideal_n_boundary_collapses_middle() {
        // d = 2, boundary triple (4, 3t, 2t^2) with t = 2: margin 0
        let pair = PolarizedPair::new(4, 6, 8).unwrap();
        assert_eq!(pair.hypothesis_margin(), Some(big(0)));
        let t = crf_ideal_n(&pair).unwrap();
        assert_eq!(t.h0.breakpoints().len(), 1);
        assert_eq!(t.h0.pieces().len(), 2);
    }

    #[test]
    fn eval_below_domain() {
        let t = crf_ideal_l(3).unwrap();
        assert!(matches!(
            t.h0.eval(&rat(-1, 2)),
            Err(CrfError::BelowDomain { .. })
        ));
    }

    #[test]
    fn construction_rejects_bad_data() {
        let bp = vec![QuadVal::one()];
        // discontinuous
        let err = PiecewiseQuad::new(
            QuadVal::zero(),
            bp.clone(),
            vec![
                QuadPoly::zero(),
                QuadPoly::new(Rat::zero(), Rat::zero(), Rat::one()),
            ],
        );
        assert_eq!(err, Err(CrfError::Discontinuity { index: 0 }));
        // unsorted
        let err = PiecewiseQuad::new(
            QuadVal::zero(),
            vec![QuadVal::one(), QuadVal::one()],
            vec![QuadPoly::zero(); 3],
        );
        assert_eq!(err, Err(CrfError::UnsortedBreakpoints));
        // negative somewhere: x^2 - 1 on [0, ∞) dips below zero at 1/2
        let err = PiecewiseQuad::new(
            QuadVal::zero(),
            vec![],
            vec![QuadPoly::new(Rat::one(), Rat::zero(), -Rat::one())],
        );
        assert_eq!(err, Err(CrfError::NegativePiece { index: 0 }));
        // piece count
        let err = PiecewiseQuad::new(QuadVal::zero(), bp, vec![QuadPoly::zero()]);
        assert!(matches!(err, Err(CrfError::PieceCountMismatch { .. })));
    }

    #[test]
    fn euler_identity_enforced() {
        let t = crf_ideal_l(2).unwrap();
        let wrong_chi = QuadPoly::new(rat_int(2), Rat::zero(), Rat::zero());
        assert!(matches!(
            CrfTriple::new(t.h0.clone(), t.h1.clone(), t.h2.clone(), wrong_chi),
            Err(CrfError::EulerMismatch { .. })
        ));
    }
}
