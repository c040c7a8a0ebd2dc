//! Rank-2 Néron--Severi lattice arithmetic: Gram matrices, the ampleness
//! surrogate, the hyperbolic-sum realization of the `(1,17)` irrational
//! example, destabilizing-candidate enumeration, and the search for pairs
//! with irrational thresholds.

use crate::exact::{half_minus, half_plus, perfect_square, Rat};
use crate::pell::{pell_for_type, TypePellData};
use crate::thresholds::{beta_pair, PairError, PolarizedPair, ThresholdResult};
use num::{BigInt, Integer, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum LatticeError {
    #[error("gram matrix must be symmetric")]
    NotSymmetric,
    #[error("gram diagonal must be even (classes on an abelian surface have even self-intersection)")]
    OddDiagonal,
    #[error("gram determinant must be negative for signature (1,1), got {det}")]
    NotHyperbolic { det: i128 },
    #[error("ampleness check failed: {which} = {value} must be positive")]
    NotAmple { which: &'static str, value: BigInt },
    #[error("self-intersection {which} = {value} must be even")]
    OddSelfIntersection { which: &'static str, value: BigInt },
    #[error("d = {d} is a perfect square; Pell data required")]
    PerfectSquareType { d: u64 },
    #[error("destabilization enumeration infeasible: rank bound {r_max} too large")]
    EnumerationTooLarge { r_max: BigInt },
    #[error(transparent)]
    Pair(#[from] PairError),
}

/// Rank-2 Néron--Severi lattice of signature `(1,1)` with even diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NSLattice {
    gram: [[i64; 2]; 2],
}

/// Integer class over the lattice basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassVec(pub i64, pub i64);

impl NSLattice {
    pub fn new(gram: [[i64; 2]; 2]) -> Result<Self, LatticeError> {
        if gram[0][1] != gram[1][0] {
            return Err(LatticeError::NotSymmetric);
        }
        if gram[0][0] % 2 != 0 || gram[1][1] % 2 != 0 {
            return Err(LatticeError::OddDiagonal);
        }
        let det = (gram[0][0] as i128) * (gram[1][1] as i128)
            - (gram[0][1] as i128) * (gram[1][0] as i128);
        if det >= 0 {
            return Err(LatticeError::NotHyperbolic { det });
        }
        Ok(NSLattice { gram })
    }

    pub fn gram(&self) -> &[[i64; 2]; 2] {
        &self.gram
    }

    /// Intersection number of two classes.
    pub fn ip(&self, u: &ClassVec, v: &ClassVec) -> BigInt {
        let (u0, u1) = (BigInt::from(u.0), BigInt::from(u.1));
        let (v0, v1) = (BigInt::from(v.0), BigInt::from(v.1));
        BigInt::from(self.gram[0][0]) * &u0 * &v0
            + BigInt::from(self.gram[0][1]) * (&u0 * &v1 + &u1 * &v0)
            + BigInt::from(self.gram[1][1]) * u1 * v1
    }
}

fn positive_u64(value: BigInt, which: &'static str) -> Result<u64, LatticeError> {
    use num::ToPrimitive;
    if !value.is_positive() {
        return Err(LatticeError::NotAmple { which, value });
    }
    value
        .to_u64()
        .ok_or(LatticeError::NotAmple { which, value: BigInt::zero() })
}

/// Builds the intersection data of `(l, n)`, checking the ampleness
/// surrogate (`l^2 > 0`, `n^2 > 0`, `l·n > 0` with `l` ample) and evenness.
pub fn pair_from_classes(
    lattice: &NSLattice,
    l: &ClassVec,
    n: &ClassVec,
) -> Result<PolarizedPair, LatticeError> {
    let l_sq = lattice.ip(l, l);
    let n_sq = lattice.ip(n, n);
    let ln = lattice.ip(l, n);
    if l_sq.is_odd() {
        return Err(LatticeError::OddSelfIntersection {
            which: "(l^2)",
            value: l_sq,
        });
    }
    if n_sq.is_odd() {
        return Err(LatticeError::OddSelfIntersection {
            which: "(n^2)",
            value: n_sq,
        });
    }
    let l_sq = positive_u64(l_sq, "(l^2)")?;
    let ln = positive_u64(ln, "(l·n)")?;
    let n_sq = positive_u64(n_sq, "(n^2)")?;
    Ok(PolarizedPair::new(l_sq, ln, n_sq)?)
}

/// One hit of the irrational-threshold search.
#[derive(Debug, Clone, Serialize)]
pub struct SearchHit {
    pub l_sq: u64,
    pub ln: u64,
    pub n_sq: u64,
    #[serde(flatten)]
    pub result: ThresholdResult,
}

/// Enumerates intersection triples `(2d, l·n, n^2)` with `l·n <= bound`,
/// `n^2 <= bound` even, passing Hodge, ampleness, and the threshold
/// hypothesis. By default only pairs with irrational thresholds (discriminant
/// not a perfect square) are returned; hits are sorted by `(n^2, l·n)`.
pub fn search_irrational(
    d: u64,
    bound: u64,
    include_rational: bool,
) -> Result<Vec<SearchHit>, LatticeError> {
    let sol = match pell_for_type(d).map_err(PairError::from)? {
        TypePellData::Pell(s) => s,
        TypePellData::Square(_) => return Err(LatticeError::PerfectSquareType { d }),
    };
    let x0_sq = &sol.x * &sol.x;
    let two_y0_sq = BigInt::from(2) * &sol.y * &sol.y;
    let hits: Vec<SearchHit> = (1..=bound / 2)
        .into_par_iter()
        .flat_map_iter(|half_n_sq| {
            let n_sq = 2 * half_n_sq;
            let x0_sq = x0_sq.clone();
            let two_y0_sq = two_y0_sq.clone();
            (1..=bound).filter_map(move |ln| {
                let ln_sq = (ln as u128) * (ln as u128);
                if ln_sq < (2 * d as u128) * (n_sq as u128) {
                    return None; // Hodge
                }
                let margin = &x0_sq * BigInt::from(n_sq)
                    - &two_y0_sq * BigInt::from(ln) * BigInt::from(ln);
                if margin.is_negative() {
                    return None; // hypothesis
                }
                let disc = BigInt::from(ln_sq - (2 * d as u128) * (n_sq as u128));
                if !include_rational && perfect_square(&disc).is_some() {
                    return None;
                }
                let pair = PolarizedPair::new(2 * d, ln, n_sq).expect("filtered triple is valid");
                let result = beta_pair(&pair).expect("hypothesis margin checked");
                Some(SearchHit {
                    l_sq: 2 * d,
                    ln,
                    n_sq,
                    result,
                })
            })
        })
        .collect();
    let mut hits = hits;
    hits.sort_by_key(|h| (h.n_sq, h.ln));
    Ok(hits)
}

/// Certificate for the `(1,17)` lattice realization: the rank-6 hyperbolic
/// data, the induced rank-2 sublattice, the classes, their intersections,
/// and the resulting thresholds.
#[derive(Debug, Clone, Serialize)]
pub struct CorollaryCertificate {
    /// Basis vectors of the sublattice inside the rank-6 hyperbolic sum.
    pub h1_ambient: [i64; 6],
    pub h2_ambient: [i64; 6],
    pub ns_gram: [[i64; 2]; 2],
    pub l: ClassVec,
    pub n: ClassVec,
    pub l_sq: u64,
    pub ln: u64,
    pub n_sq: u64,
    /// Determinant of the coordinate matrix of `(l, n)` over `(h1, h2)`;
    /// `±1` certifies `Z·l ⊕ Z·n = Z·h1 ⊕ Z·h2`.
    pub basis_det: i64,
    pub threshold: ThresholdResult,
}

fn hyperbolic_sum_ip(u: &[i64; 6], v: &[i64; 6]) -> i64 {
    // three hyperbolic planes: (e1·e2) = (e3·e4) = (e5·e6) = 1
    (0..3)
        .map(|k| u[2 * k] * v[2 * k + 1] + u[2 * k + 1] * v[2 * k])
        .sum()
}

/// Builds the Gram matrix `[[2,0],[0,-4]]` from the primitive vectors
/// `e1+e2` and `e3-2e4` of the rank-6 hyperbolic sum, realizes
/// `l = 2h1 + h2`, `n = 5h1 + 2h2`, and certifies the intersection data
/// `(4, 12, 34)` together with the basis change.
pub fn realize_corollary_lattice() -> CorollaryCertificate {
    let h1_ambient = [1i64, 1, 0, 0, 0, 0];
    let h2_ambient = [0i64, 0, 1, -2, 0, 0];
    let ns_gram = [
        [
            hyperbolic_sum_ip(&h1_ambient, &h1_ambient),
            hyperbolic_sum_ip(&h1_ambient, &h2_ambient),
        ],
        [
            hyperbolic_sum_ip(&h2_ambient, &h1_ambient),
            hyperbolic_sum_ip(&h2_ambient, &h2_ambient),
        ],
    ];
    let lattice = NSLattice::new(ns_gram).expect("hyperbolic-sum sublattice has signature (1,1)");
    let l = ClassVec(2, 1);
    let n = ClassVec(5, 2);
    let pair = pair_from_classes(&lattice, &l, &n).expect("ample pair");
    let threshold = beta_pair(&pair).expect("hypothesis holds for (4,12,34)");
    let basis_det = l.0 * n.1 - l.1 * n.0;
    assert_eq!(basis_det.abs(), 1, "coordinate matrix must be unimodular");
    CorollaryCertificate {
        h1_ambient,
        h2_ambient,
        ns_gram,
        l,
        n,
        l_sq: pair.l_sq(),
        ln: pair.ln(),
        n_sq: pair.n_sq(),
        basis_det,
        threshold,
    }
}

/// Numerical candidate for a destabilizing image sheaf: rank `r`, degree
/// `(l·h)`, self-intersection `(h^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DestabCandidate {
    pub r: u64,
    pub lh: u64,
    pub h_sq: i64,
    /// Whether this is the forced solution `(y0, x0, 2y0^2)`.
    pub trivial: bool,
}

/// Enumerates every integer triple `(r, l·h, h^2)` satisfying the five
/// destabilization constraints:
/// `1 <= r < (x0-1)/2`, `(x0-1)/y0 < (l·h)/r < (x0+1)/y0`,
/// `2d(h^2) <= (l·h)^2`, and the two nef-square lower bounds. The output is
/// complete: the nef conditions pin `h^2` to a closed interval per `(r, l·h)`.
pub fn destab_candidates(d: u64) -> Result<Vec<DestabCandidate>, LatticeError> {
    let sol = match pell_for_type(d).map_err(PairError::from)? {
        TypePellData::Pell(s) => s,
        TypePellData::Square(_) => return Err(LatticeError::PerfectSquareType { d }),
    };
    use num::ToPrimitive;
    let half_minus = half_minus(&sol.x);
    let r_max = &half_minus - 1; // r < (x0-1)/2
    if r_max > BigInt::from(10_000_000u64) {
        return Err(LatticeError::EnumerationTooLarge { r_max });
    }
    let r_max = r_max.to_u64().expect("bounded above");
    let x0 = sol.x.to_u64().expect("x0 fits once r_max does");
    let y0 = sol.y.to_u64().expect("y0 < x0");
    let trivial = (y0, x0, 2 * y0 * y0);
    let mut out = Vec::new();
    for r in 1..=r_max {
        // strict bounds r(x0-1)/y0 < lh < r(x0+1)/y0
        let lo = (r as u128) * ((x0 - 1) as u128);
        let hi = (r as u128) * ((x0 + 1) as u128);
        let lh_min = lo / (y0 as u128) + 1;
        let lh_max = (hi - 1) / (y0 as u128);
        for lh in lh_min..=lh_max {
            let lh_b = BigInt::from(lh);
            let r_b = BigInt::from(r);
            // Hodge: h^2 <= lh^2/(2d)
            let upper = Rat::new(&lh_b * &lh_b, BigInt::from(2 * d));
            // nef squares:
            //   h^2 >= (4 y0 r lh - 2 r^2 (x0 ∓ 1)) / (x0 ± 1)
            let common = BigInt::from(4) * BigInt::from(y0) * &r_b * &lh_b;
            let l1 = Rat::new(
                &common - BigInt::from(2) * &r_b * &r_b * BigInt::from(x0 - 1),
                BigInt::from(x0 + 1),
            );
            let l2 = Rat::new(
                &common - BigInt::from(2) * &r_b * &r_b * BigInt::from(x0 + 1),
                BigInt::from(x0 - 1),
            );
            let lower = if l1 >= l2 { l1 } else { l2 };
            let mut h_sq = lower.ceil().to_integer();
            if h_sq.is_odd() {
                h_sq += 1;
            }
            let h_max = upper.floor().to_integer();
            while h_sq <= h_max {
                let r_u = r;
                let lh_u = lh.to_u64().expect("lh bounded by r(x0+1)/y0");
                let h_i = h_sq.to_i64().expect("h^2 within i64 for feasible d");
                out.push(DestabCandidate {
                    r: r_u,
                    lh: lh_u,
                    h_sq: h_i,
                    trivial: (r_u, lh_u, h_i as u64) == trivial && h_i >= 0,
                });
                h_sq += 2;
            }
        }
    }
    Ok(out)
}

/// The gcd decomposition certifying low-degree elliptic curves behind the
/// trivial destabilization solution: `A = gcd((x0+1)/2, d)`,
/// `B = gcd((x0-1)/2, d)` with `A·B = d` and
/// `min(A,B) <= sqrt(d) < (x0-1)/y0`.
#[derive(Debug, Clone, Serialize)]
pub struct TrivialDecomposition {
    #[serde(with = "crate::exact::bigint_string")]
    pub a: BigInt,
    #[serde(with = "crate::exact::bigint_string")]
    pub b: BigInt,
    #[serde(with = "crate::exact::bigint_string")]
    pub min_ab: BigInt,
    /// `(x0-1)/y0`, the curve-degree bound the minimum stays under.
    #[serde(with = "crate::exact::rat_string")]
    pub curve_degree_bound: Rat,
}

pub fn trivial_solution_decomposition(d: u64) -> Result<TrivialDecomposition, LatticeError> {
    let sol = match pell_for_type(d).map_err(PairError::from)? {
        TypePellData::Pell(s) => s,
        TypePellData::Square(_) => return Err(LatticeError::PerfectSquareType { d }),
    };
    let half_plus = half_plus(&sol.x);
    let half_minus = half_minus(&sol.x);
    let db = BigInt::from(d);
    let a = half_plus.gcd(&db);
    let b = half_minus.gcd(&db);
    assert_eq!(&a * &b, db, "A·B = d must hold (d = {d})");
    let min_ab = a.clone().min(b.clone());
    // min(A,B) <= sqrt(d): exact squaring
    assert!(
        &min_ab * &min_ab <= BigInt::from(d),
        "min(A,B) <= sqrt(d) must hold (d = {d})"
    );
    // sqrt(d) < (x0-1)/y0: exact squaring
    assert!(
        BigInt::from(d) * &sol.y * &sol.y < &(&sol.x - 1) * &(&sol.x - 1),
        "sqrt(d) < (x0-1)/y0 must hold (d = {d})"
    );
    let curve_degree_bound = Rat::new(&sol.x - 1, sol.y.clone());
    assert!(
        Rat::from_integer(min_ab.clone()) < curve_degree_bound,
        "min(A,B) < (x0-1)/y0 must hold (d = {d})"
    );
    Ok(TrivialDecomposition {
        a,
        b,
        min_ab,
        curve_degree_bound,
    })
}
