//! Numerical invariants of simple semihomogeneous bundles `E_{λl}` on a
//! polarized abelian surface of type `(1,d)`: torsion counts, rank, Euler
//! characteristic, Chern vectors, and the roots of twisted Hilbert
//! polynomials.

use crate::exact::{QuadVal, Rat};
use crate::thresholds::PolarizedPair;
use num::{BigInt, Integer, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SemihomogError {
    #[error("slope numerator must be nonzero")]
    ZeroSlope,
    #[error("slope denominator must be nonzero")]
    ZeroDenominator,
    #[error("Hodge index violated: (l·n)^2 = {ln_sq} < (l^2)(n^2) = {product}")]
    HodgeViolation { ln_sq: BigInt, product: BigInt },
}

/// Reduced slope `λ = a/b` with `b > 0` and `gcd(|a|, b) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slope {
    a: BigInt,
    b: BigInt,
}

impl Slope {
    pub fn new(a: i64, b: i64) -> Result<Self, SemihomogError> {
        Self::from_bigints(BigInt::from(a), BigInt::from(b))
    }

    pub fn from_bigints(a: BigInt, b: BigInt) -> Result<Self, SemihomogError> {
        if b.is_zero() {
            return Err(SemihomogError::ZeroDenominator);
        }
        let g = a.gcd(&b);
        let (mut a, mut b) = (a / &g, b / g);
        if b.is_negative() {
            a = -a;
            b = -b;
        }
        Ok(Slope { a, b })
    }

    pub fn from_rat(r: &Rat) -> Self {
        // Ratio is already reduced with a positive denominator.
        Slope {
            a: r.numer().clone(),
            b: r.denom().clone(),
        }
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn as_rat(&self) -> Rat {
        Rat::new(self.a.clone(), self.b.clone())
    }
}

/// `u_l(a, b)` for type `(1,d)`: the number of elements of
/// `Z/a ⊕ Z/ad` killed by `b`, computed as `gcd(|a|, b) · gcd(|a|d, b)`.
///
/// The pair is *not* reduced first; rank and Euler characteristic are
/// insensitive to common factors, but `u` itself is not.
pub fn torsion_count_u_raw(a: &BigInt, b: &BigInt, d: u64) -> Result<BigInt, SemihomogError> {
    if a.is_zero() {
        return Err(SemihomogError::ZeroSlope);
    }
    if b.is_zero() || b.is_negative() {
        return Err(SemihomogError::ZeroDenominator);
    }
    let a_abs = a.abs();
    Ok(a_abs.gcd(b) * (a_abs * BigInt::from(d)).gcd(b))
}

/// `u_l` at a reduced slope.
pub fn torsion_count_u(lam: &Slope, d: u64) -> Result<BigInt, SemihomogError> {
    torsion_count_u_raw(&lam.a, &lam.b, d)
}

/// Extension hook for general type `(d1, d2)`:
/// `u = gcd(a d1, b) · gcd(a d2, b)`. Only the `(1,d)` specialization is
/// backed by the closed-form analysis; this variant is validated against
/// the enumeration oracle alone.
pub fn torsion_count_u_general(
    a: &BigInt,
    b: &BigInt,
    d1: u64,
    d2: u64,
) -> Result<BigInt, SemihomogError> {
    if a.is_zero() {
        return Err(SemihomogError::ZeroSlope);
    }
    if b.is_zero() || b.is_negative() {
        return Err(SemihomogError::ZeroDenominator);
    }
    let a_abs = a.abs();
    Ok((&a_abs * BigInt::from(d1)).gcd(b) * (a_abs * BigInt::from(d2)).gcd(b))
}

/// Chern vector `(rank, c1, ch2)` of a sheaf on an abelian surface, with
/// `c1` over a rank-2 basis. In the single-class setting the first
/// coordinate is the rational multiple of `l` and the second is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernVector {
    pub rank: BigInt,
    pub c1: [Rat; 2],
    pub ch2: Rat,
}

impl ChernVector {
    pub fn new_single_class(rank: BigInt, c1_l: Rat, ch2: Rat) -> Self {
        ChernVector {
            rank,
            c1: [c1_l, Rat::zero()],
            ch2,
        }
    }

    /// The `l`-coefficient of `c1` in the single-class setting.
    pub fn c1_l_coeff(&self) -> &Rat {
        debug_assert!(self.c1[1].is_zero());
        &self.c1[0]
    }
}

impl Serialize for ChernVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ChernVector", 3)?;
        st.serialize_field("rank", &self.rank.to_string())?;
        st.serialize_field("c1", &[self.c1[0].to_string(), self.c1[1].to_string()])?;
        st.serialize_field("ch2", &self.ch2.to_string())?;
        st.end()
    }
}

/// Chern vector of `E_{(a/b) l}` on a type-`(1,d)` surface, accepting a
/// non-reduced pair. With `g = 2` and `χ(l) = d`:
/// `rank = b^2/u`, `ch2 = a^2 d / u`, `c1 = rank · (a/b) · l`.
pub fn chern_vector_raw(a: &BigInt, b: &BigInt, d: u64) -> Result<ChernVector, SemihomogError> {
    let u = torsion_count_u_raw(a, b, d)?;
    let rank_rat = Rat::new(b * b, u.clone());
    assert!(
        rank_rat.is_integer(),
        "u must divide b^2 (a = {a}, b = {b}, d = {d})"
    );
    let rank = rank_rat.to_integer();
    let ch2 = Rat::new(a * a * BigInt::from(d), u);
    assert!(
        ch2.is_integer(),
        "χ must be integral (a = {a}, b = {b}, d = {d})"
    );
    let c1 = Rat::new(a.clone(), b.clone()) * Rat::from_integer(rank.clone());
    Ok(ChernVector::new_single_class(rank, c1, ch2))
}

/// Chern vector at a reduced slope.
pub fn chern_vector(lam: &Slope, d: u64) -> Result<ChernVector, SemihomogError> {
    chern_vector_raw(&lam.a, &lam.b, d)
}

/// Roots `s_±(G, n) = λ ((l·n) ± sqrt((l·n)^2 - (l^2)(n^2))) / (n^2)` of the
/// twisted Hilbert polynomial of `G = E_{-λl}`, returned as `(s_-, s_+)`.
pub fn roots_for_triple(
    lam_abs: &Rat,
    l_sq: u64,
    ln: u64,
    n_sq: u64,
) -> Result<(QuadVal, QuadVal), SemihomogError> {
    assert!(lam_abs.is_positive(), "roots_s takes the positive λ of E_{{-λl}}");
    let ln_sq = BigInt::from(ln) * BigInt::from(ln);
    let product = BigInt::from(l_sq) * BigInt::from(n_sq);
    if ln_sq < product {
        return Err(SemihomogError::HodgeViolation { ln_sq, product });
    }
    let disc = ln_sq - product;
    let n_sq_rat = Rat::from_integer(BigInt::from(n_sq));
    let p = lam_abs * Rat::from_integer(BigInt::from(ln)) / &n_sq_rat;
    let q = lam_abs / n_sq_rat;
    let s_plus = QuadVal::new(p.clone(), q.clone(), disc.clone());
    let s_minus = QuadVal::new(p, -q, disc);
    Ok((s_minus, s_plus))
}

pub fn roots_s(
    lam_abs: &Rat,
    pair: &PolarizedPair,
) -> Result<(QuadVal, QuadVal), SemihomogError> {
    roots_for_triple(lam_abs, pair.l_sq(), pair.ln(), pair.n_sq())
}

/// Intersection pairing of two `c1` vectors over a Gram matrix.
pub fn gram_pair(gram: &[[i64; 2]; 2], u: &[Rat; 2], v: &[Rat; 2]) -> Rat {
    let mut acc = Rat::zero();
    for i in 0..2 {
        for j in 0..2 {
            acc += Rat::from_integer(BigInt::from(gram[i][j])) * &u[i] * &v[j];
        }
    }
    acc
}

/// `χ(E^∨ ⊗ F)` on an abelian surface by Hirzebruch--Riemann--Roch:
/// `rank(E) ch2(F) + rank(F) ch2(E) - c1(E)·c1(F)`.
pub fn hom_euler(v_e: &ChernVector, v_f: &ChernVector, gram: &[[i64; 2]; 2]) -> BigInt {
    let chi = Rat::from_integer(v_e.rank.clone()) * &v_f.ch2
        + Rat::from_integer(v_f.rank.clone()) * &v_e.ch2
        - gram_pair(gram, &v_e.c1, &v_f.c1);
    assert!(chi.is_integer(), "hom Euler characteristic must be integral");
    chi.to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{big, half_minus, half_plus, rat, rat_int};
    use crate::pell::{fundamental_solution, pell_for_type, TypePellData};

    #[test]
    fn torsion_count_examples() {
        // λ = 2/3, d = 3
        let lam = Slope::new(2, 3).unwrap();
        assert_eq!(torsion_count_u(&lam, 3).unwrap(), big(3));
        // λ = 1 has u = 1 for every d
        let one = Slope::new(1, 1).unwrap();
        for d in 1..=10 {
            assert_eq!(torsion_count_u(&one, d).unwrap(), big(1));
        }
        // raw Lemma pair (y0, (x0+1)/2) for d = 3: u = (x0+1)/2 = 4,
        // while the reduced slope 1/2 gives u = 1
        assert_eq!(torsion_count_u_raw(&big(2), &big(4), 3).unwrap(), big(4));
        let reduced = Slope::new(2, 4).unwrap();
        assert_eq!(reduced.as_rat(), rat(1, 2));
        assert_eq!(torsion_count_u(&reduced, 3).unwrap(), big(1));
    }

    #[test]
    fn torsion_zero_slope_rejected() {
        assert_eq!(
            torsion_count_u_raw(&big(0), &big(3), 2),
            Err(SemihomogError::ZeroSlope)
        );
        assert!(Slope::new(1, 0).is_err());
    }

    #[test]
    fn chern_vector_examples() {
        // d = 3, raw pair (4, 8): v = (4, 2·l, 3)
        let v = chern_vector_raw(&big(4), &big(8), 3).unwrap();
        assert_eq!(v.rank, big(4));
        assert_eq!(v.c1_l_coeff(), &rat_int(2));
        assert_eq!(v.ch2, rat_int(3));
        // d = 2, λ = -1: the line bundle of class -l
        let v = chern_vector(&Slope::new(-1, 1).unwrap(), 2).unwrap();
        assert_eq!((v.rank, v.c1[0].clone(), v.ch2), (big(1), rat_int(-1), rat_int(2)));
        // d = 2, λ = -1/2
        let v = chern_vector(&Slope::new(-1, 2).unwrap(), 2).unwrap();
        assert_eq!((v.rank, v.c1[0].clone(), v.ch2), (big(2), rat_int(-1), rat_int(1)));
    }

    #[test]
    fn lemma_vectors_and_point_sheaf_difference() {
        for d in 2u64..=100 {
            let sol = match pell_for_type(d).unwrap() {
                TypePellData::Pell(s) => s,
                TypePellData::Square(_) => continue,
            };
            let half_plus = half_plus(&sol.x);
            let half_minus = half_minus(&sol.x);
            let v_f = chern_vector_raw(&sol.y, &half_plus, d).unwrap();
            let v_e = chern_vector_raw(&sol.y, &half_minus, d).unwrap();
            assert_eq!(v_f.rank, half_plus, "d = {d}");
            assert_eq!(v_f.c1_l_coeff(), &Rat::from_integer(sol.y.clone()));
            assert_eq!(v_f.ch2, Rat::from_integer(half_minus.clone()));
            assert_eq!(v_e.rank, half_minus, "d = {d}");
            assert_eq!(v_e.ch2, Rat::from_integer(half_plus));
            // v(F) - v(E) = (1, 0, -1) = v(ideal sheaf of a point)
            assert_eq!(&v_f.rank - &v_e.rank, big(1));
            assert_eq!(&v_f.c1[0] - &v_e.c1[0], Rat::zero());
            assert_eq!(&v_f.ch2 - &v_e.ch2, rat_int(-1));
        }
    }

    #[test]
    fn discriminant_vanishes() {
        for d in 2u64..=10 {
            for (a, b) in [(1i64, 1i64), (-1, 2), (2, 3), (-3, 4), (5, 2)] {
                let lam = Slope::new(a, b).unwrap();
                let v = chern_vector(&lam, d).unwrap();
                let gram = [[2 * d as i64, 0], [0, -2]];
                let c1_sq = gram_pair(&gram, &v.c1, &v.c1);
                assert_eq!(
                    c1_sq,
                    rat_int(2) * Rat::from_integer(v.rank.clone()) * &v.ch2,
                    "d = {d}, λ = {a}/{b}"
                );
            }
        }
    }

    #[test]
    fn roots_examples() {
        // λ = 1/2, pair (4, 12, 34): s+ = (6 + sqrt 2)/34
        let (_, s_plus) = roots_for_triple(&rat(1, 2), 4, 12, 34).unwrap();
        assert_eq!(s_plus, QuadVal::new(rat(6, 34), rat(1, 34), big(2)));
        // n = l: double root at λ
        let (s_minus, s_plus) = roots_for_triple(&rat_int(1), 4, 4, 4).unwrap();
        assert_eq!(s_minus, QuadVal::one());
        assert_eq!(s_plus, QuadVal::one());
        // λ = 1 (= 2y0/(x0-1) for d = 2): s- = (6 - sqrt 2)/17
        let (s_minus, _) = roots_for_triple(&rat_int(1), 4, 12, 34).unwrap();
        assert_eq!(s_minus, QuadVal::new(rat(6, 17), rat(-1, 17), big(2)));
    }

    #[test]
    fn roots_hodge_violation() {
        let err = roots_for_triple(&rat_int(1), 4, 3, 10).unwrap_err();
        assert!(matches!(err, SemihomogError::HodgeViolation { .. }));
    }

    #[test]
    fn hom_euler_examples() {
        let gram_d2 = [[4, 0], [0, -2]];
        let v_e = ChernVector::new_single_class(big(1), rat_int(-1), rat_int(2));
        let v_f = ChernVector::new_single_class(big(2), rat_int(-1), rat_int(1));
        assert_eq!(hom_euler(&v_e, &v_f, &gram_d2), big(1));
        let trivial = ChernVector::new_single_class(big(1), Rat::zero(), Rat::zero());
        assert_eq!(hom_euler(&trivial, &trivial, &gram_d2), big(0));
        let gram_d3 = [[6, 0], [0, -2]];
        let v_e = ChernVector::new_single_class(big(3), rat_int(-2), rat_int(4));
        let v_f = ChernVector::new_single_class(big(4), rat_int(-2), rat_int(3));
        assert_eq!(hom_euler(&v_e, &v_f, &gram_d3), big(1));
    }

    #[test]
    fn hom_euler_is_one_for_the_resolution_pair() {
        for d in 2u64..=100 {
            let sol = match fundamental_solution(4 * d) {
                Ok(s) => s,
                Err(_) => continue, // perfect square d
            };
            let half_plus = half_plus(&sol.x);
            let half_minus = half_minus(&sol.x);
            let mut v_e = chern_vector_raw(&sol.y, &half_minus, d).unwrap();
            let mut v_f = chern_vector_raw(&sol.y, &half_plus, d).unwrap();
            // E_{-λl}: flip c1
            v_e.c1[0] = -v_e.c1[0].clone();
            v_f.c1[0] = -v_f.c1[0].clone();
            let gram = [[2 * d as i64, 0], [0, -2]];
            assert_eq!(hom_euler(&v_e, &v_f, &gram), big(1), "d = {d}");
        }
    }
}
