//! Exact arithmetic kernel: arbitrary-precision rationals and real quadratic
//! irrationals `p + q*sqrt(d)` with a squarefree radicand.
//!
//! Values are kept in a canonical form (reduced rationals, squarefree
//! radicand, radical coefficient zero iff the value is rational), so
//! rationality testing is a field check and structural equality coincides
//! with numerical equality. No floating point is used anywhere; decimal
//! output is produced with exact integer square roots.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

/// Exact rational number, always stored reduced with a positive denominator.
pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// `(x + 1)/2` for odd `x`.
pub fn half_plus(x: &BigInt) -> BigInt {
    (x + 1u32) / 2u32
}

/// `(x - 1)/2` for odd `x`.
pub fn half_minus(x: &BigInt) -> BigInt {
    (x - 1u32) / 2u32
}

/// `Some(s)` iff `n == s*s` with `s >= 0`.
pub fn perfect_square(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    if &(&s * &s) == n {
        Some(s)
    } else {
        None
    }
}

/// Writes `n = s^2 * d` with `d` squarefree and returns `(s, d)`.
///
/// Trial division runs to the cube root of the remaining cofactor; past
/// that point at most two prime factors remain, so a final perfect-square
/// test settles the decomposition.
pub fn squarefree_decompose(n: &BigInt) -> (BigInt, BigInt) {
    assert!(!n.is_negative(), "radicand must be non-negative");
    if n.is_zero() {
        return (BigInt::one(), BigInt::zero());
    }
    let mut m = n.clone();
    let mut s = BigInt::one();
    let mut d = BigInt::one();
    let mut f = BigInt::from(2);
    while &(&f * &f * &f) <= &m {
        if m.is_multiple_of(&f) {
            let mut e = 0u32;
            while m.is_multiple_of(&f) {
                m /= &f;
                e += 1;
            }
            s *= f.pow(e / 2);
            if e % 2 == 1 {
                d *= &f;
            }
        }
        f += if f == BigInt::from(2) { 1 } else { 2 };
    }
    if !m.is_one() {
        if let Some(r) = perfect_square(&m) {
            s *= r;
        } else {
            d *= &m;
        }
    }
    (s, d)
}

/// Element `p + q*sqrt(d)` of a real quadratic field, or a plain rational
/// when `q = 0` (in which case `d = 0` as well). `d` is squarefree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadVal {
    p: Rat,
    q: Rat,
    d: BigInt,
}

fn sign_rat(r: &Rat) -> Ordering {
    if r.is_zero() {
        Ordering::Equal
    } else if r.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

/// Sign of `r + s*sqrt(d)` for `d >= 0` (not necessarily squarefree), by
/// at most one exact squaring.
fn sign_two_term(r: &Rat, s: &Rat, d: &BigInt) -> Ordering {
    if s.is_zero() || d.is_zero() {
        return sign_rat(r);
    }
    if r.is_zero() {
        return sign_rat(s);
    }
    match (r.is_positive(), s.is_positive()) {
        (true, true) => Ordering::Greater,
        (false, false) => Ordering::Less,
        (true, false) => (r * r).cmp(&(s * s * Rat::from_integer(d.clone()))),
        (false, true) => (s * s * Rat::from_integer(d.clone())).cmp(&(r * r)),
    }
}

impl QuadVal {
    /// Canonical form of `p + q*sqrt(radicand)`: the radicand is factored as
    /// `s^2 * d` with `d` squarefree and `q*s` absorbed into the radical
    /// coefficient; perfect-square radicands collapse to a rational.
    pub fn new(p: Rat, q: Rat, radicand: BigInt) -> Self {
        assert!(
            !radicand.is_negative(),
            "negative radicand {radicand} is not a real quadratic value"
        );
        if q.is_zero() || radicand.is_zero() {
            return QuadVal {
                p,
                q: Rat::zero(),
                d: BigInt::zero(),
            };
        }
        let (s, d) = squarefree_decompose(&radicand);
        let q = q * Rat::from_integer(s);
        if d.is_one() {
            QuadVal {
                p: p + q,
                q: Rat::zero(),
                d: BigInt::zero(),
            }
        } else {
            QuadVal { p, q, d }
        }
    }

    pub fn from_rat(p: Rat) -> Self {
        QuadVal {
            p,
            q: Rat::zero(),
            d: BigInt::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat_int(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rat(Rat::from_integer(n))
    }

    /// `sqrt(n)` for a non-negative integer `n`.
    pub fn sqrt_of(n: BigInt) -> Self {
        Self::new(Rat::zero(), Rat::one(), n)
    }

    pub fn zero() -> Self {
        Self::from_rat(Rat::zero())
    }

    pub fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    pub fn rational_part(&self) -> &Rat {
        &self.p
    }

    pub fn radical_coeff(&self) -> &Rat {
        &self.q
    }

    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.q.is_zero() && self.p.is_zero()
    }

    /// The value as a rational, when it is one.
    pub fn as_rat(&self) -> Option<&Rat> {
        if self.is_rational() {
            Some(&self.p)
        } else {
            None
        }
    }

    /// Whether `self` and `other` live in a common quadratic field, i.e.
    /// addition and multiplication are defined.
    pub fn compatible(&self, other: &Self) -> bool {
        self.is_rational() || other.is_rational() || self.d == other.d
    }

    fn join_radicand(&self, other: &Self) -> BigInt {
        if self.is_rational() {
            return other.d.clone();
        }
        if other.is_rational() {
            return self.d.clone();
        }
        assert_eq!(
            self.d, other.d,
            "incompatible radicands sqrt({}) vs sqrt({}); mixing distinct \
             quadratic fields is a programming error",
            self.d, other.d
        );
        self.d.clone()
    }

    pub fn sign(&self) -> Ordering {
        sign_two_term(&self.p, &self.q, &self.d)
    }

    pub fn abs(&self) -> Self {
        if self.sign() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        QuadVal {
            p: &self.p * r,
            q: &self.q * r,
            d: if self.q.is_zero() {
                BigInt::zero()
            } else {
                self.d.clone()
            },
        }
    }

    pub fn add_rat(&self, r: &Rat) -> Self {
        QuadVal {
            p: &self.p + r,
            q: self.q.clone(),
            d: self.d.clone(),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero QuadVal");
        if self.is_rational() {
            return Self::from_rat(self.p.recip());
        }
        // 1/(p + q sqrt d) = (p - q sqrt d) / (p^2 - q^2 d)
        let norm = &self.p * &self.p - &self.q * &self.q * Rat::from_integer(self.d.clone());
        debug_assert!(!norm.is_zero());
        QuadVal {
            p: &self.p / &norm,
            q: -(&self.q / &norm),
            d: self.d.clone(),
        }
    }

    /// `floor(self)` as an exact integer.
    pub fn floor_int(&self) -> BigInt {
        if self.is_rational() {
            return self.p.floor().to_integer();
        }
        // self = (a + b sqrt d) / m with m > 0
        let m = self.p.denom().lcm(self.q.denom());
        let a = self.p.numer() * (&m / self.p.denom());
        let b = self.q.numer() * (&m / self.q.denom());
        let rad = &b * &b * &self.d;
        let root = rad.sqrt();
        let b_sqrt = if b.is_negative() {
            // floor of a negative irrational multiple
            -&root - 1
        } else {
            root
        };
        let mut g = (a + b_sqrt).div_floor(&m);
        while self.cmp(&QuadVal::from_bigint(&g + 1)) != Ordering::Less {
            g += 1;
        }
        while self.cmp(&QuadVal::from_bigint(g.clone())) == Ordering::Less {
            g -= 1;
        }
        g
    }

    /// Decimal approximation to `sig` significant digits (display only; the
    /// exact fields are authoritative). Rounds half away from zero.
    pub fn decimal(&self, sig: usize) -> String {
        let sig = sig.max(1);
        match self.sign() {
            Ordering::Equal => return "0".to_string(),
            _ => {}
        }
        let v = self.abs();
        let mut k: u32 = sig as u32 + 5;
        let threshold = BigInt::from(10).pow(sig as u32);
        let mut t = v.scale(&Rat::from_integer(BigInt::from(10).pow(k))).floor_int();
        while t < threshold && k < 6 * (sig as u32 + 5) {
            k += sig as u32 + 5;
            t = v.scale(&Rat::from_integer(BigInt::from(10).pow(k))).floor_int();
        }
        // t / 10^k approximates |self|; round to `sig` significant digits
        let digits = t.to_string().len();
        let mut scale = k as i64;
        if digits > sig {
            let drop = (digits - sig) as u32;
            let base = BigInt::from(10).pow(drop);
            let (quot, rem) = t.div_rem(&base);
            t = quot;
            if &rem * 2 >= base {
                t += 1;
            }
            scale -= drop as i64;
            if t.to_string().len() > sig {
                // rounding carried into one more digit
                t /= 10;
                scale -= 1;
            }
        }
        let body = t.to_string();
        let mut out = String::new();
        if self.sign() == Ordering::Less {
            out.push('-');
        }
        if scale <= 0 {
            out.push_str(&body);
            for _ in 0..(-scale) {
                out.push('0');
            }
        } else if (body.len() as i64) > scale {
            let split = body.len() - scale as usize;
            out.push_str(&body[..split]);
            out.push('.');
            out.push_str(&body[split..]);
        } else {
            out.push_str("0.");
            for _ in 0..(scale - body.len() as i64) {
                out.push('0');
            }
            out.push_str(&body);
        }
        if out.contains('.') {
            while out.ends_with('0') {
                out.pop();
            }
            if out.ends_with('.') {
                out.pop();
            }
        }
        out
    }
}

impl Ord for QuadVal {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.compatible(other) {
            let d = self.join_radicand(other);
            return sign_two_term(&(&self.p - &other.p), &(&self.q - &other.q), &d);
        }
        // Distinct radicands: sign of r + (qa sqrt(Da) - qb sqrt(Db)).
        let r = &self.p - &other.p;
        let (qa, qb) = (&self.q, &other.q);
        let s_sign = match (qa.is_positive(), qb.is_positive()) {
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            _ => {
                let lhs = qa * qa * Rat::from_integer(self.d.clone());
                let rhs = qb * qb * Rat::from_integer(other.d.clone());
                if qa.is_positive() {
                    lhs.cmp(&rhs)
                } else {
                    rhs.cmp(&lhs)
                }
            }
        };
        if s_sign == Ordering::Equal {
            return sign_rat(&r);
        }
        if r.is_zero() {
            return s_sign;
        }
        let r_sign = sign_rat(&r);
        if r_sign == s_sign {
            return r_sign;
        }
        // Opposite signs: compare r^2 against
        // s^2 = qa^2 Da + qb^2 Db - 2 qa qb sqrt(Da Db), i.e. take the sign
        // of r^2 - s^2 = t + 2 qa qb sqrt(Da Db).
        let t = &r * &r
            - (qa * qa * Rat::from_integer(self.d.clone())
                + qb * qb * Rat::from_integer(other.d.clone()));
        let u = rat_int(2) * qa * qb;
        match sign_two_term(&t, &u, &(&self.d * &other.d)) {
            Ordering::Greater => r_sign,
            Ordering::Less => s_sign,
            Ordering::Equal => Ordering::Equal,
        }
    }
}

impl PartialOrd for QuadVal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Neg for &QuadVal {
    type Output = QuadVal;
    fn neg(self) -> QuadVal {
        QuadVal {
            p: -&self.p,
            q: -&self.q,
            d: self.d.clone(),
        }
    }
}

impl Neg for QuadVal {
    type Output = QuadVal;
    fn neg(self) -> QuadVal {
        -&self
    }
}

impl Add for &QuadVal {
    type Output = QuadVal;
    fn add(self, rhs: &QuadVal) -> QuadVal {
        let d = self.join_radicand(rhs);
        QuadVal::new(&self.p + &rhs.p, &self.q + &rhs.q, d)
    }
}

impl Sub for &QuadVal {
    type Output = QuadVal;
    fn sub(self, rhs: &QuadVal) -> QuadVal {
        self + &(-rhs)
    }
}

impl Mul for &QuadVal {
    type Output = QuadVal;
    fn mul(self, rhs: &QuadVal) -> QuadVal {
        let d = self.join_radicand(rhs);
        let dr = Rat::from_integer(d.clone());
        let p = &self.p * &rhs.p + &self.q * &rhs.q * dr;
        let q = &self.p * &rhs.q + &self.q * &rhs.p;
        QuadVal::new(p, q, d)
    }
}

impl Div for &QuadVal {
    type Output = QuadVal;
    fn div(self, rhs: &QuadVal) -> QuadVal {
        self * &rhs.recip()
    }
}

macro_rules! forward_value_binop {
    ($($t:ident :: $f:ident),*) => {$(
        impl $t for QuadVal {
            type Output = QuadVal;
            fn $f(self, rhs: QuadVal) -> QuadVal {
                (&self).$f(&rhs)
            }
        }
    )*};
}
forward_value_binop!(Add::add, Sub::sub, Mul::mul, Div::div);

impl fmt::Display for QuadVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.p);
        }
        if self.p.is_zero() {
            return write!(f, "{}*sqrt({})", self.q, self.d);
        }
        if self.q.is_negative() {
            write!(f, "{} - {}*sqrt({})", self.p, -&self.q, self.d)
        } else {
            write!(f, "{} + {}*sqrt({})", self.p, self.q, self.d)
        }
    }
}

impl Serialize for QuadVal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use num::ToPrimitive;
        let mut st = serializer.serialize_struct("QuadVal", 3)?;
        st.serialize_field("p", &self.p.to_string())?;
        st.serialize_field("q", &self.q.to_string())?;
        match self.d.to_u64() {
            Some(u) => st.serialize_field("d", &u)?,
            None => st.serialize_field("d", &self.d.to_string())?,
        }
        st.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RadicandRepr {
    Num(u64),
    Str(String),
}

#[derive(Deserialize)]
struct QuadValRepr {
    p: String,
    q: String,
    d: RadicandRepr,
}

impl<'de> Deserialize<'de> for QuadVal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = QuadValRepr::deserialize(deserializer)?;
        let p = Rat::from_str(&repr.p).map_err(D::Error::custom)?;
        let q = Rat::from_str(&repr.q).map_err(D::Error::custom)?;
        let d = match repr.d {
            RadicandRepr::Num(u) => BigInt::from(u),
            RadicandRepr::Str(s) => BigInt::from_str(&s).map_err(D::Error::custom)?,
        };
        if d.is_negative() {
            return Err(D::Error::custom("negative radicand"));
        }
        Ok(QuadVal::new(p, q, d))
    }
}

/// Serde adapter: `Rat` as the string `"num/den"`.
pub mod rat_string {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rat, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(deserializer)?;
        Rat::from_str(&s).map_err(D::Error::custom)
    }
}

/// Serde adapter: `BigInt` as a decimal string.
pub mod bigint_string {
    use super::*;

    pub fn serialize<S: Serializer>(n: &BigInt, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(deserializer)?;
        BigInt::from_str(&s).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qv(p: Rat, q: Rat, d: i64) -> QuadVal {
        QuadVal::new(p, q, BigInt::from(d))
    }

    #[test]
    fn normalize_corollary_value() {
        let v = qv(rat(6, 17), rat(-1, 17), 2);
        assert_eq!(v.rational_part(), &rat(6, 17));
        assert_eq!(v.radical_coeff(), &rat(-1, 17));
        assert_eq!(v.radicand(), &big(2));
        assert!(!v.is_rational());
    }

    #[test]
    fn normalize_perfect_square_radicand() {
        let v = qv(Rat::zero(), Rat::one(), 9);
        assert!(v.is_rational());
        assert_eq!(v.as_rat(), Some(&rat_int(3)));
    }

    #[test]
    fn normalize_square_factor() {
        // (12 + 2 sqrt 8) / 34 = (6 + 2 sqrt 2) / 17
        let v = qv(rat(12, 34), rat(2, 34), 8);
        assert_eq!(v, qv(rat(6, 17), rat(2, 17), 2));
        // cross-multiplied check: 17 * (12 + 2 sqrt 8) == 34 * (6 + 2 sqrt 2)
        let lhs = qv(rat_int(12), rat_int(2), 8).scale(&rat_int(17));
        let rhs = qv(rat_int(6), rat_int(2), 2).scale(&rat_int(34));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn normalize_zero_radicand() {
        let v = qv(rat(1, 2), rat(7, 3), 0);
        assert!(v.is_rational());
        assert_eq!(v.as_rat(), Some(&rat(1, 2)));
    }

    #[test]
    fn cmp_examples() {
        let beta = qv(rat(6, 17), rat(-1, 17), 2);
        assert_eq!(beta.cmp(&QuadVal::from_rat(rat(6, 17))), Ordering::Less);
        let beta0 = qv(rat(6, 34), rat(1, 34), 2);
        assert_eq!(beta0.cmp(&beta), Ordering::Less);
        assert_eq!(
            QuadVal::sqrt_of(big(2)).cmp(&QuadVal::from_rat(rat(3, 2))),
            Ordering::Less
        );
    }

    #[test]
    fn cmp_distinct_radicands() {
        // 1 + sqrt(2) < sqrt(6) < 1 + sqrt(3)
        let a = qv(rat_int(1), Rat::one(), 2);
        let b = QuadVal::sqrt_of(big(6));
        let c = qv(rat_int(1), Rat::one(), 3);
        assert_eq!(a.cmp(&b), Ordering::Less);
        assert_eq!(b.cmp(&c), Ordering::Less);
        assert_eq!(a.cmp(&c), Ordering::Less);
        // sqrt(2) + sqrt(0) vs rational mixes
        assert_eq!(
            QuadVal::sqrt_of(big(2)).cmp(&QuadVal::sqrt_of(big(3))),
            Ordering::Less
        );
    }

    #[test]
    fn arithmetic_inverse() {
        let beta = qv(rat(6, 17), rat(-1, 17), 2);
        let inv = beta.recip();
        assert_eq!(&beta * &inv, QuadVal::one());
        // (6 - sqrt 2)/17 has inverse (6 + sqrt 2)/2
        assert_eq!(inv, qv(rat(6, 2), rat(1, 2), 2));
    }

    #[test]
    #[should_panic(expected = "incompatible radicands")]
    fn mixed_radicand_addition_rejected() {
        let _ = &QuadVal::sqrt_of(big(2)) + &QuadVal::sqrt_of(big(3));
    }

    #[test]
    fn floor_values() {
        assert_eq!(QuadVal::sqrt_of(big(2)).floor_int(), big(1));
        assert_eq!((-&QuadVal::sqrt_of(big(2))).floor_int(), big(-2));
        let beta = qv(rat(6, 17), rat(-1, 17), 2);
        assert_eq!(beta.scale(&rat_int(100)).floor_int(), big(26));
        assert_eq!(QuadVal::from_rat(rat(-7, 2)).floor_int(), big(-4));
    }

    #[test]
    fn decimal_rendering() {
        let beta = qv(rat(6, 17), rat(-1, 17), 2);
        let dec = beta.decimal(20);
        assert!(dec.starts_with("0.2697521433898179383"), "{dec}");
        assert_eq!(QuadVal::from_rat(rat(1, 4)).decimal(20), "0.25");
        assert_eq!(QuadVal::from_int(3).decimal(20), "3");
        assert_eq!(QuadVal::from_rat(rat(-1, 3)).decimal(5), "-0.33333");
        let r2 = QuadVal::sqrt_of(big(2)).decimal(20);
        assert!(r2.starts_with("1.414213562373095048"), "{r2}");
    }

    #[test]
    fn serde_round_trip() {
        let beta = qv(rat(6, 17), rat(-1, 17), 2);
        let json = serde_json::to_string(&beta).unwrap();
        assert_eq!(json, r#"{"p":"6/17","q":"-1/17","d":2}"#);
        let back: QuadVal = serde_json::from_str(&json).unwrap();
        assert_eq!(back, beta);
        let rational = QuadVal::from_rat(rat(2, 3));
        let json = serde_json::to_string(&rational).unwrap();
        let back: QuadVal = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rational);
    }

    fn small_rat() -> impl Strategy<Value = Rat> {
        (-40i64..=40, 1i64..=12).prop_map(|(n, d)| rat(n, d))
    }

    fn small_quad(d: i64) -> impl Strategy<Value = QuadVal> {
        (small_rat(), small_rat()).prop_map(move |(p, q)| QuadVal::new(p, q, BigInt::from(d)))
    }

    fn any_quad() -> impl Strategy<Value = QuadVal> {
        prop_oneof![
            small_quad(0),
            small_quad(2),
            small_quad(3),
            small_quad(5),
            small_quad(12),
        ]
    }

    proptest! {
        #[test]
        fn normalization_idempotent(v in any_quad()) {
            let again = QuadVal::new(
                v.rational_part().clone(),
                v.radical_coeff().clone(),
                v.radicand().clone(),
            );
            prop_assert_eq!(again, v);
        }

        #[test]
        fn total_order(a in any_quad(), b in any_quad(), c in any_quad()) {
            // antisymmetry
            prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
            // transitivity on the sorted triple
            let mut v = vec![a, b, c];
            v.sort();
            prop_assert!(v[0] <= v[1] && v[1] <= v[2] && v[0] <= v[2]);
        }

        #[test]
        fn field_axioms_shared_radicand(
            a in small_quad(5), b in small_quad(5), c in small_quad(5)
        ) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !b.is_zero() {
                prop_assert_eq!(&(&a / &b) * &b, a);
            }
        }

        #[test]
        fn rational_inputs_agree_with_rat_arithmetic(p1 in small_rat(), p2 in small_rat()) {
            let (a, b) = (QuadVal::from_rat(p1.clone()), QuadVal::from_rat(p2.clone()));
            let sum = &a + &b;
            let product = &a * &b;
            prop_assert_eq!(sum.as_rat().cloned(), Some(&p1 + &p2));
            prop_assert_eq!(product.as_rat().cloned(), Some(&p1 * &p2));
            prop_assert_eq!(a.cmp(&b), p1.cmp(&p2));
        }

        #[test]
        fn serde_round_trip_prop(v in any_quad()) {
            let json = serde_json::to_string(&v).unwrap();
            let back: QuadVal = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(back, v);
        }

        #[test]
        fn floor_is_floor(v in any_quad()) {
            let f = v.floor_int();
            prop_assert!(QuadVal::from_bigint(f.clone()) <= v);
            prop_assert!(v < QuadVal::from_bigint(f + 1));
        }
    }
}
