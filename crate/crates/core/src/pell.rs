//! Pell's equation `x^2 - N y^2 = 1` for nonsquare `N`, solved by the
//! continued-fraction expansion of `sqrt(N)`.
//!
//! The polarization type `(1,d)` feeds in through `N = 4d`; perfect-square
//! `d` has no Pell data and is routed to a marker carrying the rational
//! threshold `1/sqrt(d)` instead.

use crate::exact::{perfect_square, QuadVal, Rat};
use num::{BigInt, Integer, One, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PellError {
    #[error("modulus {0} is a perfect square; x^2 - N y^2 = 1 has only the trivial solution")]
    PerfectSquareModulus(u64),
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(u64),
    #[error("modulus 4*{0} does not fit in 64 bits")]
    ModulusOverflow(u64),
}

/// A positive solution of `x^2 - n y^2 = 1`; `index` 1 is the fundamental
/// (minimal) solution and index `k` is its `k`-th power in the unit group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PellSolution {
    #[serde(with = "crate::exact::bigint_string")]
    pub x: BigInt,
    #[serde(with = "crate::exact::bigint_string")]
    pub y: BigInt,
    pub index: u64,
    pub n: u64,
}

impl PellSolution {
    /// Exact check of the defining equation.
    pub fn verify(&self) -> bool {
        &self.x * &self.x - BigInt::from(self.n) * &self.y * &self.y == BigInt::one()
    }
}

/// Minimal positive solution of `x^2 - n y^2 = 1` via continued fractions.
///
/// Runs the standard `(P, Q)` recurrence for the expansion of `sqrt(n)` and
/// returns the first convergent `h/k` with `h^2 - n k^2 = 1`.
pub fn fundamental_solution(n: u64) -> Result<PellSolution, PellError> {
    if n < 2 {
        return Err(PellError::ModulusTooSmall(n));
    }
    let nb = BigInt::from(n);
    if perfect_square(&nb).is_some() {
        return Err(PellError::PerfectSquareModulus(n));
    }
    let a0 = nb.sqrt();
    let mut p = BigInt::zero();
    let mut q = BigInt::one();
    let mut a = a0.clone();
    let (mut h_prev, mut h) = (BigInt::one(), a0.clone());
    let (mut k_prev, mut k) = (BigInt::zero(), BigInt::one());
    loop {
        if &h * &h - &nb * &k * &k == BigInt::one() {
            return Ok(PellSolution {
                x: h,
                y: k,
                index: 1,
                n,
            });
        }
        p = &a * &q - &p;
        q = (&nb - &p * &p) / &q;
        a = (&a0 + &p).div_floor(&q);
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
}

/// The `k`-th positive solution, i.e. `x_k + y_k sqrt(n) = (x_1 + y_1 sqrt(n))^k`.
pub fn nth_solution(fund: &PellSolution, k: u64) -> PellSolution {
    assert!(k >= 1, "solution index starts at 1");
    assert_eq!(
        fund.index, 1,
        "nth_solution must be seeded with the fundamental solution"
    );
    debug_assert!(fund.verify());
    let nb = BigInt::from(fund.n);
    let (mut x, mut y) = (fund.x.clone(), fund.y.clone());
    for _ in 1..k {
        let x_next = &fund.x * &x + &nb * &fund.y * &y;
        let y_next = &fund.x * &y + &fund.y * &x;
        x = x_next;
        y = y_next;
    }
    PellSolution {
        x,
        y,
        index: k,
        n: fund.n,
    }
}

/// Marker for a perfect-square type invariant `d = root^2`, where the
/// principal threshold `1/sqrt(d) = 1/root` is rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareTypeMarker {
    pub d: u64,
    pub root: u64,
}

impl SquareTypeMarker {
    /// The rational threshold `1/sqrt(d)`.
    pub fn beta(&self) -> QuadVal {
        QuadVal::from_rat(Rat::new(BigInt::one(), BigInt::from(self.root)))
    }
}

/// Pell data of a polarization of type `(1,d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypePellData {
    Square(SquareTypeMarker),
    Pell(PellSolution),
}

impl TypePellData {
    pub fn pell(&self) -> Option<&PellSolution> {
        match self {
            TypePellData::Pell(s) => Some(s),
            TypePellData::Square(_) => None,
        }
    }
}

/// Pell data for type `(1,d)`: the fundamental solution of `x^2 - 4d y^2 = 1`
/// for nonsquare `d`, or the square marker otherwise.
pub fn pell_for_type(d: u64) -> Result<TypePellData, PellError> {
    if d == 0 {
        return Err(PellError::ModulusTooSmall(0));
    }
    if let Some(root) = perfect_square(&BigInt::from(d)) {
        use num::ToPrimitive;
        return Ok(TypePellData::Square(SquareTypeMarker {
            d,
            root: root.to_u64().expect("root of a u64 fits"),
        }));
    }
    let n = d.checked_mul(4).ok_or(PellError::ModulusOverflow(d))?;
    Ok(TypePellData::Pell(fundamental_solution(n)?))
}
