//! Exact arithmetic in the Eisenstein integers `Z[w]` and their fraction field `Q(w)`.
//!
//! `w` is the primitive cube root of unity `e^{2 pi i / 3}`, so `w^2 = -1 - w`.
//! Elements are stored in the basis `(1, w)`: `a + b w`.
//!
//! The ring is Euclidean for the norm `N(a + b w) = a^2 - ab + b^2`. Division
//! rounds each coordinate of the exact quotient to the nearest integer with ties
//! broken toward negative infinity, which keeps the remainder norm at most 3/4 of
//! the divisor norm.

mod literal;
mod rational;

pub use literal::{format_eisrat, parse_eisrat};
pub use rational::{EisRat, ExtRat};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An Eisenstein integer `a + b w`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct EisInt {
    pub a: BigInt,
    pub b: BigInt,
}

impl EisInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        EisInt {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn zero() -> Self {
        EisInt::new(0, 0)
    }

    pub fn one() -> Self {
        EisInt::new(1, 0)
    }

    /// The generator `w`.
    pub fn tau() -> Self {
        EisInt::new(0, 1)
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        EisInt::new(n, 0)
    }

    /// The six units in the order `1, -w^2, w, -1, w^2, -w`, i.e. successive
    /// rotations by 60 degrees.
    pub fn units() -> [EisInt; 6] {
        [
            EisInt::new(1, 0),
            EisInt::new(1, 1),
            EisInt::new(0, 1),
            EisInt::new(-1, 0),
            EisInt::new(-1, -1),
            EisInt::new(0, -1),
        ]
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn is_rational_integer(&self) -> bool {
        self.b.is_zero()
    }

    /// Complex conjugate: `a + b w -> (a - b) - b w`.
    pub fn conj(&self) -> EisInt {
        EisInt {
            a: &self.a - &self.b,
            b: -&self.b,
        }
    }

    /// `a^2 - ab + b^2`, the squared absolute value.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    /// Euclidean division: `self = q * divisor + r` with `N(r) < N(divisor)`.
    pub fn divmod(&self, divisor: &EisInt) -> Result<(EisInt, EisInt)> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = divisor.norm();
        let num = self * &divisor.conj();
        let q = EisInt {
            a: round_half_down(&num.a, &n),
            b: round_half_down(&num.b, &n),
        };
        let r = self - &(&q * divisor);
        debug_assert!(r.norm() < n);
        Ok((q, r))
    }

    /// Exact quotient, or `None` when `divisor` does not divide `self`.
    pub fn checked_div(&self, divisor: &EisInt) -> Option<EisInt> {
        if divisor.is_zero() {
            return None;
        }
        let n = divisor.norm();
        let num = self * &divisor.conj();
        let (qa, ra) = num.a.div_rem(&n);
        let (qb, rb) = num.b.div_rem(&n);
        (ra.is_zero() && rb.is_zero()).then_some(EisInt { a: qa, b: qb })
    }

    pub fn divides(&self, other: &EisInt) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.checked_div(self).is_some()
    }

    /// The unique associate `u * self` lying in the sector `a > 0, 0 <= b < a`
    /// (argument in `[0, 60)` degrees), together with the unit `u`.
    /// Zero maps to `(0, 1)`.
    pub fn canonical_associate(&self) -> (EisInt, EisInt) {
        if self.is_zero() {
            return (EisInt::zero(), EisInt::one());
        }
        for u in EisInt::units() {
            let c = &u * self;
            if c.in_canonical_sector() {
                return (c, u);
            }
        }
        unreachable!("every nonzero Eisenstein integer has a canonical associate")
    }

    pub fn canonical(&self) -> EisInt {
        self.canonical_associate().0
    }

    pub fn is_canonical(&self) -> bool {
        self.is_zero() || self.in_canonical_sector()
    }

    fn in_canonical_sector(&self) -> bool {
        self.a.is_positive() && !self.b.is_negative() && self.b < self.a
    }

    /// Euclidean gcd, normalised to its canonical associate.
    pub fn gcd(&self, other: &EisInt) -> Result<EisInt> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroGcd);
        }
        if let (Some(x), Some(y)) = (self.to_i64_pair(), other.to_i64_pair()) {
            if let Some((a, b)) = small_gcd((x.0 as i128, x.1 as i128), (y.0 as i128, y.1 as i128))
            {
                return Ok(EisInt::new(a as i64, b as i64).canonical());
            }
        }
        self.gcd_big(other)
    }

    fn gcd_big(&self, other: &EisInt) -> Result<EisInt> {
        let mut x = self.clone();
        let mut y = other.clone();
        while !y.is_zero() {
            let (_, r) = x.divmod(&y)?;
            x = y;
            y = r;
        }
        Ok(x.canonical())
    }

    /// `self^k`
    pub fn pow(&self, k: u32) -> EisInt {
        let mut acc = EisInt::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        use num_traits::ToPrimitive;
        Some((self.a.to_i64()?, self.b.to_i64()?))
    }
}

/// The same Euclidean chain as [`EisInt::gcd`] on machine integers, `None`
/// when the inputs are too large for it to be exact. Not normalised.
pub(crate) fn small_gcd(mut x: (i128, i128), mut y: (i128, i128)) -> Option<(i128, i128)> {
    const LIMIT: i128 = 1 << 40;
    if [x.0, x.1, y.0, y.1].iter().any(|v| v.abs() >= LIMIT) {
        return None;
    }
    let norm = |(a, b): (i128, i128)| a * a - a * b + b * b;
    let mul = |(a, b): (i128, i128), (c, d): (i128, i128)| (a * c - b * d, a * d + b * c - b * d);
    // ceil((2 n - d) / (2 d)) for d > 0
    let round = |n: i128, d: i128| {
        (2 * n - d).div_euclid(2 * d) + i128::from((2 * n - d).rem_euclid(2 * d) != 0)
    };
    while y != (0, 0) {
        let n = norm(y);
        let (p, q) = mul(x, (y.0 - y.1, -y.1));
        let prod = mul((round(p, n), round(q, n)), y);
        let r = (x.0 - prod.0, x.1 - prod.1);
        x = y;
        y = r;
    }
    Some(x)
}

/// Nearest integer to `num / den` (`den > 0`), halves rounded toward negative infinity.
fn round_half_down(num: &BigInt, den: &BigInt) -> BigInt {
    // ceil((2 num - den) / (2 den))
    let two_den = den * 2;
    let t: BigInt = num * 2 - den;
    -((-t).div_floor(&two_den))
}

impl fmt::Display for EisInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r: EisRat = self.clone().into();
        f.write_str(&format_eisrat(&ExtRat::Finite(r)))
    }
}

impl From<i64> for EisInt {
    fn from(n: i64) -> Self {
        EisInt::from_int(n)
    }
}

impl From<(i64, i64)> for EisInt {
    fn from((a, b): (i64, i64)) -> Self {
        EisInt::new(a, b)
    }
}

impl Add<&EisInt> for &EisInt {
    type Output = EisInt;
    fn add(self, rhs: &EisInt) -> EisInt {
        EisInt {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl Sub<&EisInt> for &EisInt {
    type Output = EisInt;
    fn sub(self, rhs: &EisInt) -> EisInt {
        EisInt {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl Mul<&EisInt> for &EisInt {
    type Output = EisInt;
    fn mul(self, rhs: &EisInt) -> EisInt {
        // (a + b w)(c + d w) = (ac - bd) + (ad + bc - bd) w
        let bd = &self.b * &rhs.b;
        EisInt {
            a: &self.a * &rhs.a - &bd,
            b: &self.a * &rhs.b + &self.b * &rhs.a - bd,
        }
    }
}

impl Neg for &EisInt {
    type Output = EisInt;
    fn neg(self) -> EisInt {
        EisInt {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident :: $m:ident),*) => {$(
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t { (&self).$m(&rhs) }
        }
        impl $tr<&$t> for $t {
            type Output = $t;
            fn $m(self, rhs: &$t) -> $t { (&self).$m(rhs) }
        }
        impl $tr<$t> for &$t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t { self.$m(&rhs) }
        }
    )*};
}
pub(crate) use forward_owned;

forward_owned!(EisInt, Add::add, Sub::sub, Mul::mul);

impl Neg for EisInt {
    type Output = EisInt;
    fn neg(self) -> EisInt {
        -&self
    }
}
