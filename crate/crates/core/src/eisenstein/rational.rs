use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{forward_owned, EisInt};
use crate::error::{Error, Result};

/// An element of `Q(w)` kept as a reduced fraction `num / den`.
///
/// `gcd(num, den)` is a unit and `den` is a canonical associate; the unit that
/// normalises the denominator is absorbed into the numerator. Zero is `0 / 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EisRat {
    num: EisInt,
    den: EisInt,
}

impl EisRat {
    pub fn new(num: EisInt, den: EisInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: EisInt, den: EisInt) -> Self {
        if num.is_zero() {
            return EisRat {
                num,
                den: EisInt::one(),
            };
        }
        let g = num.gcd(&den).expect("den is nonzero");
        let num = num.checked_div(&g).expect("gcd divides numerator");
        let den = den.checked_div(&g).expect("gcd divides denominator");
        let (den, u) = den.canonical_associate();
        EisRat {
            num: &u * &num,
            den,
        }
    }

    pub fn zero() -> Self {
        EisInt::zero().into()
    }

    pub fn one() -> Self {
        EisInt::one().into()
    }

    pub fn tau() -> Self {
        EisInt::tau().into()
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        EisInt::from_int(n).into()
    }

    /// `p / q` with rational integers.
    pub fn from_ratio(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        EisRat::new(EisInt::from_int(p), EisInt::from_int(q))
    }

    pub fn num(&self) -> &EisInt {
        &self.num
    }

    pub fn den(&self) -> &EisInt {
        &self.den
    }

    pub fn into_parts(self) -> (EisInt, EisInt) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one_elem()
    }

    pub fn recip(&self) -> Result<Self> {
        EisRat::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &EisRat) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(EisRat::reduce(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn pow(&self, k: u32) -> Self {
        EisRat {
            num: self.num.pow(k),
            den: self.den.pow(k),
        }
    }

    /// Rational coordinates `(c0, c1)` with `self = c0 + c1 w`.
    pub fn coords(&self) -> (BigRational, BigRational) {
        let n = self.den.norm();
        let top = &self.num * &self.den.conj();
        (
            BigRational::new(top.a, n.clone()),
            BigRational::new(top.b, n),
        )
    }

    pub fn from_coords(c0: &BigRational, c1: &BigRational) -> Self {
        let l = c0.denom().lcm(c1.denom());
        let a = c0.numer() * (&l / c0.denom());
        let b = c1.numer() * (&l / c1.denom());
        EisRat::reduce(EisInt::new(a, b), EisInt::from_int(l))
    }

    /// Smallest positive rational integer `k` with `k * self` in `Z[w]`.
    pub fn denominator_content(&self) -> BigInt {
        let (c0, c1) = self.coords();
        c0.denom().lcm(c1.denom())
    }
}

impl EisInt {
    fn is_one_elem(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }
}

impl From<EisInt> for EisRat {
    fn from(num: EisInt) -> Self {
        EisRat {
            num,
            den: EisInt::one(),
        }
    }
}

impl From<i64> for EisRat {
    fn from(n: i64) -> Self {
        EisRat::from_int(n)
    }
}

impl Add<&EisRat> for &EisRat {
    type Output = EisRat;
    fn add(self, rhs: &EisRat) -> EisRat {
        if self.den == rhs.den {
            return EisRat::reduce(&self.num + &rhs.num, self.den.clone());
        }
        EisRat::reduce(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl Sub<&EisRat> for &EisRat {
    type Output = EisRat;
    fn sub(self, rhs: &EisRat) -> EisRat {
        self + &(-rhs)
    }
}

impl Mul<&EisRat> for &EisRat {
    type Output = EisRat;
    fn mul(self, rhs: &EisRat) -> EisRat {
        if self.is_zero() || rhs.is_zero() {
            return EisRat::zero();
        }
        if self.is_integral() && rhs.is_integral() {
            return (&self.num * &rhs.num).into();
        }
        EisRat::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &EisRat {
    type Output = EisRat;
    fn neg(self) -> EisRat {
        EisRat {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for EisRat {
    type Output = EisRat;
    fn neg(self) -> EisRat {
        -&self
    }
}

forward_owned!(EisRat, Add::add, Sub::sub, Mul::mul);

impl fmt::Display for EisRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::format_eisrat(&ExtRat::Finite(self.clone())))
    }
}

/// `Q(w)` together with the point at infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtRat {
    Finite(EisRat),
    Infinity,
}

impl ExtRat {
    pub fn finite(&self) -> Option<&EisRat> {
        match self {
            ExtRat::Finite(x) => Some(x),
            ExtRat::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtRat::Infinity)
    }

    /// Reduced pair `(num, den)`; infinity is `(1, 0)`.
    pub fn as_pair(&self) -> (EisInt, EisInt) {
        match self {
            ExtRat::Finite(x) => (x.num.clone(), x.den.clone()),
            ExtRat::Infinity => (EisInt::one(), EisInt::zero()),
        }
    }

    /// Builds `num / den` from any nonzero pair, sending `den = 0` to infinity.
    pub fn from_pair(num: EisInt, den: EisInt) -> Result<Self> {
        if den.is_zero() {
            if num.is_zero() {
                return Err(Error::invalid("0/0 is not a point of the projective line"));
            }
            return Ok(ExtRat::Infinity);
        }
        Ok(ExtRat::Finite(EisRat::new(num, den)?))
    }
}

impl From<EisRat> for ExtRat {
    fn from(x: EisRat) -> Self {
        ExtRat::Finite(x)
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::format_eisrat(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: i64, b: i64) -> EisInt {
        EisInt::new(a, b)
    }

    #[test]
    fn reduction_normalises_denominator() {
        // w / w^2 = w^{-1} = w^2
        let x = EisRat::new(e(0, 1), e(-1, -1)).unwrap();
        assert_eq!(x.den(), &e(1, 0));
        assert_eq!(x.num(), &e(-1, -1));

        // (-1 + 2w) / 3: 3 = -w^2 (1-w)^2, and -1 + 2w = (1 - w) * (...)?
        let x = EisRat::new(e(-1, 2), e(3, 0)).unwrap();
        let g = x.num().gcd(x.den()).unwrap();
        assert!(g.is_unit());
        assert!(x.den().is_canonical());
        assert_eq!(&x * &EisRat::from_int(3), EisRat::from(e(-1, 2)));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(EisRat::new(e(1, 0), e(0, 0)), Err(Error::DivisionByZero));
        assert_eq!(
            EisRat::one().checked_div(&EisRat::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn coords_round_trip() {
        let x = EisRat::new(e(5, -3), e(2, 7)).unwrap();
        let (c0, c1) = x.coords();
        assert_eq!(EisRat::from_coords(&c0, &c1), x);
    }

    #[test]
    fn denominator_content() {
        assert_eq!(EisRat::zero().denominator_content(), 1.into());
        assert_eq!(
            EisRat::from_ratio(1, 2).unwrap().denominator_content(),
            2.into()
        );
        let x = EisRat::new(e(1, 1), e(3, 0)).unwrap();
        assert_eq!(x.denominator_content(), 3.into());
    }

    #[test]
    fn field_identities() {
        let x = EisRat::new(e(3, -1), e(2, 5)).unwrap();
        let y = EisRat::new(e(-7, 4), e(1, 1)).unwrap();
        assert_eq!(&(&x * &y).checked_div(&y).unwrap(), &x);
        assert_eq!(&(&x + &y) - &y, x);
        assert_eq!(&x * &x.recip().unwrap(), EisRat::one());
    }
}
