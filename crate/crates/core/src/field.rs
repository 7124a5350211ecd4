//! Coefficient fields.
//!
//! Everything in this crate is generic over [`Field`]. Two exact fields are
//! provided: arbitrary-precision rationals ([`Rational`]) and prime fields
//! ([`Fp`]). Floating-point scalars are deliberately not supported, since
//! every rank decision downstream must be exact.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational numbers, the default coefficient field.
pub type Rational = num_rational::BigRational;

/// An exact field usable as a coefficient domain.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + for<'a> DivAssign<&'a Self>
{
    /// Image of an integer under the canonical map Z -> K.
    fn from_bigint(v: &BigInt) -> Self;

    /// The element `num/den`, or `None` when `den` vanishes in the field.
    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self> {
        let d = Self::from_bigint(den);
        if d.is_zero() {
            None
        } else {
            Some(Self::from_bigint(num) / d)
        }
    }

    fn from_i64(v: i64) -> Self {
        Self::from_bigint(&BigInt::from(v))
    }

    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Self::one() / self.clone()
    }

    /// Whether the printed form needs a leading minus sign.
    fn is_negative_repr(&self) -> bool {
        false
    }

    /// Rescale a vector by a nonzero constant so that all entries become
    /// integral, when the field has a notion of denominators. The row space
    /// is unchanged.
    fn clear_denominators(_row: &mut [Self]) {}

    /// Division known to be exact in the underlying integral domain.
    ///
    /// Used by fraction-free elimination; for fields it is plain division.
    fn exact_div(&self, d: &Self) -> Self {
        let mut q = self.clone();
        q /= d;
        q
    }
}

impl Field for Rational {
    fn from_bigint(v: &BigInt) -> Self {
        Rational::from_integer(v.clone())
    }

    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(Rational::new(num.clone(), den.clone()))
        }
    }

    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        self.recip()
    }

    fn is_negative_repr(&self) -> bool {
        self.is_negative()
    }

    fn clear_denominators(row: &mut [Self]) {
        let lcm = row
            .iter()
            .filter(|c| !c.is_zero())
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        if lcm.is_one() {
            return;
        }
        let scale = Rational::from_integer(lcm);
        for c in row.iter_mut() {
            *c *= &scale;
        }
    }

    fn exact_div(&self, d: &Self) -> Self {
        if self.is_integer() && d.is_integer() {
            let (q, r) = self.numer().div_rem(d.numer());
            if r.is_zero() {
                return Rational::from_integer(q);
            }
        }
        self / d
    }
}

/// The prime field Z/PZ. `P` must be prime; this is not checked at compile
/// time, but [`Fp::modulus_is_prime`] can be used in tests.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn modulus_is_prime() -> bool {
        P >= 2 && (2..).take_while(|d| d * d <= P).all(|d| !P.is_multiple_of(d))
    }

    fn pow(mut self, mut e: u64) -> Self {
        let mut acc = Fp(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * self;
            }
            self = self * self;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Fp(((self.0 as u128 + o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fp(((self.0 as u128 + P as u128 - o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp(((self.0 as u128 * o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        assert!(o.0 != 0, "division by zero in prime field");
        self * o.pow(P - 2)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<'a, const P: u64> AddAssign<&'a Fp<P>> for Fp<P> {
    fn add_assign(&mut self, o: &'a Self) {
        *self = *self + *o;
    }
}

impl<'a, const P: u64> SubAssign<&'a Fp<P>> for Fp<P> {
    fn sub_assign(&mut self, o: &'a Self) {
        *self = *self - *o;
    }
}

impl<'a, const P: u64> MulAssign<&'a Fp<P>> for Fp<P> {
    fn mul_assign(&mut self, o: &'a Self) {
        *self = *self * *o;
    }
}

impl<'a, const P: u64> DivAssign<&'a Fp<P>> for Fp<P> {
    fn div_assign(&mut self, o: &'a Self) {
        *self = *self / *o;
    }
}

impl<const P: u64> Field for Fp<P> {
    fn from_bigint(v: &BigInt) -> Self {
        let r = v.mod_floor(&BigInt::from(P));
        Fp(r.to_u64().expect("residue fits in u64"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type F7 = Fp<7>;

    #[test]
    fn prime_field_arithmetic() {
        assert!(F7::modulus_is_prime());
        let a = F7::new(3);
        let b = F7::new(5);
        assert_eq!(a + b, F7::new(1));
        assert_eq!(a - b, F7::new(5));
        assert_eq!(a * b, F7::new(1));
        assert_eq!((a / b) * b, a);
        assert_eq!(-a + a, F7::zero());
        assert_eq!(F7::from_i64(-1), F7::new(6));
        assert_eq!(
            F7::from_ratio(&BigInt::from(1), &BigInt::from(2)),
            Some(F7::new(4))
        );
        assert_eq!(F7::from_ratio(&BigInt::from(1), &BigInt::from(14)), None);
    }

    #[test]
    fn rational_clear_denominators_keeps_direction() {
        let mut row = vec![
            Rational::new(1.into(), 2.into()),
            Rational::new((-2).into(), 3.into()),
            Rational::zero(),
        ];
        Rational::clear_denominators(&mut row);
        assert_eq!(
            row,
            vec![Rational::from_i64(3), Rational::from_i64(-4), Rational::zero()]
        );
    }

    #[test]
    fn exact_div_on_integers() {
        let a = Rational::from_i64(12);
        let b = Rational::from_i64(-4);
        assert_eq!(a.exact_div(&b), Rational::from_i64(-3));
    }
}
