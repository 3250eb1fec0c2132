//! Exact scalar types: the trait bounds shared by every coefficient ring in
//! the crate, the rational numbers, and prime fields `F_p`.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Exact rational numbers, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// A commutative ring with exact equality.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + Send
    + Sync
    + 'static
{
    /// Image of an integer.
    fn from_i64(n: i64) -> Self;

    /// Sign used by text output; rings without an order report `false`.
    fn is_negative(&self) -> bool {
        false
    }
}

/// A scalar ring in which every nonzero element is invertible.
pub trait Field: Scalar + Div<Output = Self> {
    fn inv(&self) -> Option<Self>;

    /// Short tag used in certificates: `q` or the characteristic.
    fn tag() -> String;
}

/// Reduction from the rationals; fails when a denominator is not invertible.
pub trait FromRational: Sized {
    fn from_rational(r: &Rational) -> Result<Self, Error>;
}

impl Scalar for Rational {
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn tag() -> String {
        "q".to_string()
    }
}

impl FromRational for Rational {
    fn from_rational(r: &Rational) -> Result<Self, Error> {
        Ok(r.clone())
    }
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Splits a nonzero integer as `2^k * odd`, returning `(k, odd)` with the sign
/// kept on the odd factor.
pub fn split_two_power(n: &BigInt) -> (u64, BigInt) {
    debug_assert!(!n.is_zero());
    let k = n.trailing_zeros().unwrap_or(0);
    (k, n >> k)
}

/// True when `r` lies in `Z[1/2]`, i.e. its reduced denominator is a power of two.
pub fn in_z_half(r: &Rational) -> bool {
    let (_, odd) = split_two_power(r.denom());
    odd.is_one()
}

/// True when the reduced denominator of `r` is not divisible by 2.
pub fn has_odd_denominator(r: &Rational) -> bool {
    r.denom().is_odd()
}

/// The odd part of a nonzero rational: `|r|` with all powers of two removed
/// from numerator and denominator. `None` for zero.
pub fn odd_part(r: &Rational) -> Option<Rational> {
    if r.is_zero() {
        return None;
    }
    let (_, n) = split_two_power(r.numer());
    let (_, d) = split_two_power(r.denom());
    Some(Rational::new(n.abs(), d))
}

/// Element of the prime field `F_P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u32>(u32);

impl<const P: u32> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    fn pow(self, mut e: u32) -> Self {
        let mut base = self;
        let mut acc = Fp::<P>(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u32> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.0, P)
    }
}

impl<const P: u32> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u32> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u32> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp(((self.0 as u64 + rhs.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(((self.0 as u64 + P as u64 - rhs.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u64 * rhs.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv().expect("division by zero in F_p")
    }
}

impl<const P: u32> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<'a, const P: u32> AddAssign<&'a Fp<P>> for Fp<P> {
    fn add_assign(&mut self, rhs: &'a Fp<P>) {
        *self = *self + *rhs;
    }
}

impl<'a, const P: u32> SubAssign<&'a Fp<P>> for Fp<P> {
    fn sub_assign(&mut self, rhs: &'a Fp<P>) {
        *self = *self - *rhs;
    }
}

impl<'a, const P: u32> MulAssign<&'a Fp<P>> for Fp<P> {
    fn mul_assign(&mut self, rhs: &'a Fp<P>) {
        *self = *self * *rhs;
    }
}

impl<const P: u32> Scalar for Fp<P> {
    fn from_i64(n: i64) -> Self {
        Fp::new(n)
    }
}

impl<const P: u32> Field for Fp<P> {
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }

    fn tag() -> String {
        P.to_string()
    }
}

impl<const P: u32> FromRational for Fp<P> {
    fn from_rational(r: &Rational) -> Result<Self, Error> {
        let p = BigInt::from(P);
        let reduce = |n: &BigInt| -> Fp<P> {
            let v = n.mod_floor(&p).to_u32().expect("residue fits in u32");
            Fp(v)
        };
        let den = reduce(r.denom());
        match den.inv() {
            Some(inv) => Ok(reduce(r.numer()) * inv),
            None => Err(Error::NotIntegralAt { prime: P, value: r.to_string() }),
        }
    }
}

/// Odd primes for which an `F_p` instantiation is compiled in.
pub const SUPPORTED_PRIMES: &[u32] = &[3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

/// Calls a generic function with the field type `F_p` chosen at runtime.
///
/// `$f` is a path to a function generic over one `Field` type parameter;
/// `$other` is evaluated for primes outside [`SUPPORTED_PRIMES`].
#[macro_export]
macro_rules! with_prime_field {
    ($p:expr, $f:ident ( $($arg:expr),* ), $other:expr) => {
        match $p {
            3 => $f::<$crate::scalar::Fp<3>>($($arg),*),
            5 => $f::<$crate::scalar::Fp<5>>($($arg),*),
            7 => $f::<$crate::scalar::Fp<7>>($($arg),*),
            11 => $f::<$crate::scalar::Fp<11>>($($arg),*),
            13 => $f::<$crate::scalar::Fp<13>>($($arg),*),
            17 => $f::<$crate::scalar::Fp<17>>($($arg),*),
            19 => $f::<$crate::scalar::Fp<19>>($($arg),*),
            23 => $f::<$crate::scalar::Fp<23>>($($arg),*),
            29 => $f::<$crate::scalar::Fp<29>>($($arg),*),
            31 => $f::<$crate::scalar::Fp<31>>($($arg),*),
            37 => $f::<$crate::scalar::Fp<37>>($($arg),*),
            41 => $f::<$crate::scalar::Fp<41>>($($arg),*),
            43 => $f::<$crate::scalar::Fp<43>>($($arg),*),
            47 => $f::<$crate::scalar::Fp<47>>($($arg),*),
            _ => $other,
        }
    };
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_inverse_and_reduction() {
        let a = Fp::<7>::new(3);
        assert_eq!(a * a.inv().unwrap(), Fp::one());
        assert_eq!(Fp::<5>::new(-1).value(), 4);
        assert_eq!(Fp::<3>::from_rational(&rat(9, 8)).unwrap(), Fp::new(0));
        assert_eq!(Fp::<5>::from_rational(&rat(1, 2)).unwrap(), Fp::new(3));
        assert!(Fp::<3>::from_rational(&rat(1, 3)).is_err());
    }

    #[test]
    fn odd_parts() {
        assert_eq!(odd_part(&int(-6)), Some(int(3)));
        assert_eq!(odd_part(&rat(10, 8)), Some(int(5)));
        assert_eq!(odd_part(&rat(3, 5)), Some(rat(3, 5)));
        assert_eq!(odd_part(&int(0)), None);
        assert!(in_z_half(&rat(9, 8)));
        assert!(!in_z_half(&rat(1, 3)));
        assert!(has_odd_denominator(&rat(1, 3)));
        assert!(!has_odd_denominator(&rat(1, 2)));
    }
}
