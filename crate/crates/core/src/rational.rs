//! Exact rational coefficients.
//!
//! [`Rational`] keeps values in lowest terms with a positive denominator. Most
//! coefficients met in practice are machine integers, so those stay unboxed;
//! everything else is delegated to `num-bigint` / `num-rational`.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Canonical representation: integers that fit in `i64` are `Small`, other
/// integers are `Int`, and only proper fractions use `BigRational`. Equality
/// and hashing rely on this canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(i64),
    Int(BigInt),
    Frac(BigRational),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

fn from_bigint(n: BigInt) -> Rational {
    match n.to_i64() {
        Some(v) => Rational(Repr::Small(v)),
        None => Rational(Repr::Int(n)),
    }
}

fn from_ratio(r: BigRational) -> Rational {
    if r.is_integer() {
        from_bigint(r.to_integer())
    } else {
        Rational(Repr::Frac(r))
    }
}

impl Rational {
    pub fn zero() -> Self {
        Rational(Repr::Small(0))
    }

    pub fn one() -> Self {
        Rational(Repr::Small(1))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        from_bigint(n.into())
    }

    /// Builds `num/den`, reducing to lowest terms.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, Error> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(from_ratio(BigRational::new(num.into(), den)))
    }

    pub fn from_big(r: BigRational) -> Self {
        from_ratio(r)
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(v) => BigRational::from_integer(BigInt::from(*v)),
            Repr::Int(n) => BigRational::from_integer(n.clone()),
            Repr::Frac(r) => r.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(v) => BigInt::from(*v),
            Repr::Int(n) => n.clone(),
            Repr::Frac(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Frac(r) => r.denom().clone(),
            _ => BigInt::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1))
    }

    pub fn is_integer(&self) -> bool {
        !matches!(self.0, Repr::Frac(_))
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(v) => *v < 0,
            Repr::Int(n) => n.is_negative(),
            Repr::Frac(r) => r.is_negative(),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(from_ratio(self.to_big().recip()))
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Rational::one();
        for _ in 0..e {
            acc *= self;
        }
        acc
    }

    /// Best-effort conversion, only for display of statistics.
    pub fn to_f64(&self) -> Option<f64> {
        self.to_big().to_f64()
    }

    /// Residue modulo the prime `p`; `None` when `p` divides the denominator.
    pub fn mod_prime(&self, p: u64) -> Option<u64> {
        let reduce = |n: &BigInt| -> u64 {
            let m = BigInt::from(p);
            let r = ((n % &m) + &m) % &m;
            r.to_u64().expect("residue fits")
        };
        match &self.0 {
            Repr::Small(v) => Some((*v as i128).rem_euclid(p as i128) as u64),
            Repr::Int(n) => Some(reduce(n)),
            Repr::Frac(r) => {
                let d = reduce(r.denom());
                if d == 0 {
                    return None;
                }
                Some(crate::modular::mul(reduce(r.numer()), crate::modular::inv(d, p), p))
            }
        }
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

fn add_impl(a: &Rational, b: &Rational) -> Rational {
    match (&a.0, &b.0) {
        (Repr::Small(x), Repr::Small(y)) => match x.checked_add(*y) {
            Some(v) => Rational(Repr::Small(v)),
            None => from_bigint(BigInt::from(*x) + y),
        },
        (Repr::Frac(_), _) | (_, Repr::Frac(_)) => from_ratio(a.to_big() + b.to_big()),
        _ => from_bigint(a.numer() + b.numer()),
    }
}

fn sub_impl(a: &Rational, b: &Rational) -> Rational {
    match (&a.0, &b.0) {
        (Repr::Small(x), Repr::Small(y)) => match x.checked_sub(*y) {
            Some(v) => Rational(Repr::Small(v)),
            None => from_bigint(BigInt::from(*x) - y),
        },
        (Repr::Frac(_), _) | (_, Repr::Frac(_)) => from_ratio(a.to_big() - b.to_big()),
        _ => from_bigint(a.numer() - b.numer()),
    }
}

fn mul_impl(a: &Rational, b: &Rational) -> Rational {
    match (&a.0, &b.0) {
        (Repr::Small(x), Repr::Small(y)) => match x.checked_mul(*y) {
            Some(v) => Rational(Repr::Small(v)),
            None => from_bigint(BigInt::from(*x) * y),
        },
        (Repr::Small(0), _) | (_, Repr::Small(0)) => Rational::zero(),
        (Repr::Frac(_), _) | (_, Repr::Frac(_)) => from_ratio(a.to_big() * b.to_big()),
        (Repr::Int(x), Repr::Int(y)) => from_bigint(x * y),
        (Repr::Int(x), Repr::Small(y)) | (Repr::Small(y), Repr::Int(x)) => from_bigint(x * y),
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational(Repr::Small(n))
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational(Repr::Small(n as i64))
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(v) => write!(f, "{v}"),
            Repr::Int(n) => write!(f, "{n}"),
            Repr::Frac(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `a` or `a/b` where `a` is an optionally signed decimal integer and
/// `b` a positive decimal integer.
impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::BadRational(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
        let unsigned = num.strip_prefix(['-', '+']).unwrap_or(num);
        if !digits(unsigned) {
            return Err(bad());
        }
        let n: BigInt = num.parse().map_err(|_| bad())?;
        match den {
            None => Ok(Rational::from_integer(n)),
            Some(d) => {
                if !digits(d) {
                    return Err(bad());
                }
                let d: BigInt = d.parse().map_err(|_| bad())?;
                Rational::new(n, d)
            }
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                $imp(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                $imp(&self, rhs)
            }
        }
        impl<'a, 'b> $tr<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                $imp(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, sub_impl);
forward_binop!(Mul, mul, mul_impl);

/// Panics on division by zero, like the integer types.
impl<'b> Div<&'b Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &'b Rational) -> Rational {
        assert!(!rhs.is_zero(), "rational division by zero");
        from_ratio(self.to_big() / rhs.to_big())
    }
}

impl Div<Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        &self / &rhs
    }
}

impl<'a> AddAssign<&'a Rational> for Rational {
    fn add_assign(&mut self, rhs: &'a Rational) {
        match (&mut self.0, &rhs.0) {
            (Repr::Small(x), Repr::Small(y)) => {
                if let Some(v) = x.checked_add(*y) {
                    *x = v;
                    return;
                }
            }
            (Repr::Int(x), Repr::Small(y)) => {
                *x += *y;
                if let Some(v) = x.to_i64() {
                    self.0 = Repr::Small(v);
                }
                return;
            }
            (Repr::Int(x), Repr::Int(y)) => {
                *x += y;
                if let Some(v) = x.to_i64() {
                    self.0 = Repr::Small(v);
                }
                return;
            }
            _ => {}
        }
        *self = add_impl(self, rhs);
    }
}

impl<'a> SubAssign<&'a Rational> for Rational {
    fn sub_assign(&mut self, rhs: &'a Rational) {
        *self = sub_impl(self, rhs);
    }
}

impl<'a> MulAssign<&'a Rational> for Rational {
    fn mul_assign(&mut self, rhs: &'a Rational) {
        *self = mul_impl(self, rhs);
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match &self.0 {
            Repr::Small(v) => match v.checked_neg() {
                Some(n) => Rational(Repr::Small(n)),
                None => from_bigint(-BigInt::from(*v)),
            },
            Repr::Int(n) => from_bigint(-n),
            Repr::Frac(r) => Rational(Repr::Frac(-r)),
        }
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_sign() {
        let r = Rational::new(6, -8).unwrap();
        assert_eq!(r.to_string(), "-3/4");
        assert_eq!(Rational::new(0, -5).unwrap(), Rational::zero());
        assert_eq!(Rational::new(0, 7).unwrap().to_string(), "0");
    }

    #[test]
    fn parse_forms() {
        assert_eq!("1/24".parse::<Rational>().unwrap(), Rational::new(1, 24).unwrap());
        assert_eq!("-8".parse::<Rational>().unwrap(), Rational::from(-8));
        assert_eq!("+3/6".parse::<Rational>().unwrap(), Rational::new(1, 2).unwrap());
        assert!(matches!("1/0".parse::<Rational>(), Err(Error::ZeroDenominator)));
        assert!("1/-2".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
        assert!("1.5".parse::<Rational>().is_err());
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Rational::from(i64::MAX);
        let sum = &big + &Rational::one();
        assert_eq!(sum.to_string(), "9223372036854775808");
        let back = &sum - &Rational::one();
        assert_eq!(back, big);
        let prod = &big * &big;
        assert_eq!(&prod / &big, big);
        let neg_min = -Rational::from(i64::MIN);
        assert_eq!(neg_min.to_string(), "9223372036854775808");
        let mut acc = sum.clone();
        acc += &Rational::from(-1);
        assert_eq!(acc, big);
        assert!(Rational::from(-3) < Rational::new(-5, 2).unwrap());
        assert!(sum > big);
    }

    #[test]
    fn residues() {
        let p = 1_000_000_007;
        assert_eq!(Rational::from(-1).mod_prime(p), Some(p - 1));
        let half = Rational::new(1, 2).unwrap().mod_prime(p).unwrap();
        assert_eq!(crate::modular::mul(half, 2, p), 1);
        assert_eq!(Rational::new(1, p as i64).unwrap().mod_prime(p), None);
    }

    #[test]
    fn arithmetic() {
        let a = Rational::new(1, 3).unwrap();
        let b = Rational::new(1, 6).unwrap();
        assert_eq!(&a + &b, Rational::new(1, 2).unwrap());
        assert_eq!(&a - &b, b);
        assert_eq!(&a * &b, Rational::new(1, 18).unwrap());
        assert_eq!(&a / &b, Rational::from(2));
        assert_eq!(a.pow(3), Rational::new(1, 27).unwrap());
        assert!(Rational::zero().recip().is_none());
    }
}
