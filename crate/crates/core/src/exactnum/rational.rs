//! Exact rational numbers.
//!
//! Values whose numerator and denominator fit in `i64` are kept inline and
//! combined with `i128` intermediates; everything else falls back to
//! [`BigRational`]. The representation is canonical (lowest terms, positive
//! denominator, inline whenever it fits), so derived equality and hashing are
//! value equality.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{LamiqError, Result};

#[derive(Clone, PartialEq, Eq)]
enum Repr {
    /// `den > 0`, `gcd(num, den) == 1`, `num != i64::MIN`.
    Small { num: i64, den: i64 },
    /// Never representable as `Small`.
    Big(Box<BigRational>),
}

/// An exact rational number in lowest terms.
#[derive(Clone, PartialEq, Eq)]
pub struct Rational(Repr);

#[inline]
fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

#[inline]
fn gcd_u128(a: u128, b: u128) -> u128 {
    if a >> 64 == 0 && b >> 64 == 0 {
        return gcd_u64(a as u64, b as u64) as u128;
    }
    a.gcd(&b)
}

impl Rational {
    pub const ZERO: Rational = Rational(Repr::Small { num: 0, den: 1 });
    pub const ONE: Rational = Rational(Repr::Small { num: 1, den: 1 });

    pub fn zero() -> Self {
        Self::ZERO
    }

    pub fn one() -> Self {
        Self::ONE
    }

    pub fn from_int(n: i64) -> Self {
        if n == i64::MIN {
            return Self::from_big(BigRational::from_integer(BigInt::from(n)));
        }
        Rational(Repr::Small { num: n, den: 1 })
    }

    /// `num / den`; panics on a zero denominator.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_big(BigRational::from_integer(n))
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self::from_big(BigRational::new(num, den))
    }

    /// Builds from an `i128` pair, reducing and normalizing the sign.
    fn from_i128(mut num: i128, mut den: i128) -> Self {
        debug_assert!(den != 0);
        if den < 0 {
            // i128::MIN cannot occur: inputs are products of two i64 magnitudes.
            num = -num;
            den = -den;
        }
        let g = gcd_u128(num.unsigned_abs(), den as u128) as i128;
        if g > 1 {
            num /= g;
            den /= g;
        }
        Self::from_reduced_i128(num, den)
    }

    #[inline]
    fn from_reduced_i128(num: i128, den: i128) -> Self {
        if num > i64::MIN as i128 && num <= i64::MAX as i128 && den <= i64::MAX as i128 {
            Rational(Repr::Small {
                num: num as i64,
                den: den as i64,
            })
        } else {
            Rational(Repr::Big(Box::new(BigRational::new_raw(
                BigInt::from(num),
                BigInt::from(den),
            ))))
        }
    }

    /// Canonicalizes an already reduced big rational.
    pub fn from_big(r: BigRational) -> Self {
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            if n != i64::MIN {
                return Rational(Repr::Small { num: n, den: d });
            }
        }
        Rational(Repr::Big(Box::new(r)))
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small { num, den } => BigRational::new_raw(BigInt::from(*num), BigInt::from(*den)),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, .. } => BigInt::from(*num),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small { den, .. } => BigInt::from(*den),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    /// Numerator and denominator when both fit in `i64`.
    pub fn as_small(&self) -> Option<(i64, i64)> {
        match self.0 {
            Repr::Small { num, den } => Some((num, den)),
            Repr::Big(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { num: 0, .. })
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small { num: 1, den: 1 })
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small { den, .. } => *den == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small { num, .. } => num.signum() as i32,
            Repr::Big(b) => match b.numer().sign() {
                Sign::Minus => -1,
                Sign::NoSign => 0,
                Sign::Plus => 1,
            },
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn abs(&self) -> Rational {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Rational {
        match &self.0 {
            Repr::Small { num, den } => {
                assert!(*num != 0, "reciprocal of zero");
                Self::from_i128(*den as i128, *num as i128)
            }
            Repr::Big(b) => Self::from_big(b.recip()),
        }
    }

    pub fn square(&self) -> Rational {
        self * self
    }

    pub fn pow(&self, exp: u32) -> Rational {
        let mut acc = Rational::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn floor(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, den } => BigInt::from(num.div_floor(den)),
            Repr::Big(b) => b.floor().to_integer(),
        }
    }

    pub fn ceil(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, den } => BigInt::from(num.div_ceil(den)),
            Repr::Big(b) => b.ceil().to_integer(),
        }
    }

    /// Nearest integer, ties toward +infinity.
    pub fn round_half_up(&self) -> BigInt {
        (self + &Rational::new(1, 2)).floor()
    }

    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small { num, den } => *num as f64 / *den as f64,
            Repr::Big(b) => {
                // Scale down both parts to keep the quotient finite.
                let nb = b.numer().bits() as i64;
                let db = b.denom().bits() as i64;
                let shift = (nb.max(db) - 900).max(0) as usize;
                let n = (b.numer() >> shift).to_f64().unwrap_or(f64::NAN);
                let d = (b.denom() >> shift).to_f64().unwrap_or(f64::NAN);
                if d == 0.0 {
                    b.to_f64().unwrap_or(f64::NAN)
                } else {
                    n / d
                }
            }
        }
    }

    /// Exact conversion of a finite float.
    pub fn from_f64(x: f64) -> Option<Rational> {
        BigRational::from_float(x).map(Self::from_big)
    }

    /// Bit length of numerator plus denominator; a rough size measure.
    pub fn bits(&self) -> u64 {
        match &self.0 {
            Repr::Small { num, den } => {
                (64 - num.unsigned_abs().leading_zeros() + 64 - den.leading_zeros()) as u64
            }
            Repr::Big(b) => b.numer().bits() + b.denom().bits(),
        }
    }

    pub fn min(self, other: Rational) -> Rational {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Rational) -> Rational {
        if other > self {
            other
        } else {
            self
        }
    }
}

// ---------------------------------------------------------------------------
// arithmetic kernels

fn add_ref(x: &Rational, y: &Rational) -> Rational {
    match (&x.0, &y.0) {
        (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
            let (a, b, c, d) = (*a, *b, *c, *d);
            if b == 1 && d == 1 {
                return Rational::from_reduced_i128(a as i128 + c as i128, 1);
            }
            let g = gcd_u64(b as u64, d as u64) as i128;
            if g == 1 {
                let n = a as i128 * d as i128 + c as i128 * b as i128;
                let den = b as i128 * d as i128;
                Rational::from_reduced_i128(n, den)
            } else {
                let bq = b as i128 / g;
                let dq = d as i128 / g;
                let n = a as i128 * dq + c as i128 * bq;
                let g2 = gcd_u128(n.unsigned_abs(), g as u128) as i128;
                let n = n / g2;
                let den = bq * (d as i128 / g2);
                Rational::from_reduced_i128(n, den)
            }
        }
        _ => Rational::from_big(x.to_big() + y.to_big()),
    }
}

fn mul_ref(x: &Rational, y: &Rational) -> Rational {
    match (&x.0, &y.0) {
        (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
            let (a, b, c, d) = (*a, *b, *c, *d);
            if a == 0 || c == 0 {
                return Rational::ZERO;
            }
            let g1 = gcd_u64(a.unsigned_abs(), d as u64) as i64;
            let g2 = gcd_u64(c.unsigned_abs(), b as u64) as i64;
            let n = (a / g1) as i128 * (c / g2) as i128;
            let den = (b / g2) as i128 * (d / g1) as i128;
            Rational::from_reduced_i128(n, den)
        }
        _ => Rational::from_big(x.to_big() * y.to_big()),
    }
}

fn neg_ref(x: &Rational) -> Rational {
    match &x.0 {
        Repr::Small { num, den } => Rational(Repr::Small {
            num: -*num,
            den: *den,
        }),
        Repr::Big(b) => Rational::from_big(-(**b).clone()),
    }
}

fn div_ref(x: &Rational, y: &Rational) -> Rational {
    assert!(!y.is_zero(), "division by zero");
    mul_ref(x, &y.recip())
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $kernel:ident, $assign_trait:ident, $assign:ident) => {
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            #[inline]
            fn $method(self, rhs: &'a Rational) -> Rational {
                $kernel(self, rhs)
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            #[inline]
            fn $method(self, rhs: Rational) -> Rational {
                $kernel(&self, &rhs)
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            #[inline]
            fn $method(self, rhs: &'a Rational) -> Rational {
                $kernel(&self, rhs)
            }
        }
        impl<'a> $trait<Rational> for &'a Rational {
            type Output = Rational;
            #[inline]
            fn $method(self, rhs: Rational) -> Rational {
                $kernel(self, &rhs)
            }
        }
        impl $assign_trait<Rational> for Rational {
            #[inline]
            fn $assign(&mut self, rhs: Rational) {
                *self = $kernel(self, &rhs);
            }
        }
        impl<'a> $assign_trait<&'a Rational> for Rational {
            #[inline]
            fn $assign(&mut self, rhs: &'a Rational) {
                *self = $kernel(self, rhs);
            }
        }
    };
}

fn sub_ref(x: &Rational, y: &Rational) -> Rational {
    add_ref(x, &neg_ref(y))
}

forward_binop!(Add, add, add_ref, AddAssign, add_assign);
forward_binop!(Sub, sub, sub_ref, SubAssign, sub_assign);
forward_binop!(Mul, mul, mul_ref, MulAssign, mul_assign);
forward_binop!(Div, div, div_ref, DivAssign, div_assign);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        neg_ref(&self)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        neg_ref(self)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small { num, den } => {
                num.hash(state);
                den.hash(state);
            }
            Repr::Big(b) => {
                b.numer().hash(state);
                b.denom().hash(state);
            }
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::from_int(n as i64)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_bigint(n)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational::from_big(r)
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational::ZERO
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational::ONE
    }
}

/// Exact text form: `p/q`, or `p` when `q = 1`.
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den: 1 } => write!(f, "{num}"),
            Repr::Small { num, den } => write!(f, "{num}/{den}"),
            Repr::Big(b) => {
                if b.is_integer() {
                    write!(f, "{}", b.numer())
                } else {
                    write!(f, "{}/{}", b.numer(), b.denom())
                }
            }
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse::<BigInt>().ok()
}

/// Parses `p`, `p/q` (optionally signed, surrounding whitespace ignored).
impl FromStr for Rational {
    type Err = LamiqError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || LamiqError::Parse(format!("not a rational: {s:?}"));
        let t = s.trim();
        if t.len() > 100_000 {
            return Err(bad());
        }
        match t.split_once('/') {
            None => parse_int(t).map(Rational::from_bigint).ok_or_else(bad),
            Some((n, d)) => {
                let n = parse_int(n.trim()).ok_or_else(bad)?;
                let d = parse_int(d.trim()).ok_or_else(bad)?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Rational::from_bigints(n, d))
            }
        }
    }
}

impl serde::Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Rational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Exact square root if `q` is the square of a rational.
pub fn rational_sqrt_exact(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    if let Some((n, d)) = q.as_small() {
        let rn = (n as u64).isqrt();
        let rd = (d as u64).isqrt();
        if rn * rn == n as u64 && rd * rd == d as u64 {
            return Some(Rational::new(rn as i64, rd as i64));
        }
        return None;
    }
    let n = q.numer();
    let d = q.denom();
    let rn = n.sqrt();
    let rd = d.sqrt();
    if &rn * &rn == n && &rd * &rd == d {
        Some(Rational::from_bigints(rn, rd))
    } else {
        None
    }
}

/// Exact `k`-th root if one exists (`q >= 0` for even `k`).
pub fn rational_root_exact(q: &Rational, k: u32) -> Option<Rational> {
    if k == 0 {
        return None;
    }
    let neg = q.is_negative();
    if neg && k % 2 == 0 {
        return None;
    }
    let n = q.numer().abs();
    let d = q.denom();
    let rn = n.nth_root(k);
    let rd = d.nth_root(k);
    if num_traits::pow(rn.clone(), k as usize) == n && num_traits::pow(rd.clone(), k as usize) == d {
        let r = Rational::from_bigints(rn, rd);
        Some(if neg { -r } else { r })
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(r: &Rational) -> BigRational {
        r.to_big()
    }

    #[test]
    fn parse_and_display() {
        let r: Rational = "6/-4".parse().unwrap();
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!("7".parse::<Rational>().unwrap().to_string(), "7");
        assert_eq!(
            "1371514291/19110297600".parse::<Rational>().unwrap().to_string(),
            "1371514291/19110297600"
        );
        assert!("1/0".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
        assert!("1/2/3".parse::<Rational>().is_err());
        assert!("0x10".parse::<Rational>().is_err());
        assert!("--1".parse::<Rational>().is_err());
    }

    #[test]
    fn overflow_promotes_to_big() {
        let x = Rational::new(i64::MAX, 1);
        let y = &x + &x;
        assert_eq!(y.to_string(), "18446744073709551614");
        assert_eq!(&y - &x, x);
        let z = &x * &x;
        assert_eq!(&z / &x, x);
        let m = Rational::from_int(i64::MIN);
        assert_eq!((-&m).to_string(), "9223372036854775808");
        assert_eq!(&m + &Rational::one(), Rational::new(i64::MIN + 1, 1));
    }

    #[test]
    fn exact_roots() {
        assert_eq!(rational_sqrt_exact(&Rational::new(9, 4)), Some(Rational::new(3, 2)));
        assert_eq!(rational_sqrt_exact(&Rational::new(1, 2)), None);
        assert_eq!(rational_root_exact(&Rational::new(-8, 27), 3), Some(Rational::new(-2, 3)));
        assert_eq!(rational_root_exact(&Rational::one(), 9), Some(Rational::one()));
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        prop_oneof![
            (any::<i64>(), 1i64..i64::MAX).prop_map(|(n, d)| Rational::new(n, d)),
            (-1000i64..1000, 1i64..50).prop_map(|(n, d)| Rational::new(n, d)),
            (any::<i128>(), 1u64..u64::MAX).prop_map(|(n, d)| Rational::from_bigints(
                BigInt::from(n) * BigInt::from(n),
                BigInt::from(d)
            )),
        ]
    }

    proptest! {
        #[test]
        fn agrees_with_bigrational(x in arb_rational(), y in arb_rational()) {
            prop_assert_eq!(big(&(&x + &y)), big(&x) + big(&y));
            prop_assert_eq!(big(&(&x - &y)), big(&x) - big(&y));
            prop_assert_eq!(big(&(&x * &y)), big(&x) * big(&y));
            if !y.is_zero() {
                prop_assert_eq!(big(&(&x / &y)), big(&x) / big(&y));
            }
            prop_assert_eq!(x.cmp(&y), big(&x).cmp(&big(&y)));
            // canonical representation: round-trip through BigRational is identity
            prop_assert_eq!(Rational::from_big(big(&(&x * &y))), &x * &y);
        }

        #[test]
        fn field_axioms(x in arb_rational(), y in arb_rational(), z in arb_rational()) {
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x + &(-&x), Rational::zero());
            if !x.is_zero() {
                prop_assert_eq!(&x * &x.recip(), Rational::one());
            }
        }

        #[test]
        fn text_round_trip(x in arb_rational()) {
            prop_assert_eq!(x.to_string().parse::<Rational>().unwrap(), x);
        }
    }
}
