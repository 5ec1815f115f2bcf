//! Rigorous real approximations as dyadic intervals with outward rounding.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::Rational;
use crate::error::{LamiqError, Result};

/// Default working precision in bits.
pub const DEFAULT_PRECISION: u32 = 128;

/// A real number known to lie in `[lo, hi]`, both endpoints dyadic with at
/// most `precision` significant bits.
#[derive(Clone, PartialEq, Eq)]
pub struct ApproxReal {
    lo: Rational,
    hi: Rational,
    precision: u32,
}

/// Serialized as exact endpoints plus a decimal midpoint.
impl serde::Serialize for ApproxReal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ApproxReal", 3)?;
        st.serialize_field("lo", &self.lo)?;
        st.serialize_field("hi", &self.hi)?;
        st.serialize_field("decimal", &self.to_decimal(20))?;
        st.end()
    }
}

fn pow2(e: u64) -> BigInt {
    BigInt::one() << e
}

/// Floor/ceil of `q·2^s` for integer `s` of either sign.
fn scaled_floor_ceil(q: &Rational, s: i64) -> (BigInt, BigInt) {
    let (mut n, mut d) = (q.numer(), q.denom());
    if s >= 0 {
        n <<= s as u64;
    } else {
        d <<= (-s) as u64;
    }
    let f = num_integer::Integer::div_floor(&n, &d);
    let c = if &f * &d == n { f.clone() } else { &f + 1 };
    (f, c)
}

fn from_scaled(m: BigInt, s: i64) -> Rational {
    if s >= 0 {
        Rational::from_bigints(m, pow2(s as u64))
    } else {
        Rational::from_bigint(m << ((-s) as u64))
    }
}

/// Approximate `log2 |q|` (exact to within one).
fn log2_estimate(q: &Rational) -> i64 {
    q.numer().bits() as i64 - q.denom().bits() as i64
}

/// Rounds `q` outward to `prec` significant bits; `up` selects the direction.
fn round_dir(q: &Rational, prec: u32, up: bool) -> Rational {
    if q.is_zero() {
        return Rational::zero();
    }
    let s = prec as i64 - log2_estimate(q);
    let (f, c) = scaled_floor_ceil(q, s);
    from_scaled(if up { c } else { f }, s)
}

impl ApproxReal {
    pub fn from_rational(q: &Rational, precision: u32) -> Self {
        ApproxReal {
            lo: round_dir(q, precision, false),
            hi: round_dir(q, precision, true),
            precision,
        }
    }

    fn from_bounds(lo: Rational, hi: Rational, precision: u32) -> Self {
        debug_assert!(lo <= hi);
        ApproxReal {
            lo: round_dir(&lo, precision, false),
            hi: round_dir(&hi, precision, true),
            precision,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Midpoint of the enclosure.
    pub fn value(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_int(2)
    }

    /// Half-width: the exact quantity is within this of [`value`](Self::value).
    pub fn error_bound(&self) -> Rational {
        (&self.hi - &self.lo) / Rational::from_int(2)
    }

    pub fn contains(&self, q: &Rational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn to_f64(&self) -> f64 {
        self.value().to_f64()
    }

    fn prec_with(&self, other: &ApproxReal) -> u32 {
        self.precision.min(other.precision)
    }

    pub fn add(&self, other: &ApproxReal) -> ApproxReal {
        Self::from_bounds(&self.lo + &other.lo, &self.hi + &other.hi, self.prec_with(other))
    }

    pub fn sub(&self, other: &ApproxReal) -> ApproxReal {
        Self::from_bounds(&self.lo - &other.hi, &self.hi - &other.lo, self.prec_with(other))
    }

    pub fn neg(&self) -> ApproxReal {
        ApproxReal {
            lo: -&self.hi,
            hi: -&self.lo,
            precision: self.precision,
        }
    }

    pub fn mul(&self, other: &ApproxReal) -> ApproxReal {
        let c = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Self::from_bounds(lo, hi, self.prec_with(other))
    }

    pub fn div(&self, other: &ApproxReal) -> Result<ApproxReal> {
        if other.lo.signum() * other.hi.signum() <= 0 {
            return Err(LamiqError::Domain("interval division by an interval containing zero".into()));
        }
        let inv = ApproxReal::from_bounds(other.hi.recip(), other.lo.recip(), other.precision);
        Ok(self.mul(&inv))
    }

    /// `k`-th root for a nonnegative enclosure.
    pub fn nth_root(&self, k: u32) -> Result<ApproxReal> {
        if k == 0 {
            return Err(LamiqError::Domain("zeroth root".into()));
        }
        if self.lo.is_negative() {
            return Err(LamiqError::Domain("root of a possibly negative value".into()));
        }
        let lo = root_bound(&self.lo, k, self.precision, false);
        let hi = root_bound(&self.hi, k, self.precision, true);
        Ok(ApproxReal {
            lo,
            hi,
            precision: self.precision,
        })
    }

    pub fn sqrt(&self) -> Result<ApproxReal> {
        self.nth_root(2)
    }

    pub fn powi(&self, e: u32) -> ApproxReal {
        let mut acc = ApproxReal::from_rational(&Rational::one(), self.precision);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Renders `value ± bound` with `digits` decimals.
    pub fn to_decimal(&self, digits: usize) -> String {
        format!(
            "{} ± {}",
            decimal_string(&self.value(), digits),
            scientific_upper(&self.error_bound())
        )
    }
}

/// Lower (or upper) bound for `q^(1/k)` with about `prec` significant bits.
fn root_bound(q: &Rational, k: u32, prec: u32, up: bool) -> Rational {
    if q.is_zero() {
        return Rational::zero();
    }
    // r = q^(1/k) ≈ 2^(log2(q)/k); scale by 2^s with s chosen for prec bits.
    let s = prec as i64 + 2 - log2_estimate(q) / k as i64;
    let s = s.max(0);
    let (f, c) = scaled_floor_ceil(q, s * k as i64);
    if up {
        let r = c.nth_root(k);
        let r = if num_traits::pow(r.clone(), k as usize) == c { r } else { r + 1 };
        from_scaled(r, s)
    } else {
        from_scaled(f.nth_root(k), s)
    }
}

impl fmt::Debug for ApproxReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo.to_f64(), self.hi.to_f64())
    }
}

impl fmt::Display for ApproxReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(20))
    }
}

/// Decimal expansion of `q` rounded half away from zero to `digits` places.
pub fn decimal_string(q: &Rational, digits: usize) -> String {
    let neg = q.is_negative();
    let scale: BigInt = num_traits::pow(BigInt::from(10), digits);
    let a = q.abs();
    let scaled: BigInt = (a.numer() * &scale * 2 + a.denom()) / (a.denom() * 2);
    let s = scaled.to_string();
    let (int, frac) = if digits == 0 {
        (s, String::new())
    } else if s.len() > digits {
        let (i, f) = s.split_at(s.len() - digits);
        (i.to_string(), f.to_string())
    } else {
        ("0".to_string(), format!("{s:0>digits$}"))
    };
    let body = if digits == 0 { int } else { format!("{int}.{frac}") };
    if neg && !scaled.is_zero() {
        format!("-{body}")
    } else {
        body
    }
}

/// A short decimal upper bound like `3e-38` for a nonnegative rational.
pub fn scientific_upper(q: &Rational) -> String {
    if q.is_zero() {
        return "0".into();
    }
    // Smallest e with q <= 10^e / 10, then print one significant digit rounded up.
    let mut e: i64 = 0;
    let ten = Rational::from_int(10);
    let mut x = q.clone();
    while x >= ten {
        x = &x / &ten;
        e += 1;
    }
    while x < Rational::one() {
        x = &x * &ten;
        e -= 1;
    }
    let d = x.ceil();
    let (d, e) = if d >= BigInt::from(10) { (BigInt::one(), e + 1) } else { (d, e) };
    format!("{d}e{e}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn sqrt_two_encloses() {
        let x = ApproxReal::from_rational(&r(2, 1), 128).sqrt().unwrap();
        assert!(x.lo().square() <= r(2, 1));
        assert!(x.hi().square() >= r(2, 1));
        assert!(x.error_bound() < Rational::from_bigints(BigInt::one(), pow2(120)));
        assert!(x.to_decimal(10).starts_with("1.4142135624"));
    }

    #[test]
    fn cube_root_encloses() {
        let x = ApproxReal::from_rational(&r(10, 3), 64).nth_root(3).unwrap();
        assert!(x.lo().pow(3) <= r(10, 3) && x.hi().pow(3) >= r(10, 3));
    }

    #[test]
    fn decimals() {
        assert_eq!(decimal_string(&r(1, 3), 4), "0.3333");
        assert_eq!(decimal_string(&r(2, 3), 4), "0.6667");
        assert_eq!(decimal_string(&r(-1, 8), 2), "-0.13");
        assert_eq!(decimal_string(&r(123, 1), 0), "123");
        assert_eq!(decimal_string(&r(1, 1000), 2), "0.00");
        assert_eq!(scientific_upper(&r(3, 1000)), "3e-3");
    }

    #[test]
    fn division_by_zero_interval() {
        let z = ApproxReal::from_rational(&r(0, 1), 64);
        let one = ApproxReal::from_rational(&r(1, 1), 64);
        assert!(one.div(&z).is_err());
    }

    proptest! {
        #[test]
        fn arithmetic_preserves_containment(
            a in -10_000i64..10_000, b in 1i64..1000, c in -10_000i64..10_000, d in 1i64..1000,
            prec in 8u32..100,
        ) {
            let x = r(a, b);
            let y = r(c, d);
            let ax = ApproxReal::from_rational(&x, prec);
            let ay = ApproxReal::from_rational(&y, prec);
            prop_assert!(ax.contains(&x));
            prop_assert!(ax.add(&ay).contains(&(&x + &y)));
            prop_assert!(ax.sub(&ay).contains(&(&x - &y)));
            prop_assert!(ax.mul(&ay).contains(&(&x * &y)));
            if !y.is_zero() {
                prop_assert!(ax.div(&ay).unwrap().contains(&(&x / &y)));
            }
            let sq = ApproxReal::from_rational(&x.square(), prec).sqrt().unwrap();
            prop_assert!(sq.contains(&x.abs()));
        }
    }
}
