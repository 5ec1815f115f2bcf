//! Numbers of the form `c·√s` with `c` rational and `s` a squarefree positive integer.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::factor::squarefree_decompose;
use super::rational::Rational;
use crate::error::{LamiqError, Result};

/// `coeff·√radicand`, canonical: radicand squarefree, and radicand 1 for zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RadQ {
    coeff: Rational,
    radicand: BigUint,
}

fn to_biguint(n: &BigInt) -> BigUint {
    n.magnitude().clone()
}

impl RadQ {
    pub fn zero() -> Self {
        RadQ {
            coeff: Rational::zero(),
            radicand: BigUint::one(),
        }
    }

    pub fn rational(c: Rational) -> Self {
        RadQ {
            coeff: c,
            radicand: BigUint::one(),
        }
    }

    /// Builds from a radicand already known to be squarefree. Not checked.
    pub fn from_parts_unchecked(coeff: Rational, radicand: BigUint) -> Self {
        if coeff.is_zero() {
            return RadQ::zero();
        }
        RadQ { coeff, radicand }
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn radicand(&self) -> &BigUint {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.radicand.is_one()
    }

    /// Square of the value, exactly.
    pub fn square(&self) -> Rational {
        self.coeff.square() * Rational::from_bigint(BigInt::from(self.radicand.clone()))
    }

    pub fn to_f64(&self) -> f64 {
        self.coeff.to_f64() * radicand_f64(&self.radicand).sqrt()
    }

    pub fn neg(&self) -> RadQ {
        RadQ {
            coeff: -&self.coeff,
            radicand: self.radicand.clone(),
        }
    }

    pub fn scale(&self, r: &Rational) -> RadQ {
        RadQ::from_parts_unchecked(&self.coeff * r, self.radicand.clone())
    }
}

fn radicand_f64(s: &BigUint) -> f64 {
    num_traits::ToPrimitive::to_f64(s).unwrap_or(f64::INFINITY)
}

/// Canonical form of `c·√s`.
pub fn radq_normalize(c: &Rational, s: &BigUint) -> Result<RadQ> {
    if s.is_zero() {
        return Err(LamiqError::Domain("radicand must be at least 1".into()));
    }
    if c.is_zero() {
        return Ok(RadQ::zero());
    }
    let (k, sf) = squarefree_decompose(s);
    Ok(RadQ {
        coeff: c * &Rational::from_bigint(BigInt::from(k)),
        radicand: sf,
    })
}

/// `√q` for rational `q ≥ 0`.
pub fn radq_sqrt(q: &Rational) -> Result<RadQ> {
    if q.is_negative() {
        return Err(LamiqError::Domain(format!("square root of negative {q}")));
    }
    if q.is_zero() {
        return Ok(RadQ::zero());
    }
    // √(p/r) = √(p·r)/r
    let p = to_biguint(&q.numer());
    let r = q.denom();
    radq_normalize(&Rational::from_bigints(BigInt::one(), r.clone()), &(p * to_biguint(&r)))
}

/// `√q` when the radicand is known in advance; fails if `q·s` is not a
/// rational square.
pub fn radq_sqrt_with_radicand(q: &Rational, s: &BigUint) -> Option<RadQ> {
    if q.is_zero() {
        return Some(RadQ::zero());
    }
    if q.is_negative() {
        return None;
    }
    let s_r = Rational::from_bigint(BigInt::from(s.clone()));
    let t = q / &s_r;
    let c = super::rational::rational_sqrt_exact(&t)?;
    Some(RadQ::from_parts_unchecked(c, s.clone()))
}

pub fn radq_mul(x: &RadQ, y: &RadQ) -> RadQ {
    if x.is_zero() || y.is_zero() {
        return RadQ::zero();
    }
    // √s·√t = g·√(s/g · t/g) with g = gcd(s, t); both squarefree so the result is too.
    let g = x.radicand.gcd(&y.radicand);
    let rad = (&x.radicand / &g) * (&y.radicand / &g);
    RadQ {
        coeff: &x.coeff * &y.coeff * Rational::from_bigint(BigInt::from_biguint(Sign::Plus, g)),
        radicand: rad,
    }
}

pub fn radq_add(x: &RadQ, y: &RadQ) -> Result<RadQ> {
    if x.is_zero() {
        return Ok(y.clone());
    }
    if y.is_zero() {
        return Ok(x.clone());
    }
    if x.radicand != y.radicand {
        return Err(LamiqError::IncompatibleRadicand(
            x.radicand.to_string(),
            y.radicand.to_string(),
        ));
    }
    Ok(RadQ::from_parts_unchecked(&x.coeff + &y.coeff, x.radicand.clone()))
}

impl PartialOrd for RadQ {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        let a = self.coeff.signum();
        let b = other.coeff.signum();
        if a != b {
            return Some(a.cmp(&b));
        }
        // Same sign: compare squares, flipping for negatives.
        let ord = self.square().cmp(&other.square());
        Some(if a < 0 { ord.reverse() } else { ord })
    }
}

impl fmt::Display for RadQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand.is_one() {
            write!(f, "{}", self.coeff)
        } else {
            write!(f, "{}·√{}", self.coeff, self.radicand)
        }
    }
}

impl fmt::Debug for RadQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct RadQWire {
    coeff: String,
    radicand: String,
}

/// Wire format `{"coeff": "p/q", "radicand": "s"}`.
impl Serialize for RadQ {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RadQWire {
            coeff: self.coeff.to_string(),
            radicand: self.radicand.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RadQ {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = RadQWire::deserialize(d)?;
        parse_radq_parts(&w.coeff, &w.radicand).map_err(serde::de::Error::custom)
    }
}

/// Parses and normalizes the two wire fields.
pub fn parse_radq_parts(coeff: &str, radicand: &str) -> Result<RadQ> {
    let c: Rational = coeff.parse()?;
    let t = radicand.trim();
    if t.is_empty() || t.len() > 60 || !t.bytes().all(|b| b.is_ascii_digit()) {
        return Err(LamiqError::Parse(format!("bad radicand {radicand:?}")));
    }
    let s: BigUint = t
        .parse()
        .map_err(|_| LamiqError::Parse(format!("bad radicand {radicand:?}")))?;
    radq_normalize(&c, &s)
}

/// Parses the JSON wire form of a [`RadQ`].
pub fn parse_radq_json(text: &str) -> Result<RadQ> {
    serde_json::from_str(text).map_err(|e| LamiqError::Parse(e.to_string()))
}

impl RadQ {
    pub fn abs(&self) -> RadQ {
        if self.coeff.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn is_positive(&self) -> bool {
        self.coeff.is_positive()
    }
}
