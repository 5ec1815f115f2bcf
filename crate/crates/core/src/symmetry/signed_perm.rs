//! Signed coordinate permutations, the isometries used throughout.
//!
//! `g` acts by `(g·x)ᵢ = sᵢ · x_{π(i)}`, i.e. as the matrix with entry `sᵢ`
//! at `(i, π(i))`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{LamiqError, Result};
use crate::exactnum::{QMatrix, QVector, Rational};

/// Largest supported dimension.
pub const MAX_DIM: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    n: u8,
    perm: [u8; MAX_DIM],
    /// Bit `i` set means coordinate `i` of the image is negated.
    signs: u16,
}

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_DIM);
        let mut perm = [0u8; MAX_DIM];
        for (i, p) in perm.iter_mut().enumerate() {
            *p = i as u8;
        }
        SignedPerm {
            n: n as u8,
            perm,
            signs: 0,
        }
    }

    /// Builds from the image-source map and per-coordinate negations.
    pub fn new(perm: &[usize], negate: &[bool]) -> Result<Self> {
        let n = perm.len();
        if n == 0 || n > MAX_DIM || negate.len() != n {
            return Err(LamiqError::InvalidInput(format!("signed permutation of bad length {n}")));
        }
        let mut seen = [false; MAX_DIM];
        let mut p = [0u8; MAX_DIM];
        for (i, &j) in perm.iter().enumerate() {
            if j >= n || seen[j] {
                return Err(LamiqError::InvalidInput(format!("{perm:?} is not a permutation")));
            }
            seen[j] = true;
            p[i] = j as u8;
        }
        for (i, slot) in p.iter_mut().enumerate().skip(n) {
            *slot = i as u8;
        }
        let signs = negate
            .iter()
            .enumerate()
            .fold(0u16, |acc, (i, &neg)| if neg { acc | (1 << i) } else { acc });
        Ok(SignedPerm {
            n: n as u8,
            perm: p,
            signs,
        })
    }

    /// Negates the listed coordinates.
    pub fn negation(n: usize, coords: &[usize]) -> Self {
        let mut g = Self::identity(n);
        for &c in coords {
            g.signs |= 1 << c;
        }
        g
    }

    /// Exchanges coordinates `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut g = Self::identity(n);
        g.perm.swap(i, j);
        g
    }

    /// Cycles the coordinates in `cycle`: `x_{c₀} ← x_{c₁} ← … ← x_{c₀}`.
    pub fn cycle(n: usize, cycle: &[usize]) -> Self {
        let mut g = Self::identity(n);
        for k in 0..cycle.len() {
            g.perm[cycle[k]] = cycle[(k + 1) % cycle.len()] as u8;
        }
        g
    }

    pub fn dim(&self) -> usize {
        self.n as usize
    }

    /// Source coordinate of image coordinate `i`.
    #[inline]
    pub fn source(&self, i: usize) -> usize {
        self.perm[i] as usize
    }

    #[inline]
    pub fn is_negated(&self, i: usize) -> bool {
        self.signs >> i & 1 == 1
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim())
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        debug_assert_eq!(self.n, other.n);
        let mut out = Self::identity(self.dim());
        for i in 0..self.dim() {
            let pi = self.perm[i] as usize;
            out.perm[i] = other.perm[pi];
            if self.is_negated(i) != other.is_negated(pi) {
                out.signs |= 1 << i;
            }
        }
        out
    }

    pub fn inverse(&self) -> SignedPerm {
        let mut out = Self::identity(self.dim());
        for i in 0..self.dim() {
            let j = self.perm[i] as usize;
            out.perm[j] = i as u8;
            if self.is_negated(i) {
                out.signs |= 1 << j;
            }
        }
        out
    }

    pub fn apply(&self, x: &QVector) -> QVector {
        QVector(
            (0..self.dim())
                .map(|i| {
                    let v = &x[self.source(i)];
                    if self.is_negated(i) {
                        -v
                    } else {
                        v.clone()
                    }
                })
                .collect(),
        )
    }

    pub fn apply_i64(&self, x: &[i64]) -> Vec<i64> {
        (0..self.dim())
            .map(|i| {
                let v = x[self.source(i)];
                if self.is_negated(i) {
                    -v
                } else {
                    v
                }
            })
            .collect()
    }

    pub fn apply_f64(&self, x: &[f64]) -> Vec<f64> {
        (0..self.dim())
            .map(|i| {
                let v = x[self.source(i)];
                if self.is_negated(i) {
                    -v
                } else {
                    v
                }
            })
            .collect()
    }

    /// `T·M·Tᵀ` for a square matrix `M`.
    pub fn conjugate(&self, m: &QMatrix) -> QMatrix {
        let n = self.dim();
        let mut out = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = &m[(self.source(i), self.source(j))];
                out[(i, j)] = if self.is_negated(i) != self.is_negated(j) { -v } else { v.clone() };
            }
        }
        out
    }

    pub fn to_matrix(&self) -> QMatrix {
        let n = self.dim();
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, self.source(i))] = if self.is_negated(i) {
                Rational::from_int(-1)
            } else {
                Rational::one()
            };
        }
        m
    }

    /// The action on the `2n` signed unit vectors, point `2j + s` standing for `(−1)^s e_j`.
    pub fn signed_point_action(&self) -> Vec<u16> {
        let n = self.dim();
        let mut out = vec![0u16; 2 * n];
        for i in 0..n {
            // g·e_j has its entry at the i with π(i) = j, carrying sign sᵢ.
            let j = self.source(i);
            let s = self.is_negated(i) as usize;
            out[2 * j] = (2 * i + s) as u16;
            out[2 * j + 1] = (2 * i + (1 - s)) as u16;
        }
        out
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if self.is_negated(i) {
                f.write_str("-")?;
            }
            write!(f, "{}", self.source(i) + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Words are whitespace-separated signed 1-based source indices, e.g.
/// `"-2 1 3"` maps `x` to `(−x₂, x₁, x₃)`.
impl FromStr for SignedPerm {
    type Err = LamiqError;

    fn from_str(s: &str) -> Result<Self> {
        let mut perm = Vec::new();
        let mut neg = Vec::new();
        for tok in s.split_whitespace() {
            if perm.len() >= MAX_DIM {
                return Err(LamiqError::Parse(format!("signed permutation longer than {MAX_DIM}")));
            }
            let (negative, digits) = match tok.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, tok.strip_prefix('+').unwrap_or(tok)),
            };
            if digits.is_empty() || digits.len() > 2 || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(LamiqError::Parse(format!("bad signed index {tok:?}")));
            }
            let k: usize = digits.parse().map_err(|_| LamiqError::Parse(format!("bad signed index {tok:?}")))?;
            if k == 0 {
                return Err(LamiqError::Parse("signed indices are 1-based".into()));
            }
            perm.push(k - 1);
            neg.push(negative);
        }
        if perm.is_empty() {
            return Err(LamiqError::Parse("empty signed permutation".into()));
        }
        SignedPerm::new(&perm, &neg).map_err(|e| LamiqError::Parse(e.to_string()))
    }
}

impl Serialize for SignedPerm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SignedPerm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_perm(n: usize) -> impl Strategy<Value = SignedPerm> {
        (Just((0..n).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec(any::<bool>(), n))
            .prop_map(|(p, s)| SignedPerm::new(&p, &s).unwrap())
    }

    #[test]
    fn word_round_trip() {
        let g: SignedPerm = "-2 1 3".parse().unwrap();
        assert_eq!(g.to_string(), "-2 1 3");
        let x = QVector::from_ints(&[10, 20, 30]);
        assert_eq!(g.apply(&x), QVector::from_ints(&[-20, 10, 30]));
        assert!("1 1".parse::<SignedPerm>().is_err());
        assert!("0 1".parse::<SignedPerm>().is_err());
        assert!("".parse::<SignedPerm>().is_err());
        assert!("1 x".parse::<SignedPerm>().is_err());
    }

    proptest! {
        #[test]
        fn action_is_a_homomorphism(g in arb_perm(6), h in arb_perm(6), x in prop::collection::vec(-50i64..50, 6)) {
            let v = QVector::from_ints(&x);
            prop_assert_eq!(g.compose(&h).apply(&v), g.apply(&h.apply(&v)));
            prop_assert_eq!(g.inverse().apply(&g.apply(&v)), v.clone());
            prop_assert_eq!(g.apply(&v).norm2(), v.norm2());
            prop_assert_eq!(g.to_matrix().mul_vec(&v), g.apply(&v));
            let m = QMatrix::from_rows(&[v.clone(), v.clone(), v.clone(), v.clone(), v.clone(), v.clone()]);
            let t = g.to_matrix();
            prop_assert_eq!(g.conjugate(&m), t.mul(&m).mul(&t.transpose()));
            prop_assert_eq!(g.to_string().parse::<SignedPerm>().unwrap(), g);
        }

        #[test]
        fn signed_point_action_matches(g in arb_perm(5), j in 0usize..5) {
            let act = g.signed_point_action();
            let img = g.apply(&QVector::unit(5, j));
            let p = act[2 * j] as usize;
            let mut expect = QVector::unit(5, p / 2);
            if p % 2 == 1 {
                expect = expect.neg();
            }
            prop_assert_eq!(img, expect);
        }
    }
}
