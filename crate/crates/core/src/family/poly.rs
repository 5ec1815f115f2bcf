//! Univariate rational polynomials in `ν = a²` with exact real-root isolation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{LamiqError, Result};
use crate::exactnum::{solve_linear, QMatrix, QVector, Rational, SolveResult};

/// Coefficients in ascending powers; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolyNu {
    pub coeffs: Vec<Rational>,
}

impl PolyNu {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyNu { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        PolyNu::new(c.iter().map(|&x| Rational::from_int(x)).collect())
    }

    pub fn zero() -> Self {
        PolyNu { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        PolyNu::new(vec![c])
    }

    /// `ν`
    pub fn nu() -> Self {
        PolyNu::from_ints(&[0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn add(&self, o: &PolyNu) -> PolyNu {
        let n = self.coeffs.len().max(o.coeffs.len());
        PolyNu::new((0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &PolyNu) -> PolyNu {
        self.add(&o.scale(&Rational::from_int(-1)))
    }

    pub fn scale(&self, s: &Rational) -> PolyNu {
        PolyNu::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, o: &PolyNu) -> PolyNu {
        if self.is_zero() || o.is_zero() {
            return PolyNu::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        PolyNu::new(out)
    }

    pub fn pow(&self, e: u32) -> PolyNu {
        (0..e).fold(PolyNu::constant(Rational::one()), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> PolyNu {
        PolyNu::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &Rational::from_int(k as i64))
                .collect(),
        )
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, d: &PolyNu) -> (PolyNu, PolyNu) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading();
        let mut r = self.coeffs.clone();
        let mut q = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let f = &r[r.len() - 1] / &lead;
            for (i, c) in d.coeffs.iter().enumerate() {
                r[k + i] = &r[k + i] - &(&f * c);
            }
            q[k] = f;
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        (PolyNu::new(q), PolyNu::new(r))
    }

    /// Multiplicity of the root `x` (0 if not a root; the zero polynomial has none).
    pub fn root_multiplicity(&self, x: &Rational) -> usize {
        let lin = PolyNu::new(vec![-x, Rational::one()]);
        let mut p = self.clone();
        let mut m = 0;
        while !p.is_zero() && p.eval(x).is_zero() {
            p = p.div_rem(&lin).0;
            m += 1;
        }
        m
    }

    /// Integer polynomial with content 1, positive leading coefficient and
    /// no factor of `ν`.
    pub fn primitive(&self) -> Result<PolyNu> {
        if self.is_zero() {
            return Err(LamiqError::Domain("primitive part of the zero polynomial".into()));
        }
        let skip = self.coeffs.iter().position(|c| !c.is_zero()).expect("nonzero");
        let cs = &self.coeffs[skip..];
        let lcm = cs.iter().fold(BigInt::one(), |l, c| l.lcm(&c.denom()));
        let ints: Vec<BigInt> = cs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
        let mut g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if ints.last().expect("nonzero").is_negative() {
            g = -g;
        }
        Ok(PolyNu::new(ints.into_iter().map(|x| Rational::from_bigints(x, g.clone())).collect()))
    }

    /// Sturm sequence `p, p′, −rem(p, p′), …`.
    pub fn sturm_sequence(&self) -> Vec<PolyNu> {
        let mut seq = vec![self.clone(), self.derivative()];
        while !seq[seq.len() - 1].is_zero() {
            let k = seq.len();
            let r = seq[k - 2].div_rem(&seq[k - 1]).1;
            if r.is_zero() {
                break;
            }
            // Rescale to a primitive form to keep coefficients small; only signs matter.
            let r = r.scale(&Rational::from_int(-1));
            let lead_sign = r.leading().signum();
            let r = r.primitive_keep_sign(lead_sign);
            seq.push(r);
        }
        seq.retain(|p| !p.is_zero());
        seq
    }

    fn primitive_keep_sign(&self, sign: i32) -> PolyNu {
        let lcm = self.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(&c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        let p = PolyNu::new(ints.into_iter().map(|x| Rational::from_bigints(x, g.clone())).collect());
        if p.leading().signum() != sign {
            p.scale(&Rational::from_int(-1))
        } else {
            p
        }
    }

    /// Squarefree part `p / gcd(p, p′)`.
    pub fn squarefree(&self) -> PolyNu {
        let mut a = self.clone();
        let mut b = self.derivative();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        if a.degree() == Some(0) {
            return self.clone();
        }
        self.div_rem(&a).0
    }

    /// Fits the unique polynomial of degree `< xs.len()` through the points.
    pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> Result<PolyNu> {
        let n = xs.len();
        let rows: Vec<QVector> = xs.iter().map(|x| QVector((0..n as u32).map(|k| x.pow(k)).collect())).collect();
        match solve_linear(&QMatrix::from_rows(&rows), &QVector(ys.to_vec())) {
            SolveResult::Unique(c) => Ok(PolyNu::new(c.0)),
            _ => Err(LamiqError::InvalidInput("interpolation nodes are not distinct".into())),
        }
    }
}

fn sign_changes(seq: &[PolyNu], x: &Rational) -> usize {
    let signs: Vec<i32> = seq.iter().map(|p| p.eval(x).signum()).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// A half-open interval `(lo, hi]` containing exactly one real root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RootInterval {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        &(&self.lo + &self.hi) / &Rational::from_int(2)
    }
}

/// Cauchy bound on the absolute value of every root.
fn root_bound(p: &PolyNu) -> Rational {
    let lead = p.leading().abs();
    let m = p.coeffs[..p.coeffs.len() - 1]
        .iter()
        .map(|c| &c.abs() / &lead)
        .fold(Rational::zero(), Rational::max);
    &m + &Rational::one()
}

/// Isolates every distinct real root of `p` in `(lo, hi]`.
pub fn isolate_roots_in(p: &PolyNu, lo: &Rational, hi: &Rational) -> Result<Vec<RootInterval>> {
    if p.is_zero() {
        return Err(LamiqError::Domain("roots of the zero polynomial".into()));
    }
    let q = p.squarefree();
    if q.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let seq = q.sturm_sequence();
    let count = |a: &Rational, b: &Rational| sign_changes(&seq, a) - sign_changes(&seq, b);
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone())];
    while let Some((a, b)) = stack.pop() {
        match count(&a, &b) {
            0 => {}
            1 => out.push(RootInterval { lo: a, hi: b }),
            _ => {
                let m = &(&a + &b) / &Rational::from_int(2);
                stack.push((m.clone(), b));
                stack.push((a, m));
            }
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(out)
}

/// Isolates all real roots of `p`.
pub fn isolate_roots(p: &PolyNu) -> Result<Vec<RootInterval>> {
    if p.is_zero() {
        return Err(LamiqError::Domain("roots of the zero polynomial".into()));
    }
    let b = root_bound(p);
    isolate_roots_in(p, &-&b, &b)
}

/// Bisects an isolating interval until its width is at most `width`.
pub fn refine_root(p: &PolyNu, iv: &RootInterval, width: &Rational) -> RootInterval {
    let q = p.squarefree();
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    if q.eval(&hi).is_zero() {
        return RootInterval { lo: hi.clone(), hi };
    }
    let s_hi = q.eval(&hi).signum();
    while &(&hi - &lo) > width {
        let m = &(&lo + &hi) / &Rational::from_int(2);
        let s = q.eval(&m).signum();
        if s == 0 {
            return RootInterval { lo: m.clone(), hi: m };
        }
        if s == s_hi {
            hi = m;
        } else {
            lo = m;
        }
    }
    RootInterval { lo, hi }
}

impl fmt::Display for PolyNu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let a = c.abs();
            match (k, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => {}
                _ => write!(f, "{a}*")?,
            }
            match k {
                0 => {}
                1 => write!(f, "v")?,
                _ => write!(f, "v^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}
