//! Squarefree decomposition of positive integers by trial division and
//! Pollard–Brent rho.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

const TRIAL_LIMIT: u64 = 10_000;

const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Miller–Rabin with the first 13 prime bases: deterministic below
/// 3.3·10²⁴, probabilistic beyond.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for &p in &MR_BASES {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'bases: for &a in &MR_BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigUint, c: u64) -> Option<BigUint> {
    let one = BigUint::one();
    let c = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &c) % n;
    let mut y = BigUint::from(2u32);
    let mut r: u64 = 1;
    let mut q = BigUint::one();
    let m: u64 = 128;
    let mut g = BigUint::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut iterations: u64 = 0;
    while g == one {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g == one {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
        iterations += r;
        if iterations > 1 << 26 {
            return None;
        }
    }
    if g == *n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if g != one {
                break;
            }
        }
    }
    if g == *n {
        None
    } else {
        Some(g)
    }
}

fn factor_into(n: BigUint, out: &mut BTreeMap<BigUint, u32>) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(&n) {
        *out.entry(n).or_insert(0) += 1;
        return;
    }
    let r = n.sqrt();
    if &r * &r == n {
        let mut sub = BTreeMap::new();
        factor_into(r, &mut sub);
        for (p, e) in sub {
            *out.entry(p).or_insert(0) += 2 * e;
        }
        return;
    }
    for c in 1..64u64 {
        if let Some(d) = pollard_brent(&n, c) {
            let other = &n / &d;
            factor_into(d, out);
            factor_into(other, out);
            return;
        }
    }
    // Unsplittable within budget: treat as a prime power-free cofactor.
    *out.entry(n).or_insert(0) += 1;
}

/// Full factorization as a map prime → exponent.
pub fn factorize(n: &BigUint) -> BTreeMap<BigUint, u32> {
    let mut out = BTreeMap::new();
    let mut m = n.clone();
    if m.is_zero() {
        return out;
    }
    if let Some(small) = m.to_u64() {
        let mut v = small;
        let mut p = 2u64;
        while p * p <= v && p <= TRIAL_LIMIT {
            while v % p == 0 {
                *out.entry(BigUint::from(p)).or_insert(0) += 1;
                v /= p;
            }
            p += if p == 2 { 1 } else { 2 };
        }
        m = BigUint::from(v);
    } else {
        let mut p = 2u64;
        while p <= TRIAL_LIMIT {
            let bp = BigUint::from(p);
            while (&m % &bp).is_zero() {
                *out.entry(bp.clone()).or_insert(0) += 1;
                m /= &bp;
            }
            p += if p == 2 { 1 } else { 2 };
        }
    }
    factor_into(m, &mut out);
    out
}

/// Writes `n = k²·s` with `s` squarefree; returns `(k, s)`. `n` must be positive.
pub fn squarefree_decompose(n: &BigUint) -> (BigUint, BigUint) {
    assert!(!n.is_zero(), "squarefree decomposition of zero");
    let mut k = BigUint::one();
    let mut s = BigUint::one();
    for (p, e) in factorize(n) {
        for _ in 0..e / 2 {
            k *= &p;
        }
        if e % 2 == 1 {
            s *= &p;
        }
    }
    (k, s)
}
