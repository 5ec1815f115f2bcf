//! Phase boundary detection along a one-parameter family.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::error::{LamiqError, Result};
use crate::exactnum::Rational;
use crate::lattice::LaminatedFamily;
use crate::symmetry::GroupSpec;
use crate::voronoi::EnumerationConfig;

use super::skeleton::{PhaseSignature, Skeleton};

#[derive(Clone, Debug, Serialize)]
pub struct ScanConfig {
    /// Number of equal steps in `a` across the interval.
    pub grid: usize,
    /// Bisection stops once a bracket is this narrow in `ν`.
    pub tolerance: Rational,
    /// Maximum number of skeletons built (one per phase visited).
    pub max_skeletons: usize,
    pub enumeration: EnumerationConfig,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            grid: 8,
            tolerance: Rational::new(1, 1_000_000),
            max_skeletons: 32,
            enumeration: EnumerationConfig::default(),
        }
    }
}

/// A bracket `[ν_lo, ν_hi]` known to contain a change of combinatorial type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhaseBracket {
    pub a_lo: Rational,
    pub a_hi: Rational,
    pub nu_lo: Rational,
    pub nu_hi: Rational,
}

/// The stretch of the scanned interval covered by one combinatorial type.
#[derive(Clone, Debug, Serialize)]
pub struct PhaseSpan {
    /// Smallest and largest scanned `a` at which the type was confirmed.
    pub a_lo: Rational,
    pub a_hi: Rational,
    pub signature: PhaseSignature,
}

#[derive(Clone, Debug, Serialize)]
pub struct PhaseScan {
    pub nu_lo: Rational,
    pub nu_hi: Rational,
    pub boundaries: Vec<PhaseBracket>,
    pub phases: Vec<PhaseSpan>,
    /// Set when the skeleton budget ran out before the interval was covered.
    pub exhausted: bool,
}

/// `⌈√ν·10³⌉/10³` or `⌊√ν·10³⌋/10³`.
pub fn sqrt_approx(nu: &Rational, up: bool) -> Rational {
    let scale = BigInt::from(1_000_000);
    let x = nu.numer() * &scale;
    let d = nu.denom();
    // ⌊√(x/d)⌋ = ⌊√⌊x/d⌋⌋.
    let mut r = (&x / &d).sqrt();
    if up && &r * &r * &d < x {
        r += BigInt::one();
    }
    Rational::from_bigints(r, BigInt::from(1000))
}

/// Scans `ν ∈ [nu_lo, nu_hi]` for changes of combinatorial type.
///
/// A skeleton built at the left end is tested at successive grid points; at
/// the first failure the interval between the last success and the failure
/// is bisected down to the tolerance, and a new skeleton is built just past
/// the boundary.
pub fn detect_phase_boundaries(
    family: &LaminatedFamily,
    group: &GroupSpec,
    nu_lo: &Rational,
    nu_hi: &Rational,
    cfg: &ScanConfig,
) -> Result<(PhaseScan, Vec<Skeleton>)> {
    if !nu_lo.is_positive() || nu_lo >= nu_hi {
        return Err(LamiqError::InvalidInput(format!("invalid ν interval [{nu_lo}, {nu_hi}]")));
    }
    let a_lo = sqrt_approx(nu_lo, true);
    let a_hi = sqrt_approx(nu_hi, false);
    if a_lo >= a_hi || cfg.grid == 0 {
        return Err(LamiqError::InvalidInput("ν interval too narrow to scan".into()));
    }
    let step = &(&a_hi - &a_lo) / &Rational::from_int(cfg.grid as i64);
    let grid: Vec<Rational> = (0..=cfg.grid as i64).map(|k| &a_lo + &(&step * &Rational::from_int(k))).collect();
    let two = Rational::from_int(2);
    let mut skeletons = vec![Skeleton::build(family, group, &grid[0], &cfg.enumeration)?];
    let mut spans = vec![PhaseSpan {
        a_lo: grid[0].clone(),
        a_hi: grid[0].clone(),
        signature: skeletons[0].signature(),
    }];
    let mut boundaries: Vec<PhaseBracket> = Vec::new();
    let mut exhausted = false;
    let mut k = 1;
    'scan: while k < grid.len() {
        let cur = skeletons.last().expect("nonempty");
        if cur.is_valid_at(&grid[k])? {
            spans.last_mut().expect("nonempty").a_hi = grid[k].clone();
            k += 1;
            continue;
        }
        let mut x = spans.last().expect("nonempty").a_hi.clone();
        let mut y = grid[k].clone();
        while &(&y.square() - &x.square()) > &cfg.tolerance {
            let m = &(&x + &y) / &two;
            if cur.is_valid_at(&m)? {
                x = m;
            } else {
                y = m;
            }
        }
        spans.last_mut().expect("nonempty").a_hi = x.clone();
        match boundaries.last_mut() {
            // A skeleton valid only at one point: merge with the previous bracket.
            Some(prev) if prev.a_hi == x => {
                prev.a_hi = y.clone();
                prev.nu_hi = y.square();
                spans.pop();
                skeletons.pop();
            }
            _ => boundaries.push(PhaseBracket {
                nu_lo: x.square(),
                nu_hi: y.square(),
                a_lo: x,
                a_hi: y.clone(),
            }),
        }
        if skeletons.len() >= cfg.max_skeletons {
            exhausted = true;
            break 'scan;
        }
        let s = Skeleton::build(family, group, &y, &cfg.enumeration)?;
        spans.push(PhaseSpan {
            a_lo: y.clone(),
            a_hi: y,
            signature: s.signature(),
        });
        skeletons.push(s);
    }
    Ok((
        PhaseScan {
            nu_lo: nu_lo.clone(),
            nu_hi: nu_hi.clone(),
            boundaries,
            phases: spans,
            exhausted,
        },
        skeletons,
    ))
}
