//! Exact reconstruction of the moment polynomials of one phase, the
//! extremum polynomial, the optimum and boundary differences.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{LamiqError, Result};
use crate::exactnum::{ApproxReal, Rational};
use crate::moments::CellSummary;

use super::poly::{isolate_roots_in, refine_root, PolyNu, RootInterval};
use super::skeleton::{PhaseModel, PhaseSignature, Skeleton};

#[derive(Clone, Debug, Serialize)]
pub struct FitConfig {
    /// Held-out samples checked after fitting.
    pub held_out: usize,
    /// Fraction of the bracket trimmed from each end before sampling.
    pub margin: Rational,
    /// Denominator exponent of the dyadic samples.
    pub dyadic_bits: u32,
    pub precision: u32,
    pub orbit_cap: usize,
}

impl Default for FitConfig {
    fn default() -> Self {
        FitConfig {
            held_out: 3,
            margin: Rational::new(1, 10),
            dyadic_bits: 10,
            precision: crate::exactnum::DEFAULT_PRECISION,
            orbit_cap: crate::symmetry::DEFAULT_ORBIT_CAP,
        }
    }
}

/// Exact samples of one phase and the polynomials `a³U`, `a³α`, `a³β` in `ν`.
#[derive(Clone, Debug, Serialize)]
pub struct PhaseFit {
    pub a_lo: Rational,
    pub a_hi: Rational,
    pub reference: Rational,
    pub signature: PhaseSignature,
    pub fit_samples: Vec<Rational>,
    pub held_out_samples: Vec<Rational>,
    pub u: PolyNu,
    pub alpha: Option<PolyNu>,
    pub beta: Option<PolyNu>,
    /// `V/a`, constant across the phase.
    pub volume_slope: Rational,
    /// `(a, V(a))` from the recursion at every sample, fitted and held out.
    pub sample_volumes: Vec<(Rational, Rational)>,
}

fn dyadic(x: &Rational, bits: u32) -> Rational {
    let s = Rational::from_int(1 << bits);
    Rational::from_bigints((x * &s).round_half_up(), num_bigint::BigInt::from(1i64 << bits))
}

/// Candidate sample points: dyadic rationals spread over the trimmed
/// interval, interleaved so that early candidates cover it evenly.
fn candidates(a_lo: &Rational, a_hi: &Rational, cfg: &FitConfig, count: usize) -> Vec<Rational> {
    let w = a_hi - a_lo;
    let lo = a_lo + &(&w * &cfg.margin);
    let hi = a_hi - &(&w * &cfg.margin);
    let mut out: Vec<Rational> = Vec::new();
    for level in [count, 2 * count + 1, 4 * count + 3] {
        let step = &(&hi - &lo) / &Rational::from_int(level as i64 - 1);
        for k in 0..level as i64 {
            let x = dyadic(&(&lo + &(&step * &Rational::from_int(k))), cfg.dyadic_bits);
            if x > *a_lo && x < *a_hi && !out.contains(&x) {
                out.push(x);
            }
        }
    }
    out
}

fn times_a3(x: &Rational, a: &Rational) -> Rational {
    x * &a.pow(3)
}

/// Samples the phase containing `[a_lo, a_hi]` and fits the moment polynomials.
///
/// The face lattice is built once at the sample nearest the middle; every
/// other sample re-solves the vertices of that skeleton. Samples where the
/// skeleton is invalid are skipped.
pub fn reconstruct_polynomials(
    scan_skeleton: &Skeleton,
    a_lo: &Rational,
    a_hi: &Rational,
    cfg: &FitConfig,
) -> Result<(PhaseFit, PhaseModel)> {
    let n = scan_skeleton.dim();
    let need = n + 4 + cfg.held_out;
    let mut picked = Vec::new();
    for c in candidates(a_lo, a_hi, cfg, need) {
        if picked.len() == need {
            break;
        }
        if scan_skeleton.is_valid_at(&c)? {
            picked.push(c);
        }
    }
    if picked.len() < need {
        return Err(LamiqError::PhaseContamination(format!(
            "only {} of {need} samples in [{a_lo}, {a_hi}] share one combinatorial type",
            picked.len()
        )));
    }
    picked.sort();
    let mid = &(a_lo + a_hi) / &Rational::from_int(2);
    let reference = picked
        .iter()
        .min_by_key(|x| (*x - &mid).abs())
        .cloned()
        .expect("nonempty");
    let skeleton = Skeleton::build(&scan_skeleton.family, &scan_skeleton.group, &reference, &crate::voronoi::EnumerationConfig::default())?;
    let model = PhaseModel::build(skeleton, cfg.orbit_cap)?;
    if model.skeleton.signature() != scan_skeleton.signature() {
        return Err(LamiqError::PhaseContamination(format!(
            "reference a = {reference} has a different combinatorial type from the scan"
        )));
    }
    let summaries: Vec<CellSummary> = picked
        .par_iter()
        .map(|a| model.summary_at(a, cfg.precision))
        .collect::<Result<_>>()?;
    // Interleave the held-out samples so they are not all at one end.
    let stride = picked.len() / cfg.held_out.max(1);
    let held: Vec<usize> = (0..cfg.held_out).map(|k| k * stride + stride / 2).collect();
    let fit_idx: Vec<usize> = (0..picked.len()).filter(|i| !held.contains(i)).collect();
    let nus: Vec<Rational> = fit_idx.iter().map(|&i| picked[i].square()).collect();
    let fit = |f: &dyn Fn(&CellSummary) -> Option<Rational>| -> Result<Option<PolyNu>> {
        let ys: Option<Vec<Rational>> = fit_idx.iter().map(|&i| f(&summaries[i]).map(|y| times_a3(&y, &picked[i]))).collect();
        let Some(ys) = ys else { return Ok(None) };
        let p = PolyNu::interpolate(&nus, &ys)?;
        for &i in &held {
            let y = f(&summaries[i]).map(|y| times_a3(&y, &picked[i]));
            if y.as_ref() != Some(&p.eval(&picked[i].square())) {
                return Err(LamiqError::PhaseContamination(format!(
                    "held-out sample a = {} disagrees with the fitted polynomial",
                    picked[i]
                )));
            }
        }
        Ok(Some(p))
    };
    let u = fit(&|s| Some(s.second_moment.clone()))?.expect("always present");
    let alpha = fit(&|s| s.alpha.clone())?;
    let beta = fit(&|s| s.beta.clone())?;
    let slope = scan_skeleton.family.volume_slope();
    for (s, a) in summaries.iter().zip(&picked) {
        if s.volume != &slope * a {
            return Err(LamiqError::Geometry(format!("V({a}) = {} is not {slope}·a", s.volume)));
        }
    }
    Ok((
        PhaseFit {
            a_lo: a_lo.clone(),
            a_hi: a_hi.clone(),
            reference,
            signature: model.signature(),
            fit_samples: fit_idx.iter().map(|&i| picked[i].clone()).collect(),
            held_out_samples: held.iter().map(|&i| picked[i].clone()).collect(),
            u,
            alpha,
            beta,
            volume_slope: slope,
            sample_volumes: picked.iter().cloned().zip(summaries.iter().map(|s| s.volume.clone())).collect(),
        },
        model,
    ))
}

/// `n·ν·P′(ν) − (2n+1)·P(ν)` in primitive integer form.
pub fn extremum_polynomial(p: &PolyNu, n: usize) -> Result<PolyNu> {
    let e = PolyNu::nu()
        .mul(&p.derivative())
        .scale(&Rational::from_int(n as i64))
        .sub(&p.scale(&Rational::from_int(2 * n as i64 + 1)));
    if e.is_zero() {
        return Err(LamiqError::Domain("extremum polynomial vanishes identically".into()));
    }
    e.primitive()
}

/// `G = P(ν) / (n·a³·V·V^{2/n})` with `a = √ν` and `V = slope·a`.
pub fn g_from_polynomial(p: &PolyNu, slope: &Rational, n: usize, nu: &Rational, precision: u32) -> Result<ApproxReal> {
    let a = ApproxReal::from_rational(nu, precision).sqrt()?;
    let v = ApproxReal::from_rational(slope, precision).mul(&a);
    let root = v.nth_root(n as u32)?;
    let denom = ApproxReal::from_rational(&Rational::from_int(n as i64), precision)
        .mul(&a.powi(3))
        .mul(&v)
        .mul(&root.powi(2));
    ApproxReal::from_rational(&p.eval(nu), precision).div(&denom)
}

#[derive(Clone, Debug, Serialize)]
pub struct Extremum {
    pub phase: usize,
    /// Refined isolating interval in `ν`.
    pub root: RootInterval,
    pub a: ApproxReal,
    pub g: ApproxReal,
}

#[derive(Clone, Debug, Serialize)]
pub struct PhaseExtrema {
    pub phase: usize,
    pub extremum_polynomial: PolyNu,
    /// Isolating intervals of all real roots of the extremum polynomial.
    pub roots: Vec<RootInterval>,
    /// Roots inside the phase, refined, with `G` at each.
    pub candidates: Vec<Extremum>,
    /// Whether `a³β` has the same primitive form as the extremum polynomial.
    pub isotropy_exact: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OptimumReport {
    pub phases: Vec<PhaseExtrema>,
    pub best: Option<Extremum>,
}

/// Extrema of `G` for each fitted phase, restricted to `ν` inside the phase.
///
/// `bounds[i]` is the open `ν` range attributed to phase `i`.
pub fn optimum_report(fits: &[PhaseFit], bounds: &[(Rational, Rational)], n: usize, width: &Rational, precision: u32) -> Result<OptimumReport> {
    let mut phases = Vec::new();
    let mut best: Option<Extremum> = None;
    for (i, (fit, (lo, hi))) in fits.iter().zip(bounds).enumerate() {
        let e = extremum_polynomial(&fit.u, n)?;
        let all = super::poly::isolate_roots(&e)?;
        let mut candidates = Vec::new();
        for r in isolate_roots_in(&e, lo, hi)? {
            let r = refine_root(&e, &r, width);
            if !r.lo.is_positive() || r.lo < *lo || r.hi > *hi {
                continue;
            }
            let nu = r.midpoint();
            let g = g_from_polynomial(&fit.u, &fit.volume_slope, n, &nu, precision)?;
            let a = ApproxReal::from_rational(&nu, precision).sqrt()?;
            let ex = Extremum { phase: i, root: r, a, g };
            if best.as_ref().is_none_or(|b| ex.g.value() < b.g.value()) {
                best = Some(ex.clone());
            }
            candidates.push(ex);
        }
        let isotropy_exact = match &fit.beta {
            Some(b) if !b.is_zero() => Some(b.primitive()? == e),
            _ => None,
        };
        phases.push(PhaseExtrema {
            phase: i,
            extremum_polynomial: e,
            roots: all,
            candidates,
            isotropy_exact,
        });
    }
    Ok(OptimumReport { phases, best })
}

/// Difference of two phase polynomials against an expected closed form.
#[derive(Clone, Debug, Serialize)]
pub struct DifferenceCheck {
    pub name: String,
    pub boundary: Rational,
    pub difference: PolyNu,
    pub expected: Option<PolyNu>,
    /// `difference − expected`, zero on a match.
    pub residual: Option<PolyNu>,
    /// Order of vanishing of the difference at the boundary.
    pub multiplicity: usize,
}

impl DifferenceCheck {
    pub fn matches(&self) -> bool {
        self.residual.as_ref().is_some_and(PolyNu::is_zero)
    }
}

pub fn phase_difference(name: &str, lower: &PolyNu, upper: &PolyNu, boundary: &Rational, expected: Option<&PolyNu>) -> DifferenceCheck {
    let difference = upper.sub(lower);
    DifferenceCheck {
        name: name.to_string(),
        boundary: boundary.clone(),
        multiplicity: difference.root_multiplicity(boundary),
        residual: expected.map(|e| difference.sub(e)),
        expected: expected.cloned(),
        difference,
    }
}

/// The simplest rational (smallest denominator) in `[lo, hi]`.
pub fn simplest_rational(lo: &Rational, hi: &Rational) -> Rational {
    // Stern–Brocot descent on continued fractions.
    fn go(lo: &Rational, hi: &Rational) -> Rational {
        let fl = Rational::from_bigint(lo.floor());
        if lo.is_integer() {
            return lo.clone();
        }
        if &(&fl + &Rational::one()) <= hi {
            return &fl + &Rational::one();
        }
        let inner = go(&(hi - &fl).recip(), &(lo - &fl).recip());
        &fl + &inner.recip()
    }
    go(lo, hi)
}
