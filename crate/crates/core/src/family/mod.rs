//! Parameter sweeps over a laminated family: phase detection, exact
//! polynomial reconstruction, extremum polynomial, root isolation and the
//! optimum report.

pub mod fit;
pub mod phases;
pub mod poly;
pub mod skeleton;

pub use fit::{
    extremum_polynomial, g_from_polynomial, optimum_report, phase_difference, reconstruct_polynomials,
    simplest_rational, DifferenceCheck, Extremum, FitConfig, OptimumReport, PhaseExtrema, PhaseFit,
};
pub use phases::{detect_phase_boundaries, sqrt_approx, PhaseBracket, PhaseScan, PhaseSpan, ScanConfig};
pub use poly::{isolate_roots, isolate_roots_in, refine_root, PolyNu, RootInterval};
pub use skeleton::{PhaseModel, PhaseSignature, Skeleton};

use serde::Serialize;

use crate::error::Result;
use crate::exactnum::Rational;
use crate::lattice::LaminatedFamily;
use crate::symmetry::GroupSpec;

/// Which moment a difference refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MomentKind {
    U,
    Alpha,
    Beta,
}

/// An expected closed form for `a³(X_upper − X_lower)` across boundary `index`.
#[derive(Clone, Debug)]
pub struct ExpectedDifference {
    pub boundary: usize,
    pub kind: MomentKind,
    pub poly: PolyNu,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub scan: PhaseScan,
    pub fits: Vec<PhaseFit>,
    pub optimum: OptimumReport,
    pub differences: Vec<DifferenceCheck>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct FamilyConfig {
    pub scan: ScanConfig,
    pub fit: FitConfig,
    /// Width of refined root intervals in `ν`.
    pub root_width: Option<Rational>,
}

/// `ν` ranges strictly between neighbouring boundary brackets.
pub fn phase_bounds(scan: &PhaseScan) -> Vec<(Rational, Rational)> {
    let mut out = Vec::with_capacity(scan.phases.len());
    for i in 0..scan.phases.len() {
        let lo = if i == 0 { scan.nu_lo.clone() } else { scan.boundaries[i - 1].nu_hi.clone() };
        let hi = if i < scan.boundaries.len() { scan.boundaries[i].nu_lo.clone() } else { scan.nu_hi.clone() };
        out.push((lo, hi));
    }
    out
}

/// Scan, fit every phase, locate extrema and compare adjacent phases.
pub fn analyze_family(
    family: &LaminatedFamily,
    group: &GroupSpec,
    nu_lo: &Rational,
    nu_hi: &Rational,
    expected: &[ExpectedDifference],
    cfg: &FamilyConfig,
) -> Result<FamilyReport> {
    let (scan, skeletons) = detect_phase_boundaries(family, group, nu_lo, nu_hi, &cfg.scan)?;
    let mut fits = Vec::with_capacity(skeletons.len());
    for (s, span) in skeletons.iter().zip(&scan.phases) {
        // Sample the full stretch between the neighbouring brackets, in a.
        fits.push(reconstruct_polynomials(s, &span_lo(&scan, span), &span_hi(&scan, span), &cfg.fit)?.0);
    }
    let width = cfg.root_width.clone().unwrap_or_else(|| Rational::from_bigints(1.into(), num_bigint::BigInt::from(10).pow(30)));
    let optimum = optimum_report(&fits, &phase_bounds(&scan), family.dim(), &width, cfg.fit.precision)?;
    let mut differences = Vec::new();
    for (i, b) in scan.boundaries.iter().enumerate() {
        let nu0 = simplest_rational(&b.nu_lo, &b.nu_hi);
        let (lo, hi) = (&fits[i], &fits[i + 1]);
        let pairs = [
            (MomentKind::U, Some(&lo.u), Some(&hi.u)),
            (MomentKind::Alpha, lo.alpha.as_ref(), hi.alpha.as_ref()),
            (MomentKind::Beta, lo.beta.as_ref(), hi.beta.as_ref()),
        ];
        for (kind, l, h) in pairs {
            if let (Some(l), Some(h)) = (l, h) {
                let exp = expected.iter().find(|e| e.boundary == i && e.kind == kind).map(|e| &e.poly);
                differences.push(phase_difference(&format!("{kind:?} across boundary {}", i + 1), l, h, &nu0, exp));
            }
        }
    }
    Ok(FamilyReport {
        scan,
        fits,
        optimum,
        differences,
    })
}

fn span_lo(scan: &PhaseScan, span: &PhaseSpan) -> Rational {
    scan.boundaries
        .iter()
        .rev()
        .find(|b| b.a_hi <= span.a_lo)
        .map_or_else(|| span.a_lo.clone(), |b| b.a_hi.clone())
}

fn span_hi(scan: &PhaseScan, span: &PhaseSpan) -> Rational {
    scan.boundaries
        .iter()
        .find(|b| b.a_lo >= span.a_hi)
        .map_or_else(|| span.a_hi.clone(), |b| b.a_lo.clone())
}
