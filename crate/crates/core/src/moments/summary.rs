//! Cell-level volume, second moment and normalized second moment `G`.

use serde::Serialize;

use crate::error::{LamiqError, Result};
use crate::exactnum::{rational_root_exact, ApproxReal, QMatrix, Rational};

use super::recursion::MomentRecord;

#[derive(Clone, Debug, Serialize)]
pub struct CellSummary {
    pub dim: usize,
    pub volume: Rational,
    /// Scalar second moment about the barycenter, `tr U^{μν}`.
    pub second_moment: Rational,
    pub tensor: QMatrix,
    /// `U^{11}` when the tensor has the form `α·I + β·e_n e_nᵀ`.
    pub alpha: Option<Rational>,
    /// `U^{nn} − U^{11}` for the same form.
    pub beta: Option<Rational>,
    /// `G` exactly, when `V^{1/n}` is rational.
    pub g_exact: Option<Rational>,
    pub g: ApproxReal,
}

/// True when all off-diagonal entries vanish and the first `n − 1`
/// diagonal entries agree.
pub fn is_axial(t: &QMatrix) -> bool {
    let n = t.nrows();
    (0..n).all(|i| (0..n).all(|j| i == j || t[(i, j)].is_zero())) && (1..n.saturating_sub(1)).all(|i| t[(i, i)] == t[(0, 0)])
}

/// `G = U / (n·V^{1+2/n})`, exact when possible and otherwise enclosed.
pub fn normalized_moment(u: &Rational, v: &Rational, n: usize, precision: u32) -> Result<(Option<Rational>, ApproxReal)> {
    let nn = Rational::from_int(n as i64);
    if let Some(r) = rational_root_exact(v, n as u32) {
        let g = u / &(&(&nn * v) * &r.square());
        return Ok((Some(g.clone()), ApproxReal::from_rational(&g, precision)));
    }
    let va = ApproxReal::from_rational(v, precision);
    let root = va.nth_root(n as u32)?;
    let denom = ApproxReal::from_rational(&(&nn * v), precision).mul(&root.mul(&root));
    let g = ApproxReal::from_rational(u, precision).div(&denom)?;
    Ok((None, g))
}

/// Assembles the cell summary from the top-level record.
pub fn cell_summary(records: &[Vec<MomentRecord>], precision: u32) -> Result<CellSummary> {
    let cell = records
        .last()
        .and_then(|l| l.first())
        .ok_or_else(|| LamiqError::InvalidInput("no cell record".into()))?;
    if !cell.radicand.is_one() {
        return Err(LamiqError::Geometry(format!("cell volume has radicand {}", cell.radicand)));
    }
    let n = cell.dim;
    let tensor = cell.moment_coeff.clone();
    let u = tensor.trace();
    let (alpha, beta) = if n >= 2 && is_axial(&tensor) {
        let a = tensor[(0, 0)].clone();
        let b = &tensor[(n - 1, n - 1)] - &a;
        (Some(a), Some(b))
    } else {
        (None, None)
    };
    let (g_exact, g) = normalized_moment(&u, &cell.volume_coeff, n, precision)?;
    Ok(CellSummary {
        dim: n,
        volume: cell.volume_coeff.clone(),
        second_moment: u,
        tensor,
        alpha,
        beta,
        g_exact,
        g,
    })
}
