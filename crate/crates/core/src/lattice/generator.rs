//! Generator matrices and the laminated one-parameter template.

use serde::{Deserialize, Serialize};

use crate::error::{LamiqError, Result};
use crate::exactnum::{QMatrix, QVector, Rational};

/// An `n×n` rational basis; lattice points are integer combinations of the rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMatrix {
    rows: QMatrix,
}

impl GeneratorMatrix {
    pub fn new(rows: QMatrix) -> Result<Self> {
        if rows.nrows() != rows.ncols() || rows.nrows() == 0 {
            return Err(LamiqError::InvalidInput(format!(
                "generator must be square and nonempty, got {}×{}",
                rows.nrows(),
                rows.ncols()
            )));
        }
        if rows.nrows() > 16 {
            return Err(LamiqError::InvalidInput("dimensions above 16 are not supported".into()));
        }
        if rows.determinant().is_zero() {
            return Err(LamiqError::InvalidInput("generator rows are linearly dependent".into()));
        }
        Ok(GeneratorMatrix { rows })
    }

    pub fn from_rows(rows: &[QVector]) -> Result<Self> {
        if rows.iter().any(|r| r.len() != rows.len()) {
            return Err(LamiqError::InvalidInput("generator rows have the wrong length".into()));
        }
        Self::new(QMatrix::from_rows(rows))
    }

    /// The integer lattice `Zⁿ`.
    pub fn identity(n: usize) -> Self {
        GeneratorMatrix {
            rows: QMatrix::identity(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.nrows()
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.rows
    }

    pub fn row(&self, i: usize) -> QVector {
        self.rows.row(i)
    }

    pub fn determinant(&self) -> Rational {
        self.rows.determinant()
    }

    /// The lattice point `u·B`.
    pub fn point(&self, u: &[i64]) -> QVector {
        let n = self.dim();
        let mut out = QVector::zeros(n);
        for (i, &ui) in u.iter().enumerate() {
            if ui == 0 {
                continue;
            }
            let c = Rational::from_int(ui);
            for (j, b) in self.rows.row_slice(i).iter().enumerate() {
                if !b.is_zero() {
                    out[j] += &c * b;
                }
            }
        }
        out
    }

    /// Integer coordinates of `p` if it is a lattice point.
    pub fn coordinates(&self, p: &QVector) -> Option<Vec<i64>> {
        let inv = self.rows.inverse()?;
        let u = inv.vec_mul(p);
        u.iter()
            .map(|x| {
                if x.is_integer() {
                    num_traits::ToPrimitive::to_i64(&x.numer())
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn scaled(&self, s: &Rational) -> GeneratorMatrix {
        GeneratorMatrix {
            rows: self.rows.scale(s),
        }
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.dim()).map(|i| self.row(i).to_f64()).collect()
    }
}

/// The stacking template `[[B, 0], [r, a]]` with `a` left open.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaminatedFamily {
    base: Vec<QVector>,
    offset: QVector,
}

impl LaminatedFamily {
    pub fn new(base: &GeneratorMatrix, offset: QVector) -> Result<Self> {
        if offset.len() != base.dim() {
            return Err(LamiqError::InvalidInput(format!(
                "offset has dimension {} but the base has dimension {}",
                offset.len(),
                base.dim()
            )));
        }
        Ok(LaminatedFamily {
            base: base.matrix().rows_vec(),
            offset,
        })
    }

    /// Dimension of the instantiated lattices.
    pub fn dim(&self) -> usize {
        self.base.len() + 1
    }

    pub fn base(&self) -> GeneratorMatrix {
        GeneratorMatrix {
            rows: QMatrix::from_rows(&self.base),
        }
    }

    pub fn offset(&self) -> &QVector {
        &self.offset
    }

    /// `|det base|`, so that `V(a) = slope·a`.
    pub fn volume_slope(&self) -> Rational {
        self.base().determinant().abs()
    }

    pub fn instantiate(&self, a: &Rational) -> Result<GeneratorMatrix> {
        if !a.is_positive() {
            return Err(LamiqError::Domain(format!("parameter a = {a} must be positive")));
        }
        let n = self.dim();
        let mut m = QMatrix::zeros(n, n);
        for (i, row) in self.base.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        for (j, x) in self.offset.iter().enumerate() {
            m[(n - 1, j)] = x.clone();
        }
        m[(n - 1, n - 1)] = a.clone();
        GeneratorMatrix::new(m)
    }
}

/// `[[B, 0], [r, a]]`.
pub fn laminate(base: &GeneratorMatrix, r: &QVector, a: &Rational) -> Result<GeneratorMatrix> {
    LaminatedFamily::new(base, r.clone())?.instantiate(a)
}

/// The `D₈` generator in the form used by AE₉: `2e₁` then `e₁ + eᵢ`.
pub fn d8_generator() -> GeneratorMatrix {
    let mut rows = Vec::with_capacity(8);
    let mut first = vec![0i64; 8];
    first[0] = 2;
    rows.push(QVector::from_ints(&first));
    for i in 1..8 {
        let mut r = vec![0i64; 8];
        r[0] = 1;
        r[i] = 1;
        rows.push(QVector::from_ints(&r));
    }
    GeneratorMatrix::from_rows(&rows).expect("D8 generator is nonsingular")
}

/// The AE₉ family: `D₈` stacked with offset `(½,…,½)`.
pub fn ae9_family() -> LaminatedFamily {
    LaminatedFamily::new(&d8_generator(), QVector(vec![Rational::new(1, 2); 8])).expect("dimensions agree")
}

/// The AE₉ generator at parameter `a`.
pub fn ae9(a: &Rational) -> Result<GeneratorMatrix> {
    ae9_family().instantiate(a)
}
