//! Matrices over R, C or H and their real block images.

use nalgebra::DMatrix;

use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Dense matrix with entries in a single base field.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl ScalarMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![Scalar::zero(field); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for k in 0..n {
            m.set(k, k, Scalar::one(field));
        }
        m
    }

    /// Row-major entries, each promoted to `field`.
    pub fn from_rows(field: Field, rows: &[Vec<Scalar>]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch(format!(
                    "row {r} has {} entries, expected {ncols}",
                    row.len()
                )));
            }
            for s in row {
                data.push(s.promote(field)?);
            }
        }
        Ok(Self {
            field,
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, s: Scalar) {
        self.data[r * self.cols + c] = s;
    }

    pub fn mul(&self, other: &ScalarMatrix) -> Result<ScalarMatrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                expected: self.field.to_string(),
                found: other.field.to_string(),
            });
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = ScalarMatrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Scalar::zero(self.field);
                for k in 0..self.cols {
                    acc = acc + self.get(i, k).mul(&other.get(k, j))?;
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ScalarMatrix {
        let mut out = ScalarMatrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(Scalar::zero(self.field), |acc, k| acc + self.get(k, k))
    }
}

/// Real matrix obtained by block substitution, remembering its origin.
#[derive(Debug, Clone, PartialEq)]
pub struct RealizedMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    real: DMatrix<f64>,
}

impl RealizedMatrix {
    /// Wrap a real matrix that is already in block form.
    pub fn from_real(field: Field, real: DMatrix<f64>) -> Result<Self> {
        let d = field.degree();
        if !real.nrows().is_multiple_of(d) || !real.ncols().is_multiple_of(d) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} is not a multiple of the {field} degree",
                real.nrows(),
                real.ncols()
            )));
        }
        Ok(Self {
            field,
            rows: real.nrows() / d,
            cols: real.ncols() / d,
            real,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Shape over the base field.
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn real(&self) -> &DMatrix<f64> {
        &self.real
    }

    pub fn into_real(self) -> DMatrix<f64> {
        self.real
    }

    pub fn mul(&self, other: &RealizedMatrix) -> Result<RealizedMatrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                expected: self.field.to_string(),
                found: other.field.to_string(),
            });
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch("realified product".into()));
        }
        Ok(RealizedMatrix {
            field: self.field,
            rows: self.rows,
            cols: other.cols,
            real: &self.real * &other.real,
        })
    }

    /// Read entries back out of the block form.
    pub fn unrealify(&self) -> ScalarMatrix {
        let d = self.field.degree();
        let mut out = ScalarMatrix::zeros(self.field, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let parts: Vec<f64> = (0..d).map(|k| self.real[(i * d + k, j * d)]).collect();
                let mut c = [0.0; 4];
                c[..d].copy_from_slice(&parts);
                let s = match self.field {
                    Field::Real => Scalar::real(c[0]),
                    Field::Complex => Scalar::complex(c[0], c[1]),
                    Field::Quaternion => Scalar::quaternion(c[0], c[1], c[2], c[3]),
                };
                out.set(i, j, s);
            }
        }
        out
    }
}

/// Replace every entry by its left-multiplication block.
///
/// Entries are promoted to `field` first, so a real matrix can be realified
/// as a complex or quaternionic one.
pub fn realify(m: &ScalarMatrix, field: Field) -> Result<RealizedMatrix> {
    let d = field.degree();
    let (rows, cols) = m.shape();
    let mut real = DMatrix::zeros(rows * d, cols * d);
    for i in 0..rows {
        for j in 0..cols {
            let block = m.get(i, j).promote(field)?.left_block();
            for r in 0..d {
                for c in 0..d {
                    real[(i * d + r, j * d + c)] = block[r * d + c];
                }
            }
        }
    }
    Ok(RealizedMatrix {
        field,
        rows,
        cols,
        real,
    })
}

/// Realified right multiplication by a unit `u` on `F^n`; used to test
/// F-linearity of real matrices (they must commute with these).
pub fn right_unit(field: Field, n: usize, unit: usize) -> DMatrix<f64> {
    let d = field.degree();
    let mut s = [0.0; 4];
    s[unit] = 1.0;
    let s = Scalar::quaternion(s[0], s[1], s[2], s[3]);
    // x -> x s on the basis (1, i, j, k): column k is e_k * s.
    let mut block = DMatrix::zeros(d, d);
    for k in 0..d {
        let mut e = [0.0; 4];
        e[k] = 1.0;
        let prod = Scalar::quaternion(e[0], e[1], e[2], e[3])
            .mul(&s)
            .expect("same field")
            .components();
        for r in 0..d {
            block[(r, k)] = prod[r];
        }
    }
    let mut out = DMatrix::zeros(n * d, n * d);
    for b in 0..n {
        out.view_mut((b * d, b * d), (d, d)).copy_from(&block);
    }
    out
}
