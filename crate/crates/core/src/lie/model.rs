//! Real matrix Lie algebras with an orthonormal realified basis.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::algebra::realify::right_unit;
use crate::algebra::{linalg, realify, Field, Scalar, ScalarMatrix};
use crate::config::{Config, Tolerances};
use crate::error::{Error, Result};

/// Classical families. Indefinite families use the form `diag(I_p, -I_q)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// sl(n, R)
    Sl { n: usize },
    /// sl(n, C) viewed as a real Lie algebra
    SlComplex { n: usize },
    /// su(p, q)
    Su { p: usize, q: usize },
    /// u(p, q)
    U { p: usize, q: usize },
    /// so(p, q)
    So { p: usize, q: usize },
    /// sp(p, q) over the quaternions
    Sp { p: usize, q: usize },
    /// sp(2n, R)
    SpReal { n: usize },
    /// Octonionic and exceptional algebras; always rejected.
    Exceptional { name: String },
}

impl Family {
    pub fn field(&self) -> Field {
        match self {
            Family::Sl { .. } | Family::So { .. } | Family::SpReal { .. } => Field::Real,
            Family::SlComplex { .. } | Family::Su { .. } | Family::U { .. } => Field::Complex,
            Family::Sp { .. } => Field::Quaternion,
            Family::Exceptional { .. } => Field::Real,
        }
    }

    /// Matrix size over the base field.
    pub fn size(&self) -> usize {
        match *self {
            Family::Sl { n } | Family::SlComplex { n } => n,
            Family::Su { p, q } | Family::U { p, q } | Family::So { p, q } | Family::Sp { p, q } => p + q,
            Family::SpReal { n } => 2 * n,
            Family::Exceptional { .. } => 0,
        }
    }

    /// Real dimension from the classical formulas.
    pub fn expected_dim(&self) -> usize {
        let n = self.size();
        match self {
            Family::Sl { .. } => n * n - 1,
            Family::SlComplex { .. } => 2 * (n * n - 1),
            Family::Su { .. } => n * n - 1,
            Family::U { .. } => n * n,
            Family::So { .. } => n * (n - 1) / 2,
            Family::Sp { .. } => n * (2 * n + 1),
            Family::SpReal { n } => n * (2 * n + 1),
            Family::Exceptional { .. } => 0,
        }
    }

    /// The matrix `e` of the defining relation `M^* e + e M = 0`, if any.
    pub fn form(&self) -> Option<ScalarMatrix> {
        let field = self.field();
        match *self {
            Family::Su { p, q } | Family::U { p, q } | Family::So { p, q } | Family::Sp { p, q } => {
                Some(indefinite_form(field, p, q))
            }
            Family::SpReal { n } => {
                let mut j = ScalarMatrix::zeros(Field::Real, 2 * n, 2 * n);
                for k in 0..n {
                    j.set(k, n + k, Scalar::real(1.0));
                    j.set(n + k, k, Scalar::real(-1.0));
                }
                Some(j)
            }
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Sl { n } => write!(f, "sl({n},R)"),
            Family::SlComplex { n } => write!(f, "sl({n},C)"),
            Family::Su { p, q } => write!(f, "su({p},{q})"),
            Family::U { p, q } => write!(f, "u({p},{q})"),
            Family::So { p, q } => write!(f, "so({p},{q})"),
            Family::Sp { p, q } => write!(f, "sp({p},{q})"),
            Family::SpReal { n } => write!(f, "sp({},R)", 2 * n),
            Family::Exceptional { name } => f.write_str(name),
        }
    }
}

/// `diag(I_p, -I_q)` over `field`.
pub fn indefinite_form(field: Field, p: usize, q: usize) -> ScalarMatrix {
    let mut e = ScalarMatrix::zeros(field, p + q, p + q);
    for k in 0..p + q {
        let s = if k < p { 1.0 } else { -1.0 };
        e.set(k, k, Scalar::real(s).promote(field).expect("real promotes"));
    }
    e
}

/// A real Lie algebra of realified matrices.
///
/// The basis is orthonormal for `<X, Y> = tr(X^T Y)`, so coordinates are
/// inner products and the coordinate space carries the Euclidean metric.
#[derive(Debug, Clone)]
pub struct LieAlgebraModel {
    name: String,
    family: Option<Family>,
    field: Field,
    size: usize,
    basis: Vec<DMatrix<f64>>,
    ad: Vec<DMatrix<f64>>,
    killing: DMatrix<f64>,
    form: Option<DMatrix<f64>>,
    tol: Tolerances,
}

/// Build a classical real form.
pub fn build_classical(family: &Family, cfg: &Config) -> Result<LieAlgebraModel> {
    if let Family::Exceptional { name } = family {
        return Err(Error::Excluded(name.clone()));
    }
    let ok = match *family {
        Family::Sl { n } | Family::SlComplex { n } => n >= 2,
        Family::Su { p, q } | Family::So { p, q } => p >= 1 && p + q >= 2,
        Family::U { p, .. } => p >= 1,
        Family::Sp { p, .. } => p >= 1,
        Family::SpReal { n } => n >= 1,
        Family::Exceptional { .. } => false,
    };
    if !ok {
        return Err(Error::InvalidParameters(format!("{family} is too small")));
    }
    let field = family.field();
    let n = family.size();
    let d = field.degree();
    let big = n * d;
    if big > cfg.dim_cap {
        return Err(Error::InvalidParameters(format!(
            "{family} needs realified size {big}, above the cap {}",
            cfg.dim_cap
        )));
    }

    // one parameter per (entry, unit)
    let mut params = Vec::with_capacity(n * n * d);
    for a in 0..n {
        for b in 0..n {
            for unit in 0..d {
                let mut c = [0.0; 4];
                c[unit] = 1.0;
                let mut m = ScalarMatrix::zeros(field, n, n);
                m.set(a, b, Scalar::from_components(&c[..d])?);
                params.push(realify(&m, field)?.into_real());
            }
        }
    }

    let form = match family.form() {
        Some(e) => Some(realify(&e, field)?.into_real()),
        None => None,
    };
    let mut rows: Vec<Vec<f64>> = Vec::new();
    if let Some(e) = &form {
        let images: Vec<DMatrix<f64>> =
            params.iter().map(|m| m.transpose() * e + e * m).collect();
        for r in 0..big {
            for c in 0..big {
                rows.push(images.iter().map(|img| img[(r, c)]).collect());
            }
        }
    }
    let traceless = matches!(
        family,
        Family::Sl { .. } | Family::SlComplex { .. } | Family::Su { .. }
    );
    if traceless {
        rows.push(params.iter().map(|m| m.trace()).collect());
        if field == Field::Complex {
            // imaginary part of the complex trace
            rows.push(
                params
                    .iter()
                    .map(|m| (0..n).map(|a| m[(2 * a + 1, 2 * a)]).sum())
                    .collect(),
            );
        }
    }
    let solutions = if rows.is_empty() {
        DMatrix::identity(params.len(), params.len())
    } else {
        let constraint = DMatrix::from_fn(rows.len(), params.len(), |i, j| rows[i][j]);
        linalg::nullspace(&constraint, cfg.tol.rank)?
    };
    let scale = 1.0 / (d as f64).sqrt();
    let basis: Vec<DMatrix<f64>> = solutions
        .column_iter()
        .map(|col| {
            let mut m = DMatrix::zeros(big, big);
            for (k, p) in params.iter().enumerate() {
                if col[k] != 0.0 {
                    m += p * (col[k] * scale);
                }
            }
            m
        })
        .collect();
    if basis.len() != family.expected_dim() {
        return Err(Error::InvalidParameters(format!(
            "{family}: constructed dimension {} differs from {}",
            basis.len(),
            family.expected_dim()
        )));
    }
    let mut model = LieAlgebraModel::from_orthonormal_basis(family.to_string(), field, n, basis, cfg)?;
    model.family = Some(family.clone());
    model.form = form;
    Ok(model)
}

impl LieAlgebraModel {
    /// Model from realified matrices that are orthonormal for the trace
    /// inner product and closed under the bracket.
    pub fn from_orthonormal_basis(
        name: String,
        field: Field,
        size: usize,
        basis: Vec<DMatrix<f64>>,
        cfg: &Config,
    ) -> Result<Self> {
        let dim = basis.len();
        let mut model = Self {
            name,
            family: None,
            field,
            size,
            basis,
            ad: Vec::new(),
            killing: DMatrix::zeros(dim, dim),
            form: None,
            tol: cfg.tol,
        };
        let mut ad = vec![DMatrix::zeros(dim, dim); dim];
        for (ad_i, bi) in ad.iter_mut().zip(&model.basis) {
            for (j, bj) in model.basis.iter().enumerate() {
                let c = model.coords(&model.bracket_matrices(bi, bj))?;
                ad_i.set_column(j, &c);
            }
        }
        let killing = DMatrix::from_fn(dim, dim, |i, j| (&ad[i] * &ad[j]).trace());
        model.ad = ad;
        model.killing = killing;
        Ok(model)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn family(&self) -> Option<&Family> {
        self.family.as_ref()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Matrix size over the base field.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Size of the realified ambient matrices.
    pub fn ambient(&self) -> usize {
        self.size * self.field.degree()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    pub fn basis(&self) -> &[DMatrix<f64>] {
        &self.basis
    }

    pub fn killing_matrix(&self) -> &DMatrix<f64> {
        &self.killing
    }

    /// Realified defining form, when the family has one.
    pub fn form(&self) -> Option<&DMatrix<f64>> {
        self.form.as_ref()
    }

    /// `ad` of the i-th basis element in coordinates.
    pub fn ad_basis(&self, i: usize) -> &DMatrix<f64> {
        &self.ad[i]
    }

    /// Structure constant `c_ijk` with `[X_i, X_j] = sum_k c_ijk X_k`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> f64 {
        self.ad[i][(k, j)]
    }

    pub fn bracket_matrices(&self, x: &DMatrix<f64>, y: &DMatrix<f64>) -> DMatrix<f64> {
        x * y - y * x
    }

    /// Coordinates of an ambient matrix, rejecting matrices off the span.
    pub fn coords(&self, x: &DMatrix<f64>) -> Result<DVector<f64>> {
        let c = self.coords_unchecked(x);
        let residual = (x - self.element(&c)).norm() / x.norm().max(1.0);
        if residual > self.tol.bracket {
            return Err(Error::OutsideSpan { residual });
        }
        Ok(c)
    }

    /// Orthogonal projection coordinates.
    pub fn coords_unchecked(&self, x: &DMatrix<f64>) -> DVector<f64> {
        DVector::from_iterator(self.dim(), self.basis.iter().map(|b| b.dot(x)))
    }

    pub fn element(&self, coords: &DVector<f64>) -> DMatrix<f64> {
        let n = self.ambient();
        let mut m = DMatrix::zeros(n, n);
        for (c, b) in coords.iter().zip(&self.basis) {
            if *c != 0.0 {
                m += b * *c;
            }
        }
        m
    }

    /// `ad_x` as a matrix on coordinates.
    pub fn ad(&self, x: &DVector<f64>) -> DMatrix<f64> {
        let d = self.dim();
        let mut m = DMatrix::zeros(d, d);
        for (c, a) in x.iter().zip(&self.ad) {
            if *c != 0.0 {
                m += a * *c;
            }
        }
        m
    }

    pub fn bracket(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        self.ad(x) * y
    }

    /// Killing form on coordinate vectors.
    pub fn killing(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        (x.transpose() * &self.killing * y)[(0, 0)]
    }

    /// Killing form of two ambient matrices that must lie in the span.
    pub fn killing_elements(&self, x: &DMatrix<f64>, y: &DMatrix<f64>) -> Result<f64> {
        Ok(self.killing(&self.coords(x)?, &self.coords(y)?))
    }

    /// Matrix of `Ad(g)` on coordinates; `g` must normalize the algebra.
    pub fn adjoint_action(&self, g: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        let g_inv = linalg::inverse(g)?;
        let d = self.dim();
        let mut m = DMatrix::zeros(d, d);
        for (j, b) in self.basis.iter().enumerate() {
            let img = g * b * &g_inv;
            m.set_column(j, &self.coords(&img)?);
        }
        Ok(m)
    }

    /// Defining relation and F-linearity of a group element.
    pub fn contains_group_element(&self, g: &DMatrix<f64>) -> bool {
        let n = self.ambient();
        if g.shape() != (n, n) {
            return false;
        }
        let scale = g.norm().max(1.0);
        for unit in 1..self.field.degree() {
            let r = right_unit(self.field, self.size, unit);
            if (g * &r - &r * g).norm() > self.tol.group * scale {
                return false;
            }
        }
        match (&self.form, &self.family) {
            (Some(e), _) => (g.transpose() * e * g - e).norm() <= self.tol.group * scale * scale,
            (None, Some(Family::Sl { .. })) => (g.determinant() - 1.0).abs() <= self.tol.group * scale,
            _ => g.determinant().abs() > 0.0,
        }
    }

    /// Max of `|c_ijk + c_jik|`.
    pub fn antisymmetry_residual(&self) -> f64 {
        let d = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let s = self.ad[i].column(j) + self.ad[j].column(i);
                worst = worst.max(s.amax());
            }
        }
        worst
    }

    /// Max Jacobi residual over all basis triples, via `ad_[X,Y] = [ad_X, ad_Y]`.
    pub fn jacobi_residual(&self) -> f64 {
        let d = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let xy = self.ad[i].column(j).into_owned();
                let lhs = self.ad(&xy);
                let rhs = &self.ad[i] * &self.ad[j] - &self.ad[j] * &self.ad[i];
                worst = worst.max((lhs - rhs).amax());
            }
        }
        worst
    }

    /// `|B([Z,X],Y) + B(X,[Z,Y])|` over basis triples.
    pub fn killing_invariance_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for a in &self.ad {
            let m = a.transpose() * &self.killing + &self.killing * a;
            worst = worst.max(m.amax());
        }
        worst / self.killing.amax().max(1.0)
    }
}
