//! Subalgebras, centralizers and centers.

use nalgebra::{DMatrix, DVector};

use super::model::LieAlgebraModel;
use crate::algebra::linalg;
use crate::error::{Error, Result};

/// Orthonormal coordinate basis of a subspace of a model.
#[derive(Debug, Clone)]
pub struct SubalgebraHandle<'m> {
    model: &'m LieAlgebraModel,
    basis: DMatrix<f64>,
    closure_residual: f64,
}

/// Something to centralize: a Lie algebra element or a group element.
#[derive(Debug, Clone)]
pub enum Generator {
    Algebra(DMatrix<f64>),
    Group(DMatrix<f64>),
}

impl<'m> SubalgebraHandle<'m> {
    /// Span of coordinate columns, orthonormalized.
    pub fn from_coords(model: &'m LieAlgebraModel, coords: &DMatrix<f64>) -> Self {
        let basis = if coords.ncols() == 0 {
            DMatrix::zeros(model.dim(), 0)
        } else {
            linalg::range(coords, model.tolerances().rank)
        };
        let closure_residual = closure_residual(model, &basis);
        Self {
            model,
            basis,
            closure_residual,
        }
    }

    /// Span of ambient matrices, which must lie in the model.
    pub fn span(model: &'m LieAlgebraModel, elements: &[DMatrix<f64>]) -> Result<Self> {
        let mut coords = DMatrix::zeros(model.dim(), elements.len());
        for (j, x) in elements.iter().enumerate() {
            coords.set_column(j, &model.coords(x)?);
        }
        Ok(Self::from_coords(model, &coords))
    }

    pub fn full(model: &'m LieAlgebraModel) -> Self {
        Self::from_coords(model, &DMatrix::identity(model.dim(), model.dim()))
    }

    pub fn model(&self) -> &'m LieAlgebraModel {
        self.model
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    /// Orthonormal coordinate columns.
    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    pub fn elements(&self) -> Vec<DMatrix<f64>> {
        self.basis
            .column_iter()
            .map(|c| self.model.element(&c.into_owned()))
            .collect()
    }

    /// Largest component of a bracket of basis elements leaving the span.
    pub fn closure_residual(&self) -> f64 {
        self.closure_residual
    }

    pub fn is_closed(&self) -> bool {
        self.closure_residual <= self.model.tolerances().bracket * self.model.killing_matrix().amax().max(1.0)
    }

    pub fn contains(&self, x: &DVector<f64>) -> bool {
        let proj = &self.basis * (self.basis.transpose() * x);
        (x - proj).norm() <= self.model.tolerances().bracket * x.norm().max(1.0)
    }

    /// Max norm of `[X_i, X_j]` over the basis.
    pub fn commutator_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim() {
            let xi = self.basis.column(i).into_owned();
            for j in i + 1..self.dim() {
                let xj = self.basis.column(j).into_owned();
                worst = worst.max(self.model.bracket(&xi, &xj).norm());
            }
        }
        worst
    }

    pub fn is_abelian(&self) -> bool {
        self.commutator_residual() <= self.model.tolerances().bracket
    }

    /// Killing form restricted to the subspace.
    pub fn killing_gram(&self) -> DMatrix<f64> {
        self.basis.transpose() * self.model.killing_matrix() * &self.basis
    }
}

fn closure_residual(model: &LieAlgebraModel, basis: &DMatrix<f64>) -> f64 {
    let k = basis.ncols();
    let mut worst: f64 = 0.0;
    for i in 0..k {
        let xi = basis.column(i).into_owned();
        let ad = model.ad(&xi);
        for j in i + 1..k {
            let br = &ad * basis.column(j);
            let off = &br - basis * (basis.transpose() * &br);
            worst = worst.max(off.norm());
        }
    }
    worst
}

/// Centralizer of a set of algebra and group elements in the model.
pub fn centralizer<'m>(
    model: &'m LieAlgebraModel,
    generators: &[Generator],
) -> Result<SubalgebraHandle<'m>> {
    let d = model.dim();
    let n = model.ambient();
    if generators.is_empty() {
        return Ok(SubalgebraHandle::full(model));
    }
    let mut blocks: Vec<DMatrix<f64>> = Vec::new();
    for g in generators {
        let (m, inverse) = match g {
            Generator::Algebra(x) => (x, None),
            Generator::Group(x) => (x, Some(linalg::inverse(x)?)),
        };
        if m.shape() != (n, n) {
            return Err(Error::DimensionMismatch(format!(
                "generator is {}x{}, model acts on {n}",
                m.nrows(),
                m.ncols()
            )));
        }
        let mut block = DMatrix::zeros(n * n, d);
        for (j, b) in model.basis().iter().enumerate() {
            let img = match &inverse {
                None => m * b - b * m,
                Some(inv) => m * b * inv - b,
            };
            block.set_column(j, &DVector::from_column_slice(img.as_slice()));
        }
        let scale = block.amax().max(1.0);
        blocks.push(block / scale);
    }
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut stacked = DMatrix::zeros(rows, d);
    let mut r = 0;
    for b in &blocks {
        stacked.view_mut((r, 0), b.shape()).copy_from(b);
        r += b.nrows();
    }
    let kernel = linalg::nullspace(&stacked, model.tolerances().rank)?;
    Ok(SubalgebraHandle::from_coords(model, &kernel))
}

/// Center of a subalgebra.
pub fn center_of<'m>(sub: &SubalgebraHandle<'m>) -> Result<SubalgebraHandle<'m>> {
    let model = sub.model();
    let k = sub.dim();
    if k == 0 {
        return Ok(sub.clone());
    }
    // c in R^k with [sum c_i X_i, X_j] = 0 for all j
    let d = model.dim();
    let mut m = DMatrix::zeros(d * k, k);
    for j in 0..k {
        let xj = sub.basis().column(j).into_owned();
        let ad_j = model.ad(&xj);
        let block = -(ad_j * sub.basis());
        m.view_mut((j * d, 0), (d, k)).copy_from(&block);
    }
    let kernel = linalg::nullspace(&m, model.tolerances().rank)?;
    let coords = sub.basis() * kernel;
    Ok(SubalgebraHandle::from_coords(model, &coords))
}

/// Outcome of the reductivity certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct KillingRestriction {
    pub nondegenerate: bool,
    /// Smallest absolute Gram eigenvalue over the largest ambient Killing entry.
    pub ratio: f64,
}

/// Nondegeneracy of the ambient Killing form on the subspace.
pub fn killing_restriction_nondegenerate(sub: &SubalgebraHandle<'_>) -> KillingRestriction {
    if sub.dim() == 0 {
        return KillingRestriction {
            nondegenerate: true,
            ratio: 1.0,
        };
    }
    let ev = linalg::symmetric_eigenvalues(&sub.killing_gram());
    let scale = sub.model().killing_matrix().amax().max(f64::MIN_POSITIVE);
    let min = ev.iter().fold(f64::INFINITY, |a, e| a.min(e.abs()));
    let ratio = min / scale;
    KillingRestriction {
        nondegenerate: ratio > sub.model().tolerances().signature,
        ratio,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Config;
    use crate::lie::model::{build_classical, Family};

    fn su21() -> LieAlgebraModel {
        build_classical(&Family::Su { p: 2, q: 1 }, &Config::default()).unwrap()
    }

    fn complex_diag(im: &[f64]) -> DMatrix<f64> {
        let n = im.len();
        let mut m = DMatrix::zeros(2 * n, 2 * n);
        for (a, &b) in im.iter().enumerate() {
            m[(2 * a, 2 * a + 1)] = -b;
            m[(2 * a + 1, 2 * a)] = b;
        }
        m
    }

    #[test]
    fn centralizer_of_nothing_is_everything() {
        let m = su21();
        assert_eq!(centralizer(&m, &[]).unwrap().dim(), 8);
    }

    #[test]
    fn centralizer_of_regular_compact_element() {
        let m = su21();
        let z = complex_diag(&[-2.0, 1.0, 1.0]);
        let c = centralizer(&m, &[Generator::Algebra(z.clone())]).unwrap();
        // s(u(2) + u(1))
        assert_eq!(c.dim(), 4);
        assert!(c.is_closed());
        let center = center_of(&c).unwrap();
        assert_eq!(center.dim(), 1);
        let zc = m.coords(&z).unwrap();
        assert!(center.contains(&zc));
        assert!(killing_restriction_nondegenerate(&c).nondegenerate);
    }

    #[test]
    fn group_centralizer_matches_algebra_centralizer() {
        let m = su21();
        let z = complex_diag(&[-2.0, 1.0, 1.0]);
        let g = complex_diag(&[-0.6, 0.3, 0.3]).exp();
        let a = centralizer(&m, &[Generator::Algebra(z)]).unwrap();
        let b = centralizer(&m, &[Generator::Group(g)]).unwrap();
        assert_eq!(a.dim(), b.dim());
    }

    #[test]
    fn centralizer_is_a_subalgebra_and_commutes() {
        let m = build_classical(&Family::So { p: 4, q: 1 }, &Config::default()).unwrap();
        let x = m.basis()[0].clone() + &m.basis()[3] * 0.5;
        let c = centralizer(&m, &[Generator::Algebra(x.clone())]).unwrap();
        assert!(c.is_closed());
        let xc = m.coords(&x).unwrap();
        for col in c.basis().column_iter() {
            assert!(m.bracket(&xc, &col.into_owned()).norm() < 1e-9);
        }
    }

    #[test]
    fn degenerate_restriction_detected() {
        let m = build_classical(&Family::Sl { n: 3 }, &Config::default()).unwrap();
        let mut e = DMatrix::zeros(3, 3);
        e[(0, 1)] = 1.0;
        let sub = SubalgebraHandle::span(&m, &[e]).unwrap();
        assert!(!killing_restriction_nondegenerate(&sub).nondegenerate);
    }
}
