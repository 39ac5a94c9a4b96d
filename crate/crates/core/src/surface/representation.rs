//! Homomorphisms from a surface group, given by generator images.

use nalgebra::DMatrix;

use super::presentation::{Letter, SurfaceGroupPresentation};
use crate::algebra::linalg;
use crate::config::Tolerances;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct SurfaceRepresentation {
    presentation: SurfaceGroupPresentation,
    images: Vec<DMatrix<f64>>,
    inverses: Vec<DMatrix<f64>>,
    central_lift: bool,
    relator_residual: f64,
}

impl SurfaceRepresentation {
    /// Check sizes and the relator. With `central_lift` the relator may
    /// also evaluate to minus the identity.
    pub fn new(
        presentation: SurfaceGroupPresentation,
        images: Vec<DMatrix<f64>>,
        central_lift: bool,
        tol: &Tolerances,
    ) -> Result<Self> {
        if images.len() != presentation.generator_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} generator images for genus {}",
                images.len(),
                presentation.genus()
            )));
        }
        let n = images[0].nrows();
        if images.iter().any(|m| m.shape() != (n, n)) || n == 0 {
            return Err(Error::DimensionMismatch("generator images must be square of one size".into()));
        }
        let inverses = images.iter().map(linalg::inverse).collect::<Result<Vec<_>>>()?;
        let mut rep = Self {
            presentation,
            images,
            inverses,
            central_lift,
            relator_residual: 0.0,
        };
        let p = rep.relator_product();
        let id = DMatrix::identity(n, n);
        let scale = rep.images.iter().map(|m| m.amax()).fold(1.0, f64::max);
        let mut residual = (&p - &id).amax();
        if central_lift {
            residual = residual.min((&p + &id).amax());
        }
        residual /= scale;
        rep.relator_residual = residual;
        if residual > tol.relator {
            return Err(Error::RelatorResidual { residual });
        }
        Ok(rep)
    }

    pub fn presentation(&self) -> &SurfaceGroupPresentation {
        &self.presentation
    }

    pub fn genus(&self) -> u32 {
        self.presentation.genus()
    }

    pub fn images(&self) -> &[DMatrix<f64>] {
        &self.images
    }

    pub fn inverses(&self) -> &[DMatrix<f64>] {
        &self.inverses
    }

    pub fn size(&self) -> usize {
        self.images[0].nrows()
    }

    pub fn central_lift(&self) -> bool {
        self.central_lift
    }

    pub fn relator_residual(&self) -> f64 {
        self.relator_residual
    }

    pub fn letter_image(&self, l: Letter) -> &DMatrix<f64> {
        if l.inverse {
            &self.inverses[l.generator]
        } else {
            &self.images[l.generator]
        }
    }

    pub fn word_image(&self, word: &[Letter]) -> DMatrix<f64> {
        let n = self.size();
        word.iter()
            .fold(DMatrix::identity(n, n), |acc, &l| acc * self.letter_image(l))
    }

    pub fn relator_product(&self) -> DMatrix<f64> {
        self.word_image(self.presentation.relator())
    }

    /// Apply a map to every generator image, keeping the central-lift flag.
    pub fn map<F>(&self, f: F, tol: &Tolerances) -> Result<Self>
    where
        F: Fn(&DMatrix<f64>) -> DMatrix<f64>,
    {
        let images = self.images.iter().map(f).collect();
        Self::new(self.presentation.clone(), images, self.central_lift, tol)
    }

    /// Conjugate every image by `g`.
    pub fn conjugate(&self, g: &DMatrix<f64>, tol: &Tolerances) -> Result<Self> {
        let g_inv = linalg::inverse(g)?;
        self.map(|m| g * m * &g_inv, tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::presentation::standard_presentation;

    #[test]
    fn trivial_representation() {
        let p = standard_presentation(2).unwrap();
        let rep = SurfaceRepresentation::new(p, vec![DMatrix::identity(3, 3); 4], false, &Tolerances::default()).unwrap();
        assert_eq!(rep.relator_residual(), 0.0);
    }

    #[test]
    fn wrong_count_rejected() {
        let p = standard_presentation(2).unwrap();
        let r = SurfaceRepresentation::new(p, vec![DMatrix::identity(2, 2); 3], false, &Tolerances::default());
        assert!(matches!(r, Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn noncommuting_pair_violates_relator() {
        let p = standard_presentation(2).unwrap();
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0]);
        let b = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 1.0, 1.0]);
        let id = DMatrix::identity(2, 2);
        let r = SurfaceRepresentation::new(p, vec![a, b, id.clone(), id], false, &Tolerances::default());
        assert!(matches!(r, Err(Error::RelatorResidual { .. })));
    }
}
