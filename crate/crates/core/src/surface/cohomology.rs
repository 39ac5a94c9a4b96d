//! Group cohomology of a surface group with twisted coefficients.
//!
//! A 1-cocycle is stored as the stacked values `(u(s_1), ..., u(s_2g))` in
//! `V^{2g}`. Cocycles are the kernel of the Fox derivative of the relator.

use nalgebra::{DMatrix, DVector};

use super::presentation::SurfaceGroupPresentation;
use super::representation::SurfaceRepresentation;
use crate::algebra::linalg;
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::lie::LieAlgebraModel;

/// A real representation of the surface group, given on generators.
#[derive(Debug, Clone)]
pub struct Module {
    actions: Vec<DMatrix<f64>>,
    inverses: Vec<DMatrix<f64>>,
    /// Relative failure of the relator to act trivially, measured upstream.
    relator_defect: Option<f64>,
}

impl Module {
    pub fn new(actions: Vec<DMatrix<f64>>) -> Result<Self> {
        let Some(first) = actions.first() else {
            return Err(Error::DimensionMismatch("module needs generator actions".into()));
        };
        let n = first.nrows();
        if actions.iter().any(|a| a.shape() != (n, n)) {
            return Err(Error::DimensionMismatch("module actions must share one square size".into()));
        }
        let inverses = actions.iter().map(linalg::inverse).collect::<Result<Vec<_>>>()?;
        Ok(Self {
            actions,
            inverses,
            relator_defect: None,
        })
    }

    pub fn trivial(dim: usize, generators: usize) -> Self {
        let id = DMatrix::identity(dim, dim);
        Self {
            actions: vec![id.clone(); generators],
            inverses: vec![id; generators],
            relator_defect: Some(0.0),
        }
    }

    /// The defining matrices themselves.
    pub fn standard(rep: &SurfaceRepresentation) -> Self {
        Self {
            actions: rep.images().to_vec(),
            inverses: rep.inverses().to_vec(),
            relator_defect: None,
        }
    }

    /// Adjoint action on the coordinates of `model`.
    pub fn adjoint(model: &LieAlgebraModel, rep: &SurfaceRepresentation) -> Result<Self> {
        let actions = rep
            .images()
            .iter()
            .map(|g| model.adjoint_action(g))
            .collect::<Result<Vec<_>>>()?;
        // the relator acts trivially iff its image commutes with the model;
        // [R, X] = (R - I)X - X(R - I), scaled like the group relator check
        let r = rep.relator_product();
        let scale = rep.images().iter().map(|m| m.amax()).fold(1.0, f64::max);
        let defect = model
            .basis()
            .iter()
            .map(|b| (&r * b - b * &r).amax() / b.amax().max(f64::MIN_POSITIVE))
            .fold(0.0, f64::max)
            / (2.0 * scale);
        let mut module = Self::new(actions)?;
        module.relator_defect = Some(defect);
        Ok(module)
    }

    /// Restriction to the span of orthonormal columns, which must be invariant.
    pub fn restrict(&self, basis: &DMatrix<f64>, tol: f64) -> Result<Self> {
        let mut actions = Vec::with_capacity(self.actions.len());
        for a in &self.actions {
            let image = a * basis;
            let r = basis.transpose() * &image;
            let residual = (image - basis * &r).amax() / a.amax().max(1.0);
            if residual > tol {
                return Err(Error::NotInvariant { residual });
            }
            actions.push(r);
        }
        let mut module = Self::new(actions)?;
        module.relator_defect = self.relator_defect;
        Ok(module)
    }

    /// The dual module `s -> rho(s)^{-T}`.
    pub fn contragredient(&self) -> Self {
        Self {
            actions: self.inverses.iter().map(|m| m.transpose()).collect(),
            inverses: self.actions.iter().map(|m| m.transpose()).collect(),
            relator_defect: self.relator_defect,
        }
    }

    pub fn dim(&self) -> usize {
        self.actions[0].nrows()
    }

    pub fn generator_count(&self) -> usize {
        self.actions.len()
    }

    pub fn actions(&self) -> &[DMatrix<f64>] {
        &self.actions
    }

    pub fn action(&self, generator: usize, inverse: bool) -> &DMatrix<f64> {
        if inverse {
            &self.inverses[generator]
        } else {
            &self.actions[generator]
        }
    }

    /// Stacked `rho(s) - I`; its kernel is the invariants and its image B^1.
    pub fn coboundary_operator(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n * self.actions.len(), n);
        let id = DMatrix::identity(n, n);
        for (k, a) in self.actions.iter().enumerate() {
            m.view_mut((k * n, 0), (n, n)).copy_from(&(a - &id));
        }
        m
    }

    /// Invariant vectors as orthonormal columns.
    pub fn invariants(&self, tol: f64) -> DMatrix<f64> {
        linalg::nullspace(&self.coboundary_operator(), tol).expect("module has positive dimension")
    }

    /// Image of a word.
    pub fn word_action(&self, pres: &SurfaceGroupPresentation, word_len: usize) -> DMatrix<f64> {
        let n = self.dim();
        pres.relator()[..word_len]
            .iter()
            .fold(DMatrix::identity(n, n), |acc, l| acc * self.action(l.generator, l.inverse))
    }
}

/// Z^1, B^1, H^1 and the numerical invariants of a module.
#[derive(Debug, Clone)]
pub struct CohomologyWorkspace {
    presentation: SurfaceGroupPresentation,
    module: Module,
    relator_map: DMatrix<f64>,
    z1: DMatrix<f64>,
    b1: DMatrix<f64>,
    h1: DMatrix<f64>,
    h0: DMatrix<f64>,
    h2: usize,
    h2_dual: usize,
    tol: Tolerances,
}

/// Fox derivative of the relator: the linear map `V^{2g} -> V`, `u -> u(R)`.
pub fn relator_map(pres: &SurfaceGroupPresentation, module: &Module) -> DMatrix<f64> {
    let n = module.dim();
    let g = pres.generator_count();
    let mut l = DMatrix::zeros(n, g * n);
    let mut prefix = DMatrix::identity(n, n);
    for letter in pres.relator() {
        let s = letter.generator;
        let mut block = l.view_mut((0, s * n), (n, n));
        if letter.inverse {
            let step = &prefix * module.action(s, true);
            block -= &step;
            prefix = step;
        } else {
            block += &prefix;
            prefix = &prefix * module.action(s, false);
        }
    }
    l
}

impl CohomologyWorkspace {
    pub fn new(pres: &SurfaceGroupPresentation, module: Module, tol: &Tolerances) -> Result<Self> {
        if module.generator_count() != pres.generator_count() {
            return Err(Error::DimensionMismatch(format!(
                "module has {} generator actions, presentation has {}",
                module.generator_count(),
                pres.generator_count()
            )));
        }
        let n = module.dim();
        let (residual, scale) = match module.relator_defect {
            Some(d) => (d, 1.0),
            None => {
                // rounding in the product scales with its largest prefix
                let mut relator = DMatrix::identity(n, n);
                let mut scale: f64 = 1.0;
                for l in pres.relator() {
                    relator *= module.action(l.generator, l.inverse);
                    scale = scale.max(relator.amax());
                }
                ((&relator - DMatrix::identity(n, n)).amax(), scale)
            }
        };
        if residual > tol.relator * scale {
            return Err(Error::CenterActsNontrivially { residual });
        }
        let relator_map = relator_map(pres, &module);
        let z1 = linalg::nullspace(&relator_map, tol.rank)?;
        let d = module.coboundary_operator();
        let b1 = linalg::range(&d, tol.rank);
        let h0 = linalg::nullspace(&d, tol.rank)?;
        let h1 = linalg::complement_within(&z1, &b1);
        let h2 = n - linalg::rank(&relator_map, tol.rank);
        let h2_dual = module.contragredient().invariants(tol.rank).ncols();
        Ok(Self {
            presentation: pres.clone(),
            module,
            relator_map,
            z1,
            b1,
            h1,
            h0,
            h2,
            h2_dual,
            tol: *tol,
        })
    }

    pub fn presentation(&self) -> &SurfaceGroupPresentation {
        &self.presentation
    }

    pub fn module(&self) -> &Module {
        &self.module
    }

    pub fn relator_map(&self) -> &DMatrix<f64> {
        &self.relator_map
    }

    pub fn z1(&self) -> &DMatrix<f64> {
        &self.z1
    }

    pub fn b1(&self) -> &DMatrix<f64> {
        &self.b1
    }

    /// Orthonormal representatives of H^1 inside Z^1.
    pub fn h1(&self) -> &DMatrix<f64> {
        &self.h1
    }

    /// Invariant vectors.
    pub fn h0(&self) -> &DMatrix<f64> {
        &self.h0
    }

    pub fn dim_h0(&self) -> usize {
        self.h0.ncols()
    }

    pub fn dim_h1(&self) -> usize {
        self.h1.ncols()
    }

    /// dim H^2 as the cokernel of the relator map.
    pub fn dim_h2(&self) -> usize {
        self.h2
    }

    /// dim H^2 as the invariants of the dual module.
    pub fn dim_h2_dual(&self) -> usize {
        self.h2_dual
    }

    pub fn dim_z1(&self) -> usize {
        self.z1.ncols()
    }

    pub fn dim_b1(&self) -> usize {
        self.b1.ncols()
    }

    /// `h0 - h1 + h2 - chi * dim V`, zero when consistent.
    pub fn euler_defect(&self) -> i64 {
        let chi = self.presentation.euler_characteristic();
        self.dim_h0() as i64 - self.dim_h1() as i64 + self.dim_h2() as i64 - chi * self.module.dim() as i64
    }

    /// `dim Z^1 - dim H^2 - (1 - chi) dim V`, zero when consistent.
    pub fn z1_defect(&self) -> i64 {
        let chi = self.presentation.euler_characteristic();
        self.dim_z1() as i64 - self.dim_h2() as i64 - (1 - chi) * self.module.dim() as i64
    }

    pub fn cocycle_residual(&self, u: &DVector<f64>) -> f64 {
        (&self.relator_map * u).amax() / u.amax().max(1.0)
    }

    fn check_cocycle(&self, u: &DVector<f64>) -> Result<()> {
        if u.len() != self.module.dim() * self.presentation.generator_count() {
            return Err(Error::DimensionMismatch("cochain length".into()));
        }
        let residual = self.cocycle_residual(u);
        if residual > self.tol.cocycle * self.relator_map.amax().max(1.0) {
            return Err(Error::NotCocycle { residual });
        }
        Ok(())
    }

    /// The coboundary of `v`.
    pub fn coboundary(&self, v: &DVector<f64>) -> DVector<f64> {
        self.module.coboundary_operator() * v
    }

    /// `<c, [Sigma]>` for `c(x, y) = omega(u(x), rho(x) v(y))`.
    ///
    /// The fundamental class is represented by
    /// `sum [P_{m-1} | s]` over positive letters minus `sum [P_m | s]` over
    /// inverse letters, where `P_m` is the image of the first `m` letters.
    /// With trivial real coefficients this gives `<a1* u b1*> = +1`.
    pub fn cup_pairing(&self, omega: &DMatrix<f64>, u: &DVector<f64>, v: &DVector<f64>) -> Result<f64> {
        self.check_cocycle(u)?;
        self.check_cocycle(v)?;
        let n = self.module.dim();
        if omega.shape() != (n, n) {
            return Err(Error::DimensionMismatch("bilinear form size".into()));
        }
        Ok(self.raw_pairing(omega, u, v))
    }

    fn raw_pairing(&self, omega: &DMatrix<f64>, u: &DVector<f64>, v: &DVector<f64>) -> f64 {
        let n = self.module.dim();
        let mut total = 0.0;
        let mut prefix = DMatrix::identity(n, n);
        let mut u_prefix = DVector::zeros(n);
        for letter in self.presentation.relator() {
            let s = letter.generator;
            let us = u.rows(s * n, n);
            let vs = v.rows(s * n, n);
            if letter.inverse {
                let step = &prefix * self.module.action(s, true);
                u_prefix -= &step * us;
                prefix = step;
                total -= u_prefix.dot(&(omega * (&prefix * vs)));
            } else {
                total += u_prefix.dot(&(omega * (&prefix * vs)));
                u_prefix += &prefix * us;
                prefix = &prefix * self.module.action(s, false);
            }
        }
        total
    }

    /// Raw pairing matrix on the H^1 basis.
    pub fn pairing_matrix(&self, omega: &DMatrix<f64>) -> DMatrix<f64> {
        let k = self.h1.ncols();
        let cols: Vec<DVector<f64>> = self.h1.column_iter().map(|c| c.into_owned()).collect();
        DMatrix::from_fn(k, k, |a, b| self.raw_pairing(omega, &cols[a], &cols[b]))
    }

    /// Symmetrized Gram matrix `(K + K^T) / 2` on the H^1 basis, together
    /// with the asymmetry `max |K - K^T|`.
    pub fn gram(&self, omega: &DMatrix<f64>) -> (DMatrix<f64>, f64) {
        let k = self.pairing_matrix(omega);
        let asym = (&k - k.transpose()).amax();
        ((&k + k.transpose()) * 0.5, asym)
    }

    /// Class of `[u u]` in H^2 of the adjoint module, as its pairings with a
    /// basis of the invariants under `B(xi, [x, y])`.
    pub fn cup_square(&self, model: &LieAlgebraModel, u: &DVector<f64>) -> Result<DVector<f64>> {
        if self.module.dim() != model.dim() {
            return Err(Error::DimensionMismatch("module is not the adjoint module of the model".into()));
        }
        self.check_cocycle(u)?;
        let forms = self.bracket_forms(model);
        Ok(DVector::from_iterator(
            forms.len(),
            forms.iter().map(|w| self.raw_pairing(w, u, u)),
        ))
    }

    /// `W_xi[a][b] = B(xi, [e_a, e_b])` for each invariant `xi`.
    pub fn bracket_forms(&self, model: &LieAlgebraModel) -> Vec<DMatrix<f64>> {
        let d = model.dim();
        self.h0
            .column_iter()
            .map(|xi| {
                let kxi = model.killing_matrix() * xi;
                DMatrix::from_fn(d, d, |a, b| kxi.dot(&model.ad_basis(a).column(b)))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::fuchsian::fuchsian_genus2;
    use crate::surface::presentation::standard_presentation;

    fn dual_cocycle(gens: usize, which: usize) -> DVector<f64> {
        let mut u = DVector::zeros(gens);
        u[which] = 1.0;
        u
    }

    #[test]
    fn trivial_module_intersection_form() {
        let pres = standard_presentation(2).unwrap();
        let ws = CohomologyWorkspace::new(&pres, Module::trivial(1, 4), &Tolerances::default()).unwrap();
        assert_eq!(ws.dim_z1(), 4);
        assert_eq!(ws.dim_b1(), 0);
        let one = DMatrix::identity(1, 1);
        let a1 = dual_cocycle(4, 0);
        let b1 = dual_cocycle(4, 1);
        let a2 = dual_cocycle(4, 2);
        assert!((ws.cup_pairing(&one, &a1, &b1).unwrap() - 1.0).abs() < 1e-12);
        assert!((ws.cup_pairing(&one, &b1, &a1).unwrap() + 1.0).abs() < 1e-12);
        assert!(ws.cup_pairing(&one, &a1, &a2).unwrap().abs() < 1e-12);
    }

    #[test]
    fn fuchsian_adjoint_dimensions() {
        let tol = Tolerances::default();
        let rep = fuchsian_genus2(&tol).unwrap();
        let model = crate::lie::build_classical(&crate::lie::Family::Sl { n: 2 }, &Default::default()).unwrap();
        let module = Module::adjoint(&model, &rep).unwrap();
        let ws = CohomologyWorkspace::new(rep.presentation(), module, &tol).unwrap();
        assert_eq!(ws.dim_h0(), 0);
        assert_eq!(ws.dim_z1(), 9);
        assert_eq!(ws.dim_b1(), 3);
        assert_eq!(ws.dim_h1(), 6);
        assert_eq!(ws.dim_h2(), 0);
        assert_eq!(ws.dim_h2_dual(), 0);
        assert_eq!(ws.euler_defect(), 0);
        assert_eq!(ws.z1_defect(), 0);
        let u = ws.h1().column(0).into_owned();
        assert_eq!(ws.cup_square(&model, &u).unwrap().len(), 0);
    }

    #[test]
    fn coboundaries_are_cocycles_and_pair_to_zero() {
        let tol = Tolerances::default();
        let rep = fuchsian_genus2(&tol).unwrap();
        let ws = CohomologyWorkspace::new(rep.presentation(), Module::standard(&rep), &tol).unwrap();
        let omega = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]);
        let b = ws.coboundary(&DVector::from_column_slice(&[0.3, -1.2]));
        assert!(ws.cocycle_residual(&b) < 1e-9);
        for z in ws.z1().column_iter() {
            let z = z.into_owned();
            assert!(ws.cup_pairing(&omega, &b, &z).unwrap().abs() < 1e-9);
            assert!(ws.cup_pairing(&omega, &z, &b).unwrap().abs() < 1e-9);
        }
    }

    #[test]
    fn standard_module_pairing_is_symmetric() {
        let tol = Tolerances::default();
        let rep = fuchsian_genus2(&tol).unwrap();
        let ws = CohomologyWorkspace::new(rep.presentation(), Module::standard(&rep), &tol).unwrap();
        assert_eq!(ws.dim_h1(), 4);
        let omega = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]);
        let (_, asym) = ws.gram(&omega);
        assert!(asym < 1e-9);
    }

    #[test]
    fn non_cocycle_rejected() {
        let tol = Tolerances::default();
        let rep = fuchsian_genus2(&tol).unwrap();
        let ws = CohomologyWorkspace::new(rep.presentation(), Module::standard(&rep), &tol).unwrap();
        let mut u = DVector::zeros(8);
        u[0] = 1.0;
        let omega = DMatrix::identity(2, 2);
        assert!(matches!(ws.cup_pairing(&omega, &u, &u), Err(Error::NotCocycle { .. })));
    }

    #[test]
    fn central_element_must_act_trivially() {
        // the standard module sees the central lift through -I only if the
        // relator maps there; the octagon lift lands on +I, so force -I
        let pres = standard_presentation(2).unwrap();
        let r = DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]);
        let s = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        // r s r^-1 s^-1 = -I
        let id = DMatrix::identity(2, 2);
        let module = Module::new(vec![r, s, id.clone(), id]).unwrap();
        assert!(matches!(
            CohomologyWorkspace::new(&pres, module, &Tolerances::default()),
            Err(Error::CenterActsNontrivially { .. })
        ));
    }
}
