//! Signatures of cup-product forms and Toledo invariants.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::algebra::linalg::{self, C64, CMatrix};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::roots::{RootKind, TorusRootDecomposition};
use crate::surface::{CohomologyWorkspace, Module, SurfaceRepresentation};

/// Eigenvalue sign counts of a symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    /// Eigenvalues inside the band `tol * |M|`.
    pub degenerate: usize,
}

impl Signature {
    pub fn value(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }

    pub fn is_definite(&self) -> bool {
        self.degenerate == 0 && (self.positive == 0 || self.negative == 0)
    }
}

/// Signs of eigenvalues relative to `tol` times the spectral norm.
pub fn signature(m: &DMatrix<f64>, tol: f64) -> Result<Signature> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch("signature of a non-square matrix".into()));
    }
    let scale = m.amax().max(f64::MIN_POSITIVE);
    let residual = (m - m.transpose()).amax() / scale;
    if residual > 1e-9 {
        return Err(Error::Asymmetric { residual });
    }
    let ev = linalg::symmetric_eigenvalues(m);
    let norm = ev.iter().fold(0.0f64, |a, e| a.max(e.abs()));
    let band = tol * norm;
    Ok(Signature {
        positive: ev.iter().filter(|&&e| e > band).count(),
        negative: ev.iter().filter(|&&e| e < -band).count(),
        degenerate: ev.iter().filter(|&&e| e.abs() <= band).count(),
    })
}

/// Symmetric cup-product form on H^1 for a real bilinear form on the module.
#[derive(Debug, Clone)]
pub struct ModuleForm {
    pub gram: DMatrix<f64>,
    pub asymmetry: f64,
    pub signature: Signature,
    /// Smallest absolute eigenvalue over the largest.
    pub separation: f64,
}

impl ModuleForm {
    pub fn new(ws: &CohomologyWorkspace, omega: &DMatrix<f64>, tol: f64) -> Result<Self> {
        let (gram, asymmetry) = ws.gram(omega);
        let signature = signature(&gram, tol)?;
        Ok(Self {
            separation: separation(&gram),
            gram,
            asymmetry,
            signature,
        })
    }

    /// Signature over four.
    pub fn toledo(&self) -> f64 {
        self.signature.value() as f64 / 4.0
    }
}

fn separation(m: &DMatrix<f64>) -> f64 {
    let ev = linalg::symmetric_eigenvalues(m);
    let max = ev.iter().fold(0.0f64, |a, e| a.max(e.abs()));
    if max == 0.0 {
        return 0.0;
    }
    ev.iter().fold(f64::INFINITY, |a, e| a.min(e.abs())) / max
}

/// Per-root cup-product form, signature and Toledo invariant.
#[derive(Debug, Clone)]
pub struct RootFormReport {
    pub root: Vec<C64>,
    pub kind: RootKind,
    pub root_space_dim: usize,
    pub euler_characteristic: i64,
    pub dim_h0: usize,
    pub dim_h1: usize,
    pub dim_h2: usize,
    pub dim_z1: usize,
    pub euler_defect: i64,
    pub z1_defect: i64,
    /// Real form: `Q` for real roots, `Im Q` for imaginary roots, `Re Q`
    /// for mixed roots.
    pub form: ModuleForm,
    /// Complex Gram matrix, mixed roots only.
    pub complex_gram: Option<CMatrix>,
    /// Smallest singular value of the complex Gram over the largest.
    pub complex_separation: Option<f64>,
    /// Max |pairing| between a coboundary and a cocycle.
    pub coboundary_pairing: f64,
}

impl RootFormReport {
    pub fn signature(&self) -> Option<i64> {
        (self.kind != RootKind::Mixed).then(|| self.form.signature.value())
    }

    pub fn toledo(&self) -> Option<f64> {
        (self.kind != RootKind::Mixed).then(|| self.form.toledo())
    }

    /// Definite form on a nonzero H^1.
    pub fn definite(&self) -> bool {
        self.kind != RootKind::Mixed && self.dim_h1 > 0 && self.form.signature.is_definite()
    }

    pub fn positive_definite(&self) -> bool {
        self.definite() && self.form.signature.positive == self.dim_h1
    }

    pub fn nondegenerate(&self, tol: f64) -> bool {
        match self.complex_separation {
            Some(s) => s > tol,
            None => self.form.signature.degenerate == 0,
        }
    }

    /// `-chi * dim - 4 |T|`; zero for mixed roots, which carry no signature.
    pub fn milnor_wood_slack(&self) -> f64 {
        let bound = -(self.euler_characteristic as f64) * self.root_space_dim as f64;
        bound - 4.0 * self.toledo().unwrap_or(0.0).abs()
    }
}

/// Slack of the Milnor-Wood bound; negative slack means an inconsistent pipeline.
pub fn milnor_wood_check(report: &RootFormReport) -> Result<f64> {
    let slack = report.milnor_wood_slack();
    if slack < -1e-9 {
        return Err(Error::NegativeSlack { slack });
    }
    Ok(slack)
}

/// Action of the representation on the realified root space of `root`.
pub fn root_module(
    rep: &SurfaceRepresentation,
    decomp: &TorusRootDecomposition<'_>,
    root: &[C64],
    cfg: &Config,
) -> Result<Module> {
    let (datum, _) = decomp.find(root)?;
    Module::adjoint(decomp.model(), rep)?.restrict(&datum.real_basis, cfg.tol.relator)
}

/// Cup-product form of the root representation `rho_l`.
pub fn root_form(
    rep: &SurfaceRepresentation,
    decomp: &TorusRootDecomposition<'_>,
    root: &[C64],
    cfg: &Config,
) -> Result<RootFormReport> {
    let (datum, _) = decomp.find(root)?;
    let module = root_module(rep, decomp, root, cfg)?;
    let ws = CohomologyWorkspace::new(rep.presentation(), module, &cfg.tol)?;
    if ws.dim_h0() != 0 {
        return Err(Error::NonzeroInvariants(ws.dim_h0()));
    }
    let omega = decomp.omega_form(root)?;
    let kind = datum.kind;
    let real_part = match kind {
        RootKind::Imaginary => omega.map(|z| z.im),
        RootKind::Real | RootKind::Mixed => omega.map(|z| z.re),
    };
    let form = ModuleForm::new(&ws, &real_part, cfg.tol.signature)?;
    let (complex_gram, complex_separation) = if kind == RootKind::Mixed {
        let (im_gram, _) = ws.gram(&omega.map(|z| z.im));
        let g = CMatrix::from_fn(form.gram.nrows(), form.gram.ncols(), |a, b| {
            C64::new(form.gram[(a, b)], im_gram[(a, b)])
        });
        let sv = g.clone().singular_values();
        let max = sv.max();
        let sep = if max > 0.0 { sv.min() / max } else { 0.0 };
        (Some(g), Some(sep))
    } else {
        (None, None)
    };
    let coboundary_pairing = coboundary_pairing(&ws, &real_part)?;
    Ok(RootFormReport {
        root: root.to_vec(),
        kind,
        root_space_dim: datum.real_dim(),
        euler_characteristic: rep.presentation().euler_characteristic(),
        dim_h0: ws.dim_h0(),
        dim_h1: ws.dim_h1(),
        dim_h2: ws.dim_h2(),
        dim_z1: ws.dim_z1(),
        euler_defect: ws.euler_defect(),
        z1_defect: ws.z1_defect(),
        form,
        complex_gram,
        complex_separation,
        coboundary_pairing,
    })
}

/// [`root_form`] for the orbit member with `T >= 0`: an imaginary root with
/// negative Toledo invariant is replaced by its negative.
pub fn oriented_root_form(
    rep: &SurfaceRepresentation,
    decomp: &TorusRootDecomposition<'_>,
    root: &[C64],
    cfg: &Config,
) -> Result<RootFormReport> {
    let form = root_form(rep, decomp, root, cfg)?;
    if form.kind == RootKind::Imaginary && form.toledo().unwrap_or(0.0) < 0.0 {
        let neg: Vec<C64> = root.iter().map(|v| -v).collect();
        return root_form(rep, decomp, &neg, cfg);
    }
    Ok(form)
}

/// Largest |pairing| of a B^1 basis vector against a Z^1 basis vector, either order.
pub fn coboundary_pairing(ws: &CohomologyWorkspace, omega: &DMatrix<f64>) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for b in ws.b1().column_iter() {
        let b = b.into_owned();
        for z in ws.z1().column_iter() {
            let z = z.into_owned();
            worst = worst
                .max(ws.cup_pairing(omega, &b, &z)?.abs())
                .max(ws.cup_pairing(omega, &z, &b)?.abs());
        }
    }
    Ok(worst)
}

/// Outcome of the Lagrangian pair test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LagrangianCheck {
    pub complementary: bool,
    pub isotropy_residual: f64,
    pub invariance_residual: f64,
    pub holds: bool,
}

/// Whether `l1` and `l2` (column spans) are complementary, isotropic for
/// `omega` and invariant under every generator of the module.
pub fn lagrangian_pair_check(
    module: &Module,
    omega: &DMatrix<f64>,
    l1: &DMatrix<f64>,
    l2: &DMatrix<f64>,
    tol: f64,
) -> Result<LagrangianCheck> {
    let n = module.dim();
    if omega.shape() != (n, n) || l1.nrows() != n || l2.nrows() != n {
        return Err(Error::DimensionMismatch("subspaces must live in the module".into()));
    }
    let mut both = DMatrix::zeros(n, l1.ncols() + l2.ncols());
    both.view_mut((0, 0), l1.shape()).copy_from(l1);
    both.view_mut((0, l1.ncols()), l2.shape()).copy_from(l2);
    let complementary = l1.ncols() + l2.ncols() == n && linalg::rank(&both, 1e-9) == n;
    let scale = omega.amax().max(f64::MIN_POSITIVE);
    let isotropy_residual = [l1, l2]
        .iter()
        .map(|l| (l.transpose() * omega * *l).amax() / scale)
        .fold(0.0, f64::max);
    let mut invariance_residual: f64 = 0.0;
    for l in [l1, l2] {
        let q = linalg::range(l, 1e-9);
        for a in module.actions() {
            let img = a * &q;
            let off = &img - &q * (q.transpose() * &img);
            invariance_residual = invariance_residual.max(off.amax() / a.amax().max(1.0));
        }
    }
    let holds = complementary && isotropy_residual <= tol && invariance_residual <= tol;
    Ok(LagrangianCheck {
        complementary,
        isotropy_residual,
        invariance_residual,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Tolerances;
    use crate::surface::fuchsian_genus2;
    use proptest::prelude::*;

    fn diag(v: &[f64]) -> DMatrix<f64> {
        DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(v))
    }

    #[test]
    fn identity_and_split() {
        assert_eq!(signature(&DMatrix::identity(4, 4), 1e-6).unwrap().value(), 4);
        assert_eq!(signature(&diag(&[1.0, -1.0]), 1e-6).unwrap().value(), 0);
    }

    #[test]
    fn asymmetric_rejected() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 0.0, 1.0]);
        assert!(matches!(signature(&m, 1e-6), Err(Error::Asymmetric { .. })));
    }

    #[test]
    fn degenerate_band_counted() {
        let s = signature(&diag(&[1.0, 1e-12, -2.0]), 1e-6).unwrap();
        assert_eq!((s.positive, s.negative, s.degenerate), (1, 1, 1));
        assert!(!s.is_definite());
    }

    #[test]
    fn fuchsian_standard_module_is_maximal() {
        let tol = Tolerances::default();
        let rep = fuchsian_genus2(&tol).unwrap();
        let ws = CohomologyWorkspace::new(rep.presentation(), Module::standard(&rep), &tol).unwrap();
        let omega = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]);
        let f = ModuleForm::new(&ws, &omega, 1e-6).unwrap();
        assert_eq!(f.signature.value().abs(), 4);
        assert_eq!(f.toledo().abs(), 1.0);
        assert!(f.separation > 1e-6);
    }

    #[test]
    fn lagrangian_pair_on_trivial_module() {
        let module = Module::trivial(2, 4);
        let omega = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]);
        let l1 = DMatrix::from_column_slice(2, 1, &[1.0, 0.0]);
        let l2 = DMatrix::from_column_slice(2, 1, &[0.0, 1.0]);
        assert!(lagrangian_pair_check(&module, &omega, &l1, &l2, 1e-9).unwrap().holds);
        let l3 = DMatrix::from_column_slice(2, 2, &[1.0, 0.0, 0.0, 1.0]);
        assert!(!lagrangian_pair_check(&module, &omega, &l3, &l2, 1e-9).unwrap().holds);
    }

    proptest! {
        #[test]
        fn signature_is_odd_and_additive(a in prop::collection::vec(-5.0f64..5.0, 3), b in prop::collection::vec(-5.0f64..5.0, 2)) {
            prop_assume!(a.iter().chain(&b).all(|x| x.abs() > 1e-3));
            let ma = diag(&a);
            let mb = diag(&b);
            let sa = signature(&ma, 1e-9).unwrap().value();
            let sb = signature(&mb, 1e-9).unwrap().value();
            prop_assert_eq!(signature(&(-&ma), 1e-9).unwrap().value(), -sa);
            let mut sum = DMatrix::zeros(5, 5);
            sum.view_mut((0, 0), (3, 3)).copy_from(&ma);
            sum.view_mut((3, 3), (2, 2)).copy_from(&mb);
            prop_assert_eq!(signature(&sum, 1e-9).unwrap().value(), sa + sb);
        }
    }
}
