//! The flexibility verdict for a surface group representation.

use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::balance::{balanced, BalanceOutcome, BalanceProblem};
use crate::algebra::linalg::{C64, CMatrix};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::lie::{center_of, centralizer, killing_restriction_nondegenerate, Generator, LieAlgebraModel};
use crate::roots::{decompose, RootKind};
use crate::surface::{CohomologyWorkspace, Module, SurfaceRepresentation};
use crate::toledo::{milnor_wood_check, oriented_root_form, RootFormReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Flexible,
    Rigid,
    Inconclusive,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Flexible => 0,
            Verdict::Rigid => 10,
            Verdict::Inconclusive => 11,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Flexible => "flexible",
            Verdict::Rigid => "rigid",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// `(1 - chi) dim G + dim R`.
pub fn virtual_dimension(genus: u32, dim_g: usize, dim_radical: usize) -> i64 {
    let chi = 2 - 2 * genus as i64;
    (1 - chi) * dim_g as i64 + dim_radical as i64
}

/// Does the set of roots carried by a class span the complexified dual?
pub fn smooth_point_check(roots: &[Vec<C64>], component_norms: &[f64], torus_dim: usize, tol: f64) -> bool {
    if torus_dim == 0 {
        return true;
    }
    let active: Vec<&Vec<C64>> = roots
        .iter()
        .zip(component_norms)
        .filter(|(_, n)| **n > tol)
        .map(|(r, _)| r)
        .collect();
    if active.is_empty() {
        return false;
    }
    let m = CMatrix::from_fn(active.len(), torus_dim, |i, j| active[i][j]);
    let sv = m.singular_values();
    let max = sv.max();
    sv.iter().filter(|&&s| s > 1e-9 * max).count() == torus_dim
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmoothnessReport {
    pub dim_z1: usize,
    pub virtual_dimension: i64,
    pub dim_h0: usize,
    pub dim_h2: usize,
    pub dim_h2_dual: usize,
    /// `dim Z^1 = dim H^2 + (1 - chi) dim G`.
    pub identity_holds: bool,
    pub smooth: bool,
}

/// Compare dim Z^1 of the adjoint module with the virtual dimension.
pub fn smoothness_of_rep(model: &LieAlgebraModel, rep: &SurfaceRepresentation, cfg: &Config) -> Result<SmoothnessReport> {
    let ws = CohomologyWorkspace::new(rep.presentation(), Module::adjoint(model, rep)?, &cfg.tol)?;
    let vdim = virtual_dimension(rep.genus(), model.dim(), 0);
    Ok(SmoothnessReport {
        dim_z1: ws.dim_z1(),
        virtual_dimension: vdim,
        dim_h0: ws.dim_h0(),
        dim_h2: ws.dim_h2(),
        dim_h2_dual: ws.dim_h2_dual(),
        identity_holds: ws.z1_defect() == 0,
        smooth: ws.dim_z1() as i64 == vdim,
    })
}

/// A root with its form data, as reported.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootSummary {
    /// `(re, im)` of the root on the center basis.
    pub values: Vec<[f64; 2]>,
    pub kind: RootKind,
    pub root_space_dim: usize,
    pub dim_h1: usize,
    pub signature: Option<i64>,
    pub toledo: Option<f64>,
    pub milnor_wood_slack: f64,
    pub definite: bool,
    pub nondegenerate: bool,
    /// Smallest |Gram eigenvalue| (or singular value) over the largest.
    pub separation: f64,
}

impl RootSummary {
    pub fn from_report(r: &RootFormReport, tol: f64) -> Self {
        Self {
            values: r.root.iter().map(|z| [z.re + 0.0, z.im + 0.0]).collect(),
            kind: r.kind,
            root_space_dim: r.root_space_dim,
            dim_h1: r.dim_h1,
            signature: r.signature(),
            toledo: r.toledo(),
            milnor_wood_slack: r.milnor_wood_slack(),
            definite: r.definite(),
            nondegenerate: r.nondegenerate(tol),
            separation: r.complex_separation.unwrap_or(r.form.separation),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PnSplit {
    pub p: Vec<Vec<f64>>,
    pub n: Vec<Vec<f64>>,
}

/// P: imaginary roots with definite forms, signed so that the form is
/// positive. N: real and imaginary parts of every other root.
pub fn classify_pn(reports: &[RootFormReport], tol: f64) -> Result<PnSplit> {
    let mut p = Vec::new();
    let mut n = Vec::new();
    for r in reports {
        let re: Vec<f64> = r.root.iter().map(|z| z.re).collect();
        let im: Vec<f64> = r.root.iter().map(|z| z.im).collect();
        if r.kind != RootKind::Mixed && r.form.signature.degenerate > 0 {
            let band = r.form.separation;
            return Err(Error::NumericallyIndefinite { eigenvalue: band, band: tol });
        }
        if r.kind == RootKind::Imaginary && r.definite() {
            let sign = if r.positive_definite() { 1.0 } else { -1.0 };
            p.push(im.iter().map(|x| sign * x).collect());
            continue;
        }
        let nonzero = |v: &[f64]| v.iter().any(|x| x.abs() > 0.0);
        if nonzero(&re) {
            n.push(re);
        }
        if nonzero(&im) {
            n.push(im);
        }
    }
    Ok(PnSplit { p, n })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlexibilityReport {
    pub ambient: String,
    pub dim_g: usize,
    pub genus: u32,
    pub relator_residual: f64,
    pub centralizer_dim: usize,
    pub reductive: bool,
    pub killing_ratio: f64,
    pub center_dim: usize,
    pub roots: Vec<RootSummary>,
    pub p: Vec<Vec<f64>>,
    pub n: Vec<Vec<f64>>,
    pub balance: Option<BalanceOutcome>,
    pub smoothness: SmoothnessReport,
    pub verdict: Verdict,
    pub genus_threshold: u64,
    pub notes: Vec<String>,
}

/// Full pipeline: centralizer, center, roots, forms, P/N and the balance test.
pub fn verdict(model: &LieAlgebraModel, rep: &SurfaceRepresentation, cfg: &Config) -> Result<FlexibilityReport> {
    let gens: Vec<Generator> = rep.images().iter().cloned().map(Generator::Group).collect();
    for g in rep.images() {
        if !model.contains_group_element(g) {
            return Err(Error::InvalidParameters(format!(
                "a generator image is not in the group of {}",
                model.name()
            )));
        }
    }
    let z = centralizer(model, &gens)?;
    let red = killing_restriction_nondegenerate(&z);
    let smoothness = smoothness_of_rep(model, rep, cfg)?;
    let threshold = 2 * (model.dim() as u64).pow(2);
    let mut notes = Vec::new();
    if (rep.genus() as u64) < threshold {
        notes.push(format!(
            "the criterion is proved for genus at least {threshold}; evaluated at genus {}",
            rep.genus()
        ));
    }
    let mut report = FlexibilityReport {
        ambient: model.name().to_string(),
        dim_g: model.dim(),
        genus: rep.genus(),
        relator_residual: rep.relator_residual(),
        centralizer_dim: z.dim(),
        reductive: red.nondegenerate,
        killing_ratio: red.ratio,
        center_dim: 0,
        roots: Vec::new(),
        p: Vec::new(),
        n: Vec::new(),
        balance: None,
        smoothness,
        verdict: Verdict::Inconclusive,
        genus_threshold: threshold,
        notes,
    };
    if !red.nondegenerate {
        report.notes.push(
            "Killing form degenerate on the centralizer: the Zariski closure may not be reductive; \
             push the representation towards a reductive one with conjugation_limit first"
                .into(),
        );
        return Ok(report);
    }

    let center = center_of(&z)?;
    report.center_dim = center.dim();
    let decomp = decompose(model, &center, cfg)?;
    let mut forms = Vec::new();
    for datum in decomp.roots() {
        let form = oriented_root_form(rep, &decomp, &datum.values, cfg)?;
        milnor_wood_check(&form)?;
        forms.push(form);
    }
    report.roots = forms
        .iter()
        .map(|f| RootSummary::from_report(f, cfg.tol.signature))
        .collect();
    for (f, s) in forms.iter().zip(&report.roots) {
        if f.kind == RootKind::Mixed && !s.nondegenerate {
            return Err(Error::NumericallyIndefinite {
                eigenvalue: s.separation,
                band: cfg.tol.signature,
            });
        }
    }
    let split = classify_pn(&forms, cfg.tol.signature)?;
    let problem = BalanceProblem {
        dim: center.dim(),
        p: split.p.clone(),
        n: split.n.clone(),
    };
    let outcome = balanced(&problem);
    report.verdict = if outcome.balanced { Verdict::Flexible } else { Verdict::Rigid };
    if report.verdict == Verdict::Rigid {
        report.notes.push(
            "rigid: the definite root forms in P leave the center unbalanced; tube type obstruction"
                .into(),
        );
    }
    report.p = split.p;
    report.n = split.n;
    report.balance = Some(outcome);
    Ok(report)
}

/// Killing form restricted to the center, for diagnostics.
pub fn center_gram(model: &LieAlgebraModel, rep: &SurfaceRepresentation) -> Result<DMatrix<f64>> {
    let gens: Vec<Generator> = rep.images().iter().cloned().map(Generator::Group).collect();
    let z = centralizer(model, &gens)?;
    let c = center_of(&z)?;
    Ok(c.killing_gram())
}

/// Rank of a root configuration over the complex numbers.
pub fn complex_rank(roots: &[Vec<C64>], dim: usize) -> usize {
    if roots.is_empty() || dim == 0 {
        return 0;
    }
    let m = CMatrix::from_fn(roots.len(), dim, |i, j| roots[i][j]);
    let sv = m.singular_values();
    let max = sv.max();
    sv.iter().filter(|&&s| s > 1e-9 * max).count()
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{build_classical, Family};
    use crate::surface::{fuchsian_genus2, standard_presentation};

    fn im(v: f64) -> C64 {
        C64::new(0.0, v)
    }

    #[test]
    fn virtual_dimensions() {
        assert_eq!(virtual_dimension(2, 3, 0), 9);
        assert_eq!(virtual_dimension(2, 8, 0), 24);
        assert_eq!(virtual_dimension(2, 8, 1), 25);
    }

    #[test]
    fn smooth_point_rank_test() {
        assert!(!smooth_point_check(&[vec![im(1.0)]], &[0.0], 1, 1e-9));
        assert!(smooth_point_check(&[], &[], 0, 1e-9));
        assert!(smooth_point_check(&[vec![im(1.0)]], &[1.0], 1, 1e-9));
        let roots = vec![vec![im(1.0), C64::new(0.0, 0.0)], vec![C64::new(0.0, 0.0), im(1.0)]];
        assert!(!smooth_point_check(&roots, &[1.0, 0.0], 2, 1e-9));
        assert!(smooth_point_check(&roots, &[1.0, 1.0], 2, 1e-9));
    }

    #[test]
    fn fuchsian_sl2_is_smooth() {
        let cfg = Config::default();
        let m = build_classical(&Family::Sl { n: 2 }, &cfg).unwrap();
        let rep = fuchsian_genus2(&cfg.tol).unwrap();
        let s = smoothness_of_rep(&m, &rep, &cfg).unwrap();
        assert_eq!(s.dim_z1, 9);
        assert!(s.smooth && s.identity_holds);
    }

    #[test]
    fn trivial_rep_is_not_smooth() {
        let cfg = Config::default();
        let m = build_classical(&Family::Sl { n: 2 }, &cfg).unwrap();
        let rep = SurfaceRepresentation::new(
            standard_presentation(2).unwrap(),
            vec![DMatrix::identity(2, 2); 4],
            false,
            &cfg.tol,
        )
        .unwrap();
        let s = smoothness_of_rep(&m, &rep, &cfg).unwrap();
        assert_eq!(s.dim_h0, 3);
        assert_eq!(s.dim_z1, 12);
        assert!(!s.smooth);
    }

    #[test]
    fn fuchsian_sl2_has_trivial_center_and_is_flexible() {
        let cfg = Config::default();
        let m = build_classical(&Family::Sl { n: 2 }, &cfg).unwrap();
        let rep = fuchsian_genus2(&cfg.tol).unwrap();
        let r = verdict(&m, &rep, &cfg).unwrap();
        assert_eq!(r.centralizer_dim, 0);
        assert_eq!(r.verdict, Verdict::Flexible);
    }

    #[test]
    fn unipotent_input_is_inconclusive() {
        let cfg = Config::default();
        let m = build_classical(&Family::Sl { n: 2 }, &cfg).unwrap();
        let u = |t: f64| DMatrix::from_row_slice(2, 2, &[1.0, t, 0.0, 1.0]);
        let rep = SurfaceRepresentation::new(
            standard_presentation(2).unwrap(),
            vec![u(1.0), u(2.0), u(-0.5), u(0.3)],
            false,
            &cfg.tol,
        )
        .unwrap();
        let r = verdict(&m, &rep, &cfg).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert_eq!(r.verdict.exit_code(), 11);
    }
}
