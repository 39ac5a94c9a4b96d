//! Root space decomposition of a Lie algebra under an abelian subalgebra.

use std::cmp::Ordering;
use std::fmt;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::algebra::eigen::tuple_distance;
use crate::algebra::linalg::{self, to_complex, C64, CMatrix, CVector};
use crate::algebra::simultaneous_eigenspaces;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::lie::{LieAlgebraModel, SubalgebraHandle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootKind {
    Real,
    Imaginary,
    Mixed,
}

impl fmt::Display for RootKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RootKind::Real => "real",
            RootKind::Imaginary => "imaginary",
            RootKind::Mixed => "mixed",
        })
    }
}

/// Classify a nonzero root from its values on the torus basis.
pub fn classify_root(values: &[C64], tol: f64) -> Result<RootKind> {
    let scale = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if scale <= tol {
        return Err(Error::ZeroRoot);
    }
    let band = tol * scale.max(1.0);
    if values.iter().all(|v| v.im.abs() <= band) {
        Ok(RootKind::Real)
    } else if values.iter().all(|v| v.re.abs() <= band) {
        Ok(RootKind::Imaginary)
    } else {
        Ok(RootKind::Mixed)
    }
}

/// Lexicographic (Re, Im) order with differences below `tol` treated as ties.
pub fn compare_roots(a: &[C64], b: &[C64], tol: f64) -> Ordering {
    let cmp = |x: f64, y: f64| {
        if (x - y).abs() <= tol {
            Ordering::Equal
        } else {
            x.total_cmp(&y)
        }
    };
    for (x, y) in a.iter().zip(b) {
        let ord = cmp(x.re, y.re).then(cmp(x.im, y.im));
        if ord != Ordering::Equal {
            return ord;
        }
    }
    Ordering::Equal
}

fn negate(v: &[C64]) -> Vec<C64> {
    v.iter().map(|x| -x).collect()
}

fn conjugate(v: &[C64]) -> Vec<C64> {
    v.iter().map(|x| x.conj()).collect()
}

/// The orbit `{l, -l, conj l, -conj l}` without repetitions.
pub fn root_orbit(values: &[C64], tol: f64) -> Vec<Vec<C64>> {
    let mut out: Vec<Vec<C64>> = Vec::new();
    for cand in [
        values.to_vec(),
        negate(values),
        conjugate(values),
        negate(&conjugate(values)),
    ] {
        if out.iter().all(|o| tuple_distance(o, &cand) > tol) {
            out.push(cand);
        }
    }
    out
}

fn snap(values: &[C64], kind: RootKind) -> Vec<C64> {
    values
        .iter()
        .map(|v| match kind {
            RootKind::Real => C64::new(v.re, 0.0),
            RootKind::Imaginary => C64::new(0.0, v.im),
            RootKind::Mixed => *v,
        })
        .collect()
}

/// One member of a root orbit with its complex root space.
#[derive(Debug, Clone)]
pub struct RootSpace {
    pub values: Vec<C64>,
    /// Orthonormal complex coordinate columns.
    pub basis: CMatrix,
}

impl RootSpace {
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }
}

/// Data attached to a representative root.
#[derive(Debug, Clone)]
pub struct RootDatum {
    pub values: Vec<C64>,
    pub kind: RootKind,
    /// Every member of the orbit, the representative first.
    pub members: Vec<RootSpace>,
    /// Orthonormal real coordinate columns of the realified root space.
    pub real_basis: DMatrix<f64>,
    /// Coefficients of `t_l` on the torus basis.
    pub t_lambda: CVector,
    /// `Omega_l` on `real_basis`.
    pub omega: CMatrix,
    /// Complex structure on `real_basis`, for mixed roots only.
    pub complex_structure: Option<DMatrix<f64>>,
    // per member, coefficients of the real basis columns on the member basis
    components: Vec<CMatrix>,
}

impl RootDatum {
    pub fn real_dim(&self) -> usize {
        self.real_basis.ncols()
    }

    /// Complex dimension of the representative's root space.
    pub fn complex_dim(&self) -> usize {
        self.members[0].dim()
    }

    fn member_index(&self, values: &[C64], tol: f64) -> Option<usize> {
        self.members
            .iter()
            .position(|m| tuple_distance(&m.values, values) <= tol)
    }

    /// Components of the real basis vectors in the member space `k`,
    /// as complex coordinate columns.
    pub fn member_components(&self, k: usize) -> CMatrix {
        &self.members[k].basis * &self.components[k]
    }
}

/// Decomposition of a model under a torus.
#[derive(Debug, Clone)]
pub struct TorusRootDecomposition<'m> {
    model: &'m LieAlgebraModel,
    torus: DMatrix<f64>,
    torus_gram: DMatrix<f64>,
    zero_space: DMatrix<f64>,
    roots: Vec<RootDatum>,
    all_roots: Vec<RootSpace>,
    tol: f64,
}

/// Joint eigenspace decomposition of `ad` of the torus.
pub fn decompose<'m>(
    model: &'m LieAlgebraModel,
    torus: &SubalgebraHandle<'m>,
    cfg: &Config,
) -> Result<TorusRootDecomposition<'m>> {
    let residual = torus.commutator_residual();
    if residual > cfg.tol.bracket * model.killing_matrix().amax().max(1.0) {
        return Err(Error::NotAbelian { residual });
    }
    let torus_basis = torus.basis().clone();
    let ops: Vec<DMatrix<f64>> = torus_basis
        .column_iter()
        .map(|c| model.ad(&c.into_owned()))
        .collect();
    let mut rng = cfg.rng();
    let spaces = simultaneous_eigenspaces(&ops, model.dim(), &cfg.tol, &mut rng)?;
    let scale = ops.iter().map(|o| o.norm()).fold(0.0, f64::max).max(1.0);
    let tol = cfg.tol.cluster * scale;

    let mut zero_cols: Vec<CMatrix> = Vec::new();
    let mut nonzero: Vec<RootSpace> = Vec::new();
    for s in spaces {
        if s.is_zero(tol) {
            zero_cols.push(s.basis);
        } else {
            let kind = classify_root(&s.values, cfg.tol.cluster)?;
            nonzero.push(RootSpace {
                values: snap(&s.values, kind),
                basis: s.basis,
            });
        }
    }
    let zero_space = realified_span(&zero_cols.iter().collect::<Vec<_>>(), model.dim());

    let torus_gram = torus.killing_gram();
    let gram_c = to_complex(&torus_gram);
    let mut taken = vec![false; nonzero.len()];
    let mut roots = Vec::new();
    for i in 0..nonzero.len() {
        if taken[i] {
            continue;
        }
        let orbit = root_orbit(&nonzero[i].values, tol);
        let rep = orbit
            .iter()
            .max_by(|a, b| compare_roots(a, b, tol))
            .cloned()
            .expect("orbit is nonempty");
        let mut ordered: Vec<Vec<C64>> = vec![rep.clone()];
        ordered.extend(root_orbit(&rep, tol).into_iter().skip(1));
        let mut members = Vec::new();
        for vals in &ordered {
            let Some(j) = (0..nonzero.len())
                .find(|&j| !taken[j] && tuple_distance(&nonzero[j].values, vals) <= tol)
            else {
                return Err(Error::Defective {
                    expected: model.dim(),
                    found: model.dim() - 1,
                });
            };
            taken[j] = true;
            members.push(RootSpace {
                values: vals.clone(),
                basis: nonzero[j].basis.clone(),
            });
        }
        roots.push(build_datum(model, &gram_c, members, cfg)?);
    }
    roots.sort_by(|a, b| compare_roots(&b.values, &a.values, tol));

    Ok(TorusRootDecomposition {
        model,
        torus: torus_basis,
        torus_gram,
        zero_space,
        roots,
        all_roots: nonzero,
        tol,
    })
}

/// Real span of complex coordinate columns and their conjugates.
fn realified_span(blocks: &[&CMatrix], dim: usize) -> DMatrix<f64> {
    let cols: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut m = DMatrix::zeros(dim, 2 * cols);
    let mut at = 0;
    for b in blocks {
        for c in b.column_iter() {
            m.set_column(at, &c.map(|z| z.re));
            m.set_column(at + 1, &c.map(|z| z.im));
            at += 2;
        }
    }
    if m.ncols() == 0 {
        return DMatrix::zeros(dim, 0);
    }
    linalg::range(&m, 1e-8)
}

fn build_datum(
    model: &LieAlgebraModel,
    gram: &CMatrix,
    members: Vec<RootSpace>,
    cfg: &Config,
) -> Result<RootDatum> {
    let values = members[0].values.clone();
    let kind = classify_root(&values, cfg.tol.cluster)?;
    let real_basis = realified_span(&members.iter().map(|m| &m.basis).collect::<Vec<_>>(), model.dim());
    let expected: usize = members.iter().map(|m| m.dim()).sum();
    if real_basis.ncols() != expected {
        return Err(Error::Defective {
            expected,
            found: real_basis.ncols(),
        });
    }

    // split real basis vectors into member components
    let k = real_basis.ncols();
    let mut all = CMatrix::zeros(model.dim(), expected);
    let mut at = 0;
    for m in &members {
        all.view_mut((0, at), (model.dim(), m.dim())).copy_from(&m.basis);
        at += m.dim();
    }
    let coeffs = linalg::complex_solve_least_squares(&all, &to_complex(&real_basis), cfg.tol.rank)?;
    let mut components = Vec::new();
    let mut at = 0;
    for m in &members {
        components.push(coeffs.rows(at, m.dim()).into_owned());
        at += m.dim();
    }

    let t_lambda = root_vector(gram, &values)?;
    let mut datum = RootDatum {
        values,
        kind,
        members,
        real_basis,
        t_lambda,
        omega: CMatrix::zeros(k, k),
        complex_structure: None,
        components,
    };
    datum.omega = omega_for_member(model, &datum, 0, 0.0)?;
    if kind == RootKind::Mixed {
        datum.complex_structure = Some(complex_structure_matrix(&datum));
    }
    Ok(datum)
}

/// Solve `B(t_l, t_j) = l(t_j)` on the torus.
fn root_vector(gram: &CMatrix, values: &[C64]) -> Result<CVector> {
    let rhs = CMatrix::from_column_slice(values.len(), 1, values);
    let sol = linalg::complex_solve_least_squares(gram, &rhs, 1e-12)?;
    let res = (gram * &sol - &rhs).norm();
    if res > 1e-9 * rhs.norm().max(1.0) {
        return Err(Error::Singular);
    }
    Ok(sol.column(0).into_owned())
}

/// `Omega_mu` for the orbit member `k` on the real basis.
fn omega_for_member(model: &LieAlgebraModel, datum: &RootDatum, k: usize, tol: f64) -> Result<CMatrix> {
    let mu = &datum.members[k].values;
    let neg = negate(mu);
    let tol = tol.max(1e-9 * mu.iter().map(|v| v.norm()).fold(1.0, f64::max));
    let j = datum.member_index(&neg, tol).ok_or(Error::NotARoot)?;
    let xp = datum.member_components(k);
    let xm = datum.member_components(j);
    let killing = to_complex(model.killing_matrix());
    let factor = if datum.kind == RootKind::Mixed { 2.0 } else { 1.0 };
    let left = (&xp - &xm).transpose() * &killing * (&xp + &xm);
    Ok(left * C64::new(factor, 0.0))
}

fn complex_structure_matrix(datum: &RootDatum) -> DMatrix<f64> {
    let rep = &datum.values;
    let n = datum.real_basis.nrows();
    let k = datum.real_basis.ncols();
    let mut image = CMatrix::zeros(n, k);
    for (idx, m) in datum.members.iter().enumerate() {
        // +i on the members +-l, -i on +-conj(l)
        let d = |v: &[C64]| tuple_distance(&m.values, v);
        let on_pm = d(rep).min(d(&negate(rep))) < d(&conjugate(rep)).min(d(&negate(&conjugate(rep))));
        let unit = if on_pm { C64::new(0.0, 1.0) } else { C64::new(0.0, -1.0) };
        image += datum.member_components(idx) * unit;
    }
    let real = image.map(|z| z.re);
    datum.real_basis.transpose() * real
}

impl<'m> TorusRootDecomposition<'m> {
    pub fn model(&self) -> &'m LieAlgebraModel {
        self.model
    }

    /// Orthonormal coordinate columns of the torus.
    pub fn torus_basis(&self) -> &DMatrix<f64> {
        &self.torus
    }

    pub fn torus_dim(&self) -> usize {
        self.torus.ncols()
    }

    /// Killing form restricted to the torus basis.
    pub fn torus_gram(&self) -> &DMatrix<f64> {
        &self.torus_gram
    }

    /// Real coordinate basis of the zero root space.
    pub fn zero_space(&self) -> &DMatrix<f64> {
        &self.zero_space
    }

    /// Representatives, one per orbit.
    pub fn roots(&self) -> &[RootDatum] {
        &self.roots
    }

    /// Every nonzero root with its complex root space.
    pub fn all_roots(&self) -> &[RootSpace] {
        &self.all_roots
    }

    /// Clustering tolerance used for root values.
    pub fn value_tolerance(&self) -> f64 {
        self.tol
    }

    /// Representative whose orbit contains `values`, with the member index.
    pub fn find(&self, values: &[C64]) -> Result<(&RootDatum, usize)> {
        for r in &self.roots {
            if let Some(k) = r.member_index(values, self.tol) {
                return Ok((r, k));
            }
        }
        Err(Error::NotARoot)
    }

    /// `Omega` for any root, on the realified basis of its orbit.
    pub fn omega_form(&self, values: &[C64]) -> Result<CMatrix> {
        let (datum, k) = self.find(values)?;
        omega_for_member(self.model, datum, k, self.tol)
    }

    /// `t` for any root, as coefficients on the torus basis.
    pub fn root_vector(&self, values: &[C64]) -> Result<CVector> {
        self.find(values)?;
        root_vector(&to_complex(&self.torus_gram), values)
    }

    /// Complex structure of a mixed root.
    pub fn complex_structure(&self, values: &[C64]) -> Result<DMatrix<f64>> {
        let (datum, _) = self.find(values)?;
        datum.complex_structure.clone().ok_or(Error::NotMixed)
    }

    /// Killing-orthogonal projection onto the torus, as torus coefficients.
    pub fn torus_component(&self, x: &DVector<f64>) -> Result<DVector<f64>> {
        let rhs = self.torus.transpose() * self.model.killing_matrix() * x;
        let sol = linalg::solve_least_squares(&self.torus_gram, &DMatrix::from_column_slice(rhs.len(), 1, rhs.as_slice()), 1e-12)?;
        Ok(sol.column(0).into_owned())
    }

    /// `|[X,Y]^t - Re(Omega(X,Y) t)|` for coordinates `x`, `y` on the real basis.
    pub fn bracket_identity_residual(&self, datum: &RootDatum, x: &DVector<f64>, y: &DVector<f64>) -> Result<f64> {
        let xg = &datum.real_basis * x;
        let yg = &datum.real_basis * y;
        let lhs = self.torus_component(&self.model.bracket(&xg, &yg))?;
        let xc = x.map(|v| C64::new(v, 0.0));
        let yc = y.map(|v| C64::new(v, 0.0));
        let omega = (xc.transpose() * &datum.omega * yc)[(0, 0)];
        let rhs = datum.t_lambda.map(|t| (t * omega).re);
        Ok((lhs - rhs).norm())
    }

    /// `max_j |B(t, t_j) - l(t_j)|`.
    pub fn root_vector_residual(&self, datum: &RootDatum) -> f64 {
        let g = to_complex(&self.torus_gram);
        let lhs = g.transpose() * &datum.t_lambda;
        lhs.iter()
            .zip(&datum.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest Killing pairing between different realified root spaces or
    /// the zero space.
    pub fn orthogonality_residual(&self) -> f64 {
        let k = self.model.killing_matrix();
        let mut blocks: Vec<&DMatrix<f64>> = vec![&self.zero_space];
        blocks.extend(self.roots.iter().map(|r| &r.real_basis));
        let mut worst: f64 = 0.0;
        for a in 0..blocks.len() {
            for b in a + 1..blocks.len() {
                if blocks[a].ncols() > 0 && blocks[b].ncols() > 0 {
                    worst = worst.max((blocks[a].transpose() * k * blocks[b]).amax());
                }
            }
        }
        worst / k.amax().max(1.0)
    }

    /// `dim g_0 + sum of realified root space dims`.
    pub fn total_dim(&self) -> usize {
        self.zero_space.ncols() + self.roots.iter().map(|r| r.real_dim()).sum::<usize>()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{build_classical, centralizer, Family, Generator};

    fn im(v: f64) -> C64 {
        C64::new(0.0, v)
    }

    #[test]
    fn classification() {
        assert_eq!(classify_root(&[im(3.0)], 1e-9).unwrap(), RootKind::Imaginary);
        assert_eq!(classify_root(&[C64::new(2.0, 0.0)], 1e-9).unwrap(), RootKind::Real);
        assert_eq!(classify_root(&[C64::new(1.0, 1.0)], 1e-9).unwrap(), RootKind::Mixed);
        assert!(matches!(classify_root(&[C64::new(0.0, 0.0)], 1e-9), Err(Error::ZeroRoot)));
    }

    #[test]
    fn orbit_sizes() {
        assert_eq!(root_orbit(&[im(3.0)], 1e-9).len(), 2);
        assert_eq!(root_orbit(&[C64::new(2.0, 0.0)], 1e-9).len(), 2);
        assert_eq!(root_orbit(&[C64::new(2.0, 2.0)], 1e-9).len(), 4);
    }

    #[test]
    fn empty_torus_has_no_roots() {
        let cfg = Config::default();
        let m = build_classical(&Family::Su { p: 2, q: 1 }, &cfg).unwrap();
        let t = SubalgebraHandle::from_coords(&m, &DMatrix::zeros(8, 0));
        let d = decompose(&m, &t, &cfg).unwrap();
        assert!(d.roots().is_empty());
        assert_eq!(d.zero_space().ncols(), 8);
    }

    #[test]
    fn su21_compact_torus() {
        let cfg = Config::default();
        let m = build_classical(&Family::Su { p: 2, q: 1 }, &cfg).unwrap();
        let mut z = DMatrix::zeros(6, 6);
        for (a, b) in [-2.0, 1.0, 1.0].iter().enumerate() {
            z[(2 * a, 2 * a + 1)] = -b;
            z[(2 * a + 1, 2 * a)] = *b;
        }
        let t = SubalgebraHandle::span(&m, &[z]).unwrap();
        let d = decompose(&m, &t, &cfg).unwrap();
        assert_eq!(d.roots().len(), 1);
        let r = &d.roots()[0];
        assert_eq!(r.kind, RootKind::Imaginary);
        assert_eq!(r.real_dim(), 4);
        assert_eq!(d.zero_space().ncols(), 4);
        assert!(r.values[0].im > 0.0);
        assert!(d.orthogonality_residual() < 1e-9);
        assert!(d.root_vector_residual(r) < 1e-9);
        // Im(Omega) nondegenerate, Re(Omega) zero
        assert!(r.omega.map(|z| z.re).amax() < 1e-9);
        assert_eq!(linalg::rank(&r.omega.map(|z| z.im), 1e-9), 4);
        let x = DVector::from_fn(4, |i, _| (i as f64 + 1.0).sin());
        let y = DVector::from_fn(4, |i, _| (i as f64 * 2.0).cos());
        assert!(d.bracket_identity_residual(r, &x, &y).unwrap() < 1e-8);
    }

    #[test]
    fn so41_root_space_is_six_dimensional() {
        let cfg = Config::default();
        let m = build_classical(&Family::So { p: 4, q: 1 }, &cfg).unwrap();
        // centralizer of so(2,1) on the last three coordinates
        let mut gens = Vec::new();
        for (a, b) in [(2, 4), (3, 4), (2, 3)] {
            let mut x = DMatrix::zeros(5, 5);
            if b == 4 {
                x[(a, b)] = 1.0;
                x[(b, a)] = 1.0;
            } else {
                x[(a, b)] = 1.0;
                x[(b, a)] = -1.0;
            }
            gens.push(Generator::Algebra(x));
        }
        let c = centralizer(&m, &gens).unwrap();
        assert_eq!(c.dim(), 1);
        let d = decompose(&m, &c, &cfg).unwrap();
        assert_eq!(d.roots().len(), 1);
        assert_eq!(d.roots()[0].real_dim(), 6);
        assert_eq!(d.roots()[0].kind, RootKind::Imaginary);
        assert_eq!(d.total_dim(), 10);
    }

    #[test]
    fn sl2c_roots_are_mixed_or_real() {
        let cfg = Config::default();
        let m = build_classical(&Family::SlComplex { n: 2 }, &cfg).unwrap();
        // H = diag(1, -1) and iH
        let mut h = DMatrix::zeros(4, 4);
        h[(0, 0)] = 1.0;
        h[(1, 1)] = 1.0;
        h[(2, 2)] = -1.0;
        h[(3, 3)] = -1.0;
        let mut ih = DMatrix::zeros(4, 4);
        ih[(0, 1)] = -1.0;
        ih[(1, 0)] = 1.0;
        ih[(2, 3)] = 1.0;
        ih[(3, 2)] = -1.0;
        let t = SubalgebraHandle::span(&m, &[h, ih]).unwrap();
        let d = decompose(&m, &t, &cfg).unwrap();
        assert_eq!(d.roots().len(), 1);
        let r = &d.roots()[0];
        assert_eq!(r.kind, RootKind::Mixed);
        assert_eq!(r.real_dim(), 4);
        let j = d.complex_structure(&r.values).unwrap();
        assert!((&j * &j + DMatrix::identity(4, 4)).norm() < 1e-10);
        // Omega(JX, Y) = i Omega(X, Y)
        let jc = to_complex(&j);
        let lhs = jc.transpose() * &r.omega;
        let rhs = &r.omega * C64::new(0.0, 1.0);
        assert!((lhs - rhs).norm() < 1e-9);
        let x = DVector::from_fn(4, |i, _| (i as f64 + 0.3).sin());
        let y = DVector::from_fn(4, |i, _| (i as f64 * 1.7).cos());
        assert!(d.bracket_identity_residual(r, &x, &y).unwrap() < 1e-8);
    }

    #[test]
    fn omega_member_rules() {
        let cfg = Config::default();
        let m = build_classical(&Family::SlComplex { n: 2 }, &cfg).unwrap();
        let mut h = DMatrix::zeros(4, 4);
        h[(0, 0)] = 1.0;
        h[(1, 1)] = 1.0;
        h[(2, 2)] = -1.0;
        h[(3, 3)] = -1.0;
        let t = SubalgebraHandle::span(&m, &[h]).unwrap();
        let d = decompose(&m, &t, &cfg).unwrap();
        let r = &d.roots()[0];
        let om = d.omega_form(&r.values).unwrap();
        let neg = d.omega_form(&negate(&r.values)).unwrap();
        assert!((&om + &neg).norm() < 1e-9);
        let cj = d.omega_form(&conjugate(&r.values)).unwrap();
        assert!((om.map(|z| z.conj()) - cj).norm() < 1e-9);
        assert!(matches!(d.omega_form(&[C64::new(7.0, 0.0)]), Err(Error::NotARoot)));
    }
}
