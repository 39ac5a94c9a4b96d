//! Tolerance-controlled rank, kernels and ranges, real and complex.

use nalgebra::{Complex, DMatrix, DVector};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Singular values sorted descending together with the right singular
/// vectors as rows (`v_t`), for a matrix padded to at least square.
fn sorted_svd(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>, DMatrix<f64>) {
    let (r, c) = m.shape();
    let padded = if r < c {
        let mut p = DMatrix::zeros(c, c);
        p.view_mut((0, 0), (r, c)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(true, true);
    let u = svd.u.expect("requested u");
    let v_t = svd.v_t.expect("requested v_t");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let sv = order.iter().map(|&k| svd.singular_values[k]).collect();
    let v_sorted = DMatrix::from_fn(order.len(), v_t.ncols(), |i, j| v_t[(order[i], j)]);
    let u_sorted = DMatrix::from_fn(u.nrows(), order.len(), |i, j| u[(i, order[j])]);
    (sv, u_sorted, v_sorted)
}

/// Cutoff `tol * max(sigma_max, 1)`: relative for large matrices, absolute
/// for matrices that are zero up to rounding.
fn numerical_rank(sv: &[f64], tol: f64) -> usize {
    let smax = sv.first().copied().unwrap_or(0.0);
    sv.iter().filter(|&&s| s > tol * smax.max(1.0)).count()
}

/// Numerical rank with cutoff `tol * max(sigma_max, 1)`.
pub fn rank(m: &DMatrix<f64>, tol: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    let (sv, _, _) = sorted_svd(m);
    numerical_rank(&sv, tol)
}

/// Orthonormal kernel basis as columns.
pub fn nullspace(m: &DMatrix<f64>, tol: f64) -> Result<DMatrix<f64>> {
    if m.ncols() == 0 {
        return Err(Error::EmptyMatrix);
    }
    if m.nrows() == 0 {
        return Ok(DMatrix::identity(m.ncols(), m.ncols()));
    }
    let (sv, _, v_t) = sorted_svd(m);
    let r = numerical_rank(&sv, tol);
    let n = m.ncols();
    Ok(DMatrix::from_fn(n, n - r, |i, j| v_t[(r + j, i)]))
}

/// Orthonormal basis of the column space.
pub fn range(m: &DMatrix<f64>, tol: f64) -> DMatrix<f64> {
    if m.is_empty() {
        return DMatrix::zeros(m.nrows(), 0);
    }
    let (sv, u, _) = sorted_svd(m);
    let r = numerical_rank(&sv, tol);
    // padded rows of u are zero on the nonzero singular directions
    u.view((0, 0), (m.nrows(), r)).into_owned()
}

/// Orthonormal basis of `span(a)` intersected with the orthogonal
/// complement of `span(b)`, where `span(b)` lies inside `span(a)`.
/// Both inputs have orthonormal columns, so the projected singular
/// values sit near 1 or near 0 and a fixed cut separates them.
pub fn complement_within(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    if a.ncols() == 0 || b.ncols() == 0 {
        return a.clone();
    }
    let projected = a - b * (b.transpose() * a);
    let (sv, u, _) = sorted_svd(&projected);
    let r = sv.iter().filter(|&&s| s > 1e-6).count();
    u.view((0, 0), (a.nrows(), r)).into_owned()
}

fn sorted_complex_svd(m: &CMatrix) -> (Vec<f64>, CMatrix, CMatrix) {
    let (r, c) = m.shape();
    let padded = if r < c {
        let mut p = CMatrix::zeros(c, c);
        p.view_mut((0, 0), (r, c)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(true, true);
    let u = svd.u.expect("requested u");
    let v_t = svd.v_t.expect("requested v_t");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let sv = order.iter().map(|&k| svd.singular_values[k]).collect();
    let v_sorted = CMatrix::from_fn(order.len(), v_t.ncols(), |i, j| v_t[(order[i], j)]);
    let u_sorted = CMatrix::from_fn(u.nrows(), order.len(), |i, j| u[(i, order[j])]);
    (sv, u_sorted, v_sorted)
}

/// Complex kernel; singular values below `abs_tol` count as zero.
pub fn complex_nullspace_abs(m: &CMatrix, abs_tol: f64) -> CMatrix {
    let n = m.ncols();
    if m.nrows() == 0 {
        return CMatrix::identity(n, n);
    }
    let (sv, _, v_t) = sorted_complex_svd(m);
    let r = sv.iter().filter(|&&s| s > abs_tol).count();
    // rows of v_t are conjugated right singular vectors
    CMatrix::from_fn(n, n - r, |i, j| v_t[(r + j, i)].conj())
}

/// Orthonormal basis of the complex column space.
pub fn complex_range(m: &CMatrix, tol: f64) -> CMatrix {
    if m.is_empty() {
        return CMatrix::zeros(m.nrows(), 0);
    }
    let (sv, u, _) = sorted_complex_svd(m);
    let r = numerical_rank(&sv, tol);
    u.view((0, 0), (m.nrows(), r)).into_owned()
}

/// Least-squares solution through the pseudo-inverse.
pub fn solve_least_squares(a: &DMatrix<f64>, b: &DMatrix<f64>, tol: f64) -> Result<DMatrix<f64>> {
    if !a.iter().chain(b.iter()).all(|v| v.is_finite()) {
        return Err(Error::Singular);
    }
    // pad wide systems with zero rows; the SVD is only reliable for tall input
    let (a, b) = if a.nrows() < a.ncols() {
        let mut pa = DMatrix::zeros(a.ncols(), a.ncols());
        pa.view_mut((0, 0), a.shape()).copy_from(a);
        let mut pb = DMatrix::zeros(a.ncols(), b.ncols());
        pb.view_mut((0, 0), b.shape()).copy_from(b);
        (pa, pb)
    } else {
        (a.clone(), b.clone())
    };
    let svd = a.svd(true, true);
    let b = &b;
    svd.solve(b, tol * svd.singular_values.max().max(f64::MIN_POSITIVE))
        .map_err(|_| Error::Singular)
}

pub fn complex_solve_least_squares(a: &CMatrix, b: &CMatrix, tol: f64) -> Result<CMatrix> {
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.max().max(f64::MIN_POSITIVE);
    svd.solve(b, tol * smax).map_err(|_| Error::Singular)
}

/// Eigenvalues of a symmetric matrix, ascending.
pub fn symmetric_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    let sym = (m + m.transpose()) * 0.5;
    let mut ev: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

pub fn to_complex(m: &DMatrix<f64>) -> CMatrix {
    m.map(|x| C64::new(x, 0.0))
}

/// Frobenius norm, or 1 for a zero matrix (used as a scale).
pub fn scale_of(m: &DMatrix<f64>) -> f64 {
    let n = m.norm();
    if n > 0.0 {
        n
    } else {
        1.0
    }
}

pub fn inverse(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    m.clone().try_inverse().ok_or(Error::Singular)
}
