//! Limits `lim exp(-t u) g exp(t u)` for symmetric `u`.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::config::Tolerances;
use crate::error::{Error, Result};

/// Limit of `exp(-t u) g exp(t u)` as `t -> +inf`.
///
/// In the eigenbasis of `u` entry `(i, j)` scales by `exp(t (e_j - e_i))`.
/// Entries with negative rate vanish, entries with zero rate survive and a
/// nonzero entry with positive rate makes the limit diverge. Rows and
/// columns in the error refer to the eigenbasis of `u`, sorted by
/// decreasing eigenvalue.
pub fn conjugation_limit(g: &DMatrix<f64>, u: &DMatrix<f64>, tol: &Tolerances) -> Result<DMatrix<f64>> {
    let n = g.nrows();
    if g.shape() != (n, n) || u.shape() != (n, n) {
        return Err(Error::DimensionMismatch("g and u must be square of equal size".into()));
    }
    let u_scale = u.amax().max(1.0);
    if (u - u.transpose()).amax() > tol.bracket * u_scale {
        return Err(Error::InvalidParameters("u must be symmetric".into()));
    }
    let eig = SymmetricEigen::new(u.clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let q = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    let e: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();

    let h = q.transpose() * g * &q;
    let entry_tol = tol.group * g.amax().max(1.0);
    let rate_tol = tol.cluster * u_scale;
    let mut out = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let rate = e[j] - e[i];
            if rate.abs() <= rate_tol {
                out[(i, j)] = h[(i, j)];
            } else if rate > 0.0 && h[(i, j)].abs() > entry_tol {
                return Err(Error::Divergent { row: i, col: j, rate });
            }
        }
    }
    Ok(&q * out * q.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(v: &[f64]) -> DMatrix<f64> {
        DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(v))
    }

    #[test]
    fn upper_triangular_part_decays() {
        let u = diag(&[1.0, 0.0, -1.0]);
        let g = DMatrix::from_row_slice(3, 3, &[1.0, 2.0, 3.0, 0.0, 1.0, 4.0, 0.0, 0.0, 1.0]);
        let lim = conjugation_limit(&g, &u, &Tolerances::default()).unwrap();
        assert!((lim - DMatrix::identity(3, 3)).amax() < 1e-12);
    }

    #[test]
    fn lower_entry_diverges() {
        let u = diag(&[1.0, -1.0]);
        let g = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 1.0, 1.0]);
        assert!(matches!(
            conjugation_limit(&g, &u, &Tolerances::default()),
            Err(Error::Divergent { .. })
        ));
    }

    #[test]
    fn equal_eigenvalue_blocks_survive() {
        let u = diag(&[2.0, 2.0, -1.0]);
        let g = DMatrix::from_row_slice(3, 3, &[0.0, 1.0, 5.0, -1.0, 0.0, 6.0, 0.0, 0.0, 1.0]);
        let lim = conjugation_limit(&g, &u, &Tolerances::default()).unwrap();
        let want = DMatrix::from_row_slice(3, 3, &[0.0, 1.0, 0.0, -1.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
        assert!((lim - want).amax() < 1e-12);
    }

    #[test]
    fn limit_is_idempotent_in_rotated_basis() {
        let r = DMatrix::from_row_slice(2, 2, &[0.6, -0.8, 0.8, 0.6]);
        let u = &r * diag(&[0.5, -0.5]) * r.transpose();
        let g = &r * DMatrix::from_row_slice(2, 2, &[2.0, 3.0, 0.0, 0.5]) * r.transpose();
        let tol = Tolerances::default();
        let once = conjugation_limit(&g, &u, &tol).unwrap();
        let twice = conjugation_limit(&once, &u, &tol).unwrap();
        assert!((&once - &twice).amax() < 1e-12);
        let want = &r * diag(&[2.0, 0.5]) * r.transpose();
        assert!((once - want).amax() < 1e-12);
    }

    #[test]
    fn zero_direction_is_identity_map() {
        let g = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 3.0, 7.0]);
        let lim = conjugation_limit(&g, &DMatrix::zeros(2, 2), &Tolerances::default()).unwrap();
        assert!((lim - g).amax() < 1e-12);
    }

    #[test]
    fn asymmetric_u_rejected() {
        let u = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        let g = DMatrix::identity(2, 2);
        assert!(conjugation_limit(&g, &u, &Tolerances::default()).is_err());
    }
}
