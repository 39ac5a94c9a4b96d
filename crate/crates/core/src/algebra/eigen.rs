//! Joint eigenspaces of commuting diagonalizable operators.

use nalgebra::linalg::Schur;
use rand::Rng;

use super::linalg::{complex_nullspace_abs, complex_range, to_complex, C64, CMatrix};
use crate::config::Tolerances;
use crate::error::{Error, Result};
use nalgebra::DMatrix;

/// One joint eigenspace: the eigenvalue of each input operator and an
/// orthonormal complex basis.
#[derive(Debug, Clone)]
pub struct JointEigenspace {
    pub values: Vec<C64>,
    pub basis: CMatrix,
}

impl JointEigenspace {
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.values.iter().all(|v| v.norm() <= tol)
    }
}

const MAX_SPLIT_DEPTH: usize = 8;

/// Decompose the complexified space under pairwise-commuting real operators.
///
/// Eigenvalue tuples within `tol.cluster * max_norm` of each other are
/// merged. The returned spaces are sorted lexicographically by their value
/// tuples and their dimensions sum to the operator size.
pub fn simultaneous_eigenspaces<R: Rng>(
    ops: &[DMatrix<f64>],
    dim: usize,
    tol: &Tolerances,
    rng: &mut R,
) -> Result<Vec<JointEigenspace>> {
    for op in ops {
        if op.shape() != (dim, dim) {
            return Err(Error::DimensionMismatch(format!(
                "operator is {}x{}, expected {dim}x{dim}",
                op.nrows(),
                op.ncols()
            )));
        }
    }
    let scale = ops.iter().map(|o| o.norm()).fold(0.0, f64::max).max(1.0);
    for (a, x) in ops.iter().enumerate() {
        for y in &ops[a + 1..] {
            let residual = (x * y - y * x).norm() / scale.powi(2);
            if residual > tol.bracket {
                return Err(Error::NonCommuting { residual });
            }
        }
    }
    let cops: Vec<CMatrix> = ops.iter().map(to_complex).collect();
    let full = CMatrix::identity(dim, dim);
    if ops.is_empty() {
        return Ok(vec![JointEigenspace {
            values: Vec::new(),
            basis: full,
        }]);
    }
    let merge_tol = tol.cluster * scale;
    let mut pieces = Vec::new();
    split(&cops, &full, merge_tol, rng, 0, &mut pieces)?;

    // merge tuples that coincide after clustering
    let mut merged: Vec<(Vec<C64>, Vec<CMatrix>)> = Vec::new();
    for (values, basis) in pieces {
        match merged
            .iter_mut()
            .find(|(v, _)| tuple_distance(v, &values) <= merge_tol)
        {
            Some((_, bases)) => bases.push(basis),
            None => merged.push((values, vec![basis])),
        }
    }
    let mut spaces: Vec<JointEigenspace> = merged
        .into_iter()
        .map(|(values, bases)| {
            let cols: usize = bases.iter().map(|b| b.ncols()).sum();
            let mut basis = CMatrix::zeros(dim, cols);
            let mut at = 0;
            for b in bases {
                basis.view_mut((0, at), (dim, b.ncols())).copy_from(&b);
                at += b.ncols();
            }
            let basis = complex_range(&basis, 1e-9);
            JointEigenspace { values, basis }
        })
        .collect();
    let found: usize = spaces.iter().map(JointEigenspace::dim).sum();
    if found != dim {
        return Err(Error::Defective {
            expected: dim,
            found,
        });
    }
    spaces.sort_by(|a, b| compare_tuples(&a.values, &b.values));
    Ok(spaces)
}

/// Recursively split `basis` (orthonormal columns spanning an invariant
/// subspace) until every operator acts as a scalar on each piece.
fn split<R: Rng>(
    ops: &[CMatrix],
    basis: &CMatrix,
    merge_tol: f64,
    rng: &mut R,
    depth: usize,
    out: &mut Vec<(Vec<C64>, CMatrix)>,
) -> Result<()> {
    let m = basis.ncols();
    let restricted: Vec<CMatrix> = ops.iter().map(|a| basis.adjoint() * a * basis).collect();
    let scalars: Option<Vec<C64>> = restricted
        .iter()
        .map(|r| {
            let mean = r.trace() / C64::new(m as f64, 0.0);
            let dev = (r - CMatrix::identity(m, m) * mean).norm();
            (dev <= merge_tol).then_some(mean)
        })
        .collect();
    if let Some(values) = scalars {
        out.push((values, basis.clone()));
        return Ok(());
    }
    if depth >= MAX_SPLIT_DEPTH {
        return Err(Error::Defective {
            expected: m,
            found: 0,
        });
    }

    let mut combo = CMatrix::zeros(m, m);
    for r in &restricted {
        let c: f64 = rng.gen_range(0.5..1.5) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        combo += r * C64::new(c, 0.0);
    }
    let eig = eigenvalues(&combo);
    let mut clusters: Vec<(C64, usize)> = Vec::new();
    for mu in eig {
        match clusters.iter_mut().find(|(c, _)| (*c - mu).norm() <= merge_tol) {
            Some((c, k)) => {
                *c = (*c * C64::new(*k as f64, 0.0) + mu) / C64::new(*k as f64 + 1.0, 0.0);
                *k += 1;
            }
            None => clusters.push((mu, 1)),
        }
    }
    let mut found = 0;
    for (mu, mult) in clusters {
        let shifted = &combo - CMatrix::identity(m, m) * mu;
        let kernel = complex_nullspace_abs(&shifted, merge_tol);
        if kernel.ncols() < mult {
            return Err(Error::Defective {
                expected: mult,
                found: kernel.ncols(),
            });
        }
        found += kernel.ncols();
        let sub = basis * kernel;
        split(ops, &sub, merge_tol, rng, depth + 1, out)?;
    }
    if found != m {
        return Err(Error::Defective { expected: m, found });
    }
    Ok(())
}

fn eigenvalues(m: &CMatrix) -> Vec<C64> {
    let schur = Schur::new(m.clone());
    match schur.eigenvalues() {
        Some(ev) => ev.iter().copied().collect(),
        None => {
            let (_, t) = Schur::new(m.clone()).unpack();
            (0..t.nrows()).map(|k| t[(k, k)]).collect()
        }
    }
}

pub fn tuple_distance(a: &[C64], b: &[C64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Lexicographic order on tuples under (Re, Im), with exact comparisons.
pub fn compare_tuples(a: &[C64], b: &[C64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let ord = x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im));
        if ord != std::cmp::Ordering::Equal {
            return ord;
        }
    }
    a.len().cmp(&b.len())
}

/// Max over operators of `|A - sum_i value_i P_i|` relative to `|A|`, with
/// `P_i` the spectral projectors of the decomposition.
pub fn reconstruction_residual(ops: &[DMatrix<f64>], spaces: &[JointEigenspace]) -> f64 {
    let Some(first) = spaces.first() else {
        return 0.0;
    };
    let n = first.basis.nrows();
    let mut w = CMatrix::zeros(n, n);
    let mut at = 0;
    for s in spaces {
        w.view_mut((0, at), (n, s.dim())).copy_from(&s.basis);
        at += s.dim();
    }
    let Some(w_inv) = w.clone().try_inverse() else {
        return f64::INFINITY;
    };
    let mut worst: f64 = 0.0;
    for (k, op) in ops.iter().enumerate() {
        let mut diag = CMatrix::zeros(n, n);
        let mut at = 0;
        for s in spaces {
            for d in 0..s.dim() {
                diag[(at + d, at + d)] = s.values[k];
            }
            at += s.dim();
        }
        let rebuilt = &w * diag * &w_inv;
        let resid = (to_complex(op) - rebuilt).norm() / op.norm().max(1.0);
        worst = worst.max(resid);
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn rng() -> rand_chacha::ChaCha8Rng {
        rand_chacha::ChaCha8Rng::seed_from_u64(0)
    }

    #[test]
    fn rotation_generator() {
        let r = DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]);
        let spaces = simultaneous_eigenspaces(std::slice::from_ref(&r), 2, &Tolerances::default(), &mut rng()).unwrap();
        assert_eq!(spaces.len(), 2);
        assert!((spaces[0].values[0] - C64::new(0.0, -1.0)).norm() < 1e-12);
        assert!((spaces[1].values[0] - C64::new(0.0, 1.0)).norm() < 1e-12);
        assert!(spaces.iter().all(|s| s.dim() == 1));
        assert!(reconstruction_residual(&[r], &spaces) < 1e-12);
    }

    #[test]
    fn no_operators_gives_whole_space() {
        let spaces = simultaneous_eigenspaces(&[], 5, &Tolerances::default(), &mut rng()).unwrap();
        assert_eq!(spaces.len(), 1);
        assert_eq!(spaces[0].dim(), 5);
        assert!(spaces[0].values.is_empty());
    }

    #[test]
    fn non_commuting_rejected() {
        let a = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        let b = DMatrix::from_row_slice(2, 2, &[0.0, 0.0, 1.0, 0.0]);
        let err = simultaneous_eigenspaces(&[a, b], 2, &Tolerances::default(), &mut rng());
        assert!(matches!(err, Err(Error::NonCommuting { .. })));
    }

    #[test]
    fn jordan_block_is_defective() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0]);
        let err = simultaneous_eigenspaces(&[a], 2, &Tolerances::default(), &mut rng());
        assert!(matches!(err, Err(Error::Defective { .. })));
    }

    #[test]
    fn commuting_diagonal_pair_splits_jointly() {
        // A has a repeated eigenvalue that B separates
        let a = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 1.0, 2.0]));
        let b = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![0.0, 3.0, 3.0]));
        let q = DMatrix::from_row_slice(3, 3, &[1.0, 2.0, 0.0, 0.0, 1.0, 1.0, 1.0, 0.0, 1.0]);
        let qi = q.clone().try_inverse().unwrap();
        let (a, b) = (&q * a * &qi, &q * b * &qi);
        let ops = [a, b];
        let spaces = simultaneous_eigenspaces(&ops, 3, &Tolerances::default(), &mut rng()).unwrap();
        assert_eq!(spaces.len(), 3);
        assert!(reconstruction_residual(&ops, &spaces) < 1e-9);
    }
}
