//! The balanced condition as a linear feasibility problem.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::lp::{phase_one, Feasibility};
use crate::algebra::linalg;

/// Point configuration in the dual of the center.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BalanceProblem {
    pub dim: usize,
    pub p: Vec<Vec<f64>>,
    pub n: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BalanceCertificate {
    /// `span(N)` is everything.
    Trivial,
    /// Weights `mu_i >= 1` with `sum mu_i p_i` in `span(N)`.
    Multipliers { mu: Vec<f64> },
    /// A nonzero functional vanishing on `span(N)` and nonnegative on `P`.
    Separating { functional: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BalanceOutcome {
    pub balanced: bool,
    pub certificate: BalanceCertificate,
}

fn columns(dim: usize, vs: &[Vec<f64>]) -> DMatrix<f64> {
    DMatrix::from_fn(dim, vs.len(), |i, j| vs[j][i])
}

/// Is 0 interior to `conv(P) + span(N)`?
pub fn balanced(problem: &BalanceProblem) -> BalanceOutcome {
    let d = problem.dim;
    let tol = 1e-9;
    let s = if problem.n.is_empty() {
        DMatrix::zeros(d, 0)
    } else {
        linalg::range(&columns(d, &problem.n), tol)
    };
    if s.ncols() == d {
        return BalanceOutcome {
            balanced: true,
            certificate: BalanceCertificate::Trivial,
        };
    }
    // orthonormal basis of the complement of span(N)
    let q = if s.ncols() == 0 {
        DMatrix::identity(d, d)
    } else {
        linalg::nullspace(&s.transpose(), tol).expect("d > 0")
    };
    let k = q.ncols();
    let v = q.transpose() * columns(d, &problem.p);
    let scale = v.amax().max(f64::MIN_POSITIVE);

    if v.ncols() == 0 || linalg::rank(&v, tol) < k {
        let f = if v.ncols() == 0 {
            q.column(0).into_owned()
        } else {
            let left = linalg::nullspace(&v.transpose(), tol).expect("k > 0");
            &q * left.column(0)
        };
        return separating(f);
    }

    let b = -(&v * DVector::from_element(v.ncols(), 1.0)) / scale;
    let a = &v / scale;
    match phase_one(&a, &b, 1e-10) {
        Feasibility::Feasible(nu) => BalanceOutcome {
            balanced: true,
            certificate: BalanceCertificate::Multipliers {
                mu: nu.iter().map(|x| 1.0 + x).collect(),
            },
        },
        Feasibility::Infeasible(y) => separating(-(&q * y)),
    }
}

fn separating(f: DVector<f64>) -> BalanceOutcome {
    let norm = f.norm();
    let f = if norm > 0.0 { f / norm } else { f };
    BalanceOutcome {
        balanced: false,
        certificate: BalanceCertificate::Separating {
            functional: f.iter().copied().collect(),
        },
    }
}

/// Check a certificate against the problem; returns the worst violation.
pub fn certificate_residual(problem: &BalanceProblem, outcome: &BalanceOutcome) -> f64 {
    let d = problem.dim;
    match &outcome.certificate {
        BalanceCertificate::Trivial => {
            let n = columns(d, &problem.n);
            (d - linalg::rank(&n, 1e-9)) as f64
        }
        BalanceCertificate::Multipliers { mu } => {
            let mut sum = DVector::zeros(d);
            for (m, p) in mu.iter().zip(&problem.p) {
                sum += DVector::from_column_slice(p) * *m;
            }
            let n = columns(d, &problem.n);
            let off = if n.ncols() == 0 {
                sum.amax()
            } else {
                let s = linalg::range(&n, 1e-9);
                (&sum - &s * (s.transpose() * &sum)).amax()
            };
            let low = mu.iter().map(|m| (1.0 - m).max(0.0)).fold(0.0, f64::max);
            off.max(low)
        }
        BalanceCertificate::Separating { functional } => {
            let f = DVector::from_column_slice(functional);
            let on_n = problem
                .n
                .iter()
                .map(|v| f.dot(&DVector::from_column_slice(v)).abs())
                .fold(0.0, f64::max);
            let neg_p = problem
                .p
                .iter()
                .map(|v| (-f.dot(&DVector::from_column_slice(v))).max(0.0))
                .fold(0.0, f64::max);
            let zero = if f.norm() < 0.5 { 1.0 } else { 0.0 };
            on_n.max(neg_p).max(zero)
        }
    }
}
