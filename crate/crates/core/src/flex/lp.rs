//! Dense phase-1 simplex with Bland's rule.

use nalgebra::{DMatrix, DVector};

/// Result of `A x = b, x >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub enum Feasibility {
    Feasible(DVector<f64>),
    /// `y` with `y^T A <= 0` and `y^T b > 0`.
    Infeasible(DVector<f64>),
}

/// Decide `A x = b, x >= 0` by minimizing the sum of artificial variables.
pub fn phase_one(a: &DMatrix<f64>, b: &DVector<f64>, eps: f64) -> Feasibility {
    let (m, n) = a.shape();
    let flip: Vec<f64> = b.iter().map(|&v| if v < 0.0 { -1.0 } else { 1.0 }).collect();
    let width = n + m + 1;
    let mut t = DMatrix::zeros(m, width);
    for i in 0..m {
        for j in 0..n {
            t[(i, j)] = flip[i] * a[(i, j)];
        }
        t[(i, n + i)] = 1.0;
        t[(i, width - 1)] = flip[i] * b[i];
    }
    let cost: Vec<f64> = (0..n + m).map(|j| if j < n { 0.0 } else { 1.0 }).collect();
    let mut basis: Vec<usize> = (n..n + m).collect();

    let reduced = |t: &DMatrix<f64>, basis: &[usize]| -> Vec<f64> {
        (0..n + m)
            .map(|j| cost[j] - (0..m).map(|i| cost[basis[i]] * t[(i, j)]).sum::<f64>())
            .collect()
    };

    // Bland's rule terminates; the cap is a guard against float trouble.
    for _ in 0..10_000 {
        let r = reduced(&t, &basis);
        let Some(enter) = (0..n + m).find(|&j| r[j] < -eps) else {
            break;
        };
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            let col = t[(i, enter)];
            if col > eps {
                let ratio = t[(i, width - 1)] / col;
                let better = match leave {
                    None => true,
                    Some((k, best)) => ratio < best - eps || (ratio <= best + eps && basis[i] < basis[k]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((row, _)) = leave else {
            break;
        };
        let p = t[(row, enter)];
        for j in 0..width {
            t[(row, j)] /= p;
        }
        for i in 0..m {
            if i != row {
                let f = t[(i, enter)];
                if f != 0.0 {
                    for j in 0..width {
                        t[(i, j)] -= f * t[(row, j)];
                    }
                }
            }
        }
        basis[row] = enter;
    }

    let objective: f64 = (0..m).map(|i| cost[basis[i]] * t[(i, width - 1)]).sum();
    let scale = b.amax().max(1.0);
    if objective <= eps * scale {
        let mut x = DVector::zeros(n);
        for i in 0..m {
            if basis[i] < n {
                x[basis[i]] = t[(i, width - 1)].max(0.0);
            }
        }
        Feasibility::Feasible(x)
    } else {
        let r = reduced(&t, &basis);
        let y = DVector::from_fn(m, |i, _| flip[i] * (1.0 - r[n + i]));
        Feasibility::Infeasible(y)
    }
}
