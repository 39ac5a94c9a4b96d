//! The balanced condition on small point configurations, with certificates.

use flexcheck::flex::{balanced, certificate_residual, BalanceProblem};

fn main() {
    let problems = [
        ("cross", BalanceProblem { dim: 2, p: vec![vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 1.0], vec![0.0, -1.0]], n: vec![] }),
        ("half plane", BalanceProblem { dim: 2, p: vec![vec![1.0, 0.0], vec![1.0, 1.0], vec![1.0, -1.0]], n: vec![] }),
        ("line plus ray", BalanceProblem { dim: 2, p: vec![vec![0.0, 1.0]], n: vec![vec![1.0, 0.0]] }),
        ("spanning N", BalanceProblem { dim: 2, p: vec![vec![1.0, 1.0]], n: vec![vec![1.0, 0.0], vec![0.0, 1.0]] }),
    ];
    for (name, problem) in problems {
        let out = balanced(&problem);
        println!(
            "{name:<14} balanced {:<5} certificate {:?} residual {:.1e}",
            out.balanced,
            out.certificate,
            certificate_residual(&problem, &out)
        );
    }
}
