//! Limits of e^{-tu} g e^{tu} for a diagonal direction u.

use flexcheck::config::Config;
use flexcheck::lie::conjugation_limit;
use nalgebra::DMatrix;

fn main() {
    let tol = Config::default().tol;
    let u = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 0.0, -1.0]));
    let g = DMatrix::from_row_slice(3, 3, &[2.0, 1.0, 3.0, 0.0, 1.0, 4.0, 0.0, 0.0, 0.5]);
    match conjugation_limit(&g, &u, &tol) {
        Ok(l) => println!("upper triangular g -> {l}"),
        Err(e) => println!("upper triangular g: {e}"),
    }
    match conjugation_limit(&g.transpose(), &u, &tol) {
        Ok(l) => println!("lower triangular g -> {l}"),
        Err(e) => println!("lower triangular g: {e}"),
    }
}
