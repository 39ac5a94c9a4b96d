//! Fuchsian representations from the regular hyperbolic 4g-gon.

use std::f64::consts::PI;

use nalgebra::{DMatrix, Matrix2};
use rand::Rng;

use super::presentation::standard_presentation;
use super::representation::SurfaceRepresentation;
use crate::algebra::linalg::{self, C64};
use crate::config::Tolerances;
use crate::error::{Error, Result};

type C2 = Matrix2<C64>;

fn rot(theta: f64) -> C2 {
    C2::new(
        C64::from_polar(1.0, theta / 2.0),
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
        C64::from_polar(1.0, -theta / 2.0),
    )
}

/// Side pairings in SU(1,1) acting on the disk; side `k` of the regular
/// `4g`-gon faces the direction `2 pi k / 4g`.
pub fn fuchsian_su11(genus: u32) -> Result<Vec<C2>> {
    if genus < 2 {
        return Err(Error::GenusTooSmall(genus));
    }
    let n = 4 * genus as usize;
    let d = (1.0 / (PI / n as f64).tan()).acosh();
    let (c, s) = (C64::new(d.cosh(), 0.0), C64::new(d.sinh(), 0.0));
    let t = C2::new(c, s, s, c);
    let step = 2.0 * PI / n as f64;
    let pair = |a: usize, b: usize| rot(b as f64 * step) * t * rot(PI) * rot(-(a as f64) * step);
    let mut out = Vec::with_capacity(2 * genus as usize);
    for k in 0..genus as usize {
        let s = 4 * k;
        out.push(pair(s + 2, s));
        out.push(pair(s + 3, s + 1).try_inverse().expect("SU(1,1) element"));
    }
    Ok(out)
}

/// Cayley transform taking SU(1,1) to SL(2,R).
fn cayley() -> C2 {
    let r = 1.0 / 2f64.sqrt();
    C2::new(C64::new(r, 0.0), C64::new(0.0, r), C64::new(0.0, r), C64::new(r, 0.0))
}

/// Fuchsian representation into SL(2,R).
pub fn fuchsian_sl2(genus: u32, tol: &Tolerances) -> Result<SurfaceRepresentation> {
    let c = cayley();
    let c_inv = c.try_inverse().expect("Cayley matrix is invertible");
    let images = fuchsian_su11(genus)?
        .into_iter()
        .map(|m| {
            let r = c_inv * m * c;
            DMatrix::from_fn(2, 2, |i, j| r[(i, j)].re)
        })
        .collect();
    SurfaceRepresentation::new(standard_presentation(genus)?, images, true, tol)
}

pub fn fuchsian_genus2(tol: &Tolerances) -> Result<SurfaceRepresentation> {
    fuchsian_sl2(2, tol)
}

/// SU(1,1) images realified to 4x4 real matrices.
pub fn fuchsian_su11_realified(genus: u32, tol: &Tolerances) -> Result<SurfaceRepresentation> {
    let images = fuchsian_su11(genus)?.into_iter().map(|m| realify_c2(&m)).collect();
    SurfaceRepresentation::new(standard_presentation(genus)?, images, true, tol)
}

fn realify_c2(m: &C2) -> DMatrix<f64> {
    let mut r = DMatrix::zeros(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            let z = m[(i, j)];
            r[(2 * i, 2 * j)] = z.re;
            r[(2 * i, 2 * j + 1)] = -z.im;
            r[(2 * i + 1, 2 * j)] = z.im;
            r[(2 * i + 1, 2 * j + 1)] = z.re;
        }
    }
    r
}

/// The adjoint image of an SL(2,R) element in SO(2,1), in the basis
/// `(H, S, R) / sqrt 2` with `H = diag(1,-1)`, `S` symmetric off-diagonal and
/// `R` the rotation generator. The invariant form is `diag(1, 1, -1)`.
pub fn so21_image(g: &DMatrix<f64>) -> DMatrix<f64> {
    let basis = sl2_basis();
    let g_inv = g.clone().try_inverse().expect("SL(2,R) element");
    let dual = [1.0, 1.0, -1.0];
    DMatrix::from_fn(3, 3, |k, j| {
        let img = g * &basis[j] * &g_inv;
        // coordinates from tr(X B_k) = dual_k
        (&img * &basis[k]).trace() * dual[k]
    })
}

fn sl2_basis() -> [DMatrix<f64>; 3] {
    let r = 1.0 / 2f64.sqrt();
    [
        DMatrix::from_row_slice(2, 2, &[r, 0.0, 0.0, -r]),
        DMatrix::from_row_slice(2, 2, &[0.0, r, r, 0.0]),
        DMatrix::from_row_slice(2, 2, &[0.0, r, -r, 0.0]),
    ]
}

/// Fuchsian representation composed into SO(2,1).
pub fn fuchsian_so21(genus: u32, tol: &Tolerances) -> Result<SurfaceRepresentation> {
    let sl2 = fuchsian_sl2(genus, tol)?;
    let images = sl2.images().iter().map(so21_image).collect();
    SurfaceRepresentation::new(sl2.presentation().clone(), images, false, tol)
}

fn sl2_from_params(p: &[f64]) -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[p[0], p[1], p[2], -p[0]])
}

/// Multiply each generator by `exp(X_i)` for small random `X_i` in sl(2,R),
/// then restore the relator by Gauss-Newton on all perturbation parameters.
pub fn perturbed_fuchsian<R: Rng>(
    genus: u32,
    epsilon: f64,
    rng: &mut R,
    tol: &Tolerances,
) -> Result<SurfaceRepresentation> {
    let base = fuchsian_sl2(genus, tol)?;
    let pres = base.presentation().clone();
    let ngen = pres.generator_count();
    let target = base.relator_product();
    let mut x: Vec<f64> = (0..3 * ngen).map(|_| epsilon * rng.gen_range(-1.0..1.0)).collect();
    let images_of = |x: &[f64]| -> Vec<DMatrix<f64>> {
        base.images()
            .iter()
            .enumerate()
            .map(|(i, g)| g * sl2_from_params(&x[3 * i..3 * i + 3]).exp())
            .collect()
    };
    let residual_of = |x: &[f64]| -> DMatrix<f64> {
        let imgs = images_of(x);
        let p = pres
            .relator()
            .iter()
            .fold(DMatrix::identity(2, 2), |acc, l| {
                let m = &imgs[l.generator];
                if l.inverse {
                    acc * m.clone().try_inverse().expect("SL(2,R) element")
                } else {
                    acc * m
                }
            });
        let r = p - &target;
        DMatrix::from_column_slice(4, 1, r.as_slice())
    };
    let h = 1e-7;
    for _ in 0..50 {
        let r = residual_of(&x);
        if r.amax() < 1e-13 {
            break;
        }
        let mut jac = DMatrix::zeros(4, x.len());
        for k in 0..x.len() {
            let mut xp = x.clone();
            xp[k] += h;
            let mut xm = x.clone();
            xm[k] -= h;
            let col = (residual_of(&xp) - residual_of(&xm)) / (2.0 * h);
            jac.set_column(k, &col.column(0));
        }
        // the relator has three independent components, so J has rank 3
        let dx = linalg::solve_least_squares(&jac, &r, 1e-6)?;
        if !dx.iter().all(|v| v.is_finite()) {
            return Err(Error::Singular);
        }
        for k in 0..x.len() {
            x[k] -= dx[(k, 0)];
        }
    }
    SurfaceRepresentation::new(pres, images_of(&x), true, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn genus2_relator_and_hyperbolicity() {
        let tol = Tolerances::default();
        let rep = fuchsian_genus2(&tol).unwrap();
        assert!(rep.relator_residual() <= 1e-8);
        for g in rep.images() {
            assert!(g.trace().abs() > 2.0);
            assert!((g.determinant() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn genus3_relator() {
        let tol = Tolerances::default();
        assert!(fuchsian_sl2(3, &tol).unwrap().relator_residual() <= 1e-8);
    }

    #[test]
    fn so21_preserves_form() {
        let tol = Tolerances::default();
        let rep = fuchsian_so21(2, &tol).unwrap();
        let e = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&[1.0, 1.0, -1.0]));
        for g in rep.images() {
            assert!((g.transpose() * &e * g - &e).amax() < 1e-9);
        }
        assert!(rep.relator_residual() <= 1e-8);
    }

    #[test]
    fn su11_preserves_hermitian_form() {
        let tol = Tolerances::default();
        let rep = fuchsian_su11_realified(2, &tol).unwrap();
        let e = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&[1.0, 1.0, -1.0, -1.0]));
        for g in rep.images() {
            assert!((g.transpose() * &e * g - &e).amax() < 1e-9);
        }
    }

    #[test]
    fn perturbation_satisfies_relator() {
        let tol = Tolerances::default();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let base = fuchsian_genus2(&tol).unwrap();
        let rep = perturbed_fuchsian(2, 0.05, &mut rng, &tol).unwrap();
        assert!(rep.relator_residual() <= 1e-10);
        let moved: f64 = rep
            .images()
            .iter()
            .zip(base.images())
            .map(|(a, b)| (a - b).amax())
            .fold(0.0, f64::max);
        assert!(moved > 1e-3);
    }
}
