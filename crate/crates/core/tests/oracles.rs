//! Independent oracles for derived values.

use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use flexcheck::algebra::{linalg, quaternion_multiply, realify, Field, Scalar, ScalarMatrix};
use flexcheck::catalog;
use flexcheck::config::Config;
use flexcheck::lie::{build_classical, center_of, centralizer, conjugation_limit, Family, Generator, SubalgebraHandle};
use flexcheck::roots::{decompose, RootKind};
use flexcheck::surface::{fuchsian_genus2, CohomologyWorkspace, Module};
use flexcheck::toledo::{lagrangian_pair_check, root_module};

fn quat() -> impl Strategy<Value = Scalar> {
    prop::array::uniform4(-2.0f64..2.0).prop_map(|[a, b, c, d]| Scalar::quaternion(a, b, c, d))
}

fn complex_matrix<R: Rng>(n: usize, rng: &mut R) -> ScalarMatrix {
    let mut m = ScalarMatrix::zeros(Field::Complex, n, n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, Scalar::complex(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        }
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn quaternion_product_is_associative(p in quat(), q in quat(), r in quat()) {
        let left = quaternion_multiply(&quaternion_multiply(&p, &q).unwrap(), &r).unwrap();
        let right = quaternion_multiply(&p, &quaternion_multiply(&q, &r).unwrap()).unwrap();
        for (a, b) in left.components().iter().zip(right.components()) {
            prop_assert!((a - b).abs() <= 1e-15 * 64.0);
        }
    }

    #[test]
    fn quaternion_norm_is_multiplicative(p in quat(), q in quat()) {
        let pq = quaternion_multiply(&p, &q).unwrap();
        prop_assert!((pq.norm_sqr() - p.norm_sqr() * q.norm_sqr()).abs() <= 1e-12 * (1.0 + pq.norm_sqr()));
    }

    #[test]
    fn realify_is_multiplicative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = complex_matrix(3, &mut rng);
        let b = complex_matrix(3, &mut rng);
        let lhs = realify(&a.mul(&b).unwrap(), Field::Complex).unwrap().into_real();
        let rhs = realify(&a, Field::Complex).unwrap().into_real() * realify(&b, Field::Complex).unwrap().into_real();
        prop_assert!((lhs - rhs).amax() <= 1e-12);
    }
}

#[test]
fn rank_one_kernel_is_orthogonal_to_v() {
    let u = DVector::from_vec(vec![1.0, -2.0, 0.5, 3.0]);
    let v = DVector::from_vec(vec![0.3, 1.0, -1.0, 2.0]);
    let k = linalg::nullspace(&(&u * v.transpose()), 1e-9).unwrap();
    assert_eq!(k.ncols(), 3);
    assert!((v.transpose() * &k).amax() <= 1e-12);
}

/// Killing form as a multiple of the trace form of the realified matrices.
#[test]
fn killing_form_matches_trace_formula() {
    let cfg = Config::default();
    // B = c * tr_R(XY); sp(p,q) uses c = p+q+1, checked on sp(1) = su(2) where B(i, i) = -8
    let cases = [
        (Family::Sl { n: 3 }, 6.0),
        (Family::So { p: 3, q: 1 }, 2.0),
        (Family::So { p: 4, q: 1 }, 3.0),
        (Family::Su { p: 2, q: 1 }, 3.0),
        (Family::Su { p: 3, q: 1 }, 4.0),
        (Family::Sp { p: 2, q: 1 }, 4.0),
        (Family::SpReal { n: 2 }, 6.0),
    ];
    for (family, c) in cases {
        let model = build_classical(&family, &cfg).unwrap();
        let b = model.basis();
        let trace = DMatrix::from_fn(b.len(), b.len(), |i, j| (&b[i] * &b[j]).trace());
        let expected = trace * c;
        let err = (model.killing_matrix() - &expected).amax();
        assert!(err <= 1e-9 * expected.amax(), "{family}: {err:e}");
    }
}

#[test]
fn su21_dimension_from_parameter_count() {
    // three complex and three imaginary parameters, one trace constraint
    let count = 3 * 2 + 3 - 1;
    let model = build_classical(&Family::Su { p: 2, q: 1 }, &Config::default()).unwrap();
    assert_eq!(model.dim(), count);
}

#[test]
fn killing_invariance_on_random_triples() {
    let model = build_classical(&Family::Su { p: 2, q: 1 }, &Config::default()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..50 {
        let mut v = || DVector::from_fn(model.dim(), |_, _| rng.gen_range(-1.0..1.0));
        let (z, x, y) = (v(), v(), v());
        let zm = model.element(&z);
        let (xm, ym) = (model.element(&x), model.element(&y));
        let zx = &zm * &xm - &xm * &zm;
        let zy = &zm * &ym - &ym * &zm;
        // B = 3 tr on realified su(2,1)
        let lhs = 3.0 * ((&zx * &ym).trace() + (&xm * &zy).trace());
        assert!(lhs.abs() <= 1e-9, "{lhs:e}");
    }
}

#[test]
fn conjugation_limit_closed_form() {
    let g = DMatrix::from_row_slice(2, 2, &[2.0, 5.0, 0.0, 0.5]);
    let u = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
    let t: f64 = 20.0;
    let finite = DMatrix::from_row_slice(2, 2, &[2.0, 5.0 * (-2.0 * t).exp(), 0.0, 0.5]);
    let lim = conjugation_limit(&g, &u, &Config::default().tol).unwrap();
    assert!((&lim - &finite).amax() <= 1e-16);
    assert_eq!(lim, DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 0.5]));
}

#[test]
fn fuchsian_genus2_oracles() {
    let tol = Config::default().tol;
    let rep = fuchsian_genus2(&tol).unwrap();
    assert!(rep.relator_residual() <= 1e-8);
    for g in rep.images() {
        assert!(g.trace().abs() > 2.0);
        assert!((g.determinant() - 1.0).abs() <= 1e-10);
    }
    let model = build_classical(&Family::Sl { n: 2 }, &Config::default()).unwrap();
    let ops: Vec<DMatrix<f64>> = rep
        .images()
        .iter()
        .map(|g| model.adjoint_action(g).unwrap() - DMatrix::identity(3, 3))
        .collect();
    let stacked = DMatrix::from_fn(12, 3, |r, c| ops[r / 3][(r % 3, c)]);
    assert_eq!(linalg::nullspace(&stacked, 1e-9).unwrap().ncols(), 0);
}

#[test]
fn trivial_coefficients_orientation() {
    // fan chain evaluated by hand: a1* cup b1* = +1, a1* cup a2* = 0
    let rep = fuchsian_genus2(&Config::default().tol).unwrap();
    let ws = CohomologyWorkspace::new(rep.presentation(), Module::trivial(1, 4), &Config::default().tol).unwrap();
    let e = |k: usize| DVector::from_fn(4, |i, _| if i == k { 1.0 } else { 0.0 });
    let one = DMatrix::from_element(1, 1, 1.0);
    assert_eq!(ws.cup_pairing(&one, &e(0), &e(1)).unwrap(), 1.0);
    assert_eq!(ws.cup_pairing(&one, &e(0), &e(2)).unwrap(), 0.0);
}

#[test]
fn skew_forms_induce_symmetric_pairings() {
    let cfg = Config::default();
    let case = catalog::case_by_name("su21-cline").unwrap();
    let model = case.model(&cfg).unwrap();
    let rep = catalog::representation(&case, 2, &cfg).unwrap();
    let gens: Vec<Generator> = rep.images().iter().cloned().map(Generator::Group).collect();
    let c = center_of(&centralizer(&model, &gens).unwrap()).unwrap();
    let decomp = decompose(&model, &c, &cfg).unwrap();
    let d = &decomp.roots()[0];
    let module = root_module(&rep, &decomp, &d.values, &cfg).unwrap();
    let ws = CohomologyWorkspace::new(rep.presentation(), module, &cfg.tol).unwrap();
    let omega = d.omega.map(|z| z.im);
    assert!((&omega + omega.transpose()).amax() <= 1e-12);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let z1 = ws.z1();
    for _ in 0..20 {
        let mut w = || z1 * DVector::from_fn(z1.ncols(), |_, _| rng.gen_range(-1.0..1.0));
        let (u, v) = (w(), w());
        let a = ws.cup_pairing(&omega, &u, &v).unwrap();
        let b = ws.cup_pairing(&omega, &v, &u).unwrap();
        // evaluation on the fundamental class only sees cohomology classes
        assert!((a - b).abs() <= 1e-9 * (1.0 + a.abs()), "{a} vs {b}");
    }
    let (_, asym) = ws.gram(&omega);
    assert!(asym <= 1e-9, "{asym:e}");
    // Im Omega on the 4-dimensional root space is nondegenerate
    let sv = omega.singular_values();
    assert!(sv.iter().all(|s| *s > 1e-6 * sv.max()));
}

#[test]
fn polarization_of_cup_square() {
    let cfg = Config::default();
    let case = catalog::case_by_name("su21-cline").unwrap();
    let model = case.model(&cfg).unwrap();
    let rep = catalog::representation(&case, 2, &cfg).unwrap();
    let ws = CohomologyWorkspace::new(rep.presentation(), Module::adjoint(&model, &rep).unwrap(), &cfg.tol).unwrap();
    let forms = ws.bracket_forms(&model);
    assert_eq!(forms.len(), 1);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let z1 = ws.z1();
    for _ in 0..10 {
        let mut w = || z1 * DVector::from_fn(z1.ncols(), |_, _| rng.gen_range(-1.0..1.0));
        let (u, v) = (w(), w());
        let q = |x: &DVector<f64>| ws.cup_square(&model, x).unwrap();
        let lhs = q(&(&u + &v)) - q(&u) - q(&v);
        let mixed = 0.5 * (ws.cup_pairing(&forms[0], &u, &v).unwrap() + ws.cup_pairing(&forms[0], &v, &u).unwrap());
        assert!((lhs[0] - 2.0 * mixed).abs() <= 1e-8 * (1.0 + mixed.abs()), "{} vs {}", lhs[0], 2.0 * mixed);
    }
}

#[test]
fn complex_structure_commutes_with_torus_centralizer() {
    let cfg = Config::default();
    let model = build_classical(&Family::SlComplex { n: 2 }, &cfg).unwrap();
    // H and iH in realified sl(2,C)
    let h = DMatrix::from_fn(4, 4, |r, c| match (r, c) {
        (0, 0) | (1, 1) => 1.0,
        (2, 2) | (3, 3) => -1.0,
        _ => 0.0,
    });
    let ih = DMatrix::from_fn(4, 4, |r, c| match (r, c) {
        (1, 0) => 1.0,
        (0, 1) => -1.0,
        (3, 2) => -1.0,
        (2, 3) => 1.0,
        _ => 0.0,
    });
    let torus = SubalgebraHandle::span(&model, &[h, ih]).unwrap();
    let decomp = decompose(&model, &torus, &cfg).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for d in decomp.roots().iter().filter(|d| d.kind == RootKind::Mixed) {
        let j = d.complex_structure.as_ref().unwrap();
        for _ in 0..10 {
            let z = decomp.zero_space() * DVector::from_fn(decomp.zero_space().ncols(), |_, _| rng.gen_range(-1.0..1.0));
            let act = d.real_basis.transpose() * model.ad(&z) * &d.real_basis;
            assert!((&act * j - j * &act).amax() <= 1e-9);
        }
    }
}

#[test]
fn su21_root_module_has_no_coordinate_lagrangian_pair() {
    let cfg = Config::default();
    let case = catalog::case_by_name("su21-cline").unwrap();
    let model = case.model(&cfg).unwrap();
    let rep = catalog::representation(&case, 2, &cfg).unwrap();
    let gens: Vec<Generator> = rep.images().iter().cloned().map(Generator::Group).collect();
    let c = center_of(&centralizer(&model, &gens).unwrap()).unwrap();
    let decomp = decompose(&model, &c, &cfg).unwrap();
    let d = &decomp.roots()[0];
    let module = root_module(&rep, &decomp, &d.values, &cfg).unwrap();
    let omega = d.omega.map(|z| z.im);
    let n = module.dim();
    let coord = |idx: &[usize]| DMatrix::from_fn(n, idx.len(), |r, k| if r == idx[k] { 1.0 } else { 0.0 });
    let mut tried = 0;
    for a in 0..n {
        for b in a + 1..n {
            let rest: Vec<usize> = (0..n).filter(|k| *k != a && *k != b).collect();
            let check = lagrangian_pair_check(&module, &omega, &coord(&[a, b]), &coord(&rest), 1e-8).unwrap();
            assert!(!check.holds);
            tried += 1;
        }
    }
    assert_eq!(tried, 6);
}
