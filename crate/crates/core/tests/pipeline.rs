//! End to end runs of the verdict pipeline over the catalog.

use flexcheck::catalog::{self, Stabilized};
use flexcheck::config::Config;
use flexcheck::flex::{verdict, Verdict};
use flexcheck::roots::RootKind;

fn run(name: &str, genus: u32) -> flexcheck::flex::FlexibilityReport {
    let cfg = Config::default();
    let case = catalog::case_by_name(name).unwrap();
    let model = case.model(&cfg).unwrap();
    let rep = catalog::representation(&case, genus, &cfg).unwrap();
    verdict(&model, &rep, &cfg).unwrap()
}

#[test]
fn complex_line_toledo_grows_linearly() {
    let t: Vec<f64> = ["su21-cline", "su31-cline", "su41-cline"]
        .iter()
        .map(|n| {
            let r = run(n, 2);
            assert_eq!(r.verdict, Verdict::Rigid, "{n}");
            let imag: Vec<_> = r.roots.iter().filter(|s| s.kind == RootKind::Imaginary).collect();
            assert_eq!(imag.len(), 1, "{n}");
            imag[0].toledo.unwrap()
        })
        .collect();
    for (k, v) in t.iter().enumerate() {
        assert!((v - 2.0 * (k + 1) as f64).abs() < 1e-9, "{t:?}");
    }
}

#[test]
fn every_classical_case_matches_the_table() {
    let cfg = Config::default();
    for case in catalog::cases() {
        let exp = catalog::expected_table(&case);
        if !exp.computed {
            assert!(case.model(&cfg).is_err(), "{}", case.name);
            continue;
        }
        let r = run(&case.name, 2);
        assert_eq!(r.centralizer_dim, exp.centralizer_dim, "{}", case.name);
        assert_eq!(r.center_dim, exp.center_dim, "{}", case.name);
        assert_eq!(r.verdict, exp.verdict, "{}", case.name);
        assert!(r.reductive, "{}", case.name);
        assert!(r.smoothness.identity_holds, "{}", case.name);
        for s in &r.roots {
            assert!(s.milnor_wood_slack >= -1e-9, "{} {s:?}", case.name);
        }
    }
}

#[test]
fn real_plane_cases_are_flexible_at_higher_genus() {
    for genus in [3, 4] {
        for name in ["so31-rplane", "su21-rplane", "sp21-rplane", "so41-rplane", "su31-rplane"] {
            let r = run(name, genus);
            assert_eq!(r.genus, genus);
            assert_eq!(r.verdict, Verdict::Flexible, "{name} genus {genus}");
            assert!(r.smoothness.identity_holds, "{name} genus {genus}");
        }
    }
    let r = run("su21-cline", 3);
    assert_eq!(r.verdict, Verdict::Rigid);
    // T = -chi at genus 3
    let t = r.roots.iter().find_map(|s| s.toledo).unwrap();
    assert!((t - 4.0).abs() < 1e-9);
}

#[test]
fn quaternionic_complex_line_has_a_neutral_root() {
    let r = run("sp21-cline", 2);
    assert_eq!(r.verdict, Verdict::Flexible);
    assert!(r.roots.iter().any(|s| s.toledo == Some(0.0) && s.signature == Some(0)));
}

#[test]
fn stabilized_objects_round_trip_through_names() {
    for case in catalog::cases() {
        let back = catalog::case_by_name(&case.name).unwrap();
        assert_eq!(back.object, case.object);
        let suffix = match case.object {
            Stabilized::RealPlane => "-rplane",
            Stabilized::ComplexLine => "-cline",
        };
        assert!(case.name.ends_with(suffix));
    }
}
