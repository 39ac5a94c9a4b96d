//! Rank one embeddings of SO(2,1) and SU(1,1) and their expected centralizers.

use std::fmt;

use nalgebra::DMatrix;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::linalg;
use crate::algebra::{realify, Field, Scalar, ScalarMatrix};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::flex::Verdict;
use crate::lie::{build_classical, Family, LieAlgebraModel};
use crate::surface::{fuchsian_sl2, fuchsian_su11, so21_image, standard_presentation, SurfaceRepresentation};

/// What the embedded rank one subgroup stabilizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stabilized {
    /// SO(2,1) on the last three coordinates.
    RealPlane,
    /// SU(1,1) on the last two coordinates.
    ComplexLine,
}

impl fmt::Display for Stabilized {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stabilized::RealPlane => "real plane",
            Stabilized::ComplexLine => "complex line",
        })
    }
}

/// Ambient field, octonions included so they can be refused explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AmbientField {
    Real,
    Complex,
    Quaternion,
    Octonion,
}

impl AmbientField {
    pub fn field(self) -> Result<Field> {
        match self {
            AmbientField::Real => Ok(Field::Real),
            AmbientField::Complex => Ok(Field::Complex),
            AmbientField::Quaternion => Ok(Field::Quaternion),
            AmbientField::Octonion => Err(Error::Excluded("octonionic linear algebra".into())),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "R" | "r" | "real" => Ok(AmbientField::Real),
            "C" | "c" | "complex" => Ok(AmbientField::Complex),
            "H" | "h" | "quaternion" => Ok(AmbientField::Quaternion),
            "O" | "o" | "octonion" => Ok(AmbientField::Octonion),
            _ => Err(Error::Parse(format!("unknown field {s}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogCase {
    pub name: String,
    pub field: AmbientField,
    /// The ambient group is the isometry group of a form of signature (m, 1).
    pub m: usize,
    pub object: Stabilized,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpectedEntry {
    pub centralizer: String,
    pub centralizer_dim: usize,
    pub center_dim: usize,
    pub verdict: Verdict,
    /// False for rows that are documentation only.
    pub computed: bool,
}

impl CatalogCase {
    pub fn family(&self) -> Family {
        let (p, q) = (self.m, 1);
        match self.field {
            AmbientField::Real => Family::So { p, q },
            AmbientField::Complex => Family::Su { p, q },
            AmbientField::Quaternion => Family::Sp { p, q },
            AmbientField::Octonion => Family::Exceptional {
                name: "f4(-20)".into(),
            },
        }
    }

    pub fn model(&self, cfg: &Config) -> Result<LieAlgebraModel> {
        build_classical(&self.family(), cfg)
    }
}

const NAMES: &[(&str, AmbientField, usize, Stabilized)] = &[
    ("so21-rplane", AmbientField::Real, 2, Stabilized::RealPlane),
    ("so31-rplane", AmbientField::Real, 3, Stabilized::RealPlane),
    ("so41-rplane", AmbientField::Real, 4, Stabilized::RealPlane),
    ("su21-rplane", AmbientField::Complex, 2, Stabilized::RealPlane),
    ("su31-rplane", AmbientField::Complex, 3, Stabilized::RealPlane),
    ("su41-rplane", AmbientField::Complex, 4, Stabilized::RealPlane),
    ("su11-cline", AmbientField::Complex, 1, Stabilized::ComplexLine),
    ("su21-cline", AmbientField::Complex, 2, Stabilized::ComplexLine),
    ("su31-cline", AmbientField::Complex, 3, Stabilized::ComplexLine),
    ("su41-cline", AmbientField::Complex, 4, Stabilized::ComplexLine),
    ("sp21-rplane", AmbientField::Quaternion, 2, Stabilized::RealPlane),
    ("sp31-rplane", AmbientField::Quaternion, 3, Stabilized::RealPlane),
    ("sp11-cline", AmbientField::Quaternion, 1, Stabilized::ComplexLine),
    ("sp21-cline", AmbientField::Quaternion, 2, Stabilized::ComplexLine),
    ("sp31-cline", AmbientField::Quaternion, 3, Stabilized::ComplexLine),
    ("f4-rplane", AmbientField::Octonion, 2, Stabilized::RealPlane),
    ("f4-cline", AmbientField::Octonion, 2, Stabilized::ComplexLine),
];

pub fn cases() -> Vec<CatalogCase> {
    NAMES
        .iter()
        .map(|&(name, field, m, object)| CatalogCase {
            name: name.into(),
            field,
            m,
            object,
        })
        .collect()
}

pub fn case_by_name(name: &str) -> Result<CatalogCase> {
    cases()
        .into_iter()
        .find(|c| c.name == name)
        .ok_or_else(|| Error::Parse(format!("unknown catalog case {name}")))
}

/// Centralizer of the embedded subgroup, its center and the expected verdict.
pub fn expected_table(case: &CatalogCase) -> ExpectedEntry {
    let m = case.m;
    let entry = |centralizer: String, centralizer_dim, center_dim, verdict| ExpectedEntry {
        centralizer,
        centralizer_dim,
        center_dim,
        verdict,
        computed: case.field != AmbientField::Octonion,
    };
    match (case.field, case.object) {
        (AmbientField::Real, Stabilized::RealPlane) => entry(
            format!("O({})", m - 2),
            (m - 2) * (m.saturating_sub(3)) / 2,
            usize::from(m == 4),
            Verdict::Flexible,
        ),
        (AmbientField::Complex, Stabilized::RealPlane) => entry(
            format!("S(U(1)xU({}))", m - 2),
            (m - 2) * (m - 2),
            usize::from(m >= 3),
            Verdict::Flexible,
        ),
        (AmbientField::Quaternion, Stabilized::RealPlane) => entry(
            format!("Sp(1)xSp({})", m - 2),
            3 + (m - 2) * (2 * m - 3),
            0,
            Verdict::Flexible,
        ),
        (AmbientField::Complex, Stabilized::ComplexLine) => entry(
            format!("U({})", m - 1),
            (m - 1) * (m - 1),
            usize::from(m >= 2),
            if m >= 2 { Verdict::Rigid } else { Verdict::Flexible },
        ),
        (AmbientField::Quaternion, Stabilized::ComplexLine) => entry(
            format!("U(1)xSp({})", m - 1),
            1 + (m - 1) * (2 * m - 1),
            1,
            Verdict::Flexible,
        ),
        (AmbientField::Real, Stabilized::ComplexLine) => entry("n/a".into(), 0, 0, Verdict::Inconclusive),
        (AmbientField::Octonion, Stabilized::RealPlane) => entry("G2".into(), 14, 0, Verdict::Flexible),
        (AmbientField::Octonion, Stabilized::ComplexLine) => entry("Spin(6)".into(), 15, 0, Verdict::Flexible),
    }
}

/// Block embedding of the base group into the ambient group.
#[derive(Debug, Clone)]
pub struct Embedding {
    field: Field,
    size: usize,
    object: Stabilized,
}

/// The embedding for a computable case.
pub fn embed_base(case: &CatalogCase) -> Result<Embedding> {
    let field = case.field.field()?;
    if case.object == Stabilized::RealPlane && case.m < 2 {
        return Err(Error::InvalidParameters("a real plane needs m >= 2".into()));
    }
    if case.object == Stabilized::ComplexLine && case.field == AmbientField::Real {
        return Err(Error::InvalidParameters("no complex line in a real hyperbolic space".into()));
    }
    Ok(Embedding {
        field,
        size: case.m + 1,
        object: case.object,
    })
}

impl Embedding {
    /// Size of the base matrices: 3 for SO(2,1), 2 for SU(1,1).
    pub fn base_size(&self) -> usize {
        match self.object {
            Stabilized::RealPlane => 3,
            Stabilized::ComplexLine => 2,
        }
    }

    pub fn base_field(&self) -> Field {
        match self.object {
            Stabilized::RealPlane => Field::Real,
            Stabilized::ComplexLine => Field::Complex,
        }
    }

    /// Place a base matrix in the lower right block, identity elsewhere.
    pub fn apply(&self, base: &ScalarMatrix) -> Result<DMatrix<f64>> {
        let k = self.base_size();
        if base.shape() != (k, k) {
            return Err(Error::DimensionMismatch(format!("base matrix must be {k}x{k}")));
        }
        let mut m = ScalarMatrix::identity(self.field, self.size);
        let off = self.size - k;
        for i in 0..k {
            for j in 0..k {
                m.set(off + i, off + j, base.get(i, j).promote(self.field)?);
            }
        }
        Ok(realify(&m, self.field)?.into_real())
    }

    /// Max of `|f(ab) - f(a) f(b)|` over random pairs of products of the given
    /// base elements.
    pub fn homomorphism_residual<R: Rng>(&self, base: &[ScalarMatrix], trials: usize, rng: &mut R) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for _ in 0..trials {
            let a = random_word(base, rng)?;
            let b = random_word(base, rng)?;
            let ab = a.mul(&b)?;
            let lhs = self.apply(&ab)?;
            let rhs = self.apply(&a)? * self.apply(&b)?;
            worst = worst.max((lhs - rhs).amax() / self.apply(&ab)?.amax().max(1.0));
        }
        Ok(worst)
    }
}

fn random_word<R: Rng>(base: &[ScalarMatrix], rng: &mut R) -> Result<ScalarMatrix> {
    let mut w = base[rng.gen_range(0..base.len())].clone();
    for _ in 0..rng.gen_range(0..3) {
        w = w.mul(&base[rng.gen_range(0..base.len())])?;
    }
    Ok(w)
}

/// Fuchsian base images as field matrices for the case.
pub fn base_images(case: &CatalogCase, genus: u32, cfg: &Config) -> Result<Vec<ScalarMatrix>> {
    match case.object {
        Stabilized::RealPlane => {
            let sl2 = fuchsian_sl2(genus, &cfg.tol)?;
            sl2.images()
                .iter()
                .map(|g| {
                    let so = so21_image(g);
                    let rows: Vec<Vec<Scalar>> = (0..3)
                        .map(|i| (0..3).map(|j| Scalar::real(so[(i, j)])).collect())
                        .collect();
                    ScalarMatrix::from_rows(Field::Real, &rows)
                })
                .collect()
        }
        Stabilized::ComplexLine => fuchsian_su11(genus)?
            .iter()
            .map(|g| {
                let rows: Vec<Vec<Scalar>> = (0..2)
                    .map(|i| (0..2).map(|j| Scalar::complex(g[(i, j)].re, g[(i, j)].im)).collect())
                    .collect();
                ScalarMatrix::from_rows(Field::Complex, &rows)
            })
            .collect(),
    }
}

/// Fuchsian representation composed with the case's embedding.
pub fn representation(case: &CatalogCase, genus: u32, cfg: &Config) -> Result<SurfaceRepresentation> {
    let emb = embed_base(case)?;
    let images = base_images(case, genus, cfg)?
        .iter()
        .map(|b| emb.apply(b))
        .collect::<Result<Vec<_>>>()?;
    SurfaceRepresentation::new(standard_presentation(genus)?, images, true, &cfg.tol)
}

/// The three blocks of `o(m, q, F) = o(m - p) + o(p, q) + Hom(F^{m-p}, F^{p+q})`.
#[derive(Debug, Clone)]
pub struct SplitSo {
    pub model: LieAlgebraModel,
    pub field: Field,
    pub m: usize,
    pub q: usize,
    pub p: usize,
    /// Coordinate columns of each block.
    pub first: DMatrix<f64>,
    pub second: DMatrix<f64>,
    pub hom: DMatrix<f64>,
}

/// Split the isometry algebra of `diag(I_m, -I_q)` over `field`.
pub fn splitso(m: usize, q: usize, field: AmbientField, p: usize, cfg: &Config) -> Result<SplitSo> {
    let f = field.field()?;
    if p == 0 || p >= m {
        return Err(Error::InvalidParameters("need 0 < p < m".into()));
    }
    let family = match f {
        Field::Real => Family::So { p: m, q },
        Field::Complex => Family::U { p: m, q },
        Field::Quaternion => Family::Sp { p: m, q },
    };
    let model = build_classical(&family, cfg)?;
    let d = f.degree();
    let k = (m - p) * d;
    let in_first = |i: usize| i < k;
    let block = |keep: &dyn Fn(usize, usize) -> bool| -> Result<DMatrix<f64>> {
        let n = model.ambient();
        let mut rows = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if !keep(i, j) {
                    rows.push(model.basis().iter().map(|b| b[(i, j)]).collect::<Vec<f64>>());
                }
            }
        }
        let mat = DMatrix::from_fn(rows.len(), model.dim(), |r, c| rows[r][c]);
        linalg::nullspace(&mat, cfg.tol.rank)
    };
    let first = block(&|i, j| in_first(i) && in_first(j))?;
    let second = block(&|i, j| !in_first(i) && !in_first(j))?;
    let hom = block(&|i, j| in_first(i) != in_first(j))?;
    Ok(SplitSo {
        model,
        field: f,
        m,
        q,
        p,
        first,
        second,
        hom,
    })
}

impl SplitSo {
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.first.ncols(), self.second.ncols(), self.hom.ncols())
    }

    fn e2(&self) -> ScalarMatrix {
        crate::lie::indefinite_form(self.field, self.p, self.q)
    }

    /// The Hom-block element `[[0, -B^* e], [B, 0]]` for `B: F^{m-p} -> F^{p+q}`.
    pub fn hom_element(&self, b: &ScalarMatrix) -> Result<DMatrix<f64>> {
        let (r, c) = (self.p + self.q, self.m - self.p);
        if b.shape() != (r, c) {
            return Err(Error::DimensionMismatch(format!("B must be {r}x{c}")));
        }
        let upper = b.adjoint().mul(&self.e2())?;
        let n = self.m + self.q;
        let mut x = ScalarMatrix::zeros(self.field, n, n);
        for i in 0..r {
            for j in 0..c {
                x.set(c + i, j, b.get(i, j));
                x.set(j, c + i, -upper.get(j, i));
            }
        }
        Ok(realify(&x, self.field)?.into_real())
    }

    /// The diagonal blocks `(C^* e B - B^* e C, C B^* e - B C^* e)`.
    pub fn bracket_closed_form(&self, b: &ScalarMatrix, c: &ScalarMatrix) -> Result<DMatrix<f64>> {
        let e = self.e2();
        let tl = c.adjoint().mul(&e)?.mul(b)?;
        let tl2 = b.adjoint().mul(&e)?.mul(c)?;
        let br = c.mul(&b.adjoint())?.mul(&e)?;
        let br2 = b.mul(&c.adjoint())?.mul(&e)?;
        let k = self.m - self.p;
        let n = self.m + self.q;
        let mut x = ScalarMatrix::zeros(self.field, n, n);
        for i in 0..k {
            for j in 0..k {
                x.set(i, j, tl.get(i, j) - tl2.get(i, j));
            }
        }
        for i in 0..n - k {
            for j in 0..n - k {
                x.set(k + i, k + j, br.get(i, j) - br2.get(i, j));
            }
        }
        Ok(realify(&x, self.field)?.into_real())
    }

    /// Random F-valued matrix of the Hom-block shape.
    pub fn random_hom<R: Rng>(&self, rng: &mut R) -> ScalarMatrix {
        let (r, c) = (self.p + self.q, self.m - self.p);
        let d = self.field.degree();
        let mut b = ScalarMatrix::zeros(self.field, r, c);
        for i in 0..r {
            for j in 0..c {
                let parts: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
                b.set(i, j, Scalar::from_components(&parts).expect("degree 1, 2 or 4"));
            }
        }
        b
    }

    /// `|[X_B, X_C] - closed form|` for one pair.
    pub fn bracket_residual(&self, b: &ScalarMatrix, c: &ScalarMatrix) -> Result<f64> {
        let xb = self.hom_element(b)?;
        let xc = self.hom_element(c)?;
        let br = &xb * &xc - &xc * &xb;
        Ok((br - self.bracket_closed_form(b, c)?).amax())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{center_of, centralizer, Generator};
    use rand::SeedableRng;

    #[test]
    fn table_examples() {
        let so51 = CatalogCase {
            name: "so51".into(),
            field: AmbientField::Real,
            m: 5,
            object: Stabilized::RealPlane,
        };
        let e = expected_table(&so51);
        assert_eq!((e.centralizer_dim, e.center_dim, e.verdict), (3, 0, Verdict::Flexible));
        let e = expected_table(&case_by_name("su21-rplane").unwrap());
        assert_eq!((e.center_dim, e.verdict), (0, Verdict::Flexible));
        for name in ["su21-cline", "su31-cline", "su41-cline"] {
            let e = expected_table(&case_by_name(name).unwrap());
            assert_eq!((e.center_dim, e.verdict), (1, Verdict::Rigid));
        }
        assert!(!expected_table(&case_by_name("f4-cline").unwrap()).computed);
    }

    #[test]
    fn octonions_excluded() {
        assert!(matches!(embed_base(&case_by_name("f4-rplane").unwrap()), Err(Error::Excluded(_))));
        assert!(matches!(
            splitso(2, 1, AmbientField::Octonion, 1, &Config::default()),
            Err(Error::Excluded(_))
        ));
    }

    #[test]
    fn splitso_dimensions() {
        let cfg = Config::default();
        assert_eq!(splitso(4, 1, AmbientField::Real, 2, &cfg).unwrap().dims(), (1, 3, 6));
        assert_eq!(splitso(2, 1, AmbientField::Complex, 1, &cfg).unwrap().dims(), (1, 4, 4));
        assert_eq!(splitso(2, 1, AmbientField::Quaternion, 1, &cfg).unwrap().dims(), (3, 10, 8));
    }

    #[test]
    fn hom_bracket_closed_form() {
        let cfg = Config::default();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for (m, field, p) in [
            (4, AmbientField::Real, 2),
            (2, AmbientField::Complex, 1),
            (2, AmbientField::Quaternion, 1),
        ] {
            let s = splitso(m, 1, field, p, &cfg).unwrap();
            for _ in 0..10 {
                let b = s.random_hom(&mut rng);
                let c = s.random_hom(&mut rng);
                let xb = s.hom_element(&b).unwrap();
                assert!(s.model.coords(&xb).is_ok());
                assert!(s.bracket_residual(&b, &c).unwrap() <= 1e-10);
            }
        }
    }

    #[test]
    fn embeddings_are_homomorphisms_and_land_in_group() {
        let cfg = Config::default();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for case in cases().into_iter().filter(|c| c.field != AmbientField::Octonion) {
            let emb = embed_base(&case).unwrap();
            let base = base_images(&case, 2, &cfg).unwrap();
            assert!(emb.homomorphism_residual(&base, 10, &mut rng).unwrap() <= 1e-8, "{}", case.name);
            let rep = representation(&case, 2, &cfg).unwrap();
            assert!(rep.relator_residual() <= 1e-8);
            let model = case.model(&cfg).unwrap();
            for g in rep.images() {
                assert!(model.contains_group_element(g), "{}", case.name);
            }
        }
    }

    #[test]
    fn su21_cline_centralizer() {
        let cfg = Config::default();
        let case = case_by_name("su21-cline").unwrap();
        let model = case.model(&cfg).unwrap();
        let rep = representation(&case, 2, &cfg).unwrap();
        let gens: Vec<Generator> = rep.images().iter().cloned().map(Generator::Group).collect();
        let z = centralizer(&model, &gens).unwrap();
        assert_eq!(z.dim(), 1);
        assert_eq!(center_of(&z).unwrap().dim(), 1);
    }
}
