//! JSON problem descriptions.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::algebra::{realify, Field, Scalar, ScalarMatrix};
use crate::catalog::{self, AmbientField, CatalogCase, Stabilized};
use crate::config::{Config, Tolerances};
use crate::error::{Error, Result};
use crate::flex::BalanceProblem;
use crate::lie::Family;

/// One matrix entry as `[re]`, `[re, im]` or `[re, i, j, k]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Entry(pub Scalar);

impl TryFrom<Vec<f64>> for Entry {
    type Error = String;

    fn try_from(v: Vec<f64>) -> std::result::Result<Self, String> {
        if v.iter().any(|x| !x.is_finite()) {
            return Err("matrix entry has a non-finite component".into());
        }
        Scalar::from_components(&v)
            .map(Entry)
            .map_err(|_| format!("matrix entry must have 1, 2 or 4 components, found {}", v.len()))
    }
}

impl From<Entry> for Vec<f64> {
    fn from(e: Entry) -> Self {
        let c = e.0.components();
        c[..e.0.field().degree()].to_vec()
    }
}

/// Row-major matrix of entries.
pub type MatrixSpec = Vec<Vec<Entry>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RepresentationSource {
    /// A named catalog case.
    Catalog(String),
    /// Explicit generator images `a1, b1, ..., ag, bg`.
    Generators {
        matrices: Vec<MatrixSpec>,
        #[serde(default)]
        central_lift: bool,
    },
    /// The Fuchsian representation composed with the block embedding
    /// stabilizing `object`; `sl(2,R)` takes the Fuchsian lift directly.
    Fuchsian {
        #[serde(default)]
        object: Option<Stabilized>,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    #[serde(default)]
    pub ambient: Option<Family>,
    #[serde(default)]
    pub genus: Option<u32>,
    #[serde(default)]
    pub representation: Option<RepresentationSource>,
    /// Explicit torus generators for `decompose`; defaults to the center of
    /// the centralizer.
    #[serde(default)]
    pub torus: Option<Vec<MatrixSpec>>,
    /// Apply `g -> lim exp(-tu) g exp(tu)` to every generator first.
    #[serde(default)]
    pub limit_direction: Option<MatrixSpec>,
    /// Direct input for `balanced`.
    #[serde(default)]
    pub balance: Option<BalanceProblem>,
    #[serde(default)]
    pub tolerances: Option<Tolerances>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub format: Option<String>,
}

impl ProblemSpec {
    /// Parse JSON; errors carry serde's line and column.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_catalog(name: &str) -> Result<Self> {
        let case = catalog::case_by_name(name)?;
        Ok(Self {
            ambient: Some(case.family()),
            representation: Some(RepresentationSource::Catalog(name.into())),
            ..Self::default()
        })
    }

    /// Catalog case named by the problem, if any.
    pub fn catalog_case(&self) -> Result<Option<CatalogCase>> {
        match &self.representation {
            Some(RepresentationSource::Catalog(name)) => catalog::case_by_name(name).map(Some),
            Some(RepresentationSource::Fuchsian { object: Some(object) }) => {
                let family = self.ambient_family()?;
                let (field, m) = match family {
                    Family::So { p, q: 1 } => (AmbientField::Real, p),
                    Family::Su { p, q: 1 } => (AmbientField::Complex, p),
                    Family::Sp { p, q: 1 } => (AmbientField::Quaternion, p),
                    other => {
                        return Err(Error::InvalidParameters(format!(
                            "no rank one embedding into {other}"
                        )))
                    }
                };
                Ok(Some(CatalogCase {
                    name: format!("{family} {object}"),
                    field,
                    m,
                    object: *object,
                }))
            }
            _ => Ok(None),
        }
    }

    pub fn ambient_family(&self) -> Result<Family> {
        if let Some(f) = &self.ambient {
            return Ok(f.clone());
        }
        if let Some(RepresentationSource::Catalog(name)) = &self.representation {
            return Ok(catalog::case_by_name(name)?.family());
        }
        Err(Error::Parse("missing field `ambient`".into()))
    }
}

/// Realify a parsed matrix over `field`.
pub fn matrix_to_real(m: &MatrixSpec, field: Field) -> Result<DMatrix<f64>> {
    let rows: Vec<Vec<Scalar>> = m
        .iter()
        .map(|row| row.iter().map(|e| e.0.promote(field)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let sm = ScalarMatrix::from_rows(field, &rows)?;
    Ok(realify(&sm, field)?.into_real())
}

/// Effective configuration: problem values, then overrides.
pub fn effective_config(spec: &ProblemSpec, seed: Option<u64>, rank: Option<f64>, cluster: Option<f64>) -> Config {
    let mut cfg = Config::default();
    if let Some(t) = spec.tolerances {
        cfg.tol = t;
    }
    if let Some(s) = spec.seed {
        cfg.seed = s;
    }
    if let Some(s) = seed {
        cfg.seed = s;
    }
    if let Some(r) = rank {
        cfg.tol.rank = r;
    }
    if let Some(c) = cluster {
        cfg.tol.cluster = c;
    }
    cfg
}
