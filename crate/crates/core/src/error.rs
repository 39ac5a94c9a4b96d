use thiserror::Error;

/// Errors raised by the pipeline stages.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: String, found: String },

    #[error("empty matrix")]
    EmptyMatrix,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("operators do not commute (commutator norm {residual:.3e})")]
    NonCommuting { residual: f64 },

    #[error("defective operator: eigenspaces span {found} of {expected} dimensions")]
    Defective { expected: usize, found: usize },

    #[error("{0} is excluded: no octonionic or exceptional algebra construction")]
    Excluded(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("element lies outside the algebra span (residual {residual:.3e})")]
    OutsideSpan { residual: f64 },

    #[error("torus is not abelian (bracket residual {residual:.3e})")]
    NotAbelian { residual: f64 },

    #[error("zero root has no classification")]
    ZeroRoot,

    #[error("not a root of this decomposition")]
    NotARoot,

    #[error("root is not mixed")]
    NotMixed,

    #[error("conjugation limit diverges: entry ({row}, {col}) grows like exp({rate:.3}t)")]
    Divergent { row: usize, col: usize, rate: f64 },

    #[error("genus {0} is below 2")]
    GenusTooSmall(u32),

    #[error("relator residual {residual:.3e} exceeds tolerance")]
    RelatorResidual { residual: f64 },

    #[error("not a cocycle (relator map residual {residual:.3e})")]
    NotCocycle { residual: f64 },

    #[error("subspace is not invariant under the module action (residual {residual:.3e})")]
    NotInvariant { residual: f64 },

    #[error("root space has nonzero invariant vectors (dim H0 = {0})")]
    NonzeroInvariants(usize),

    #[error("matrix is not symmetric (asymmetry {residual:.3e})")]
    Asymmetric { residual: f64 },

    #[error("numerically indefinite: eigenvalue {eigenvalue:.3e} inside tolerance band {band:.3e}")]
    NumericallyIndefinite { eigenvalue: f64, band: f64 },

    #[error("Milnor-Wood slack is negative ({slack})")]
    NegativeSlack { slack: f64 },

    #[error("central element does not act trivially on the module (residual {residual:.3e})")]
    CenterActsNontrivially { residual: f64 },

    #[error("singular matrix")]
    Singular,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
