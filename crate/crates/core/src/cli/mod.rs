//! Command-line front end.

mod problem;
mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use nalgebra::DMatrix;
use serde::de::DeserializeOwned;
use serde::Serialize;

pub use problem::{effective_config, matrix_to_real, Entry, MatrixSpec, ProblemSpec, RepresentationSource};
pub use report::{
    rerender, round_significant, to_json, BalancedReport, CatalogReport, CatalogRow, CohomologyReport,
    DecomposeReport, DecomposedRoot, Envelope, ModuleCohomology, Render, ToledoEntry, ToledoReport,
    SIGNIFICANT_DIGITS,
};

use crate::catalog;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::flex::{self, BalanceProblem, FlexibilityReport, RootSummary, Verdict};
use crate::lie::{build_classical, center_of, centralizer, conjugation_limit, Family, Generator, LieAlgebraModel, SubalgebraHandle};
use crate::roots::{decompose, TorusRootDecomposition};
use crate::surface::{
    fuchsian_sl2, fuchsian_so21, fuchsian_su11_realified, standard_presentation, CohomologyWorkspace, Module,
    SurfaceRepresentation,
};
use crate::toledo::{self, root_module, ModuleForm};

/// Exit code for unparsable input or invalid parameters.
pub const EXIT_PARSE: i32 = 2;
/// Exit code for a numerical abort.
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "flexcheck", version, about = "Flexibility of surface group representations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Surface genus (default 2, or the input file's value).
    #[arg(long, global = true)]
    pub genus: Option<u32>,
    /// Named catalog case as the representation source.
    #[arg(long, global = true)]
    pub catalog: Option<String>,
    /// JSON problem description.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// RNG seed; falls back to the input file, then FLEXCHECK_SEED, then 0.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Relative singular value cutoff for numerical rank.
    #[arg(long = "tol-rank", global = true)]
    pub tol_rank: Option<f64>,
    /// Distance below which eigenvalue tuples are merged.
    #[arg(long = "tol-cluster", global = true)]
    pub tol_cluster: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Root decomposition of the torus (center of the centralizer by default).
    Decompose,
    /// Cohomology dimensions of the adjoint and root modules.
    Cohomology,
    /// Cup-product forms, signatures and Toledo invariants.
    Toledo {
        /// Root index, or `standard` for the defining module of sl(2,R) / sp(2n,R).
        #[arg(long)]
        root: Option<String>,
    },
    /// Balanced test on the input's `balance` block or the computed P/N.
    Balanced,
    /// Full flexibility verdict.
    Verdict,
    /// Catalog cases with expected results.
    Catalog,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Decompose => "decompose",
            Command::Cohomology => "cohomology",
            Command::Toledo { .. } => "toledo",
            Command::Balanced => "balanced",
            Command::Verdict => "verdict",
            Command::Catalog => "catalog",
        }
    }
}

/// Rendered output and process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Exit code of a pipeline error.
pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::InvalidParameters(_)
        | Error::Excluded(_)
        | Error::DimensionMismatch(_)
        | Error::FieldMismatch { .. }
        | Error::EmptyMatrix
        | Error::GenusTooSmall(_)
        | Error::OutsideSpan { .. }
        | Error::RelatorResidual { .. } => EXIT_PARSE,
        _ => EXIT_NUMERICAL,
    }
}

/// Resolved inputs shared by the subcommands.
pub struct Session {
    pub spec: ProblemSpec,
    pub cfg: Config,
    pub genus: u32,
    pub format: Format,
}

impl Session {
    pub fn new(cli: &Cli) -> Result<Self> {
        let mut spec = match &cli.input {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                ProblemSpec::from_json(&text)?
            }
            None => ProblemSpec::default(),
        };
        if let Some(name) = &cli.catalog {
            let case = catalog::case_by_name(name)?;
            if spec.ambient.is_none() {
                spec.ambient = Some(case.family());
            }
            spec.representation = Some(RepresentationSource::Catalog(name.clone()));
        }
        let env_seed = match std::env::var("FLEXCHECK_SEED") {
            Ok(v) => Some(
                v.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("FLEXCHECK_SEED is not an integer: {v}")))?,
            ),
            Err(_) => None,
        };
        let seed = cli.seed.or(spec.seed).or(env_seed);
        let cfg = effective_config(&spec, seed, cli.tol_rank, cli.tol_cluster);
        let genus = match (cli.genus, spec.genus, &spec.representation) {
            (Some(g), _, _) | (None, Some(g), _) => g,
            (None, None, Some(RepresentationSource::Generators { matrices, .. })) => (matrices.len() / 2) as u32,
            _ => 2,
        };
        let format = match (cli.format, spec.format.as_deref()) {
            (Some(f), _) => f,
            (None, Some("json")) => Format::Json,
            (None, Some("text")) | (None, None) => Format::Text,
            (None, Some(other)) => return Err(Error::Parse(format!("unknown format {other}"))),
        };
        Ok(Self { spec, cfg, genus, format })
    }

    pub fn model(&self) -> Result<LieAlgebraModel> {
        build_classical(&self.spec.ambient_family()?, &self.cfg)
    }

    pub fn has_representation(&self) -> bool {
        self.spec.representation.is_some()
    }

    /// The representation, after the optional conjugation limit.
    pub fn representation(&self, model: &LieAlgebraModel) -> Result<SurfaceRepresentation> {
        let family = self.spec.ambient_family()?;
        let rep = match &self.spec.representation {
            None => return Err(Error::Parse("missing field `representation`".into())),
            Some(RepresentationSource::Generators { matrices, central_lift }) => {
                if matrices.len() != 2 * self.genus as usize {
                    return Err(Error::Parse(format!(
                        "genus {} needs {} generator matrices, found {}",
                        self.genus,
                        2 * self.genus,
                        matrices.len()
                    )));
                }
                let images = matrices
                    .iter()
                    .map(|m| matrix_to_real(m, family.field()))
                    .collect::<Result<Vec<_>>>()?;
                for g in &images {
                    if g.shape() != (model.ambient(), model.ambient()) {
                        return Err(Error::DimensionMismatch(format!(
                            "generator must be {n}x{n} over {}",
                            family.field(),
                            n = family.size()
                        )));
                    }
                }
                SurfaceRepresentation::new(standard_presentation(self.genus)?, images, *central_lift, &self.cfg.tol)?
            }
            Some(RepresentationSource::Fuchsian { object: None }) => match family {
                Family::Sl { n: 2 } | Family::SpReal { n: 1 } => fuchsian_sl2(self.genus, &self.cfg.tol)?,
                Family::Su { p: 1, q: 1 } => fuchsian_su11_realified(self.genus, &self.cfg.tol)?,
                Family::So { p: 2, q: 1 } => fuchsian_so21(self.genus, &self.cfg.tol)?,
                other => {
                    return Err(Error::InvalidParameters(format!(
                        "no Fuchsian representation into {other} without an embedding object"
                    )))
                }
            },
            Some(_) => {
                let case = self
                    .spec
                    .catalog_case()?
                    .ok_or_else(|| Error::Parse("missing representation".into()))?;
                if case.family() != family {
                    return Err(Error::InvalidParameters(format!(
                        "catalog case {} lives in {}, not {family}",
                        case.name,
                        case.family()
                    )));
                }
                catalog::representation(&case, self.genus, &self.cfg)?
            }
        };
        match &self.spec.limit_direction {
            None => Ok(rep),
            Some(u) => {
                let u = matrix_to_real(u, family.field())?;
                let images = rep
                    .images()
                    .iter()
                    .map(|g| conjugation_limit(g, &u, &self.cfg.tol))
                    .collect::<Result<Vec<_>>>()?;
                SurfaceRepresentation::new(rep.presentation().clone(), images, rep.central_lift(), &self.cfg.tol)
            }
        }
    }

    /// Explicit torus, else the center of the centralizer, else zero.
    pub fn torus<'m>(&self, model: &'m LieAlgebraModel) -> Result<SubalgebraHandle<'m>> {
        if let Some(torus) = &self.spec.torus {
            let field = self.spec.ambient_family()?.field();
            let elems = torus
                .iter()
                .map(|m| matrix_to_real(m, field))
                .collect::<Result<Vec<_>>>()?;
            return SubalgebraHandle::span(model, &elems);
        }
        if self.has_representation() {
            let rep = self.representation(model)?;
            let gens: Vec<Generator> = rep.images().iter().cloned().map(Generator::Group).collect();
            let z = centralizer(model, &gens)?;
            return center_of(&z);
        }
        Ok(SubalgebraHandle::from_coords(model, &DMatrix::zeros(model.dim(), 0)))
    }

    fn emit<T: Serialize + Render>(&self, command: &str, report: T) -> Result<String> {
        let env = Envelope::new(command, self.cfg.seed, self.cfg.tol, report);
        match self.format {
            Format::Json => to_json(&env),
            Format::Text => Ok(env.render_text()),
        }
    }
}

fn pairs(v: &[crate::algebra::C64]) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re + 0.0, z.im + 0.0]).collect()
}

pub fn decompose_report(model: &LieAlgebraModel, decomp: &TorusRootDecomposition<'_>) -> DecomposeReport {
    DecomposeReport {
        ambient: model.name().to_string(),
        dim_g: model.dim(),
        torus_dim: decomp.torus_dim(),
        zero_space_dim: decomp.zero_space().ncols(),
        roots: decomp
            .roots()
            .iter()
            .map(|d| DecomposedRoot {
                values: pairs(&d.values),
                kind: d.kind,
                real_dim: d.real_dim(),
                complex_dim: d.complex_dim(),
                orbit_size: d.members.len(),
                t_lambda: pairs(d.t_lambda.as_slice()),
                root_vector_residual: decomp.root_vector_residual(d),
            })
            .collect(),
        total_dim: decomp.total_dim(),
        orthogonality_residual: decomp.orthogonality_residual(),
    }
}

fn module_row(name: String, ws: &CohomologyWorkspace) -> ModuleCohomology {
    ModuleCohomology {
        module: name,
        dim: ws.module().dim(),
        dim_h0: ws.dim_h0(),
        dim_h1: ws.dim_h1(),
        dim_h2: ws.dim_h2(),
        dim_z1: ws.dim_z1(),
        dim_b1: ws.dim_b1(),
        euler_defect: ws.euler_defect(),
        z1_defect: ws.z1_defect(),
    }
}

fn root_label(values: &[crate::algebra::C64]) -> String {
    let parts: Vec<String> = values
        .iter()
        .map(|z| format!("{}{:+}i", round_significant(z.re + 0.0), round_significant(z.im + 0.0)))
        .collect();
    format!("root ({})", parts.join(", "))
}

pub fn cohomology_report(
    model: &LieAlgebraModel,
    rep: &SurfaceRepresentation,
    decomp: &TorusRootDecomposition<'_>,
    cfg: &Config,
) -> Result<CohomologyReport> {
    let smooth = flex::smoothness_of_rep(model, rep, cfg)?;
    let ws = CohomologyWorkspace::new(rep.presentation(), Module::adjoint(model, rep)?, &cfg.tol)?;
    let mut modules = vec![module_row("adjoint".into(), &ws)];
    for d in decomp.roots() {
        let m = root_module(rep, decomp, &d.values, cfg)?;
        let ws = CohomologyWorkspace::new(rep.presentation(), m, &cfg.tol)?;
        modules.push(module_row(root_label(&d.values), &ws));
    }
    Ok(CohomologyReport {
        ambient: model.name().to_string(),
        genus: rep.genus(),
        euler_characteristic: rep.presentation().euler_characteristic(),
        virtual_dimension: smooth.virtual_dimension,
        smooth: smooth.smooth,
        modules,
    })
}

/// Toledo entries for the selected roots, oriented so that `T >= 0`.
pub fn toledo_report(
    model: &LieAlgebraModel,
    rep: &SurfaceRepresentation,
    decomp: &TorusRootDecomposition<'_>,
    selector: Option<usize>,
    cfg: &Config,
) -> Result<ToledoReport> {
    let roots = decomp.roots();
    let selected: Vec<_> = match selector {
        Some(k) => vec![roots
            .get(k)
            .ok_or_else(|| Error::InvalidParameters(format!("root index {k} out of range ({} roots)", roots.len())))?],
        None => roots.iter().collect(),
    };
    let mut entries = Vec::new();
    for d in selected {
        let form = toledo::oriented_root_form(rep, decomp, &d.values, cfg)?;
        toledo::milnor_wood_check(&form)?;
        entries.push(ToledoEntry {
            module: "root".into(),
            summary: RootSummary::from_report(&form, cfg.tol.signature),
            dim_h0: form.dim_h0,
            dim_h2: form.dim_h2,
            coboundary_pairing: form.coboundary_pairing,
        });
    }
    Ok(ToledoReport {
        ambient: model.name().to_string(),
        genus: rep.genus(),
        euler_characteristic: rep.presentation().euler_characteristic(),
        entries,
    })
}

/// Toledo entry of the defining module of sl(2,R) or sp(2n,R) with its
/// symplectic form.
pub fn standard_toledo_report(model: &LieAlgebraModel, rep: &SurfaceRepresentation, cfg: &Config) -> Result<ToledoReport> {
    let n = model.ambient();
    let omega = match model.family() {
        Some(Family::Sl { n: 2 }) => DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]),
        Some(Family::SpReal { .. }) => model
            .form()
            .cloned()
            .ok_or_else(|| Error::InvalidParameters("missing symplectic form".into()))?,
        _ => {
            return Err(Error::InvalidParameters(format!(
                "the standard module of {} carries no invariant symplectic form",
                model.name()
            )))
        }
    };
    let ws = CohomologyWorkspace::new(rep.presentation(), Module::standard(rep), &cfg.tol)?;
    let form = ModuleForm::new(&ws, &omega, cfg.tol.signature)?;
    let chi = rep.presentation().euler_characteristic();
    let t = form.toledo();
    let summary = RootSummary {
        values: Vec::new(),
        kind: crate::roots::RootKind::Real,
        root_space_dim: n,
        dim_h1: ws.dim_h1(),
        signature: Some(form.signature.value()),
        toledo: Some(t),
        milnor_wood_slack: -(chi as f64) * n as f64 - 4.0 * t.abs(),
        definite: ws.dim_h1() > 0 && form.signature.is_definite(),
        nondegenerate: form.signature.degenerate == 0,
        separation: form.separation,
    };
    Ok(ToledoReport {
        ambient: model.name().to_string(),
        genus: rep.genus(),
        euler_characteristic: chi,
        entries: vec![ToledoEntry {
            module: "standard".into(),
            summary,
            dim_h0: ws.dim_h0(),
            dim_h2: ws.dim_h2(),
            coboundary_pairing: toledo::coboundary_pairing(&ws, &omega)?,
        }],
    })
}

pub fn catalog_report(only: Option<&str>) -> Result<CatalogReport> {
    let cases = match only {
        Some(name) => vec![catalog::case_by_name(name)?],
        None => catalog::cases(),
    };
    Ok(CatalogReport {
        cases: cases
            .iter()
            .map(|c| CatalogRow {
                name: c.name.clone(),
                ambient: c.family().to_string(),
                object: c.object.to_string(),
                expected: catalog::expected_table(c),
            })
            .collect(),
    })
}

fn run_command(cli: &Cli) -> Result<(String, i32)> {
    let session = Session::new(cli)?;
    let cfg = &session.cfg;
    let name = cli.command.name();
    match &cli.command {
        Command::Catalog => Ok((session.emit(name, catalog_report(cli.catalog.as_deref())?)?, 0)),
        Command::Balanced if session.spec.balance.is_some() => {
            let problem: BalanceProblem = session.spec.balance.clone().unwrap_or_else(|| unreachable!());
            Ok((session.emit(name, balanced_report(problem))?, 0))
        }
        Command::Decompose => {
            let model = session.model()?;
            let torus = session.torus(&model)?;
            let decomp = decompose(&model, &torus, cfg)?;
            Ok((session.emit(name, decompose_report(&model, &decomp))?, 0))
        }
        Command::Cohomology => {
            let model = session.model()?;
            let rep = session.representation(&model)?;
            let torus = session.torus(&model)?;
            let decomp = decompose(&model, &torus, cfg)?;
            Ok((session.emit(name, cohomology_report(&model, &rep, &decomp, cfg)?)?, 0))
        }
        Command::Toledo { root } => {
            let model = session.model()?;
            let rep = session.representation(&model)?;
            let report = match root.as_deref() {
                Some("standard") => standard_toledo_report(&model, &rep, cfg)?,
                other => {
                    let selector = other
                        .map(|s| {
                            s.parse::<usize>()
                                .map_err(|_| Error::Parse(format!("--root expects an index or `standard`, got {s}")))
                        })
                        .transpose()?;
                    let torus = session.torus(&model)?;
                    let decomp = decompose(&model, &torus, cfg)?;
                    toledo_report(&model, &rep, &decomp, selector, cfg)?
                }
            };
            Ok((session.emit(name, report)?, 0))
        }
        Command::Balanced => {
            let model = session.model()?;
            let rep = session.representation(&model)?;
            let report = flex::verdict(&model, &rep, cfg)?;
            let problem = BalanceProblem {
                dim: report.center_dim,
                p: report.p.clone(),
                n: report.n.clone(),
            };
            Ok((session.emit(name, balanced_report(problem))?, 0))
        }
        Command::Verdict => {
            let model = session.model()?;
            let rep = session.representation(&model)?;
            let report: FlexibilityReport = flex::verdict(&model, &rep, cfg)?;
            let code = report.verdict.exit_code();
            Ok((session.emit(name, report)?, code))
        }
    }
}

pub fn balanced_report(problem: BalanceProblem) -> BalancedReport {
    let outcome = flex::balanced(&problem);
    let certificate_residual = flex::certificate_residual(&problem, &outcome);
    BalancedReport {
        problem,
        outcome,
        certificate_residual,
    }
}

/// Run a parsed command line.
pub fn execute(cli: &Cli) -> Outcome {
    match run_command(cli) {
        Ok((stdout, code)) => Outcome {
            stdout,
            stderr: String::new(),
            code,
        },
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: exit_code_for(&e),
        },
    }
}

/// Parse `args` (program name first) and run; clap errors exit with 2.
pub fn run_with_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            }
        }
    }
}

/// Check that emitted JSON re-renders byte-identically through its typed report.
pub fn json_round_trips(command: &str, text: &str) -> Result<bool> {
    fn check<T: Serialize + DeserializeOwned>(text: &str) -> Result<bool> {
        Ok(rerender::<Envelope<T>>(text)? == text)
    }
    match command {
        "decompose" => check::<DecomposeReport>(text),
        "cohomology" => check::<CohomologyReport>(text),
        "toledo" => check::<ToledoReport>(text),
        "balanced" => check::<BalancedReport>(text),
        "verdict" => check::<FlexibilityReport>(text),
        "catalog" => check::<CatalogReport>(text),
        other => Err(Error::Parse(format!("unknown command {other}"))),
    }
}

/// Expected verdict of a catalog case, for sweeps.
pub fn expected_verdict(name: &str) -> Result<Verdict> {
    Ok(catalog::expected_table(&catalog::case_by_name(name)?).verdict)
}
