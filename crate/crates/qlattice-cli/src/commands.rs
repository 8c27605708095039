//! Command implementations and the exit-code mapping.

use std::fs;
use std::path::{Path, PathBuf};

use qlattice::error::Error as CoreError;
use qlattice::phase_space::{
    position_family, position_momentum_family, FiniteSystem, DEFAULT_FIDUCIAL_SEED,
};
use qlattice::quasiprob::DensityMatrix;
use qlattice::report::{analyze, Analysis, PentagramReportDoc};
use qlattice::wire::{to_json_string, wire_to_vector, DensityDoc, FamilyDoc, WireVector};
use qlattice::{SubspaceFamily, TolerancePolicy};

use crate::table;
use crate::Format;

pub const TOLERANCE_PROFILE_ENV: &str = "QLATTICE_TOLERANCE_PROFILE";

const EXIT_PARSE: i32 = 2;
const EXIT_VALIDATION: i32 = 3;
const EXIT_STATE: i32 = 4;

pub struct Options {
    pub rank_rtol: Option<f64>,
    pub eq_atol: Option<f64>,
    pub format: Format,
    pub out: Option<PathBuf>,
}

pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn parse(message: String) -> Self {
        Self {
            code: EXIT_PARSE,
            message,
        }
    }
}

fn code_for(err: &CoreError) -> i32 {
    match err {
        CoreError::InvalidDensityMatrix { .. } | CoreError::ZeroVector => EXIT_STATE,
        CoreError::InvalidTolerance { .. } | CoreError::UnknownToleranceProfile { .. } => {
            EXIT_PARSE
        }
        _ => EXIT_VALIDATION,
    }
}

fn lift(context: &str) -> impl Fn(CoreError) -> CliError + '_ {
    move |err| CliError {
        code: code_for(&err),
        message: format!("{context}: {err}"),
    }
}

/// Resolve the tolerance policy: named profile from the environment, then
/// explicit flag overrides.
fn resolve_tolerance(options: &Options) -> Result<TolerancePolicy, CliError> {
    let mut tol = match std::env::var(TOLERANCE_PROFILE_ENV) {
        Ok(name) => TolerancePolicy::named(&name).map_err(lift("tolerance profile"))?,
        Err(_) => TolerancePolicy::default(),
    };
    if let Some(rank_rtol) = options.rank_rtol {
        tol = tol
            .with_rank_rtol(rank_rtol)
            .map_err(lift("--rank-rtol"))?;
    }
    if let Some(eq_atol) = options.eq_atol {
        tol = tol.with_eq_atol(eq_atol).map_err(lift("--eq-atol"))?;
    }
    Ok(tol)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path, what: &str) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| {
        CliError::parse(format!("cannot read {what} file '{}': {e}", path.display()))
    })?;
    serde_json::from_str(&text).map_err(|e| {
        CliError::parse(format!("cannot parse {what} file '{}': {e}", path.display()))
    })
}

fn emit(report: String, options: &Options) -> Result<(), CliError> {
    match &options.out {
        Some(path) => fs::write(path, report.as_bytes()).map_err(|e| CliError {
            code: EXIT_VALIDATION,
            message: format!("cannot write '{}': {e}", path.display()),
        }),
        None => {
            println!("{report}");
            Ok(())
        }
    }
}

fn family_from_doc(doc: &FamilyDoc, tol: &TolerancePolicy) -> Result<SubspaceFamily, CliError> {
    doc.to_family(tol).map_err(lift("family"))
}

fn density_from_doc(doc: &DensityDoc, tol: &TolerancePolicy) -> Result<DensityMatrix, CliError> {
    doc.to_density(tol).map_err(lift("rho"))
}

fn run_analysis(
    family_doc: &FamilyDoc,
    rho_doc: &DensityDoc,
    tol: &TolerancePolicy,
) -> Result<(SubspaceFamily, Analysis), CliError> {
    let family = family_from_doc(family_doc, tol)?;
    let rho = density_from_doc(rho_doc, tol)?;
    let analysis = analyze(&family, &rho).map_err(lift("analysis"))?;
    Ok((family, analysis))
}

/// Render the analysis; in table mode a pure input state additionally
/// gets its per-member measurement reading (collapse probabilities and
/// states).
fn render_analysis(
    family: &SubspaceFamily,
    analysis: &Analysis,
    rho_doc: &DensityDoc,
    tol: &TolerancePolicy,
    options: &Options,
) -> Result<(), CliError> {
    let report = match options.format {
        Format::Json => to_json_string(&analysis.to_doc()),
        Format::Table => {
            let mut text = table::render_analysis(analysis);
            if let Some(raw) = &rho_doc.pure_state {
                if let Ok(state) = wire_to_vector(raw, analysis.ambient_dim) {
                    text.push('\n');
                    text.push_str(&table::render_measurements(family, &state, tol));
                }
            }
            text
        }
    };
    emit(report, options)
}

pub fn cmd_analyze(family: &Path, rho: &Path, options: &Options) -> Result<(), CliError> {
    let tol = resolve_tolerance(options)?;
    let family_doc: FamilyDoc = read_json(family, "family")?;
    let rho_doc: DensityDoc = read_json(rho, "rho")?;
    let (family, analysis) = run_analysis(&family_doc, &rho_doc, &tol)?;
    render_analysis(&family, &analysis, &rho_doc, &tol, options)
}

const INDEPENDENCE_H6_FAMILY: &str = include_str!("../fixtures/independence_h6.family.json");
const INDEPENDENCE_H6_RHO: &str = include_str!("../fixtures/independence_h6.rho.json");
const TOTALNESS_H6_FAMILY: &str = include_str!("../fixtures/totalness_h6.family.json");
const TOTALNESS_H6_RHO: &str = include_str!("../fixtures/totalness_h6.rho.json");

pub const EXAMPLE_NAMES: [&str; 5] = [
    "independence-h6",
    "totalness-h6",
    "position",
    "position-momentum",
    "coherent",
];

fn embedded_docs(family: &str, rho: &str) -> (FamilyDoc, DensityDoc) {
    let family: FamilyDoc = serde_json::from_str(family).expect("embedded fixture parses");
    let rho: DensityDoc = serde_json::from_str(rho).expect("embedded fixture parses");
    (family, rho)
}

/// Documents for a generated system family with the maximally mixed state.
fn system_docs(
    kind: &str,
    d: usize,
    fiducial_seed: u64,
    tol: &TolerancePolicy,
) -> Result<(FamilyDoc, DensityDoc), CliError> {
    let family = match kind {
        "position" => position_family(d, tol).map_err(lift("position family"))?,
        "position-momentum" => {
            position_momentum_family(d, tol).map_err(lift("position-momentum family"))?
        }
        "coherent" => FiniteSystem::with_seeded_fiducial(d, fiducial_seed, tol)
            .map_err(lift("finite system"))?
            .coherent_family(tol)
            .map_err(lift("coherent family"))?,
        other => {
            return Err(CliError::parse(format!(
                "unknown system family kind '{other}' (known: position, position-momentum, coherent)"
            )))
        }
    };
    let rho = DensityDoc::from_density(&DensityMatrix::maximally_mixed(d));
    Ok((FamilyDoc::from_family(&family), rho))
}

pub fn cmd_example(
    name: &str,
    d: Option<usize>,
    fiducial_seed: Option<u64>,
    options: &Options,
) -> Result<(), CliError> {
    let tol = resolve_tolerance(options)?;
    let d = d.unwrap_or(3);
    let seed = fiducial_seed.unwrap_or(DEFAULT_FIDUCIAL_SEED);
    let (family_doc, rho_doc) = match name {
        "independence-h6" => embedded_docs(INDEPENDENCE_H6_FAMILY, INDEPENDENCE_H6_RHO),
        "totalness-h6" => embedded_docs(TOTALNESS_H6_FAMILY, TOTALNESS_H6_RHO),
        "position" | "position-momentum" | "coherent" => system_docs(name, d, seed, &tol)?,
        other => {
            return Err(CliError::parse(format!(
                "unknown example '{other}'; available examples: {}",
                EXAMPLE_NAMES.join(", ")
            )))
        }
    };
    let (family, analysis) = run_analysis(&family_doc, &rho_doc, &tol)?;
    render_analysis(&family, &analysis, &rho_doc, &tol, options)
}

pub fn cmd_pentagram(rho: Option<&Path>, options: &Options) -> Result<(), CliError> {
    let tol = resolve_tolerance(options)?;
    let rho = match rho {
        Some(path) => {
            let doc: DensityDoc = read_json(path, "rho")?;
            density_from_doc(&doc, &tol)?
        }
        None => {
            let (_, state) = qlattice::pentagram::max_violation(&tol);
            DensityMatrix::pure(&state, &tol).map_err(lift("rho"))?
        }
    };
    let report = qlattice::pentagram::pentagram_analysis(&rho, &tol).map_err(lift("pentagram"))?;
    let rendered = match options.format {
        Format::Json => to_json_string(&PentagramReportDoc::from_report(&report)),
        Format::Table => table::render_pentagram(&report),
    };
    emit(rendered, options)
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_system(
    kind: &str,
    d: usize,
    fiducial_seed: Option<u64>,
    fiducial_file: Option<&Path>,
    rho: Option<&Path>,
    emit_family: Option<&Path>,
    options: &Options,
) -> Result<(), CliError> {
    let tol = resolve_tolerance(options)?;
    let family_doc = match (kind, fiducial_file) {
        ("coherent", Some(path)) => {
            let raw: WireVector = read_json(path, "fiducial")?;
            let fiducial = wire_to_vector(&raw, raw.len()).map_err(lift("fiducial"))?;
            if fiducial.len() != d {
                return Err(CliError {
                    code: EXIT_VALIDATION,
                    message: format!(
                        "fiducial: expected dimension {d}, got {}",
                        fiducial.len()
                    ),
                });
            }
            let system = FiniteSystem::new(d, fiducial, &tol).map_err(lift("finite system"))?;
            let family = system.coherent_family(&tol).map_err(lift("coherent family"))?;
            FamilyDoc::from_family(&family)
        }
        _ => {
            let seed = fiducial_seed.unwrap_or(DEFAULT_FIDUCIAL_SEED);
            system_docs(kind, d, seed, &tol)?.0
        }
    };
    let rho_doc = match rho {
        Some(path) => read_json(path, "rho")?,
        None => DensityDoc::from_density(&DensityMatrix::maximally_mixed(d)),
    };
    if let Some(path) = emit_family {
        // Data documents are written losslessly (shortest round-trip
        // floats) so a reloaded family classifies identically; the
        // 12-digit rule applies to reports only.
        let text = serde_json::to_string_pretty(&family_doc).expect("family doc serializes");
        fs::write(path, text.as_bytes()).map_err(|e| CliError {
            code: EXIT_VALIDATION,
            message: format!("cannot write '{}': {e}", path.display()),
        })?;
    }
    let (family, analysis) = run_analysis(&family_doc, &rho_doc, &tol)?;
    render_analysis(&family, &analysis, &rho_doc, &tol, options)
}
