//! Command-line surface used by the `stageig` binary.
//!
//! Inputs are JSON files in one of three shapes, detected by their keys:
//! a bare multigraph (`m`/`n`/`edges`, needs `--theta`, gets uniform
//! amplitudes), a tessellation cover (`vertices`/`t1`/`t2`, needs
//! `--theta`), or a full system (`graph`/`a`/`b`/`theta`).
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 schema error,
//! 3 validation failure. `STAGEIG_TOL` overrides the default verification
//! tolerance of 1e-9.

use std::f64::consts::TAU;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use ndarray::Array1;
use num_complex::Complex64;
use serde::Serialize;

use crate::balance::detect_reversibility;
use crate::io::{
    complex_to_json, matrix_to_json, ComplexJson, CoverJson, EigenBasisJson, GraphJson,
    ReportJson, SystemJson,
};
use crate::lattice::{
    dispersion, kagome_patch, localized_eigenvector, reduced_operator, MomentumPoint,
};
use crate::operators::WalkOperators;
use crate::oracle;
use crate::spectral::{full_eigenbasis, spectrum_from_t, verify_eigenbasis};
use crate::tessellation::{from_cover, uniform_amplitudes, TessellatedSystem};

type C64 = Complex64;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_MISMATCH: i32 = 1;
pub const EXIT_SCHEMA_ERROR: i32 = 2;
pub const EXIT_VALIDATION_FAILURE: i32 = 3;

const DEFAULT_TOL: f64 = 1e-9;

/// Verification tolerance: `STAGEIG_TOL` if set and parseable, else 1e-9.
pub fn verification_tolerance() -> f64 {
    std::env::var("STAGEIG_TOL")
        .ok()
        .and_then(|v| v.parse::<f64>().ok())
        .filter(|t| t.is_finite() && *t > 0.0)
        .unwrap_or(DEFAULT_TOL)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "stageig",
    about = "Staggered quantum walks on 2-tessellable graphs: spectra, \
             detailed balance, and verified eigenbases",
    version
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a graph, cover, or system file.
    Validate {
        #[arg(long)]
        input: PathBuf,
        /// Coin angle in (0, pi); required for graph and cover inputs.
        #[arg(long)]
        theta: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the walk spectrum via the discriminant mapping.
    Spectrum {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        theta: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Also write the dense operators (U, H_A, H_B, T) to this path.
        #[arg(long)]
        dump_operators: Option<PathBuf>,
    },
    /// Construct the complete verified eigenbasis.
    Eigenbasis {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        theta: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Construct the eigenbasis and check it against the dense eigensolver.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        theta: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the walk from a delta state and emit per-step distributions.
    Evolve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        theta: Option<f64>,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        /// Walk-graph vertex (edge id of the root multigraph) to start from.
        #[arg(long, default_value_t = 0)]
        seed_vertex: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Kagome lattice: band structure over a momentum grid, or localized
    /// eigenvector verification on a periodic patch.
    Kagome {
        #[arg(long)]
        theta: f64,
        #[arg(long, default_value_t = 16)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Patch dimensions X Y; switches to localized-eigenvector mode.
        #[arg(long, num_args = 2)]
        patch: Option<Vec<usize>>,
    },
}

struct CmdError {
    code: i32,
    message: String,
}

impl CmdError {
    fn schema(msg: impl std::fmt::Display) -> Self {
        CmdError {
            code: EXIT_SCHEMA_ERROR,
            message: format!("schema error: {msg}"),
        }
    }

    fn validation(msg: impl std::fmt::Display) -> Self {
        CmdError {
            code: EXIT_VALIDATION_FAILURE,
            message: format!("validation failure: {msg}"),
        }
    }

    fn mismatch(msg: impl std::fmt::Display) -> Self {
        CmdError {
            code: EXIT_VERIFY_MISMATCH,
            message: format!("verification mismatch: {msg}"),
        }
    }
}

/// Runs one command and returns the process exit code.
pub fn run(cfg: RunConfig) -> i32 {
    match dispatch(cfg.command) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("{}", e.message);
            e.code
        }
    }
}

fn dispatch(cmd: Command) -> Result<(), CmdError> {
    match cmd {
        Command::Validate { input, theta, out } => cmd_validate(&input, theta, out.as_deref()),
        Command::Spectrum {
            input,
            theta,
            out,
            format,
            dump_operators,
        } => cmd_spectrum(&input, theta, out.as_deref(), format, dump_operators.as_deref()),
        Command::Eigenbasis { input, theta, out } => {
            cmd_eigenbasis(&input, theta, out.as_deref())
        }
        Command::Verify { input, theta, out } => cmd_verify(&input, theta, out.as_deref()),
        Command::Evolve {
            input,
            theta,
            steps,
            seed_vertex,
            out,
            format,
        } => cmd_evolve(&input, theta, steps, seed_vertex, out.as_deref(), format),
        Command::Kagome {
            theta,
            grid,
            out,
            patch,
        } => match patch {
            Some(p) => cmd_kagome_patch(theta, p[0], p[1], out.as_deref()),
            None => cmd_kagome_grid(theta, grid, out.as_deref()),
        },
    }
}

fn load_system(path: &std::path::Path, theta: Option<f64>) -> Result<TessellatedSystem, CmdError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CmdError::schema(format!("cannot read {}: {e}", path.display())))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| CmdError::schema(format!("invalid JSON: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| CmdError::schema("top-level value must be an object"))?;

    if obj.contains_key("theta") {
        let sys: SystemJson =
            serde_json::from_value(value.clone()).map_err(CmdError::schema)?;
        sys.to_system().map_err(CmdError::validation)
    } else if obj.contains_key("vertices") {
        let cover: CoverJson = serde_json::from_value(value.clone()).map_err(CmdError::schema)?;
        let theta =
            theta.ok_or_else(|| CmdError::schema("cover input requires --theta"))?;
        from_cover(&cover.to_cover_input(), theta).map_err(CmdError::validation)
    } else {
        let gj: GraphJson = serde_json::from_value(value.clone()).map_err(CmdError::schema)?;
        let g = gj.to_graph().map_err(CmdError::validation)?;
        let theta =
            theta.ok_or_else(|| CmdError::schema("graph input requires --theta"))?;
        uniform_amplitudes(&g, theta).map_err(CmdError::validation)
    }
}

fn emit(out: Option<&std::path::Path>, text: &str) -> Result<(), CmdError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CmdError::schema(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

fn cmd_validate(
    input: &std::path::Path,
    theta: Option<f64>,
    out: Option<&std::path::Path>,
) -> Result<(), CmdError> {
    let s = load_system(input, theta)?;
    let report = detect_reversibility(&s);

    #[derive(Serialize)]
    struct ValidateOutput {
        m: usize,
        n: usize,
        edges: usize,
        betti: usize,
        theta: f64,
        report: ReportJson,
    }
    let output = ValidateOutput {
        m: s.graph().left_count(),
        n: s.graph().right_count(),
        edges: s.graph().edges().len(),
        betti: s.graph().betti_number(),
        theta: s.theta(),
        report: ReportJson::from_report(&report),
    };
    emit(out, &to_json(&output))
}

fn cmd_spectrum(
    input: &std::path::Path,
    theta: Option<f64>,
    out: Option<&std::path::Path>,
    format: Format,
    dump: Option<&std::path::Path>,
) -> Result<(), CmdError> {
    let s = load_system(input, theta)?;
    let ops = WalkOperators::build(&s);
    let report = detect_reversibility(&s);
    let basis = full_eigenbasis(&s).map_err(CmdError::validation)?;

    if let Some(path) = dump {
        #[derive(Serialize)]
        struct OperatorDump {
            u: Vec<Vec<ComplexJson>>,
            h_a: Vec<Vec<ComplexJson>>,
            h_b: Vec<Vec<ComplexJson>>,
            t: Vec<Vec<ComplexJson>>,
        }
        let dump_out = OperatorDump {
            u: matrix_to_json(&ops.u),
            h_a: matrix_to_json(&ops.h_a),
            h_b: matrix_to_json(&ops.h_b),
            t: matrix_to_json(&ops.t),
        };
        std::fs::write(path, to_json(&dump_out))
            .map_err(|e| CmdError::schema(format!("cannot write {}: {e}", path.display())))?;
    }

    let rows: Vec<(f64, f64, &'static str)> = basis
        .pairs
        .iter()
        .map(|p| {
            let angle = p.lambda.arg().rem_euclid(TAU);
            let defect = residual(&ops, &p.vector, p.lambda);
            let tag = match p.tag {
                crate::spectral::SubspaceTag::Intersection => "intersection",
                crate::spectral::SubspaceTag::Inherited => "inherited",
                crate::spectral::SubspaceTag::CyclePerp => "cycle-perp",
            };
            (angle, defect, tag)
        })
        .collect();

    match format {
        Format::Csv => {
            let mut text = String::from("angle,defect,tag\n");
            for (angle, defect, tag) in &rows {
                text.push_str(&format!("{angle},{defect},{tag}\n"));
            }
            emit(out, &text)
        }
        Format::Json => {
            #[derive(Serialize)]
            struct MapEntry {
                mu: f64,
                phi: f64,
                lambda: ComplexJson,
            }
            #[derive(Serialize)]
            struct SpectrumRow {
                lambda: ComplexJson,
                angle: f64,
                defect: f64,
                tag: &'static str,
            }
            #[derive(Serialize)]
            struct SpectrumOutput {
                reversible: bool,
                discriminant_map: Vec<MapEntry>,
                eigenvalues: Vec<SpectrumRow>,
                multiplicities: Vec<crate::io::MultiplicityJson>,
            }
            let map = spectrum_from_t(&ops, report.reversible);
            let output = SpectrumOutput {
                reversible: report.reversible,
                discriminant_map: map
                    .entries
                    .iter()
                    .map(|e| MapEntry {
                        mu: e.mu,
                        phi: e.phi,
                        lambda: complex_to_json(e.lambda),
                    })
                    .collect(),
                eigenvalues: basis
                    .pairs
                    .iter()
                    .zip(rows.iter())
                    .map(|(p, &(angle, defect, tag))| SpectrumRow {
                        lambda: complex_to_json(p.lambda),
                        angle,
                        defect,
                        tag,
                    })
                    .collect(),
                multiplicities: EigenBasisJson::from_basis(&basis).multiplicities,
            };
            emit(out, &to_json(&output))
        }
    }
}

fn cmd_eigenbasis(
    input: &std::path::Path,
    theta: Option<f64>,
    out: Option<&std::path::Path>,
) -> Result<(), CmdError> {
    let s = load_system(input, theta)?;
    let basis = full_eigenbasis(&s).map_err(CmdError::validation)?;
    emit(out, &to_json(&EigenBasisJson::from_basis(&basis)))
}

fn cmd_verify(
    input: &std::path::Path,
    theta: Option<f64>,
    out: Option<&std::path::Path>,
) -> Result<(), CmdError> {
    let s = load_system(input, theta)?;
    let tolerance = verification_tolerance();
    let ops = WalkOperators::build(&s);
    let basis = full_eigenbasis(&s).map_err(CmdError::validation)?;
    let check = verify_eigenbasis(&ops, &basis, tolerance);
    let od = oracle::decompose(&ops.u).map_err(CmdError::validation)?;
    // eigenvalue matching needs headroom over the residual tolerance
    let compare = oracle::compare(&basis, &od, tolerance.max(1e-7));
    let passed = check.passed && compare.matched;

    #[derive(Serialize)]
    struct VerifyOutput {
        passed: bool,
        tolerance: f64,
        max_residual: f64,
        min_singular: f64,
        complete: bool,
        oracle_matched: bool,
        max_eigenvalue_gap: f64,
        max_principal_angle: f64,
    }
    let output = VerifyOutput {
        passed,
        tolerance,
        max_residual: check.max_residual,
        min_singular: check.min_singular,
        complete: check.complete,
        oracle_matched: compare.matched,
        max_eigenvalue_gap: compare.max_eigenvalue_gap,
        max_principal_angle: compare.max_principal_angle,
    };
    emit(out, &to_json(&output))?;
    if passed {
        Ok(())
    } else {
        Err(CmdError::mismatch(format!(
            "max residual {:.3e}, oracle matched: {}",
            check.max_residual, compare.matched
        )))
    }
}

fn cmd_evolve(
    input: &std::path::Path,
    theta: Option<f64>,
    steps: usize,
    seed_vertex: usize,
    out: Option<&std::path::Path>,
    format: Format,
) -> Result<(), CmdError> {
    let s = load_system(input, theta)?;
    let nu = s.graph().edges().len();
    if seed_vertex >= nu {
        return Err(CmdError::validation(format!(
            "seed vertex {seed_vertex} out of range: the walk graph has {nu} vertices"
        )));
    }
    let ops = WalkOperators::build(&s);
    let mut psi = Array1::<C64>::zeros(nu);
    psi[seed_vertex] = C64::new(1.0, 0.0);
    let mut distributions: Vec<Vec<f64>> = Vec::with_capacity(steps + 1);
    for step in 0..=steps {
        if step > 0 {
            psi = ops.u.dot(&psi);
        }
        let dist: Vec<f64> = psi.iter().map(|z| z.norm_sqr()).collect();
        let total: f64 = dist.iter().sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(CmdError::mismatch(format!(
                "probability leak at step {step}: total {total}"
            )));
        }
        distributions.push(dist);
    }

    match format {
        Format::Csv => {
            let mut text = String::from("step,vertex,probability\n");
            for (step, dist) in distributions.iter().enumerate() {
                for (vertex, p) in dist.iter().enumerate() {
                    text.push_str(&format!("{step},{vertex},{p}\n"));
                }
            }
            emit(out, &text)
        }
        Format::Json => {
            #[derive(Serialize)]
            struct EvolveOutput {
                seed_vertex: usize,
                steps: usize,
                distributions: Vec<Vec<f64>>,
            }
            emit(
                out,
                &to_json(&EvolveOutput {
                    seed_vertex,
                    steps,
                    distributions,
                }),
            )
        }
    }
}

fn cmd_kagome_grid(
    theta: f64,
    grid: usize,
    out: Option<&std::path::Path>,
) -> Result<(), CmdError> {
    if !(0.0..std::f64::consts::PI).contains(&theta) || theta == 0.0 {
        return Err(CmdError::validation(format!(
            "theta {theta} outside (0, pi)"
        )));
    }
    if grid == 0 {
        return Err(CmdError::validation("grid must be positive"));
    }
    let mut text = String::from("k,l,two_phi_1,two_phi_2,flat_angle,residual\n");
    for i in 0..grid {
        for j in 0..grid {
            let k = TAU * i as f64 / grid as f64;
            let l = TAU * j as f64 / grid as f64;
            let p = MomentumPoint::new(k, l);
            let d = dispersion(theta, p).map_err(CmdError::validation)?;
            let od = oracle::decompose(&reduced_operator(theta, p))
                .map_err(CmdError::validation)?;
            let worst = [d.band_plus, d.band_minus, d.flat]
                .iter()
                .map(|band| {
                    od.eigenvalues
                        .iter()
                        .map(|lam| (lam - band).norm())
                        .fold(f64::INFINITY, f64::min)
                })
                .fold(0.0, f64::max);
            text.push_str(&format!(
                "{k},{l},{},{},{},{worst}\n",
                d.band_plus.arg().rem_euclid(TAU),
                d.band_minus.arg().rem_euclid(TAU),
                d.flat.arg().rem_euclid(TAU),
            ));
        }
    }
    emit(out, &text)
}

fn cmd_kagome_patch(
    theta: f64,
    cells_x: usize,
    cells_y: usize,
    out: Option<&std::path::Path>,
) -> Result<(), CmdError> {
    let patch = kagome_patch(cells_x, cells_y).map_err(CmdError::validation)?;
    let tolerance = verification_tolerance();
    let mut max_residual: f64 = 0.0;
    for x in 0..cells_x as i64 {
        for y in 0..cells_y as i64 {
            let (_, r) =
                localized_eigenvector(&patch, (x, y), theta).map_err(CmdError::validation)?;
            max_residual = max_residual.max(r);
        }
    }
    let passed = max_residual <= tolerance;

    #[derive(Serialize)]
    struct PatchOutput {
        cells_x: usize,
        cells_y: usize,
        theta: f64,
        flat_angle: f64,
        max_residual: f64,
        tolerance: f64,
        passed: bool,
    }
    let output = PatchOutput {
        cells_x,
        cells_y,
        theta,
        flat_angle: (-C64::from_polar(1.0, -2.0 * theta)).arg().rem_euclid(TAU),
        max_residual,
        tolerance,
        passed,
    };
    emit(out, &to_json(&output))?;
    if passed {
        Ok(())
    } else {
        Err(CmdError::mismatch(format!(
            "localized eigenvector residual {max_residual:.3e} exceeds {tolerance:.3e}"
        )))
    }
}

fn residual(ops: &WalkOperators, v: &Array1<C64>, lambda: C64) -> f64 {
    let diff = &ops.u.dot(v) - &v.mapv(|z| lambda * z);
    diff.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
