//! `siqbarrier` — transmission and reflection coefficients for parabolic,
//! Morse, and Eckart potential barriers, three ways: closed form, the
//! evolution-matrix construction, and direct numerical integration.
//!
//! Data goes to stdout (JSON by default, CSV on request), diagnostics to
//! stderr. Exit codes: 0 success, 1 computation domain error (with a
//! structured error record on stdout), 2 usage error, 3 verification
//! tolerance failure.

mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use report::{
    full, BarrierEcho, CheckRow, ErrorRecord, ErrorReport, GridEcho, Report, RequestEcho,
    ResultRow,
};
use siqbarrier::asymptotics::{a_matrix, morse_a_minus_discrepancy, Side};
use siqbarrier::barriers::{
    verify_factorization, verify_linear_shift, verify_shape_invariance, BarrierSpec,
    ShapeInvariantFamily, SignChoice, UnitSystem,
};
use siqbarrier::fmatrix::{
    closed_form_coefficients_with, evolution_matrix_with, scattering_via_f_matrix_with,
    Method, PropertyCheckMode,
};
use siqbarrier::asymptotics::MorseAMinusForm;
use siqbarrier::oracle::{solve, sweep, OracleConfig};
use siqbarrier::Error;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(
    name = "siqbarrier",
    version,
    about = "Exact barrier transmission and reflection coefficients with a numerical cross-check"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Parabolic,
    Morse,
    Eckart,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Upper,
    Lower,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    #[value(name = "closed_form", alias = "closed-form")]
    ClosedForm,
    #[value(name = "f_matrix", alias = "f-matrix")]
    FMatrix,
    Oracle,
    All,
}

impl MethodArg {
    fn name(self) -> &'static str {
        match self {
            MethodArg::ClosedForm => "closed_form",
            MethodArg::FMatrix => "f_matrix",
            MethodArg::Oracle => "oracle",
            MethodArg::All => "all",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Args, Clone)]
struct BarrierArgs {
    /// Barrier family
    #[arg(long, value_enum)]
    barrier: FamilyArg,
    /// Peak height V(0)
    #[arg(long = "V0")]
    v0: f64,
    /// Curvature frequency (parabolic only)
    #[arg(long)]
    omega: Option<f64>,
    /// Range parameter (Morse and Eckart)
    #[arg(long)]
    b: Option<f64>,
    /// Reduced action constant
    #[arg(long, default_value_t = 1.0)]
    hbar: f64,
    /// Particle mass
    #[arg(long, default_value_t = 1.0)]
    mass: f64,
    /// Branch of the sign pairs in the ladder construction
    #[arg(long, value_enum, default_value = "upper")]
    sign: SignArg,
}

#[derive(Args, Clone, Copy)]
struct OracleArgs {
    /// Left matching point override
    #[arg(long, allow_negative_numbers = true)]
    x_left: Option<f64>,
    /// Right matching point override
    #[arg(long, allow_negative_numbers = true)]
    x_right: Option<f64>,
    /// Phase advance bound per integration step
    #[arg(long)]
    max_step_phase: Option<f64>,
    /// Matching-quality threshold at the window ends
    #[arg(long)]
    wkb_threshold: Option<f64>,
    /// Number of step resolutions for the error estimate
    #[arg(long)]
    refinement_levels: Option<u32>,
}

impl OracleArgs {
    fn to_config(self) -> OracleConfig {
        let d = OracleConfig::default();
        OracleConfig {
            x_left: self.x_left,
            x_right: self.x_right,
            max_step_phase: self.max_step_phase.unwrap_or(d.max_step_phase),
            wkb_quality_threshold: self.wkb_threshold.unwrap_or(d.wkb_quality_threshold),
            refinement_levels: self.refinement_levels.unwrap_or(d.refinement_levels),
        }
    }
}

#[derive(Args, Clone, Copy)]
struct GridArgs {
    /// Lowest energy of the grid
    #[arg(long, allow_negative_numbers = true)]
    emin: f64,
    /// Highest energy of the grid
    #[arg(long, allow_negative_numbers = true)]
    emax: f64,
    /// Number of grid points
    #[arg(long)]
    steps: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficients at a single energy
    Compute {
        #[command(flatten)]
        barrier: BarrierArgs,
        /// Scattering energy
        #[arg(long, allow_negative_numbers = true)]
        energy: f64,
        #[arg(long, value_enum, default_value = "closed_form")]
        method: MethodArg,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Coefficients tabulated over an energy grid
    Sweep {
        #[command(flatten)]
        barrier: BarrierArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value = "closed_form")]
        method: MethodArg,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Per-energy deltas between the closed form and the numerical oracle
    Verify {
        #[command(flatten)]
        barrier: BarrierArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Largest tolerated |T_closed - T_oracle|
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Shape-invariance, linear-shift, and factorization residuals
    Shapecheck {
        #[command(flatten)]
        barrier: BarrierArgs,
        /// Number of grid points for the residual scans
        #[arg(long, default_value_t = 1000)]
        grid_points: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Evolution-matrix conservation-law report over an energy grid
    Props {
        #[command(flatten)]
        barrier: BarrierArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
}

fn build_spec(args: &BarrierArgs) -> Result<BarrierSpec, Error> {
    let units = UnitSystem::new(args.hbar, args.mass)?;
    match args.barrier {
        FamilyArg::Parabolic => {
            let omega = args.omega.ok_or_else(|| {
                Error::Domain("--omega is required for the parabolic barrier".into())
            })?;
            BarrierSpec::parabolic_with_units(args.v0, omega, units)
        }
        FamilyArg::Morse => {
            let b = args
                .b
                .ok_or_else(|| Error::Domain("--b is required for the Morse barrier".into()))?;
            BarrierSpec::morse_with_units(args.v0, b, units)
        }
        FamilyArg::Eckart => {
            let b = args
                .b
                .ok_or_else(|| Error::Domain("--b is required for the Eckart barrier".into()))?;
            BarrierSpec::eckart_with_units(args.v0, b, units)
        }
    }
}

fn barrier_echo(args: &BarrierArgs) -> BarrierEcho {
    BarrierEcho {
        family: match args.barrier {
            FamilyArg::Parabolic => "parabolic".into(),
            FamilyArg::Morse => "morse".into(),
            FamilyArg::Eckart => "eckart".into(),
        },
        v0: args.v0,
        omega: args.omega,
        b: args.b,
        hbar: args.hbar,
        mass: args.mass,
    }
}

fn sign_choice(args: &BarrierArgs) -> SignChoice {
    match args.sign {
        SignArg::Upper => SignChoice::Upper,
        SignArg::Lower => SignChoice::Lower,
    }
}

fn sign_name(args: &BarrierArgs) -> String {
    match args.sign {
        SignArg::Upper => "upper".into(),
        SignArg::Lower => "lower".into(),
    }
}

fn energy_grid(grid: &GridArgs) -> Result<Vec<f64>, Error> {
    if grid.steps < 1 {
        return Err(Error::Domain("--steps must be at least 1".into()));
    }
    if !(grid.emin.is_finite() && grid.emax.is_finite()) || grid.emin >= grid.emax {
        return Err(Error::Domain(format!(
            "energy grid must be strictly increasing: emin {} emax {}",
            grid.emin, grid.emax
        )));
    }
    if grid.steps == 1 {
        return Ok(vec![grid.emin]);
    }
    Ok((0..grid.steps)
        .map(|i| grid.emin + (grid.emax - grid.emin) * i as f64 / (grid.steps - 1) as f64)
        .collect())
}

fn one_result(
    spec: &BarrierSpec,
    sign: SignChoice,
    e: f64,
    method: MethodArg,
    cfg: &OracleConfig,
) -> Result<Vec<ResultRow>, Error> {
    let mut rows = Vec::new();
    let wants = |m: MethodArg| matches!(method, MethodArg::All) || method.name() == m.name();
    if wants(MethodArg::ClosedForm) {
        let res = closed_form_coefficients_with(spec, e, sign)?;
        rows.push(ResultRow {
            energy: e,
            method: Method::ClosedForm.name().into(),
            t: res.t,
            r: res.r,
            unitarity_residual: res.unitarity_residual,
            t_oracle: None,
            abs_err: None,
            error_estimate: None,
        });
    }
    if wants(MethodArg::FMatrix) {
        let res = scattering_via_f_matrix_with(spec, e, sign, MorseAMinusForm::Consistent)?;
        rows.push(ResultRow {
            energy: e,
            method: Method::FMatrix.name().into(),
            t: res.t,
            r: res.r,
            unitarity_residual: res.unitarity_residual,
            t_oracle: None,
            abs_err: None,
            error_estimate: None,
        });
    }
    if wants(MethodArg::Oracle) {
        let res = solve(spec, e, cfg)?;
        rows.push(ResultRow {
            energy: e,
            method: Method::Oracle.name().into(),
            t: res.t,
            r: res.r,
            unitarity_residual: res.unitarity_residual,
            t_oracle: None,
            abs_err: None,
            error_estimate: Some(res.error_estimate),
        });
    }
    Ok(rows)
}

fn emit(report: &Report, format: FormatArg) {
    match format {
        FormatArg::Json => println!("{}", report.to_json()),
        FormatArg::Csv => print!("{}", report.to_csv()),
    }
}

fn fail(request: RequestEcho, err: &Error) -> ! {
    let record = ErrorReport {
        version: VERSION,
        request,
        error: ErrorRecord {
            kind: err.kind(),
            message: err.to_string(),
        },
    };
    println!(
        "{}",
        serde_json::to_string(&record).expect("error record serialization")
    );
    eprintln!("error: {err}");
    std::process::exit(1);
}

fn init_threads() {
    if let Ok(v) = std::env::var("SIQBARRIER_THREADS") {
        match v.trim().parse::<usize>() {
            Ok(0) => {}
            Ok(n) => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            Err(_) => eprintln!("warning: ignoring non-numeric SIQBARRIER_THREADS={v}"),
        }
    }
}

fn main() {
    init_threads();
    let cli = Cli::parse();
    match cli.command {
        Command::Compute {
            barrier,
            energy,
            method,
            format,
            oracle,
        } => {
            let request = RequestEcho {
                command: "compute".into(),
                barrier: barrier_echo(&barrier),
                sign: sign_name(&barrier),
                method: Some(method.name().into()),
                energy: Some(energy),
                energy_grid: None,
                tol: None,
                grid_points: None,
                output_format: format_name(format),
            };
            let spec = match build_spec(&barrier) {
                Ok(s) => s,
                Err(e) => fail(request, &e),
            };
            let cfg = oracle.to_config();
            match one_result(&spec, sign_choice(&barrier), energy, method, &cfg) {
                Ok(results) => emit(
                    &Report {
                        version: VERSION,
                        request,
                        results,
                        checks: vec![],
                    },
                    format,
                ),
                Err(e) => fail(request, &e),
            }
        }
        Command::Sweep {
            barrier,
            grid,
            method,
            format,
            oracle,
        } => {
            let request = RequestEcho {
                command: "sweep".into(),
                barrier: barrier_echo(&barrier),
                sign: sign_name(&barrier),
                method: Some(method.name().into()),
                energy: None,
                energy_grid: Some(GridEcho {
                    emin: grid.emin,
                    emax: grid.emax,
                    steps: grid.steps,
                }),
                tol: None,
                grid_points: None,
                output_format: format_name(format),
            };
            let spec = match build_spec(&barrier) {
                Ok(s) => s,
                Err(e) => fail(request, &e),
            };
            let energies = match energy_grid(&grid) {
                Ok(g) => g,
                Err(e) => fail(request, &e),
            };
            let cfg = oracle.to_config();
            let sign = sign_choice(&barrier);
            let mut results = Vec::new();
            if matches!(method, MethodArg::Oracle) {
                // oracle sweeps parallelize per energy; output stays in order
                for (e, res) in energies.iter().zip(sweep(&spec, &energies, &cfg)) {
                    match res {
                        Ok(r) => results.push(ResultRow {
                            energy: *e,
                            method: "oracle".into(),
                            t: r.t,
                            r: r.r,
                            unitarity_residual: r.unitarity_residual,
                            t_oracle: None,
                            abs_err: None,
                            error_estimate: Some(r.error_estimate),
                        }),
                        Err(err) => fail(request, &err),
                    }
                }
            } else {
                for &e in &energies {
                    match one_result(&spec, sign, e, method, &cfg) {
                        Ok(rows) => results.extend(rows),
                        Err(err) => fail(request, &err),
                    }
                }
            }
            emit(
                &Report {
                    version: VERSION,
                    request,
                    results,
                    checks: vec![],
                },
                format,
            );
        }
        Command::Verify {
            barrier,
            grid,
            tol,
            format,
            oracle,
        } => {
            let request = RequestEcho {
                command: "verify".into(),
                barrier: barrier_echo(&barrier),
                sign: sign_name(&barrier),
                method: None,
                energy: None,
                energy_grid: Some(GridEcho {
                    emin: grid.emin,
                    emax: grid.emax,
                    steps: grid.steps,
                }),
                tol: Some(tol),
                grid_points: None,
                output_format: format_name(format),
            };
            let spec = match build_spec(&barrier) {
                Ok(s) => s,
                Err(e) => fail(request, &e),
            };
            let energies = match energy_grid(&grid) {
                Ok(g) => g,
                Err(e) => fail(request, &e),
            };
            let cfg = oracle.to_config();
            let sign = sign_choice(&barrier);
            let oracle_results = sweep(&spec, &energies, &cfg);
            let mut results = Vec::new();
            let mut max_err: f64 = 0.0;
            for (&e, res) in energies.iter().zip(oracle_results) {
                let oracle_res = match res {
                    Ok(r) => r,
                    Err(err) => fail(request, &err),
                };
                let closed = match closed_form_coefficients_with(&spec, e, sign) {
                    Ok(c) => c,
                    Err(err) => fail(request, &err),
                };
                let abs_err = (closed.t - oracle_res.t).abs();
                max_err = max_err.max(abs_err);
                results.push(ResultRow {
                    energy: e,
                    method: "closed_form".into(),
                    t: closed.t,
                    r: closed.r,
                    unitarity_residual: closed.unitarity_residual,
                    t_oracle: Some(oracle_res.t),
                    abs_err: Some(abs_err),
                    error_estimate: Some(oracle_res.error_estimate),
                });
            }
            let pass = max_err <= tol;
            let report = Report {
                version: VERSION,
                request,
                results,
                checks: vec![CheckRow {
                    name: "max_abs_err".into(),
                    value: full(max_err),
                    threshold: full(tol),
                    pass,
                }],
            };
            emit(&report, format);
            if !pass {
                eprintln!("verification failed: max |T_closed - T_oracle| = {max_err:e} > {tol:e}");
                std::process::exit(3);
            }
        }
        Command::Shapecheck {
            barrier,
            grid_points,
            format,
        } => {
            let request = RequestEcho {
                command: "shapecheck".into(),
                barrier: barrier_echo(&barrier),
                sign: sign_name(&barrier),
                method: None,
                energy: None,
                energy_grid: None,
                tol: None,
                grid_points: Some(grid_points),
                output_format: format_name(format),
            };
            let spec = match build_spec(&barrier) {
                Ok(s) => s,
                Err(e) => fail(request, &e),
            };
            let sign = sign_choice(&barrier);
            let half_width = match spec.family_name() {
                "parabolic" => 8.0 * spec.length_scale(),
                "morse" => 5.0 * spec.length_scale(),
                _ => 10.0 * spec.length_scale(),
            };
            let n = grid_points.max(2);
            let grid: Vec<f64> = (0..n)
                .map(|i| -half_width + 2.0 * half_width * i as f64 / (n - 1) as f64)
                .collect();
            let family = ShapeInvariantFamily::for_barrier(&spec, sign);
            let si = verify_shape_invariance(&family, &grid);
            let shift = match verify_linear_shift(&family, 3, &grid) {
                Ok(v) => v,
                Err(e) => fail(request, &e),
            };
            let fact = match verify_factorization(&spec, sign, &grid) {
                Ok(v) => v,
                Err(e) => fail(request, &e),
            };
            let bound = 1e-10 * spec.v0();
            let checks = vec![
                CheckRow {
                    name: "shape_invariance_residual".into(),
                    value: full(si),
                    threshold: full(bound),
                    pass: si <= bound,
                },
                CheckRow {
                    name: "linear_shift_residual_n3".into(),
                    value: full(shift),
                    threshold: full(bound),
                    pass: shift <= bound,
                },
                CheckRow {
                    name: "factorization_max_deviation".into(),
                    value: full(fact.max_deviation),
                    threshold: full(bound),
                    pass: fact.max_deviation <= bound,
                },
                CheckRow {
                    name: "factorization_residual_constant".into(),
                    value: format!(
                        "{}{}{}i",
                        full(fact.residual_constant.re),
                        if fact.residual_constant.im >= 0.0 { "+" } else { "-" },
                        full(fact.residual_constant.im.abs())
                    ),
                    threshold: "reported".into(),
                    pass: true,
                },
            ];
            let all_pass = checks.iter().all(|c| c.pass);
            emit(
                &Report {
                    version: VERSION,
                    request,
                    results: vec![],
                    checks,
                },
                format,
            );
            if !all_pass {
                eprintln!("shape-invariance residuals exceeded tolerance");
                std::process::exit(3);
            }
        }
        Command::Props {
            barrier,
            grid,
            format,
        } => {
            let request = RequestEcho {
                command: "props".into(),
                barrier: barrier_echo(&barrier),
                sign: sign_name(&barrier),
                method: None,
                energy: None,
                energy_grid: Some(GridEcho {
                    emin: grid.emin,
                    emax: grid.emax,
                    steps: grid.steps,
                }),
                tol: None,
                grid_points: None,
                output_format: format_name(format),
            };
            let spec = match build_spec(&barrier) {
                Ok(s) => s,
                Err(e) => fail(request, &e),
            };
            let energies = match energy_grid(&grid) {
                Ok(g) => g,
                Err(e) => fail(request, &e),
            };
            let mut max_det: f64 = 0.0;
            let mut min_f12: f64 = f64::INFINITY;
            let mut max_f22_excess: f64 = f64::NEG_INFINITY;
            let mut max_sign_obs: f64 = 0.0;
            for &e in &energies {
                let am = match a_matrix(&spec, e, Side::MinusInfinity) {
                    Ok(a) => a,
                    Err(err) => fail(request, &err),
                };
                let ap = match a_matrix(&spec, e, Side::PlusInfinity) {
                    Ok(a) => a,
                    Err(err) => fail(request, &err),
                };
                let f = match evolution_matrix_with(&am, &ap, PropertyCheckMode::Warn) {
                    Ok(f) => f,
                    Err(err) => fail(request, &err),
                };
                let props = f.properties();
                if props.det_cancellation_floor <= 1e-10 {
                    max_det = max_det.max(props.det_residual);
                }
                min_f12 = min_f12.min(props.f12_mod);
                max_f22_excess = max_f22_excess.max(props.f22_mod - props.f12_mod);
                max_sign_obs = max_sign_obs.max(props.f11_plus_f22_rel);
            }
            let mut checks = vec![
                CheckRow {
                    name: "max_det_residual".into(),
                    value: full(max_det),
                    threshold: full(1e-10),
                    pass: max_det <= 1e-10,
                },
                CheckRow {
                    name: "min_f12_modulus".into(),
                    value: full(min_f12),
                    threshold: ">=1".into(),
                    pass: min_f12 >= 1.0 - 1e-10,
                },
                CheckRow {
                    name: "max_f22_minus_f12".into(),
                    value: full(max_f22_excess),
                    threshold: "<=0".into(),
                    pass: max_f22_excess <= 1e-10,
                },
                // the time-reversal argument suggests F11 = -F22; for these
                // families F11 = +F22, so the relation is recorded, not
                // enforced
                CheckRow {
                    name: "f11_plus_f22_sign_observation".into(),
                    value: full(max_sign_obs),
                    threshold: "reported".into(),
                    pass: true,
                },
            ];
            if spec.family_name() == "morse" {
                // transcription delta of the as-printed coefficient matrix
                // against the evolution-consistent one
                if let Ok(d) = morse_a_minus_discrepancy(&spec, energies[energies.len() / 2]) {
                    let max_d = d.iter().flatten().fold(0.0f64, |a, &b| a.max(b));
                    checks.push(CheckRow {
                        name: "a_minus_printed_vs_consistent_max_rel".into(),
                        value: full(max_d),
                        threshold: "reported".into(),
                        pass: true,
                    });
                }
            }
            let gate = checks.iter().all(|c| c.pass);
            emit(
                &Report {
                    version: VERSION,
                    request,
                    results: vec![],
                    checks,
                },
                format,
            );
            if !gate {
                eprintln!("evolution-matrix properties failed tolerance");
                std::process::exit(3);
            }
        }
    }
}

fn format_name(f: FormatArg) -> String {
    match f {
        FormatArg::Json => "json".into(),
        FormatArg::Csv => "csv".into(),
    }
}
